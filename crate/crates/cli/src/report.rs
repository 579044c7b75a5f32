//! Key/value report rendering. Output is deterministic byte-for-byte for a
//! given input and tolerance configuration.

use mobiusmodel::{ConstantsPart, InvarianceFamily, SelfMap};
use num_complex::Complex64;

pub const SCHEMA_VERSION: u32 = 1;

pub struct Report {
    lines: Vec<(String, String)>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut report = Report { lines: Vec::new() };
        report.push("schema_version", SCHEMA_VERSION);
        report.push("command", command);
        report
    }

    pub fn push(&mut self, key: &str, value: impl ToString) {
        self.lines.push((key.to_string(), value.to_string()));
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (key, value) in &self.lines {
            out.push_str(key);
            out.push_str(" = ");
            out.push_str(value);
            out.push('\n');
        }
        out
    }

    pub fn push_family(&mut self, prefix: &str, family: &InvarianceFamily) {
        match family {
            InvarianceFamily::AllSelfMaps => {
                self.push(&format!("{prefix}_family"), "all_disc_self_maps");
            }
            InvarianceFamily::AllRational => {
                self.push(&format!("{prefix}_family"), "all_rational_maps");
            }
            InvarianceFamily::FiniteSet {
                elements,
                cyclic_generator,
                constants,
            } => {
                self.push(&format!("{prefix}_family"), "finite_set");
                self.push(&format!("{prefix}_order"), elements.len());
                self.push(&format!("{prefix}_constants"), constants_text(constants));
                if let Some(generator) = cyclic_generator {
                    self.push(&format!("{prefix}_generator"), map_text(generator));
                }
                for (i, e) in elements.iter().enumerate() {
                    self.push(&format!("{prefix}_element_{i}"), map_text(e));
                }
            }
            InvarianceFamily::AffineLine { lambda, constants } => {
                self.push(&format!("{prefix}_family"), "affine_line");
                self.push(&format!("{prefix}_lambda"), complex_text(*lambda));
                self.push(&format!("{prefix}_constants"), constants_text(constants));
            }
            InvarianceFamily::MoebiusFixedPoint {
                point,
                restrict_to_disc,
                constants,
            } => {
                self.push(&format!("{prefix}_family"), "moebius_fixed_point");
                self.push(&format!("{prefix}_fixed_point"), complex_text(*point));
                self.push(&format!("{prefix}_restrict_to_disc"), restrict_to_disc);
                self.push(&format!("{prefix}_constants"), constants_text(constants));
            }
            InvarianceFamily::MoebiusMultMatch {
                restrict_to_disc,
                pole_floor,
                constants,
                enumerated,
                enumeration_complete,
                ..
            } => {
                self.push(&format!("{prefix}_family"), "moebius_mult_match");
                self.push(&format!("{prefix}_restrict_to_disc"), restrict_to_disc);
                self.push(
                    &format!("{prefix}_pole_floor"),
                    pole_floor.map_or("none".to_string(), |f| f.to_string()),
                );
                self.push(&format!("{prefix}_constants"), constants_text(constants));
                self.push(
                    &format!("{prefix}_enumeration_complete"),
                    enumeration_complete,
                );
                if let Some(list) = enumerated {
                    self.push(&format!("{prefix}_enumerated_count"), list.len());
                    for (i, e) in list.iter().enumerate() {
                        self.push(&format!("{prefix}_enumerated_{i}"), map_text(e));
                    }
                }
            }
        }
    }
}

pub fn float_text(x: f64) -> String {
    if x == 0.0 || x.abs() >= 1e-4 {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub fn complex_text(z: Complex64) -> String {
    format!("{} {}", float_text(z.re), float_text(z.im))
}

pub fn map_text(map: &SelfMap) -> String {
    match map {
        SelfMap::Identity => "identity".to_string(),
        SelfMap::Constant(c) => format!("constant {}", complex_text(*c)),
        SelfMap::Rotation(w) => format!("rotation {}", complex_text(*w)),
        SelfMap::Affine { a, b } => {
            format!("affine {} {}", complex_text(*a), complex_text(*b))
        }
        SelfMap::Moebius { a, b, c, d } => format!(
            "moebius {} {} {} {}",
            complex_text(*a),
            complex_text(*b),
            complex_text(*c),
            complex_text(*d)
        ),
    }
}

fn constants_text(part: &ConstantsPart) -> String {
    match part {
        ConstantsPart::None => "none".to_string(),
        ConstantsPart::OpenDisc => "open_disc".to_string(),
        ConstantsPart::WholePlane => "whole_plane".to_string(),
        ConstantsPart::PlaneMinusPoint(p) => format!("plane_minus {}", complex_text(*p)),
    }
}
