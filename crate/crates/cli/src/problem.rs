//! The declarative problem-file format and its conversion into library types.

use mobiusmodel::{FiniteBlaschkeProduct, SelfMap, ToleranceConfig};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Serialize, Deserialize)]
pub struct ProblemFile {
    pub blaschke: Vec<ZeroEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symbol: Option<SymbolEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<ToleranceEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ZeroEntry {
    pub re: f64,
    pub im: f64,
    pub mult: u32,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SymbolEntry {
    pub kind: String,
    pub coefficients: Vec<[f64; 2]>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
pub struct ToleranceEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eq_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cond_max: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_order: Option<u32>,
}

impl ProblemFile {
    pub fn load(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::input(format!("cannot parse {}: {e}", path.display())))
    }

    pub fn save(&self, path: &std::path::Path) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(self)
            .map_err(|e| CliError::internal(format!("serialization failed: {e}")))?;
        std::fs::write(path, text + "\n")
            .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))
    }

    /// Applies file tolerances over `base` (command-line flags are applied
    /// later and win).
    pub fn tolerances_over(&self, base: &ToleranceConfig) -> ToleranceConfig {
        let mut cfg = base.clone();
        if let Some(t) = &self.tolerances {
            if let Some(v) = t.eq_tol {
                cfg.eq_tol = v;
            }
            if let Some(v) = t.residual_tol {
                cfg.residual_tol = v;
            }
            if let Some(v) = t.cond_max {
                cfg.cond_max = v;
            }
            if let Some(v) = t.max_order {
                cfg.max_order = v;
            }
        }
        cfg
    }

    pub fn blaschke_product(
        &self,
        cfg: &ToleranceConfig,
    ) -> Result<FiniteBlaschkeProduct, CliError> {
        let pairs: Vec<(Complex64, u32)> = self
            .blaschke
            .iter()
            .map(|z| (Complex64::new(z.re, z.im), z.mult))
            .collect();
        FiniteBlaschkeProduct::make(&pairs, cfg)
            .map_err(|e| CliError::input(format!("invalid blaschke section: {e}")))
    }

    pub fn self_map(&self, cfg: &ToleranceConfig) -> Result<SelfMap, CliError> {
        let entry = self
            .symbol
            .as_ref()
            .ok_or_else(|| CliError::input("problem file has no symbol section"))?;
        let coeff = |i: usize| -> Result<Complex64, CliError> {
            entry
                .coefficients
                .get(i)
                .map(|c| Complex64::new(c[0], c[1]))
                .ok_or_else(|| {
                    CliError::input(format!(
                        "symbol kind {:?} needs more coefficients",
                        entry.kind
                    ))
                })
        };
        let expect_len = |n: usize| -> Result<(), CliError> {
            if entry.coefficients.len() == n {
                Ok(())
            } else {
                Err(CliError::input(format!(
                    "symbol kind {:?} takes {n} coefficients, got {}",
                    entry.kind,
                    entry.coefficients.len()
                )))
            }
        };
        match entry.kind.as_str() {
            "constant" => {
                expect_len(1)?;
                Ok(SelfMap::constant(coeff(0)?))
            }
            "rotation" => {
                expect_len(1)?;
                SelfMap::rotation(coeff(0)?, cfg)
                    .map_err(|e| CliError::input(format!("invalid rotation: {e}")))
            }
            "affine" => {
                expect_len(2)?;
                SelfMap::affine(coeff(0)?, coeff(1)?, cfg)
                    .map_err(|e| CliError::input(format!("invalid affine map: {e}")))
            }
            "moebius" => {
                expect_len(4)?;
                SelfMap::moebius(coeff(0)?, coeff(1)?, coeff(2)?, coeff(3)?, cfg)
                    .map_err(|e| CliError::input(format!("invalid moebius map: {e}")))
            }
            other => Err(CliError::input(format!("unknown symbol kind {other:?}"))),
        }
    }
}
