use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Output format for tables and reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// Tolerance overrides for the verification harness.
///
/// Every tolerance has a default pinned to the verification suite it guards;
/// overrides are for exploration, not for loosening the shipped checks.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Relative tolerance for node-doubling quadrature convergence.
    pub quad_rel: f64,
    /// Absolute tolerance for integer recovery from contour integrals.
    pub cauchy_abs: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            quad_rel: 1e-12,
            cauchy_abs: 1e-2,
        }
    }
}

/// Runtime configuration shared by the library entry points and the CLI.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    /// Mantissa bits for all arbitrary-precision arithmetic (min 64).
    pub precision_bits: u32,
    /// Highest q-power any series expansion may be asked for.
    pub truncation_limit: usize,
    /// Largest n for which full partition enumeration is allowed.
    pub enumeration_limit: u64,
    /// Directory for persisted coefficient tables; `None` disables persistence.
    pub cache_dir: Option<PathBuf>,
    pub output_format: OutputFormat,
    pub tolerances: Tolerances,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            precision_bits: 256,
            truncation_limit: 1000,
            enumeration_limit: 60,
            cache_dir: None,
            output_format: OutputFormat::Csv,
            tolerances: Tolerances::default(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.precision_bits < 64 {
            return Err(Error::PrecisionTooLow {
                bits: self.precision_bits,
            });
        }
        if self.truncation_limit < 1 {
            return Err(Error::Domain("truncation_limit must be >= 1".into()));
        }
        Ok(())
    }

    /// Apply `CRANKSCOPE_PRECISION_BITS` / `CRANKSCOPE_CACHE_DIR` on top of `self`.
    pub fn with_env_overrides(mut self) -> Self {
        if let Ok(bits) = std::env::var("CRANKSCOPE_PRECISION_BITS") {
            if let Ok(bits) = bits.parse::<u32>() {
                self.precision_bits = bits;
            }
        }
        if let Ok(dir) = std::env::var("CRANKSCOPE_CACHE_DIR") {
            if !dir.is_empty() {
                self.cache_dir = Some(PathBuf::from(dir));
            }
        }
        self
    }
}
