//! Precision handling for the analytic layers.
//!
//! Every arbitrary-precision value carries its mantissa width explicitly;
//! helpers here construct values at a given width so arithmetic never
//! silently narrows. 256 bits is the default working width; the circle
//! integrals raise it per call where exponential cancellation demands.

use rug::float::Constant;
use rug::Float;

use crate::error::{Error, Result};

pub const MIN_BITS: u32 = 64;
pub const DEFAULT_BITS: u32 = 256;

/// Mantissa width in bits, validated to be at least 64.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Precision(u32);

impl Precision {
    pub fn new(bits: u32) -> Result<Self> {
        if bits < MIN_BITS {
            return Err(Error::PrecisionTooLow { bits });
        }
        Ok(Self(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// A width with `extra` guard bits on top.
    pub fn guarded(self, extra: u32) -> Self {
        Self(self.0 + extra)
    }

    /// Construct a real at this width from anything `Float` can assign from.
    pub fn real<T>(self, v: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        let mut f = Float::new(self.0);
        rug::Assign::assign(&mut f, v);
        f
    }

    pub fn zero(self) -> Float {
        Float::new(self.0)
    }

    pub fn pi(self) -> Float {
        Float::with_val(self.0, Constant::Pi)
    }

    /// Parse a decimal literal at full width; panics on malformed input
    /// (callers pass literals).
    pub fn parse(self, s: &str) -> Float {
        Float::with_val(self.0, Float::parse(s).expect("invalid float literal"))
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self(DEFAULT_BITS)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_is_enforced() {
        assert!(Precision::new(63).is_err());
        assert_eq!(Precision::new(64).unwrap().bits(), 64);
    }

    #[test]
    fn parse_keeps_many_digits() {
        let p = Precision::new(256).unwrap();
        let x = p.parse("0.76822542232605665900259417957618064451786691446");
        assert!((x - 0.768225f64).abs() < 1e-5);
    }

    #[test]
    fn real_accepts_mixed_sources() {
        let p = Precision::default();
        assert_eq!(p.real(3i64), 3);
        assert_eq!(p.real(0.5f64), 0.5);
    }
}
