//! Dense Laurent polynomials in the crank variable with big-integer
//! coefficients.
//!
//! Each q-power of the bivariate expansion carries one of these. The
//! exponent window is always tiny (bounded by the q-power), so a dense
//! `Vec` beats any sparse structure.

use rug::Integer;

/// A Laurent polynomial `sum_j coeffs[j] * zeta^(lo + j)`.
///
/// Normalized form: `coeffs` is empty for the zero polynomial, and otherwise
/// starts and ends with a nonzero entry.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    lo: i64,
    coeffs: Vec<Integer>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The monomial `c * zeta^e`.
    pub fn monomial(c: Integer, e: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self {
            lo: e,
            coeffs: vec![c],
        }
    }

    pub fn constant(c: Integer) -> Self {
        Self::monomial(c, 0)
    }

    /// Construct from a dense window; trims zero fringes.
    pub fn from_window(lo: i64, coeffs: Vec<Integer>) -> Self {
        let mut p = Self { lo, coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        let mut start = 0;
        while start < self.coeffs.len() && self.coeffs[start] == 0 {
            start += 1;
        }
        if start == self.coeffs.len() {
            self.lo = 0;
            self.coeffs.clear();
            return;
        }
        let mut end = self.coeffs.len();
        while self.coeffs[end - 1] == 0 {
            end -= 1;
        }
        if start > 0 || end < self.coeffs.len() {
            self.coeffs = self.coeffs[start..end].to_vec();
            self.lo += start as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with nonzero coefficient (0 for the zero polynomial).
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest exponent with nonzero coefficient (0 for the zero polynomial).
    pub fn hi(&self) -> i64 {
        if self.is_zero() {
            0
        } else {
            self.lo + self.coeffs.len() as i64 - 1
        }
    }

    /// Coefficient of `zeta^e`.
    pub fn coeff(&self, e: i64) -> Integer {
        if self.is_zero() || e < self.lo || e > self.hi() {
            Integer::new()
        } else {
            self.coeffs[(e - self.lo) as usize].clone()
        }
    }

    /// Iterate `(exponent, coefficient)` over the stored window.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &Integer)> {
        let lo = self.lo;
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(j, c)| (lo + j as i64, c))
    }

    /// Sum of all coefficients, i.e. the value at `zeta = 1`.
    pub fn sum(&self) -> Integer {
        Integer::from(Integer::sum(self.coeffs.iter()))
    }

    /// Sum of coefficients over exponents in a residue class `r (mod q)`.
    pub fn sum_residue_class(&self, r: i64, q: i64) -> Integer {
        debug_assert!(q > 0);
        let mut acc = Integer::new();
        for (e, c) in self.iter() {
            if (e - r).rem_euclid(q) == 0 {
                acc += c;
            }
        }
        acc
    }

    /// Whether the polynomial is invariant under `zeta -> 1/zeta`.
    pub fn is_symmetric(&self) -> bool {
        let n = self.coeffs.len();
        if n == 0 {
            return true;
        }
        if self.lo + self.hi() != 0 {
            return false;
        }
        (0..n / 2).all(|j| self.coeffs[j] == self.coeffs[n - 1 - j])
    }

    /// `self += c * other * zeta^shift`, for small scalar `c`.
    pub fn add_scaled_shifted(&mut self, other: &Self, c: i32, shift: i64) {
        if other.is_zero() || c == 0 {
            return;
        }
        let new_lo = self.lo.min(other.lo + shift);
        let new_hi = self.hi().max(other.hi() + shift);
        if self.is_zero() {
            self.lo = new_lo;
        }
        // grow the window as needed
        if new_lo < self.lo {
            let pad = (self.lo - new_lo) as usize;
            let mut grown = vec![Integer::new(); pad + self.coeffs.len()];
            for (j, v) in self.coeffs.drain(..).enumerate() {
                grown[pad + j] = v;
            }
            self.coeffs = grown;
            self.lo = new_lo;
        }
        let need = (new_hi - self.lo + 1) as usize;
        if self.coeffs.len() < need {
            self.coeffs.resize_with(need, Integer::new);
        }
        for (e, v) in other.iter() {
            let idx = (e + shift - self.lo) as usize;
            if c == 1 {
                self.coeffs[idx] += v;
            } else if c == -1 {
                self.coeffs[idx] -= v;
            } else {
                self.coeffs[idx] += Integer::from(v * c);
            }
        }
        self.normalize();
    }

    /// Full product, used for assembling small test series.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let lo = self.lo + other.lo;
        let len = self.coeffs.len() + other.coeffs.len() - 1;
        let mut out = vec![Integer::new(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += Integer::from(a * b);
            }
        }
        Self::from_window(lo, out)
    }

    /// Internal handle for the expansion kernel: raw window access.
    pub(crate) fn raw(&self) -> (i64, &[Integer]) {
        (self.lo, &self.coeffs)
    }

    pub(crate) fn from_window_unchecked(lo: i64, coeffs: Vec<Integer>) -> Self {
        let mut p = Self { lo, coeffs };
        p.normalize();
        p
    }
}

impl std::ops::Add<&LaurentPoly> for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add_scaled_shifted(rhs, 1, 0);
        self
    }
}

impl std::fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.iter() {
            if *c == 0 {
                continue;
            }
            if first {
                write!(f, "{c}")?;
                first = false;
            } else if *c < 0 {
                write!(f, " - {}", Integer::from(-c.clone()))?;
            } else {
                write!(f, " + {c}")?;
            }
            if e != 0 {
                write!(f, "*z^{e}")?;
            }
        }
        Ok(())
    }
}

/// Evaluate at a numeric `zeta`: callers in the analytic layer pass powers of
/// a complex unit; kept generic over a fold to avoid a float dependency here.
impl LaurentPoly {
    pub fn fold_terms<T>(&self, init: T, mut f: impl FnMut(T, i64, &Integer) -> T) -> T {
        let mut acc = init;
        for (e, c) in self.iter() {
            acc = f(acc, e, c);
        }
        acc
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    fn lp(lo: i64, cs: &[i64]) -> LaurentPoly {
        LaurentPoly::from_window(lo, cs.iter().map(|&c| Integer::from(c)).collect())
    }

    #[test]
    fn normalization_trims_and_zeroes() {
        let p = lp(-2, &[0, 1, 0, 2, 0]);
        assert_eq!(p.lo(), -1);
        assert_eq!(p.hi(), 1);
        assert!(lp(5, &[0, 0]).is_zero());
        assert_eq!(lp(5, &[0, 0]), LaurentPoly::zero());
    }

    #[test]
    fn coeff_lookup_outside_window_is_zero() {
        let p = lp(-1, &[1, -1, 1]);
        assert_eq!(p.coeff(-2), 0);
        assert_eq!(p.coeff(-1), 1);
        assert_eq!(p.coeff(0), -1);
        assert_eq!(p.coeff(7), 0);
    }

    #[test]
    fn add_scaled_shifted_grows_window() {
        let mut p = lp(0, &[1]);
        p.add_scaled_shifted(&lp(0, &[1, 1]), 1, -2);
        // 1 + (zeta^-2 + zeta^-1)
        assert_eq!(p, lp(-2, &[1, 1, 1]));
        p.add_scaled_shifted(&lp(0, &[1]), -1, 0);
        assert_eq!(p, lp(-2, &[1, 1]));
    }

    #[test]
    fn symmetry_detection() {
        assert!(lp(-1, &[1, -1, 1]).is_symmetric());
        assert!(!lp(0, &[1, 1]).is_symmetric());
        assert!(lp(-2, &[2, 0, 3, 0, 2]).is_symmetric());
        assert!(LaurentPoly::zero().is_symmetric());
    }

    #[test]
    fn residue_class_sums() {
        let p = lp(-2, &[1, 2, 3, 4, 5]);
        assert_eq!(p.sum_residue_class(0, 5), 3);
        assert_eq!(p.sum_residue_class(-2, 5), 1 + 0);
        assert_eq!(p.sum_residue_class(3, 5), 1);
        assert_eq!(p.sum(), 15);
    }

    #[test]
    fn product_of_small_polys() {
        // (zeta - 1)(zeta^-1 - 1) = -zeta + 2 - zeta^-1
        let a = lp(0, &[-1, 1]);
        let b = lp(-1, &[1, -1]);
        assert_eq!(a.mul(&b), lp(-1, &[-1, 2, -1]));
    }
}
