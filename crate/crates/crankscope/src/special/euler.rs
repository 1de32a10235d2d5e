//! Euler polynomials and numbers as exact rationals, the sech^2 series
//! identity, and the sinh-kernel moment integrals.
//!
//! The generating function `2 e^{xt} / (e^t + 1) = sum_r E_r(x) t^r / r!`
//! multiplied through by `(e^t + 1)/2` yields the recurrence
//!
//! ```text
//!   E_j(x) = x^j - (1/2) sum_{l<j} C(j, l) E_l(x),
//! ```
//!
//! which is what the table builds. Everything downstream (the sech^2 limit
//! shape, the sinh moments) keys off the odd values at zero, so their signs
//! are pinned by exact arithmetic here and cross-checked by quadrature.

use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::numerics::{integrate, integrate_mesh, Cplx, Precision, QuadOpts};

/// Exact coefficient table of `E_0 .. E_max_degree`.
#[derive(Debug, Clone)]
pub struct EulerPolyTable {
    /// `polys[r][j]` is the coefficient of `x^j` in `E_r(x)`.
    polys: Vec<Vec<Rational>>,
}

impl EulerPolyTable {
    pub fn new(max_degree: usize) -> Self {
        // Pascal triangle rows as we go
        let mut polys: Vec<Vec<Rational>> = Vec::with_capacity(max_degree + 1);
        let mut binom: Vec<Integer> = vec![Integer::from(1)];
        for j in 0..=max_degree {
            // E_j(x) = x^j - 1/2 sum_{l<j} C(j,l) E_l(x)
            let mut coeffs = vec![Rational::new(); j + 1];
            coeffs[j] = Rational::from(1);
            for (l, poly) in polys.iter().enumerate() {
                let c = Rational::from((binom[l].clone(), Integer::from(2)));
                for (deg, v) in poly.iter().enumerate() {
                    let sub = Rational::from(v * &c);
                    coeffs[deg] -= sub;
                }
            }
            polys.push(coeffs);
            // extend Pascal row for degree j+1
            let mut next = vec![Integer::from(1)];
            for i in 0..binom.len() {
                let right = if i + 1 < binom.len() {
                    binom[i + 1].clone()
                } else {
                    Integer::new()
                };
                next.push(Integer::from(&binom[i] + &right));
            }
            binom = next;
        }
        Self { polys }
    }

    pub fn max_degree(&self) -> usize {
        self.polys.len() - 1
    }

    /// Exact value `E_r(x)`.
    pub fn eval(&self, r: usize, x: &Rational) -> Result<Rational> {
        let poly = self
            .polys
            .get(r)
            .ok_or_else(|| Error::Domain(format!("degree {r} beyond table")))?;
        let mut acc = Rational::new();
        for c in poly.iter().rev() {
            acc *= x;
            acc += c;
        }
        Ok(acc)
    }

    /// `E_{2r+1}(0)`, the sequence driving the sech^2 expansion.
    pub fn odd_at_zero(&self, r: usize) -> Result<Rational> {
        let deg = 2 * r + 1;
        self.polys
            .get(deg)
            .map(|p| p[0].clone())
            .ok_or_else(|| Error::Domain(format!("degree {deg} beyond table")))
    }

    /// The Euler number `E_l = 2^l E_l(1/2)` (an integer).
    pub fn euler_number(&self, l: usize) -> Result<Integer> {
        let half = Rational::from((1, 2));
        let mut v = self.eval(l, &half)?;
        v *= Rational::from(Integer::from(1) << l as u32);
        let (num, den) = v.into_numer_denom();
        debug_assert_eq!(den, 1, "Euler number must be an integer");
        Ok(num)
    }
}

/// Both sides of the identity
/// `-1/2 sech^2(t/2) = sum_{r<=R} E_{2r+1}(0) t^{2r} / (2r)!`,
/// returned as the absolute residual. Diverges for `|t| >= pi` (the series
/// radius), which is a domain error.
pub fn sech2_series_residual(
    table: &EulerPolyTable,
    t: &Float,
    r_max: usize,
    prec: Precision,
) -> Result<Float> {
    let p = prec.bits();
    let pi = prec.pi();
    if t.clone().abs() >= pi {
        return Err(Error::Domain(format!(
            "|t| = {} is outside the series radius pi",
            t.to_f64()
        )));
    }
    if 2 * r_max + 1 > table.max_degree() {
        return Err(Error::Domain(format!(
            "series order {r_max} needs table degree {}",
            2 * r_max + 1
        )));
    }
    let mut half = t.clone();
    half /= 2u32;
    let mut lhs = half.cosh();
    lhs.square_mut();
    lhs.recip_mut();
    lhs /= -2i32;

    let tsq = Float::with_val(p, t * t);
    let mut rhs = Float::new(p);
    let mut tpow = Float::with_val(p, 1);
    let mut fact = Integer::from(1);
    for r in 0..=r_max {
        if r > 0 {
            tpow *= &tsq;
            fact *= Integer::from((2 * r - 1) * 2 * r);
        }
        let coeff = table.odd_at_zero(r)? / Rational::from(&fact);
        let term = Float::with_val(p, &tpow * &Float::with_val(p, coeff));
        rhs += term;
    }
    Ok(Float::with_val(p, &lhs - &rhs).abs())
}

/// The moment `int_0^inf w^{2j+1} / sinh(pi w) dw`, by quadrature.
///
/// Split at `w = 1`; the tail is integrated in `u = e^{-pi w}` on a mesh
/// graded toward `u = 0`, where the integrand is a power of `log` — mild
/// enough that doubling the rule order converges. The closed form by the
/// odd Euler values is deliberately NOT used here: it is the test oracle.
pub fn euler_integral(j: u32, prec: Precision) -> Result<Float> {
    if j > 12 {
        return Err(Error::Domain(format!("moment order {j} beyond support")));
    }
    let p = prec.bits();
    let pi = prec.pi();
    let head_integrand = |w: &Float| -> Float {
        let mut num = w.clone();
        for _ in 0..2 * j {
            num *= w;
        }
        let den = Float::with_val(p, w * &pi).sinh();
        num / den
    };
    let opts = QuadOpts::default().with_rel_tol(1e-24).with_abs_tol(1e-40);
    let head = integrate(head_integrand, &prec.zero(), &prec.real(1), prec, &opts)?;

    // tail: (2/pi) int_0^{e^{-pi}} (-ln u / pi)^{2j+1} / (1 - u^2) du
    let tail_integrand = |u: &Float| -> Float {
        let mut w = u.clone().ln();
        w /= &pi;
        w = -w;
        let mut num = w.clone();
        for _ in 0..2 * j {
            num *= &w;
        }
        let mut den = Float::with_val(p, u * u);
        den = -(den - 1u32);
        num / den
    };
    let top = (-prec.pi()).exp();
    let mut mesh = vec![prec.zero(), prec.real(1e-45f64)];
    loop {
        let last = mesh.last().unwrap().clone();
        if last >= top {
            break;
        }
        let mut next = Float::with_val(p, &last * 4u32);
        if next >= top {
            next = top.clone();
        }
        mesh.push(next);
    }
    let tail: crate::numerics::Quadrature<Float> = integrate_mesh(
        tail_integrand,
        &mesh,
        prec,
        &QuadOpts::default()
            .with_points(16)
            .with_rel_tol(1e-24)
            .with_abs_tol(1e-40),
    )?;
    let mut tail_val = tail.value;
    tail_val *= 2u32;
    tail_val /= &pi;
    Ok(head.value + tail_val)
}

/// Closed form `(-1)^{j+1} E_{2j+1}(0) / 2` the moments must reproduce.
pub fn euler_integral_closed_form(table: &EulerPolyTable, j: u32, prec: Precision) -> Result<Float> {
    let mut v = table.odd_at_zero(j as usize)?;
    v /= Rational::from(2);
    if j % 2 == 0 {
        v = -v;
    }
    Ok(Float::with_val(prec.bits(), v))
}

/// Quadrature check of the cosh-kernel normalization
/// `int_R w^l / cosh(pi w) dw = (-2i)^{-l} E_l` that fixes the Euler-number
/// convention the closed form above relies on.
pub fn cosh_moment_residual(table: &EulerPolyTable, l: u32, prec: Precision) -> Result<Float> {
    let p = prec.bits();
    let pi = prec.pi();
    let integrand = |w: &Float| -> Float {
        let mut num = Float::with_val(p, 1);
        for _ in 0..l {
            num *= w;
        }
        let den = Float::with_val(p, w * &pi).cosh();
        num / den
    };
    // integrand decays like e^{-pi |w|}; [-40, 40] leaves a tail < 1e-54
    let opts = QuadOpts::default()
        .with_rel_tol(1e-30)
        .with_abs_tol(1e-40)
        .with_initial_panels(16);
    let q = integrate(integrand, &prec.real(-40), &prec.real(40), prec, &opts)?;
    // (-2i)^{-l} E_l is real for even l and zero-by-symmetry for odd l
    let e_l = table.euler_number(l as usize)?;
    let expect = match l % 4 {
        0 => Float::with_val(p, &e_l) / Float::with_val(p, Integer::from(1) << l),
        2 => -(Float::with_val(p, &e_l) / Float::with_val(p, Integer::from(1) << l)),
        _ => Float::new(p), // odd l: both sides vanish
    };
    Ok(Float::with_val(p, &q.value - &expect).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prec() -> Precision {
        Precision::new(256).unwrap()
    }

    #[test]
    fn first_polynomials_are_classical() {
        let t = EulerPolyTable::new(6);
        let zero = Rational::new();
        assert_eq!(t.eval(0, &zero).unwrap(), Rational::from(1));
        // E_1(x) = x - 1/2
        assert_eq!(t.eval(1, &zero).unwrap(), Rational::from((-1, 2)));
        assert_eq!(t.eval(1, &Rational::from(1)).unwrap(), Rational::from((1, 2)));
        // E_2(x) = x^2 - x
        assert_eq!(t.eval(2, &Rational::from(3)).unwrap(), Rational::from(6));
        // E_3(0) = 1/4
        assert_eq!(t.odd_at_zero(1).unwrap(), Rational::from((1, 4)));
    }

    #[test]
    fn euler_numbers_are_the_classical_integers() {
        let t = EulerPolyTable::new(12);
        let expect: [i64; 7] = [1, 0, -1, 0, 5, 0, -61];
        for (l, e) in expect.iter().enumerate() {
            assert_eq!(t.euler_number(l).unwrap(), *e, "E_{l}");
        }
        assert_eq!(t.euler_number(8).unwrap(), 1385);
        assert_eq!(t.euler_number(10).unwrap(), -50521);
    }

    #[test]
    fn half_shift_identity_holds_exactly() {
        // E_j(x) = sum_l C(j,l) (x - 1/2)^{j-l} E_l / 2^l for j <= 12
        let t = EulerPolyTable::new(12);
        for j in 0..=12usize {
            for xnum in [-2i64, 0, 1, 3] {
                let x = Rational::from((xnum, 2));
                let direct = t.eval(j, &x).unwrap();
                let shifted = x.clone() - Rational::from((1, 2));
                let mut acc = Rational::new();
                let mut binom = Integer::from(1);
                for l in 0..=j {
                    // C(j, l) built incrementally
                    if l > 0 {
                        binom = Integer::from(&binom * (j as u32 - l as u32 + 1));
                        binom /= Integer::from(l as u32);
                    }
                    let mut term = Rational::from((
                        t.euler_number(l).unwrap(),
                        Integer::from(1) << l as u32,
                    ));
                    let mut pw = Rational::from(1);
                    for _ in 0..(j - l) {
                        pw *= &shifted;
                    }
                    term *= pw;
                    term *= Rational::from(&binom);
                    acc += term;
                }
                assert_eq!(direct, acc, "j = {j}, x = {x}");
            }
        }
    }

    #[test]
    fn sech2_series_residual_at_zero_is_zero() {
        let t = EulerPolyTable::new(41);
        let p = prec();
        let r = sech2_series_residual(&t, &p.zero(), 20, p).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn sech2_series_converges_inside_radius() {
        let t = EulerPolyTable::new(81);
        let p = prec();
        // alternating-tail bound oracle: at t=1 the terms decay below
        // 1e-20 by r=20, at t=2 below 1e-10 by r=40
        let r1 = sech2_series_residual(&t, &p.real(1), 20, p).unwrap();
        assert!(r1.to_f64() < 1e-20, "t=1 residual {}", r1.to_f64());
        let r2 = sech2_series_residual(&t, &p.real(2), 40, p).unwrap();
        assert!(r2.to_f64() < 1e-10, "t=2 residual {}", r2.to_f64());
    }

    #[test]
    fn sech2_series_rejects_points_at_or_past_radius() {
        let t = EulerPolyTable::new(9);
        let p = prec();
        assert!(sech2_series_residual(&t, &p.real(3.2), 4, p).is_err());
        assert!(sech2_series_residual(&t, &p.pi(), 4, p).is_err());
    }

    #[test]
    fn moment_integrals_match_closed_form() {
        let t = EulerPolyTable::new(27);
        let p = prec();
        // frozen independent quadrature values for the first two:
        // 1/4 and 1/8
        let e0 = euler_integral(0, p).unwrap();
        assert!((e0.clone() - 0.25f64).abs().to_f64() < 1e-12, "{}", e0.to_f64());
        let e1 = euler_integral(1, p).unwrap();
        assert!((e1 - 0.125f64).abs().to_f64() < 1e-12);
        for j in 0..=8u32 {
            let quad = euler_integral(j, p).unwrap();
            let closed = euler_integral_closed_form(&t, j, p).unwrap();
            let rel = ((quad.clone() - &closed) / closed.clone()).abs().to_f64();
            assert!(rel < 1e-10, "j={j}: quad {} vs closed {}", quad.to_f64(), closed.to_f64());
        }
    }

    #[test]
    fn cosh_moment_normalization_is_consistent() {
        // pins E_l = 2^l E_l(1/2) against the integral convention; a sign
        // slip here would silently flip the closed form above
        let t = EulerPolyTable::new(12);
        let p = prec();
        for l in [0u32, 1, 2, 3, 4, 6] {
            let r = cosh_moment_residual(&t, l, p).unwrap();
            assert!(r.to_f64() < 1e-25, "l={l}: residual {}", r.to_f64());
        }
    }
}
