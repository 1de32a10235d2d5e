//! Arbitrary-precision complex arithmetic over MPFR reals.
//!
//! Only the operations the analytic layers actually use are implemented,
//! with explicit branch conventions: `sqrt` and `ln` are principal
//! (argument in `(-pi, pi]`), so `sqrt` of a value with positive real part
//! lands in the right half plane, as the transformation laws require.

use rug::Float;

use super::prec::Precision;

#[derive(Debug, Clone, PartialEq)]
pub struct Cplx {
    pub re: Float,
    pub im: Float,
}

impl Cplx {
    pub fn new(re: Float, im: Float) -> Self {
        Self { re, im }
    }

    pub fn zero(prec: Precision) -> Self {
        Self::new(prec.zero(), prec.zero())
    }

    pub fn one(prec: Precision) -> Self {
        Self::new(prec.real(1), prec.zero())
    }

    pub fn i(prec: Precision) -> Self {
        Self::new(prec.zero(), prec.real(1))
    }

    pub fn from_real(re: Float) -> Self {
        let im = Float::new(re.prec());
        Self::new(re, im)
    }

    pub fn with_f64(prec: Precision, re: f64, im: f64) -> Self {
        Self::new(prec.real(re), prec.real(im))
    }

    /// Parse a decimal pair at the given precision.
    pub fn parse(prec: Precision, re: &str, im: &str) -> Self {
        Self::new(prec.parse(re), prec.parse(im))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.re.clone(), -self.im.clone())
    }

    /// Multiply by `i` (counterclockwise quarter turn).
    pub fn mul_i(&self) -> Self {
        Self::new(-self.im.clone(), self.re.clone())
    }

    pub fn scale(&self, s: &Float) -> Self {
        let p = self.prec().max(s.prec());
        Self::new(
            Float::with_val(p, &self.re * s),
            Float::with_val(p, &self.im * s),
        )
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        let mut t = Float::with_val(p, &self.re * &self.re);
        t += Float::with_val(p, &self.im * &self.im);
        t
    }

    pub fn abs(&self) -> Float {
        // hypot avoids spurious overflow/underflow at extreme exponents
        self.re.clone().hypot(&self.im)
    }

    pub fn arg(&self) -> Float {
        self.im.clone().atan2(&self.re)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let p = self.prec().max(rhs.prec());
        Self::new(
            Float::with_val(p, &self.re + &rhs.re),
            Float::with_val(p, &self.im + &rhs.im),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let p = self.prec().max(rhs.prec());
        Self::new(
            Float::with_val(p, &self.re - &rhs.re),
            Float::with_val(p, &self.im - &rhs.im),
        )
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let p = self.prec().max(rhs.prec());
        let mut re = Float::with_val(p, &self.re * &rhs.re);
        re -= Float::with_val(p, &self.im * &rhs.im);
        let mut im = Float::with_val(p, &self.re * &rhs.im);
        im += Float::with_val(p, &self.im * &rhs.re);
        Self::new(re, im)
    }

    pub fn mul_assign(&mut self, rhs: &Self) {
        let out = self.mul(rhs);
        *self = out;
    }

    pub fn div(&self, rhs: &Self) -> Self {
        let p = self.prec().max(rhs.prec());
        let d = rhs.norm_sqr();
        let mut re = Float::with_val(p, &self.re * &rhs.re);
        re += Float::with_val(p, &self.im * &rhs.im);
        re /= &d;
        let mut im = Float::with_val(p, &self.im * &rhs.re);
        im -= Float::with_val(p, &self.re * &rhs.im);
        im /= &d;
        Self::new(re, im)
    }

    pub fn recip(&self) -> Self {
        let p = self.prec();
        let d = self.norm_sqr();
        let re = Float::with_val(p, &self.re / &d);
        let im = -Float::with_val(p, &self.im / &d);
        Self::new(re, im)
    }

    /// `exp(self)` via `e^re (cos im + i sin im)`.
    pub fn exp(&self) -> Self {
        let p = self.prec();
        let er = self.re.clone().exp();
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        Self::new(Float::with_val(p, &er * &c), er * s)
    }

    /// Principal logarithm: `ln|z| + i arg(z)`, `arg` in `(-pi, pi]`.
    pub fn ln(&self) -> Self {
        let mut r = self.norm_sqr().ln();
        r /= 2u32;
        Self::new(r, self.arg())
    }

    /// Principal square root (right half plane, `sqrt(-1) = i`).
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        if self.is_zero() {
            return Self::new(Float::new(p), Float::new(p));
        }
        let r = self.abs();
        if self.re.is_sign_positive() || self.re.is_zero() {
            // t = sqrt((r + re)/2), result t + i im/(2t)
            let mut t = Float::with_val(p, &r + &self.re);
            t /= 2u32;
            let t = t.sqrt();
            let mut im = Float::with_val(p, &self.im / &t);
            im /= 2u32;
            Self::new(t, im)
        } else {
            let mut u = Float::with_val(p, &r - &self.re);
            u /= 2u32;
            let u = u.sqrt();
            let mut re = Float::with_val(p, &self.im / &u);
            re /= 2u32;
            re.abs_mut();
            let im = u.copysign(&self.im);
            Self::new(re, im)
        }
    }

    /// Principal real power `self^s = exp(s ln self)`.
    pub fn pow_real(&self, s: &Float) -> Self {
        self.ln().scale(s).exp()
    }

    /// Integer power by binary exponentiation.
    pub fn powi(&self, n: i64) -> Self {
        let prec = Precision::new(self.prec()).expect("valid precision");
        if n == 0 {
            return Self::one(prec);
        }
        let mut base = if n < 0 { self.recip() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one(prec);
        while e > 0 {
            if e & 1 == 1 {
                acc.mul_assign(&base);
            }
            e >>= 1;
            if e > 0 {
                let sq = base.mul(&base);
                base = sq;
            }
        }
        acc
    }

    pub fn sin(&self) -> Self {
        let p = self.prec();
        let (sa, ca) = self.re.clone().sin_cos(Float::new(p));
        let (shb, chb) = self.im.clone().sinh_cosh(Float::new(p));
        Self::new(sa * chb, ca * shb)
    }

    pub fn cos(&self) -> Self {
        let p = self.prec();
        let (sa, ca) = self.re.clone().sin_cos(Float::new(p));
        let (shb, chb) = self.im.clone().sinh_cosh(Float::new(p));
        Self::new(ca * chb, -(sa * shb))
    }

    pub fn sinh(&self) -> Self {
        let p = self.prec();
        let (sha, cha) = self.re.clone().sinh_cosh(Float::new(p));
        let (sb, cb) = self.im.clone().sin_cos(Float::new(p));
        Self::new(sha * cb, cha * sb)
    }

    pub fn cosh(&self) -> Self {
        let p = self.prec();
        let (sha, cha) = self.re.clone().sinh_cosh(Float::new(p));
        let (sb, cb) = self.im.clone().sin_cos(Float::new(p));
        Self::new(cha * cb, sha * sb)
    }

    /// `e^{i t}` for real `t`.
    pub fn expi(prec: Precision, t: &Float) -> Self {
        let (s, c) = t.clone().sin_cos(Float::new(prec.bits()));
        Self::new(c, s)
    }

    /// Euclidean distance to `rhs`, as an f64 (diagnostics and tolerances).
    pub fn dist(&self, rhs: &Self) -> f64 {
        self.sub(rhs).abs().to_f64()
    }
}

impl std::fmt::Display for Cplx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({} + {}i)", self.re.to_f64(), self.im.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prec() -> Precision {
        Precision::new(256).unwrap()
    }

    fn close(a: &Cplx, re: f64, im: f64, tol: f64) {
        assert!(
            (a.re.to_f64() - re).abs() < tol && (a.im.to_f64() - im).abs() < tol,
            "{a} != ({re}, {im})"
        );
    }

    #[test]
    fn field_ops() {
        let p = prec();
        let a = Cplx::with_f64(p, 3.0, -2.0);
        let b = Cplx::with_f64(p, -1.5, 0.25);
        close(&a.mul(&b), -4.0, 3.75, 1e-14);
        let q = a.div(&b);
        assert!(q.mul(&b).dist(&a) < 1e-70);
        close(&a.mul(&a.recip()), 1.0, 0.0, 1e-70);
    }

    #[test]
    fn exp_ln_inverse_pair() {
        let p = prec();
        let z = Cplx::with_f64(p, 0.3, -1.2);
        let w = z.exp().ln();
        assert!(w.dist(&z) < 1e-70);
    }

    #[test]
    fn principal_sqrt() {
        let p = prec();
        // sqrt(-1) = +i
        let m1 = Cplx::with_f64(p, -1.0, 0.0);
        close(&m1.sqrt(), 0.0, 1.0, 1e-70);
        // sqrt of right-half-plane values stays in the right half plane
        let z = Cplx::with_f64(p, 0.5, -7.0);
        let s = z.sqrt();
        assert!(s.re.is_sign_positive());
        assert!(s.mul(&s).dist(&z) < 1e-70);
        let z2 = Cplx::with_f64(p, -2.0, -1e-30);
        let s2 = z2.sqrt();
        assert!(s2.mul(&s2).dist(&z2) < 1e-70);
        assert!(s2.im.is_sign_negative());
    }

    #[test]
    fn trig_and_hyperbolic_against_f64() {
        let p = prec();
        let z = Cplx::with_f64(p, 0.7, 0.4);
        // sinh(a+bi) = sinh a cos b + i cosh a sin b
        let sh = z.sinh();
        let expect_re = 0.7f64.sinh() * 0.4f64.cos();
        let expect_im = 0.7f64.cosh() * 0.4f64.sin();
        close(&sh, expect_re, expect_im, 1e-14);
        // cosh^2 - sinh^2 = 1
        let ch = z.cosh();
        let id = ch.mul(&ch).sub(&sh.mul(&sh));
        close(&id, 1.0, 0.0, 1e-70);
        // sin^2 + cos^2 = 1
        let s = z.sin();
        let c = z.cos();
        let id2 = s.mul(&s).add(&c.mul(&c));
        close(&id2, 1.0, 0.0, 1e-70);
    }

    #[test]
    fn integer_powers() {
        let p = prec();
        let z = Cplx::with_f64(p, 1.1, -0.3);
        let z5 = z.powi(5);
        let manual = z.mul(&z).mul(&z).mul(&z).mul(&z);
        assert!(z5.dist(&manual) < 1e-70);
        close(&z.powi(-3).mul(&z.powi(3)), 1.0, 0.0, 1e-70);
    }

    #[test]
    fn pow_real_matches_powi_on_integers() {
        let p = prec();
        let z = Cplx::with_f64(p, 0.8, 0.6);
        let s = p.real(3);
        assert!(z.pow_real(&s).dist(&z.powi(3)) < 1e-70);
    }

    #[test]
    fn expi_is_unit_modulus() {
        let p = prec();
        let t = p.real(2.31);
        let z = Cplx::expi(p, &t);
        assert!((z.norm_sqr() - 1u32).abs() < 1e-70);
        assert!((z.arg() - t).abs() < 1e-70);
    }
}
