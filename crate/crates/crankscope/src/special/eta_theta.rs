//! The Dedekind eta function and the Jacobi theta function as truncated
//! infinite products, with their inversion laws as testable residuals.
//!
//! Conventions (`q = e^{2 pi i tau}`, `zeta = e^{2 pi i w}`):
//!
//! ```text
//!   eta(tau)      = q^{1/24} prod_{n>=1} (1 - q^n)
//!   theta(w; tau) = i zeta^{1/2} q^{1/8}
//!                   prod_{n>=1} (1 - q^n)(1 - zeta q^n)(1 - zeta^{-1} q^{n-1})
//! ```
//!
//! `zeta^{1/2}` means `e^{pi i w}` — defined through `w`, not through a root
//! of `zeta`, which keeps the product single-valued. Square roots in the
//! inversion laws are principal, with argument in `(-pi/2, pi/2]` for
//! arguments in the right half plane.

use rug::Float;

use crate::error::{Error, Result};
use crate::numerics::{Cplx, Precision};

/// Number of product terms so the tail stays below `2^-(prec/2 + 16)`,
/// given `log |q| = -2 pi Im tau` and an optional `log |zeta|` inflation.
fn product_terms(prec: Precision, im_tau: f64, log_abs_zeta: f64) -> usize {
    let bits = (prec.bits() / 2 + 16) as f64;
    let decay = 2.0 * std::f64::consts::PI * im_tau;
    let n = ((bits * std::f64::consts::LN_2 + log_abs_zeta.abs()) / decay).ceil() as usize;
    n.max(8) + 2
}

fn check_upper_half_plane(tau: &Cplx) -> Result<f64> {
    let im = tau.im.to_f64();
    if !(im > 0.0) {
        return Err(Error::Domain(format!(
            "tau must lie in the upper half plane, got Im tau = {im}"
        )));
    }
    Ok(im)
}

/// `e^{2 pi i tau * frac}` — powers of q with exact fractional exponents.
fn q_power(tau: &Cplx, num: i64, den: u64, prec: Precision) -> Cplx {
    let p = prec.bits();
    let mut s = prec.pi();
    s *= 2 * num;
    s /= Float::with_val(p, den);
    // exp(i * s * tau)
    tau.scale(&s).mul_i().exp()
}

/// Dedekind eta as a truncated product. Absolute truncation error stays
/// below `2^-(prec/2)` for `Im tau >= 0.01`; smaller heights simply cost
/// more product terms.
pub fn eta(tau: &Cplx, prec: Precision) -> Result<Cplx> {
    let im = check_upper_half_plane(tau)?;
    let n_terms = product_terms(prec, im, 0.0);
    let q = q_power(tau, 1, 1, prec);
    let mut acc = Cplx::one(prec);
    let mut qpow = Cplx::one(prec);
    for _ in 1..=n_terms {
        qpow.mul_assign(&q);
        let factor = Cplx::one(prec).sub(&qpow);
        acc.mul_assign(&factor);
    }
    Ok(q_power(tau, 1, 24, prec).mul(&acc))
}

/// Jacobi theta as a truncated triple product.
pub fn theta(w: &Cplx, tau: &Cplx, prec: Precision) -> Result<Cplx> {
    let im = check_upper_half_plane(tau)?;
    let p = prec.bits();
    // zeta = e^{2 pi i w}; its modulus inflates the needed tail length
    let two_pi = Float::with_val(p, &prec.pi() * 2u32);
    let zeta = w.scale(&two_pi).mul_i().exp();
    let zeta_inv = zeta.recip();
    let log_abs_zeta = 2.0 * std::f64::consts::PI * w.im.to_f64().abs();
    let n_terms = product_terms(prec, im, log_abs_zeta);

    let q = q_power(tau, 1, 1, prec);
    let one = Cplx::one(prec);
    let mut acc = one.sub(&zeta_inv); // the (1 - zeta^{-1} q^0) factor
    let mut qpow = Cplx::one(prec);
    for _ in 1..=n_terms {
        qpow.mul_assign(&q);
        let f1 = one.sub(&qpow);
        let f2 = one.sub(&zeta.mul(&qpow));
        let f3 = one.sub(&zeta_inv.mul(&qpow));
        acc.mul_assign(&f1);
        acc.mul_assign(&f2);
        acc.mul_assign(&f3);
    }
    // i zeta^{1/2} q^{1/8} with zeta^{1/2} = e^{pi i w}
    let half_zeta = w.scale(&prec.pi()).mul_i().exp();
    Ok(half_zeta.mul_i().mul(&q_power(tau, 1, 8, prec)).mul(&acc))
}

/// `sqrt(-i tau)`, principal branch.
pub fn sqrt_minus_i_tau(tau: &Cplx, prec: Precision) -> Cplx {
    let _ = prec;
    tau.mul_i().neg().sqrt()
}

/// Residual of the eta inversion law `eta(-1/tau) = sqrt(-i tau) eta(tau)`.
pub fn eta_transform_residual(tau: &Cplx, prec: Precision) -> Result<Float> {
    let inv = tau.recip().neg();
    let lhs = eta(&inv, prec)?;
    let rhs = sqrt_minus_i_tau(tau, prec).mul(&eta(tau, prec)?);
    Ok(lhs.sub(&rhs).abs())
}

/// Residual of the theta inversion law
/// `theta(w/tau; -1/tau) = -i sqrt(-i tau) e^{pi i w^2 / tau} theta(w; tau)`.
pub fn theta_transform_residual(w: &Cplx, tau: &Cplx, prec: Precision) -> Result<Float> {
    let inv = tau.recip().neg();
    let w_over_tau = w.div(tau);
    let lhs = theta(&w_over_tau, &inv, prec)?;
    let phase = w.mul(w).div(tau).scale(&prec.pi()).mul_i().exp();
    let rhs = sqrt_minus_i_tau(tau, prec)
        .mul(&phase)
        .mul(&theta(w, tau, prec)?)
        .mul_i()
        .neg();
    Ok(lhs.sub(&rhs).abs())
}
