//! Big-integer q-series: the partition counting functions and the bivariate
//! crank generating function
//!
//! ```text
//!   C_k(zeta; q) = (q; q)_inf^(2-k) / ((zeta q; q)_inf (zeta^-1 q; q)_inf)
//!               = sum_n sum_m  M_k(m, n) zeta^m q^n ,
//! ```
//!
//! expanded exactly through a target q-power. Everything in this module is
//! integer arithmetic; this layer is the oracle all analytic layers are
//! judged against.

use rug::{Assign, Integer};

use crate::error::{Error, Result};
use crate::exact::laurent::LaurentPoly;

/// Generalized pentagonal numbers `g = j(3j -/+ 1)/2 <= n_max` with the sign
/// `(-1)^j` of the corresponding term of `(q; q)_inf`.
pub fn pentagonal_terms(n_max: usize) -> Vec<(usize, i32)> {
    let mut out = vec![(0usize, 1i32)];
    let mut j: u64 = 1;
    loop {
        let g1 = (j * (3 * j - 1) / 2) as usize;
        if g1 > n_max {
            break;
        }
        let sign = if j % 2 == 1 { -1 } else { 1 };
        out.push((g1, sign));
        let g2 = (j * (3 * j + 1) / 2) as usize;
        if g2 <= n_max {
            out.push((g2, sign));
        }
        j += 1;
    }
    out.sort_unstable();
    out
}

/// Partition numbers `p(0..=n_max)` by Euler's pentagonal recurrence.
pub fn partition_table(n_max: usize) -> Vec<Integer> {
    let mut p = vec![Integer::new(); n_max + 1];
    p[0].assign(1);
    // reusable list of (offset, sign), offsets > 0
    let pents: Vec<(usize, i32)> = pentagonal_terms(n_max)
        .into_iter()
        .filter(|&(g, _)| g > 0)
        .collect();
    for n in 1..=n_max {
        let mut acc = Integer::new();
        for &(g, sign) in &pents {
            if g > n {
                break;
            }
            // recurrence has the opposite sign of the series coefficient
            if sign < 0 {
                acc += &p[n - g];
            } else {
                acc -= &p[n - g];
            }
        }
        p[n] = acc;
    }
    p
}

/// The number of partitions of `n`.
pub fn p(n: u64) -> Integer {
    partition_table(n as usize).pop().unwrap()
}

/// Counts of `k`-colored partitions `p_k(0..=n_max)`: coefficients of
/// `(q; q)_inf^(-k)`, computed as iterated convolution with `p`.
pub fn p_colored_table(k: u32, n_max: usize) -> Vec<Integer> {
    assert!(k >= 1, "color count must be positive");
    let base = partition_table(n_max);
    let mut cur = base.clone();
    for _ in 1..k {
        let mut next = vec![Integer::new(); n_max + 1];
        for (n, slot) in next.iter_mut().enumerate() {
            let mut acc = Integer::new();
            for (j, b) in base.iter().enumerate().take(n + 1) {
                acc += Integer::from(b * &cur[n - j]);
            }
            slot.assign(acc);
        }
        cur = next;
    }
    cur
}

/// The number of `k`-colored partitions of `n`.
pub fn p_colored(k: u32, n: u64) -> Integer {
    p_colored_table(k, n as usize).pop().unwrap()
}

/// A truncated power series in q whose coefficients are Laurent polynomials
/// in the crank variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariateSeries {
    k: u32,
    trunc: usize,
    terms: Vec<LaurentPoly>,
}

impl BivariateSeries {
    /// Color count of the expansion this series holds.
    pub fn k(&self) -> u32 {
        self.k
    }

    /// The series is exact through `q^trunc`.
    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn term(&self, n: usize) -> &LaurentPoly {
        &self.terms[n]
    }

    pub fn terms(&self) -> &[LaurentPoly] {
        &self.terms
    }

    /// Coefficient of `zeta^m q^n`.
    pub fn coefficient(&self, m: i64, n: usize) -> Integer {
        self.terms[n].coeff(m)
    }

    pub(crate) fn from_parts(k: u32, trunc: usize, terms: Vec<LaurentPoly>) -> Self {
        debug_assert_eq!(terms.len(), trunc + 1);
        Self { k, trunc, terms }
    }
}

/// Expand `C_k(zeta; q)` exactly through `q^n_max`.
///
/// The two infinite products over `zeta q^j` and `zeta^-1 q^j` are applied as
/// in-place geometric updates (ascending in the q-power, one pass per factor),
/// on top of the scalar series for `(q; q)_inf^(2-k)`. Dense exponent windows
/// `[-n, n]` keep the inner loop branch-free; cost is O(n_max^3) coefficient
/// additions, which is desk-scale through n_max = 1000.
pub fn expand_crank(k: u32, n_max: usize, limit: usize) -> Result<BivariateSeries> {
    if k < 1 {
        return Err(Error::Domain("color count k must be >= 1".into()));
    }
    if n_max > limit {
        return Err(Error::TruncationExceeded {
            requested: n_max,
            limit,
        });
    }
    let nn = n_max;
    // windows[n] is the dense coefficient row for q^n over exponents [-n, n]
    let mut win: Vec<Vec<Integer>> = (0..=nn).map(|n| vec![Integer::new(); 2 * n + 1]).collect();

    // seed with (q; q)_inf^(2-k)
    match k {
        1 => {
            for (g, sign) in pentagonal_terms(nn) {
                win[g][g].assign(sign);
            }
        }
        2 => {
            win[0][0].assign(1);
        }
        _ => {
            let tbl = p_colored_table(k - 2, nn);
            for (n, v) in tbl.iter().enumerate() {
                win[n][n].assign(v);
            }
        }
    }

    // multiply by 1/(zeta q^j; q)_inf, then 1/(zeta^-1 q^j; q)_inf
    for shift in [1i64, -1] {
        for j in 1..=nn {
            for n in j..=nn {
                let (lo_rows, hi_rows) = win.split_at_mut(n);
                let src = &lo_rows[n - j];
                let dst = &mut hi_rows[0];
                let src_center = (n - j) as i64;
                let dst_center = n as i64;
                for (i, c) in src.iter().enumerate() {
                    if c.cmp0() != std::cmp::Ordering::Equal {
                        let e = i as i64 - src_center;
                        dst[(e + shift + dst_center) as usize] += c;
                    }
                }
            }
        }
    }

    let terms: Vec<LaurentPoly> = win
        .into_iter()
        .enumerate()
        .map(|(n, row)| LaurentPoly::from_window_unchecked(-(n as i64), row))
        .collect();
    Ok(BivariateSeries::from_parts(k, nn, terms))
}

/// Expand the crank generating function (`k = 1`) through `q^n_max` by the
/// Lerch-type series route:
///
/// ```text
///   (1 - zeta)/(q)_inf * sum_{j in Z} (-1)^j q^{j(j+1)/2} / (1 - zeta q^j).
/// ```
///
/// The `j = 0` summand times the prefactor is identically 1 and is folded in
/// algebraically (never evaluated as `1/(1 - zeta)`, which has no Laurent
/// expansion). The `j < 0` half is rewritten over `zeta^-1` so only
/// nonnegative q-powers appear. Entirely independent of [`expand_crank`],
/// which it must match coefficient for coefficient.
pub fn expand_crank_lerch(n_max: usize, limit: usize) -> Result<BivariateSeries> {
    if n_max > limit {
        return Err(Error::TruncationExceeded {
            requested: n_max,
            limit,
        });
    }
    let nn = n_max;
    let mut inner: Vec<LaurentPoly> = vec![LaurentPoly::zero(); nn + 1];
    inner[0] = LaurentPoly::constant(Integer::from(1));
    let mut j: usize = 1;
    loop {
        let tri = j * (j + 1) / 2;
        if tri > nn {
            break;
        }
        let sign = if j % 2 == 1 { -1 } else { 1 };
        // (1 - zeta) * (-1)^j * zeta^a q^(tri + a j), a >= 0
        let mut a: i64 = 0;
        loop {
            let pow = tri + (a as usize) * j;
            if pow > nn {
                break;
            }
            let term = inner[pow].clone();
            inner[pow] = term
                + &LaurentPoly::from_window(a, vec![Integer::from(sign), Integer::from(-sign)]);
            // mirror half over zeta^-1
            let mirror = inner[pow].clone();
            inner[pow] = mirror
                + &LaurentPoly::from_window(
                    -a - 1,
                    vec![Integer::from(-sign), Integer::from(sign)],
                );
            a += 1;
        }
        j += 1;
    }
    // multiply by 1/(q)_inf
    let ptab = partition_table(nn);
    let mut terms: Vec<LaurentPoly> = Vec::with_capacity(nn + 1);
    for n in 0..=nn {
        let mut acc = LaurentPoly::zero();
        for (g, pg) in ptab.iter().enumerate().take(n + 1) {
            if inner[n - g].is_zero() {
                continue;
            }
            let (lo, coeffs) = inner[n - g].raw();
            let mut scaled: Vec<Integer> = Vec::with_capacity(coeffs.len());
            for c in coeffs {
                scaled.push(Integer::from(c * pg));
            }
            acc.add_scaled_shifted(&LaurentPoly::from_window(lo, scaled), 1, 0);
        }
        terms.push(acc);
    }
    Ok(BivariateSeries::from_parts(1, nn, terms))
}
