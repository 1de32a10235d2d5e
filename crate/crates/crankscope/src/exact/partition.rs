//! Partitions, the crank statistic, and exhaustive enumeration.
//!
//! Enumeration is the slow-but-unarguable route: it is used to cross-check
//! the generating-function expansions coefficient by coefficient.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// An integer partition: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u32>,
    weight: u64,
}

impl Partition {
    /// Build a partition from weakly decreasing positive parts.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::InvalidPartition(format!(
                    "parts not weakly decreasing: {} < {}",
                    w[0], w[1]
                )));
            }
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidPartition("zero part".into()));
        }
        let weight = parts.iter().map(|&p| p as u64).sum();
        Ok(Self { parts, weight })
    }

    /// The empty partition of 0.
    pub fn empty() -> Self {
        Self {
            parts: Vec::new(),
            weight: 0,
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The number being partitioned.
    pub fn weight(&self) -> u64 {
        self.weight
    }

    pub fn largest_part(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }
}

/// The crank of a partition.
///
/// With `o` the number of ones and `mu` the number of parts strictly larger
/// than `o`: the crank is the largest part when `o = 0`, and `mu - o`
/// otherwise. The empty partition has crank 0 (its largest part is taken to
/// be 0), which makes the census at weight 0 agree with the constant term of
/// the generating function.
pub fn crank(p: &Partition) -> i64 {
    crank_of_parts(p.parts())
}

fn crank_of_parts(parts: &[u32]) -> i64 {
    let ones = parts.iter().filter(|&&p| p == 1).count() as u32;
    if ones == 0 {
        parts.first().copied().unwrap_or(0) as i64
    } else {
        let larger = parts.iter().filter(|&&p| p > ones).count() as i64;
        larger - ones as i64
    }
}

/// Visit every partition of `n` (as a weakly decreasing slice) in ascending
/// lexicographic order, without materializing the whole list.
pub fn for_each_partition<F: FnMut(&[u32])>(n: u64, mut f: F) {
    if n == 0 {
        f(&[]);
        return;
    }
    let mut buf: Vec<u32> = Vec::with_capacity(n as usize);
    descend(n, n, &mut buf, &mut f);
}

// Partitions of `n` with parts <= `max`, largest part chosen first and
// increasing, which is lexicographic order on the decreasing tuples.
fn descend<F: FnMut(&[u32])>(n: u64, max: u64, buf: &mut Vec<u32>, f: &mut F) {
    debug_assert!(n > 0);
    for a in 1..=n.min(max) {
        buf.push(a as u32);
        let rest = n - a;
        if rest == 0 {
            f(buf);
        } else {
            descend(rest, a, buf, f);
        }
        buf.pop();
    }
}

/// All partitions of `n`, lexicographically ordered.
///
/// Refuses when `n` exceeds `limit`: the count grows subexponentially and
/// enumeration past desk scale is always a mistake upstream.
pub fn partitions_of(n: u64, limit: u64) -> Result<Vec<Partition>> {
    if n > limit {
        return Err(Error::EnumerationTooLarge { n, limit });
    }
    let mut out = Vec::new();
    for_each_partition(n, |parts| {
        out.push(Partition {
            parts: parts.to_vec(),
            weight: n,
        });
    });
    Ok(out)
}

/// Histogram of the crank over all partitions of `n`.
pub fn crank_census(n: u64, limit: u64) -> Result<BTreeMap<i64, u64>> {
    if n > limit {
        return Err(Error::EnumerationTooLarge { n, limit });
    }
    let mut hist = BTreeMap::new();
    for_each_partition(n, |parts| {
        *hist.entry(crank_of_parts(parts)).or_insert(0) += 1;
    });
    Ok(hist)
}
