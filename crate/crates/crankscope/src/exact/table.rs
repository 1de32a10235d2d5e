//! The exact crank counting table `M_k(m, n)` with in-memory and on-disk
//! caching.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, RwLock};

use rug::Integer;

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::exact::diskcache;
use crate::exact::series::{expand_crank, p_colored_table, BivariateSeries};

/// Shared, thread-safe access to crank expansions.
///
/// Reads are concurrent; at most one expansion per color count `k` runs at a
/// time (a second asker blocks and then reuses the result). Expansions are
/// persisted to the cache directory when one is configured.
pub struct CrankCache {
    cache_dir: Option<PathBuf>,
    truncation_limit: usize,
    map: RwLock<HashMap<u32, Arc<BivariateSeries>>>,
    build_locks: Mutex<HashMap<u32, Arc<Mutex<()>>>>,
}

impl CrankCache {
    pub fn new(config: &RunConfig) -> Self {
        Self {
            cache_dir: config.cache_dir.clone(),
            truncation_limit: config.truncation_limit,
            map: RwLock::new(HashMap::new()),
            build_locks: Mutex::new(HashMap::new()),
        }
    }

    pub fn truncation_limit(&self) -> usize {
        self.truncation_limit
    }

    /// Round a requested truncation up so repeated nearby requests share one
    /// expansion (and one cache file).
    fn target_trunc(&self, n_min: usize) -> usize {
        let stepped = n_min.max(64).next_power_of_two();
        stepped.min(self.truncation_limit).max(n_min)
    }

    /// The expansion of `C_k` through at least `q^n_min`.
    pub fn series(&self, k: u32, n_min: usize) -> Result<Arc<BivariateSeries>> {
        if n_min > self.truncation_limit {
            return Err(Error::TruncationExceeded {
                requested: n_min,
                limit: self.truncation_limit,
            });
        }
        if let Some(hit) = self.lookup(k, n_min) {
            return Ok(hit);
        }
        let gate = {
            let mut locks = self.build_locks.lock().unwrap();
            locks.entry(k).or_default().clone()
        };
        let _guard = gate.lock().unwrap();
        // another thread may have built it while we waited
        if let Some(hit) = self.lookup(k, n_min) {
            return Ok(hit);
        }
        let target = self.target_trunc(n_min);
        let series = match self.load_from_disk(k, target) {
            Some(s) => s,
            None => {
                let s = Arc::new(expand_crank(k, target, self.truncation_limit)?);
                if let Some(dir) = &self.cache_dir {
                    diskcache::write_series(dir, &s)?;
                }
                s
            }
        };
        self.map.write().unwrap().insert(k, series.clone());
        Ok(series)
    }

    fn lookup(&self, k: u32, n_min: usize) -> Option<Arc<BivariateSeries>> {
        let map = self.map.read().unwrap();
        map.get(&k).filter(|s| s.trunc() >= n_min).cloned()
    }

    /// A verified disk entry with truncation >= `n_min`, if any. Corrupt
    /// entries are skipped; a recompute follows, never a silent zero.
    fn load_from_disk(&self, k: u32, n_min: usize) -> Option<Arc<BivariateSeries>> {
        let dir = self.cache_dir.as_deref()?;
        let mut candidates: Vec<_> = diskcache::scan_dir(dir)
            .ok()?
            .into_iter()
            .filter(|i| i.k == k && i.n_max >= n_min && i.checksum_ok)
            .collect();
        candidates.sort_by_key(|i| i.n_max);
        let info = candidates.first()?;
        diskcache::read_series(&info.path).ok().map(Arc::new)
    }

    /// Exact `M_k(m, n)`. Symmetric in `m`; zero for `|m| > n` by support.
    pub fn m_exact(&self, k: u32, m: i64, n: u64) -> Result<Integer> {
        if m.unsigned_abs() > n {
            return Ok(Integer::new());
        }
        let s = self.series(k, n as usize)?;
        Ok(s.coefficient(m, n as usize))
    }
}

/// A materialized rectangle of exact crank counts, for output and checks.
#[derive(Debug, Clone)]
pub struct CrankTable {
    k: u32,
    max_n: u64,
    m_lo: i64,
    m_hi: i64,
    /// rows[n] holds `M_k(m, n)` for `m` in `m_lo..=m_hi`
    rows: Vec<Vec<Integer>>,
}

impl CrankTable {
    pub fn build(cache: &CrankCache, k: u32, max_n: u64, m_lo: i64, m_hi: i64) -> Result<Self> {
        if m_lo > m_hi {
            return Err(Error::Domain(format!("empty m range {m_lo}..={m_hi}")));
        }
        let series = cache.series(k, max_n as usize)?;
        let rows = (0..=max_n)
            .map(|n| {
                (m_lo..=m_hi)
                    .map(|m| series.coefficient(m, n as usize))
                    .collect()
            })
            .collect();
        Ok(Self {
            k,
            max_n,
            m_lo,
            m_hi,
            rows,
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn max_n(&self) -> u64 {
        self.max_n
    }

    pub fn m_range(&self) -> (i64, i64) {
        (self.m_lo, self.m_hi)
    }

    pub fn entry(&self, m: i64, n: u64) -> Option<&Integer> {
        if n > self.max_n || m < self.m_lo || m > self.m_hi {
            return None;
        }
        Some(&self.rows[n as usize][(m - self.m_lo) as usize])
    }

    /// Check the structural invariants: evenness in `m` and column sums
    /// equal to the colored partition counts. Only meaningful when the `m`
    /// range covers `[-n, n]`.
    pub fn validate(&self) -> Result<()> {
        let pk = p_colored_table(self.k, self.max_n as usize);
        for n in 0..=self.max_n {
            if self.m_lo <= -(n as i64) && self.m_hi >= n as i64 {
                let sum = Integer::from(Integer::sum(self.rows[n as usize].iter()));
                if sum != pk[n as usize] {
                    return Err(Error::Domain(format!(
                        "column sum at n={n} is {sum}, expected p_{}({n}) = {}",
                        self.k, pk[n as usize]
                    )));
                }
            }
            for m in self.m_lo.max(-self.m_hi)..=self.m_hi.min(-self.m_lo) {
                if self.entry(m, n) != self.entry(-m, n) {
                    return Err(Error::Domain(format!("asymmetry at m={m}, n={n}")));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cache() -> CrankCache {
        CrankCache::new(&RunConfig::default())
    }

    #[test]
    fn m_exact_published_cells() {
        let c = cache();
        assert_eq!(c.m_exact(1, 0, 50).unwrap(), 8626);
        assert_eq!(c.m_exact(1, 1, 50).unwrap(), 8541);
        assert_eq!(c.m_exact(1, -1, 50).unwrap(), 8541);
    }

    #[test]
    fn m_exact_weight_zero_and_support() {
        let c = cache();
        assert_eq!(c.m_exact(1, 0, 0).unwrap(), 1);
        assert_eq!(c.m_exact(1, 3, 0).unwrap(), 0);
        assert_eq!(c.m_exact(1, 31, 30).unwrap(), 0);
    }

    #[test]
    fn truncation_miss_is_an_error_not_zero() {
        let cfg = RunConfig {
            truncation_limit: 40,
            ..RunConfig::default()
        };
        let c = CrankCache::new(&cfg);
        assert!(matches!(
            c.m_exact(1, 0, 41),
            Err(Error::TruncationExceeded { .. })
        ));
    }

    #[test]
    fn disk_cache_round_trip_through_cache() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = RunConfig {
            cache_dir: Some(dir.path().to_path_buf()),
            ..RunConfig::default()
        };
        {
            let c = CrankCache::new(&cfg);
            assert_eq!(c.m_exact(1, 0, 20).unwrap(), 41);
        }
        // fresh cache object must pick the file up from disk
        let infos = diskcache::scan_dir(dir.path()).unwrap();
        assert_eq!(infos.len(), 1);
        let c2 = CrankCache::new(&cfg);
        assert_eq!(c2.m_exact(1, 1, 20).unwrap(), 38);
    }

    #[test]
    fn table_build_and_validate() {
        let c = cache();
        let t = CrankTable::build(&c, 2, 12, -12, 12).unwrap();
        t.validate().unwrap();
        assert_eq!(t.entry(0, 0).unwrap(), &Integer::from(1));
        assert!(t.entry(13, 5).is_none());
    }

    #[test]
    fn concurrent_readers_share_one_expansion() {
        let c = std::sync::Arc::new(cache());
        let mut handles = Vec::new();
        for t in 0..4 {
            let c = c.clone();
            handles.push(std::thread::spawn(move || {
                c.m_exact(1, t as i64, 30 + t).unwrap()
            }));
        }
        for h in handles {
            h.join().unwrap();
        }
        assert_eq!(c.map.read().unwrap().len(), 1);
    }
}
