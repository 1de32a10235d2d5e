//! Versioned on-disk persistence for expanded coefficient tables.
//!
//! One file per `(k, N)`. Layout, all little-endian:
//!
//! ```text
//!   magic "CRKSCOPE" | version u32 | k u32 | n_max u64
//!   | payload_len u64 | sha256(payload) [32] | payload
//! ```
//!
//! The payload stores, for each q-power, the window base exponent and the
//! signed big-integer coefficients. Readers verify magic, version, and
//! checksum; any mismatch is reported, never silently repaired.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use rug::integer::Order;
use rug::Integer;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exact::laurent::LaurentPoly;
use crate::exact::series::BivariateSeries;

const MAGIC: &[u8; 8] = b"CRKSCOPE";
const VERSION: u32 = 1;

pub fn cache_file_name(k: u32, n_max: usize) -> String {
    format!("crank_k{k}_n{n_max}.bin")
}

pub fn cache_path(dir: &Path, k: u32, n_max: usize) -> PathBuf {
    dir.join(cache_file_name(k, n_max))
}

fn push_integer(buf: &mut Vec<u8>, v: &Integer) {
    let digits = v.to_digits::<u8>(Order::Lsf);
    buf.extend_from_slice(&(digits.len() as u32).to_le_bytes());
    buf.push(match v.cmp0() {
        std::cmp::Ordering::Less => 1,
        _ => 0,
    });
    buf.extend_from_slice(&digits);
}

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], String> {
        if self.pos + n > self.data.len() {
            return Err("truncated payload".into());
        }
        let s = &self.data[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }
    fn u32(&mut self) -> Result<u32, String> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }
    fn u64(&mut self) -> Result<u64, String> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
    fn i64(&mut self) -> Result<i64, String> {
        Ok(i64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
    fn integer(&mut self) -> Result<Integer, String> {
        let len = self.u32()? as usize;
        let neg = self.take(1)?[0] == 1;
        let digits = self.take(len)?;
        let mut v = Integer::from_digits(digits, Order::Lsf);
        if neg {
            v = -v;
        }
        Ok(v)
    }
}

fn encode_payload(series: &BivariateSeries) -> Vec<u8> {
    let mut buf = Vec::new();
    for n in 0..=series.trunc() {
        let term = series.term(n);
        let (lo, coeffs) = term.raw();
        buf.extend_from_slice(&lo.to_le_bytes());
        buf.extend_from_slice(&(coeffs.len() as u64).to_le_bytes());
        for c in coeffs {
            push_integer(&mut buf, c);
        }
    }
    buf
}

fn decode_payload(k: u32, n_max: usize, payload: &[u8]) -> Result<BivariateSeries, String> {
    let mut cur = Cursor {
        data: payload,
        pos: 0,
    };
    let mut terms = Vec::with_capacity(n_max + 1);
    for _ in 0..=n_max {
        let lo = cur.i64()?;
        let count = cur.u64()? as usize;
        let mut coeffs = Vec::with_capacity(count);
        for _ in 0..count {
            coeffs.push(cur.integer()?);
        }
        terms.push(LaurentPoly::from_window(lo, coeffs));
    }
    if cur.pos != payload.len() {
        return Err("trailing bytes after payload".into());
    }
    Ok(BivariateSeries::from_parts(k, n_max, terms))
}

/// Write a series to `dir`, creating the directory if needed.
pub fn write_series(dir: &Path, series: &BivariateSeries) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = cache_path(dir, series.k(), series.trunc());
    let payload = encode_payload(series);
    let digest = Sha256::digest(&payload);
    let mut buf = Vec::with_capacity(payload.len() + 64);
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&VERSION.to_le_bytes());
    buf.extend_from_slice(&series.k().to_le_bytes());
    buf.extend_from_slice(&(series.trunc() as u64).to_le_bytes());
    buf.extend_from_slice(&(payload.len() as u64).to_le_bytes());
    buf.extend_from_slice(&digest);
    buf.extend_from_slice(&payload);
    let tmp = path.with_extension("bin.tmp");
    fs::File::create(&tmp)?.write_all(&buf)?;
    fs::rename(&tmp, &path)?;
    Ok(path)
}

fn format_err(path: &Path, reason: impl Into<String>) -> Error {
    Error::CacheFormat {
        path: path.to_path_buf(),
        reason: reason.into(),
    }
}

/// Header fields of a cache file, plus checksum status.
#[derive(Debug, Clone)]
pub struct CacheEntryInfo {
    pub path: PathBuf,
    pub k: u32,
    pub n_max: usize,
    pub bytes: u64,
    pub checksum_ok: bool,
}

fn read_header(path: &Path, data: &[u8]) -> Result<(u32, usize, usize, [u8; 32])> {
    if data.len() < 64 {
        return Err(format_err(path, "file shorter than header"));
    }
    if &data[0..8] != MAGIC {
        return Err(format_err(path, "bad magic"));
    }
    let version = u32::from_le_bytes(data[8..12].try_into().unwrap());
    if version != VERSION {
        return Err(format_err(path, format!("unsupported version {version}")));
    }
    let k = u32::from_le_bytes(data[12..16].try_into().unwrap());
    let n_max = u64::from_le_bytes(data[16..24].try_into().unwrap()) as usize;
    let payload_len = u64::from_le_bytes(data[24..32].try_into().unwrap()) as usize;
    let mut digest = [0u8; 32];
    digest.copy_from_slice(&data[32..64]);
    if data.len() != 64 + payload_len {
        return Err(format_err(path, "payload length mismatch"));
    }
    Ok((k, n_max, payload_len, digest))
}

/// Read and fully verify a cache file.
pub fn read_series(path: &Path) -> Result<BivariateSeries> {
    let mut data = Vec::new();
    fs::File::open(path)?.read_to_end(&mut data)?;
    let (k, n_max, _len, digest) = read_header(path, &data)?;
    let payload = &data[64..];
    let actual = Sha256::digest(payload);
    if actual[..] != digest[..] {
        return Err(format_err(path, "checksum mismatch"));
    }
    decode_payload(k, n_max, payload).map_err(|e| format_err(path, e))
}

/// Enumerate cache files in `dir` with their verification status.
pub fn scan_dir(dir: &Path) -> Result<Vec<CacheEntryInfo>> {
    let mut out = Vec::new();
    if !dir.exists() {
        return Ok(out);
    }
    for entry in fs::read_dir(dir)? {
        let path = entry?.path();
        let name = match path.file_name().and_then(|s| s.to_str()) {
            Some(s) => s,
            None => continue,
        };
        if !(name.starts_with("crank_k") && name.ends_with(".bin")) {
            continue;
        }
        let mut data = Vec::new();
        if fs::File::open(&path)
            .and_then(|mut f| f.read_to_end(&mut data))
            .is_err()
        {
            continue;
        }
        match read_header(&path, &data) {
            Ok((k, n_max, _, digest)) => {
                let checksum_ok = Sha256::digest(&data[64..])[..] == digest[..];
                out.push(CacheEntryInfo {
                    path: path.clone(),
                    k,
                    n_max,
                    bytes: data.len() as u64,
                    checksum_ok,
                });
            }
            Err(_) => out.push(CacheEntryInfo {
                path: path.clone(),
                k: 0,
                n_max: 0,
                bytes: data.len() as u64,
                checksum_ok: false,
            }),
        }
    }
    out.sort_by(|a, b| (a.k, a.n_max).cmp(&(b.k, b.n_max)));
    Ok(out)
}

/// Remove all cache files from `dir`. Returns the number removed.
pub fn clear_dir(dir: &Path) -> Result<usize> {
    let mut removed = 0;
    for info in scan_dir(dir)? {
        fs::remove_file(&info.path)?;
        removed += 1;
    }
    Ok(removed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::series::expand_crank;

    #[test]
    fn round_trip_preserves_series() {
        let dir = tempfile::tempdir().unwrap();
        let s = expand_crank(1, 25, 1000).unwrap();
        let path = write_series(dir.path(), &s).unwrap();
        let back = read_series(&path).unwrap();
        assert_eq!(s, back);
    }

    #[test]
    fn checksum_detects_flipped_byte() {
        let dir = tempfile::tempdir().unwrap();
        let s = expand_crank(2, 10, 1000).unwrap();
        let path = write_series(dir.path(), &s).unwrap();
        let mut data = fs::read(&path).unwrap();
        let last = data.len() - 1;
        data[last] ^= 0x55;
        fs::write(&path, &data).unwrap();
        match read_series(&path) {
            Err(Error::CacheFormat { reason, .. }) => {
                assert!(reason.contains("checksum"), "reason: {reason}")
            }
            other => panic!("expected checksum failure, got {other:?}"),
        }
    }

    #[test]
    fn scan_reports_entries() {
        let dir = tempfile::tempdir().unwrap();
        write_series(dir.path(), &expand_crank(1, 8, 1000).unwrap()).unwrap();
        write_series(dir.path(), &expand_crank(2, 12, 1000).unwrap()).unwrap();
        let infos = scan_dir(dir.path()).unwrap();
        assert_eq!(infos.len(), 2);
        assert!(infos.iter().all(|i| i.checksum_ok));
        assert_eq!(infos[0].k, 1);
        assert_eq!(infos[1].n_max, 12);
        assert_eq!(clear_dir(dir.path()).unwrap(), 2);
        assert!(scan_dir(dir.path()).unwrap().is_empty());
    }
}
