//! On-disk cache of Bernoulli and Euler tables.
//!
//! The file is JSON with a format tag and both tables as decimal strings
//! ("num/den" for rationals). Loading never trusts the file: the structural
//! invariants are re-checked over the whole table and the defining
//! recurrences are re-verified at the top of each table plus randomly chosen
//! interior indices, so a corrupt cache is rejected up front instead of
//! poisoning exact results.

use std::fmt;
use std::fs;
use std::io;
use std::path::Path;
use std::str::FromStr;

use clf_core::arith::{Integer, Rational};
use clf_core::sequences::SequenceCache;
use rand::Rng;
use serde::{Deserialize, Serialize};

pub const FORMAT_TAG: &str = "clf-cache-v1";
const SPOT_CHECKS: usize = 5;

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format: String,
    bernoulli: Vec<String>,
    euler: Vec<String>,
}

/// Parsed and validated tables, ready to seed worker caches.
pub struct CacheSeed {
    pub bernoulli: Vec<Rational>,
    pub euler: Vec<Integer>,
}

#[derive(Debug)]
pub enum CacheError {
    Io(io::Error),
    Malformed(String),
    Rejected(String),
}

impl fmt::Display for CacheError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CacheError::Io(e) => write!(f, "{e}"),
            CacheError::Malformed(msg) => write!(f, "malformed cache: {msg}"),
            CacheError::Rejected(msg) => write!(f, "cache failed validation: {msg}"),
        }
    }
}

impl std::error::Error for CacheError {}

/// Compute both tables out to `entries` values and write them.
pub fn write(path: &Path, entries: usize) -> Result<(), CacheError> {
    let cache = SequenceCache::new();
    let file = CacheFile {
        format: FORMAT_TAG.to_string(),
        bernoulli: cache
            .bernoulli_prefix(entries)
            .iter()
            .map(|x| x.to_string())
            .collect(),
        euler: cache
            .euler_prefix(entries)
            .iter()
            .map(|x| x.to_string())
            .collect(),
    };
    let text = serde_json::to_string_pretty(&file).map_err(|e| CacheError::Malformed(e.to_string()))?;
    fs::write(path, text).map_err(CacheError::Io)
}

/// Load a cache file, re-checking structure everywhere and the defining
/// recurrences at the top of each table plus [`SPOT_CHECKS`] random indices.
pub fn load_validated(path: &Path) -> Result<CacheSeed, CacheError> {
    let text = fs::read_to_string(path).map_err(CacheError::Io)?;
    let file: CacheFile =
        serde_json::from_str(&text).map_err(|e| CacheError::Malformed(e.to_string()))?;
    if file.format != FORMAT_TAG {
        return Err(CacheError::Malformed(format!(
            "format tag {:?}, expected {FORMAT_TAG:?}",
            file.format
        )));
    }
    let bernoulli = parse_table(&file.bernoulli, "bernoulli", Rational::from_str)?;
    let euler = parse_table(&file.euler, "euler", Integer::from_str)?;

    let probe = SequenceCache::new();
    probe
        .adopt_bernoulli(&bernoulli, &random_indices(bernoulli.len()))
        .map_err(|e| CacheError::Rejected(e.to_string()))?;
    probe
        .adopt_euler(&euler, &random_indices(euler.len()))
        .map_err(|e| CacheError::Rejected(e.to_string()))?;
    Ok(CacheSeed { bernoulli, euler })
}

fn parse_table<T, E: fmt::Display>(
    raw: &[String],
    table: &str,
    parse: impl Fn(&str) -> Result<T, E>,
) -> Result<Vec<T>, CacheError> {
    raw.iter()
        .enumerate()
        .map(|(i, s)| {
            parse(s).map_err(|e| CacheError::Malformed(format!("{table}[{i}] = {s:?}: {e}")))
        })
        .collect()
}

/// Spot-check indices: the top two always (the recurrence at index `i` is one
/// linear relation over every entry up to `i` with nonzero coefficients, so a
/// check anchored at the top detects any single corrupted entry — and for the
/// Euler table the relation is vacuous at odd `i`, hence two anchors so one is
/// the largest even index), plus random interior picks against corruptions
/// that conspire to cancel at the top.
fn random_indices(len: usize) -> Vec<usize> {
    if len < 2 {
        return Vec::new();
    }
    let mut rng = rand::thread_rng();
    let mut picks = vec![len - 1, len - 2];
    picks.extend((0..SPOT_CHECKS).map(|_| rng.gen_range(1..len)));
    picks
}
