//! On-disk cache of generalized Bernoulli numbers.
//!
//! A single JSON object mapping `"p:logvalue:n"` to the power-basis
//! coefficients of `B_n^χ` for the character of modulus `p²`. Only
//! characters of modulus `p²` are persisted.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context};
use moore_l::arith::modular::odd_prime_power;
use moore_l::arith::{format_rational, parse_rational};
use moore_l::bernoulli::BernoulliCache;
use moore_l::Cyclotomic;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub order: u64,
    pub coeffs: Vec<String>,
}

pub type CacheFile = BTreeMap<String, CacheEntry>;

fn parse_key(key: &str) -> anyhow::Result<(u64, u64, u64)> {
    let parts: Vec<&str> = key.split(':').collect();
    let [p, j, n] = parts.as_slice() else {
        bail!("malformed cache key {key:?}");
    };
    Ok((p.parse()?, j.parse()?, n.parse()?))
}

/// Loads entries into `cache`; a missing file is an empty cache.
pub fn load_into(path: &Path, cache: &BernoulliCache) -> anyhow::Result<usize> {
    if !path.exists() {
        return Ok(0);
    }
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file: CacheFile = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    for (key, entry) in &file {
        let (p, j, n) = parse_key(key)?;
        let coeffs = entry
            .coeffs
            .iter()
            .map(|c| parse_rational(c).map_err(anyhow::Error::from))
            .collect::<anyhow::Result<Vec<_>>>()?;
        cache.insert((p * p, j, n), Cyclotomic::from_coeffs(entry.order, coeffs));
    }
    Ok(file.len())
}

pub fn snapshot(cache: &BernoulliCache) -> CacheFile {
    cache
        .snapshot()
        .into_iter()
        .filter_map(|((modulus, j, n), value)| match odd_prime_power(modulus) {
            Some((p, 2)) => Some((
                format!("{p}:{j}:{n}"),
                CacheEntry {
                    order: value.order(),
                    coeffs: value.coeffs().iter().map(format_rational).collect(),
                },
            )),
            _ => None,
        })
        .collect()
}

/// Writes the cache through a temporary file in the same directory and
/// renames it into place.
pub fn save_from(path: &Path, cache: &BernoulliCache) -> anyhow::Result<usize> {
    let file = snapshot(cache);
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("creating temp file in {}", dir.display()))?;
    tmp.write_all(serde_json::to_string(&file)?.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path).with_context(|| format!("renaming into {}", path.display()))?;
    Ok(file.len())
}
