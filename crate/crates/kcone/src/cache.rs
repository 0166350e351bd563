//! On-disk persistence of partition-function tables, enabled by setting
//! `KCONE_CACHE_DIR`.

use std::path::{Path, PathBuf};

use kcone_core::{QPolynomial, RootDatum};
use serde::{Deserialize, Serialize};

pub const CACHE_ENV: &str = "KCONE_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct CacheFile {
    cartan: Vec<Vec<i64>>,
    entries: Vec<CacheEntry>,
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    root_coords: Vec<i64>,
    /// `(degree, coefficient)` pairs.
    coefficients: Vec<(u32, i64)>,
}

pub fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

fn file_for(dir: &Path, datum: &RootDatum) -> PathBuf {
    let key: Vec<String> = datum
        .cartan_matrix()
        .to_rows()
        .iter()
        .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("_"))
        .collect();
    dir.join(format!("partitions-{}.json", key.join("__")))
}

/// Loads a stored table into the datum's cache. A missing, unreadable or
/// mismatched file is ignored.
pub fn load(dir: &Path, datum: &RootDatum) {
    let Ok(text) = std::fs::read_to_string(file_for(dir, datum)) else {
        return;
    };
    let Ok(file) = serde_json::from_str::<CacheFile>(&text) else {
        return;
    };
    if file.cartan != datum.cartan_matrix().to_rows() {
        return;
    }
    datum.partition_cache().extend(file.entries.into_iter().map(|e| {
        let mut p = QPolynomial::zero();
        for (d, c) in e.coefficients {
            p.add_term(d, c);
        }
        (e.root_coords, p)
    }));
}

pub fn store(dir: &Path, datum: &RootDatum) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let entries = datum
        .partition_cache()
        .entries()
        .into_iter()
        .map(|(root_coords, p)| CacheEntry { root_coords, coefficients: p.terms().collect() })
        .collect();
    let file = CacheFile { cartan: datum.cartan_matrix().to_rows(), entries };
    let text = serde_json::to_string(&file).map_err(std::io::Error::other)?;
    let path = file_for(dir, datum);
    let tmp = path.with_extension("json.tmp");
    std::fs::write(&tmp, text)?;
    std::fs::rename(tmp, path)
}
