//! On-disk cache of generator expansions, one JSON file per (l, a, k, prec).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use super::poly::GeneratorSymbol;
use super::GenError;
use crate::arith::json::{series_from_json, series_to_json};
use crate::arith::QSeries;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "TORIMOD_CACHE";

/// A cache directory, or none (every lookup recomputes).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SeriesCache {
    dir: Option<PathBuf>,
}

impl SeriesCache {
    pub fn disabled() -> SeriesCache {
        SeriesCache { dir: None }
    }

    pub fn at(dir: impl Into<PathBuf>) -> SeriesCache {
        SeriesCache {
            dir: Some(dir.into()),
        }
    }

    /// An explicit directory wins over `TORIMOD_CACHE`; with neither, caching is off.
    pub fn resolve(flag: Option<&Path>) -> SeriesCache {
        match flag {
            Some(p) => SeriesCache::at(p),
            None => match std::env::var_os(CACHE_ENV) {
                Some(v) if !v.is_empty() => SeriesCache::at(v),
                _ => SeriesCache::disabled(),
            },
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn file_name(sym: GeneratorSymbol, l: u32, prec: i64) -> String {
        match sym {
            GeneratorSymbol::S { a, k } => format!("s_l{l}_a{a}_k{k}_p{prec}.json"),
            GeneratorSymbol::R { k } => format!("r_k{k}_p{prec}.json"),
        }
    }

    /// The expansion of `sym` at level l, read from disk when present.
    pub fn series(&self, sym: GeneratorSymbol, l: u32, prec: i64) -> Result<QSeries, GenError> {
        let Some(dir) = &self.dir else {
            return sym.series(l, prec);
        };
        let path = dir.join(Self::file_name(sym, l, prec));
        if let Ok(text) = fs::read_to_string(&path) {
            if let Some(f) = serde_json::from_str(&text)
                .ok()
                .and_then(|v| series_from_json(&v).ok())
                .filter(|f| f.prec() == prec)
            {
                return if f.level() == l {
                    Ok(f)
                } else {
                    Ok(f.embed(l)?)
                };
            }
        }
        let f = sym.series(l, prec)?;
        self.store(dir, &path, &f)?;
        Ok(f)
    }

    fn store(&self, dir: &Path, path: &Path, f: &QSeries) -> Result<(), GenError> {
        let io = |e: std::io::Error| GenError::Cache(format!("{}: {e}", path.display()));
        fs::create_dir_all(dir).map_err(io)?;
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
        tmp.write_all(series_to_json(f).to_string().as_bytes())
            .map_err(io)?;
        tmp.persist(path).map_err(|e| io(e.error))?;
        Ok(())
    }
}
