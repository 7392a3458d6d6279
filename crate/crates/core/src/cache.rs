//! On-disk caches: splitting data (`p,e,f,count`) and `(n, a_K(n), M_K(n))`
//! arrays, one file each per field keyed by the descriptor hash.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::field::{NumberField, PrimeIdeal};
use crate::ideals::{IdealTable, TableMode};

pub const CACHE_ENV: &str = "IDEALMOMENTS_CACHE";

/// One row of the splitting cache: `count` primes of shape `(e, f)` above `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SplitRow {
    pub p: u64,
    pub e: u32,
    pub f: u32,
    pub count: u32,
}

/// What [`Cache::load_or_build`] did.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Miss,
    /// The existing file was unusable and has been replaced.
    Rebuilt(String),
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Cache(format!("{}: {e}", path.display()))
}

pub fn split_rows(splittings: &[Vec<PrimeIdeal>]) -> Vec<SplitRow> {
    let mut rows = Vec::new();
    for above in splittings {
        let mut shapes: BTreeMap<(u32, u32), u32> = BTreeMap::new();
        for q in above {
            *shapes.entry((q.e, q.f)).or_default() += 1;
        }
        for ((e, f), count) in shapes {
            rows.push(SplitRow {
                p: above[0].p,
                e,
                f,
                count,
            });
        }
    }
    rows
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    /// The directory named by `IDEALMOMENTS_CACHE`, if set and non-empty.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(Self::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn splitting_path(&self, field: &NumberField) -> PathBuf {
        self.dir
            .join(format!("{}.splitting.csv", field.descriptor().cache_key()))
    }

    pub fn table_path(&self, field: &NumberField) -> PathBuf {
        self.dir.join(format!("{}.table.csv", field.descriptor().cache_key()))
    }

    fn write_atomic(&self, path: &Path, body: &[u8]) -> Result<()> {
        fs::create_dir_all(&self.dir).map_err(|e| io_err(&self.dir, e))?;
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        let mut f = fs::File::create(&tmp).map_err(|e| io_err(&tmp, e))?;
        f.write_all(body).map_err(|e| io_err(&tmp, e))?;
        f.sync_all().map_err(|e| io_err(&tmp, e))?;
        fs::rename(&tmp, path).map_err(|e| io_err(path, e))
    }

    pub fn write_splittings(&self, field: &NumberField, splittings: &[Vec<PrimeIdeal>]) -> Result<PathBuf> {
        let path = self.splitting_path(field);
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["p", "e", "f", "count"]).map_err(|e| io_err(&path, e))?;
        for r in split_rows(splittings) {
            w.write_record(&[r.p.to_string(), r.e.to_string(), r.f.to_string(), r.count.to_string()])
                .map_err(|e| io_err(&path, e))?;
        }
        let body = w.into_inner().map_err(|e| io_err(&path, e))?;
        self.write_atomic(&path, &body)?;
        Ok(path)
    }

    /// Rows of the splitting cache, or `None` when the file does not exist.
    pub fn read_splittings(&self, field: &NumberField) -> Result<Option<Vec<SplitRow>>> {
        let path = self.splitting_path(field);
        if !path.exists() {
            return Ok(None);
        }
        let mut r = csv::Reader::from_path(&path).map_err(|e| io_err(&path, e))?;
        let header = r.headers().map_err(|e| io_err(&path, e))?.clone();
        if header.iter().collect::<Vec<_>>() != ["p", "e", "f", "count"] {
            return Err(io_err(&path, "unexpected header"));
        }
        let mut rows = Vec::new();
        for rec in r.records() {
            let rec = rec.map_err(|e| io_err(&path, e))?;
            let num = |i: usize| -> Result<u64> {
                rec.get(i)
                    .and_then(|s| s.trim().parse().ok())
                    .ok_or_else(|| io_err(&path, "malformed row"))
            };
            rows.push(SplitRow {
                p: num(0)?,
                e: num(1)? as u32,
                f: num(2)? as u32,
                count: num(3)? as u32,
            });
        }
        if rows.windows(2).any(|w| w[0] >= w[1]) {
            return Err(io_err(&path, "rows not sorted by p"));
        }
        Ok(Some(rows))
    }

    pub fn write_table(&self, table: &IdealTable) -> Result<PathBuf> {
        let path = self.table_path(table.field());
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["n", "a", "M"]).map_err(|e| io_err(&path, e))?;
        for n in 1..=table.bound() as usize {
            w.write_record(&[
                n.to_string(),
                table.counts()[n].to_string(),
                table.mertens_array()[n].to_string(),
            ])
            .map_err(|e| io_err(&path, e))?;
        }
        let body = w.into_inner().map_err(|e| io_err(&path, e))?;
        self.write_atomic(&path, &body)?;
        Ok(path)
    }

    /// Cached arrays truncated to `bound`; `None` if absent or too short.
    pub fn read_table(&self, field: &NumberField, bound: u64) -> Result<Option<IdealTable>> {
        let path = self.table_path(field);
        if !path.exists() {
            return Ok(None);
        }
        let n = usize::try_from(bound).map_err(|_| Error::Overflow("table bound"))?;
        let mut counts = vec![0u32];
        let mut mertens = vec![0i64];
        let mut r = csv::Reader::from_path(&path).map_err(|e| io_err(&path, e))?;
        let header = r.headers().map_err(|e| io_err(&path, e))?.clone();
        if header.iter().collect::<Vec<_>>() != ["n", "a", "M"] {
            return Err(io_err(&path, "unexpected header"));
        }
        for rec in r.records() {
            if counts.len() > n {
                break;
            }
            let rec = rec.map_err(|e| io_err(&path, e))?;
            let idx: usize = rec
                .get(0)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| io_err(&path, "malformed row"))?;
            if idx != counts.len() {
                return Err(io_err(&path, format!("row {idx} out of sequence")));
            }
            counts.push(
                rec.get(1)
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| io_err(&path, "malformed count"))?,
            );
            let m: i64 = rec
                .get(2)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| io_err(&path, "malformed M"))?;
            if (m - mertens[idx - 1]).abs() > counts[idx] as i64 {
                return Err(io_err(&path, format!("M jumps by more than a({idx})")));
            }
            mertens.push(m);
        }
        if counts.len() <= n {
            return Ok(None);
        }
        IdealTable::from_arrays(field, counts, mertens).map(Some)
    }

    /// Counts-only tables come from the array cache when possible; full tables
    /// are always sieved. Either way the caches are refreshed after a build.
    /// An unreadable cache file is reported, replaced, and never fatal.
    pub fn load_or_build(&self, field: &NumberField, bound: u64, mode: TableMode) -> Result<(IdealTable, CacheStatus)> {
        let mut status = CacheStatus::Miss;
        if mode == TableMode::CountsOnly {
            match self.read_table(field, bound) {
                Ok(Some(t)) => return Ok((t, CacheStatus::Hit)),
                Ok(None) => {}
                Err(e) => {
                    log::warn!("rebuilding table cache: {e}");
                    status = CacheStatus::Rebuilt(e.to_string());
                }
            }
        }
        let table = IdealTable::build(field, bound, mode)?;
        if let Err(e) = self.read_splittings(field) {
            log::warn!("rebuilding splitting cache: {e}");
            status = CacheStatus::Rebuilt(e.to_string());
        }
        let cached_bound = self.read_table(field, bound).ok().flatten().is_some();
        if !cached_bound {
            self.write_table(&table)?;
            self.write_splittings(field, table.splittings())?;
        }
        Ok((table, status))
    }
}
