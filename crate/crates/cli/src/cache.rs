//! Persistent coefficient cache: a JSON-lines file whose first line is a version
//! header and whose remaining lines each hold one coefficient table.
//!
//! Exact entries are stored as `p/q` strings and floats as decimal strings with
//! enough digits to read back to the same bits. A file with another version or any
//! malformed line is rejected as a whole.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use bessel_zeta::{CoefficientTable, Family, Num, Order, Rational};
use rug::Float;
use serde::{Deserialize, Serialize};

pub const VERSION: u32 = 1;

const FORMAT: &str = "bzeta-coefficient-cache";

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cache i/o: {0}")]
    Io(#[from] io::Error),
    #[error("cache version {found} does not match {VERSION}")]
    Version { found: u32 },
    #[error("corrupt cache at line {line}: {message}")]
    Corrupt { line: usize, message: String },
}

#[derive(Serialize, Deserialize)]
struct Header {
    format: String,
    version: u32,
}

#[derive(Serialize, Deserialize)]
struct Record {
    family: String,
    nu: String,
    precision: u32,
    exact: bool,
    values: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    beta0: Option<String>,
}

fn float_text(x: &Float) -> String {
    x.to_string_radix(10, None)
}

fn parse_float(text: &str, prec: u32) -> Result<Float, String> {
    Float::parse(text).map(|p| Float::with_val(prec, p)).map_err(|e| format!("{text:?}: {e}"))
}

fn num_text(n: &Num) -> String {
    match n {
        Num::Exact(r) => r.to_string(),
        Num::Approx(f) => float_text(f),
    }
}

impl Record {
    fn from_table(t: &CoefficientTable) -> Self {
        Record {
            family: t.family().name().to_string(),
            nu: t.order().label(),
            precision: t.precision(),
            exact: t.is_exact(),
            values: t.entries().iter().map(num_text).collect(),
            beta0: t.beta0().map(float_text),
        }
    }

    fn into_table(self) -> Result<CoefficientTable, String> {
        let family = Family::from_str(&self.family).map_err(|e| e.to_string())?;
        let order = Order::parse(&self.nu, self.precision).map_err(|e| e.to_string())?;
        let beta0 = self.beta0.as_deref().map(|t| parse_float(t, self.precision)).transpose()?;
        let mut entries = Vec::with_capacity(self.values.len());
        for (i, text) in self.values.iter().enumerate() {
            // slot 0 of a β table is β_0, always a float
            let float_slot = !self.exact || (family == Family::Beta && i == 0);
            let n = if float_slot {
                Num::Approx(parse_float(text, self.precision)?)
            } else {
                Num::Exact(Rational::from_str(text).map_err(|e| format!("{text:?}: {e}"))?)
            };
            entries.push(n);
        }
        let table = CoefficientTable::from_parts(family, order, entries, beta0, self.precision)
            .map_err(|e| e.to_string())?;
        if table.is_exact() != self.exact {
            return Err("exactness flag does not match the stored values".into());
        }
        Ok(table)
    }
}

/// Writes `tables` to `path`, replacing any previous content.
pub fn store(path: &Path, tables: &[CoefficientTable]) -> Result<(), CacheError> {
    let mut out = String::new();
    let header = Header { format: FORMAT.into(), version: VERSION };
    out.push_str(&serde_json::to_string(&header).expect("header serializes"));
    out.push('\n');
    for t in tables {
        out.push_str(&serde_json::to_string(&Record::from_table(t)).expect("record serializes"));
        out.push('\n');
    }
    // write then rename so a crash never leaves a half-written cache
    let tmp = path.with_extension("tmp");
    let mut f = fs::File::create(&tmp)?;
    f.write_all(out.as_bytes())?;
    f.sync_all()?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Reads every table in `path`. Fails as a whole on a version mismatch or any bad line.
pub fn load(path: &Path) -> Result<Vec<CoefficientTable>, CacheError> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let corrupt = |line: usize, message: String| CacheError::Corrupt { line: line + 1, message };
    let (n, first) = lines.next().ok_or_else(|| corrupt(0, "missing header".into()))?;
    let header: Header = serde_json::from_str(first).map_err(|e| corrupt(n, e.to_string()))?;
    if header.format != FORMAT {
        return Err(corrupt(n, format!("unknown format {:?}", header.format)));
    }
    if header.version != VERSION {
        return Err(CacheError::Version { found: header.version });
    }
    let mut tables = Vec::new();
    for (n, line) in lines {
        let record: Record = serde_json::from_str(line).map_err(|e| corrupt(n, e.to_string()))?;
        tables.push(record.into_table().map_err(|m| corrupt(n, m))?);
    }
    Ok(tables)
}

/// A cache file together with its loaded contents. Unreadable files start empty
/// and are overwritten on the next insert.
#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    tables: Vec<CoefficientTable>,
    /// Why the existing file was discarded, if it was.
    pub rejected: Option<String>,
}

impl Cache {
    pub fn open(path: impl Into<PathBuf>) -> Self {
        let path = path.into();
        let (tables, rejected) = match load(&path) {
            Ok(t) => (t, None),
            Err(CacheError::Io(e)) if e.kind() == io::ErrorKind::NotFound => (Vec::new(), None),
            Err(e) => (Vec::new(), Some(e.to_string())),
        };
        Cache { path, tables, rejected }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn tables(&self) -> &[CoefficientTable] {
        &self.tables
    }

    /// A stored table for these parameters with at least `count` entries, cut to `count`.
    pub fn lookup(&self, family: Family, order: &Order, precision: u32, exact: bool, count: usize) -> Option<CoefficientTable> {
        let t = self.tables.iter().find(|t| Self::matches(t, family, order, precision, exact))?;
        if t.len() < count {
            return None;
        }
        let entries = t.entries()[..count].to_vec();
        CoefficientTable::from_parts(family, t.order().clone(), entries, t.beta0().cloned(), precision).ok()
    }

    /// Stores `table`, replacing a shorter one with the same parameters, and rewrites the file.
    pub fn insert(&mut self, table: CoefficientTable) -> Result<(), CacheError> {
        let exact = table.is_exact();
        let (family, precision) = (table.family(), table.precision());
        match self.tables.iter().position(|t| Self::matches(t, family, table.order(), precision, exact)) {
            Some(i) if self.tables[i].len() >= table.len() => return Ok(()),
            Some(i) => self.tables[i] = table,
            None => self.tables.push(table),
        }
        store(&self.path, &self.tables)?;
        self.rejected = None;
        Ok(())
    }

    fn matches(t: &CoefficientTable, family: Family, order: &Order, precision: u32, exact: bool) -> bool {
        t.family() == family && t.precision() == precision && t.is_exact() == exact && t.order().label() == order.label()
    }
}
