//! Oracle class numbers used to certify computed class groups.
//!
//! Records are `c0,c1,c2,c3,c4,h`; lines starting with `#` are comments.
//! The built-in table is compiled in; a file named by `QA_FIXTURES` is
//! layered on top, its records taking precedence.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};

pub const FIXTURES_ENV: &str = "QA_FIXTURES";

const BUILTIN: &str = include_str!("../../fixtures/class_numbers.csv");

#[derive(Debug, Clone, Default)]
pub struct Fixtures {
    entries: BTreeMap<[i64; 5], u64>,
}

impl Fixtures {
    pub fn builtin() -> Fixtures {
        Self::parse(BUILTIN).expect("built-in fixture table is well formed")
    }

    /// Built-in table plus the file named by `QA_FIXTURES`, if set.
    pub fn from_env() -> Result<Fixtures> {
        let mut f = Self::builtin();
        if let Some(path) = std::env::var_os(FIXTURES_ENV) {
            f.extend(Self::load(Path::new(&path))?);
        }
        Ok(f)
    }

    pub fn load(path: &Path) -> Result<Fixtures> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Fixture(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Fixtures> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .flexible(true)
            .from_reader(text.as_bytes());
        let mut entries = BTreeMap::new();
        for (i, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(|e| Error::Fixture(format!("record {}: {e}", i + 1)))?;
            if rec.len() != 6 {
                return Err(Error::Fixture(format!("record {}: expected 6 fields, found {}", i + 1, rec.len())));
            }
            let mut coeffs = [0i64; 5];
            for (k, c) in coeffs.iter_mut().enumerate() {
                *c = rec[k].parse().map_err(|_| Error::Fixture(format!("record {}: bad coefficient {:?}", i + 1, &rec[k])))?;
            }
            let h: u64 = rec[5].parse().map_err(|_| Error::Fixture(format!("record {}: bad class number {:?}", i + 1, &rec[5])))?;
            if h == 0 || coeffs[4] != 1 {
                return Err(Error::Fixture(format!("record {}: need a monic quartic and h ≥ 1", i + 1)));
            }
            entries.insert(coeffs, h);
        }
        Ok(Fixtures { entries })
    }

    pub fn extend(&mut self, other: Fixtures) {
        self.entries.extend(other.entries);
    }

    pub fn lookup(&self, coeffs: &[i64; 5]) -> Option<u64> {
        self.entries.get(coeffs).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[i64; 5], &u64)> {
        self.entries.iter()
    }
}
