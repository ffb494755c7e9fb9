//! The 31 five-dimensional nilpotent associative algebras, with the centers
//! and invariant dimensions printed alongside them.
//!
//! Expected values are stored exactly as printed, including suspected typos.
//! Provenance notes record everything that needed interpretation when the
//! tables were transcribed into `data/*.alg`.

use std::fs;
use std::path::{Path, PathBuf};

use crate::structconst::StructureConstants;
use crate::text::ParseError;

/// Dimensions as printed in the derivation, centroid and inner-derivation
/// tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ExpectedDims {
    pub der: Option<usize>,
    pub cent: Option<usize>,
    pub inn: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: String,
    pub algebra: StructureConstants,
    /// 1-based indices of the basis elements spanning the printed center.
    pub expected_center: Option<Vec<usize>>,
    pub expected_dims: ExpectedDims,
    pub provenance_notes: Vec<String>,
}

/// Claimed `(min, max)` ranges for derivation, centroid and
/// inner-derivation dimensions.
pub const CLAIMED_RANGES: ClaimedRanges = ClaimedRanges {
    der: (2, 9),
    cent: (2, 8),
    inn: (2, 4),
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClaimedRanges {
    pub der: (usize, usize),
    pub cent: (usize, usize),
    pub inn: (usize, usize),
}

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

struct Printed {
    id: &'static str,
    source: &'static str,
    center: &'static [usize],
    der: usize,
    cent: usize,
    inn: usize,
    notes: &'static [&'static str],
}

macro_rules! printed {
    ($id:literal, $center:expr, $der:expr, $cent:expr, $inn:expr, $notes:expr) => {
        Printed {
            id: $id,
            source: include_str!(concat!("../../../data/", $id, ".alg")),
            center: $center,
            der: $der,
            cent: $cent,
            inn: $inn,
            notes: $notes,
        }
    };
}

const IDENTICAL_DER_29_30: &str =
    "derivation matrices printed for A29 and A30 are identical but their dims are printed as 2 and 6";

static PRINTED: [Printed; 31] = [
    printed!("A1", &[2, 4, 5], 8, 8, 2, &["second row of the printed derivation matrix has only four entries"]),
    printed!("A2", &[2, 4, 5], 8, 8, 2, &["product printed as `e1e2 = e4` without the dot; read as e1*e2 = e4"]),
    printed!("A3", &[2, 4, 5], 6, 7, 6, &[
        "printed inner-derivation dim 6 exceeds n - dim Z for any center, so it cannot be a span dimension",
        "printed center lists e5 although e1*e5 = e4 and e5*e1 = 0",
    ]),
    printed!("A4", &[2, 4, 5], 4, 5, 2, &[
        "as printed (e1 e1) e1 = e3 but e1 (e1 e1) = e4; e1*e2 = e4 may be a typo for e1*e2 = e3 (compare A3); stored as printed",
    ]),
    printed!("A5", &[2, 5], 8, 5, 2, &[]),
    printed!("A6", &[2, 3, 5], 8, 5, 2, &[]),
    printed!("A7", &[2, 3, 5], 6, 5, 2, &[]),
    printed!("A8", &[1, 2, 3], 6, 5, 2, &[]),
    printed!("A9", &[1, 2, 3], 7, 5, 2, &["relation e2*e1 = e3 is printed twice; stored once"]),
    printed!("A10", &[2, 3, 5], 8, 6, 2, &["relation e2*e1 = e3 is printed twice; stored once"]),
    printed!("A11", &[2, 3, 5], 7, 6, 6, &[
        "printed inner-derivation dim 6 exceeds n - dim Z for any center, so it cannot be a span dimension",
    ]),
    printed!("A12", &[3], 6, 4, 4, &["printed derivation matrix is identical to the one printed for A14"]),
    printed!("A13", &[3], 7, 4, 4, &[
        "e4*e1 is printed twice, as e5 and as e3; stored as e4*e1 = e3 because the e5 reading fails associativity at (e4 e1) e1",
        "second row of the printed centroid matrix has only four entries",
    ]),
    printed!("A14", &[3], 6, 6, 2, &["printed derivation matrix is identical to the one printed for A12"]),
    printed!("A15", &[2, 3, 5], 7, 6, 3, &[]),
    printed!("A16", &[2, 3, 5], 6, 6, 2, &[]),
    printed!("A17", &[2, 3, 5], 7, 6, 2, &[]),
    printed!("A18", &[2, 3, 5], 6, 6, 2, &[]),
    printed!("A19", &[2, 3, 5], 6, 6, 2, &["second row of the printed derivation matrix has only four entries"]),
    printed!("A20", &[2, 3, 5], 6, 6, 2, &[]),
    printed!("A21", &[2, 3], 6, 4, 3, &[]),
    printed!("A22", &[2, 3], 4, 6, 3, &[]),
    printed!("A23", &[3], 7, 4, 4, &[]),
    printed!("A24", &[3], 5, 4, 4, &[]),
    printed!("A25", &[2, 3], 6, 7, 2, &[]),
    printed!("A26", &[2, 3], 5, 3, 3, &[]),
    printed!("A27", &[3], 6, 4, 4, &[]),
    printed!("A28", &[2, 3], 8, 4, 3, &["fifth row of the printed inner-derivation matrix has only four entries"]),
    printed!("A29", &[3], 2, 2, 4, &[IDENTICAL_DER_29_30]),
    printed!("A30", &[3], 6, 2, 4, &[IDENTICAL_DER_29_30]),
    printed!("A31", &[3], 6, 3, 4, &["derivation table heading reads Der(D) instead of Der(A)"]),
];

impl Printed {
    fn entry(&self) -> CatalogEntry {
        let algebra = StructureConstants::parse(self.source)
            .unwrap_or_else(|e| panic!("embedded catalog entry {} does not parse: {e}", self.id));
        CatalogEntry {
            id: self.id.to_string(),
            algebra,
            expected_center: Some(self.center.to_vec()),
            expected_dims: ExpectedDims {
                der: Some(self.der),
                cent: Some(self.cent),
                inn: Some(self.inn),
            },
            provenance_notes: self.notes.iter().map(|s| s.to_string()).collect(),
        }
    }
}

/// All 31 entries in catalog order.
pub fn load_catalog() -> Vec<CatalogEntry> {
    PRINTED.iter().map(Printed::entry).collect()
}

/// `(id, file contents)` of every embedded algebra file.
pub fn embedded_sources() -> impl Iterator<Item = (&'static str, &'static str)> {
    PRINTED.iter().map(|p| (p.id, p.source))
}

/// Loads every `.alg` file in `dir`. Entries whose id (header name, else
/// file stem) matches an embedded entry inherit its expected values.
pub fn load_catalog_dir(dir: &Path) -> Result<Vec<CatalogEntry>, CatalogError> {
    let io = |path: &Path, source| CatalogError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "alg"))
        .collect();
    files.sort();
    let mut out = Vec::with_capacity(files.len());
    for path in files {
        let text = fs::read_to_string(&path).map_err(|e| io(&path, e))?;
        let algebra = StructureConstants::parse(&text).map_err(|source| CatalogError::Parse {
            path: path.clone(),
            source,
        })?;
        let id = algebra
            .name()
            .map(str::to_string)
            .or_else(|| path.file_stem().map(|s| s.to_string_lossy().into_owned()))
            .unwrap_or_default();
        let entry = match PRINTED.iter().find(|p| p.id == id) {
            Some(p) => CatalogEntry {
                algebra,
                ..p.entry()
            },
            None => CatalogEntry {
                id,
                algebra,
                expected_center: None,
                expected_dims: ExpectedDims {
                    der: None,
                    cent: None,
                    inn: None,
                },
                provenance_notes: Vec::new(),
            },
        };
        out.push(entry);
    }
    out.sort_by_key(|e| natural_key(&e.id));
    Ok(out)
}

fn natural_key(id: &str) -> (String, u64, String) {
    let split = id.find(|c: char| c.is_ascii_digit()).unwrap_or(id.len());
    let (head, tail) = id.split_at(split);
    let digits: String = tail.chars().take_while(char::is_ascii_digit).collect();
    let rest = tail[digits.len()..].to_string();
    (head.to_string(), digits.parse().unwrap_or(0), rest)
}

/// Small hand-checkable algebras used by tests and examples.
pub mod fixtures {
    use crate::structconst::StructureConstants;

    /// `e1·e1 = e2` in dimension 2.
    pub fn square_to_e2() -> StructureConstants {
        StructureConstants::parse("dim 2 name \"square\"\ne1*e1 = e2").unwrap()
    }

    /// `e1·e1 = e2, e2·e1 = e3`: `(e1 e1) e1 = e3` but `e1 (e1 e1) = 0`.
    pub fn non_associative() -> StructureConstants {
        StructureConstants::parse("dim 3 name \"nonassoc\"\ne1*e1 = e2\ne2*e1 = e3").unwrap()
    }

    /// `e1·e1 = e1`, associative but not nilpotent.
    pub fn idempotent() -> StructureConstants {
        StructureConstants::parse("dim 1 name \"idempotent\"\ne1*e1 = e1").unwrap()
    }

    pub fn zero(dim: usize) -> StructureConstants {
        StructureConstants::zero(dim).with_name("zero")
    }
}
