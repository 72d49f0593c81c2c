//! Regression fixtures: hand-checked block matrices stored as plain text.
//!
//! Format, one statement per line (`#` starts a comment):
//!
//! ```text
//! q = 25
//! k = 33
//! M_1 = [[0, -t^26], [-t^2, 0]]
//! char_poly M_1 = X^2 - t^28
//! diagonalizable M_1 = true
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::hecke::{build_ut_matrix, CuspidalMode, WeightParams};
use crate::matrix::TMatrix;
use crate::spectral::diagonalizability_verdict;

pub const BUNDLED: &[(&str, &str)] = &[
    ("q2_k5.txt", include_str!("../fixtures/q2_k5.txt")),
    ("q16_k29.txt", include_str!("../fixtures/q16_k29.txt")),
    ("q16_k30.txt", include_str!("../fixtures/q16_k30.txt")),
    ("q25_k33.txt", include_str!("../fixtures/q25_k33.txt")),
    ("q25_k40.txt", include_str!("../fixtures/q25_k40.txt")),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub q: u64,
    pub k: u64,
    /// Canonical matrix strings keyed by residue.
    pub blocks: BTreeMap<u64, String>,
    pub char_polys: BTreeMap<u64, String>,
    pub diagonalizable: BTreeMap<u64, bool>,
}

fn residue_of(key: &str) -> Result<u64> {
    key.trim()
        .strip_prefix("M_")
        .and_then(|j| j.parse().ok())
        .ok_or_else(|| Error::Parse(format!("expected M_<j>, got {key:?}")))
}

impl Fixture {
    pub fn parse(name: &str, text: &str) -> Result<Fixture> {
        let mut q = None;
        let mut k = None;
        let mut fx = Fixture {
            name: name.to_string(),
            q: 0,
            k: 0,
            blocks: BTreeMap::new(),
            char_polys: BTreeMap::new(),
            diagonalizable: BTreeMap::new(),
        };
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (lhs, rhs) =
                line.split_once('=').ok_or_else(|| Error::Parse(format!("{name}:{}: missing '='", lineno + 1)))?;
            let (lhs, rhs) = (lhs.trim(), rhs.trim().to_string());
            let num = |s: &str| s.parse::<u64>().map_err(|_| Error::Parse(format!("{name}: bad number {s:?}")));
            if lhs == "q" {
                q = Some(num(&rhs)?);
            } else if lhs == "k" {
                k = Some(num(&rhs)?);
            } else if let Some(key) = lhs.strip_prefix("char_poly ") {
                fx.char_polys.insert(residue_of(key)?, rhs);
            } else if let Some(key) = lhs.strip_prefix("diagonalizable ") {
                let flag =
                    rhs.parse().map_err(|_| Error::Parse(format!("{name}: expected true/false, got {rhs:?}")))?;
                fx.diagonalizable.insert(residue_of(key)?, flag);
            } else {
                fx.blocks.insert(residue_of(lhs)?, rhs);
            }
        }
        fx.q = q.ok_or_else(|| Error::Parse(format!("{name}: missing q")))?;
        fx.k = k.ok_or_else(|| Error::Parse(format!("{name}: missing k")))?;
        Ok(fx)
    }

    /// Recomputes every stated block and returns `(expected, computed)` line
    /// pairs that differ. Empty means the fixture holds.
    pub fn check(&self) -> Result<Vec<(String, String)>> {
        let params = WeightParams::for_q(self.q, self.k, CuspidalMode::Single)?;
        let p = params.p();
        let blocks = build_ut_matrix(&params)?;
        let block = |j: u64| blocks.iter().find(|b| b.residue == j);
        let mut diffs = Vec::new();
        let mut push = |label: String, expected: &str, computed: String| {
            if expected != computed {
                diffs.push((format!("{label} = {expected}"), format!("{label} = {computed}")));
            }
        };
        for (&j, expected) in &self.blocks {
            // normalize through the parser so spacing differences do not count
            let expected = TMatrix::parse(expected, p).map(|m| m.format()).unwrap_or_else(|_| expected.clone());
            let computed = block(j).map_or("<absent>".to_string(), |b| b.matrix.format());
            push(format!("M_{j}"), &expected, computed);
        }
        for (&j, expected) in &self.char_polys {
            let computed = block(j).map_or("<absent>".to_string(), |b| crate::spectral::char_poly(b).to_string());
            push(format!("char_poly M_{j}"), expected, computed);
        }
        for (&j, &expected) in &self.diagonalizable {
            let computed =
                block(j).map_or("<absent>".to_string(), |b| diagonalizability_verdict(b).diagonalizable.to_string());
            push(format!("diagonalizable M_{j}"), &expected.to_string(), computed);
        }
        Ok(diffs)
    }
}

pub fn bundled() -> Result<Vec<Fixture>> {
    BUNDLED.iter().map(|(name, text)| Fixture::parse(name, text)).collect()
}

/// All `*.txt` fixtures in a directory, sorted by file name.
pub fn load_dir(dir: &Path) -> Result<Vec<Fixture>> {
    let read_err = |e: std::io::Error| Error::Parse(format!("{}: {e}", dir.display()));
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .map_err(read_err)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "txt"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|path| {
            let text = std::fs::read_to_string(path).map_err(read_err)?;
            Fixture::parse(&path.file_name().unwrap().to_string_lossy(), &text)
        })
        .collect()
}

/// Unified-style rendering of the mismatching lines of one fixture.
pub fn render_diff(fixture: &Fixture, diffs: &[(String, String)]) -> String {
    let mut out = format!("--- expected {}\n+++ computed q = {}, k = {}\n", fixture.name, fixture.q, fixture.k);
    for (expected, computed) in diffs {
        out.push_str(&format!("-{expected}\n+{computed}\n"));
    }
    out
}
