//! Per-block reports and their text, JSON and CSV renderings.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::build_gamma_matrix;
use crate::hecke::{build_ut_matrix, tag_gamma0_classes, CuspidalMode, UtBlock, WeightParams};
use crate::poly::{TPoly, XPoly};
use crate::spectral::diagonalizability_verdict;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    #[default]
    Gamma1,
    Gamma,
}

impl Level {
    pub fn as_str(&self) -> &'static str {
        match self {
            Level::Gamma1 => "gamma1",
            Level::Gamma => "gamma",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

pub const CSV_HEADER: [&str; 12] =
    ["q", "p", "r", "k", "mode", "level", "residue", "dim", "char_poly", "min_poly", "diagonalizable", "gamma0_tagged"];

/// One residue-class block, or for level `gamma` the zero block on the
/// `r != 0` basis vectors (`residue = None`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockReport {
    pub q: u64,
    pub p: u64,
    pub r: u32,
    pub k: u64,
    pub mode: CuspidalMode,
    pub level: Level,
    pub residue: Option<u64>,
    pub dim: u64,
    pub indices: Vec<u64>,
    pub entries: Vec<Vec<String>>,
    pub char_poly: String,
    pub min_poly: String,
    pub diagonalizable: bool,
    pub gamma0_tagged: bool,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct CsvRow {
    q: u64,
    p: u64,
    r: u32,
    k: u64,
    mode: CuspidalMode,
    level: Level,
    residue: Option<u64>,
    dim: u64,
    char_poly: String,
    min_poly: String,
    diagonalizable: bool,
    gamma0_tagged: bool,
}

impl BlockReport {
    fn from_block(params: &WeightParams, level: Level, block: &UtBlock) -> BlockReport {
        let verdict = diagonalizability_verdict(block);
        BlockReport {
            q: params.q(),
            p: params.p(),
            r: params.field.r(),
            k: params.k,
            mode: params.mode,
            level,
            residue: Some(block.residue),
            dim: block.dim() as u64,
            indices: block.indices.clone(),
            entries: block.matrix.rows().iter().map(|r| r.iter().map(TPoly::to_string).collect()).collect(),
            char_poly: verdict.char_poly.to_string(),
            min_poly: verdict.min_poly.to_string(),
            diagonalizable: verdict.diagonalizable,
            gamma0_tagged: block.gamma0_tagged,
            witness: verdict.witness.describe(),
        }
    }

    /// Display name, `M_j` or `K` for the zero block.
    pub fn label(&self) -> String {
        match self.residue {
            Some(j) => format!("M_{j}"),
            None => "K".to_string(),
        }
    }

    pub fn matrix_string(&self) -> String {
        let rows: Vec<String> = self.entries.iter().map(|r| format!("[{}]", r.join(", "))).collect();
        format!("[{}]", rows.join(", "))
    }

    fn csv_row(&self) -> CsvRow {
        CsvRow {
            q: self.q,
            p: self.p,
            r: self.r,
            k: self.k,
            mode: self.mode,
            level: self.level,
            residue: self.residue,
            dim: self.dim,
            char_poly: self.char_poly.clone(),
            min_poly: self.min_poly.clone(),
            diagonalizable: self.diagonalizable,
            gamma0_tagged: self.gamma0_tagged,
        }
    }
}

/// Reports for every block of one `(q, k, mode)`, verdicts computed in parallel.
pub fn block_reports(params: &WeightParams, level: Level) -> Result<Vec<BlockReport>> {
    let blocks = tag_gamma0_classes(params, build_ut_matrix(params)?);
    let mut reports: Vec<BlockReport> = blocks.par_iter().map(|b| BlockReport::from_block(params, level, b)).collect();
    if level == Level::Gamma {
        let gm = build_gamma_matrix(params)?;
        let n = gm.complement_dim();
        if n > 0 {
            let p = params.p();
            reports.push(BlockReport {
                q: params.q(),
                p,
                r: params.field.r(),
                k: params.k,
                mode: params.mode,
                level,
                residue: None,
                dim: n,
                indices: Vec::new(),
                entries: Vec::new(),
                char_poly: XPoly::monomial(TPoly::one(p), n as usize).to_string(),
                min_poly: XPoly::x(p).to_string(),
                diagonalizable: true,
                gamma0_tagged: false,
                witness: "zero_block".to_string(),
            });
        }
    }
    Ok(reports)
}

/// Reports for `k_min..=k_max`, in weight order.
pub fn scan_reports(q: u64, k_min: u64, k_max: u64, mode: CuspidalMode, level: Level) -> Result<Vec<BlockReport>> {
    let per_k: Vec<Result<Vec<BlockReport>>> = (k_min.max(2)..=k_max)
        .into_par_iter()
        .map(|k| block_reports(&WeightParams::for_q(q, k, mode)?, level))
        .collect();
    let mut out = Vec::new();
    for r in per_k {
        out.extend(r?);
    }
    Ok(out)
}

pub fn render_text(reports: &[BlockReport]) -> String {
    let mut out = String::new();
    let mut current = None;
    for r in reports {
        let key = (r.q, r.k, r.mode, r.level);
        if current != Some(key) {
            if current.is_some() {
                out.push('\n');
            }
            let _ = writeln!(
                out,
                "q = {} (p = {}, r = {}), k = {}, mode = {}, level = {}",
                r.q,
                r.p,
                r.r,
                r.k,
                r.mode.as_str(),
                r.level.as_str()
            );
            current = Some(key);
        }
        if r.residue.is_some() {
            let _ = writeln!(out, "{} = {}", r.label(), r.matrix_string());
            let idx: Vec<String> = r.indices.iter().map(u64::to_string).collect();
            let _ = writeln!(out, "  indices: {{{}}}", idx.join(", "));
        } else {
            let _ = writeln!(out, "K = zero block of dimension {}", r.dim);
        }
        let _ = writeln!(out, "  char_poly: {}", r.char_poly);
        let _ = writeln!(out, "  min_poly: {}", r.min_poly);
        let _ = writeln!(out, "  diagonalizable: {} ({})", r.diagonalizable, r.witness);
        if r.gamma0_tagged {
            let _ = writeln!(out, "  gamma0_tagged: true");
        }
    }
    out
}

pub fn render_json(reports: &[BlockReport]) -> String {
    let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
    s.push('\n');
    s
}

pub fn parse_json(s: &str) -> Result<Vec<BlockReport>> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

pub fn render_csv(reports: &[BlockReport]) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in reports {
        w.serialize(r.csv_row()).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

/// `(q, k, residue, dim, char_poly, min_poly, diagonalizable)` of one CSV row.
pub type CsvSummary = (u64, u64, Option<u64>, u64, String, String, bool);

/// Reads back the CSV columns checks need; full reports are only
/// recoverable from JSON.
pub fn parse_csv(s: &str) -> Result<Vec<CsvSummary>> {
    let mut rd = csv::Reader::from_reader(s.as_bytes());
    let header = rd.headers().map_err(|e| Error::Parse(e.to_string()))?.clone();
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        return Err(Error::Parse(format!("unexpected CSV header {header:?}")));
    }
    rd.deserialize::<CsvRow>()
        .map(|row| {
            row.map(|r| (r.q, r.k, r.residue, r.dim, r.char_poly, r.min_poly, r.diagonalizable))
                .map_err(|e| Error::Parse(e.to_string()))
        })
        .collect()
}

pub fn render(reports: &[BlockReport], format: Format) -> String {
    match format {
        Format::Text => render_text(reports),
        Format::Json => render_json(reports),
        Format::Csv => render_csv(reports),
    }
}
