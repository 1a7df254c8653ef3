//! Diameter tables over all exponent pairs `1 <= m <= n <= q - 1`.

use std::time::Instant;

use monodigraph::{Diameter, Digraph, Field, Result};
use serde::Serialize;

/// Strong connectivity (by the subfield criterion) and exact diameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PairResult {
    pub strong: bool,
    pub diameter: Diameter,
    pub representatives: usize,
}

/// Skips the BFS entirely when the criterion already says "not strong".
pub fn analyze(field: &Field, m: u32, n: u32) -> Result<PairResult> {
    let g = Digraph::monomial(field.clone(), m, n)?;
    if !g.is_strong_by_criterion()? {
        return Ok(PairResult {
            strong: false,
            diameter: Diameter::Infinite,
            representatives: 0,
        });
    }
    let report = g.diameter_report();
    Ok(PairResult {
        strong: true,
        diameter: report.diameter,
        representatives: report.sources,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub m: u32,
    pub n: u32,
    pub strong: bool,
    pub diameter: Diameter,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanMetadata {
    pub tool_version: &'static str,
    pub q: u32,
    pub p: u32,
    pub e: u32,
    pub modulus: Option<Vec<u32>>,
    /// BFS sources used, summed over rows.
    pub representatives: usize,
    /// Wall time of the whole scan. Not part of the deterministic output.
    pub runtime_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub metadata: ScanMetadata,
    pub rows: Vec<ScanRow>,
}

/// All pairs `m <= n <= min(q - 1, max_n)`, rows ordered by `(m, n)`.
pub fn scan(field: &Field, max_n: Option<u32>) -> Result<ScanReport> {
    let started = Instant::now();
    let top = max_n.map_or(field.q() - 1, |k| k.min(field.q() - 1));
    let mut rows = Vec::new();
    let mut representatives = 0;
    for m in 1..=top {
        for n in m..=top {
            let r = analyze(field, m, n)?;
            representatives += r.representatives;
            rows.push(ScanRow {
                m,
                n,
                strong: r.strong,
                diameter: r.diameter,
            });
        }
    }
    Ok(ScanReport {
        metadata: ScanMetadata {
            tool_version: monodigraph::VERSION,
            q: field.q(),
            p: field.p(),
            e: field.e(),
            modulus: field.modulus().map(<[u32]>::to_vec),
            representatives,
            runtime_ms: started.elapsed().as_millis() as u64,
        },
        rows,
    })
}

impl ScanReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,n,strong,diameter\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{},{}\n", r.m, r.n, r.strong, r.diameter));
        }
        out
    }
}
