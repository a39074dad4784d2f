//! Side-by-side comparison tables of the baseline and a construction.

use std::fmt::Write as _;

use super::params::{
    fikw_params, gv_example_params, goppa_params, hermitian_params, FikwBase, GoppaMode, HermitianMode,
    ParamRow,
};
use crate::error::Result;

pub const CSV_HEADER: &str = "s,baseline_rate,baseline_amort,ours_rate,ours_amort,pct_rate,pct_amort";

pub const GOPPA_SERVERS: [u64; 6] = [64, 128, 256, 512, 1024, 2048];
pub const HERMITIAN_SERVERS: [u64; 7] = [50, 100, 200, 300, 400, 500, 1000];
pub const GV_EXAMPLE_SERVERS: [u64; 5] = [64, 128, 256, 512, 1024];

#[derive(Copy, Clone, Debug, PartialEq)]
pub enum TableKind {
    Hermitian,
    Goppa,
    /// Random codes over GF(q) with slack ε.
    GvExample { q: u64, eps: f64 },
}

impl TableKind {
    pub fn default_servers(&self) -> &'static [u64] {
        match self {
            TableKind::Hermitian => &HERMITIAN_SERVERS,
            TableKind::Goppa => &GOPPA_SERVERS,
            TableKind::GvExample { .. } => &GV_EXAMPLE_SERVERS,
        }
    }

    fn title(&self) -> &'static str {
        match self {
            TableKind::Hermitian => "Hermitian",
            TableKind::Goppa => "Goppa",
            TableKind::GvExample { .. } => "Random code",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TableRow {
    pub baseline: ParamRow,
    pub ours: ParamRow,
}

impl TableRow {
    /// Percentage change of the printed rate.
    pub fn pct_rate(&self) -> i64 {
        pct(self.ours.printed_rate_hundredths(), self.baseline.printed_rate_hundredths())
    }

    /// Percentage change of the printed amortization.
    pub fn pct_amort(&self) -> i64 {
        pct(self.ours.printed_amortization(), self.baseline.printed_amortization())
    }
}

fn pct(ours: u64, base: u64) -> i64 {
    if base == 0 {
        return 0;
    }
    (100.0 * (ours as f64 - base as f64) / base as f64).round() as i64
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub kind: TableKind,
    pub dt: u64,
    pub rows: Vec<TableRow>,
}

pub fn emit_table(kind: TableKind, dt: u64, servers: &[u64]) -> Result<Table> {
    let rows = servers
        .iter()
        .map(|&s| {
            let (baseline, ours) = match kind {
                TableKind::Goppa => {
                    (fikw_params(s, dt, FikwBase::Fixed(2.0))?, goppa_params(s, dt, GoppaMode::Table)?)
                }
                TableKind::Hermitian => (
                    fikw_params(s, dt, FikwBase::CurveField)?,
                    hermitian_params(s, dt, HermitianMode::Table)?,
                ),
                TableKind::GvExample { q, eps } => {
                    (fikw_params(s, dt, FikwBase::Fixed(q as f64))?, gv_example_params(s, dt, q, eps)?)
                }
            };
            Ok(TableRow { baseline, ours })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table { kind, dt, rows })
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{CSV_HEADER}").unwrap();
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.baseline.s,
                r.baseline.printed_rate(),
                r.baseline.printed_amortization(),
                r.ours.printed_rate(),
                r.ours.printed_amortization(),
                r.pct_rate(),
                r.pct_amort()
            )
            .unwrap();
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let title = self.kind.title();
        writeln!(
            out,
            "| s | Baseline rate | Baseline ℓ | {title} rate | {title} ℓ | Rate change | ℓ change |"
        )
        .unwrap();
        writeln!(out, "|---:|---:|---:|---:|---:|---:|---:|").unwrap();
        for r in &self.rows {
            writeln!(
                out,
                "| {} | {} | {} | {} | {} | {}% | {}% |",
                r.baseline.s,
                r.baseline.printed_rate(),
                r.baseline.printed_amortization(),
                r.ours.printed_rate(),
                r.ours.printed_amortization(),
                r.pct_rate(),
                r.pct_amort()
            )
            .unwrap();
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} vs baseline, dt = {}", self.kind.title(), self.dt).unwrap();
        writeln!(
            out,
            "{:>6}  {:>9}  {:>9}  {:>9}  {:>9}  {:>7}  {:>7}",
            "s", "base rate", "base l", "rate", "l", "d rate", "d l"
        )
        .unwrap();
        for r in &self.rows {
            writeln!(
                out,
                "{:>6}  {:>9}  {:>9}  {:>9}  {:>9}  {:>6}%  {:>6}%",
                r.baseline.s,
                r.baseline.printed_rate(),
                r.baseline.printed_amortization(),
                r.ours.printed_rate(),
                r.ours.printed_amortization(),
                r.pct_rate(),
                r.pct_amort()
            )
            .unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn goppa_first_row_csv() {
        let t = emit_table(TableKind::Goppa, 4, &[64]).unwrap();
        assert_eq!(t.to_csv(), format!("{CSV_HEADER}\n64,0.93,360,0.65,42,-30,-88\n"));
    }

    #[test]
    fn markdown_has_a_row_per_server() {
        let t = emit_table(TableKind::Hermitian, 4, &HERMITIAN_SERVERS).unwrap();
        assert_eq!(t.to_markdown().lines().count(), 2 + HERMITIAN_SERVERS.len());
    }
}
