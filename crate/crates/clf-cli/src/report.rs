//! Report rows and the three output formats.
//!
//! Machine-readable formats (json, csv) carry exactly the same fields in the
//! same order; big integers travel as decimal strings so nothing is lossy.
//! Text format adds a human summary line, which json/csv deliberately omit
//! so their bytes depend only on the verified data.

use std::io::{self, Write};

use clap::ValueEnum;
use clf_core::congruence::VerificationReport;
use clf_core::identity::IdentityStats;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VerifyRow {
    pub check: String,
    pub p: u64,
    pub exponent: u32,
    pub lhs: String,
    pub rhs: String,
    pub valuation: u64,
    pub pass: bool,
}

impl VerifyRow {
    pub fn from_report(report: &VerificationReport) -> Self {
        VerifyRow {
            check: report.check_id.to_string(),
            p: report.prime,
            exponent: report.exponent,
            lhs: report.lhs_residue.to_string(),
            rhs: report.rhs_residue.to_string(),
            valuation: report.valuation,
            pass: report.pass,
        }
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.check.clone(),
            self.p.to_string(),
            self.exponent.to_string(),
            self.lhs.clone(),
            self.rhs.clone(),
            self.valuation.to_string(),
            self.pass.to_string(),
        ]
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct IdentityRow {
    pub identity: String,
    pub cases: u64,
    pub failures: u64,
    pub pass: bool,
}

impl IdentityRow {
    pub fn from_stats(stats: &IdentityStats) -> Self {
        IdentityRow {
            identity: stats.id.to_string(),
            cases: stats.cases,
            failures: stats.failures,
            pass: stats.pass(),
        }
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.identity.clone(),
            self.cases.to_string(),
            self.failures.to_string(),
            self.pass.to_string(),
        ]
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SequenceRow {
    pub name: String,
    pub n: u64,
    pub value: String,
}

impl SequenceRow {
    fn cells(&self) -> Vec<String> {
        vec![self.name.clone(), self.n.to_string(), self.value.clone()]
    }
}

pub fn write_verify(rows: &[VerifyRow], format: Format) -> io::Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Json => write_json(rows, &mut out),
        Format::Csv => write_csv(rows, &mut out),
        Format::Text => {
            let cells: Vec<Vec<String>> = rows.iter().map(VerifyRow::cells).collect();
            write_table(
                &["check", "p", "e", "lhs", "rhs", "valuation", "pass"],
                &cells,
                &mut out,
            )?;
            let passed = rows.iter().filter(|r| r.pass).count();
            writeln!(
                out,
                "pairs={} passed={} failed={}",
                rows.len(),
                passed,
                rows.len() - passed
            )
        }
    }
}

pub fn write_identities(rows: &[IdentityRow], format: Format) -> io::Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Json => write_json(rows, &mut out),
        Format::Csv => write_csv(rows, &mut out),
        Format::Text => {
            let cells: Vec<Vec<String>> = rows.iter().map(IdentityRow::cells).collect();
            write_table(&["identity", "cases", "failures", "pass"], &cells, &mut out)?;
            let cases: u64 = rows.iter().map(|r| r.cases).sum();
            let failures: u64 = rows.iter().map(|r| r.failures).sum();
            writeln!(out, "cases={cases} failures={failures}")
        }
    }
}

pub fn write_sequence(rows: &[SequenceRow], format: Format) -> io::Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Json => write_json(rows, &mut out),
        Format::Csv => write_csv(rows, &mut out),
        Format::Text => {
            let cells: Vec<Vec<String>> = rows.iter().map(SequenceRow::cells).collect();
            write_table(&["name", "n", "value"], &cells, &mut out)
        }
    }
}

fn write_json<T: Serialize>(rows: &[T], out: &mut impl Write) -> io::Result<()> {
    let text = serde_json::to_string_pretty(rows).map_err(io::Error::other)?;
    writeln!(out, "{text}")
}

fn write_csv<T: Serialize>(rows: &[T], out: &mut impl Write) -> io::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row).map_err(io::Error::other)?;
    }
    writer.flush()
}

/// Aligned columns: first column left-justified, the rest right-justified.
fn write_table(headers: &[&str], rows: &[Vec<String>], out: &mut impl Write) -> io::Result<()> {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut render = |cells: &[String]| -> io::Result<()> {
        let mut line = String::new();
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            if i == 0 {
                line.push_str(&format!("{cell:<w$}"));
            } else {
                line.push_str(&format!("{cell:>w$}"));
            }
        }
        writeln!(out, "{}", line.trim_end())
    };
    let head: Vec<String> = headers.iter().map(|h| h.to_string()).collect();
    render(&head)?;
    for row in rows {
        render(row)?;
    }
    Ok(())
}
