//! Record and report rendering: human tables, CSV, JSON lines.

use num_bigint::BigInt;
use rgw_core::gluing::{render_cell, SignGrid};
use rgw_core::{InsertionMultiset, Involution, VerificationReport};
use serde_json::json;

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Format {
    Human,
    Csv,
    Jsonl,
}

/// One computed invariant, as printed by `complex`, `real`, and `table`.
pub struct InvariantRecord {
    /// `m` for complex records, `n` for real ones.
    pub parameter: u32,
    pub degree: u32,
    /// `None` marks a complex record.
    pub involution: Option<Involution>,
    pub insertions: InsertionMultiset,
    pub bracket: BigInt,
    /// Geometric signed count; real records only.
    pub count: Option<BigInt>,
}

impl InvariantRecord {
    pub fn csv_line(&self) -> String {
        let kind = if self.involution.is_some() {
            "real"
        } else {
            "complex"
        };
        format!(
            "{kind},{},{},{},\"{}\",{},{}",
            self.parameter,
            self.degree,
            self.involution.map(|i| i.name()).unwrap_or(""),
            self.insertions,
            self.bracket,
            self.count
                .as_ref()
                .map(|v| v.to_string())
                .unwrap_or_default(),
        )
    }

    pub fn json_line(&self) -> String {
        let insertions: Vec<u32> = self.insertions.to_vec();
        let value = match (&self.involution, &self.count) {
            (Some(involution), Some(count)) => json!({
                "kind": "real",
                "n": self.parameter,
                "d": self.degree,
                "phi": involution.name(),
                "insertions": insertions,
                "bracket": self.bracket.to_string(),
                "count": count.to_string(),
            }),
            _ => json!({
                "kind": "complex",
                "m": self.parameter,
                "d": self.degree,
                "insertions": insertions,
                "value": self.bracket.to_string(),
            }),
        };
        value.to_string()
    }

    /// One aligned row for table output.
    pub fn table_row(&self) -> String {
        format!(
            "{:>2} {:>2}  {:<22} {:>12} {:>12}",
            self.degree,
            self.insertions.len(),
            self.insertions.to_string(),
            self.bracket.to_string(),
            self.count
                .as_ref()
                .map(|v| v.to_string())
                .unwrap_or_default(),
        )
    }
}

pub fn render_verification_text(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for report in reports {
        out.push_str(&format!(
            "suite {:<20} {:>5} cases  {:>3} failures\n",
            report.suite,
            report.cases,
            report.failures.len()
        ));
        for failure in &report.failures {
            out.push_str(&format!(
                "  FAIL {}: left={} right={}\n",
                failure.case, failure.left, failure.right
            ));
        }
    }
    let passed = reports.iter().all(|r| r.passed());
    out.push_str(if passed {
        "VERIFY PASS\n"
    } else {
        "VERIFY FAIL\n"
    });
    out
}

pub fn render_verification_json(reports: &[VerificationReport], seed: u64) -> String {
    let suites: Vec<_> = reports
        .iter()
        .map(|report| {
            json!({
                "suite": report.suite,
                "cases": report.cases,
                "failures": report.failures.iter().map(|f| json!({
                    "case": f.case,
                    "left": f.left.to_string(),
                    "right": f.right.to_string(),
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "seed": seed,
        "suites": suites,
        "passed": reports.iter().all(|r| r.passed()),
    })
    .to_string()
}

pub fn render_sign_grid_text(grid: &SignGrid) -> String {
    let mut out = String::new();
    for cell in &grid.cells {
        out.push_str(&render_cell(cell));
        out.push('\n');
    }
    out.push_str(if grid.passed() {
        "SIGNCHECK PASS\n"
    } else {
        "SIGNCHECK FAIL\n"
    });
    out
}

pub fn render_sign_grid_json(grid: &SignGrid, seed: u64) -> String {
    let cells: Vec<_> = grid
        .cells
        .iter()
        .map(|cell| {
            json!({
                "n": cell.n,
                "d1": cell.d1,
                "d2": cell.d2,
                "sign": cell.computed,
                "expected": cell.expected,
                "accepted": cell.accepted,
                "rejected": cell.rejected,
                "passed": cell.passed(),
            })
        })
        .collect();
    json!({
        "seed": seed,
        "cells": cells,
        "passed": grid.passed(),
    })
    .to_string()
}
