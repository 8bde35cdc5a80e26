// SPDX-License-Identifier: Apache-2.0

//! Run reports. Each report is one serializable struct; the text form is
//! rendered from the same fields, so both formats carry identical numbers.
//!
//! JSON schema: every report has a `command` field naming the subcommand;
//! the remaining fields are the struct fields below, in snake_case. Line
//! names (`a`, `b`, ...) are strings; counts are integers.

use std::fmt::Write as _;

use serde::Serialize;

use revsynth::{Mismatch, Order};

use crate::ReportFormat;

pub trait Report: Serialize {
    fn text(&self) -> String;
}

/// Renders a report, newline-terminated.
pub fn render<R: Report>(report: &R, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut out = serde_json::to_string_pretty(report).expect("report serializes");
            out.push('\n');
            out
        }
        ReportFormat::Text => report.text(),
    }
}

#[derive(Debug, Serialize)]
pub struct SynthReport {
    pub command: &'static str,
    pub width: usize,
    pub complexity: u64,
    pub gate_count: usize,
    pub control_count: usize,
    pub swap_count: usize,
    pub reverse_op_count: usize,
    pub strategy: revsynth::Strategy,
    pub tie_break: revsynth::TieBreak,
    pub direction: revsynth::Direction,
    pub seed: u64,
    pub trials: usize,
    pub order: Order,
    pub circuit: String,
    pub output: Option<String>,
}

impl Report for SynthReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "lines: {}", self.width);
        let _ = writeln!(s, "complexity: {}", self.complexity);
        let _ = writeln!(s, "gates: {}", self.gate_count);
        let _ = writeln!(s, "controls: {}", self.control_count);
        let _ = writeln!(s, "swaps: {}", self.swap_count);
        let _ = writeln!(s, "reverse ops: {}", self.reverse_op_count);
        let _ = writeln!(s, "order: {}", self.order);
        let _ = writeln!(s, "circuit: {}", self.circuit);
        if let Some(path) = &self.output {
            let _ = writeln!(s, "written: {path}");
        }
        s
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub command: &'static str,
    pub width: usize,
    pub gate_count: usize,
    pub order: Order,
    pub rows: usize,
    pub pass: bool,
    pub mismatch: Option<Mismatch>,
}

impl Report for VerifyReport {
    fn text(&self) -> String {
        match &self.mismatch {
            None => format!(
                "PASS: {} gates realize the specification in {} order ({} rows)\n",
                self.gate_count, self.order, self.rows
            ),
            Some(m) => format!(
                "FAIL: first mismatch at row {}: expected {}, got {} ({} order)\n",
                m.row, m.expected, m.actual, self.order
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Size {
    pub gates: usize,
    pub controls: usize,
}

#[derive(Debug, Serialize)]
pub struct OptimizeReport {
    pub command: &'static str,
    pub width: usize,
    pub before: Size,
    pub after: Size,
    pub pair_removals: usize,
    pub template_rewrites: usize,
    pub commuting_merges: usize,
    pub control_deletions: usize,
    pub rewrites: usize,
    pub circuit: String,
    pub output: Option<String>,
}

impl Report for OptimizeReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "gates: {} -> {}", self.before.gates, self.after.gates);
        let _ = writeln!(
            s,
            "controls: {} -> {}",
            self.before.controls, self.after.controls
        );
        let _ = writeln!(
            s,
            "{} rewrites ({} pair removals, {} template rewrites, {} commuting merges, {} control deletions)",
            self.rewrites,
            self.pair_removals,
            self.template_rewrites,
            self.commuting_merges,
            self.control_deletions
        );
        let _ = writeln!(s, "circuit: {}", self.circuit);
        if let Some(path) = &self.output {
            let _ = writeln!(s, "written: {path}");
        }
        s
    }
}

#[derive(Debug, Serialize)]
pub struct EmbedReport {
    pub command: &'static str,
    pub inputs: usize,
    pub outputs: usize,
    pub width: usize,
    pub m: u32,
    pub p: u32,
    pub constant_lines: Vec<String>,
    pub output_lines: Vec<String>,
    pub passthrough_lines: Vec<String>,
    pub repaired: bool,
    pub spec: String,
    pub output: Option<String>,
}

impl Report for EmbedReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "inputs: {}", self.inputs);
        let _ = writeln!(s, "outputs: {}", self.outputs);
        let _ = writeln!(s, "lines: {}", self.width);
        let _ = writeln!(s, "m: {}", self.m);
        let _ = writeln!(s, "p: {}", self.p);
        let _ = writeln!(s, "constant lines: {}", names(&self.constant_lines));
        let _ = writeln!(s, "functional lines: {}", names(&self.output_lines));
        let _ = writeln!(s, "pass-through lines: {}", names(&self.passthrough_lines));
        let _ = writeln!(s, "repaired: {}", self.repaired);
        let _ = writeln!(s, "spec: {}", self.spec);
        if let Some(path) = &self.output {
            let _ = writeln!(s, "written: {path}");
        }
        s
    }
}

fn names(lines: &[String]) -> String {
    if lines.is_empty() {
        "none".into()
    } else {
        lines.join(" ")
    }
}

#[derive(Debug, Serialize)]
pub struct StatsReport {
    pub command: &'static str,
    pub width: usize,
    pub rows: usize,
    pub complexity: u64,
    pub misplaced: usize,
    pub fixed_points: usize,
    pub cycles: Vec<Vec<u32>>,
}

impl Report for StatsReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "lines: {}", self.width);
        let _ = writeln!(s, "rows: {}", self.rows);
        let _ = writeln!(s, "complexity: {}", self.complexity);
        let _ = writeln!(s, "misplaced: {}", self.misplaced);
        let _ = writeln!(s, "fixed points: {}", self.fixed_points);
        let cycles: Vec<String> = self
            .cycles
            .iter()
            .map(|c| {
                let items: Vec<String> = c.iter().map(u32::to_string).collect();
                format!("({})", items.join(" "))
            })
            .collect();
        let _ = writeln!(
            s,
            "cycles: {}",
            if cycles.is_empty() {
                "none".into()
            } else {
                cycles.join(" ")
            }
        );
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stats() -> StatsReport {
        StatsReport {
            command: "stats",
            width: 2,
            rows: 4,
            complexity: 4,
            misplaced: 4,
            fixed_points: 0,
            cycles: vec![vec![0, 1], vec![2, 3]],
        }
    }

    #[test]
    fn stats_text_lists_cycles() {
        let text = stats().text();
        assert!(text.contains("complexity: 4\n"));
        assert!(text.contains("cycles: (0 1) (2 3)\n"));
    }

    #[test]
    fn json_is_single_object() {
        let out = render(&stats(), ReportFormat::Json);
        let value: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(value["command"], "stats");
        assert_eq!(value["cycles"][1][0], 2);
    }

    #[test]
    fn verify_text_names_first_mismatch() {
        let report = VerifyReport {
            command: "verify",
            width: 3,
            gate_count: 5,
            order: Order::Listed,
            rows: 8,
            pass: false,
            mismatch: Some(Mismatch {
                row: 0,
                expected: 0,
                actual: 1,
            }),
        };
        assert_eq!(
            report.text(),
            "FAIL: first mismatch at row 0: expected 0, got 1 (listed order)\n"
        );
    }

    #[test]
    fn empty_line_lists_render_as_none() {
        assert_eq!(names(&[]), "none");
        assert_eq!(names(&["c".into(), "d".into()]), "c d");
    }
}
