//! CSV and plain-text reports of an evaluation.
//!
//! CSV layout (UTF-8, LF line endings), two regions separated by a blank line:
//!
//! ```text
//! [consistency]
//! node,order,weights,mu_max,ci,ri,cr,result
//! ...one row per internal node; weights joined with ';'
//!
//! [ranking]
//! rank,leaf,label,parent,local_weight,global_weight
//! ...one row per leaf, descending global weight
//! ```
//!
//! CSV numbers carry ten significant digits; the text report rounds to a
//! fixed number of decimals (four by default).

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::io::canonical::{format_decimal, SIGNIFICANT_DIGITS};
use crate::model::{CompositeWeightTable, EvaluationResult, NodeEvaluation};

pub const DEFAULT_PRECISION: usize = 4;

/// Column count of the consistency region header.
pub const CONSISTENCY_COLUMNS: usize = 8;
/// Column count of the ranking region header.
pub const RANKING_COLUMNS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Csv,
    Text,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Self::Csv),
            "text" => Ok(Self::Text),
            other => Err(format!("unknown report format {other:?}")),
        }
    }
}

/// Fixed-point rendering that never prints a negative zero.
pub fn fixed(x: f64, precision: usize) -> String {
    let s = format!("{x:.precision$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

pub fn status_word(passed: bool) -> &'static str {
    if passed {
        "Passed"
    } else {
        "Failed"
    }
}

pub fn export_report(result: &EvaluationResult, format: ReportFormat) -> String {
    export_report_with_precision(result, format, DEFAULT_PRECISION)
}

/// `precision` only affects the text format.
pub fn export_report_with_precision(
    result: &EvaluationResult,
    format: ReportFormat,
    precision: usize,
) -> String {
    match format {
        ReportFormat::Csv => csv_report(result),
        ReportFormat::Text => text_report(result, precision),
    }
}

fn num(x: f64) -> String {
    format_decimal(x, SIGNIFICANT_DIGITS)
}

fn csv_report(result: &EvaluationResult) -> String {
    let mut w = csv::WriterBuilder::new()
        .flexible(true)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    {
        let mut write = |record: &[String]| w.write_record(record).expect("in-memory write");

        write(&["[consistency]".to_string()]);
        write(
            &[
                "node", "order", "weights", "mu_max", "ci", "ri", "cr", "result",
            ]
            .map(String::from),
        );
        for n in &result.nodes {
            let c = &n.consistency;
            let weights: Vec<String> = n.weights.weights.iter().map(|&x| num(x)).collect();
            write(&[
                n.node_id.clone(),
                c.order.to_string(),
                weights.join(";"),
                num(c.mu_max),
                num(c.ci),
                num(c.ri),
                num(c.cr),
                status_word(c.passed).to_string(),
            ]);
        }
    }
    let mut bytes = w.into_inner().expect("in-memory flush");
    bytes.push(b'\n');

    let mut w = csv::WriterBuilder::new()
        .flexible(true)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(bytes);
    w.write_record(["[ranking]"]).expect("in-memory write");
    w.write_record([
        "rank",
        "leaf",
        "label",
        "parent",
        "local_weight",
        "global_weight",
    ])
    .expect("in-memory write");
    for (k, row) in result.composite.rows.iter().enumerate() {
        w.write_record([
            (k + 1).to_string(),
            row.leaf_id.clone(),
            row.label.clone(),
            row.parent_id.clone(),
            num(row.local_weight),
            num(row.global_weight),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

/// `B2  m=4  mu_max=4.0000  CI=0.0000  RI=0.9000  CR=0.0000 PASS`
pub fn consistency_line(node: &NodeEvaluation, id_width: usize, precision: usize) -> String {
    let c = &node.consistency;
    format!(
        "{:<id_width$}  m={:<2}  mu_max={}  CI={}  RI={}  CR={} {}",
        node.node_id,
        c.order,
        fixed(c.mu_max, precision),
        fixed(c.ci, precision),
        fixed(c.ri, precision),
        fixed(c.cr, precision),
        if c.passed { "PASS" } else { "FAIL" },
    )
}

/// One line per leaf: rank, id, global weight, local weight, parent, label.
pub fn ranking_lines(table: &CompositeWeightTable, precision: usize) -> Vec<String> {
    let id_width = table
        .rows
        .iter()
        .map(|r| r.leaf_id.len())
        .max()
        .unwrap_or(0);
    let parent_width = table
        .rows
        .iter()
        .map(|r| r.parent_id.len())
        .max()
        .unwrap_or(0);
    table
        .rows
        .iter()
        .enumerate()
        .map(|(k, r)| {
            format!(
                "{:>3}  {:<id_width$}  {}  {}  {:<parent_width$}  {}",
                k + 1,
                r.leaf_id,
                fixed(r.global_weight, precision),
                fixed(r.local_weight, precision),
                r.parent_id,
                r.label,
            )
        })
        .collect()
}

fn text_report(result: &EvaluationResult, precision: usize) -> String {
    let mut out = String::new();
    let id_width = result
        .nodes
        .iter()
        .map(|n| n.node_id.len())
        .max()
        .unwrap_or(0);

    out.push_str("Local weights and consistency\n");
    for n in &result.nodes {
        let _ = writeln!(out, "{}", consistency_line(n, id_width, precision));
        let weights: Vec<String> = n
            .child_ids
            .iter()
            .zip(&n.weights.weights)
            .map(|(id, w)| format!("{id}={}", fixed(*w, precision)))
            .collect();
        let _ = writeln!(out, "{:id_width$}  weights: {}", "", weights.join(" "));
    }
    let _ = writeln!(
        out,
        "all matrices consistent: {}",
        if result.all_passed { "yes" } else { "no" }
    );

    out.push_str("\nComposite ranking (rank, leaf, global, local, parent, label)\n");
    for line in ranking_lines(&result.composite, precision) {
        out.push_str(&line);
        out.push('\n');
    }
    out
}
