//! Deterministic renderings of analysis results.
//!
//! Three formats are supported: a human-readable plain block, a flat CSV
//! with one row per matrix cell, and JSON lines. The structured formats
//! carry a schema-version field. All renderings are pure functions of the
//! report, so identical inputs produce byte-identical output.

use serde_json::json;

use crate::analysis::{
    ChaosReport, CountRow, IndependenceOutcome, Lz76Report, StreamAnalysis,
};
use crate::bit::Bit;
use crate::streams::{BitStream, StreamError};

/// Schema tag carried by CSV and JSON-lines renderings.
pub const REPORT_SCHEMA: &str = "morphic.report.v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Plain,
    Csv,
    JsonLines,
}

const OBJECT_ROWS: [&str; 2] = ["s=0", "s=1"];
const JOINT_ROWS: [&str; 4] = ["s=0|u=0", "s=0|u=1", "s=1|u=0", "s=1|u=1"];
const OBJECT_COLS: [&str; 2] = ["s'=0", "s'=1"];
const FUNDAMENT_COLS: [&str; 2] = ["u=0", "u=1"];

struct MatrixView<'a> {
    name: &'static str,
    rows: &'a [&'static str],
    cols: [&'static str; 2],
    data: &'a [CountRow],
}

fn matrices(analysis: &StreamAnalysis) -> [MatrixView<'_>; 3] {
    [
        MatrixView {
            name: "object",
            rows: &OBJECT_ROWS,
            cols: OBJECT_COLS,
            data: &analysis.transitions.object,
        },
        MatrixView {
            name: "fundament",
            rows: &OBJECT_ROWS,
            cols: FUNDAMENT_COLS,
            data: &analysis.transitions.fundament,
        },
        MatrixView {
            name: "joint",
            rows: &JOINT_ROWS,
            cols: OBJECT_COLS,
            data: &analysis.transitions.joint,
        },
    ]
}

fn fraction_text(row: &CountRow, column: usize) -> String {
    match row.fraction(column) {
        Some((num, den)) => format!("{num}/{den}"),
        None => "no-samples".to_string(),
    }
}

fn decimal_text(row: &CountRow, column: usize) -> String {
    match row.probability(column) {
        Some(p) => format!("{p:.6}"),
        None => "NA".to_string(),
    }
}

/// Renders a full seeded demonstration.
pub fn render_chaos_report(report: &ChaosReport, format: ReportFormat) -> String {
    render(
        "demo",
        Some((report.p_zero, report.seed)),
        &report.analysis,
        format,
    )
}

/// Renders the analysis of a caller-supplied stream.
pub fn render_stream_analysis(analysis: &StreamAnalysis, format: ReportFormat) -> String {
    render("analyze", None, analysis, format)
}

fn render(
    kind: &str,
    sampled: Option<(f64, u64)>,
    analysis: &StreamAnalysis,
    format: ReportFormat,
) -> String {
    match format {
        ReportFormat::Plain => render_plain(kind, sampled, analysis),
        ReportFormat::Csv => render_csv(kind, sampled, analysis),
        ReportFormat::JsonLines => render_json_lines(kind, sampled, analysis),
    }
}

fn render_plain(kind: &str, sampled: Option<(f64, u64)>, analysis: &StreamAnalysis) -> String {
    let mut out = String::new();
    let push = |out: &mut String, line: String| {
        out.push_str(&line);
        out.push('\n');
    };
    push(&mut out, format!("report: {REPORT_SCHEMA}"));
    push(&mut out, format!("kind: {kind}"));
    if let Some((p_zero, seed)) = sampled {
        push(&mut out, format!("p0: {p_zero:.6}"));
        push(&mut out, format!("seed: {seed}"));
    }
    push(&mut out, format!("length: {}", analysis.length));
    push(
        &mut out,
        format!("rule: {} ({} bits)", analysis.rule_code, analysis.rule_code.len()),
    );
    push(&mut out, format!("degenerate: {}", analysis.degenerate));
    let (zeros, total) = analysis.marginal_zero();
    push(
        &mut out,
        format!("marginal[s=0]: {zeros}/{total} = {:.6}", zeros as f64 / total as f64),
    );
    push(&mut out, format!("samples: {}", analysis.transitions.samples));
    for m in matrices(analysis) {
        for (r, row) in m.data.iter().enumerate() {
            for c in 0..2 {
                push(
                    &mut out,
                    format!(
                        "{}[{} | {}]: {} = {}",
                        m.name,
                        m.cols[c],
                        m.rows[r],
                        fraction_text(row, c),
                        decimal_text(row, c),
                    ),
                );
            }
        }
    }
    match analysis.independence.outcome {
        IndependenceOutcome::Tested {
            statistic,
            degrees_of_freedom,
            critical_value,
            below_critical,
        } => {
            push(
                &mut out,
                format!(
                    "independence: chi2 = {statistic:.6}, dof = {degrees_of_freedom}, \
                     critical = {critical_value:.6}, below-critical = {below_critical}"
                ),
            );
        }
        IndependenceOutcome::NoVariation => {
            push(&mut out, "independence: no variation".to_string());
        }
    }
    let lz = |target: &str, r: &Lz76Report| {
        format!(
            "lz76[{target}]: phrases = {}, normalized = {:.6} (proxy statistic, not Kolmogorov complexity)",
            r.phrases, r.normalized
        )
    };
    push(&mut out, lz("source", &analysis.lz76_source));
    push(&mut out, lz("program", &analysis.lz76_program));
    out
}

fn render_csv(kind: &str, sampled: Option<(f64, u64)>, analysis: &StreamAnalysis) -> String {
    let mut lines = Vec::new();
    lines.push(format!("schema,{REPORT_SCHEMA}"));
    lines.push(format!("param,kind,{kind}"));
    if let Some((p_zero, seed)) = sampled {
        lines.push(format!("param,p0,{p_zero:.6}"));
        lines.push(format!("param,seed,{seed}"));
    }
    lines.push(format!("param,length,{}", analysis.length));
    lines.push(format!("param,rule,{}", analysis.rule_code));
    lines.push(format!("param,degenerate,{}", analysis.degenerate));
    let (zeros, total) = analysis.marginal_zero();
    lines.push(format!("stat,marginal_zero_count,{zeros}"));
    lines.push(format!("stat,marginal_zero_total,{total}"));
    lines.push(format!("stat,samples,{}", analysis.transitions.samples));
    for m in matrices(analysis) {
        for (r, row) in m.data.iter().enumerate() {
            for c in 0..2 {
                lines.push(format!(
                    "matrix,{},{},{},{},{},{}",
                    m.name,
                    m.rows[r],
                    m.cols[c],
                    row.counts[c],
                    row.total(),
                    decimal_text(row, c),
                ));
            }
        }
    }
    match analysis.independence.outcome {
        IndependenceOutcome::Tested {
            statistic,
            degrees_of_freedom,
            critical_value,
            below_critical,
        } => {
            lines.push("stat,independence,tested".to_string());
            lines.push(format!("stat,chi_square,{statistic:.6}"));
            lines.push(format!("stat,chi_square_dof,{degrees_of_freedom}"));
            lines.push(format!("stat,chi_square_critical,{critical_value:.6}"));
            lines.push(format!("stat,chi_square_below_critical,{below_critical}"));
        }
        IndependenceOutcome::NoVariation => {
            lines.push("stat,independence,no-variation".to_string());
        }
    }
    for (target, r) in [("source", &analysis.lz76_source), ("program", &analysis.lz76_program)] {
        lines.push(format!("stat,lz76_{target}_phrases,{}", r.phrases));
        lines.push(format!("stat,lz76_{target}_normalized,{:.6}", r.normalized));
    }
    lines.join("\n") + "\n"
}

fn render_json_lines(kind: &str, sampled: Option<(f64, u64)>, analysis: &StreamAnalysis) -> String {
    let mut records = Vec::new();
    let mut params = json!({
        "schema": REPORT_SCHEMA,
        "record": "params",
        "kind": kind,
        "length": analysis.length,
        "rule": analysis.rule_code,
        "degenerate": analysis.degenerate,
    });
    if let Some((p_zero, seed)) = sampled {
        params["p0"] = json!(p_zero);
        params["seed"] = json!(seed);
    }
    records.push(params);
    let (zeros, total) = analysis.marginal_zero();
    records.push(json!({
        "schema": REPORT_SCHEMA,
        "record": "marginal",
        "zero_count": zeros,
        "total": total,
        "decimal": zeros as f64 / total as f64,
    }));
    records.push(json!({
        "schema": REPORT_SCHEMA,
        "record": "samples",
        "transitions": analysis.transitions.samples,
    }));
    for m in matrices(analysis) {
        for (r, row) in m.data.iter().enumerate() {
            for c in 0..2 {
                records.push(json!({
                    "schema": REPORT_SCHEMA,
                    "record": "matrix-cell",
                    "matrix": m.name,
                    "row": m.rows[r],
                    "col": m.cols[c],
                    "count": row.counts[c],
                    "total": row.total(),
                    "fraction": fraction_text(row, c),
                    "decimal": row.probability(c),
                }));
            }
        }
    }
    let independence = match analysis.independence.outcome {
        IndependenceOutcome::Tested {
            statistic,
            degrees_of_freedom,
            critical_value,
            below_critical,
        } => json!({
            "schema": REPORT_SCHEMA,
            "record": "independence",
            "status": "tested",
            "statistic": statistic,
            "dof": degrees_of_freedom,
            "critical": critical_value,
            "below_critical": below_critical,
        }),
        IndependenceOutcome::NoVariation => json!({
            "schema": REPORT_SCHEMA,
            "record": "independence",
            "status": "no-variation",
        }),
    };
    records.push(independence);
    for (target, r) in [("source", &analysis.lz76_source), ("program", &analysis.lz76_program)] {
        records.push(json!({
            "schema": REPORT_SCHEMA,
            "record": "lz76",
            "target": target,
            "phrases": r.phrases,
            "normalized": r.normalized,
        }));
    }
    let mut out = String::new();
    for record in records {
        out.push_str(&record.to_string());
        out.push('\n');
    }
    out
}

/// Cumulative frequency of zeros as a gnuplot-ready two-column series
/// (position, frequency), sampled at up to `points` evenly spaced positions.
pub fn frequency_series(
    s: &BitStream,
    length: usize,
    points: usize,
) -> Result<String, StreamError> {
    let bits = s.materialize(length)?;
    let step = (length / points.max(1)).max(1);
    let mut out = String::new();
    let mut zeros = 0u64;
    for (i, &b) in bits.iter().enumerate() {
        if b == Bit::Zero {
            zeros += 1;
        }
        let n = i + 1;
        if n % step == 0 || n == length {
            out.push_str(&format!("{n} {:.6}\n", zeros as f64 / n as f64));
        }
    }
    Ok(out)
}
