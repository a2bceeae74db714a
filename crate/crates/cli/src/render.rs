use std::fmt::Write as _;

use eisen_core::report::{ComparisonReport, Report, ReportKind};
use serde::Serialize;

use crate::args::Format;
use crate::run::SplitReport;

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for r in rows {
        w.write_record(&r).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(ToString::to_string).unwrap_or_default()
}

/// Floats spelled exactly as in the json output.
fn num(x: &Option<f64>) -> String {
    x.map(|v| serde_json::Value::from(v).to_string()).unwrap_or_default()
}

/// Left-aligned columns separated by two spaces.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &mut dyn Iterator<Item = &str>| {
        let row: Vec<String> = cells.zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        out.push_str(row.join("  ").trim_end());
        out.push('\n');
    };
    line(&mut header.iter().copied());
    for r in rows {
        line(&mut r.iter().map(String::as_str));
    }
    out
}

pub fn split(r: &SplitReport, format: Format) -> String {
    let header = ["p", "ideal", "generator", "e", "f", "norm"];
    let rows: Vec<Vec<String>> = r
        .primes
        .iter()
        .map(|p| {
            vec![
                p.p.to_string(),
                p.ideal.clone(),
                p.generator.clone(),
                p.ramification.to_string(),
                p.residue_degree.to_string(),
                p.norm.clone(),
            ]
        })
        .collect();
    match format {
        Format::Json => json(r),
        Format::Csv => csv(&header, rows),
        Format::Text => format!("field {}  M={}\n{}", r.field, r.cutoff, table(&header, &rows)),
    }
}

const REPORT_HEADER: [&str; 9] = ["quantity", "status", "lo", "hi", "width", "lo_exact", "hi_exact", "standard_error", "note"];

fn report_rows(r: &Report) -> Vec<Vec<String>> {
    r.quantities
        .iter()
        .map(|q| {
            vec![
                q.quantity.clone(),
                serde_json::to_value(q.status).unwrap().as_str().unwrap().to_string(),
                opt(&q.lo),
                opt(&q.hi),
                opt(&q.width),
                opt(&q.lo_exact),
                opt(&q.hi_exact),
                num(&q.standard_error),
                opt(&q.note),
            ]
        })
        .collect()
}

fn report_heading(r: &Report) -> String {
    let mut s = match r.kind {
        ReportKind::Analytic => "analytic".to_string(),
        ReportKind::Empirical => "empirical".to_string(),
    };
    write!(s, "  field {}  d={}  flavor={}", r.field, r.d, r.flavor).unwrap();
    if let Some(m) = r.cutoff {
        write!(s, "  M={m}").unwrap();
    }
    if let Some(h) = r.h {
        write!(s, "  H={h}").unwrap();
    }
    if let Some(m) = &r.mode {
        write!(s, "  mode={m}").unwrap();
    }
    if let (Some(n), Some(seed)) = (r.samples, r.seed) {
        write!(s, "  samples={n}  seed={seed}").unwrap();
    }
    if let (Some(t), Some(h)) = (&r.total, &r.in_target) {
        write!(s, "  tuples={t}  in_target={h}").unwrap();
    }
    s.push('\n');
    s
}

/// Text keeps the decimal columns and notes; exact fractions are in json and csv.
fn report_text(r: &Report) -> String {
    let header = ["quantity", "status", "lo", "hi", "width", "standard_error"];
    let rows: Vec<Vec<String>> = report_rows(r).into_iter().map(|mut row| {
        row.truncate(8);
        row.drain(5..7);
        row
    }).collect();
    let mut out = report_heading(r);
    out.push_str(&table(&header, &rows));
    for q in &r.quantities {
        if let Some(n) = &q.note {
            writeln!(out, "note ({}): {n}", q.quantity).unwrap();
        }
    }
    out
}

pub fn report(r: &Report, format: Format) -> String {
    match format {
        Format::Json => json(r),
        Format::Csv => csv(&REPORT_HEADER, report_rows(r)),
        Format::Text => report_text(r),
    }
}

const COMPARE_HEADER: [&str; 8] = [
    "quantity",
    "empirical",
    "standard_error",
    "analytic_lo",
    "analytic_hi",
    "delta",
    "allowed",
    "status",
];

fn comparison_rows(c: &ComparisonReport) -> Vec<Vec<String>> {
    c.rows
        .iter()
        .map(|r| {
            vec![
                r.quantity.clone(),
                num(&r.empirical),
                num(&r.standard_error),
                num(&r.analytic_lo),
                num(&r.analytic_hi),
                num(&r.delta),
                num(&r.allowed),
                serde_json::to_value(r.status).unwrap().as_str().unwrap().to_string(),
            ]
        })
        .collect()
}

pub fn comparison(c: &ComparisonReport, format: Format) -> String {
    match format {
        Format::Json => json(c),
        Format::Csv => csv(&COMPARE_HEADER, comparison_rows(c)),
        Format::Text => {
            let mut out = report_heading(&c.analytic);
            out.push_str(&report_heading(&c.empirical));
            writeln!(out, "tolerance {}", c.tolerance).unwrap();
            out.push_str(&table(&COMPARE_HEADER, &comparison_rows(c)));
            writeln!(out, "verdict: {}", if c.passed { "PASS" } else { "FAIL" }).unwrap();
            out
        }
    }
}
