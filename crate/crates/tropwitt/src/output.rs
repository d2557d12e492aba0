use std::fmt::Write;

use clap::ValueEnum;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Text,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Self { headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }
}

/// What a subcommand produced: structured data, a flat table, a few summary
/// lines, and whether every check passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub value: Value,
    pub table: Table,
    pub notes: Vec<String>,
    pub passed: bool,
}

pub fn render(report: &Report, format: Format) -> Result<String, csv::Error> {
    match format {
        Format::Json => {
            let mut v = report.value.clone();
            if let Value::Object(m) = &mut v {
                m.insert("passed".into(), Value::Bool(report.passed));
            }
            Ok(serde_json::to_string_pretty(&v).expect("json values serialize") + "\n")
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&report.table.headers)?;
            for r in &report.table.rows {
                w.write_record(r)?;
            }
            let bytes = w.into_inner().map_err(|e| e.into_error())?;
            Ok(String::from_utf8(bytes).expect("csv of utf-8 strings"))
        }
        Format::Text => Ok(render_text(report)),
    }
}

fn render_text(report: &Report) -> String {
    let mut s = String::new();
    for n in &report.notes {
        s.push_str(n);
        s.push('\n');
    }
    let t = &report.table;
    let mut widths: Vec<usize> = t.headers.iter().map(|h| h.chars().count()).collect();
    for r in &t.rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |s: &mut String, cells: &[String]| {
        let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
        let _ = writeln!(s, "{}", parts.join("  ").trim_end());
    };
    if !t.headers.is_empty() {
        line(&mut s, &t.headers);
        for r in &t.rows {
            line(&mut s, r);
        }
    }
    let _ = writeln!(s, "{}", if report.passed { "PASS" } else { "FAIL" });
    s
}
