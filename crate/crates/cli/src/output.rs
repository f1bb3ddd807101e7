//! Number formatting and the CSV / SVG / JSON emitters.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::CliError;

/// `x` to `digits` significant digits, fixed-point for moderate exponents.
pub fn sig(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let e = x.abs().log10().floor() as i32;
    if (-5..=15).contains(&e) {
        let decimals = (digits as i32 - 1 - e).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.prec$e}", prec = digits.saturating_sub(1))
    }
}

/// A rectangular table of reals.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub caption: String,
}

impl OutputTable {
    pub fn new(columns: &[&str], caption: impl Into<String>) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            caption: caption.into(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) -> Result<(), CliError> {
        if row.len() != self.columns.len() {
            return Err(CliError::Internal(format!(
                "row has {} entries, table has {} columns",
                row.len(),
                self.columns.len()
            )));
        }
        if let Some(bad) = row.iter().find(|v| !v.is_finite()) {
            return Err(CliError::Domain(format!("non-finite table entry {bad}")));
        }
        self.rows.push(row);
        Ok(())
    }

    fn column(&self, i: usize) -> impl Iterator<Item = f64> + '_ {
        self.rows.iter().map(move |r| r[i])
    }
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

pub fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))
}

/// RFC 4180 CSV with a header row and 17 significant digits per value.
pub fn csv_bytes(table: &OutputTable) -> Result<Vec<u8>, CliError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(Vec::new());
    let internal = |e: csv::Error| CliError::Internal(e.to_string());
    w.write_record(&table.columns).map_err(internal)?;
    for row in &table.rows {
        w.write_record(row.iter().map(|v| format!("{v:.16e}")))
            .map_err(internal)?;
    }
    w.into_inner()
        .map_err(|e| CliError::Internal(e.to_string()))
}

pub fn write_csv(table: &OutputTable, path: &Path) -> Result<(), CliError> {
    fs::write(path, csv_bytes(table)?).map_err(|e| io_err(path, e))
}

const W: f64 = 640.0;
const H: f64 = 400.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn span(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    if lo == hi {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// SVG 1.1 polyline plot of column `y` against column `x`, one line per
/// distinct value of `group` when given.
pub fn svg_plot(table: &OutputTable, x: usize, y: usize, group: Option<usize>) -> String {
    let (x0, x1) = span(table.column(x));
    let (y0, y1) = span(table.column(y));
    let px = |v: f64| MARGIN + (v - x0) / (x1 - x0) * (W - 2.0 * MARGIN);
    let py = |v: f64| H - MARGIN - (v - y0) / (y1 - y0) * (H - 2.0 * MARGIN);

    let mut series: Vec<(f64, Vec<(f64, f64)>)> = Vec::new();
    for row in &table.rows {
        let key = group.map_or(0.0, |g| row[g]);
        match series.iter_mut().find(|(k, _)| k.to_bits() == key.to_bits()) {
            Some((_, pts)) => pts.push((row[x], row[y])),
            None => series.push((key, vec![(row[x], row[y])])),
        }
    }

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="24" text-anchor="middle" font-family="sans-serif" font-size="14">{}</text>"#,
        W / 2.0,
        escape(&table.caption)
    );
    let (bl, br, bt, bb) = (MARGIN, W - MARGIN, MARGIN, H - MARGIN);
    let _ = writeln!(
        s,
        r#"<path d="M{bl} {bt} L{bl} {bb} L{br} {bb}" fill="none" stroke="black"/>"#
    );
    let label = |v: f64| sig(v, 4);
    let _ = writeln!(
        s,
        r#"<text x="{bl}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="11">{}</text>"#,
        bb + 16.0,
        label(x0)
    );
    let _ = writeln!(
        s,
        r#"<text x="{br}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="11">{}</text>"#,
        bb + 16.0,
        label(x1)
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{bb}" text-anchor="end" font-family="sans-serif" font-size="11">{}</text>"#,
        bl - 4.0,
        label(y0)
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="end" font-family="sans-serif" font-size="11">{}</text>"#,
        bl - 4.0,
        bt + 4.0,
        label(y1)
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="12">{}</text>"#,
        W / 2.0,
        H - 20.0,
        escape(&table.columns[x])
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{}" text-anchor="middle" font-family="sans-serif" font-size="12" transform="rotate(-90 16 {})">{}</text>"#,
        H / 2.0,
        H / 2.0,
        escape(&table.columns[y])
    );
    for (i, (_, pts)) in series.iter().enumerate() {
        let coords: Vec<String> = pts
            .iter()
            .map(|&(a, b)| format!("{:.3},{:.3}", px(a), py(b)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{}" stroke-width="1.5" points="{}"/>"#,
            COLORS[i % COLORS.len()],
            coords.join(" ")
        );
    }
    s.push_str("</svg>\n");
    s
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| io_err(path, e))
}

/// Pretty JSON with a trailing newline.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text =
        serde_json::to_string_pretty(value).map_err(|e| CliError::Internal(e.to_string()))?;
    text.push('\n');
    write_text(path, &text)
}

pub fn out_path(dir: &Path, name: &str) -> PathBuf {
    dir.join(name)
}
