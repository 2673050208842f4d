//! Output plumbing shared by every subcommand.
//!
//! Each command produces one [`Rendered`] value holding both a JSON document
//! and a list of tabular sections; the requested format picks which view is
//! written.  All three formats are deterministic byte-for-byte: JSON object
//! fields keep insertion order, tables are right-padded ASCII, CSV uses
//! commas and LF with standard quoting.

use std::io::{self, Write};

use serde_json::Value;

/// One titled table: a header row plus data rows of equal width.
pub struct Section {
    pub title: Option<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Section {
    pub fn new(
        title: Option<&str>,
        header: &[&str],
        rows: Vec<Vec<String>>,
    ) -> Section {
        Section {
            title: title.map(str::to_owned),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows,
        }
    }
}

/// The full output of one command in both renderable views.
pub struct Rendered {
    pub json: Value,
    pub sections: Vec<Section>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// Build a JSON object whose fields keep the given order.
pub fn obj<'a>(entries: impl IntoIterator<Item = (&'a str, Value)>) -> Value {
    let mut map = serde_json::Map::new();
    for (k, v) in entries {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn write_csv(out: &mut impl Write, sections: &[Section]) -> io::Result<()> {
    for (i, sec) in sections.iter().enumerate() {
        if i > 0 {
            writeln!(out)?;
        }
        if let Some(t) = &sec.title {
            writeln!(out, "{}", csv_field(t))?;
        }
        let line = |cells: &[String]| {
            cells.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(",")
        };
        writeln!(out, "{}", line(&sec.header))?;
        for row in &sec.rows {
            writeln!(out, "{}", line(row))?;
        }
    }
    Ok(())
}

fn write_table(out: &mut impl Write, sections: &[Section]) -> io::Result<()> {
    for (i, sec) in sections.iter().enumerate() {
        if i > 0 {
            writeln!(out)?;
        }
        if let Some(t) = &sec.title {
            writeln!(out, "{t}")?;
        }
        let ncols = sec.header.len();
        let mut widths = vec![0usize; ncols];
        for row in std::iter::once(&sec.header).chain(sec.rows.iter()) {
            for (j, cell) in row.iter().enumerate() {
                widths[j] = widths[j].max(cell.len());
            }
        }
        let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        let mut emit_row = |row: &[String]| -> io::Result<()> {
            let mut line = String::new();
            for (j, cell) in row.iter().enumerate() {
                if j > 0 {
                    line.push_str("  ");
                }
                line.push_str(cell);
                if j + 1 < ncols {
                    line.push_str(&" ".repeat(widths[j] - cell.len()));
                }
            }
            writeln!(out, "{line}")
        };
        emit_row(&sec.header)?;
        emit_row(&rule)?;
        for row in &sec.rows {
            emit_row(row)?;
        }
    }
    Ok(())
}

/// Write the chosen view of a command's output.
pub fn emit(out: &mut impl Write, format: Format, r: &Rendered) -> io::Result<()> {
    match format {
        Format::Json => {
            writeln!(out, "{}", serde_json::to_string_pretty(&r.json)?)
        }
        Format::Csv => write_csv(out, &r.sections),
        Format::Table => write_table(out, &r.sections),
    }
}
