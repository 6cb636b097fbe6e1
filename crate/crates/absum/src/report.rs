//! Tabular output: one table model, CSV and JSON writers with identical
//! numeric content.

use std::fmt::Write as _;

/// A single table cell. Integers print exactly; floats print with 15
/// significant digits so round-tripping through text is lossless.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    U(u64),
    I(i64),
    F(f64),
}

/// Floats serialized with 15 significant digits (e-notation is valid in CSV
/// and JSON alike).
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.14e}")
}

fn write_cell(out: &mut String, c: &Cell) {
    match c {
        Cell::U(v) => {
            let _ = write!(out, "{v}");
        }
        Cell::I(v) => {
            let _ = write!(out, "{v}");
        }
        Cell::F(v) => out.push_str(&fmt_f64(*v)),
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    headers: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(headers: Vec<&'static str>) -> Table {
        Table {
            headers,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.headers.len(), "row width mismatch");
        self.rows.push(row);
    }

    pub fn headers(&self) -> &[&'static str] {
        &self.headers
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.headers.join(","));
        out.push('\n');
        for row in &self.rows {
            for (i, c) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_cell(&mut out, c);
            }
            out.push('\n');
        }
        out
    }

    /// JSON array of objects keyed by the headers, numbers unquoted.
    pub fn to_json(&self) -> String {
        let mut out = String::from("[");
        for (ri, row) in self.rows.iter().enumerate() {
            if ri > 0 {
                out.push(',');
            }
            out.push_str("\n  {");
            for (i, (h, c)) in self.headers.iter().zip(row).enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                let _ = write!(out, "\"{h}\": ");
                write_cell(&mut out, c);
            }
            out.push('}');
        }
        out.push_str("\n]\n");
        out
    }
}
