//! CSV with a single `#`-prefixed JSON header line.
//!
//! Numbers are written with 17 significant digits in scientific notation,
//! `.` as decimal separator and `\n` line endings.

use std::io::Write;

use serde_json::Value;

use crate::analysis::Cell;
use crate::{Error, Result};

pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_table(
    w: &mut dyn Write,
    header: &Value,
    columns: &[&str],
    rows: &[Vec<Cell>],
) -> Result<()> {
    writeln!(w, "# {}", serde_json::to_string(header)?)?;
    writeln!(w, "{}", columns.join(","))?;
    let mut line = String::new();
    for row in rows {
        line.clear();
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                line.push(',');
            }
            match cell {
                Cell::Num(v) => line.push_str(&format_number(*v)),
                Cell::Text(s) => line.push_str(s),
            }
        }
        line.push('\n');
        w.write_all(line.as_bytes())?;
    }
    Ok(())
}

/// Parses the JSON header of a file produced by [`write_table`].
pub fn parse_header(text: &str) -> Result<Value> {
    let first = text.lines().next().unwrap_or_default();
    let json = first
        .strip_prefix("# ")
        .ok_or_else(|| Error::Config("missing `# ` header line".into()))?;
    Ok(serde_json::from_str(json)?)
}
