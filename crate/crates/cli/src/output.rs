//! Row formats for `palk find`.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use palk_core::{EditScript, PalindromeResult, Parity, Variant};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FindRow {
    pub center: usize,
    pub parity: Parity,
    pub start: usize,
    pub end: usize,
    pub size: usize,
    pub errors: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub script: Option<EditScript>,
}

impl From<&PalindromeResult> for FindRow {
    fn from(r: &PalindromeResult) -> Self {
        FindRow {
            center: r.center,
            parity: r.parity,
            start: r.start,
            end: r.end,
            size: r.size,
            errors: r.errors,
            script: r.script.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FindDocument {
    pub coordinates: String,
    pub n: usize,
    pub k: usize,
    pub variant: Variant,
    pub relation: String,
    pub alphabet: String,
    pub iterations: u64,
    pub results: Vec<FindRow>,
}

pub const FIND_COLUMNS: [&str; 6] = ["center", "parity", "start", "end", "size", "errors"];

/// Header plus one line per row; `script` is appended when requested.
pub fn write_find_table(rows: &[FindRow], sep: char, scripts: bool, out: &mut dyn Write) -> io::Result<()> {
    let mut header = FIND_COLUMNS.join(&sep.to_string());
    if scripts {
        header.push(sep);
        header.push_str("script");
    }
    writeln!(out, "{header}")?;
    for r in rows {
        write!(out, "{}{sep}{}{sep}{}{sep}{}{sep}{}{sep}{}", r.center, r.parity, r.start, r.end, r.size, r.errors)?;
        if scripts {
            write!(out, "{sep}{}", r.script.as_ref().map(|s| s.to_string()).unwrap_or_default())?;
        }
        writeln!(out)?;
    }
    Ok(())
}

/// Parses a table written by [`write_find_table`].
pub fn read_find_table(text: &str, sep: char) -> Result<Vec<FindRow>, String> {
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().ok_or("empty table")?.split(sep).collect();
    let scripts = header.len() == 7;
    lines
        .map(|line| {
            let f: Vec<&str> = line.split(sep).collect();
            if f.len() != header.len() {
                return Err(format!("row `{line}` has {} fields, header has {}", f.len(), header.len()));
            }
            let num = |i: usize| f[i].parse::<usize>().map_err(|e| format!("field {}: {e}", header[i]));
            Ok(FindRow {
                center: num(0)?,
                parity: f[1].parse().map_err(|e: palk_core::Error| e.to_string())?,
                start: num(2)?,
                end: num(3)?,
                size: num(4)?,
                errors: num(5)?,
                script: if scripts { Some(f[6].parse().map_err(|e: palk_core::Error| e.to_string())?) } else { None },
            })
        })
        .collect()
}
