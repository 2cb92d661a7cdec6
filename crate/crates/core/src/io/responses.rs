//! Comma-separated response matrices and ground-truth tables.
//!
//! A response file has a header row whose first cell labels the subject
//! column and whose remaining cells are item ids, then one row per subject:
//!
//! ```text
//! subject,item1,item2
//! s1,1,0
//! s2,0,0
//! ```
//!
//! Cells must be exactly `0` or `1`. Line and column numbers in errors are
//! one-based and count the subject column.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::{Abilities, ResponseMatrix};
use crate::synth::Scenario;

use super::{num, read_text, write_text};

pub fn read_responses(path: &Path) -> Result<ResponseMatrix> {
    parse_responses(&read_text(path)?, path)
}

pub fn parse_responses(text: &str, path: &Path) -> Result<ResponseMatrix> {
    let at = |line: usize, column: usize, message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        column,
        message,
    };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty());

    let (_, header) = lines.next().ok_or_else(|| at(1, 1, "empty file".into()))?;
    let item_ids: Vec<String> = header
        .split(',')
        .skip(1)
        .map(|s| s.trim().to_string())
        .collect();
    if item_ids.is_empty() {
        return Err(at(1, 2, "header names no items".into()));
    }
    for (k, id) in item_ids.iter().enumerate() {
        if id.is_empty() {
            return Err(at(1, k + 2, "empty item id".into()));
        }
        if item_ids[..k].contains(id) {
            return Err(at(1, k + 2, format!("duplicate item id '{id}'")));
        }
    }

    let n_items = item_ids.len();
    let mut subject_ids: Vec<String> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    // subject-major while reading, transposed at the end
    let mut cells: Vec<u8> = Vec::new();
    for (lineno, line) in lines {
        let mut fields = line.split(',');
        let sid = fields.next().unwrap_or("").trim();
        if sid.is_empty() {
            return Err(at(lineno, 1, "empty subject id".into()));
        }
        if !seen.insert(sid.to_string()) {
            return Err(at(lineno, 1, format!("duplicate subject id '{sid}'")));
        }
        let mut count = 0;
        for (k, cell) in fields.enumerate() {
            if k >= n_items {
                return Err(at(
                    lineno,
                    k + 2,
                    format!("row has more than {n_items} responses"),
                ));
            }
            cells.push(match cell.trim() {
                "0" => 0,
                "1" => 1,
                "" => return Err(at(lineno, k + 2, "missing response".into())),
                other => {
                    return Err(at(
                        lineno,
                        k + 2,
                        format!("response '{other}' is not 0 or 1"),
                    ))
                }
            });
            count += 1;
        }
        if count < n_items {
            return Err(at(
                lineno,
                count + 2,
                format!("row has {count} responses, expected {n_items}"),
            ));
        }
        subject_ids.push(sid.to_string());
    }
    if subject_ids.is_empty() {
        return Err(at(1, 1, "no subject rows".into()));
    }

    let n_subjects = subject_ids.len();
    let mut y = vec![0u8; n_items * n_subjects];
    for (j, row) in cells.chunks_exact(n_items).enumerate() {
        for (i, &v) in row.iter().enumerate() {
            y[i * n_subjects + j] = v;
        }
    }
    ResponseMatrix::new(item_ids, subject_ids, y)
}

pub fn format_responses(y: &ResponseMatrix) -> String {
    let mut out = String::with_capacity((y.n_items() * 2 + 8) * (y.n_subjects() + 1));
    out.push_str("subject");
    for id in y.item_ids() {
        out.push(',');
        out.push_str(id);
    }
    out.push('\n');
    for (j, sid) in y.subject_ids().iter().enumerate() {
        out.push_str(sid);
        for i in 0..y.n_items() {
            out.push_str(if y.get(i, j) == 1 { ",1" } else { ",0" });
        }
        out.push('\n');
    }
    out
}

pub fn write_responses(path: &Path, y: &ResponseMatrix) -> Result<()> {
    write_text(path, &format_responses(y))
}

/// Reads `item,c` rows and returns the guessing values in the order of
/// `item_ids`.
pub fn read_fixed_c(path: &Path, item_ids: &[String]) -> Result<Vec<f64>> {
    let text = read_text(path)?;
    let at = |line: usize, column: usize, message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        column,
        message,
    };
    let mut values: Vec<Option<f64>> = vec![None; item_ids.len()];
    for (k, line) in text.lines().enumerate() {
        let lineno = k + 1;
        let line = line.trim();
        if line.is_empty() || (lineno == 1 && line.replace(' ', "") == "item,c") {
            continue;
        }
        let (id, v) = line
            .split_once(',')
            .ok_or_else(|| at(lineno, 1, "expected 'item,c'".into()))?;
        let pos = item_ids
            .iter()
            .position(|x| x == id.trim())
            .ok_or_else(|| at(lineno, 1, format!("unknown item '{}'", id.trim())))?;
        let c: f64 = v
            .trim()
            .parse()
            .map_err(|_| at(lineno, 2, format!("'{}' is not a number", v.trim())))?;
        if !(0.0..1.0).contains(&c) {
            return Err(at(lineno, 2, format!("guessing value {c} outside [0, 1)")));
        }
        if values[pos].replace(c).is_some() {
            return Err(at(lineno, 1, format!("item '{}' listed twice", id.trim())));
        }
    }
    values
        .into_iter()
        .zip(item_ids)
        .map(|(v, id)| {
            v.ok_or_else(|| Error::Data(format!("no fixed guessing value for item {id}")))
        })
        .collect()
}

/// `item,a,b,c,gamma` rows of a scenario.
pub fn format_truth_items(s: &Scenario, item_ids: &[String]) -> String {
    let mut out = String::from("item,a,b,c,gamma\n");
    for (i, id) in item_ids.iter().enumerate() {
        let _ = writeln!(
            out,
            "{id},{},{},{},{}",
            num(s.true_a[i]),
            num(s.true_b[i]),
            num(s.true_c[i]),
            num(s.true_gamma[i])
        );
    }
    out
}

/// `subject,theta` rows.
pub fn format_truth_theta(theta: &Abilities, subject_ids: &[String]) -> String {
    let mut out = String::from("subject,theta\n");
    for (id, t) in subject_ids.iter().zip(&theta.theta) {
        let _ = writeln!(out, "{id},{}", num(*t));
    }
    out
}
