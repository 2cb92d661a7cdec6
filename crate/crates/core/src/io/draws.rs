//! Columnar text files of stored draws, one file per chain.
//!
//! ```text
//! # skewirt-draws v1
//! # chain_id = 0
//! # seed = 42
//! # n_subjects = 3
//! # items = q1,q2
//! # acceptance.theta = 812/1500
//! # config.model = 2pcsp
//! chain,iteration,a[0],a[1],b[0],...,theta[2]
//! 0,99,1.02,0.87,...
//! # end draws = 10
//! ```
//!
//! Columns per item are `a`, `b`, `c`, `gamma_neg`, `gamma_pos`, `z`
//! (0 symmetric, 1 negative, 2 positive), `w0`, `w1`, `w2` and `guesses`
//! (the number of responses attributed to guessing), each as a block over
//! items, followed by `theta` over respondents. Indices are zero-based.
//! Numbers are written in shortest round-trip form, so reading a file back
//! reproduces every value bit for bit. The closing `# end` line guards
//! against truncated files.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::model::{Component, ItemState};
use crate::sampler::{Acceptance, BlockTally, Draw, DrawStore};

use super::{num, read_text, write_text};

pub const DRAWS_MAGIC: &str = "# skewirt-draws v1";

const ITEM_BLOCKS: [&str; 10] = [
    "a",
    "b",
    "c",
    "gamma_neg",
    "gamma_pos",
    "z",
    "w0",
    "w1",
    "w2",
    "guesses",
];

fn column_names(n_items: usize, n_subjects: usize) -> Vec<String> {
    let mut cols = vec!["chain".to_string(), "iteration".to_string()];
    for block in ITEM_BLOCKS {
        cols.extend((0..n_items).map(|i| format!("{block}[{i}]")));
    }
    cols.extend((0..n_subjects).map(|j| format!("theta[{j}]")));
    cols
}

pub fn format_draws(store: &DrawStore) -> String {
    let n_items = store.n_items();
    let mut out = String::new();
    let _ = writeln!(out, "{DRAWS_MAGIC}");
    let _ = writeln!(out, "# chain_id = {}", store.chain_id);
    let _ = writeln!(out, "# seed = {}", store.seed);
    let _ = writeln!(out, "# n_subjects = {}", store.n_subjects);
    let _ = writeln!(out, "# items = {}", store.item_ids.join(","));
    for (name, t) in store.acceptance.blocks() {
        let _ = writeln!(out, "# acceptance.{name} = {}/{}", t.accepted, t.proposed);
    }
    for (k, v) in &store.config {
        let _ = writeln!(out, "# config.{k} = {v}");
    }
    out.push_str(&column_names(n_items, store.n_subjects).join(","));
    out.push('\n');

    for d in &store.draws {
        let _ = write!(out, "{},{}", store.chain_id, d.iteration);
        let items = &d.items;
        let fields: [&dyn Fn(&ItemState) -> f64; 5] =
            [&|s| s.a, &|s| s.b, &|s| s.c, &|s| s.gamma_neg, &|s| {
                s.gamma_pos
            }];
        for f in fields {
            for it in items {
                let _ = write!(out, ",{}", num(f(it)));
            }
        }
        for it in items {
            let _ = write!(out, ",{}", it.z.index());
        }
        for k in 0..3 {
            for it in items {
                let _ = write!(out, ",{}", num(it.w[k]));
            }
        }
        for g in &d.guess_count {
            let _ = write!(out, ",{g}");
        }
        for t in &d.theta {
            let _ = write!(out, ",{}", num(*t));
        }
        out.push('\n');
    }
    let _ = writeln!(out, "# end draws = {}", store.draws.len());
    out
}

pub fn write_draws(store: &DrawStore, path: &Path) -> Result<()> {
    write_text(path, &format_draws(store))
}

pub fn read_draws(path: &Path) -> Result<DrawStore> {
    parse_draws(&read_text(path)?, path)
}

pub fn parse_draws(text: &str, path: &Path) -> Result<DrawStore> {
    let at = |line: usize, message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        column: 1,
        message,
    };
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l));

    match lines.next() {
        Some((_, l)) if l == DRAWS_MAGIC => {}
        Some((_, l)) if l.starts_with("# skewirt-draws") => {
            return Err(at(
                1,
                format!("unsupported version '{l}', expected '{DRAWS_MAGIC}'"),
            ))
        }
        _ => return Err(at(1, "not a draws file".into())),
    }

    let mut chain_id = None;
    let mut seed = None;
    let mut n_subjects = None;
    let mut item_ids: Option<Vec<String>> = None;
    let mut acceptance = Acceptance::default();
    let mut config = Vec::new();
    let mut columns_line = None;
    for (lineno, line) in lines.by_ref() {
        let Some(meta) = line.strip_prefix("# ") else {
            columns_line = Some((lineno, line));
            break;
        };
        let (key, value) = meta
            .split_once(" = ")
            .ok_or_else(|| at(lineno, format!("malformed header line '{line}'")))?;
        let bad = |what: &str| at(lineno, format!("invalid {what} '{value}'"));
        match key {
            "chain_id" => chain_id = Some(value.parse().map_err(|_| bad("chain id"))?),
            "seed" => seed = Some(value.parse().map_err(|_| bad("seed"))?),
            "n_subjects" => n_subjects = Some(value.parse().map_err(|_| bad("subject count"))?),
            "items" => item_ids = Some(value.split(',').map(String::from).collect()),
            _ => {
                if let Some(block) = key.strip_prefix("acceptance.") {
                    let (a, p) = value.split_once('/').ok_or_else(|| bad("acceptance"))?;
                    let tally = acceptance
                        .block_mut(block)
                        .ok_or_else(|| at(lineno, format!("unknown block '{block}'")))?;
                    *tally = BlockTally {
                        accepted: a.parse().map_err(|_| bad("acceptance"))?,
                        proposed: p.parse().map_err(|_| bad("acceptance"))?,
                    };
                } else if let Some(k) = key.strip_prefix("config.") {
                    config.push((k.to_string(), value.to_string()));
                } else {
                    return Err(at(lineno, format!("unknown header key '{key}'")));
                }
            }
        }
    }
    let missing = |what: &str| at(1, format!("header lacks {what}"));
    let chain_id: u64 = chain_id.ok_or_else(|| missing("chain_id"))?;
    let seed: u64 = seed.ok_or_else(|| missing("seed"))?;
    let n_subjects: usize = n_subjects.ok_or_else(|| missing("n_subjects"))?;
    let item_ids = item_ids.ok_or_else(|| missing("items"))?;
    let n_items = item_ids.len();

    let (col_line, cols) =
        columns_line.ok_or_else(|| at(1, "file ends before the column header".into()))?;
    let expected = column_names(n_items, n_subjects);
    if cols.split(',').ne(expected.iter().map(String::as_str)) {
        return Err(at(
            col_line,
            "column header does not match the declared dimensions".into(),
        ));
    }

    let mut draws = Vec::new();
    let mut footer = None;
    for (lineno, line) in lines {
        if let Some(rest) = line.strip_prefix("# end draws = ") {
            footer = Some((lineno, rest));
            break;
        }
        draws.push(parse_row(line, n_items, n_subjects, chain_id).map_err(|m| at(lineno, m))?);
    }
    let (end_line, count) = footer.ok_or_else(|| {
        at(
            text.lines().count(),
            "missing end marker; the file looks truncated".into(),
        )
    })?;
    if count.parse::<usize>().ok() != Some(draws.len()) {
        return Err(at(
            end_line,
            format!("end marker announces {count} draws, found {}", draws.len()),
        ));
    }

    Ok(DrawStore {
        chain_id,
        seed,
        item_ids,
        n_subjects,
        draws,
        acceptance,
        config,
    })
}

fn parse_row(
    line: &str,
    n_items: usize,
    n_subjects: usize,
    chain_id: u64,
) -> std::result::Result<Draw, String> {
    let fields: Vec<&str> = line.split(',').collect();
    let want = 2 + ITEM_BLOCKS.len() * n_items + n_subjects;
    if fields.len() != want {
        return Err(format!("row has {} fields, expected {want}", fields.len()));
    }
    let float = |k: usize| -> std::result::Result<f64, String> {
        fields[k]
            .parse()
            .map_err(|_| format!("field {} ('{}') is not a number", k + 1, fields[k]))
    };
    let int = |k: usize| -> std::result::Result<u64, String> {
        fields[k]
            .parse()
            .map_err(|_| format!("field {} ('{}') is not an integer", k + 1, fields[k]))
    };
    if int(0)? != chain_id {
        return Err(format!(
            "row belongs to chain {}, file to chain {chain_id}",
            fields[0]
        ));
    }
    let iteration = int(1)? as usize;
    let block = |b: usize, i: usize| 2 + b * n_items + i;

    let mut items = Vec::with_capacity(n_items);
    let mut guess_count = Vec::with_capacity(n_items);
    for i in 0..n_items {
        let z = Component::from_index(int(block(5, i))? as usize)
            .ok_or_else(|| format!("field {} is not a component index", block(5, i) + 1))?;
        items.push(ItemState {
            a: float(block(0, i))?,
            b: float(block(1, i))?,
            c: float(block(2, i))?,
            gamma_neg: float(block(3, i))?,
            gamma_pos: float(block(4, i))?,
            z,
            w: [
                float(block(6, i))?,
                float(block(7, i))?,
                float(block(8, i))?,
            ],
        });
        guess_count.push(int(block(9, i))? as u32);
    }
    let base = block(ITEM_BLOCKS.len(), 0);
    let theta = (0..n_subjects)
        .map(|j| float(base + j))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(Draw {
        iteration,
        items,
        theta,
        guess_count,
    })
}

/// File name used for chain `chain_id` inside an output directory.
pub fn draws_file_name(chain_id: u64) -> String {
    format!("chain-{chain_id}.draws")
}

/// Reads every `*.draws` file in `dir`, ordered by chain id.
pub fn read_draws_dir(dir: &Path) -> Result<Vec<DrawStore>> {
    let entries = std::fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut paths: Vec<PathBuf> = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        if path.extension().is_some_and(|e| e == "draws") {
            paths.push(path);
        }
    }
    if paths.is_empty() {
        return Err(Error::Data(format!("no .draws files in {}", dir.display())));
    }
    let mut stores = paths
        .iter()
        .map(|p| read_draws(p))
        .collect::<Result<Vec<_>>>()?;
    stores.sort_by_key(|s| s.chain_id);
    if let Some(w) = stores.windows(2).find(|w| w[0].chain_id == w[1].chain_id) {
        return Err(Error::Data(format!(
            "two draws files in {} carry chain id {}",
            dir.display(),
            w[0].chain_id
        )));
    }
    Ok(stores)
}
