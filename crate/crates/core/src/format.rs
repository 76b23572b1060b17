//! Plain-text design and ingredient files.
//!
//! A design file starts with a header line `n w q`, followed by one row per
//! line of `n` space-separated symbols in `0..q`. Ingredient files start with
//! `BD n w r` (then one block of `w` 1-based points per line) or
//! `OA runs factors levels strength` (then `runs` rows of symbols in
//! `1..=levels`). Lines starting with `#` and blank lines are ignored
//! everywhere.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::constructions::{block_design_verify, oa_verify, BlockDesign, OrthoArray};
use crate::designs::DesignArray;
use crate::error::{Error, Result};
use crate::exactmath::SchemeParams;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn numbers(line: usize, text: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|tok| tok.parse::<usize>().map_err(|_| parse_err(line, format!("expected a decimal integer, found {tok:?}"))))
        .collect()
}

pub fn parse_design(text: &str) -> Result<DesignArray> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header line \"n w q\""))?;
    let head = numbers(hline, header)?;
    let [n, w, q] = head[..] else {
        return Err(parse_err(hline, format!("header needs 3 integers \"n w q\", found {}", head.len())));
    };
    let params = SchemeParams::new(n, w, q).map_err(|e| parse_err(hline, e.to_string()))?;
    let mut rows = Vec::new();
    let mut seen: HashMap<Vec<u8>, usize> = HashMap::new();
    for (line, text) in lines {
        let vals = numbers(line, text)?;
        if vals.len() != n {
            return Err(parse_err(line, format!("row has {} symbols, expected {n}", vals.len())));
        }
        if let Some(&bad) = vals.iter().find(|&&v| v >= q) {
            return Err(parse_err(line, format!("symbol {bad} outside 0..{q}")));
        }
        let weight = vals.iter().filter(|&&v| v != 0).count();
        if weight != w {
            return Err(parse_err(line, format!("row has weight {weight}, expected {w}")));
        }
        let row: Vec<u8> = vals.iter().map(|&v| v as u8).collect();
        if let Some(first) = seen.insert(row.clone(), line) {
            return Err(parse_err(line, format!("duplicate of the row on line {first}")));
        }
        rows.push(row);
    }
    DesignArray::new(params, rows)
}

pub fn write_design(y: &DesignArray) -> String {
    let p = y.params();
    let mut out = format!("{} {} {}\n", p.n(), p.w(), p.q());
    for row in y.rows() {
        writeln!(out, "{row}").expect("writing to a String");
    }
    out
}

pub fn read_design(path: impl AsRef<Path>) -> Result<DesignArray> {
    parse_design(&std::fs::read_to_string(path)?)
}

pub fn save_design(y: &DesignArray, path: impl AsRef<Path>) -> Result<()> {
    Ok(std::fs::write(path, write_design(y))?)
}

/// A parsed and re-verified ingredient with its index.
#[derive(Debug, Clone)]
pub enum Ingredient {
    Blocks { design: BlockDesign, lambda: u64 },
    Array { array: OrthoArray, lambda: u64 },
}

pub fn parse_ingredient(text: &str) -> Result<Ingredient> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing ingredient header"))?;
    let (kind, rest) = header.split_once(char::is_whitespace).unwrap_or((header, ""));
    let head = numbers(hline, rest)?;
    match kind {
        "BD" => {
            let [n, w, r] = head[..] else {
                return Err(parse_err(hline, "block design header is \"BD n w r\""));
            };
            let mut blocks = Vec::new();
            for (line, text) in lines {
                let b = numbers(line, text)?;
                if b.len() != w || b.iter().any(|&p| p == 0 || p > n) || b.windows(2).any(|p| p[0] >= p[1]) {
                    return Err(parse_err(line, format!("block must list {w} increasing points in 1..={n}")));
                }
                blocks.push(b);
            }
            let design = BlockDesign::new(n, w, r, blocks)?;
            let lambda = block_design_verify(&design).map_err(|wit| {
                Error::Ingredient(format!(
                    "not a {r}-design: points {:?} lie in {} blocks, expected {}",
                    wit.points, wit.observed, wit.expected
                ))
            })?;
            Ok(Ingredient::Blocks { design, lambda })
        }
        "OA" => {
            let [runs, factors, levels, strength] = head[..] else {
                return Err(parse_err(hline, "orthogonal array header is \"OA runs factors qminus1 strength\""));
            };
            let mut rows = Vec::new();
            for (line, text) in lines {
                let row = numbers(line, text)?;
                if row.len() != factors || row.iter().any(|&v| v == 0 || v > levels) {
                    return Err(parse_err(line, format!("row must hold {factors} symbols in 1..={levels}")));
                }
                rows.push(row.iter().map(|&v| v as u8).collect());
            }
            if rows.len() != runs {
                return Err(parse_err(hline, format!("header announces {runs} runs, found {}", rows.len())));
            }
            let array = OrthoArray::new(levels, factors, strength, rows)?;
            let lambda = oa_verify(&array).map_err(|wit| {
                Error::Ingredient(format!(
                    "not of strength {strength}: tuple {:?} occurs {} times in columns {:?}, expected {}",
                    wit.tuple, wit.observed, wit.columns, wit.expected
                ))
            })?;
            Ok(Ingredient::Array { array, lambda })
        }
        other => Err(parse_err(hline, format!("unknown ingredient kind {other:?}, expected BD or OA"))),
    }
}

pub fn read_ingredient(path: impl AsRef<Path>) -> Result<Ingredient> {
    parse_ingredient(&std::fs::read_to_string(path)?)
}

pub fn write_block_design(b: &BlockDesign) -> String {
    let mut out = format!("BD {} {} {}\n", b.n(), b.w(), b.r());
    for block in b.blocks() {
        let points: Vec<String> = block.iter().map(ToString::to_string).collect();
        writeln!(out, "{}", points.join(" ")).expect("writing to a String");
    }
    out
}

pub fn write_orthogonal_array(a: &OrthoArray) -> String {
    let mut out = format!("OA {} {} {} {}\n", a.runs(), a.factors(), a.levels(), a.strength());
    for row in a.rows() {
        let syms: Vec<String> = row.iter().map(ToString::to_string).collect();
        writeln!(out, "{}", syms.join(" ")).expect("writing to a String");
    }
    out
}
