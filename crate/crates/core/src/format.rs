//! Text format for group files.
//!
//! ```text
//! # comment
//! %table 2
//! 0 1
//! 1 0
//! ```
//!
//! or a permutation block, one generator per line:
//!
//! ```text
//! %perm 3
//! (1 2 3)
//! (1 2)
//! ```
//!
//! A file may hold several blocks (catalog payloads do); [`parse_group_file`]
//! insists on exactly one.

use std::path::Path;

use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::perm::{from_permutations, Permutation, DEFAULT_CLOSURE_CAP};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Table(Vec<Vec<usize>>),
    Perm { degree: usize, generators: Vec<Permutation> },
}

/// One parsed block together with the comment lines that preceded it.
#[derive(Clone, Debug)]
pub struct Block {
    pub spec: GroupSpec,
    pub line: usize,
    pub comments: Vec<String>,
}

impl GroupSpec {
    pub fn build(&self, cap: usize) -> Result<GroupTable> {
        match self {
            GroupSpec::Table(rows) => GroupTable::from_table(rows),
            GroupSpec::Perm { degree, generators } => Ok(from_permutations(*degree, generators, cap)?.0),
        }
    }
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

pub fn parse_blocks(text: &str) -> Result<Vec<Block>> {
    let mut blocks = Vec::new();
    let mut comments = Vec::new();
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).peekable();
    while let Some((no, line)) = lines.next() {
        if line.is_empty() {
            continue;
        }
        if let Some(c) = line.strip_prefix('#') {
            comments.push(c.trim().to_string());
            continue;
        }
        let mut words = line.split_whitespace();
        let head = words.next().unwrap_or_default();
        let size: usize = words
            .next()
            .ok_or_else(|| err(no, "missing size"))?
            .parse()
            .map_err(|_| err(no, "size is not an integer"))?;
        if words.next().is_some() {
            return Err(err(no, "trailing tokens after header"));
        }
        let spec = match head {
            "%table" => {
                if size == 0 {
                    return Err(err(no, "table order must be positive"));
                }
                let mut rows = Vec::with_capacity(size);
                while rows.len() < size {
                    let (rno, row) = lines.next().ok_or_else(|| err(no, format!("expected {size} table rows")))?;
                    if row.is_empty() || row.starts_with('#') {
                        continue;
                    }
                    let row = row
                        .split_whitespace()
                        .map(|t| match t.parse::<usize>() {
                            Ok(v) if v < size => Ok(v),
                            Ok(v) => Err(err(rno, format!("entry {v} out of range 0..{size}"))),
                            Err(_) => Err(err(rno, format!("bad entry {t:?}"))),
                        })
                        .collect::<Result<Vec<_>>>()?;
                    if row.len() != size {
                        return Err(err(rno, format!("expected {size} entries, found {}", row.len())));
                    }
                    rows.push(row);
                }
                GroupSpec::Table(rows)
            }
            "%perm" => {
                let mut generators = Vec::new();
                while let Some(&(gno, g)) = lines.peek() {
                    if g.starts_with('%') {
                        break;
                    }
                    lines.next();
                    if g.is_empty() || g.starts_with('#') {
                        continue;
                    }
                    let p = Permutation::parse(g, size).map_err(|e| err(gno, e.to_string()))?;
                    generators.push(p);
                }
                GroupSpec::Perm { degree: size, generators }
            }
            other => return Err(err(no, format!("unknown header {other:?}"))),
        };
        blocks.push(Block { spec, line: no, comments: std::mem::take(&mut comments) });
    }
    Ok(blocks)
}

pub fn parse_group_file(text: &str) -> Result<GroupSpec> {
    let mut blocks = parse_blocks(text)?;
    match blocks.len() {
        0 => Err(err(1, "no group block found")),
        1 => Ok(blocks.pop().unwrap().spec),
        _ => Err(err(blocks[1].line, "more than one group block")),
    }
}

pub fn parse_group(text: &str) -> Result<GroupTable> {
    parse_group_file(text)?.build(DEFAULT_CLOSURE_CAP)
}

pub fn load_group(path: &Path) -> Result<GroupTable> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_group(&text)
}

/// Render as a `%table` block.
pub fn write_table(g: &GroupTable) -> String {
    let mut out = format!("%table {}\n", g.order());
    for x in g.elements() {
        let row: Vec<String> = g.elements().map(|y| g.mul(x, y).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
