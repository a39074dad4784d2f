//! The `labelweight-code/v1` text format.
//!
//! ```text
//! labelweight-code/v1
//! field GF(2^2)/modulus=[1,1,1]
//! n 8
//! dimension 5
//! servers 8
//! labels 1 2 3 4 5 6 7 8
//! row 1 1 1 1 1 1 1 1
//! ...
//! ```
//!
//! Labels are 1-based; generator entries are packed element encodings.

use std::fmt::Write as _;

use super::{LabeledCode, Labeling};
use crate::error::{Error, Result};
use crate::galois::{Fe, Field};
use crate::matrix::Matrix;

pub const CODE_TAG: &str = "labelweight-code/v1";

pub fn write_code(code: &LabeledCode) -> String {
    let mut out = String::new();
    writeln!(out, "{CODE_TAG}").unwrap();
    writeln!(out, "field {}", code.field()).unwrap();
    writeln!(out, "n {}", code.n()).unwrap();
    writeln!(out, "dimension {}", code.dimension()).unwrap();
    writeln!(out, "servers {}", code.s()).unwrap();
    let labels: Vec<String> = code.labeling().map().iter().map(|l| (l + 1).to_string()).collect();
    writeln!(out, "labels {}", labels.join(" ")).unwrap();
    for r in 0..code.dimension() {
        let row: Vec<String> = code.generator().row(r).iter().map(|v| v.0.to_string()).collect();
        writeln!(out, "row {}", row.join(" ")).unwrap();
    }
    out
}

/// Line cursor shared by the text formats. Blank lines and `#` comments are skipped.
pub(crate) struct Cursor<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(text: &'a str) -> Cursor<'a> {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        Cursor { lines, pos: 0 }
    }

    pub(crate) fn line_no(&self) -> usize {
        self.lines.get(self.pos).or(self.lines.last()).map_or(0, |l| l.0)
    }

    pub(crate) fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { line: self.line_no(), msg: msg.into() }
    }

    pub(crate) fn expect_line(&mut self, exact: &str) -> Result<()> {
        match self.lines.get(self.pos) {
            Some(&(_, l)) if l == exact => {
                self.pos += 1;
                Ok(())
            }
            Some(&(_, l)) => Err(self.err(format!("expected `{exact}`, found `{l}`"))),
            None => Err(self.err(format!("expected `{exact}`, found end of input"))),
        }
    }

    /// The rest of the line after `key`.
    pub(crate) fn value(&mut self, key: &str) -> Result<&'a str> {
        let Some(&(_, l)) = self.lines.get(self.pos) else {
            return Err(self.err(format!("expected `{key}`, found end of input")));
        };
        let (k, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        if k != key {
            return Err(self.err(format!("expected `{key}`, found `{k}`")));
        }
        self.pos += 1;
        Ok(rest.trim())
    }

    pub(crate) fn number<T: std::str::FromStr>(&mut self, key: &str) -> Result<T> {
        let v = self.value(key)?;
        v.parse().map_err(|_| Error::Parse { line: self.lines[self.pos - 1].0, msg: format!("bad {key} `{v}`") })
    }

    pub(crate) fn numbers<T: std::str::FromStr>(&mut self, key: &str) -> Result<Vec<T>> {
        let v = self.value(key)?;
        let line = self.lines[self.pos - 1].0;
        v.split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse { line, msg: format!("bad {key} entry `{t}`") }))
            .collect()
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.lines.len()
    }
}

pub fn read_code(text: &str) -> Result<LabeledCode> {
    let mut cur = Cursor::new(text);
    read_code_from(&mut cur)
}

pub(crate) fn read_code_from(cur: &mut Cursor<'_>) -> Result<LabeledCode> {
    cur.expect_line(CODE_TAG)?;
    let field: Field = cur.value("field")?.parse().map_err(|e: Error| cur.err(e.to_string()))?;
    let n: usize = cur.number("n")?;
    let dim: usize = cur.number("dimension")?;
    let s: usize = cur.number("servers")?;
    let labels: Vec<usize> = cur.numbers("labels")?;
    if labels.len() != n {
        return Err(cur.err(format!("expected {n} labels, found {}", labels.len())));
    }
    let labeling = Labeling::from_one_based(&labels, s).map_err(|e| cur.err(e.to_string()))?;
    let mut rows = Vec::with_capacity(dim);
    for _ in 0..dim {
        let row: Vec<u32> = cur.numbers("row")?;
        if row.len() != n {
            return Err(cur.err(format!("expected {n} row entries, found {}", row.len())));
        }
        rows.push(row.into_iter().map(Fe).collect());
    }
    let g = Matrix::from_rows(&field, rows).map_err(|e| cur.err(e.to_string()))?;
    LabeledCode::new(g, labeling).map_err(|e| cur.err(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::hermitian::hermitian_build;

    #[test]
    fn round_trip() {
        let code = hermitian_build(2, 5).unwrap().code;
        let text = write_code(&code);
        let back = read_code(&text).unwrap();
        assert_eq!(back, code);
        assert_eq!(write_code(&back), text);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let text = "labelweight-code/v1\nfield GF(2)\nn 2\ndimension 1\nservers 2\nlabels 1 2\nrow 1 7\n";
        match read_code(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 7),
            other => panic!("unexpected {other:?}"),
        }
        assert!(read_code("labelweight-code/v2\n").is_err());
    }
}
