//! The `.sgp` text format and the one-line encodings used on the command line.
//!
//! ```text
//! # optional comment lines
//! 3
//! 1 2 2
//! 2 2 2
//! 2 2 2
//! ```
//!
//! The first non-comment line is the order `n`, followed by `n` rows of `n`
//! whitespace-separated 0-based indices; row `a`, column `b` holds `a·b`.

use crate::error::{Error, Result};
use crate::semigroup::Semigroup;

pub fn parse_table(text: &str) -> Result<Semigroup> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line, header) = lines.next().ok_or(Error::ParseError { line: 1, reason: "missing order".into() })?;
    let n: usize = header
        .parse()
        .map_err(|_| Error::ParseError { line, reason: format!("expected the order, found `{header}`") })?;
    if n == 0 {
        return Err(Error::ParseError { line, reason: "order must be positive".into() });
    }

    let mut rows = Vec::with_capacity(n);
    for row in 0..n {
        let (line, text) = lines.next().ok_or(Error::ParseError {
            line: line + row + 1,
            reason: format!("expected {n} rows, found {row}"),
        })?;
        let entries = text
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::ParseError { line, reason: format!("`{t}` is not an element index") })
            })
            .collect::<Result<Vec<_>>>()?;
        if entries.len() != n {
            return Err(Error::ParseError { line, reason: format!("expected {n} entries, found {}", entries.len()) });
        }
        rows.push(entries);
    }
    if let Some((line, _)) = lines.next() {
        return Err(Error::ParseError { line, reason: "unexpected content after the table".into() });
    }
    Semigroup::new(rows)
}

pub fn render_table(s: &Semigroup) -> String {
    let mut out = format!("{}\n", s.order());
    for a in s.elements() {
        out.push_str(&join(s.row(a), " "));
        out.push('\n');
    }
    out
}

pub fn join(values: &[usize], sep: &str) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

/// Parses `0,1,2` (commas and/or whitespace) into indices.
pub fn parse_index_list(text: &str) -> Result<Vec<usize>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::ParseError { line: 1, reason: format!("`{t}` is not an index") })
        })
        .collect()
}
