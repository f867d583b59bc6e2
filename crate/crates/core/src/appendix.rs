//! Golden table of `P(m1, m2, m3, s; q)` values shipped in
//! `data/appendix.txt`, and a checker that recomputes every row.

use std::fmt;

use crate::error::{invalid, Result};
use crate::ppoly::PTable;
use crate::qseries::QPoly;

const TABLE: &str = include_str!("../data/appendix.txt");

/// How far past a `>= s` row the vanishing is checked.
const TAIL_SPAN: i64 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Range {
    Exactly(i64),
    AtMost(i64),
    AtLeast(i64),
}

impl Range {
    fn values(self) -> std::ops::RangeInclusive<i64> {
        match self {
            Range::Exactly(s) => s..=s,
            Range::AtMost(s) => 0..=s,
            Range::AtLeast(s) => s..=s + TAIL_SPAN,
        }
    }
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Range::Exactly(s) => write!(f, "{s}"),
            Range::AtMost(s) => write!(f, "<={s}"),
            Range::AtLeast(s) => write!(f, ">={s}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub line: usize,
    pub m1: i64,
    pub m2: i64,
    pub m3: i64,
    pub range: Range,
    pub value: QPoly,
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P({},{},{},{}) = {}", self.m1, self.m2, self.m3, self.range, self.value)
    }
}

/// One disagreement between a table row and the recursion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diff {
    pub line: usize,
    pub key: (i64, i64, i64, i64),
    pub expected: QPoly,
    pub computed: QPoly,
}

impl fmt::Display for Diff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m1, m2, m3, s) = self.key;
        write!(
            f,
            "line {}: P({m1},{m2},{m3},{s})\n  table:     {}\n  recursion: {}",
            self.line, self.expected, self.computed
        )
    }
}

pub fn entries() -> Result<Vec<Entry>> {
    parse(TABLE)
}

pub fn parse(text: &str) -> Result<Vec<Entry>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(parse_row(line).map_err(|e| crate::Error::InvalidInput(format!("line {}: {e}", i + 1)))?);
        out.last_mut().unwrap().line = i + 1;
    }
    Ok(out)
}

fn parse_row(line: &str) -> Result<Entry> {
    // The right-hand side never contains '=', unlike `<=`/`>=` on the left.
    let Some((lhs, rhs)) = line.rsplit_once('=') else {
        return invalid("missing '='");
    };
    let inner = lhs
        .trim()
        .strip_prefix("P(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| crate::Error::InvalidInput(format!("bad key {lhs:?}")))?;
    let fields: Vec<&str> = inner.split(',').map(str::trim).collect();
    if fields.len() != 4 {
        return invalid(format!("expected four arguments in {lhs:?}"));
    }
    let num = |s: &str| s.parse::<i64>().map_err(|_| crate::Error::InvalidInput(format!("bad number {s:?}")));
    let range = if let Some(s) = fields[3].strip_prefix("<=") {
        Range::AtMost(num(s)?)
    } else if let Some(s) = fields[3].strip_prefix(">=") {
        Range::AtLeast(num(s)?)
    } else {
        Range::Exactly(num(fields[3])?)
    };
    let value: QPoly = rhs.trim().parse()?;
    if !matches!(range, Range::Exactly(_)) && !value.is_zero() {
        return invalid("range rows must be zero");
    }
    Ok(Entry { line: 0, m1: num(fields[0])?, m2: num(fields[1])?, m3: num(fields[2])?, range, value })
}

/// Recomputes every row with a fresh memo table and returns the disagreements.
pub fn verify(rows: &[Entry]) -> Result<Vec<Diff>> {
    let mut table = PTable::new();
    let mut diffs = Vec::new();
    for row in rows {
        for s in row.range.values() {
            let computed = table.p(row.m1, row.m2, row.m3, s)?;
            if computed != row.value {
                diffs.push(Diff {
                    line: row.line,
                    key: (row.m1, row.m2, row.m3, s),
                    expected: row.value.clone(),
                    computed,
                });
            }
        }
    }
    Ok(diffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_parse() {
        let rows = entries().unwrap();
        assert!(rows.len() > 150);
        let r = &rows[0];
        assert_eq!((r.m1, r.m2, r.m3, r.range), (1, 1, 0, Range::AtMost(2)));
        assert!(rows.iter().any(|r| r.range == Range::Exactly(15) && r.to_string().starts_with("P(2,2,2,15) = q^154 + 2q^152 + q^151 + 5q^150")));
    }

    #[test]
    fn malformed_rows_are_rejected() {
        assert!(parse("P(1,1,0) = q").is_err());
        assert!(parse("P(1,1,0,>=3) = q").is_err());
        assert!(parse("P(1,1,0,3) q^7").is_err());
    }

    #[test]
    fn a_wrong_row_is_reported() {
        let rows = parse("P(1,1,0,3) = q^8\nP(1,1,0,<=2) = 0").unwrap();
        let diffs = verify(&rows).unwrap();
        assert_eq!(diffs.len(), 1);
        assert_eq!(diffs[0].key, (1, 1, 0, 3));
        assert_eq!(diffs[0].computed, QPoly::monomial(1, 7));
    }
}
