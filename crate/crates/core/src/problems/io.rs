//! Plain-text LP format.
//!
//! ```text
//! # comment
//! m n
//! c_1 ... c_n
//! b_1 ... b_m
//! a_11 ... a_1n
//! ...
//! ```
//!
//! Numbers are decimal (`-1.5`, `2e3`) or fractions (`1/3`). Blank lines and
//! anything after `#` are ignored; line numbers in errors refer to the file.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::lp::{DenseMatrix, StandardFormLP};
use crate::scalar::Scalar;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn numbers<S: Scalar>(line: usize, text: &str, expected: usize, what: &str) -> Result<Vec<S>> {
    let out = text
        .split_whitespace()
        .map(|tok| S::parse_literal(tok).ok_or_else(|| parse_err(line, format!("bad number `{tok}`"))))
        .collect::<Result<Vec<S>>>()?;
    if out.len() != expected {
        return Err(parse_err(
            line,
            format!("{what}: expected {expected} numbers, found {}", out.len()),
        ));
    }
    Ok(out)
}

pub fn parse_lp<S: Scalar>(text: &str) -> Result<StandardFormLP<S>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let mut next = |what: &str| {
        lines
            .next()
            .ok_or_else(|| parse_err(text.lines().count().max(1), format!("missing {what}")))
    };

    let (ln, dims) = next("dimension line")?;
    let dims: Vec<usize> = dims
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| parse_err(ln, "dimension line must be `m n`"))?;
    let [m, n] = dims[..] else {
        return Err(parse_err(ln, "dimension line must be `m n`"));
    };
    if m == 0 || m >= n {
        return Err(parse_err(ln, format!("need 1 <= m < n (got m={m}, n={n})")));
    }

    let (ln, l) = next("cost vector")?;
    let c = numbers(ln, l, n, "cost vector")?;
    let (ln, l) = next("right-hand side")?;
    let b = numbers(ln, l, m, "right-hand side")?;
    let mut data = Vec::with_capacity(m * n);
    for i in 0..m {
        let (ln, l) = next("constraint row")?;
        data.extend(numbers(ln, l, n, &format!("row {}", i + 1))?);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(parse_err(ln, "unexpected trailing data"));
    }
    StandardFormLP::new(DenseMatrix::from_row_major(m, n, data)?, b, c)
}

pub fn format_lp<S: Scalar>(lp: &StandardFormLP<S>) -> String {
    let join = |v: &[S]| v.iter().map(|x| x.to_literal()).collect::<Vec<_>>().join(" ");
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", lp.m(), lp.n());
    let _ = writeln!(out, "{}", join(&lp.c));
    let _ = writeln!(out, "{}", join(&lp.b));
    for i in 0..lp.m() {
        let _ = writeln!(out, "{}", join(lp.a.row(i)));
    }
    out
}

pub fn read_lp<S: Scalar>(path: impl AsRef<Path>) -> Result<StandardFormLP<S>> {
    parse_lp(&std::fs::read_to_string(path)?)
}

pub fn write_lp<S: Scalar>(lp: &StandardFormLP<S>, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, format_lp(lp))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn parses_comments_and_fractions() {
        let text = "# tiny\n1 2\n-1 0  # costs\n1/3\n1 1\n";
        let lp: StandardFormLP<Rational> = parse_lp(text).unwrap();
        assert_eq!(lp.b[0], Rational::new(1.into(), 3.into()));
        assert_eq!(format_lp(&lp), "1 2\n-1 0\n1/3\n1 1\n");
    }

    #[test]
    fn bad_dimension_line() {
        let err = parse_lp::<f64>("two 3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn short_row_reports_its_line() {
        let err = parse_lp::<f64>("1 2\n1 1\n1\n\n1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 5, .. }), "{err}");
    }

    #[test]
    fn missing_rows() {
        assert!(matches!(parse_lp::<f64>("2 3\n1 1 1\n1 1\n1 0 0\n"), Err(Error::Parse { .. })));
    }
}
