//! DIMACS CNF reading and writing, plus the plain-text weighting format
//! (`w <var> <num>/<den>` per line).

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use super::{Clause, CnfFormula, FormulaError, Lit, Var, Weighting};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed header: {reason}")]
    Header { line: usize, reason: String },
    #[error("line {line}: clause before the `p cnf` header")]
    MissingHeader { line: usize },
    #[error("line {line}: invalid token `{token}`")]
    InvalidToken { line: usize, token: String },
    #[error("line {line}: literal {lit} exceeds the declared {declared} variables")]
    LiteralOutOfRange { line: usize, lit: i64, declared: usize },
    #[error("line {line}: tautological clause (contains {var} and its negation)")]
    Tautology { line: usize, var: Var },
    #[error("last clause is not terminated by 0")]
    UnterminatedClause,
    #[error("line {line}: malformed weight: {reason}")]
    Weight { line: usize, reason: String },
    #[error("input is not valid UTF-8")]
    Encoding,
}

/// Parser switches.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Drop clauses containing a complementary pair instead of rejecting
    /// the input.
    pub strip_tautologies: bool,
}

/// A parsed DIMACS file: the formula plus the header and comment lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimacsFile {
    pub formula: CnfFormula,
    pub declared_vars: usize,
    pub declared_clauses: usize,
    pub comments: Vec<String>,
}

pub fn parse_dimacs(text: &str) -> Result<CnfFormula, ParseError> {
    parse_dimacs_with(text, ParseOptions::default()).map(|d| d.formula)
}

pub fn parse_dimacs_bytes(bytes: &[u8], options: ParseOptions) -> Result<DimacsFile, ParseError> {
    let text = std::str::from_utf8(bytes).map_err(|_| ParseError::Encoding)?;
    parse_dimacs_with(text, options)
}

pub fn parse_dimacs_with(text: &str, options: ParseOptions) -> Result<DimacsFile, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut comments = Vec::new();
    let mut clauses = Vec::new();
    let mut current: Vec<Lit> = Vec::new();
    let mut current_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('c') {
            if comment.is_empty() || comment.starts_with(char::is_whitespace) {
                comments.push(comment.trim().to_string());
                continue;
            }
        }
        if trimmed.starts_with('%') {
            // some benchmark suites end files with `%` and a stray `0`
            break;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(ParseError::Header { line, reason: "duplicate header".into() });
            }
            header = Some(parse_header(trimmed, line)?);
            continue;
        }
        let Some((declared, _)) = header else {
            return Err(ParseError::MissingHeader { line });
        };
        for token in trimmed.split_whitespace() {
            let value: i64 = token.parse().map_err(|_| ParseError::InvalidToken {
                line,
                token: token.to_string(),
            })?;
            if value == 0 {
                match Clause::new(current.drain(..)) {
                    Ok(c) => clauses.push(c),
                    Err(FormulaError::Tautology(var)) => {
                        if !options.strip_tautologies {
                            return Err(ParseError::Tautology { line: current_line, var });
                        }
                    }
                    Err(_) => unreachable!("clause construction only fails on tautologies"),
                }
                continue;
            }
            if value.unsigned_abs() as usize > declared {
                return Err(ParseError::LiteralOutOfRange { line, lit: value, declared });
            }
            if current.is_empty() {
                current_line = line;
            }
            current.push(Lit::from_dimacs(value).map_err(|_| ParseError::InvalidToken {
                line,
                token: token.to_string(),
            })?);
        }
    }
    if !current.is_empty() {
        return Err(ParseError::UnterminatedClause);
    }
    let Some((declared_vars, declared_clauses)) = header else {
        return Err(ParseError::Header { line: 0, reason: "missing `p cnf` header".into() });
    };
    Ok(DimacsFile {
        formula: CnfFormula::from_clauses(clauses),
        declared_vars,
        declared_clauses,
        comments,
    })
}

fn parse_header(line_text: &str, line: usize) -> Result<(usize, usize), ParseError> {
    let fields: Vec<&str> = line_text.split_whitespace().collect();
    let bad = |reason: &str| ParseError::Header { line, reason: reason.to_string() };
    match fields.as_slice() {
        ["p", "cnf", n, m] => {
            let n = n.parse().map_err(|_| bad("variable count is not a number"))?;
            let m = m.parse().map_err(|_| bad("clause count is not a number"))?;
            Ok((n, m))
        }
        ["p", fmt, ..] if *fmt != "cnf" => Err(bad("only the `cnf` format is supported")),
        _ => Err(bad("expected `p cnf <vars> <clauses>`")),
    }
}

/// Serialises `f` with header `p cnf <max var> <clauses>`, one clause per
/// line in canonical order.
pub fn write_dimacs(f: &CnfFormula) -> String {
    write_dimacs_with_comments(f, &[])
}

pub fn write_dimacs_with_comments(f: &CnfFormula, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "c {c}");
    }
    let n = f.max_var().map_or(0, Var::id);
    let _ = writeln!(out, "p cnf {n} {}", f.len());
    for clause in f.clauses() {
        for l in clause.lits() {
            let _ = write!(out, "{} ", l.to_dimacs());
        }
        out.push_str("0\n");
    }
    out
}

/// Reads lines `w <var> <num>/<den>` (or an integer weight `0`/`1`).
/// Blank lines and `c` comments are skipped; unlisted variables keep the
/// default weight 1/2.
pub fn parse_weights(text: &str) -> Result<Weighting, ParseError> {
    let mut weighting = Weighting::uniform();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed == "c" || trimmed.starts_with("c ") {
            continue;
        }
        let bad = |reason: &str| ParseError::Weight { line, reason: reason.to_string() };
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        let ["w", var, weight] = fields.as_slice() else {
            return Err(bad("expected `w <var> <num>/<den>`"));
        };
        let var: u32 = var
            .parse()
            .ok()
            .filter(|v| *v >= 1)
            .ok_or_else(|| bad("variable must be a positive integer"))?;
        let weight = parse_rational(weight).ok_or_else(|| bad("weight must be num/den"))?;
        weighting
            .set(Var::new(var), weight)
            .map_err(|e| bad(&e.to_string()))?;
    }
    Ok(weighting)
}

fn parse_rational(text: &str) -> Option<BigRational> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?),
        None => (text.parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    if den == BigInt::from(0) {
        return None;
    }
    Some(BigRational::new(num, den))
}

pub fn write_weights(w: &Weighting) -> String {
    let mut out = String::new();
    for (v, q) in w.listed() {
        let _ = writeln!(out, "w {v} {}/{}", q.numer(), q.denom());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf;

    #[test]
    fn parses_simple_file() {
        let f = parse_dimacs("p cnf 2 2\n1 2 0\n-1 0\n").unwrap();
        assert_eq!(f, cnf![[1, 2], [-1]]);
    }

    #[test]
    fn rejects_tautology_unless_stripping() {
        let text = "p cnf 1 1\n1 -1 0\n";
        assert!(matches!(parse_dimacs(text), Err(ParseError::Tautology { line: 2, .. })));
        let stripped = parse_dimacs_with(text, ParseOptions { strip_tautologies: true }).unwrap();
        assert!(stripped.formula.is_empty());
    }

    #[test]
    fn empty_formula() {
        assert_eq!(parse_dimacs("p cnf 0 0\n").unwrap(), CnfFormula::new());
    }

    #[test]
    fn keeps_comments_and_multiline_clauses() {
        let d = parse_dimacs_with("c hello\nc  world\np cnf 3 1\n1 2\n3 0\n", ParseOptions::default())
            .unwrap();
        assert_eq!(d.comments, vec!["hello", "world"]);
        assert_eq!(d.formula, cnf![[1, 2, 3]]);
    }

    #[test]
    fn error_cases() {
        assert!(matches!(parse_dimacs("p dnf 1 1\n1 0\n"), Err(ParseError::Header { .. })));
        assert!(matches!(parse_dimacs("p cnf x 1\n"), Err(ParseError::Header { .. })));
        assert!(matches!(parse_dimacs("1 0\n"), Err(ParseError::MissingHeader { .. })));
        assert!(matches!(
            parse_dimacs("p cnf 2 1\n1 3 0\n"),
            Err(ParseError::LiteralOutOfRange { lit: 3, .. })
        ));
        assert!(matches!(parse_dimacs("p cnf 2 1\n1 2\n"), Err(ParseError::UnterminatedClause)));
        assert!(matches!(parse_dimacs("p cnf 2 1\n1 a 0\n"), Err(ParseError::InvalidToken { .. })));
    }

    #[test]
    fn empty_clause_is_kept() {
        assert_eq!(parse_dimacs("p cnf 1 2\n0\n1 0\n").unwrap(), cnf![[], [1]]);
    }

    #[test]
    fn weights_file() {
        let w = parse_weights("c weights\nw 1 1/3\n\nw 2 1\n").unwrap();
        assert_eq!(w.var_weight(Var::new(1)), &BigRational::new(1.into(), 3.into()));
        assert_eq!(w.var_weight(Var::new(2)), &BigRational::from_integer(1.into()));
        assert_eq!(w.var_weight(Var::new(7)), &BigRational::new(1.into(), 2.into()));
        assert_eq!(parse_weights(&write_weights(&w)).unwrap(), w);
        assert!(parse_weights("w 1 4/3\n").is_err());
        assert!(parse_weights("w 0 1/2\n").is_err());
        assert!(parse_weights("v 1 1/2\n").is_err());
    }
}
