//! DIMACS CNF / WCNF reading and canonical WCNF writing.
//!
//! `p cnf n m` gives every clause weight 1; `p wcnf n m [top]` leads each
//! clause with a positive weight. There are no hard clauses: a clause whose
//! weight equals the declared `top` is rejected instead of being treated as
//! mandatory. Clauses may span lines and end at the literal `0`.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_traits::Zero;
use thiserror::Error;

use crate::formula::{normalize, Formula, FormulaError, Literal, NormalizationReport, Weight};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct DimacsError {
    pub line: usize,
    pub kind: ErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    MissingHeader,
    DuplicateHeader,
    MalformedHeader(String),
    BadToken(String),
    ZeroWeight,
    TopWeight,
    LiteralOutOfRange { literal: String, max: u64 },
    EmptyClause,
    UnterminatedClause,
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ErrorKind::MissingHeader => write!(f, "clause data before the `p` header"),
            ErrorKind::DuplicateHeader => write!(f, "second `p` header"),
            ErrorKind::MalformedHeader(h) => write!(f, "malformed header `{h}`"),
            ErrorKind::BadToken(t) => write!(f, "expected an integer, found `{t}`"),
            ErrorKind::ZeroWeight => write!(f, "clause weight must be at least 1"),
            ErrorKind::TopWeight => {
                write!(
                    f,
                    "clause weight equals top; hard clauses are not supported"
                )
            }
            ErrorKind::LiteralOutOfRange { literal, max } => {
                write!(f, "literal {literal} outside the declared {max} variables")
            }
            ErrorKind::EmptyClause => write!(f, "empty clause"),
            ErrorKind::UnterminatedClause => write!(f, "last clause is not terminated by 0"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Cnf,
    Wcnf,
}

/// Non-fatal findings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Warning {
    ClauseCount { declared: u64, actual: usize },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::ClauseCount { declared, actual } => {
                write!(f, "header declares {declared} clauses, found {actual}")
            }
        }
    }
}

/// A DIMACS file as written, before normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimacsDocument {
    pub format: Format,
    pub num_vars: u64,
    pub num_clauses: u64,
    pub top: Option<Weight>,
    /// Literals and weight of each clause, in file order.
    pub clauses: Vec<(Vec<Literal>, Weight)>,
    /// Source line of each clause's first token.
    pub clause_lines: Vec<usize>,
    pub comments: Vec<String>,
    pub warnings: Vec<Warning>,
}

impl DimacsDocument {
    pub fn to_formula(&self) -> Result<(Formula, NormalizationReport), DimacsError> {
        normalize(self.clauses.iter().cloned()).map_err(|e| {
            let (index, kind) = match e {
                FormulaError::EmptyClause { index } => (index, ErrorKind::EmptyClause),
                FormulaError::ZeroWeight { index } => (index, ErrorKind::ZeroWeight),
                FormulaError::Unassigned(_) => unreachable!("normalize assigns nothing"),
            };
            DimacsError {
                line: self.clause_lines[index],
                kind,
            }
        })
    }
}

struct Header {
    format: Format,
    num_vars: u64,
    num_clauses: u64,
    top: Option<Weight>,
}

fn parse_header(line: &str) -> Option<Header> {
    let mut it = line.split_whitespace();
    if it.next() != Some("p") {
        return None;
    }
    let format = match it.next()? {
        "cnf" => Format::Cnf,
        "wcnf" => Format::Wcnf,
        _ => return None,
    };
    let num_vars = it.next()?.parse().ok()?;
    let num_clauses = it.next()?.parse().ok()?;
    let top = match (format, it.next()) {
        (_, None) => None,
        (Format::Wcnf, Some(t)) => Some(Weight::from_str(t).ok()?),
        (Format::Cnf, Some(_)) => return None,
    };
    if it.next().is_some() {
        return None;
    }
    Some(Header {
        format,
        num_vars,
        num_clauses,
        top,
    })
}

fn err(line: usize, kind: ErrorKind) -> DimacsError {
    DimacsError { line, kind }
}

/// Reads a document without normalizing it.
pub fn parse_document(text: &str) -> Result<DimacsDocument, DimacsError> {
    let mut header: Option<Header> = None;
    let mut comments = Vec::new();
    let mut clauses = Vec::new();
    let mut clause_lines = Vec::new();
    // Clause under construction: (start line, weight, literals).
    let mut open: Option<(usize, Option<Weight>, Vec<Literal>)> = None;

    for (i, raw_line) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw_line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('c') {
            if rest.is_empty() || rest.starts_with(char::is_whitespace) {
                comments.push(rest.trim_start().to_string());
                continue;
            }
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(err(lineno, ErrorKind::DuplicateHeader));
            }
            header = Some(
                parse_header(line)
                    .ok_or_else(|| err(lineno, ErrorKind::MalformedHeader(line.to_string())))?,
            );
            continue;
        }
        let h = header
            .as_ref()
            .ok_or_else(|| err(lineno, ErrorKind::MissingHeader))?;
        for token in line.split_whitespace() {
            let (start, weight, lits) = open.get_or_insert_with(|| (lineno, None, Vec::new()));
            if h.format == Format::Wcnf && weight.is_none() {
                if token.starts_with('-') {
                    return Err(err(lineno, ErrorKind::ZeroWeight));
                }
                let w = Weight::from_str(token)
                    .map_err(|_| err(lineno, ErrorKind::BadToken(token.to_string())))?;
                if w.is_zero() {
                    return Err(err(lineno, ErrorKind::ZeroWeight));
                }
                if h.top.as_ref() == Some(&w) {
                    return Err(err(lineno, ErrorKind::TopWeight));
                }
                *weight = Some(w);
                continue;
            }
            let value: i64 = token
                .parse()
                .map_err(|_| err(lineno, ErrorKind::BadToken(token.to_string())))?;
            if value == 0 {
                if lits.is_empty() {
                    return Err(err(*start, ErrorKind::EmptyClause));
                }
                let w = weight.take().unwrap_or_else(|| Weight::from(1u32));
                clauses.push((std::mem::take(lits), w));
                clause_lines.push(*start);
                open = None;
                continue;
            }
            let out_of_range = || {
                err(
                    lineno,
                    ErrorKind::LiteralOutOfRange {
                        literal: token.to_string(),
                        max: h.num_vars,
                    },
                )
            };
            if value.unsigned_abs() > h.num_vars {
                return Err(out_of_range());
            }
            lits.push(Literal::from_dimacs(value).ok_or_else(out_of_range)?);
        }
    }
    if let Some((start, _, _)) = open {
        return Err(err(start, ErrorKind::UnterminatedClause));
    }
    let h = header.ok_or_else(|| err(text.lines().count().max(1), ErrorKind::MissingHeader))?;
    let mut warnings = Vec::new();
    if h.num_clauses != clauses.len() as u64 {
        warnings.push(Warning::ClauseCount {
            declared: h.num_clauses,
            actual: clauses.len(),
        });
    }
    Ok(DimacsDocument {
        format: h.format,
        num_vars: h.num_vars,
        num_clauses: h.num_clauses,
        top: h.top,
        clauses,
        clause_lines,
        comments,
        warnings,
    })
}

/// Parses and normalizes a CNF or WCNF file.
pub fn parse_dimacs(text: &str) -> Result<(Formula, NormalizationReport), DimacsError> {
    parse_document(text)?.to_formula()
}

/// Canonical WCNF text: header `p wcnf <max var> <clauses>`, then one
/// `weight lits 0` line per clause in the formula's sorted order.
///
/// Weight-0 clauses carry no weight and cannot be re-read, so they are left out.
pub fn emit_dimacs(formula: &Formula) -> String {
    let kept: Vec<_> = formula.clauses().filter(|(_, w)| !w.is_zero()).collect();
    let max_var = kept
        .iter()
        .flat_map(|(c, _)| c.vars())
        .map(|v| v.id())
        .max()
        .unwrap_or(0);
    let mut out = format!("p wcnf {} {}\n", max_var, kept.len());
    for (clause, weight) in kept {
        write!(out, "{weight}").unwrap();
        for lit in clause.literals() {
            write!(out, " {}", lit.to_dimacs()).unwrap();
        }
        out.push_str(" 0\n");
    }
    out
}
