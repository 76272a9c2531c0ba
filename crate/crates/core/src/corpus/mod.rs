//! Exact closed forms and the engine that checks them numerically.
//!
//! Each corpus entry pairs a closed form — a nested radical, or a selected
//! real root of an integer polynomial — with an oracle: an independent
//! numeric route (theta quotients, hypergeometric equation solvers,
//! algebraic transformation chains, series sums) that should produce the
//! same number. Verification evaluates both sides at a requested precision
//! and classifies the entry as passing, failing, or as a confirmed erratum
//! when a closed form known to be misprinted fails as expected.
//!
//! # File format
//!
//! The built-in corpus lives in `data/corpus.txt`. Lines starting with `#`
//! and blank lines are ignored; a line starting with whitespace continues
//! the previous record. Records are
//!
//! ```text
//! id | expr | oracle [| erratum note]
//! let name = expr
//! ```
//!
//! where `expr` is in prefix syntax over integer and rational literals:
//! `(+ a b …)`, `(- a b …)`, `(- a)`, `(* a b …)`, `(/ a b)`, `(^ a p/q)`,
//! and at the top level `(poly k c0 c1 … cn)` for the k-th real root
//! (ascending) of c0 + c1·x + … + cn·xⁿ. A `let` binds `$name` for all
//! later records. The oracle is a name followed by prefix-syntax
//! arguments, e.g. `alpha_theta 7`, `k_dup 27 3` or
//! `ramanujan_sum J T scale`.

mod expr;
mod oracle;
mod poly;
mod verify;

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use rug::Integer;

pub use expr::{eval_exact, ExactExpr, Parser};
pub use oracle::Oracle;
pub use poly::{select_poly_root, PolyRoot, PolyRootForm};
pub use verify::{verify_all, verify_entry, Status, Summary, VerificationReport};

use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::PrecisionContext;
use expr::{parse_literal, tokenize, Token};

/// The closed-form side of an entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosedForm {
    Radical(ExactExpr),
    PolyRoot(PolyRootForm),
}

impl ClosedForm {
    fn parse(text: &str, parser: &Parser) -> Result<Self> {
        let tokens = tokenize(text);
        match tokens.as_slice() {
            [Token::Open, Token::Atom(head), rest @ ..] if head == "poly" => {
                let (last, body) = rest
                    .split_last()
                    .ok_or_else(|| Error::Expression("unterminated `(poly`".into()))?;
                if *last != Token::Close {
                    return Err(Error::Expression("`(poly` must close at the end of the expression".into()));
                }
                let mut ints = body.iter().map(|t| match t {
                    Token::Atom(a) => parse_literal(a).and_then(|q| {
                        if *q.denom() == 1 {
                            Ok(q.into_numer_denom().0)
                        } else {
                            Err(Error::Expression(format!("polynomial coefficient `{a}` is not an integer")))
                        }
                    }),
                    _ => Err(Error::Expression("polynomial coefficients must be integer literals".into())),
                });
                let index = ints
                    .next()
                    .ok_or_else(|| Error::Expression("`(poly` needs a root index".into()))??;
                let index = index
                    .to_usize()
                    .ok_or_else(|| Error::Expression("root index out of range".into()))?;
                let coefficients = ints.collect::<Result<Vec<Integer>>>()?;
                Ok(ClosedForm::PolyRoot(PolyRootForm::new(coefficients, index)?))
            }
            _ => Ok(ClosedForm::Radical(parser.expression(text)?)),
        }
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedForm::Radical(e) => write!(f, "{e}"),
            ClosedForm::PolyRoot(p) => write!(f, "{p}"),
        }
    }
}

/// One closed form with its oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub id: String,
    pub form: ClosedForm,
    pub oracle: Oracle,
    /// Present when the closed form is known to be misprinted; the entry
    /// is then expected to fail.
    pub erratum: Option<String>,
}

impl fmt::Display for CorpusEntry {
    /// The entry as a single corpus record, definitions expanded.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {} | {}", self.id, self.form, self.oracle)?;
        if let Some(note) = &self.erratum {
            write!(f, " | {note}")?;
        }
        Ok(())
    }
}

/// An ordered collection of corpus entries with unique ids.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Corpus {
    entries: Vec<CorpusEntry>,
}

static BUILTIN: OnceLock<Corpus> = OnceLock::new();

impl Corpus {
    /// The corpus shipped with the crate.
    pub fn builtin() -> &'static Corpus {
        BUILTIN.get_or_init(|| {
            Corpus::parse(include_str!("../../data/corpus.txt"))
                .unwrap_or_else(|e| panic!("built-in corpus is malformed: {e}"))
        })
    }

    /// Reads corpus text in the format described in the module docs.
    pub fn parse(text: &str) -> Result<Self> {
        let mut parser = Parser::new();
        let mut entries = Vec::new();
        let mut seen = HashSet::new();
        for (line, record) in records(text)? {
            let at = |e: Error| Error::Parse {
                line,
                msg: e.to_string(),
            };
            if let Some(def) = record.strip_prefix("let ") {
                let (name, body) = def.split_once('=').ok_or_else(|| Error::Parse {
                    line,
                    msg: "expected `let name = expr`".into(),
                })?;
                let value = parser.expression(body).map_err(at)?;
                parser.define(name.trim(), value).map_err(at)?;
                continue;
            }
            let fields: Vec<&str> = record.splitn(4, '|').map(str::trim).collect();
            if fields.len() < 3 {
                return Err(Error::Parse {
                    line,
                    msg: "expected `id | expr | oracle [| note]`".into(),
                });
            }
            let id = fields[0];
            if id.is_empty() || !id.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::Parse {
                    line,
                    msg: format!("invalid id `{id}`"),
                });
            }
            if !seen.insert(id.to_string()) {
                return Err(Error::Parse {
                    line,
                    msg: format!("duplicate id `{id}`"),
                });
            }
            entries.push(CorpusEntry {
                id: id.to_string(),
                form: ClosedForm::parse(fields[1], &parser).map_err(at)?,
                oracle: Oracle::parse(fields[2], &parser).map_err(at)?,
                erratum: fields.get(3).filter(|n| !n.is_empty()).map(|n| n.to_string()),
            });
        }
        Ok(Self { entries })
    }

    /// Entries in file order.
    pub fn entries(&self) -> &[CorpusEntry] {
        &self.entries
    }

    pub fn get(&self, id: &str) -> Option<&CorpusEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// One record per line, definitions expanded; parses back to an equal
    /// corpus.
    pub fn to_text(&self) -> String {
        self.entries.iter().map(|e| format!("{e}\n")).collect()
    }

    /// Verifies one entry.
    pub fn verify(&self, id: &str, ctx: &PrecisionContext) -> Result<VerificationReport> {
        let entry = self.get(id).ok_or_else(|| Error::UnknownEntry(id.to_string()))?;
        Ok(verify::run(entry, ctx))
    }

    /// Verifies every entry whose id satisfies `select`; reports are sorted
    /// by id (digit runs compared numerically).
    pub fn verify_matching<F>(&self, select: F, exec: Execution, ctx: &PrecisionContext) -> Vec<VerificationReport>
    where
        F: Fn(&str) -> bool,
    {
        let chosen: Vec<&CorpusEntry> = self.entries.iter().filter(|e| select(&e.id)).collect();
        let mut reports = par::map_vec(exec, chosen, |e| verify::run(e, ctx));
        reports.sort_by(|a, b| natural_cmp(&a.id, &b.id));
        reports
    }
}

/// Splits corpus text into (first line number, joined record) pairs.
fn records(text: &str) -> Result<Vec<(usize, String)>> {
    let mut out: Vec<(usize, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if raw.starts_with(char::is_whitespace) {
            let (_, last) = out.last_mut().ok_or_else(|| Error::Parse {
                line: i + 1,
                msg: "continuation line without a record".into(),
            })?;
            last.push(' ');
            last.push_str(trimmed);
        } else {
            out.push((i + 1, trimmed.to_string()));
        }
    }
    Ok(out)
}

/// Orders ids so that `alpha_2` sorts before `alpha_10`.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, &str)> {
        let mut out = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i].is_ascii_digit() != bytes[start].is_ascii_digit() {
                out.push((bytes[start].is_ascii_digit(), &s[start..i]));
                start = i;
            }
        }
        out
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for (x, y) in ca.iter().zip(cb.iter()) {
        let ord = match (x, y) {
            ((true, x), (true, y)) => {
                let (x, y) = (x.trim_start_matches('0'), y.trim_start_matches('0'));
                x.len().cmp(&y.len()).then_with(|| x.cmp(y))
            }
            ((_, x), (_, y)) => x.cmp(y),
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    ca.len().cmp(&cb.len()).then_with(|| a.cmp(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_round_trips_through_text() {
        let corpus = Corpus::builtin();
        let again = Corpus::parse(&corpus.to_text()).unwrap();
        assert_eq!(&again, corpus);
    }

    #[test]
    fn table_ids_present() {
        let corpus = Corpus::builtin();
        let table: Vec<u32> = (1..=37).chain([40, 44, 49, 59]).collect();
        for r in &table {
            assert!(corpus.get(&format!("alpha_{r}")).is_some(), "alpha_{r}");
        }
        let n = corpus.entries().iter().filter(|e| e.id.starts_with("alpha_")).count();
        assert_eq!(n, table.len());
    }

    #[test]
    fn records_and_errors() {
        let text = "# c\nlet s = (^ 2 1/2)\nx | (* $s\n   $s) | J 2\ny | (poly 1 -1 2) | alpha_theta 1 | note\n";
        let c = Corpus::parse(text).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.entries()[0].to_string(), "x | (* (^ 2 1/2) (^ 2 1/2)) | J 2");
        assert_eq!(c.entries()[1].erratum.as_deref(), Some("note"));
        let bad = [
            ("x | 1 | J 2\nx | 1 | J 2\n", 2),
            ("  x | 1 | J 2\n", 1),
            ("x | 1\n", 1),
            ("\n\nx | (+ 1 | J 2\n", 3),
            ("x | (poly 1 1/2 1) | J 2\n", 1),
            ("let = 1\n", 1),
        ];
        for (text, line) in bad {
            match Corpus::parse(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn natural_order() {
        let mut ids = vec!["alpha_10", "alpha_2", "alpha144", "a_8", "alpha_1"];
        ids.sort_by(|a, b| natural_cmp(a, b));
        assert_eq!(ids, vec!["a_8", "alpha144", "alpha_1", "alpha_2", "alpha_10"]);
    }
}
