//! Text and JSON rendering. Every number in JSON output is a decimal
//! string, accompanied by the precision it was computed at.

use clap::ValueEnum;
use rug::{Float, Rational};
use serde_json::{json, Value};

use ramapi_core::corpus::{CorpusEntry, Summary, VerificationReport};
use ramapi_core::moduli::ModulusRecord;
use ramapi_core::piseries::{PiComputation, SeriesParams};
use ramapi_core::BigReal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Significant digits used for residuals and other diagnostics.
const SHORT_DIGITS: usize = 6;

/// `x` to `digits` significant digits.
pub fn decimal(x: &Float, digits: u32) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x.is_sign_negative() { "-inf" } else { "inf" }.into();
    }
    x.to_string_radix(10, Some(digits as usize))
}

/// A diagnostic quantity to a few digits.
pub fn short(x: &Float) -> String {
    decimal(x, SHORT_DIGITS as u32)
}

pub struct Emitter {
    format: Format,
    digits: u32,
}

impl Emitter {
    pub fn new(format: Format, digits: u32) -> Self {
        Self { format, digits }
    }

    fn num(&self, x: &BigReal) -> String {
        decimal(x, self.digits)
    }

    fn json(&self, v: Value) {
        println!("{v}");
    }

    pub fn pi(&self, r: &Rational, p: &PiComputation, err: &Float, ok: bool) {
        match self.format {
            Format::Text => println!("{}", self.num(&p.value)),
            Format::Json => self.json(json!({
                "command": "pi",
                "r": r.to_string(),
                "precision": self.digits,
                "value": self.num(&p.value),
                "terms": p.terms,
                "digits_per_term": format!("{:.6}", p.digits_per_term),
                "working_digits": p.working_digits,
                "abs_error_vs_agm": short(err),
                "self_check": if ok { "pass" } else { "fail" },
            })),
        }
    }

    pub fn modulus(&self, rec: &ModulusRecord, residuals: &[(&str, BigReal)]) {
        let fields = [
            ("m", &rec.m),
            ("m_complement", &rec.m_complement),
            ("k", &rec.k),
            ("alpha", &rec.alpha),
            ("beta", &rec.beta),
            ("a_elliptic", &rec.a_elliptic),
        ];
        match self.format {
            Format::Text => {
                println!("r = {}", rec.r);
                for (name, v) in fields {
                    println!("{name:<13}{}", self.num(v));
                }
                for (name, v) in residuals {
                    println!("residual {name:<12}{}", short(v));
                }
            }
            Format::Json => {
                let mut obj = serde_json::Map::new();
                obj.insert("command".into(), json!("modulus"));
                obj.insert("r".into(), json!(rec.r.to_string()));
                obj.insert("precision".into(), json!(self.digits));
                for (name, v) in fields {
                    obj.insert(name.into(), json!(self.num(v)));
                }
                obj.insert(
                    "provenance".into(),
                    json!({
                        "m": rec.m_provenance,
                        "alpha": rec.alpha_provenance,
                        "beta": rec.beta_provenance,
                        "a_elliptic": rec.a_provenance,
                    }),
                );
                let res: serde_json::Map<String, Value> =
                    residuals.iter().map(|(n, v)| (n.to_string(), json!(short(v)))).collect();
                obj.insert("residuals".into(), Value::Object(res));
                self.json(Value::Object(obj));
            }
        }
    }

    pub fn params(&self, p: &SeriesParams, j_inv: &BigReal) {
        let fields = [
            ("J", &p.j),
            ("T", &p.t),
            ("sqrt_one_minus_J", &p.sqrt_one_minus_j),
            ("lhs", &p.lhs),
            ("j_invariant", j_inv),
        ];
        match self.format {
            Format::Text => {
                println!("r = {}", p.r);
                for (name, v) in fields {
                    println!("{name:<18}{}", self.num(v));
                }
                println!("{:<18}{}", "digits_per_term", short(&p.digits_per_term));
            }
            Format::Json => {
                let mut obj = serde_json::Map::new();
                obj.insert("command".into(), json!("params"));
                obj.insert("r".into(), json!(p.r.to_string()));
                obj.insert("precision".into(), json!(self.digits));
                for (name, v) in fields {
                    obj.insert(name.into(), json!(self.num(v)));
                }
                obj.insert("digits_per_term".into(), json!(short(&p.digits_per_term)));
                self.json(Value::Object(obj));
            }
        }
    }

    pub fn verification(&self, r: &VerificationReport) {
        match self.format {
            Format::Text => {
                let mut line = format!("{:<24} {:<24} rel {}", r.id, r.status.as_str(), short(&r.rel_residual));
                if let Some(i) = r.root_index {
                    line += &format!("  root #{i}");
                }
                if let Some(e) = &r.error {
                    line += &format!("  ({e})");
                }
                if let Some(note) = r.erratum.as_ref().filter(|_| !r.passed()) {
                    line += &format!("  [{note}]");
                }
                println!("{line}");
            }
            Format::Json => self.json(json!({
                "id": r.id,
                "status": r.status,
                "precision": r.precision,
                "oracle": r.oracle,
                "lhs": self.num(&r.lhs),
                "rhs": self.num(&r.rhs),
                "abs_residual": short(&r.abs_residual),
                "rel_residual": short(&r.rel_residual),
                "root_index": r.root_index,
                "poly_residual": r.poly_residual.as_ref().map(short),
                "erratum": r.erratum,
                "error": r.error,
            })),
        }
    }

    pub fn summary(&self, s: &Summary) {
        match self.format {
            Format::Text => println!(
                "total {}: {} pass, {} fail, {} known-erratum-confirmed",
                s.total, s.pass, s.fail, s.known_erratum_confirmed
            ),
            Format::Json => self.json(json!({ "summary": s, "precision": self.digits })),
        }
    }

    pub fn table(&self, rows: &[(&VerificationReport, &CorpusEntry)]) {
        match self.format {
            Format::Text => {
                for (r, e) in rows {
                    println!("{:<24} {:<12} {}", r.id, e.oracle.name(), self.num(&r.lhs));
                }
            }
            Format::Json => {
                let items: Vec<Value> = rows
                    .iter()
                    .map(|(r, e)| {
                        json!({
                            "id": r.id,
                            "value": self.num(&r.lhs),
                            "closed_form": e.form.to_string(),
                            "oracle": e.oracle.to_string(),
                            "erratum": e.erratum,
                        })
                    })
                    .collect();
                self.json(json!({ "command": "table", "precision": self.digits, "entries": items }));
            }
        }
    }
}
