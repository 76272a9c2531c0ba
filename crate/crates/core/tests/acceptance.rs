//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p ramapi-core --test acceptance -- --nocapture`.
//! Criteria that are known to be unattainable as stated are listed in
//! [`KNOWN_RED`] together with the exact failure they are expected to show;
//! the test fails if any other criterion fails, or if a known-red one fails
//! differently.

use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rug::ops::Pow;
use rug::{Float, Rational};

use ramapi_core::corpus::{eval_exact, Corpus, Status};
use ramapi_core::moduli::{
    alpha_from_theta, alpha_solve, beta_from_alpha3r, beta_solve, solve_m, solve_thm2_system, thm1_eval,
    thm2_inputs, thm3_eval, triplicate_alpha, verify_a1, verify_a2,
};
use ramapi_core::mpcore::{
    agm_pi, ellip_e, ellip_k, ellip_k_complement, gauss_2f1, gauss_2f1_with, hyp2f1_quarter_seven, Hyp2f1Path,
};
use ramapi_core::piseries::{
    compute_pi, digits_per_term, ramanujan_sum, series_j, series_t, t_lower, SeriesParams,
};
use ramapi_core::qseries::{eis_g, eis_p, eis_q, eis_r, hyperbolic_sum, lattice_g2, lattice_g3, Nome};
use ramapi_core::{Execution, PrecisionContext, Result};

mod tol {
    //! Tolerances and budgets, as decimal exponents or seconds.

    /// 1: |π_series − π_AGM| < 10^−100 at 120 digits with 160 terms.
    pub const PI_R2_DIGITS: u32 = 120;
    pub const PI_R2_TERMS: u64 = 160;
    pub const PI_R2_EXP: i32 = -100;
    pub const PI_R2_SECONDS: f64 = 1.0;

    /// 2: digits-per-term windows at 200 digits.
    pub const DPT_DIGITS: u32 = 200;
    pub const DPT_432: (f64, f64) = (52.0, 54.0);
    pub const DPT_1728: (f64, f64) = (109.0, 111.0);
    pub const DPT_SECONDS: f64 = 5.0;

    /// 3: π to 500 digits with bounded term counts.
    pub const FLAGSHIP_DIGITS: u32 = 500;
    pub const FLAGSHIP_TERMS_1728: u64 = 7;
    pub const FLAGSHIP_TERMS_432: u64 = 12;
    pub const FLAGSHIP_SECONDS: f64 = 10.0;

    /// 4: table of α_r at 60 digits.
    pub const TABLE_DIGITS: u32 = 60;
    pub const TABLE_REL_EXP: i32 = -50;
    pub const TABLE_POLY_EXP: i32 = -45;
    pub const TABLE_ENTRIES: usize = 41;
    pub const TABLE_SECONDS: f64 = 60.0;

    /// 5: identity suites at 60 digits.
    pub const IDENTITY_DIGITS: u32 = 60;
    pub const IDENTITY_EXP: i32 = -50;

    /// 6: erratum adjudication.
    pub const ERRATUM_DIGITS: u32 = 60;
    pub const ERRATUM_PRINTED_MIN_EXP: i32 = -3;
    pub const ERRATUM_CORRECTED_EXP: i32 = -50;

    /// 7: property suite.
    pub const PROPERTY_DIGITS: u32 = 60;
    pub const PROPERTY_EXP: i32 = -50;
    pub const LEGENDRE_SAMPLES: usize = 20;
    pub const DOUBLING_SAMPLES: usize = 10;
    pub const DOUBLING_LOW_DIGITS: u32 = 40;

    /// 8: oracle equivalence.
    pub const LATTICE_RADIUS: u32 = 500;
    pub const LATTICE_REL: f64 = 1e-4;
    pub const LATTICE_DIGITS: u32 = 30;
    pub const THM2_DIGITS: u32 = 60;
    pub const THM2_EXP: i32 = -50;
}

/// Criteria expected to fail, with the ids whose failure explains it.
const KNOWN_RED: &[(u32, &[&str])] = &[(4, &["alpha_28", "alpha_37"])];

struct Outcome {
    pass: bool,
    detail: String,
    /// Ids responsible for a failure, when the failure is entry-specific.
    culprits: Vec<String>,
}

impl Outcome {
    fn new(checks: Vec<(String, bool)>) -> Self {
        let failed: Vec<String> = checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.clone()).collect();
        Self {
            pass: failed.is_empty(),
            detail: if failed.is_empty() {
                format!("{} checks", checks.len())
            } else {
                format!("{}/{} checks failed: {}", failed.len(), checks.len(), failed.join(", "))
            },
            culprits: failed,
        }
    }

    fn within(mut self, elapsed: Duration, budget: f64) -> Self {
        let secs = elapsed.as_secs_f64();
        if secs > budget {
            self.pass = false;
            self.culprits.push("runtime".into());
        }
        self.detail = format!("{} [{secs:.2}s, budget {budget}s]", self.detail);
        self
    }
}

fn ctx(d: u32) -> PrecisionContext {
    PrecisionContext::new(d).unwrap()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

fn pow10(e: i32) -> Float {
    Float::with_val(4096, 10).pow(e)
}

/// |a − b| / max(|b|, 1).
fn residual(a: &Float, b: &Float) -> Float {
    let bits = a.prec().max(b.prec()) + 16;
    let d = Float::with_val(bits, a - b).abs();
    let s = Float::with_val(bits, b.abs_ref()).max(&Float::with_val(bits, 1));
    d / s
}

fn rel(a: &Float, b: &Float) -> Float {
    let bits = a.prec().max(b.prec()) + 16;
    Float::with_val(bits, a - b).abs() / Float::with_val(bits, b.abs_ref())
}

fn below(x: &Float, e: i32) -> bool {
    *x < pow10(e)
}

fn check(name: impl Into<String>, v: Result<bool>) -> (String, bool) {
    (name.into(), v.unwrap_or(false))
}

fn timed<F: FnOnce() -> Outcome>(f: F) -> (Outcome, Duration) {
    let t = Instant::now();
    let o = f();
    (o, t.elapsed())
}

// ── 1 ────────────────────────────────────────────────────────────────────

fn pi_reproduction() -> Outcome {
    let (o, t) = timed(|| {
        let c = ctx(tol::PI_R2_DIGITS);
        let r = q(2, 1);
        let ok = (|| -> Result<bool> {
            let params = SeriesParams::for_r(&r, &c)?;
            let sum = ramanujan_sum(&params, tol::PI_R2_TERMS, &c)?;
            let pi = c.real(3) / (c.real(&r).sqrt() * &params.sqrt_one_minus_j * sum);
            Ok(below(&Float::with_val(c.bits(), &pi - agm_pi(&c)).abs(), tol::PI_R2_EXP))
        })();
        Outcome::new(vec![check("pi r=2", ok)])
    });
    o.within(t, tol::PI_R2_SECONDS)
}

// ── 2 ────────────────────────────────────────────────────────────────────

fn digits_per_term_claims() -> Outcome {
    let (o, t) = timed(|| {
        let c = ctx(tol::DPT_DIGITS);
        let corpus = Corpus::builtin();
        let dpt = |id: &str| -> Result<f64> {
            let entry = corpus.get(id).expect("corpus id");
            let expr = match &entry.form {
                ramapi_core::corpus::ClosedForm::Radical(e) => e,
                ramapi_core::corpus::ClosedForm::PolyRoot(_) => unreachable!("J entries are radicals"),
            };
            Ok(digits_per_term(&eval_exact(expr, &c)?).to_f64())
        };
        let inside = |v: Result<f64>, (lo, hi): (f64, f64)| v.map(|d| (lo..=hi).contains(&d));
        Outcome::new(vec![
            check("J_432 window", inside(dpt("J_432"), tol::DPT_432)),
            check("J_1728 window", inside(dpt("J_1728"), tol::DPT_1728)),
        ])
    });
    o.within(t, tol::DPT_SECONDS)
}

// ── 3 ────────────────────────────────────────────────────────────────────

fn flagship(r: i64, max_terms: u64) -> Outcome {
    let (o, t) = timed(|| {
        let c = ctx(tol::FLAGSHIP_DIGITS);
        let ok = (|| -> Result<bool> {
            let p = compute_pi(&q(r, 1), tol::FLAGSHIP_DIGITS, &c)?;
            let oracle = agm_pi(&c.raised(20));
            let err = Float::with_val(oracle.prec(), &p.value - &oracle).abs();
            Ok(p.terms <= max_terms && below(&err, -(tol::FLAGSHIP_DIGITS as i32)))
        })();
        Outcome::new(vec![check(format!("pi r={r}"), ok)])
    });
    o.within(t, tol::FLAGSHIP_SECONDS)
}

fn flagship_formula() -> Outcome {
    let a = flagship(1728, tol::FLAGSHIP_TERMS_1728);
    let b = flagship(432, tol::FLAGSHIP_TERMS_432);
    let mut culprits = a.culprits.clone();
    culprits.extend(b.culprits.clone());
    Outcome {
        pass: a.pass && b.pass,
        detail: format!("r=1728: {}; r=432: {}", a.detail, b.detail),
        culprits,
    }
}

// ── 4 ────────────────────────────────────────────────────────────────────

fn alpha_table() -> Outcome {
    let (o, t) = timed(|| {
        let c = ctx(tol::TABLE_DIGITS);
        let reports =
            Corpus::builtin().verify_matching(|id| id.starts_with("alpha_"), Execution::Parallel, &c);
        let mut checks = vec![("41 table entries".to_string(), reports.len() == tol::TABLE_ENTRIES)];
        for r in &reports {
            let mut ok = r.error.is_none() && below(&r.rel_residual, tol::TABLE_REL_EXP);
            if let Some(p) = &r.poly_residual {
                ok &= below(p, tol::TABLE_POLY_EXP);
            }
            checks.push((r.id.clone(), ok));
        }
        Outcome::new(checks)
    });
    o.within(t, tol::TABLE_SECONDS)
}

// ── 5 ────────────────────────────────────────────────────────────────────

fn identity_suites() -> Outcome {
    let c = ctx(tol::IDENTITY_DIGITS);
    let small = |a: Result<Float>, b: Result<Float>| -> Result<bool> { Ok(below(&residual(&a?, &b?), tol::IDENTITY_EXP)) };
    let third = q(1, 3);
    let two_thirds = q(2, 3);
    let sixth = q(1, 6);
    let five_sixths = q(5, 6);
    let one = q(1, 1);
    let z = |a: &Float| gauss_2f1(&third, &two_thirds, &one, a, &c);
    let u = |b: &Float| gauss_2f1(&sixth, &five_sixths, &one, b, &c);
    let corpus = Corpus::builtin();
    let corpus_alpha = |r: i64| -> Result<Float> {
        match &corpus.get(&format!("alpha_{r}")).expect("table entry").form {
            ramapi_core::corpus::ClosedForm::Radical(e) => eval_exact(e, &c),
            ramapi_core::corpus::ClosedForm::PolyRoot(_) => unreachable!("small table entries are radicals"),
        }
    };
    let mut checks = Vec::new();

    for r in 1..=5 {
        let rr = q(r, 3);
        let res = (|| -> Result<(bool, bool)> {
            let a = corpus_alpha(r)?;
            let zz = z(&a)?;
            let lq = 1 + hyperbolic_sum(3, &rr, &c)? * 240u32;
            let rq = c.real(1 + c.real(&a * 8u32)) * c.real((&zz).pow(4u32));
            let lr = 1 - hyperbolic_sum(5, &rr, &c)? * 504u32;
            let poly = 1 - c.real(&a * 20u32) - c.real(a.square_ref()) * 8u32;
            let rrr = poly * c.real((&zz).pow(6u32));
            Ok((small(Ok(lq), Ok(rq))?, small(Ok(lr), Ok(rrr))?))
        })();
        checks.push(check(format!("Q via alpha_r r={r}"), res.clone().map(|p| p.0)));
        checks.push(check(format!("R via alpha_r r={r}"), res.map(|p| p.1)));
    }

    for r in 1..=3 {
        let rr = q(r, 1);
        let res = (|| -> Result<Vec<bool>> {
            let nome = Nome::new(&rr, &c)?;
            let (pq, qq, rq) = (eis_p(&nome.q, &c)?, eis_q(&nome.q, &c)?, eis_r(&nome.q, &c)?);
            let a3 = alpha_from_theta(&q(3 * r, 1), &c)?;
            let z3 = z(&a3)?;
            let m = solve_m(&rr, &c)?;
            let k = ellip_k(&m, &c)?;
            let e = ellip_e(&m, &c)?;
            let f = c.real(&k * 2u32) / c.pi();
            let q_alpha = c.real(1 + c.real(&a3 * 8u32)) * c.real((&z3).pow(4u32));
            let r_alpha = (1 - c.real(&a3 * 20u32) - c.real(a3.square_ref()) * 8u32) * c.real((&z3).pow(6u32));
            let q_modulus = (c.real(1 - &m) + c.real(m.square_ref())) * c.real((&f).pow(4u32));
            let r_modulus = c.real(1 + &m)
                * c.real(1 - c.real(&m / 2u32))
                * c.real(1 - c.real(&m * 2u32))
                * c.real((&f).pow(6u32));
            let y = c.pi() * c.real(&rr).sqrt();
            let p_shifted = pq - c.real(3 / &y);
            let sr = c.real(&e * 3u32) / &k - 2u32 + &m
                - c.pi() * 3u32 / (c.real(&rr).sqrt() * 4u32 * c.real(k.square_ref()));
            let p_modulus = sr * c.real(f.square_ref());
            Ok(vec![
                small(Ok(qq.clone()), Ok(q_alpha))?,
                small(Ok(rq.clone()), Ok(r_alpha))?,
                small(Ok(qq), Ok(q_modulus))?,
                small(Ok(rq), Ok(r_modulus))?,
                small(Ok(p_shifted), Ok(p_modulus))?,
            ])
        })();
        for (i, name) in ["Q via alpha_3r", "R via alpha_3r", "Q via m_r", "R via m_r", "P via K,E"].iter().enumerate() {
            checks.push(check(format!("{name} r={r}"), res.as_ref().map(|v| v[i]).map_err(Clone::clone)));
        }
    }

    for r in [1, 3, 6] {
        let rr = q(r, 1);
        let direct = alpha_from_theta(&rr, &c).and_then(|a| z(&a));
        checks.push(check(format!("cubic 2F1 at alpha_r r={r}"), small(thm1_eval(&rr, &c), direct)));
    }

    for r in [1, 4, 16] {
        let rr = q(r, 1);
        let res = (|| -> Result<Vec<bool>> {
            let beta = beta_solve(&rr, &c)?;
            let ub = u(&beta)?;
            let nome = Nome::new(&rr, &c)?;
            let b1 = c.real((&ub).pow(4u32));
            let xi = c.real(1 - c.real(&beta * 2u32)) * c.real((&ub).pow(6u32));
            Ok(vec![
                small(thm3_eval(&rr, &c), Ok(ub.clone()))?,
                small(eis_q(&nome.q, &c), Ok(b1))?,
                small(eis_r(&nome.q, &c), Ok(xi))?,
            ])
        })();
        for (i, name) in ["u(beta_r) from K", "Q = u^4", "R = (1-2beta)u^6"].iter().enumerate() {
            checks.push(check(format!("{name} r={r}"), res.as_ref().map(|v| v[i]).map_err(Clone::clone)));
        }
    }

    for r in [1, 2, 6] {
        let rr = q(r, 1);
        let path = alpha_from_theta(&q(3 * r, 1), &c).map(|a| beta_from_alpha3r(&a));
        checks.push(check(format!("beta_r from alpha_3r r={r}"), small(path, beta_solve(&rr, &c))));
    }

    for r in [1, 3] {
        checks.push(check(format!("theta identity a1 r={r}"), verify_a1(&q(r, 1), &c).map(|d| below(&d, tol::IDENTITY_EXP))));
    }
    checks.push(check("theta identity a2 r=1", verify_a2(&q(1, 1), &c).map(|d| below(&d, tol::IDENTITY_EXP))));

    for (n, d) in [(1, 10), (1, 2)] {
        let w = c.real(&q(n, d));
        let direct = gauss_2f1_with(&q(1, 4), &q(7, 4), &one, &w, Hyp2f1Path::DirectSeries, &c);
        checks.push(check(format!("2F1(1/4,7/4) closed form w={n}/{d}"), small(hyp2f1_quarter_seven(&w, &c), direct)));
    }
    Outcome::new(checks)
}

// ── 6 ────────────────────────────────────────────────────────────────────

fn erratum_adjudication() -> Outcome {
    let c = ctx(tol::ERRATUM_DIGITS);
    let corpus = Corpus::builtin();
    let mut checks = Vec::new();
    for eq in ["eq36", "eq37"] {
        let printed = corpus.verify(&format!("{eq}_as_printed"), &c);
        let fixed = corpus.verify(&format!("{eq}_corrected"), &c);
        checks.push(check(
            format!("{eq} printed fails"),
            printed.map(|r| {
                r.status == Status::KnownErratumConfirmed && !below(&r.rel_residual, tol::ERRATUM_PRINTED_MIN_EXP)
            }),
        ));
        checks.push(check(
            format!("{eq} corrected holds"),
            fixed.map(|r| r.status == Status::Pass && below(&r.rel_residual, tol::ERRATUM_CORRECTED_EXP)),
        ));
    }
    Outcome::new(checks)
}

// ── 7 ────────────────────────────────────────────────────────────────────

fn property_suite() -> Outcome {
    let c = ctx(tol::PROPERTY_DIGITS);
    let close = |a: Result<Float>, b: Result<Float>| -> Result<bool> { Ok(below(&residual(&a?, &b?), tol::PROPERTY_EXP)) };
    let mut checks = Vec::new();

    for r in [8, 16, 20] {
        checks.push(check(format!("t_{r} = T_{r}/4"), close(t_lower(&q(r, 1), &c), series_t(&q(r, 4), &c))));
    }
    for (r, j) in [(2, 8000), (4, 287_496)] {
        let v = series_j(&q(r, 1), &c).map(|jr| c.real(1728) / jr);
        checks.push(check(format!("1728/J_{r} = {j}"), close(v, Ok(c.real(j)))));
    }
    for r in [1, 2, 3] {
        let lhs = alpha_solve(&q(r, 1), &c).map(|a| triplicate_alpha(&a));
        checks.push(check(format!("triplicate r={r}"), close(lhs, alpha_solve(&q(9 * r, 1), &c))));
    }

    let mut rng = StdRng::seed_from_u64(0x5EED_1728);
    for i in 0..tol::LEGENDRE_SAMPLES {
        let m = c.real(rng.random_range(0.01..0.99));
        let ok = (|| -> Result<bool> {
            let mc = c.real(1 - &m);
            let (k, e) = (ellip_k(&m, &c)?, ellip_e(&m, &c)?);
            let (kc, ec) = (ellip_k(&mc, &c)?, ellip_e(&mc, &c)?);
            let lhs = c.real(&e * &kc) + c.real(&ec * &k) - c.real(&k * &kc);
            Ok(below(&residual(&lhs, &(c.pi() / 2u32)), tol::PROPERTY_EXP))
        })();
        checks.push(check(format!("legendre #{i}"), ok));
    }

    let lo = ctx(tol::DOUBLING_LOW_DIGITS);
    let hi = ctx(2 * tol::DOUBLING_LOW_DIGITS);
    for i in 0..tol::DOUBLING_SAMPLES {
        let r = q(rng.random_range(2..60), rng.random_range(1..4));
        let x: f64 = rng.random_range(0.05..0.95);
        let op = |cc: &PrecisionContext| -> Result<Float> {
            match i % 5 {
                0 => ellip_k(&cc.real(x), cc),
                1 => ellip_k_complement(&cc.real(x), cc),
                2 => alpha_from_theta(&r, cc),
                3 => beta_solve(&r, cc),
                _ => gauss_2f1(&q(1, 3), &q(2, 3), &q(1, 1), &cc.real(x), cc),
            }
        };
        let ok = (|| -> Result<bool> {
            let (a, b) = (op(&lo)?, op(&hi)?);
            Ok(below(&rel(&a, &b), -(tol::DOUBLING_LOW_DIGITS as i32) + 1))
        })();
        checks.push(check(format!("doubling #{i} r={r} x={x:.3}"), ok));
    }
    Outcome::new(checks)
}

// ── 8 ────────────────────────────────────────────────────────────────────

fn oracle_equivalence() -> Outcome {
    let c = ctx(tol::LATTICE_DIGITS);
    let mut checks = Vec::new();
    let rel_ok = |a: Result<Float>, b: Result<Float>| -> Result<bool> { Ok(rel(&a?, &b?).to_f64() < tol::LATTICE_REL) };
    for r in [1, 2] {
        let rr = q(r, 1);
        let g2 = eis_g(2, &rr, &c).map(|g| g * 60u32);
        checks.push(check(format!("g2 r={r}"), rel_ok(lattice_g2(&rr, tol::LATTICE_RADIUS, &c), g2)));
    }
    // g₃ vanishes at τ = i, so it is compared relative to g₂ there.
    let g3_at_i = (|| -> Result<bool> {
        let lat = lattice_g3(&q(1, 1), tol::LATTICE_RADIUS, &c)?;
        let ser = eis_g(3, &q(1, 1), &c)? * 140u32;
        let scale = lattice_g2(&q(1, 1), tol::LATTICE_RADIUS, &c)?;
        Ok((Float::with_val(c.bits(), &lat - &ser).abs() / scale).to_f64() < tol::LATTICE_REL)
    })();
    checks.push(check("g3 r=1 (vanishing)", g3_at_i));
    let g3 = eis_g(3, &q(2, 1), &c).map(|g| g * 140u32);
    checks.push(check("g3 r=2", rel_ok(lattice_g3(&q(2, 1), tol::LATTICE_RADIUS, &c), g3)));

    let c = ctx(tol::THM2_DIGITS);
    for r in [1, 2] {
        let rr = q(r, 1);
        let ok = (|| -> Result<bool> {
            let (t1, t2) = thm2_inputs(&rr, &c)?;
            let (alpha, zz) = solve_thm2_system(&t1, &t2, &c)?;
            let a3 = alpha_from_theta(&q(3 * r, 1), &c)?;
            let z3 = gauss_2f1(&q(1, 3), &q(2, 3), &q(1, 1), &a3, &c)?;
            Ok(below(&rel(&alpha, &a3), tol::THM2_EXP) && below(&rel(&zz, &z3), tol::THM2_EXP))
        })();
        checks.push(check(format!("alpha_3r system round trip r={r}"), ok));
    }
    Outcome::new(checks)
}

type Criterion = (u32, &'static str, fn() -> Outcome);

// Runs without the libtest harness so the per-criterion lines are always shown.
fn main() {
    let criteria: Vec<Criterion> = vec![
        (1, "pi reproduction, r = 2", pi_reproduction),
        (2, "digits per term, r = 432 and 1728", digits_per_term_claims),
        (3, "flagship pi, r = 1728 and 432", flagship_formula),
        (4, "table of cubic singular moduli", alpha_table),
        (5, "identity suites", identity_suites),
        (6, "erratum adjudication", erratum_adjudication),
        (7, "property suite", property_suite),
        (8, "oracle equivalence", oracle_equivalence),
    ];
    let mut unexpected = Vec::new();
    for (n, name, run) in criteria {
        let o = run();
        println!("criterion {n}: {} — {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        let known = KNOWN_RED.iter().find(|(k, _)| *k == n).map(|(_, ids)| *ids);
        match (o.pass, known) {
            (true, None) => {}
            (false, Some(ids)) if o.culprits.iter().map(String::as_str).eq(ids.iter().copied()) => {
                println!("criterion {n}: known red, failing exactly on {}", ids.join(", "));
            }
            (true, Some(_)) => unexpected.push(format!("criterion {n} passed but is listed as known red")),
            (false, _) => unexpected.push(format!("criterion {n}: {}", o.detail)),
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected acceptance results: {unexpected:#?}");
        std::process::exit(1);
    }
}
