//! Command implementations behind the `signdet` binary: instance parsing,
//! the `signs` report, the `bench` CSV and the `selftest` suite.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::driver::{signdet_incremental_traced, signdet_naive, Options, SignDetResult, StepRecord};
use crate::gen;
use crate::oracle::signdet_bruteforce;
use crate::poly::{Poly, Rat};
use crate::signcond::{ada, factors, mat_dense, partition, SignList};
use crate::solver::{auxlinsolve, base_cases, op_budget, OpCounter};

/// `P0` and the labeled polynomials `P1..Ps`, in file order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub p0: Poly,
    pub polys: Vec<(String, Poly)>,
}

impl Instance {
    pub fn poly_list(&self) -> Vec<Poly> {
        self.polys.iter().map(|(_, p)| p.clone()).collect()
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "P0: {}", self.p0)?;
        for (name, p) in &self.polys {
            writeln!(f, "{name}: {p}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("missing P0")]
    MissingP0,
    #[error("line {0}: P0 must be nonzero")]
    ZeroP0(usize),
}

fn parse_coeff(tok: &str) -> Option<Rat> {
    let tok = tok.trim();
    match tok.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            (!d.is_zero()).then(|| Rat::new(n, d))
        }
        None => BigInt::from_str(tok).ok().map(Rat::from_integer),
    }
}

/// Lines `NAME: c0,c1,...,cd` (ascending degree, integers or `a/b`); `#`
/// starts a comment.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut p0 = None;
    let mut polys: Vec<(String, Poly)> = Vec::new();
    let mut seen = BTreeSet::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let err = |msg: String| ParseError::Line { line, msg };
        let (name, coeffs) = body
            .split_once(':')
            .ok_or_else(|| err("expected `NAME: c0,c1,...`".into()))?;
        let name = name.trim();
        if name.is_empty() || name.contains(char::is_whitespace) {
            return Err(err(format!("invalid name `{name}`")));
        }
        if !seen.insert(name.to_string()) {
            return Err(err(format!("duplicate name `{name}`")));
        }
        let coeffs = coeffs
            .split(',')
            .map(|tok| parse_coeff(tok).ok_or_else(|| err(format!("malformed coefficient `{}`", tok.trim()))))
            .collect::<Result<Vec<_>, _>>()?;
        let poly = Poly::new(coeffs);
        if name == "P0" {
            if poly.is_zero() {
                return Err(ParseError::ZeroP0(line));
            }
            p0 = Some(poly);
        } else {
            polys.push((name.to_string(), poly));
        }
    }
    let p0 = p0.ok_or(ParseError::MissingP0)?;
    Ok(Instance { p0, polys })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SignsOptions {
    pub oracle: bool,
    pub naive: bool,
    pub count_ops: bool,
    pub optimized: bool,
    pub format: Format,
}

#[derive(Debug, Clone)]
pub struct SignsReport {
    pub result: SignDetResult,
    pub steps: Vec<StepRecord>,
    /// One message per failed cross-check.
    pub mismatches: Vec<String>,
}

pub fn cmd_signs(inst: &Instance, opts: &SignsOptions) -> crate::Result<SignsReport> {
    let polys = inst.poly_list();
    let (result, steps) =
        signdet_incremental_traced(&inst.p0, &polys, Options { optimized: opts.optimized })?;
    let mut mismatches = Vec::new();
    if opts.oracle {
        let brute = signdet_bruteforce(&inst.p0, &polys)?;
        if brute != result {
            mismatches.push(format!("oracle disagrees: {brute:?}"));
        }
    }
    if opts.naive {
        let naive = signdet_naive(&inst.p0, &polys)?;
        if naive != result {
            mismatches.push(format!("naive method disagrees: {naive:?}"));
        }
    }
    Ok(SignsReport {
        result,
        steps,
        mismatches,
    })
}

#[derive(Serialize)]
struct JsonRow {
    signs: Vec<i8>,
    count: u64,
}

#[derive(Serialize)]
struct JsonStep {
    step: usize,
    r: usize,
    ops: u64,
    budget: u64,
}

#[derive(Serialize)]
struct JsonReport {
    m: u64,
    rows: Vec<JsonRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ops: Option<Vec<JsonStep>>,
}

pub fn render_signs(report: &SignsReport, opts: &SignsOptions) -> String {
    match opts.format {
        Format::Text => render_text(report, opts.count_ops),
        Format::Json => render_json(report, opts.count_ops),
    }
}

fn render_text(report: &SignsReport, count_ops: bool) -> String {
    let mut out = format!("m={}\n", report.result.m);
    for row in &report.result.rows {
        let signs: Vec<String> = row.signs.iter().map(ToString::to_string).collect();
        if signs.is_empty() {
            let _ = writeln!(out, ": {}", row.count);
        } else {
            let _ = writeln!(out, "{} : {}", signs.join(" "), row.count);
        }
    }
    if count_ops {
        let total: u64 = report.steps.iter().map(|s| s.ops).sum();
        let _ = writeln!(out, "ops_total={total}");
        for s in &report.steps {
            let _ = writeln!(out, "step={} r={} ops={} budget={}", s.index, s.r, s.ops, op_budget(s.r));
        }
    }
    out
}

fn render_json(report: &SignsReport, count_ops: bool) -> String {
    let json = JsonReport {
        m: report.result.m,
        rows: report
            .result
            .rows
            .iter()
            .map(|row| JsonRow {
                signs: row.signs.iter().map(|s| s.to_i8()).collect(),
                count: row.count,
            })
            .collect(),
        ops: count_ops.then(|| {
            report
                .steps
                .iter()
                .map(|s| JsonStep {
                    step: s.index,
                    r: s.r,
                    ops: s.ops,
                    budget: op_budget(s.r),
                })
                .collect()
        }),
    };
    let mut s = serde_json::to_string_pretty(&json).expect("serializable report");
    s.push('\n');
    s
}

#[derive(Debug, Clone, Copy)]
pub struct BenchOptions {
    pub seed: u64,
    pub degree: usize,
    pub num_polys: usize,
    pub trials: usize,
    pub coeff_bound: i64,
    pub optimized: bool,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            seed: 0,
            degree: 8,
            num_polys: 3,
            trials: 10,
            coeff_bound: 10,
            optimized: false,
        }
    }
}

pub const BENCH_HEADER: &str = "seed,trial,step,r,ops,budget,ratio";

/// `ops / budget` rounded half-up to four decimals.
pub fn format_ratio(ops: u64, budget: u64) -> String {
    if budget == 0 {
        return "0.0000".into();
    }
    let scaled = (u128::from(ops) * 20000 + u128::from(budget)) / (2 * u128::from(budget));
    format!("{}.{:04}", scaled / 10000, scaled % 10000)
}

/// One CSV row per pipeline step of every trial. Trial `k` draws from its
/// own stream of the seeded generator.
pub fn cmd_bench(opts: &BenchOptions) -> crate::Result<String> {
    if opts.degree == 0 || opts.coeff_bound <= 0 {
        return Err(crate::Error::Internal("degree and coefficient bound must be positive".into()));
    }
    let mut out = String::from(BENCH_HEADER);
    out.push('\n');
    for trial in 0..opts.trials {
        let mut rng = gen::rng(opts.seed);
        rng.set_stream(trial as u64);
        let inst = gen::uniform_instance(&mut rng, opts.degree, opts.num_polys, opts.coeff_bound);
        let (_, steps) =
            signdet_incremental_traced(&inst.p0, &inst.polys, Options { optimized: opts.optimized })?;
        for s in steps {
            let budget = op_budget(s.r);
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                opts.seed,
                trial,
                s.index,
                s.r,
                s.ops,
                budget,
                format_ratio(s.ops, budget)
            );
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct GroupResult {
    pub name: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl GroupResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Dense check that `N9 ... N1` inverts the column-grouped sign matrix.
pub fn factorization_holds(sigma: &SignList) -> crate::Result<bool> {
    let m = mat_dense(&ada(sigma)?, sigma)?.select_columns(&partition(sigma)?.grouped_order());
    let mut prod = m;
    for n in factors(sigma)?.iter() {
        prod = n.mul(&prod);
    }
    Ok(prod.is_identity())
}

pub fn cmd_selftest(seed: u64) -> Vec<GroupResult> {
    vec![
        selftest_base_inverses(),
        selftest_factorization(seed),
        selftest_oracle(seed),
    ]
}

fn selftest_base_inverses() -> GroupResult {
    let mut g = GroupResult {
        name: "base-inverses",
        checks: 0,
        failures: Vec::new(),
    };
    for (sigma, inv) in base_cases() {
        g.checks += 1;
        let ok = ada(&sigma)
            .and_then(|a| mat_dense(&a, &sigma))
            .map(|m| crate::dense::Matrix::from_rows(&inv).mul(&m).is_identity());
        if ok != Ok(true) {
            g.failures.push(format!("{sigma:?}"));
        }
    }
    g
}

fn selftest_factorization(seed: u64) -> GroupResult {
    let mut g = GroupResult {
        name: "factorization",
        checks: 0,
        failures: Vec::new(),
    };
    let mut rng = gen::rng(seed ^ 0xfac7);
    for k in 0..40 {
        let len = rng.gen_range(2..=5);
        let target = if k == 0 { 60 } else { rng.gen_range(1..=60) };
        let sigma = gen::random_sign_list(&mut rng, len, target);
        g.checks += 1;
        let x: Vec<Rat> = gen::random_ints(&mut rng, sigma.len(), 9)
            .into_iter()
            .map(|v| Rat::from_integer(v.into()))
            .collect();
        let solved = ada(&sigma)
            .and_then(|a| mat_dense(&a, &sigma))
            .and_then(|m| {
                let mut c = OpCounter::new();
                auxlinsolve(&sigma, &m.mul_vec(&x), &mut c, false)
                    .map(|sol| (sol, c.count()))
            });
        match (factorization_holds(&sigma), solved) {
            (Ok(true), Ok((sol, ops))) if sol == x && ops <= op_budget(sigma.len()) => {}
            other => g.failures.push(format!("r={} len={len}: {:?}", sigma.len(), other.0)),
        }
    }
    g
}

fn selftest_oracle(seed: u64) -> GroupResult {
    let mut g = GroupResult {
        name: "oracle",
        checks: 0,
        failures: Vec::new(),
    };
    let mut rng = gen::rng(seed ^ 0x05ac1e);
    for k in 0..100 {
        let d = rng.gen_range(1..=8);
        let s = rng.gen_range(0..=4);
        let inst = if k % 2 == 0 {
            gen::uniform_instance(&mut rng, d, s, 20)
        } else {
            gen::structured_instance(&mut rng, d, s, 20)
        };
        g.checks += 1;
        let inc = signdet_incremental_traced(&inst.p0, &inst.polys, Options::default());
        let brute = signdet_bruteforce(&inst.p0, &inst.polys);
        match (inc, brute) {
            (Ok((a, steps)), Ok(b)) if a == b && steps.iter().all(|s| s.ops <= op_budget(s.r)) => {}
            (a, b) => g.failures.push(format!("instance {k}: {:?} vs {:?}", a.map(|x| x.0), b)),
        }
    }
    g
}
