//! End-to-end sign determination on the real zeros of `P0`.
//!
//! Polynomials are introduced from back to front. At step `i` the feasible
//! conditions for `P_{i+1}, ..., P_s` are extended by the feasible signs of
//! `P_i` alone, Tarski queries are taken for the adapted products, and the
//! resulting system is solved by [`crate::solver`].

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::dense::Matrix;
use crate::error::{Error, Result};
use crate::poly::{Poly, Rat};
use crate::signcond::{extend_candidates, mat_dense, LevelPlan, MultiDeg, SignCond, SignList};
use crate::solver::{base_solve, solve_plan, OpCounter};
use crate::tarski::{taq, Sign};

/// One feasible sign condition (signs of `P1..Ps` in that order) and the
/// number of distinct roots of `P0` realizing it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Row {
    pub signs: Vec<Sign>,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignDetResult {
    /// Number of distinct real roots of `P0`.
    pub m: u64,
    /// Lexicographically sorted, every count ≥ 1.
    pub rows: Vec<Row>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    pub optimized: bool,
}

/// Bookkeeping for one pipeline step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepRecord {
    /// 1-based index of the polynomial introduced at this step.
    pub index: usize,
    /// Size of the candidate list.
    pub r: usize,
    pub ada_len: usize,
    /// Solver operations for this step's system.
    pub ops: u64,
    /// Tarski queries issued for the system (one per adapted product).
    pub queries: usize,
    /// Largest degree among all polynomials queried at this step.
    pub max_query_degree: usize,
    /// Number of feasible conditions kept.
    pub feasible: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SinglePoly {
    /// Counts for signs `0, 1, -1`.
    pub counts: [u64; 3],
    pub feasible: BTreeSet<Sign>,
    pub ops: u64,
    pub max_query_degree: usize,
}

impl SinglePoly {
    pub fn count(&self, s: Sign) -> u64 {
        self.counts[s as usize]
    }
}

fn count_from_rat(c: &Rat) -> Result<u64> {
    if !c.is_integer() || c.is_negative() {
        return Err(Error::Internal(format!("count {c} is not a nonnegative integer")));
    }
    c.to_integer()
        .to_u64()
        .ok_or_else(|| Error::Internal(format!("count {c} out of range")))
}

fn deg(p: &Poly) -> usize {
    p.degree().unwrap_or(0)
}

/// Counts of the three signs of `p` on the zeros of `p0`.
pub fn single_poly_feasible(p: &Poly, p0: &Poly) -> Result<SinglePoly> {
    let m = taq(&Poly::one(), p0)?;
    single_poly_with_m(p, p0, m)
}

fn single_poly_with_m(p: &Poly, p0: &Poly, m: i64) -> Result<SinglePoly> {
    let p1 = p.mod_reduce(p0)?;
    let p2 = p1.mul(&p1).mod_reduce(p0)?;
    let t: Vec<Rat> = [m, taq(&p1, p0)?, taq(&p2, p0)?]
        .into_iter()
        .map(|v| Rat::from_integer(BigInt::from(v)))
        .collect();
    let sigma = SignList::from_i8_rows(&[&[0], &[1], &[-1]])?;
    let mut counter = OpCounter::new();
    let c = base_solve(&sigma, &t, &mut counter)?;
    let mut counts = [0u64; 3];
    let mut feasible = BTreeSet::new();
    for (k, s) in Sign::ALL.into_iter().enumerate() {
        counts[k] = count_from_rat(&c[k])?;
        if counts[k] > 0 {
            feasible.insert(s);
        }
    }
    Ok(SinglePoly {
        counts,
        feasible,
        ops: counter.count(),
        max_query_degree: deg(&p1).max(deg(&p2)),
    })
}

/// `∏_j polys[j]^{α_j} mod p0` for each `α`, reducing after every
/// multiplication.
pub fn products_for_ada(a: &[MultiDeg], polys: &[Poly], p0: &Poly) -> Result<Vec<Poly>> {
    if p0.is_zero() {
        return Err(Error::ZeroP0);
    }
    let reduced = polys
        .iter()
        .map(|p| p.mod_reduce(p0))
        .collect::<Result<Vec<_>>>()?;
    a.iter()
        .map(|alpha| {
            if alpha.len() != polys.len() {
                return Err(Error::LengthMismatch {
                    expected: polys.len(),
                    got: alpha.len(),
                });
            }
            let mut acc = Poly::one().mod_reduce(p0)?;
            for (p, &e) in reduced.iter().zip(alpha.degs()) {
                for _ in 0..e {
                    acc = acc.mul(p).mod_reduce(p0)?;
                }
            }
            Ok(acc)
        })
        .collect()
}

pub fn signdet_incremental(p0: &Poly, polys: &[Poly]) -> Result<SignDetResult> {
    signdet_incremental_traced(p0, polys, Options::default()).map(|(r, _)| r)
}

/// Runs the pipeline and also reports one [`StepRecord`] per polynomial, in
/// processing order (`P_s` first).
pub fn signdet_incremental_traced(
    p0: &Poly,
    polys: &[Poly],
    opts: Options,
) -> Result<(SignDetResult, Vec<StepRecord>)> {
    if p0.is_zero() {
        return Err(Error::ZeroP0);
    }
    let m = taq(&Poly::one(), p0)?;
    let m_u = u64::try_from(m).map_err(|_| Error::Internal("negative root count".into()))?;
    if m == 0 {
        return Ok((SignDetResult { m: 0, rows: Vec::new() }, Vec::new()));
    }
    let s = polys.len();
    if s == 0 {
        let rows = vec![Row { signs: Vec::new(), count: m_u }];
        return Ok((SignDetResult { m: m_u, rows }, Vec::new()));
    }

    let mut records = Vec::with_capacity(s);
    // feasible conditions for P_{i+1}..P_s with counts, sorted
    let mut feasible: Vec<(SignCond, u64)>;

    let last = single_poly_with_m(&polys[s - 1], p0, m)?;
    feasible = Sign::ALL
        .into_iter()
        .filter(|&b| last.count(b) > 0)
        .map(|b| (SignCond::new(vec![b]), last.count(b)))
        .collect();
    records.push(StepRecord {
        index: s,
        r: 3,
        ada_len: 3,
        ops: last.ops,
        queries: 3,
        max_query_degree: last.max_query_degree,
        feasible: feasible.len(),
    });

    for i in (0..s - 1).rev() {
        let single = single_poly_with_m(&polys[i], p0, m)?;
        let hat = SignList::new(feasible.iter().map(|(c, _)| c.clone()).collect())?;
        let sigma = extend_candidates(&hat, &single.feasible);
        let plan = LevelPlan::build(&sigma)?;
        let products = products_for_ada(&plan.ada, &polys[i..], p0)?;
        let t = products
            .iter()
            .map(|q| taq(q, p0).map(|v| Rat::from_integer(BigInt::from(v))))
            .collect::<Result<Vec<_>>>()?;
        let mut counter = OpCounter::new();
        let c = solve_plan(&plan, &t, &mut counter, opts.optimized)?;

        let mut next = Vec::new();
        let mut total = 0u64;
        for (cond, v) in sigma.iter().zip(&c) {
            let n = count_from_rat(v)?;
            total += n;
            if n > 0 {
                next.push((cond.clone(), n));
            }
        }
        if total != m_u {
            return Err(Error::Internal(format!("counts sum to {total}, expected {m_u}")));
        }
        records.push(StepRecord {
            index: i + 1,
            r: sigma.len(),
            ada_len: plan.ada.len(),
            ops: counter.count(),
            queries: products.len(),
            max_query_degree: products
                .iter()
                .map(deg)
                .chain([single.max_query_degree])
                .max()
                .unwrap_or(0),
            feasible: next.len(),
        });
        feasible = next;
    }

    let rows = feasible
        .into_iter()
        .map(|(cond, count)| Row {
            signs: cond.signs().to_vec(),
            count,
        })
        .collect();
    Ok((SignDetResult { m: m_u, rows }, records))
}

/// All `3^s` sign conditions against all `3^s` multidegrees, solved by
/// dense elimination.
pub fn signdet_naive(p0: &Poly, polys: &[Poly]) -> Result<SignDetResult> {
    let s = polys.len();
    if s > 6 {
        return Err(Error::TooManyPolys(s));
    }
    if p0.is_zero() {
        return Err(Error::ZeroP0);
    }
    let m = taq(&Poly::one(), p0)?;
    let m_u = u64::try_from(m).map_err(|_| Error::Internal("negative root count".into()))?;
    if m == 0 {
        return Ok(SignDetResult { m: 0, rows: Vec::new() });
    }
    if s == 0 {
        let rows = vec![Row { signs: Vec::new(), count: m_u }];
        return Ok(SignDetResult { m: m_u, rows });
    }

    let mut conds: Vec<Vec<Sign>> = vec![Vec::new()];
    let mut degs: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..s {
        conds = conds
            .into_iter()
            .flat_map(|c| {
                Sign::ALL.into_iter().map(move |b| {
                    let mut c = c.clone();
                    c.push(b);
                    c
                })
            })
            .collect();
        degs = degs
            .into_iter()
            .flat_map(|d| {
                (0..3u8).map(move |e| {
                    let mut d = d.clone();
                    d.push(e);
                    d
                })
            })
            .collect();
    }
    let sigma = SignList::new(conds.into_iter().map(SignCond::new).collect())?;
    let degs: Vec<MultiDeg> = degs.into_iter().map(MultiDeg::new).collect();
    let matrix: Matrix = mat_dense(&degs, &sigma)?;
    let t = products_for_ada(&degs, polys, p0)?
        .iter()
        .map(|q| taq(q, p0).map(|v| Rat::from_integer(BigInt::from(v))))
        .collect::<Result<Vec<_>>>()?;
    let c = matrix.solve(&t)?;

    let mut rows = Vec::new();
    for (cond, v) in sigma.iter().zip(&c) {
        let n = count_from_rat(v)?;
        if n > 0 {
            rows.push(Row {
                signs: cond.signs().to_vec(),
                count: n,
            });
        }
    }
    let total: u64 = rows.iter().map(|r| r.count).sum();
    if total != m_u {
        return Err(Error::Internal(format!("counts sum to {total}, expected {m_u}")));
    }
    Ok(SignDetResult { m: m_u, rows })
}
