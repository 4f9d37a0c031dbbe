//! Recursive in-place solver for `Mat(Ada(Σ), Σ) c = t`.
//!
//! Every rational `+`, `-`, `*`, `/` performed on the solution vector is
//! counted. Products against blocks of the sign matrix are evaluated entry
//! by entry: a `±1` entry costs one signed addition and a zero entry costs
//! nothing. The total never exceeds `2r²` for a list of length `r`.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{rat, ratio, Rat};
use crate::signcond::{Ext, LevelPlan, MultiDeg, PartitionView, PlanKind, SignList};

/// Number of rational operations performed so far.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounter {
    count: u64,
}

impl OpCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn reset(&mut self) {
        self.count = 0;
    }

    fn add(&mut self, n: u64) {
        self.count += n;
    }
}

/// Operations spent in each top-level step `0..=9`, or in the base case.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StepTrace {
    pub base: u64,
    pub steps: [u64; 10],
}

impl StepTrace {
    pub fn total(&self) -> u64 {
        self.base + self.steps.iter().sum::<u64>()
    }
}

pub fn op_budget(r: usize) -> u64 {
    2 * (r as u64) * (r as u64)
}

/// The five sign lists of length-one conditions, with their matrices and
/// precomputed inverses.
pub fn base_cases() -> Vec<(SignList, Vec<Vec<Rat>>)> {
    base_table()
        .into_iter()
        .map(|(rows, inv)| (SignList::from_i8_rows(&rows).expect("valid base list"), inv))
        .collect()
}

fn base_table() -> Vec<(Vec<&'static [i8]>, Vec<Vec<Rat>>)> {
    let h = || ratio(1, 2);
    let mh = || ratio(-1, 2);
    vec![
        (vec![&[0]], vec![vec![rat(1)]]),
        (vec![&[0], &[1]], vec![vec![rat(1), rat(-1)], vec![rat(0), rat(1)]]),
        (vec![&[0], &[-1]], vec![vec![rat(1), rat(1)], vec![rat(0), rat(-1)]]),
        (vec![&[1], &[-1]], vec![vec![h(), h()], vec![h(), mh()]]),
        (
            vec![&[0], &[1], &[-1]],
            vec![
                vec![rat(1), rat(0), rat(-1)],
                vec![rat(0), h(), h()],
                vec![rat(0), mh(), h()],
            ],
        ),
    ]
}

fn base_inverse(sigma: &SignList) -> Result<Vec<Vec<Rat>>> {
    // every single condition has matrix [[1]]
    if sigma.len() == 1 && sigma.cond_len() == Some(1) {
        return Ok(vec![vec![rat(1)]]);
    }
    base_table()
        .into_iter()
        .find(|(rows, _)| {
            rows.len() == sigma.len()
                && rows
                    .iter()
                    .zip(sigma.iter())
                    .all(|(r, s)| s.len() == 1 && s.first().to_i8() == r[0])
        })
        .map(|(_, inv)| inv)
        .ok_or_else(|| Error::BadBaseCase(format!("{sigma:?}")))
}

/// Solves a system whose conditions have length one, multiplying by the
/// stored inverse. Costs at most `r(2r - 1)` operations.
pub fn base_solve(sigma: &SignList, t: &[Rat], counter: &mut OpCounter) -> Result<Vec<Rat>> {
    if sigma.cond_len() != Some(1) {
        return Err(Error::BadBaseCase(format!("{sigma:?}")));
    }
    check_len(sigma.len(), t.len())?;
    let inv = base_inverse(sigma)?;
    let one = Rat::one();
    let minus_one = -Rat::one();
    let mut out = Vec::with_capacity(t.len());
    for row in &inv {
        let mut acc: Option<Rat> = None;
        for (a, x) in row.iter().zip(t) {
            if a.is_zero() {
                continue;
            }
            acc = Some(match acc {
                None => {
                    if *a == one {
                        x.clone()
                    } else {
                        counter.add(1);
                        if *a == minus_one {
                            -x
                        } else {
                            a * x
                        }
                    }
                }
                Some(acc) => {
                    if *a == one {
                        counter.add(1);
                        acc + x
                    } else if *a == minus_one {
                        counter.add(1);
                        acc - x
                    } else {
                        counter.add(2);
                        acc + a * x
                    }
                }
            });
        }
        out.push(acc.unwrap_or_else(Rat::zero));
    }
    Ok(out)
}

fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::LengthMismatch { expected, got });
    }
    Ok(())
}

/// Solves `Mat(Ada(Σ), Σ) c = t`; `t` follows the order of `Ada(Σ)` and the
/// result follows the order of `Σ`.
///
/// With `optimized`, the products of step 2 against the unique-extension
/// columns are formed once and shared between the second and third row
/// blocks.
pub fn auxlinsolve(
    sigma: &SignList,
    t: &[Rat],
    counter: &mut OpCounter,
    optimized: bool,
) -> Result<Vec<Rat>> {
    let plan = LevelPlan::build(sigma)?;
    solve_plan(&plan, t, counter, optimized)
}

pub fn auxlinsolve_traced(
    sigma: &SignList,
    t: &[Rat],
    optimized: bool,
) -> Result<(Vec<Rat>, StepTrace)> {
    let plan = LevelPlan::build(sigma)?;
    check_len(sigma.len(), t.len())?;
    let mut counter = OpCounter::new();
    let mut trace = StepTrace::default();
    let c = match &plan.kind {
        PlanKind::Empty => Vec::new(),
        PlanKind::Base => {
            let c = base_solve(sigma, t, &mut counter)?;
            trace.base = counter.count();
            c
        }
        PlanKind::Split { part, children } => {
            let mut ctx = Ctx {
                counter: &mut counter,
                optimized,
            };
            run_split(part, children, t, &mut ctx, 9, Some(&mut trace))?
        }
    };
    Ok((c, trace))
}

/// Solves with a prebuilt plan.
pub fn solve_plan(
    plan: &LevelPlan,
    t: &[Rat],
    counter: &mut OpCounter,
    optimized: bool,
) -> Result<Vec<Rat>> {
    let mut ctx = Ctx { counter, optimized };
    solve_level(plan, t, &mut ctx)
}

/// The working vector after step `j` (`0..=9`), listed group 1 first, then
/// group 2, then group 3. Requires conditions of length ≥ 2.
pub fn after_step_state(sigma: &SignList, t: &[Rat], j: usize, optimized: bool) -> Result<Vec<Rat>> {
    if j > 9 {
        return Err(Error::BadStep(j));
    }
    let plan = LevelPlan::build(sigma)?;
    check_len(sigma.len(), t.len())?;
    let PlanKind::Split { part, children } = &plan.kind else {
        return Err(Error::ProjectTooShort(sigma.cond_len().unwrap_or(0)));
    };
    let mut counter = OpCounter::new();
    let mut ctx = Ctx {
        counter: &mut counter,
        optimized,
    };
    let c = run_split(part, children, t, &mut ctx, j, None)?;
    Ok(part.grouped_order().into_iter().map(|k| c[k].clone()).collect())
}

struct Ctx<'a> {
    counter: &'a mut OpCounter,
    optimized: bool,
}

fn solve_level(plan: &LevelPlan, t: &[Rat], ctx: &mut Ctx<'_>) -> Result<Vec<Rat>> {
    check_len(plan.sigma.len(), t.len())?;
    match &plan.kind {
        PlanKind::Empty => Ok(Vec::new()),
        PlanKind::Base => base_solve(&plan.sigma, t, ctx.counter),
        PlanKind::Split { part, children } => run_split(part, children, t, ctx, 9, None),
    }
}

fn gather(c: &[Rat], idx: &[usize]) -> Vec<Rat> {
    idx.iter().map(|&k| c[k].clone()).collect()
}

fn scatter(c: &mut [Rat], idx: &[usize], values: Vec<Rat>) {
    for (&k, v) in idx.iter().zip(values) {
        c[k] = v;
    }
}

/// `target -= e * x` for `e = ±1`.
fn sub_signed(target: &mut Rat, e: i8, x: &Rat) {
    if e > 0 {
        *target -= x;
    } else {
        *target += x;
    }
}

/// Which of the three unique-extension column blocks a group-1 member
/// belongs to: `Σ_1`, `Σ_{-1}` or `Σ_{1,-1}^{-1}`.
fn nonzero_block(ext: Ext) -> Option<usize> {
    match ext {
        Ext::Pos => Some(0),
        Ext::Neg => Some(1),
        Ext::PosNeg => Some(2),
        _ => None,
    }
}

fn run_split(
    part: &PartitionView,
    children: &[LevelPlan; 3],
    t: &[Rat],
    ctx: &mut Ctx<'_>,
    stop: usize,
    mut trace: Option<&mut StepTrace>,
) -> Result<Vec<Rat>> {
    let (r1, r2, r3) = (part.group1.len(), part.group2.len(), part.group3.len());
    let r = r1 + r2 + r3;
    check_len(r, t.len())?;
    let [plan1, plan2, plan3] = children;
    let hat1 = plan1.sigma.conds();
    let hat2 = plan2.sigma.conds();
    let ada2: &[MultiDeg] = &plan2.ada;
    let ada3: &[MultiDeg] = &plan3.ada;
    let (g1, g2, g3) = (&part.group1, &part.group2, &part.group3);

    let mut mark = ctx.counter.count();
    let mut record = |step: usize, counter: &OpCounter, trace: &mut Option<&mut StepTrace>| {
        if let Some(tr) = trace.as_deref_mut() {
            tr.steps[step] += counter.count() - mark;
        }
        mark = counter.count();
    };

    // 0: load the right-hand side, row block k into group k
    let mut c = vec![Rat::zero(); r];
    scatter(&mut c, g1, t[..r1].to_vec());
    scatter(&mut c, g2, t[r1..r1 + r2].to_vec());
    scatter(&mut c, g3, t[r1 + r2..].to_vec());
    if stop == 0 {
        return Ok(c);
    }

    // 1
    let sol = solve_level(plan1, &gather(&c, g1), ctx)?;
    scatter(&mut c, g1, sol);
    record(1, ctx.counter, &mut trace);
    if stop == 1 {
        return Ok(c);
    }

    // 2: only group-1 members with a nonzero first sign contribute
    let cols: Vec<(usize, usize, i8)> = part
        .ext1
        .iter()
        .enumerate()
        .filter_map(|(k, &e)| nonzero_block(e).map(|blk| (k, blk, e.first_group_sign().to_i8())))
        .collect();
    if ctx.optimized && r3 > 0 {
        step2_shared(&mut c, part, hat1, ada2, ada3, &cols, ctx.counter)?;
    } else {
        for (q, alpha) in ada2.iter().enumerate() {
            for &(k, _, b) in &cols {
                let e = b * hat1[k].power(alpha);
                if e != 0 {
                    let x = c[g1[k]].clone();
                    sub_signed(&mut c[g2[q]], e, &x);
                    ctx.counter.add(1);
                }
            }
        }
        for (u, alpha) in ada3.iter().enumerate() {
            for &(k, _, _) in &cols {
                let e = hat1[k].power(alpha);
                if e != 0 {
                    let x = c[g1[k]].clone();
                    sub_signed(&mut c[g3[u]], e, &x);
                    ctx.counter.add(1);
                }
            }
        }
    }
    record(2, ctx.counter, &mut trace);
    if stop == 2 {
        return Ok(c);
    }

    // 3
    if r2 > 0 {
        let sol = solve_level(plan2, &gather(&c, g2), ctx)?;
        scatter(&mut c, g2, sol);
    }
    record(3, ctx.counter, &mut trace);
    if stop == 3 {
        return Ok(c);
    }

    // 4
    let half = ratio(1, 2);
    for (q, &e) in part.ext2.iter().enumerate() {
        match e {
            Ext::ZeroNeg => {
                let v = -&c[g2[q]];
                c[g2[q]] = v;
                ctx.counter.add(1);
            }
            Ext::PosNeg => {
                c[g2[q]] *= &half;
                ctx.counter.add(1);
            }
            _ => {}
        }
    }
    record(4, ctx.counter, &mut trace);
    if stop == 4 {
        return Ok(c);
    }

    // 5: columns Σ_{01}^1, Σ_{0-1}^{-1} and Σ_{01-1}^1; the first sign is
    // squared away
    if r3 > 0 {
        let zcols: Vec<usize> = part
            .ext2
            .iter()
            .enumerate()
            .filter(|(_, &e)| matches!(e, Ext::ZeroPos | Ext::ZeroNeg | Ext::All))
            .map(|(q, _)| q)
            .collect();
        for (u, alpha) in ada3.iter().enumerate() {
            for &q in &zcols {
                let e = hat2[q].power(alpha);
                if e != 0 {
                    let x = c[g2[q]].clone();
                    sub_signed(&mut c[g3[u]], e, &x);
                    ctx.counter.add(1);
                }
            }
        }
    }
    record(5, ctx.counter, &mut trace);
    if stop == 5 {
        return Ok(c);
    }

    // 6
    if r3 > 0 {
        let sol = solve_level(plan3, &gather(&c, g3), ctx)?;
        scatter(&mut c, g3, sol);
    }
    record(6, ctx.counter, &mut trace);
    if stop == 6 {
        return Ok(c);
    }

    // 7
    for &k in g3 {
        c[k] *= &half;
        ctx.counter.add(1);
    }
    record(7, ctx.counter, &mut trace);
    if stop == 7 {
        return Ok(c);
    }

    // 8
    for (u, &q) in part.g3_in_g2.iter().enumerate() {
        let x = c[g3[u]].clone();
        c[g2[q]] += x;
        ctx.counter.add(1);
    }
    record(8, ctx.counter, &mut trace);
    if stop == 8 {
        return Ok(c);
    }

    // 9: each group-1 member loses the entries sharing its projection
    for (q, &k) in part.g2_in_g1.iter().enumerate() {
        let x = c[g2[q]].clone();
        c[g1[k]] -= x;
        ctx.counter.add(1);
    }
    for (u, &k) in part.g3_in_g1.iter().enumerate() {
        let x = c[g3[u]].clone();
        c[g1[k]] -= x;
        ctx.counter.add(1);
    }
    record(9, ctx.counter, &mut trace);

    Ok(c)
}

/// Step 2 with the partial products `v, v', v''` computed once for the rows
/// of `1 × Ada(hat3)` and reused for the third block, whose entries equal
/// `v` and the negations of `v'`, `v''`.
fn step2_shared(
    c: &mut [Rat],
    part: &PartitionView,
    hat1: &[crate::signcond::SignCond],
    ada2: &[MultiDeg],
    ada3: &[MultiDeg],
    cols: &[(usize, usize, i8)],
    counter: &mut OpCounter,
) -> Result<()> {
    let (g1, g2, g3) = (&part.group1, &part.group2, &part.group3);
    let row_of: HashMap<&MultiDeg, usize> = ada2.iter().enumerate().map(|(q, a)| (a, q)).collect();
    let mut shared: Vec<Option<usize>> = vec![None; ada2.len()];
    for (u, alpha) in ada3.iter().enumerate() {
        let q = *row_of
            .get(alpha)
            .ok_or_else(|| Error::Internal("Ada(hat3) not contained in Ada(hat2)".into()))?;
        shared[q] = Some(u);
    }

    for (q, alpha) in ada2.iter().enumerate() {
        let Some(u) = shared[q] else {
            for &(k, _, b) in cols {
                let e = b * hat1[k].power(alpha);
                if e != 0 {
                    let x = c[g1[k]].clone();
                    sub_signed(&mut c[g2[q]], e, &x);
                    counter.add(1);
                }
            }
            continue;
        };
        for blk in 0..3 {
            // third-block entry = y_sign * second-block entry
            let y_sign: i8 = if blk == 0 { 1 } else { -1 };
            let mut terms = cols
                .iter()
                .filter(|&&(_, bb, _)| bb == blk)
                .filter_map(|&(k, _, b)| {
                    let e = b * hat1[k].power(alpha);
                    (e != 0).then_some((k, e))
                });
            let Some((k0, e0)) = terms.next() else {
                continue;
            };
            // acc = e0 * v_blk
            let mut acc = c[g1[k0]].clone();
            for (k, e) in terms {
                let x = &c[g1[k]];
                if e == e0 {
                    acc += x;
                } else {
                    acc -= x;
                }
                counter.add(1);
            }
            sub_signed(&mut c[g2[q]], e0, &acc);
            sub_signed(&mut c[g3[u]], e0 * y_sign, &acc);
            counter.add(2);
        }
    }
    Ok(())
}
