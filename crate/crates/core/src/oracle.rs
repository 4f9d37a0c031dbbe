//! Brute-force ground truth: isolate the real roots of `P0` by Sturm
//! bisection and read off the sign of every polynomial at every root.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::driver::{Row, SignDetResult};
use crate::error::{Error, Result};
use crate::poly::{ratio, Poly, Rat};
use crate::tarski::{bad_interval, count_roots_in, Sign};

/// Either an open interval `(lo, hi)` holding exactly one distinct root, or
/// the rational root `lo = hi` itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolInterval {
    pub lo: Rat,
    pub hi: Rat,
    pub exact: bool,
}

impl IsolInterval {
    fn point(x: Rat) -> Self {
        IsolInterval {
            lo: x.clone(),
            hi: x,
            exact: true,
        }
    }

    fn open(lo: Rat, hi: Rat) -> Self {
        IsolInterval { lo, hi, exact: false }
    }

    pub fn contains(&self, x: &Rat) -> bool {
        if self.exact {
            *x == self.lo
        } else {
            self.lo < *x && *x < self.hi
        }
    }
}

fn midpoint(a: &Rat, b: &Rat) -> Rat {
    (a + b) * ratio(1, 2)
}

/// One isolating interval per distinct real root, in increasing order.
pub fn isolate_roots(p0: &Poly) -> Result<Vec<IsolInterval>> {
    let sqf = p0.squarefree_part()?;
    let mut out = Vec::new();
    if sqf.degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    let b = sqf.root_bound();
    isolate_in(&sqf, -b.clone(), b, &mut out)?;
    Ok(out)
}

/// `g` is squarefree and nonzero at both ends.
fn isolate_in(g: &Poly, lo: Rat, hi: Rat, out: &mut Vec<IsolInterval>) -> Result<()> {
    match count_roots_in(g, &lo, &hi)? {
        0 => Ok(()),
        1 => {
            out.push(IsolInterval::open(lo, hi));
            Ok(())
        }
        _ => {
            let mid = midpoint(&lo, &hi);
            if g.eval(&mid).is_zero() {
                // step off mid until the gap holds no other root
                let mut eps = (&hi - &lo) * ratio(1, 4);
                loop {
                    let (a, b) = (&mid - &eps, &mid + &eps);
                    if !g.eval(&a).is_zero() && !g.eval(&b).is_zero() && count_roots_in(g, &a, &b)? == 1 {
                        isolate_in(g, lo, a, out)?;
                        out.push(IsolInterval::point(mid));
                        return isolate_in(g, b, hi, out);
                    }
                    eps = eps * ratio(1, 2);
                }
            } else {
                isolate_in(g, lo, mid.clone(), out)?;
                isolate_in(g, mid, hi, out)
            }
        }
    }
}

/// Exact sign of `q` at the root of `p0` isolated by `iv`.
pub fn sign_at_root(q: &Poly, p0: &Poly, iv: &IsolInterval) -> Result<Sign> {
    if iv.exact {
        if iv.lo != iv.hi || !p0.eval(&iv.lo).is_zero() {
            return Err(bad_interval(&iv.lo, &iv.hi, "exact point is not a root"));
        }
        return Ok(q.sign_at(&iv.lo));
    }
    let sqf = p0.squarefree_part()?;
    if count_roots_in(&sqf, &iv.lo, &iv.hi)? != 1 {
        return Err(bad_interval(&iv.lo, &iv.hi, "does not isolate a single root"));
    }
    if q.is_zero() {
        return Ok(Sign::Zero);
    }
    let g = sqf.gcd(q)?;
    if g.degree().unwrap_or(0) > 0 && count_roots_in(&g, &iv.lo, &iv.hi)? > 0 {
        return Ok(Sign::Zero);
    }
    let (mut lo, mut hi) = (iv.lo.clone(), iv.hi.clone());
    loop {
        let (ql, qh) = (q.eval(&lo), q.eval(&hi));
        if !ql.is_zero() && !qh.is_zero() && count_roots_in(q, &lo, &hi)? == 0 {
            return Ok(Sign::of(&ql));
        }
        let mid = midpoint(&lo, &hi);
        if sqf.eval(&mid).is_zero() {
            return Ok(q.sign_at(&mid));
        }
        if count_roots_in(&sqf, &lo, &mid)? == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
}

/// Feasible sign conditions with multiplicities, read directly at the
/// roots.
pub fn signdet_bruteforce(p0: &Poly, polys: &[Poly]) -> Result<SignDetResult> {
    if p0.is_zero() {
        return Err(Error::ZeroP0);
    }
    let roots = isolate_roots(p0)?;
    let mut tally: BTreeMap<Vec<Sign>, u64> = BTreeMap::new();
    for iv in &roots {
        let signs = polys
            .iter()
            .map(|q| sign_at_root(q, p0, iv))
            .collect::<Result<Vec<_>>>()?;
        *tally.entry(signs).or_default() += 1;
    }
    Ok(SignDetResult {
        m: roots.len() as u64,
        rows: tally
            .into_iter()
            .map(|(signs, count)| Row { signs, count })
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use crate::tarski::taq;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn isolate_examples() {
        let ivs = isolate_roots(&p(&[-2, 0, 1])).unwrap();
        assert_eq!(ivs.len(), 2);
        let q = p(&[-2, 0, 1]);
        for iv in &ivs {
            assert_ne!(q.sign_at(&iv.lo), q.sign_at(&iv.hi));
        }
        assert!(ivs[0].hi <= rat(0) && rat(0) <= ivs[1].lo);

        let ivs = isolate_roots(&p(&[0, -1, 0, 1])).unwrap();
        assert_eq!(ivs.len(), 3);
        for (iv, x) in ivs.iter().zip([-1, 0, 1]) {
            assert!(iv.contains(&rat(x)), "{iv:?} misses {x}");
        }

        assert!(isolate_roots(&p(&[1, 0, 1])).unwrap().is_empty());
        assert!(isolate_roots(&p(&[3])).unwrap().is_empty());
        assert_eq!(isolate_roots(&Poly::zero()), Err(Error::ZeroP0));
    }

    #[test]
    fn sign_at_root_examples() {
        let p0 = p(&[-2, 0, 1]);
        let ivs = isolate_roots(&p0).unwrap();
        assert_eq!(sign_at_root(&p(&[-1, 1]), &p0, &ivs[1]).unwrap(), Sign::Pos);
        assert_eq!(sign_at_root(&p(&[-1, 1]), &p0, &ivs[0]).unwrap(), Sign::Neg);
        for iv in &ivs {
            assert_eq!(sign_at_root(&p0, &p0, iv).unwrap(), Sign::Zero);
        }
        let cubic = p(&[0, -1, 0, 1]);
        let ivs = isolate_roots(&cubic).unwrap();
        assert_eq!(sign_at_root(&p(&[0, 1]), &cubic, &ivs[0]).unwrap(), Sign::Neg);
        // a q with a root very close to sqrt(2)
        let close = Poly::new(vec![-ratio(1414, 1000), rat(1)]);
        let ivs = isolate_roots(&p0).unwrap();
        assert_eq!(sign_at_root(&close, &p0, &ivs[1]).unwrap(), Sign::Pos);
    }

    #[test]
    fn sign_at_root_rejects_bad_interval() {
        let p0 = p(&[-2, 0, 1]);
        let wide = IsolInterval::open(rat(-3), rat(3));
        assert!(sign_at_root(&p(&[1]), &p0, &wide).is_err());
        let fake = IsolInterval::point(rat(1));
        assert!(sign_at_root(&p(&[1]), &p0, &fake).is_err());
    }

    #[test]
    fn bruteforce_examples() {
        let cubic = p(&[0, -1, 0, 1]);
        let r = signdet_bruteforce(&cubic, &[p(&[0, 1]), p(&[2, 1])]).unwrap();
        let rows: Vec<(Vec<i8>, u64)> = r
            .rows
            .iter()
            .map(|row| (row.signs.iter().map(|s| s.to_i8()).collect(), row.count))
            .collect();
        assert_eq!(rows, vec![(vec![0, 1], 1), (vec![1, 1], 1), (vec![-1, 1], 1)]);

        let r = signdet_bruteforce(&cubic, &[]).unwrap();
        assert_eq!(r.rows, vec![Row { signs: vec![], count: 3 }]);

        let dbl = &p(&[-1, 1]) * &p(&[-1, 1]);
        let r = signdet_bruteforce(&dbl, &[p(&[-1, 1])]).unwrap();
        assert_eq!(r.m, 1);
        assert_eq!(r.rows, vec![Row { signs: vec![Sign::Zero], count: 1 }]);
    }

    proptest! {
        #[test]
        fn isolation_matches_known_roots(
            roots in prop::collection::btree_set(-12i64..=12, 0..5),
            den in 1i64..=4,
            twice in any::<bool>(),
            q in prop::collection::vec(-5i64..=5, 0..4),
        ) {
            let roots: Vec<Rat> = roots.into_iter().map(|n| ratio(n, den)).collect();
            let mut p0 = p(&[1, 1, 1]); // no real roots
            for (k, x) in roots.iter().enumerate() {
                p0 = &p0 * &Poly::linear_root(x.clone());
                if twice && k == 0 {
                    p0 = &p0 * &Poly::linear_root(x.clone());
                }
            }
            let ivs = isolate_roots(&p0).unwrap();
            prop_assert_eq!(ivs.len(), roots.len());
            prop_assert_eq!(ivs.len() as i64, taq(&Poly::one(), &p0).unwrap());
            let q = Poly::from_ints(&q);
            for (iv, x) in ivs.iter().zip(&roots) {
                prop_assert!(iv.contains(x));
                prop_assert_eq!(sign_at_root(&q, &p0, iv).unwrap(), q.sign_at(x));
            }
            let r = signdet_bruteforce(&p0, &[q]).unwrap();
            prop_assert_eq!(r.rows.iter().map(|row| row.count).sum::<u64>(), roots.len() as u64);
        }
    }
}
