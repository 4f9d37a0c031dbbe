//! Seeded random inputs for benchmarks, self-tests and property tests.

use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::{rat, Poly};
use crate::signcond::{SignCond, SignList};
use crate::tarski::{taq, Sign};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Integer coefficients uniform in `[-bound, bound]`, degree at most `degree`.
pub fn random_poly<R: Rng>(rng: &mut R, degree: usize, bound: i64) -> Poly {
    let coeffs: Vec<i64> = (0..=degree).map(|_| rng.gen_range(-bound..=bound)).collect();
    Poly::from_ints(&coeffs)
}

/// Like [`random_poly`] but with a nonzero leading coefficient, so the
/// degree is exactly `degree`.
pub fn random_poly_exact<R: Rng>(rng: &mut R, degree: usize, bound: i64) -> Poly {
    let mut coeffs: Vec<i64> = (0..degree).map(|_| rng.gen_range(-bound..=bound)).collect();
    let mut lead = 0;
    while lead == 0 {
        lead = rng.gen_range(-bound.max(1)..=bound.max(1));
    }
    coeffs.push(lead);
    Poly::from_ints(&coeffs)
}

#[derive(Debug, Clone)]
pub struct RandomInstance {
    pub p0: Poly,
    pub polys: Vec<Poly>,
}

/// Uniform coefficients; `P0` has degree exactly `degree` and is redrawn
/// until it has at least one real root.
pub fn uniform_instance<R: Rng>(rng: &mut R, degree: usize, num_polys: usize, bound: i64) -> RandomInstance {
    let degree = degree.max(1);
    let p0 = loop {
        let p0 = random_poly_exact(rng, degree, bound);
        if taq(&Poly::one(), &p0).unwrap_or(0) > 0 {
            break p0;
        }
    };
    let polys = (0..num_polys).map(|_| random_poly(rng, degree, bound)).collect();
    RandomInstance { p0, polys }
}

fn within(p: &Poly, degree: usize, bound: i64) -> bool {
    p.degree().unwrap_or(0) <= degree && p.coeffs().iter().all(|c| c.abs() <= rat(bound))
}

/// Instances with several rational roots in `P0` and some `P_i` sharing a
/// factor with it, so that zero signs and repeated roots occur. Degrees stay
/// at most `max_degree` and coefficients within `bound`.
pub fn structured_instance<R: Rng>(
    rng: &mut R,
    max_degree: usize,
    num_polys: usize,
    bound: i64,
) -> RandomInstance {
    let max_degree = max_degree.max(1);
    let (p0, roots) = loop {
        let k = rng.gen_range(1..=max_degree.min(4));
        let mut roots = Vec::with_capacity(k);
        let mut p0 = Poly::one();
        for _ in 0..k {
            let c = rng.gen_range(-3i64..=3);
            roots.push(c);
            p0 = &p0 * &Poly::from_ints(&[-c, 1]);
        }
        let rest_deg = rng.gen_range(0..=max_degree - k);
        let rest = random_poly_exact(rng, rest_deg, 3);
        let p0 = &p0 * &rest;
        if within(&p0, max_degree, bound) {
            break (p0, roots);
        }
    };
    let polys = (0..num_polys)
        .map(|_| match rng.gen_range(0..3) {
            0 => random_poly(rng, max_degree, bound),
            1 => {
                let d = rng.gen_range(0..=2);
                random_poly(rng, d, 3)
            }
            _ => loop {
                let c = *roots.choose(rng).expect("at least one root");
                let d = rng.gen_range(0..max_degree);
                let other = random_poly(rng, d, 3);
                let q = &Poly::from_ints(&[-c, 1]) * &other;
                if within(&q, max_degree, bound) {
                    break q;
                }
            },
        })
        .collect();
    RandomInstance { p0, polys }
}

/// Distinct sign conditions of length `len`, sorted; about `target` of them
/// (fewer when `3^len` is smaller or duplicates are drawn).
pub fn random_sign_list<R: Rng>(rng: &mut R, len: usize, target: usize) -> SignList {
    let conds: Vec<SignCond> = (0..target)
        .map(|_| SignCond::new((0..len).map(|_| *Sign::ALL.choose(rng).unwrap()).collect()))
        .collect();
    SignList::from_unsorted(conds).expect("equal lengths")
}

/// Integer vector with entries in `[-bound, bound]`.
pub fn random_ints<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(-bound..=bound)).collect()
}
