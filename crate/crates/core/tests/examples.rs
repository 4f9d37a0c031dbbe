use std::collections::BTreeSet;

use signdet::driver::{products_for_ada, single_poly_feasible};
use signdet::oracle::{isolate_roots, sign_at_root, signdet_bruteforce};
use signdet::poly::{rat, ratio, Infinity};
use signdet::signcond::{ada, extend_candidates, factors, lex_cmp, mat, partition, Ext};
use signdet::solver::{after_step_state, auxlinsolve, base_solve, OpCounter};
use signdet::tarski::{count_roots_in, sign_variations, signed_rem_seq, taq};
use signdet::{signdet_incremental, signdet_naive, MultiDeg, Poly, Rat, Sign, SignCond, SignList};

fn p(c: &[i64]) -> Poly {
    Poly::from_ints(c)
}

fn sl(rows: &[&[i8]]) -> SignList {
    SignList::from_i8_rows(rows).unwrap()
}

fn rv(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rat(x)).collect()
}

fn md(v: &[u8]) -> MultiDeg {
    MultiDeg::new(v.to_vec())
}

fn rows(r: &signdet::SignDetResult) -> Vec<(Vec<i8>, u64)> {
    r.rows
        .iter()
        .map(|row| (row.signs.iter().map(|s| s.to_i8()).collect(), row.count))
        .collect()
}

fn cubic() -> Poly {
    p(&[0, -1, 0, 1])
}

#[test]
fn poly_arithmetic() {
    assert_eq!(&p(&[1, 1]) + &p(&[1, -1]), p(&[2]));
    assert!((&cubic() - &cubic()).is_zero());
    assert_eq!(&p(&[1, 1]) * &p(&[1, -1]), p(&[1, 0, -1]));
    assert_eq!(&p(&[0, 1]) * &p(&[0, 0, 1]), p(&[0, 0, 0, 1]));
    assert_eq!(cubic().derivative(), p(&[-1, 0, 3]));
    assert!(p(&[5]).derivative().is_zero());
    assert!(Poly::zero().derivative().is_zero());
}

#[test]
fn poly_division_and_gcd() {
    let x2m1 = p(&[-1, 0, 1]);
    assert!(cubic().rem(&x2m1).unwrap().is_zero());
    assert_eq!(p(&[0, 0, 0, 1]).rem(&x2m1).unwrap(), p(&[0, 1]));
    assert_eq!(x2m1.rem(&p(&[0, 2])).unwrap(), p(&[-1]));
    assert_eq!(p(&[0, 0, 0, 0, 1]).mod_reduce(&cubic()).unwrap(), p(&[0, 0, 1]));
    assert_eq!(p(&[0, 1]).mod_reduce(&cubic()).unwrap(), p(&[0, 1]));
    assert_eq!(x2m1.gcd(&p(&[-1, 1])).unwrap(), p(&[-1, 1]));
    assert_eq!(p(&[1, 0, 1]).gcd(&p(&[0, 1])).unwrap(), p(&[1]));
    assert_eq!(cubic().gcd(&x2m1).unwrap(), x2m1);
}

#[test]
fn poly_evaluation() {
    assert_eq!(cubic().eval(&rat(2)), rat(6));
    assert_eq!(p(&[7, 3, 1]).eval(&rat(0)), rat(7));
    assert_eq!(p(&[-2, 0, 1]).eval(&ratio(3, 2)), ratio(1, 4));
    assert_eq!(cubic().sign_at_inf(Infinity::MinusInf), Sign::Neg);
    assert_eq!(p(&[-1, 0, 1]).sign_at_inf(Infinity::MinusInf), Sign::Pos);
    assert_eq!(Poly::zero().sign_at_inf(Infinity::PlusInf), Sign::Zero);
}

#[test]
fn remainder_sequences_and_queries() {
    let seq = signed_rem_seq(&p(&[-1, 0, 1]), &p(&[0, 2])).unwrap();
    assert_eq!(seq.polys.len(), 3);
    assert_eq!(seq.polys[2].degree(), Some(0));
    assert_eq!(signed_rem_seq(&p(&[0, 1]), &Poly::zero()).unwrap().polys.len(), 1);
    let seq = signed_rem_seq(&cubic(), &p(&[-1, 0, 3])).unwrap();
    let degs: Vec<_> = seq.polys.iter().map(|q| q.degree()).collect();
    assert_eq!(degs, vec![Some(3), Some(2), Some(1), Some(0)]);

    use Sign::*;
    assert_eq!(sign_variations(&[Pos, Neg, Pos]), 2);
    assert_eq!(sign_variations(&[Pos, Zero, Pos]), 0);
    assert_eq!(sign_variations(&[Pos, Zero, Neg, Neg, Pos]), 2);

    assert_eq!(taq(&p(&[1]), &p(&[-1, 0, 1])).unwrap(), 2);
    assert_eq!(taq(&p(&[0, 1]), &cubic()).unwrap(), 0);
    assert_eq!(taq(&p(&[0, 0, 1]), &cubic()).unwrap(), 2);
    assert_eq!(taq(&p(&[0, 1]), &p(&[4])).unwrap(), 0);

    assert_eq!(count_roots_in(&p(&[-2, 0, 1]), &rat(1), &rat(2)).unwrap(), 1);
    assert_eq!(count_roots_in(&p(&[-2, 0, 1]), &rat(3), &rat(4)).unwrap(), 0);
    assert_eq!(count_roots_in(&cubic(), &rat(-2), &rat(2)).unwrap(), 3);
}

#[test]
fn sign_conditions() {
    let c = SignCond::from_i8;
    assert!(lex_cmp(&c(&[0, 1]), &c(&[1, 0])).unwrap().is_lt());
    assert!(lex_cmp(&c(&[1, -1]), &c(&[1, 0])).unwrap().is_gt());
    assert!(lex_cmp(&c(&[1, -1]), &c(&[1, -1])).unwrap().is_eq());
    assert_eq!(c(&[1, 0, -1]).project().unwrap(), c(&[0, -1]));
    assert_eq!(c(&[0, 1]).project().unwrap(), c(&[1]));
    assert_eq!(c(&[-1, -1]).project().unwrap(), c(&[-1]));
}

#[test]
fn partition_four_by_four() {
    let sigma = sl(&[&[0, 0], &[0, 1], &[1, 0], &[-1, 1]]);
    let part = partition(&sigma).unwrap();
    assert_eq!(part.sublist(Ext::ZeroPos, Sign::Zero), &[0]);
    assert_eq!(part.sublist(Ext::ZeroPos, Sign::Pos), &[2]);
    assert_eq!(part.sublist(Ext::ZeroNeg, Sign::Zero), &[1]);
    assert_eq!(part.sublist(Ext::ZeroNeg, Sign::Neg), &[3]);
    assert_eq!(part.group1, vec![0, 1]);
    assert_eq!(part.group2, vec![2, 3]);
    assert!(part.group3.is_empty());
    let nonempty = part.sublists().filter(|(_, v)| !v.is_empty()).count();
    assert_eq!(nonempty, 4);
}

#[test]
fn partition_full_and_pos_neg() {
    let part = partition(&sl(&[&[0, 1], &[1, 1], &[-1, 1]])).unwrap();
    assert_eq!((part.group1.clone(), part.group2.clone(), part.group3.clone()), (vec![0], vec![1], vec![2]));
    let part = partition(&sl(&[&[1, -1], &[-1, -1]])).unwrap();
    assert_eq!(part.group1, vec![1]);
    assert_eq!(part.group2, vec![0]);
}

#[test]
fn adapted_lists_and_matrices() {
    assert_eq!(ada(&sl(&[&[0], &[1], &[-1]])).unwrap(), vec![md(&[0]), md(&[1]), md(&[2])]);
    assert_eq!(ada(&sl(&[&[0]])).unwrap(), vec![md(&[0])]);
    let four = sl(&[&[0, 0], &[0, 1], &[1, 0], &[-1, 1]]);
    let a = ada(&four).unwrap();
    assert_eq!(a, vec![md(&[0, 0]), md(&[0, 1]), md(&[1, 0]), md(&[1, 1])]);

    assert_eq!(
        mat(&[md(&[0]), md(&[1]), md(&[2])], &sl(&[&[0], &[1], &[-1]])).unwrap(),
        vec![vec![1, 1, 1], vec![0, 1, -1], vec![0, 1, 1]]
    );
    assert_eq!(mat(&[md(&[0, 0])], &sl(&[&[-1, -1]])).unwrap(), vec![vec![1]]);
    let m = mat(&a, &four).unwrap();
    let order = partition(&four).unwrap().grouped_order();
    let grouped: Vec<Vec<i8>> = m.iter().map(|row| order.iter().map(|&k| row[k]).collect()).collect();
    assert_eq!(grouped, vec![vec![1, 1, 1, 1], vec![0, 1, 0, 1], vec![0, 0, 1, -1], vec![0, 0, 0, -1]]);
}

#[test]
fn degenerate_factors() {
    let n = factors(&sl(&[&[0, 0], &[0, 1], &[1, 0], &[-1, 1]])).unwrap();
    for k in [4, 5, 6, 7] {
        assert!(n[k].is_identity(), "N{} should be the identity", k + 1);
    }
    let n = factors(&sl(&[&[0, 0], &[1, 1], &[-1, -1]])).unwrap();
    assert!(!n[0].is_identity());
    for k in 1..9 {
        assert!(n[k].is_identity(), "N{} should be the identity", k + 1);
    }
}

#[test]
fn candidate_extension() {
    let hat = sl(&[&[0], &[1]]);
    let all: BTreeSet<Sign> = Sign::ALL.into_iter().collect();
    assert_eq!(
        extend_candidates(&hat, &all),
        sl(&[&[0, 0], &[0, 1], &[1, 0], &[1, 1], &[-1, 0], &[-1, 1]])
    );
    assert_eq!(extend_candidates(&hat, &BTreeSet::from([Sign::Pos])), sl(&[&[1, 0], &[1, 1]]));
    assert!(extend_candidates(&SignList::default(), &all).is_empty());
}

#[test]
fn solver_examples() {
    let mut k = OpCounter::new();
    assert_eq!(base_solve(&sl(&[&[0], &[1], &[-1]]), &rv(&[3, 0, 2]), &mut k).unwrap(), rv(&[1, 1, 1]));
    assert_eq!(base_solve(&sl(&[&[0]]), &rv(&[5]), &mut k).unwrap(), rv(&[5]));
    assert_eq!(base_solve(&sl(&[&[1], &[-1]]), &rv(&[2, 0]), &mut k).unwrap(), rv(&[1, 1]));

    let four = sl(&[&[0, 0], &[0, 1], &[1, 0], &[-1, 1]]);
    let t = rv(&[4, 2, 0, -1]);
    let mut k = OpCounter::new();
    assert_eq!(auxlinsolve(&four, &t, &mut k, false).unwrap(), rv(&[1, 1, 1, 1]));
    assert!(k.count() <= 32);
    let mut k = OpCounter::new();
    assert_eq!(auxlinsolve(&sl(&[&[0], &[1], &[-1]]), &rv(&[3, 0, 2]), &mut k, false).unwrap(), rv(&[1, 1, 1]));

    assert_eq!(after_step_state(&four, &t, 0, false).unwrap(), t);
    assert_eq!(after_step_state(&four, &t, 9, false).unwrap(), rv(&[1, 1, 1, 1]));
}

#[test]
fn pipeline_examples() {
    let sp = single_poly_feasible(&p(&[0, 1]), &cubic()).unwrap();
    assert_eq!(sp.counts, [1, 1, 1]);
    let sp = single_poly_feasible(&p(&[1, 0, 1]), &cubic()).unwrap();
    assert_eq!((sp.count(Sign::Pos), sp.feasible.len()), (3, 1));
    assert!(single_poly_feasible(&p(&[0, 1]), &p(&[1, 0, 1])).unwrap().feasible.is_empty());

    assert_eq!(products_for_ada(&[md(&[0, 0])], &[p(&[0, 1]), p(&[2, 1])], &cubic()).unwrap(), vec![p(&[1])]);
    assert_eq!(products_for_ada(&[md(&[2])], &[p(&[0, 0, 1])], &cubic()).unwrap(), vec![p(&[0, 0, 1])]);

    let r = signdet_incremental(&cubic(), &[p(&[0, 1])]).unwrap();
    assert_eq!((r.m, rows(&r)), (3, vec![(vec![0], 1), (vec![1], 1), (vec![-1], 1)]));
    let r = signdet_incremental(&cubic(), &[p(&[0, 1]), p(&[2, 1])]).unwrap();
    assert_eq!(rows(&r), vec![(vec![0, 1], 1), (vec![1, 1], 1), (vec![-1, 1], 1)]);
    let q = p(&[-2, 0, 1]);
    assert_eq!(rows(&signdet_incremental(&q, &[q.clone()]).unwrap()), vec![(vec![0], 2)]);

    assert_eq!(signdet_naive(&cubic(), &[p(&[0, 1])]).unwrap(), signdet_incremental(&cubic(), &[p(&[0, 1])]).unwrap());
    assert_eq!(rows(&signdet_naive(&cubic(), &[]).unwrap()), vec![(vec![], 3)]);
    assert!(signdet_naive(&p(&[1, 0, 1]), &[p(&[0, 1])]).unwrap().rows.is_empty());
}

#[test]
fn oracle_examples() {
    let q = p(&[-2, 0, 1]);
    let ivs = isolate_roots(&q).unwrap();
    assert_eq!(ivs.len(), 2);
    assert_eq!(sign_at_root(&p(&[-1, 1]), &q, &ivs[1]).unwrap(), Sign::Pos);
    assert!(ivs.iter().all(|iv| sign_at_root(&q, &q, iv).unwrap() == Sign::Zero));
    let ivs = isolate_roots(&cubic()).unwrap();
    assert_eq!(sign_at_root(&p(&[0, 1]), &cubic(), &ivs[0]).unwrap(), Sign::Neg);
    assert!(isolate_roots(&p(&[1, 0, 1])).unwrap().is_empty());

    let r = signdet_bruteforce(&cubic(), &[p(&[0, 1]), p(&[2, 1])]).unwrap();
    assert_eq!(rows(&r), vec![(vec![0, 1], 1), (vec![1, 1], 1), (vec![-1, 1], 1)]);
    assert_eq!(rows(&signdet_bruteforce(&cubic(), &[]).unwrap()), vec![(vec![], 3)]);
    let dbl = p(&[1, -2, 1]);
    assert_eq!(rows(&signdet_bruteforce(&dbl, &[p(&[-1, 1])]).unwrap()), vec![(vec![0], 1)]);
}
