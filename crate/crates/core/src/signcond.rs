//! Sign conditions, the adapted list of multidegrees, and the block
//! structure of the associated sign matrix.
//!
//! A [`SignCond`] stores the sign of the most recently added polynomial in
//! coordinate 0. Lists of conditions are kept sorted in the lexicographic
//! order induced by `0 < 1 < -1` on each coordinate.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::One;

use crate::dense::Matrix;
use crate::error::{Error, Result};
use crate::poly::{ratio, Rat};
use crate::tarski::Sign;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignCond(Vec<Sign>);

impl SignCond {
    pub fn new(signs: Vec<Sign>) -> Self {
        SignCond(signs)
    }

    /// Builds a condition from `{-1, 0, 1}` values; panics on anything else.
    pub fn from_i8(values: &[i8]) -> Self {
        SignCond(
            values
                .iter()
                .map(|&v| Sign::from_i8(v).expect("sign must be -1, 0 or 1"))
                .collect(),
        )
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Sign {
        self.0[0]
    }

    /// `(b, rest...)`
    pub fn prepend(b: Sign, rest: &SignCond) -> SignCond {
        let mut v = Vec::with_capacity(rest.len() + 1);
        v.push(b);
        v.extend_from_slice(&rest.0);
        SignCond(v)
    }

    pub fn project(&self) -> Result<SignCond> {
        project(self)
    }

    /// `σ^α = ∏ σ_k^{α_k}` with `0^0 = 1`.
    pub fn power(&self, alpha: &MultiDeg) -> i8 {
        debug_assert_eq!(self.len(), alpha.len());
        let mut acc = 1i8;
        for (s, &e) in self.0.iter().zip(&alpha.0) {
            acc *= s.pow(e);
            if acc == 0 {
                return 0;
            }
        }
        acc
    }
}

impl fmt::Debug for SignCond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<i8> = self.0.iter().map(|s| s.to_i8()).collect();
        write!(f, "{v:?}")
    }
}

pub fn lex_cmp(a: &SignCond, b: &SignCond) -> Result<Ordering> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    Ok(a.cmp(b))
}

/// Drops coordinate 0.
pub fn project(sigma: &SignCond) -> Result<SignCond> {
    if sigma.len() < 2 {
        return Err(Error::ProjectTooShort(sigma.len()));
    }
    Ok(SignCond(sigma.0[1..].to_vec()))
}

/// Strictly increasing list of sign conditions of a common length.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SignList(Vec<SignCond>);

impl SignList {
    pub fn new(conds: Vec<SignCond>) -> Result<Self> {
        if let Some(first) = conds.first() {
            for (k, c) in conds.iter().enumerate() {
                if c.len() != first.len() {
                    return Err(Error::LengthMismatch {
                        expected: first.len(),
                        got: c.len(),
                    });
                }
                if k > 0 && conds[k - 1] >= *c {
                    return Err(Error::NotSorted(k));
                }
            }
        }
        Ok(SignList(conds))
    }

    /// Sorts and deduplicates.
    pub fn from_unsorted(mut conds: Vec<SignCond>) -> Result<Self> {
        conds.sort();
        conds.dedup();
        SignList::new(conds)
    }

    pub fn from_i8_rows(rows: &[&[i8]]) -> Result<Self> {
        SignList::new(rows.iter().map(|r| SignCond::from_i8(r)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conds(&self) -> &[SignCond] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, SignCond> {
        self.0.iter()
    }

    /// Length of the conditions, `None` for an empty list.
    pub fn cond_len(&self) -> Option<usize> {
        self.0.first().map(SignCond::len)
    }

    pub fn into_conds(self) -> Vec<SignCond> {
        self.0
    }
}

impl std::ops::Index<usize> for SignList {
    type Output = SignCond;
    fn index(&self, k: usize) -> &SignCond {
        &self.0[k]
    }
}

impl fmt::Debug for SignList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

/// Exponent vector over `{0, 1, 2}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiDeg(Vec<u8>);

impl MultiDeg {
    pub fn new(degs: Vec<u8>) -> Self {
        debug_assert!(degs.iter().all(|&d| d <= 2));
        MultiDeg(degs)
    }

    pub fn degs(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn prepend(d: u8, rest: &MultiDeg) -> MultiDeg {
        let mut v = Vec::with_capacity(rest.len() + 1);
        v.push(d);
        v.extend_from_slice(&rest.0);
        MultiDeg(v)
    }
}

impl fmt::Debug for MultiDeg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

pub type AdaList = Vec<MultiDeg>;

/// The set `B` of first signs under which a projected condition occurs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ext {
    Zero,
    Pos,
    Neg,
    ZeroPos,
    ZeroNeg,
    PosNeg,
    All,
}

impl Ext {
    fn from_present(zero: bool, pos: bool, neg: bool) -> Ext {
        match (zero, pos, neg) {
            (true, false, false) => Ext::Zero,
            (false, true, false) => Ext::Pos,
            (false, false, true) => Ext::Neg,
            (true, true, false) => Ext::ZeroPos,
            (true, false, true) => Ext::ZeroNeg,
            (false, true, true) => Ext::PosNeg,
            (true, true, true) => Ext::All,
            (false, false, false) => unreachable!("empty extension set"),
        }
    }

    pub fn contains(self, s: Sign) -> bool {
        match s {
            Sign::Zero => matches!(self, Ext::Zero | Ext::ZeroPos | Ext::ZeroNeg | Ext::All),
            Sign::Pos => matches!(self, Ext::Pos | Ext::ZeroPos | Ext::PosNeg | Ext::All),
            Sign::Neg => matches!(self, Ext::Neg | Ext::ZeroNeg | Ext::PosNeg | Ext::All),
        }
    }

    pub fn size(self) -> usize {
        Sign::ALL.iter().filter(|&&s| self.contains(s)).count()
    }

    /// First sign of the member that goes to the first group.
    pub fn first_group_sign(self) -> Sign {
        match self {
            Ext::Pos => Sign::Pos,
            Ext::Neg | Ext::PosNeg => Sign::Neg,
            _ => Sign::Zero,
        }
    }

    /// First sign of the member that goes to the second group, if any.
    pub fn second_group_sign(self) -> Option<Sign> {
        match self {
            Ext::ZeroPos | Ext::PosNeg | Ext::All => Some(Sign::Pos),
            Ext::ZeroNeg => Some(Sign::Neg),
            _ => None,
        }
    }
}

/// One of the twelve sublists `Σ_B^b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Sublist {
    pub ext: Ext,
    pub first: Sign,
}

pub const SUBLISTS: [Sublist; 12] = [
    Sublist { ext: Ext::Zero, first: Sign::Zero },
    Sublist { ext: Ext::Pos, first: Sign::Pos },
    Sublist { ext: Ext::Neg, first: Sign::Neg },
    Sublist { ext: Ext::ZeroPos, first: Sign::Zero },
    Sublist { ext: Ext::ZeroPos, first: Sign::Pos },
    Sublist { ext: Ext::ZeroNeg, first: Sign::Zero },
    Sublist { ext: Ext::ZeroNeg, first: Sign::Neg },
    Sublist { ext: Ext::PosNeg, first: Sign::Pos },
    Sublist { ext: Ext::PosNeg, first: Sign::Neg },
    Sublist { ext: Ext::All, first: Sign::Zero },
    Sublist { ext: Ext::All, first: Sign::Pos },
    Sublist { ext: Ext::All, first: Sign::Neg },
];

fn sublist_slot(ext: Ext, first: Sign) -> usize {
    SUBLISTS
        .iter()
        .position(|s| s.ext == ext && s.first == first)
        .expect("sign outside its extension set")
}

/// Index structure over a sign list whose conditions have length ≥ 2.
///
/// All index vectors refer to positions in the original list; nothing is
/// reordered. Inside each group the members are ordered by projection, so
/// `hat1`, `hat2`, `hat3` are sorted.
#[derive(Debug, Clone)]
pub struct PartitionView {
    sublists: [Vec<usize>; 12],
    pub group1: Vec<usize>,
    pub group2: Vec<usize>,
    pub group3: Vec<usize>,
    /// Extension set of each member of group 1 (resp. 2).
    pub ext1: Vec<Ext>,
    pub ext2: Vec<Ext>,
    pub hat1: SignList,
    pub hat2: SignList,
    pub hat3: SignList,
    /// Position in group 1 of the member sharing the projection of each
    /// group-2 member, and so on.
    pub g2_in_g1: Vec<usize>,
    pub g3_in_g1: Vec<usize>,
    pub g3_in_g2: Vec<usize>,
}

impl PartitionView {
    pub fn sublist(&self, ext: Ext, first: Sign) -> &[usize] {
        &self.sublists[sublist_slot(ext, first)]
    }

    pub fn sublists(&self) -> impl Iterator<Item = (Sublist, &[usize])> {
        SUBLISTS.iter().copied().zip(self.sublists.iter().map(Vec::as_slice))
    }

    /// `r_B`, the common length of the sublists sharing extension set `B`.
    pub fn ext_count(&self, ext: Ext) -> usize {
        self.ext1.iter().filter(|&&e| e == ext).count()
    }

    /// Group 1, then group 2, then group 3.
    pub fn grouped_order(&self) -> Vec<usize> {
        let mut v = self.group1.clone();
        v.extend_from_slice(&self.group2);
        v.extend_from_slice(&self.group3);
        v
    }
}

pub fn partition(sigma: &SignList) -> Result<PartitionView> {
    let len = sigma.cond_len().unwrap_or(0);
    if len < 2 {
        return Err(Error::ProjectTooShort(len));
    }
    let mut by_hat: BTreeMap<SignCond, [Option<usize>; 3]> = BTreeMap::new();
    for (k, cond) in sigma.iter().enumerate() {
        let slot = match cond.first() {
            Sign::Zero => 0,
            Sign::Pos => 1,
            Sign::Neg => 2,
        };
        by_hat.entry(cond.project()?).or_default()[slot] = Some(k);
    }

    let mut sublists: [Vec<usize>; 12] = Default::default();
    let (mut group1, mut group2, mut group3) = (Vec::new(), Vec::new(), Vec::new());
    let (mut ext1, mut ext2) = (Vec::new(), Vec::new());
    let (mut hat1, mut hat2, mut hat3) = (Vec::new(), Vec::new(), Vec::new());
    let (mut g2_in_g1, mut g3_in_g1, mut g3_in_g2) = (Vec::new(), Vec::new(), Vec::new());

    for (hat, members) in by_hat {
        let ext = Ext::from_present(members[0].is_some(), members[1].is_some(), members[2].is_some());
        for (slot, sign) in Sign::ALL.iter().enumerate() {
            if let Some(k) = members[slot] {
                sublists[sublist_slot(ext, *sign)].push(k);
            }
        }
        let pick = |s: Sign| members[s as usize].expect("member present");
        let pos1 = group1.len();
        group1.push(pick(ext.first_group_sign()));
        ext1.push(ext);
        hat1.push(hat.clone());
        if let Some(s2) = ext.second_group_sign() {
            let pos2 = group2.len();
            group2.push(pick(s2));
            ext2.push(ext);
            hat2.push(hat.clone());
            g2_in_g1.push(pos1);
            if ext == Ext::All {
                group3.push(pick(Sign::Neg));
                hat3.push(hat);
                g3_in_g1.push(pos1);
                g3_in_g2.push(pos2);
            }
        }
    }
    // within a sublist the first sign is fixed, so projection order is the
    // original order
    for list in &mut sublists {
        list.sort_unstable();
    }

    Ok(PartitionView {
        sublists,
        group1,
        group2,
        group3,
        ext1,
        ext2,
        hat1: SignList(hat1),
        hat2: SignList(hat2),
        hat3: SignList(hat3),
        g2_in_g1,
        g3_in_g1,
        g3_in_g2,
    })
}

/// Recursive decomposition of a sign list: its adapted list together with
/// the partitions and sub-plans of every level.
#[derive(Debug, Clone)]
pub struct LevelPlan {
    pub sigma: SignList,
    pub ada: AdaList,
    pub kind: PlanKind,
}

#[derive(Debug, Clone)]
pub enum PlanKind {
    /// Empty list.
    Empty,
    /// Conditions of length one.
    Base,
    Split {
        part: PartitionView,
        /// Plans for `hat1`, `hat2`, `hat3`.
        children: Box<[LevelPlan; 3]>,
    },
}

impl LevelPlan {
    pub fn build(sigma: &SignList) -> Result<LevelPlan> {
        match sigma.cond_len() {
            None => Ok(LevelPlan {
                sigma: sigma.clone(),
                ada: Vec::new(),
                kind: PlanKind::Empty,
            }),
            Some(0) => Err(Error::ProjectTooShort(0)),
            Some(1) => {
                let ada = match sigma.len() {
                    1 => vec![MultiDeg(vec![0])],
                    2 => vec![MultiDeg(vec![0]), MultiDeg(vec![1])],
                    3 => vec![MultiDeg(vec![0]), MultiDeg(vec![1]), MultiDeg(vec![2])],
                    _ => return Err(Error::BadBaseCase(format!("{sigma:?}"))),
                };
                Ok(LevelPlan {
                    sigma: sigma.clone(),
                    ada,
                    kind: PlanKind::Base,
                })
            }
            Some(_) => {
                let part = partition(sigma)?;
                let children = Box::new([
                    LevelPlan::build(&part.hat1)?,
                    LevelPlan::build(&part.hat2)?,
                    LevelPlan::build(&part.hat3)?,
                ]);
                let mut ada = Vec::with_capacity(sigma.len());
                for (d, child) in children.iter().enumerate() {
                    ada.extend(child.ada.iter().map(|a| MultiDeg::prepend(d as u8, a)));
                }
                Ok(LevelPlan {
                    sigma: sigma.clone(),
                    ada,
                    kind: PlanKind::Split { part, children },
                })
            }
        }
    }
}

/// The adapted list of multidegrees, `|ada(Σ)| = |Σ|`.
pub fn ada(sigma: &SignList) -> Result<AdaList> {
    LevelPlan::build(sigma).map(|p| p.ada)
}

/// `Mat(A, Σ)` with entries `σ^α`.
pub fn mat(a: &[MultiDeg], sigma: &SignList) -> Result<Vec<Vec<i8>>> {
    let n = sigma.cond_len();
    for alpha in a {
        if let Some(n) = n {
            if alpha.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    got: alpha.len(),
                });
            }
        }
    }
    Ok(a.iter()
        .map(|alpha| sigma.iter().map(|s| s.power(alpha)).collect())
        .collect())
}

pub fn mat_dense(a: &[MultiDeg], sigma: &SignList) -> Result<Matrix> {
    let m = mat(a, sigma)?;
    let rows: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|&v| v as i64).collect()).collect();
    if rows.is_empty() {
        return Ok(Matrix::zeros(0, sigma.len()));
    }
    Ok(Matrix::from_i64_rows(&rows))
}

/// All `(b, σ̂)` with `b` allowed, in lexicographic order.
pub fn extend_candidates(feasible_hat: &SignList, allowed_first: &BTreeSet<Sign>) -> SignList {
    let mut out = Vec::with_capacity(feasible_hat.len() * allowed_first.len());
    for &b in allowed_first {
        for hat in feasible_hat.iter() {
            out.push(SignCond::prepend(b, hat));
        }
    }
    SignList(out)
}

/// `Mat(Ada(Σ), Σ)^{-1}`, computed through the factorization at every level
/// with condition length ≥ 2 and by elimination at the bottom.
pub fn inverse_by_factors(sigma: &SignList) -> Result<Matrix> {
    if sigma.cond_len().unwrap_or(1) < 2 {
        let m = mat_dense(&ada(sigma)?, sigma)?;
        return m
            .inverse()
            .ok_or_else(|| Error::Internal("singular base matrix".into()));
    }
    let n = factors(sigma)?;
    let mut prod = Matrix::identity(sigma.len());
    for f in n.iter() {
        prod = f.mul(&prod);
    }
    let order = partition(sigma)?.grouped_order();
    let mut out = Matrix::zeros(sigma.len(), sigma.len());
    for (j, &src) in order.iter().enumerate() {
        for c in 0..sigma.len() {
            out.set(src, c, prod.get(j, c).clone());
        }
    }
    Ok(out)
}

/// `N1, ..., N9` in the grouped basis (group 1, group 2, group 3 for both
/// rows and columns).
pub fn factors(sigma: &SignList) -> Result<[Matrix; 9]> {
    let part = partition(sigma)?;
    let (r1, r2, r3) = (part.group1.len(), part.group2.len(), part.group3.len());
    let r = r1 + r2 + r3;
    let ada2 = ada(&part.hat2)?;
    let ada3 = ada(&part.hat3)?;

    let block_sign = |rows: &[MultiDeg], lead: u8, cols: &[usize]| -> Matrix {
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (i, alpha) in rows.iter().enumerate() {
            let alpha = MultiDeg::prepend(lead, alpha);
            for (j, &k) in cols.iter().enumerate() {
                m.set(i, j, Rat::from_integer(sigma[k].power(&alpha).into()));
            }
        }
        m
    };
    let x = block_sign(&ada2, 1, &part.group1);
    let y = block_sign(&ada3, 2, &part.group1);
    let mut z_tilde = block_sign(&ada3, 2, &part.group2);
    for (q, &e) in part.ext2.iter().enumerate() {
        if e == Ext::PosNeg {
            for u in 0..r3 {
                z_tilde.set(u, q, Rat::from_integer(0.into()));
            }
        }
    }

    let minus_one = -Rat::one();
    let with_blocks = |blocks: &[(usize, usize, Matrix)]| -> Matrix {
        let mut m = Matrix::identity(r);
        for (r0, c0, b) in blocks {
            m.put(*r0, *c0, b);
        }
        m
    };

    let n1 = with_blocks(&[(0, 0, inverse_by_factors(&part.hat1)?)]);
    let n2 = with_blocks(&[(r1, 0, x.scale(&minus_one)), (r1 + r2, 0, y.scale(&minus_one))]);
    let n3 = with_blocks(&[(r1, r1, inverse_by_factors(&part.hat2)?)]);
    let mut i2_tilde = Matrix::identity(r2);
    for (q, &e) in part.ext2.iter().enumerate() {
        match e {
            Ext::ZeroNeg => i2_tilde.set(q, q, minus_one.clone()),
            Ext::PosNeg => i2_tilde.set(q, q, ratio(1, 2)),
            _ => {}
        }
    }
    let n4 = with_blocks(&[(r1, r1, i2_tilde)]);
    let n5 = with_blocks(&[(r1 + r2, r1, z_tilde.scale(&minus_one))]);
    let n6 = with_blocks(&[(r1 + r2, r1 + r2, inverse_by_factors(&part.hat3)?)]);
    let n7 = with_blocks(&[(r1 + r2, r1 + r2, Matrix::identity(r3).scale(&ratio(1, 2)))]);
    let mut i2_prime = Matrix::zeros(r2, r3);
    for (u, &q) in part.g3_in_g2.iter().enumerate() {
        i2_prime.set(q, u, Rat::one());
    }
    let n8 = with_blocks(&[(r1, r1 + r2, i2_prime)]);
    let mut i1_prime = Matrix::zeros(r1, r2);
    for (q, &k) in part.g2_in_g1.iter().enumerate() {
        i1_prime.set(k, q, minus_one.clone());
    }
    let mut i1_second = Matrix::zeros(r1, r3);
    for (u, &k) in part.g3_in_g1.iter().enumerate() {
        i1_second.set(k, u, minus_one.clone());
    }
    let n9 = with_blocks(&[(0, r1, i1_prime), (0, r1 + r2, i1_second)]);

    Ok([n1, n2, n3, n4, n5, n6, n7, n8, n9])
}
