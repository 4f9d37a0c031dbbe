//! Signed remainder sequences and Tarski queries.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Infinity, Poly, Rat};

/// A sign in `{0, 1, -1}`.
///
/// The derived ordering is `Zero < Pos < Neg`, which is the order used for
/// sign conditions; it is not the numeric order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Zero,
    Pos,
    Neg,
}

impl Sign {
    pub const ALL: [Sign; 3] = [Sign::Zero, Sign::Pos, Sign::Neg];

    pub fn of(x: &Rat) -> Sign {
        match x.cmp(&Rat::zero()) {
            Ordering::Less => Sign::Neg,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Pos,
        }
    }

    pub fn of_i64(x: i64) -> Sign {
        match x.signum() {
            -1 => Sign::Neg,
            0 => Sign::Zero,
            _ => Sign::Pos,
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Zero => 0,
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn from_i8(v: i8) -> Option<Sign> {
        match v {
            0 => Some(Sign::Zero),
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Zero => Sign::Zero,
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    /// `self^e` with `0^0 = 1`.
    pub fn pow(self, e: u8) -> i8 {
        if e == 0 {
            1
        } else if e % 2 == 0 {
            self.to_i8().abs()
        } else {
            self.to_i8()
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_i8())
    }
}

/// `p, q, -rem(p, q), ...` with every term from the third on divided by its
/// positive content.
#[derive(Debug, Clone)]
pub struct SignedRemSeq {
    pub polys: Vec<Poly>,
    /// Positive factor removed from each term; one for the first two.
    pub factors: Vec<Rat>,
}

impl SignedRemSeq {
    pub fn signs_at(&self, x: &Rat) -> Vec<Sign> {
        self.polys.iter().map(|p| p.sign_at(x)).collect()
    }

    pub fn signs_at_inf(&self, end: Infinity) -> Vec<Sign> {
        self.polys.iter().map(|p| p.sign_at_inf(end)).collect()
    }

    pub fn variations_at(&self, x: &Rat) -> usize {
        sign_variations(&self.signs_at(x))
    }

    pub fn variations_at_inf(&self, end: Infinity) -> usize {
        sign_variations(&self.signs_at_inf(end))
    }
}

pub fn signed_rem_seq(p: &Poly, q: &Poly) -> Result<SignedRemSeq> {
    if p.is_zero() {
        return Err(Error::ZeroP0);
    }
    let mut polys = vec![p.clone()];
    let mut factors = vec![Rat::one()];
    if q.is_zero() {
        return Ok(SignedRemSeq { polys, factors });
    }
    polys.push(q.clone());
    factors.push(Rat::one());
    loop {
        let n = polys.len();
        let next = polys[n - 2].rem(&polys[n - 1])?.neg();
        if next.is_zero() {
            break;
        }
        let c = next.content();
        polys.push(next.scale(&c.recip()));
        factors.push(c);
    }
    Ok(SignedRemSeq { polys, factors })
}

/// Sign changes after dropping zeros.
pub fn sign_variations(signs: &[Sign]) -> usize {
    let mut last = None;
    let mut count = 0;
    for &s in signs {
        if s == Sign::Zero {
            continue;
        }
        if last.is_some_and(|l| l != s) {
            count += 1;
        }
        last = Some(s);
    }
    count
}

/// `TaQ(q, Zer(p0))`: the number of distinct real roots of `p0` where `q`
/// is positive minus the number where it is negative.
///
/// Uses the signed remainder sequence of `p0` and `p0' q mod p0`; reducing
/// modulo `p0` leaves the Cauchy index unchanged.
pub fn taq(q: &Poly, p0: &Poly) -> Result<i64> {
    if p0.is_zero() {
        return Err(Error::ZeroP0);
    }
    if q.is_zero() {
        return Ok(0);
    }
    let second = p0.derivative().mul(q).rem(p0)?;
    let seq = signed_rem_seq(p0, &second)?;
    let minus = seq.variations_at_inf(Infinity::MinusInf) as i64;
    let plus = seq.variations_at_inf(Infinity::PlusInf) as i64;
    Ok(minus - plus)
}

/// Number of distinct real roots of `p0` in `(a, b)`; neither endpoint may
/// be a root.
pub fn count_roots_in(p0: &Poly, a: &Rat, b: &Rat) -> Result<usize> {
    if p0.is_zero() {
        return Err(Error::ZeroP0);
    }
    if a >= b {
        return Err(bad_interval(a, b, "lower end not below upper end"));
    }
    if p0.eval(a).is_zero() || p0.eval(b).is_zero() {
        return Err(bad_interval(a, b, "endpoint is a root"));
    }
    let seq = signed_rem_seq(p0, &p0.derivative())?;
    let va = seq.variations_at(a);
    let vb = seq.variations_at(b);
    va.checked_sub(vb)
        .ok_or_else(|| Error::Internal("negative Sturm count".into()))
}

pub(crate) fn bad_interval(a: &Rat, b: &Rat, reason: &'static str) -> Error {
    Error::BadInterval {
        lo: a.to_string(),
        hi: b.to_string(),
        reason,
    }
}
