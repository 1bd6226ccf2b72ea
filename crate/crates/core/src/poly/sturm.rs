//! Sturm sequences with exact sign evaluation at dyadic rationals.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::polynomial::Polynomial;

/// Dyadic rational `num / 2^exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dyadic {
    pub num: BigInt,
    pub exp: u32,
}

impl Dyadic {
    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self { num: n.into(), exp: 0 }
    }

    /// Midpoint of two dyadics.
    pub fn midpoint(a: &Dyadic, b: &Dyadic) -> Dyadic {
        let e = a.exp.max(b.exp);
        let an = &a.num << (e - a.exp);
        let bn = &b.num << (e - b.exp);
        Dyadic { num: an + bn, exp: e + 1 }.reduced()
    }

    fn reduced(mut self) -> Self {
        while self.exp > 0 && !self.num.bit(0) {
            self.num >>= 1u32;
            self.exp -= 1;
        }
        if self.num.is_zero() {
            self.exp = 0;
        }
        self
    }

    pub fn to_f64(&self) -> f64 {
        super::polynomial::big_to_f64(&self.num) / 2f64.powi(self.exp as i32)
    }

    /// Width `b - a` as f64.
    pub fn width(a: &Dyadic, b: &Dyadic) -> f64 {
        b.to_f64() - a.to_f64()
    }
}

/// Sign of `p(d)`, computed exactly as the sign of `2^(exp*deg) p(d)`.
pub fn sign_at(p: &Polynomial<BigInt>, d: &Dyadic) -> Ordering {
    if p.is_zero() {
        return Ordering::Equal;
    }
    let deg = p.degree();
    let cs = p.coeffs();
    let mut acc = cs[deg].clone();
    for (i, c) in cs.iter().enumerate().take(deg).rev() {
        acc = acc * &d.num + (c << (d.exp as usize * (deg - i)));
    }
    acc.sign_ordering()
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

/// Sturm chain of a square-free integer polynomial.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<Polynomial<BigInt>>,
}

impl SturmSequence {
    /// Builds the chain of the square-free part of `f`, so counts refer to
    /// distinct real roots.
    pub fn new(f: &Polynomial<BigInt>) -> Self {
        let f = f.squarefree_part();
        let mut chain = vec![f.clone()];
        let d = f.derivative();
        if !d.is_zero() {
            chain.push(d.primitive_part());
        }
        while chain.len() >= 2 {
            let n = chain.len();
            let r = chain[n - 2].sign_preserving_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(-r.primitive_part());
        }
        Self { chain }
    }

    pub fn base(&self) -> &Polynomial<BigInt> {
        &self.chain[0]
    }

    fn variations<I: Iterator<Item = Ordering>>(signs: I) -> usize {
        let mut last = Ordering::Equal;
        let mut v = 0;
        for s in signs.filter(|s| *s != Ordering::Equal) {
            if last != Ordering::Equal && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations_at(&self, d: &Dyadic) -> usize {
        Self::variations(self.chain.iter().map(|p| sign_at(p, d)))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        Self::variations(self.chain.iter().map(|p| p.leading().sign_ordering()))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        Self::variations(self.chain.iter().map(|p| {
            let s = p.leading().sign_ordering();
            if p.degree() % 2 == 1 {
                s.reverse()
            } else {
                s
            }
        }))
    }

    /// Number of distinct real roots.
    pub fn count_real(&self) -> usize {
        self.variations_at_neg_inf() - self.variations_at_pos_inf()
    }

    /// Distinct roots in the half-open interval `(a, b]`.
    pub fn count_in(&self, a: &Dyadic, b: &Dyadic) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    /// Distinct roots in `(a, +inf)`.
    pub fn count_above(&self, a: &Dyadic) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at_pos_inf())
    }
}

/// Power of two strictly above every root modulus (Cauchy bound).
pub fn root_bound(f: &Polynomial<BigInt>) -> Dyadic {
    let lc = f.leading().abs();
    let max = f.coeffs()[..f.degree()].iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero);
    // 1 + max/|lc| <= 1 + ceil(max/|lc|)
    let q: BigInt = (&max + &lc - BigInt::one()) / &lc + BigInt::one();
    let bits = q.bits() as u32;
    Dyadic::integer(BigInt::one() << bits)
}
