//! Dense univariate polynomials over an exact coefficient ring.

use std::fmt::{self, Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact coefficient ring: `BigInt`, `BigRational`, `i64`, ...
///
/// Division `/` is only ever applied where the quotient is exact.
pub trait Coefficient: Clone + PartialEq + Debug + Display + Num + Signed + Neg<Output = Self> {}

impl<C> Coefficient for C where C: Clone + PartialEq + Debug + Display + Num + Signed + Neg<Output = C> {}

/// Polynomial with coefficients stored lowest degree first and no trailing
/// zeros; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> Polynomial<C> {
    /// Build from coefficients, constant term first.
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Build from coefficients, leading coefficient first.
    pub fn from_leading_first(mut coeffs: Vec<C>) -> Self {
        coeffs.reverse();
        Self::new(coeffs)
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// `x`.
    pub fn x() -> Self {
        Self::new(vec![C::zero(), C::one()])
    }

    /// Monic polynomial `prod (x - root)`.
    pub fn from_roots(roots: &[C]) -> Self {
        roots.iter().fold(Self::constant(C::one()), |acc, r| {
            acc.mul(&Self::new(vec![-r.clone(), C::one()]))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Coefficients, constant term first.
    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn leading_first(&self) -> Vec<C> {
        self.coeffs.iter().rev().cloned().collect()
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn leading(&self) -> C {
        self.coeffs.last().cloned().unwrap_or_else(C::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn ensure_monic(&self) -> Result<()> {
        if self.is_monic() {
            Ok(())
        } else {
            Err(Error::NonMonic)
        }
    }

    pub fn eval(&self, x: &C) -> C {
        self.coeffs.iter().rev().fold(C::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        let mut k = C::zero();
        for c in self.coeffs.iter() {
            if !k.is_zero() {
                out.push(c.clone() * k.clone());
            }
            k = k + C::one();
        }
        Self::new(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Divide every coefficient by `c`; exact only when `c` divides them all.
    pub fn div_scalar(&self, c: &C) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() / c.clone()).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C::zero(); k];
        out.extend(self.coeffs.iter().cloned());
        Self::new(out)
    }

    /// `p(x + a)`.
    pub fn taylor_shift(&self, a: &C) -> Self {
        let lin = Self::new(vec![a.clone(), C::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc.mul(&lin).add(&Self::constant(c.clone())))
    }

    /// Quotient and remainder. Requires the leading coefficient of `divisor`
    /// to divide exactly at every step (always true over a field or for a
    /// monic divisor).
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let db = divisor.degree();
        let lb = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![C::zero(); rem.len() - db];
        for i in (0..quot.len()).rev() {
            let c = rem[i + db].clone() / lb.clone();
            if !c.is_zero() {
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] = rem[i + j].clone() - c.clone() * b.clone();
                }
            }
            quot[i] = c;
        }
        rem.truncate(db);
        (Self::new(quot), Self::new(rem))
    }

    /// Remainder multiplied by a positive constant: `|lc(b)|^e a = q b + r`.
    ///
    /// Unlike the classical pseudo-remainder this never flips the sign of
    /// the remainder, so it can drive Sturm sequences over integer rings.
    pub fn sign_preserving_rem(&self, b: &Self) -> Self {
        assert!(!b.is_zero(), "division by zero polynomial");
        let db = b.degree();
        let lb = b.leading();
        let abs_lb = lb.abs();
        let sgn_lb = lb.signum();
        let mut r = self.clone();
        while !r.is_zero() && r.degree() >= db {
            let shift = r.degree() - db;
            let lr = r.leading();
            r = r.scale(&abs_lb).sub(&b.scale(&(sgn_lb.clone() * lr)).shift_up(shift));
        }
        r
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }
}

impl<C: Coefficient> Neg for Polynomial<C> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Polynomial<BigInt> {
    /// Gcd of the coefficients (non-negative).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divide out the (positive) content.
    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            self.clone()
        } else {
            self.div_scalar(&c)
        }
    }

    /// Greatest common divisor, primitive with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.sign_preserving_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        if a.leading().is_negative() {
            -a
        } else {
            a
        }
    }

    /// Square-free part `f / gcd(f, f')`, primitive.
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.primitive_part();
        }
        // exact over Q; rescale back to Z
        let (q, r) = self.to_rational().div_rem(&g.to_rational());
        debug_assert!(r.is_zero());
        Self::from_rational_primitive(&q)
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }

    pub fn to_rational(&self) -> Polynomial<BigRational> {
        self.map(|c| BigRational::from_integer(c.clone()))
    }

    /// Clear denominators and divide out the content.
    pub fn from_rational_primitive(p: &Polynomial<BigRational>) -> Self {
        let den = p.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints = p.map(|c| (c * BigRational::from_integer(den.clone())).to_integer());
        let ints = ints.primitive_part();
        if ints.leading().is_negative() {
            -ints
        } else {
            ints
        }
    }

    /// `f(x)` evaluated in floating point.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + big_to_f64(c))
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(big_to_f64).collect()
    }

    /// Trace (sum of roots) of a monic polynomial: `-c_{n-1}`.
    pub fn trace(&self) -> BigInt {
        if self.degree() == 0 {
            BigInt::zero()
        } else {
            -self.coeff(self.degree() - 1)
        }
    }
}

pub(crate) fn big_to_f64(c: &BigInt) -> f64 {
    num_traits::ToPrimitive::to_f64(c).unwrap_or(if c.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

impl<C: Coefficient> Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// Human-readable form, e.g. `x^3 - 6x^2 + 11x - 6`.
impl<C: Coefficient> Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> Polynomial<BigInt> {
        Polynomial::from_leading_first(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn arithmetic_and_display() {
        let f = ip(&[1, -6, 11, -6]);
        assert_eq!(f.degree(), 3);
        assert_eq!(f.to_string(), "x^3 - 6x^2 + 11x - 6");
        assert_eq!(f, Polynomial::from_roots(&[1, 2, 3].map(BigInt::from)));
        assert_eq!(f.derivative(), ip(&[3, -12, 11]));
        assert_eq!(f.eval(&BigInt::from(4)), BigInt::from(6));
        assert_eq!(f.trace(), BigInt::from(6));
        let (q, r) = f.div_rem(&ip(&[1, -1]));
        assert_eq!(q, ip(&[1, -5, 6]));
        assert!(r.is_zero());
    }

    #[test]
    fn taylor_shift_moves_roots() {
        let f = ip(&[1, -3, 2]);
        // roots 1,2 -> 0,1
        assert_eq!(f.taylor_shift(&BigInt::from(1)), ip(&[1, -1, 0]));
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = ip(&[1, -2, 1]).mul(&ip(&[1, 0, 1]));
        let b = ip(&[1, -1]).mul(&ip(&[2, 1]));
        assert_eq!(a.gcd(&b), ip(&[1, -1]));
        assert!(!a.is_squarefree());
        assert_eq!(a.squarefree_part(), ip(&[1, -1]).mul(&ip(&[1, 0, 1])));
        assert!(ip(&[1, -3, 1]).is_squarefree());
    }

    #[test]
    fn sign_preserving_rem_is_positive_multiple() {
        let a = ip(&[1, 0, 0, -2]);
        let b = ip(&[-3, 1, 1]);
        let r = a.sign_preserving_rem(&b);
        let (_, exact) = a.to_rational().div_rem(&b.to_rational());
        let ratio = r.to_rational().coeff(0) / exact.coeff(0);
        assert!(ratio.is_positive());
        assert_eq!(exact.scale(&ratio), r.to_rational());
    }
}
