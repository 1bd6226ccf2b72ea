//! Monic solutions of `f'' - (lambda x - mu) f' + lambda n f = 0`, the
//! discriminant-maximizing configurations under fixed `S_1, S_2`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::polynomial::Polynomial;
use super::resultant::{discriminant, discriminant_rational_via_integers};
use crate::combinatorics::{hyperfactorial, pairs};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct HermiteFamily {
    pub n: usize,
    pub lambda: BigRational,
    pub mu: BigRational,
    /// `c_0..c_n`, with `c_n = 1`.
    pub poly: Polynomial<BigRational>,
}

/// Exact identities checked on a [`HermiteFamily`].
#[derive(Clone, Debug, PartialEq)]
pub struct HermiteReport {
    pub family: HermiteFamily,
    /// Discriminant through the cleared-denominator integer polynomial.
    pub discriminant: BigRational,
    /// Discriminant by direct rational elimination (second route).
    pub discriminant_direct: BigRational,
    /// `(n-1) c_{n-1}^2 - 2n c_{n-2}`.
    pub energy: BigRational,
    /// `Delta lambda^binom(n,2) = Y(n)`.
    pub discriminant_identity: bool,
    /// `E lambda = binom(n,2) 2n`.
    pub energy_identity: bool,
    /// `c_{n-1} = -n mu / lambda` and `c_{n-2} = binom(n,2)(mu^2 - lambda)/lambda^2`.
    pub top_coefficients_identity: bool,
}

impl HermiteReport {
    pub fn all_identities_hold(&self) -> bool {
        self.discriminant_identity && self.energy_identity && self.top_coefficients_identity
    }
}

/// Generate the family member from the recurrence
/// `lambda (n-k) c_k = -mu (k+1) c_{k+1} - (k+2)(k+1) c_{k+2}` downward from `c_n = 1`.
pub fn hermite_family(n: usize, lambda: BigRational, mu: BigRational) -> Result<HermiteFamily> {
    if !lambda.is_positive() {
        return Err(Error::invalid("lambda must be > 0"));
    }
    if n < 2 {
        return Err(Error::invalid("n must be >= 2"));
    }
    let mut c = vec![BigRational::zero(); n + 3];
    c[n] = BigRational::one();
    for k in (0..n).rev() {
        let k1 = BigRational::from_integer(BigInt::from(k + 1));
        let k2 = BigRational::from_integer(BigInt::from(k + 2));
        let rhs = -(mu.clone() * k1.clone() * c[k + 1].clone()) - k2 * k1 * c[k + 2].clone();
        c[k] = rhs / (lambda.clone() * BigRational::from_integer(BigInt::from(n - k)));
    }
    c.truncate(n + 1);
    Ok(HermiteFamily { n, lambda, mu, poly: Polynomial::new(c) })
}

impl HermiteFamily {
    /// Residual polynomial of the differential equation; zero for a valid member.
    pub fn ode_residual(&self) -> Polynomial<BigRational> {
        let f = &self.poly;
        let d1 = f.derivative();
        let d2 = d1.derivative();
        let lin = Polynomial::new(vec![-self.mu.clone(), self.lambda.clone()]);
        let ln = self.lambda.clone() * BigRational::from_integer(BigInt::from(self.n));
        d2.sub(&lin.mul(&d1)).add(&f.scale(&ln))
    }

    pub fn report(&self) -> HermiteReport {
        let n = self.n;
        let b = pairs(n);
        let f = &self.poly;
        let disc = discriminant_rational_via_integers(f);
        let disc_direct = discriminant(f);
        let cn1 = f.coeff(n - 1);
        let cn2 = f.coeff(n - 2);
        let nr = BigRational::from_integer(BigInt::from(n));
        let br = BigRational::from_integer(BigInt::from(b));
        let energy = (nr.clone() - BigRational::one()) * cn1.clone() * cn1.clone()
            - BigRational::from_integer(BigInt::from(2 * n)) * cn2.clone();
        let y = BigRational::from_integer(BigInt::from(hyperfactorial(n as u32).expect("n >= 2")));
        let lam_b = num_traits::pow(self.lambda.clone(), b);
        let discriminant_identity = disc.clone() * lam_b.clone() == y && disc_direct == disc;
        let energy_identity =
            energy.clone() * self.lambda.clone() == br.clone() * BigRational::from_integer(BigInt::from(2 * n));
        let top = cn1 == -(nr * self.mu.clone()) / self.lambda.clone()
            && cn2
                == br * (self.mu.clone() * self.mu.clone() - self.lambda.clone())
                    / (self.lambda.clone() * self.lambda.clone());
        HermiteReport {
            family: self.clone(),
            discriminant: disc,
            discriminant_direct: disc_direct,
            energy,
            discriminant_identity,
            energy_identity,
            top_coefficients_identity: top,
        }
    }
}
