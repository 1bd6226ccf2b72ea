//! Energy/discriminant inequality checks on integer polynomials.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::diffsq::diffsq_poly;
use super::factor::{is_irreducible, MAX_IRREDUCIBILITY_DEGREE};
use super::polynomial::Polynomial;
use super::resultant::discriminant_exact;
use super::roots::is_totally_positive;
use super::sturm::SturmSequence;
use crate::combinatorics::{big_ln, hyperfactorial, log_hyperfactorial, pairs, power_sums_from_coeffs};
use crate::error::{Error, Result};

/// Everything known about one monic integer polynomial relevant to the
/// energy/discriminant inequality.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyReport {
    pub poly: Polynomial<BigInt>,
    pub all_real: bool,
    pub totally_positive: bool,
    /// `None` above the supported degree.
    pub irreducible: Option<bool>,
    pub s1: BigInt,
    pub s2: BigInt,
    /// `n S_2 - S_1^2`.
    pub energy: BigInt,
    pub discriminant: BigInt,
    /// `None` for degree < 2.
    pub diffsq_squarefree: Option<bool>,
    /// `binom(n,2) log(E / binom(n,2))`.
    pub thm2_lhs_log: f64,
    /// `binom(n,2) log(2n) - log Y(n) + log Delta`.
    pub thm2_rhs_log: f64,
    /// `lhs - rhs`; exactly `0.0` at certified equality.
    pub thm2_margin_log: f64,
    /// Decided in exact integer arithmetic.
    pub thm2_holds: bool,
    pub thm2_equality: bool,
    /// `lhs - log Delta`: margin of the plain AM-GM bound `(E/binom)^binom >= Delta`.
    pub edelta_margin_log: f64,
    /// `(n-1) S_2 < S_1^2 < n S_2`.
    pub hypothesis_holds: bool,
}

impl PolyReport {
    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    pub fn has_repeated_roots(&self) -> bool {
        self.discriminant.is_zero()
    }
}

/// Fill a [`PolyReport`] for a monic polynomial.
pub fn verify_theorem2(poly: &Polynomial<BigInt>) -> Result<PolyReport> {
    poly.ensure_monic()?;
    let n = poly.degree();
    if n < 1 {
        return Err(Error::invalid("polynomial must have degree >= 1"));
    }
    let sums = power_sums_from_coeffs(poly, 2)?;
    let (s1, s2) = (sums[0].clone(), sums[1].clone());
    let nb = BigInt::from(n);
    let energy = &nb * &s2 - &s1 * &s1;
    let discriminant = discriminant_exact(poly);
    let all_real = SturmSequence::new(poly).count_real() == poly.squarefree_part().degree();
    let totally_positive = is_totally_positive(poly);
    let irreducible = (n <= MAX_IRREDUCIBILITY_DEGREE).then(|| is_irreducible(poly)).transpose()?;
    let diffsq_squarefree = (n >= 2).then(|| diffsq_poly(poly).1);
    let hypothesis_holds = (&nb - 1) * &s2 < &s1 * &s1 && &s1 * &s1 < &nb * &s2;

    let b = pairs(n);
    let (lhs, rhs, holds, equality) = if b == 0 {
        (0.0, 0.0, true, true)
    } else {
        let bf = b as f64;
        let lhs = if energy.is_positive() {
            bf * (big_ln(&energy) - bf.ln())
        } else if energy.is_zero() {
            f64::NEG_INFINITY
        } else {
            f64::NAN
        };
        let rhs = bf * ((2 * n) as f64).ln() - log_hyperfactorial::<f64>(n) + big_ln(&discriminant);
        // E^b Y(n) versus (2 n b)^b Delta
        let y = BigInt::from(hyperfactorial(n as u32)?);
        let left = num_traits::pow(energy.clone(), b) * y;
        let right = num_traits::pow(BigInt::from(2 * n * b), b) * &discriminant;
        (lhs, rhs, left >= right, left == right)
    };
    let margin = if equality { 0.0 } else { lhs - rhs };
    let edelta = if b == 0 { 0.0 } else { lhs - big_ln(&discriminant) };
    Ok(PolyReport {
        poly: poly.clone(),
        all_real,
        totally_positive,
        irreducible,
        s1,
        s2,
        energy,
        discriminant,
        diffsq_squarefree,
        thm2_lhs_log: lhs,
        thm2_rhs_log: rhs,
        thm2_margin_log: margin,
        thm2_holds: holds,
        thm2_equality: equality,
        edelta_margin_log: edelta,
        hypothesis_holds,
    })
}
