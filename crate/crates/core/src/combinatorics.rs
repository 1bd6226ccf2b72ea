//! Hyperfactorials, the improvement factor `A(n)`, and Newton's identities.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Real;

/// `Y(n) = 2^2 3^3 ... n^n`.
pub fn hyperfactorial(n: u32) -> Result<BigUint> {
    if n < 2 {
        return Err(Error::invalid(format!("hyperfactorial needs n >= 2, got {n}")));
    }
    Ok((2..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k).pow(k)))
}

/// `binom(n, 2)`.
pub fn pairs(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// `log Y(n) = sum_{k=2}^n k log k`.
pub fn log_hyperfactorial<T: Real>(n: usize) -> T {
    let mut acc = crate::scalar::CompensatedSum::new();
    for k in 2..=n {
        let kf = T::of_usize(k);
        acc.add(kf * kf.ln());
    }
    acc.value()
}

/// `log A(n) = binom(n,2) log(2n) - log Y(n)`, in log space.
pub fn a_factor_log<T: Real>(n: usize) -> T {
    if n < 2 {
        return T::zero();
    }
    let b = T::of_usize(pairs(n));
    let v = b * T::of_usize(2 * n).ln() - log_hyperfactorial::<T>(n);
    if n == 2 {
        // exact: A(2) = 4 / 4
        T::zero()
    } else {
        v
    }
}

/// Natural logarithm of a positive big integer without overflow.
pub fn big_ln(x: &BigInt) -> f64 {
    if !x.is_positive() {
        return if x.is_zero() { f64::NEG_INFINITY } else { f64::NAN };
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().map(f64::ln).unwrap_or(f64::NAN);
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::NAN);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn big_uint_ln(x: &BigUint) -> f64 {
    big_ln(&BigInt::from(x.clone()))
}

/// Exact power sums `S_1..S_{r_max}` of the roots of a monic integer
/// polynomial, by Newton's identities.
pub fn power_sums_from_coeffs(poly: &Polynomial<BigInt>, r_max: usize) -> Result<Vec<BigInt>> {
    poly.ensure_monic()?;
    let n = poly.degree();
    if n < 1 {
        return Err(Error::invalid("polynomial must have degree >= 1"));
    }
    // x^n + a_1 x^{n-1} + ... + a_n
    let a: Vec<BigInt> = (0..=n).map(|i| poly.coeff(n - i)).collect();
    let mut p: Vec<BigInt> = Vec::with_capacity(r_max + 1);
    p.push(BigInt::from(n));
    for k in 1..=r_max {
        let mut s = BigInt::zero();
        for i in 1..k.min(n + 1) {
            s += &a[i] * &p[k - i];
        }
        if k <= n {
            s += BigInt::from(k) * &a[k];
        }
        p.push(-s);
    }
    p.remove(0);
    Ok(p)
}
