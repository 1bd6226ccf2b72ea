//! Irreducibility over `Z` for monic polynomials of degree at most 9.
//!
//! Every monic factor of degree `d` is `prod (x - rho)` over some `d`-subset
//! of the roots, so the search runs over root subsets: each candidate
//! product is rounded to integer coefficients, checked against the
//! coefficient bound, and confirmed by exact division.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{FromPrimitive, One, Zero};

use super::polynomial::Polynomial;
use super::roots::{certified_roots, complex_roots, RootClassification};
use crate::error::{Error, Result};

pub const MAX_IRREDUCIBILITY_DEGREE: usize = 9;

/// Decide irreducibility of a monic integer polynomial of degree 1..=9.
pub fn is_irreducible(f: &Polynomial<BigInt>) -> Result<bool> {
    f.ensure_monic()?;
    let n = f.degree();
    if n == 0 || n > MAX_IRREDUCIBILITY_DEGREE {
        return Err(Error::UnsupportedDegree { degree: n, supported: "1..=9" });
    }
    Ok(find_factor(f).is_none())
}

/// A nontrivial monic factor of degree `<= n/2`, if one exists.
pub fn find_factor(f: &Polynomial<BigInt>) -> Option<Polynomial<BigInt>> {
    let n = f.degree();
    if n <= 1 {
        return None;
    }
    let g = f.gcd(&f.derivative());
    if g.degree() > 0 {
        return Some(g);
    }
    let roots: Vec<Complex64> = match certified_roots(f) {
        RootClassification::AllRealDistinct(r) => r.into_iter().map(|x| Complex64::new(x, 0.0)).collect(),
        _ => complex_roots(f),
    };
    let radius = roots.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    for d in 1..=n / 2 {
        let bound = binomial(d, d / 2) * (1.0 + radius).powi(d as i32);
        let mut subset: Vec<usize> = (0..d).collect();
        loop {
            if let Some(g) = candidate(&roots, &subset, bound) {
                let (_, r) = f.div_rem(&g);
                if r.is_zero() {
                    return Some(g);
                }
            }
            if !next_combination(&mut subset, n) {
                break;
            }
        }
    }
    None
}

fn candidate(roots: &[Complex64], subset: &[usize], bound: f64) -> Option<Polynomial<BigInt>> {
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    for &i in subset {
        let mut next = vec![Complex64::zero(); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * roots[i];
        }
        coeffs = next;
    }
    let mut ints = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        // a factor of an integer polynomial needs (near) real coefficients
        if c.im.abs() > 1e-6 * (1.0 + c.re.abs()) || c.re.abs() > bound + 0.5 {
            return None;
        }
        ints.push(BigInt::from_f64(c.re.round())?);
    }
    let p = Polynomial::new(ints);
    p.leading().is_one().then_some(p)
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Advance `idx` to the next k-combination of `0..n` in lexicographic order.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> Polynomial<BigInt> {
        Polynomial::from_leading_first(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn examples() {
        assert!(is_irreducible(&ip(&[1, -3, 1])).unwrap());
        assert!(!is_irreducible(&ip(&[1, -3, 2])).unwrap());
        // ((x-2)^2-2)((x-2)^2-3)
        let counter = ip(&[1, -4, 2]).mul(&ip(&[1, -4, 1]));
        assert_eq!(counter, ip(&[1, -8, 19, -12, 2]));
        assert!(!is_irreducible(&counter).unwrap());
        assert!(is_irreducible(&ip(&[1, -4, 2])).unwrap());
        assert!(is_irreducible(&ip(&[1, 0, 1])).unwrap());
        assert!(is_irreducible(&ip(&[1, -1])).unwrap());
    }

    #[test]
    fn complex_factors_found() {
        // (x^2 + x + 1)(x^3 - 2)
        let f = ip(&[1, 1, 1]).mul(&ip(&[1, 0, 0, -2]));
        assert!(!is_irreducible(&f).unwrap());
        assert!(is_irreducible(&ip(&[1, 0, 0, -2])).unwrap());
        // x^4 + 1 is irreducible over Z but factors mod every prime
        assert!(is_irreducible(&ip(&[1, 0, 0, 0, 1])).unwrap());
        // x^4 + 4 = (x^2+2x+2)(x^2-2x+2)
        assert!(!is_irreducible(&ip(&[1, 0, 0, 0, 4])).unwrap());
    }

    #[test]
    fn degree_nine_products() {
        let a = ip(&[1, -5, 6, -1]);
        let b = ip(&[1, -7, 14, -8, 1]);
        let c = ip(&[1, -3, 1]);
        let f = a.mul(&b).mul(&c);
        assert_eq!(f.degree(), 9);
        assert!(!is_irreducible(&f).unwrap());
        assert!(is_irreducible(&a).unwrap());
        assert!(is_irreducible(&b).unwrap());
    }

    #[test]
    fn rejects_unsupported() {
        assert!(matches!(is_irreducible(&ip(&[2, 1])), Err(Error::NonMonic)));
        let f = Polynomial::from_roots(&(1..=10).map(BigInt::from).collect::<Vec<_>>());
        assert!(matches!(is_irreducible(&f), Err(Error::UnsupportedDegree { .. })));
    }

    #[test]
    fn combinations_enumerate_all() {
        let mut idx = vec![0, 1];
        let mut count = 1;
        while next_combination(&mut idx, 5) {
            count += 1;
        }
        assert_eq!(count, 10);
    }
}
