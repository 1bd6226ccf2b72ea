//! The polynomial whose roots are the squared root differences `(x_i - x_j)^2`, `i < j`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::polynomial::Polynomial;
use super::resultant::resultant;

/// `R(z) = Res_y(f(y), f(y + z)) = prod_{i,j} (z + x_i - x_j)` for monic `f`.
///
/// Computed exactly by evaluating at `z = 0..=n^2` and interpolating in the
/// binomial basis with integer forward differences.
pub fn difference_resultant(f: &Polynomial<BigInt>) -> Polynomial<BigInt> {
    let n = f.degree();
    let pts = n * n + 1;
    let values: Vec<BigInt> = (0..pts)
        .map(|z| resultant(f, &f.taylor_shift(&BigInt::from(z))))
        .collect();
    interpolate_forward(&values)
}

/// Polynomial of degree `< values.len()` through `(k, values[k])`.
fn interpolate_forward(values: &[BigInt]) -> Polynomial<BigInt> {
    // forward differences Δ^k v(0)
    let mut diffs = Vec::with_capacity(values.len());
    let mut row = values.to_vec();
    while !row.is_empty() {
        diffs.push(row[0].clone());
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    // sum Δ^k v(0) * z(z-1)...(z-k+1) / k!
    let mut acc = Polynomial::<BigRational>::zero();
    let mut falling = Polynomial::<BigRational>::constant(BigRational::one());
    let mut fact = BigInt::one();
    for (k, d) in diffs.iter().enumerate() {
        if k > 0 {
            fact *= BigInt::from(k);
            let lin = Polynomial::new(vec![BigRational::from_integer(-BigInt::from(k - 1)), BigRational::one()]);
            falling = falling.mul(&lin);
        }
        if !d.is_zero() {
            acc = acc.add(&falling.scale(&BigRational::new(d.clone(), fact.clone())));
        }
    }
    let coeffs: Vec<BigInt> = acc
        .coeffs()
        .iter()
        .map(|c| {
            assert!(c.is_integer(), "interpolant of an integer polynomial must be integral");
            c.to_integer()
        })
        .collect();
    Polynomial::new(coeffs)
}

/// Monic polynomial of degree `binom(n, 2)` with roots `(x_i - x_j)^2`, and
/// whether it is square-free (all squared differences distinct).
///
/// The trace of the result is the potential energy of the roots of `f`.
pub fn diffsq_poly(f: &Polynomial<BigInt>) -> (Polynomial<BigInt>, bool) {
    assert!(f.is_monic() && f.degree() >= 2, "diffsq_poly needs a monic polynomial of degree >= 2");
    let n = f.degree();
    let r = difference_resultant(f);
    // divide by z^n: the i = j factors
    let cs = r.coeffs();
    debug_assert!(cs[..n].iter().all(|c| c.is_zero()));
    let stripped = &cs[n..];
    debug_assert!(stripped.iter().skip(1).step_by(2).all(|c| c.is_zero()), "R(z)/z^n must be even");
    let w: Vec<BigInt> = stripped.iter().step_by(2).cloned().collect();
    let p = Polynomial::new(w);
    debug_assert!(p.is_monic());
    let squarefree = p.is_squarefree();
    (p, squarefree)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> Polynomial<BigInt> {
        Polynomial::from_leading_first(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn examples() {
        let (p, sq) = diffsq_poly(&ip(&[1, -3, 2]));
        assert_eq!(p, ip(&[1, -1]));
        assert!(sq);

        let (p, sq) = diffsq_poly(&ip(&[1, -6, 11, -6]));
        // roots {1, 4, 1}
        assert_eq!(p, Polynomial::from_roots(&[1, 1, 4].map(BigInt::from)));
        assert!(!sq);
        assert_eq!(p.trace(), BigInt::from(6));

        let (p, sq) = diffsq_poly(&ip(&[1, -8, 19, -12, 2]));
        assert_eq!(p.degree(), 6);
        assert!(!sq);

        let (p, sq) = diffsq_poly(&ip(&[1, -3, 1]));
        assert_eq!(p, ip(&[1, -5]));
        assert!(sq);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = ip(&[3, 0, -7, 2, 11]);
        let vals: Vec<BigInt> = (0..6).map(|z| f.eval(&BigInt::from(z))).collect();
        assert_eq!(interpolate_forward(&vals), f);
    }
}
