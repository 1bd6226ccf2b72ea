//! Sylvester resultants and discriminants, computed with fraction-free
//! (Bareiss) elimination so that every intermediate stays exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use super::polynomial::{Coefficient, Polynomial};

/// Determinant by Bareiss elimination. Every division is exact over an
/// integral domain.
pub fn bareiss_determinant<C: Coefficient>(mut m: Vec<Vec<C>>) -> C {
    let n = m.len();
    if n == 0 {
        return C::one();
    }
    let mut sign_flip = false;
    let mut prev = C::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign_flip = !sign_flip;
                }
                None => return C::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = v / prev.clone();
            }
            m[i][k] = C::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        -det
    } else {
        det
    }
}

/// Sylvester matrix of `f` (degree m) and `g` (degree n): n shifted rows of
/// `f` followed by m shifted rows of `g`, leading coefficients first.
pub fn sylvester_matrix<C: Coefficient>(f: &Polynomial<C>, g: &Polynomial<C>) -> Vec<Vec<C>> {
    let (m, n) = (f.degree(), g.degree());
    let size = m + n;
    let fl = f.leading_first();
    let gl = g.leading_first();
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![C::zero(); size];
        for (j, c) in fl.iter().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![C::zero(); size];
        for (j, c) in gl.iter().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// `res(f, g)`; for monic `f` this is `prod g(x_i)` over the roots of `f`.
pub fn resultant<C: Coefficient>(f: &Polynomial<C>, g: &Polynomial<C>) -> C {
    if f.is_zero() || g.is_zero() {
        return C::zero();
    }
    if f.degree() == 0 {
        return pow(&f.leading(), g.degree());
    }
    if g.degree() == 0 {
        return pow(&g.leading(), f.degree());
    }
    bareiss_determinant(sylvester_matrix(f, g))
}

fn pow<C: Coefficient>(c: &C, e: usize) -> C {
    (0..e).fold(C::one(), |acc, _| acc * c.clone())
}

/// `Delta = (-1)^(n(n-1)/2) res(f, f') / lc(f)`; for monic `f` this is
/// `prod_{i<j} (x_i - x_j)^2`.
pub fn discriminant<C: Coefficient>(f: &Polynomial<C>) -> C {
    let n = f.degree();
    if n < 1 {
        return C::zero();
    }
    if n == 1 {
        return C::one();
    }
    let r = resultant(f, &f.derivative()) / f.leading();
    if (n * (n - 1) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

/// Exact discriminant of an integer polynomial.
pub fn discriminant_exact(f: &Polynomial<BigInt>) -> BigInt {
    discriminant(f)
}

/// Discriminant of a rational polynomial via its cleared-denominator monic
/// transform: if `D` clears all denominators of monic `f`, then
/// `g(x) = D^n f(x / D)` is monic in `Z[x]` and `Delta(g) = D^(n(n-1)) Delta(f)`.
pub fn discriminant_rational_via_integers(f: &Polynomial<BigRational>) -> BigRational {
    let n = f.degree();
    let lc = f.leading();
    let f = f.div_scalar(&lc);
    let den = f.coeffs().iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let dr = BigRational::from_integer(den.clone());
    let mut scaled = Vec::with_capacity(n + 1);
    let mut pw = BigRational::one();
    for k in (0..=n).rev() {
        scaled.push((f.coeff(k) * pw.clone()).to_integer());
        pw = pw * dr.clone();
    }
    let g = Polynomial::from_leading_first(scaled);
    debug_assert!(g.is_monic());
    let dg = BigRational::from_integer(discriminant_exact(&g));
    let factor = num_traits::pow(dr, n * n.saturating_sub(1));
    // Delta(c f) = c^(2n-2) Delta(f)
    dg / factor * num_traits::pow(lc, 2 * n - 2)
}
