//! Certified real-root classification and isolation.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;

use super::polynomial::Polynomial;
use super::sturm::{root_bound, sign_at, Dyadic, SturmSequence};

/// Outcome of [`certified_roots`].
#[derive(Clone, Debug, PartialEq)]
pub enum RootClassification {
    /// All roots are real and simple; sorted ascending.
    AllRealDistinct(Vec<f64>),
    NotAllReal,
    RepeatedRoots,
}

/// Exact isolating interval `(lo, hi]` containing one root.
#[derive(Clone, Debug)]
pub struct IsolatingInterval {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

/// Isolate the distinct real roots of `f` into disjoint half-open dyadic
/// intervals, in increasing order.
pub fn isolate_real_roots(f: &Polynomial<BigInt>) -> (SturmSequence, Vec<IsolatingInterval>) {
    let sturm = SturmSequence::new(f);
    let mut out = Vec::new();
    if f.degree() == 0 {
        return (sturm, out);
    }
    let b = root_bound(sturm.base());
    let lo = Dyadic { num: -b.num.clone(), exp: b.exp };
    let mut stack = vec![(lo, b)];
    while let Some((lo, hi)) = stack.pop() {
        match sturm.count_in(&lo, &hi) {
            0 => {}
            1 => out.push(IsolatingInterval { lo, hi }),
            _ => {
                let mid = Dyadic::midpoint(&lo, &hi);
                // push right first so the left half is processed first
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    (sturm, out)
}

/// Shrink an isolating interval to width `<= tol * max(1, |x|)` by exact
/// bisection, then polish with Newton in f64 (kept only if it stays inside).
pub fn refine_root(sturm: &SturmSequence, iv: &IsolatingInterval, tol: f64) -> f64 {
    let f = sturm.base();
    let (mut lo, mut hi) = (iv.lo.clone(), iv.hi.clone());
    if sign_at(f, &hi) == Ordering::Equal {
        return hi.to_f64();
    }
    for _ in 0..200 {
        let scale = hi.to_f64().abs().max(lo.to_f64().abs()).max(1.0);
        if Dyadic::width(&lo, &hi) <= tol * scale {
            break;
        }
        let mid = Dyadic::midpoint(&lo, &hi);
        if sign_at(f, &mid) == Ordering::Equal {
            return mid.to_f64();
        }
        if sturm.count_in(&lo, &mid) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let (a, b) = (lo.to_f64(), hi.to_f64());
    let df = f.derivative();
    let mut x = 0.5 * (a + b);
    for _ in 0..8 {
        let d = df.eval_f64(x);
        if d == 0.0 {
            break;
        }
        let nx = x - f.eval_f64(x) / d;
        if !(nx > a && nx <= b) || nx == x {
            break;
        }
        x = nx;
    }
    x
}

/// Classify the roots of an integer polynomial; when all are real and
/// simple, return them to about `1e-12` relative accuracy.
///
/// Every classification decision comes from exact sign computations.
pub fn certified_roots(f: &Polynomial<BigInt>) -> RootClassification {
    assert!(f.degree() >= 1, "certified_roots needs degree >= 1");
    if !f.is_squarefree() {
        return RootClassification::RepeatedRoots;
    }
    let (sturm, ivs) = isolate_real_roots(f);
    if ivs.len() != f.degree() {
        return RootClassification::NotAllReal;
    }
    RootClassification::AllRealDistinct(ivs.iter().map(|iv| refine_root(&sturm, iv, 1e-12)).collect())
}

/// All roots real and strictly positive (multiplicities allowed).
pub fn is_totally_positive(f: &Polynomial<BigInt>) -> bool {
    if f.degree() == 0 || f.coeff(0).is_zero() {
        return false;
    }
    let sq = f.squarefree_part();
    let sturm = SturmSequence::new(&sq);
    sturm.count_above(&Dyadic::integer(0)) == sq.degree()
}

/// All roots, complex, by Aberth-Ehrlich iteration in f64.
pub fn complex_roots(f: &Polynomial<BigInt>) -> Vec<Complex64> {
    let n = f.degree();
    let lc = super::polynomial::big_to_f64(&f.leading());
    let cs: Vec<f64> = f.to_f64_coeffs().iter().map(|c| c / lc).collect();
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(1.0, 0.0);
        let mut dp = Complex64::zero();
        for c in cs[..n].iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    };
    let radius = 1.0 + cs[..n].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(0.5 * radius, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j])).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            z[i] -= w;
            moved = moved.max(w.norm() / z[i].norm().max(1.0));
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}
