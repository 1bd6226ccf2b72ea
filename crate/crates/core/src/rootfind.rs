//! Bracketed solvers for the two alpha-equations.
//!
//! Both equations are parametrised by `m = n/k - 1`, so that the two-value
//! configuration with `k` copies of `x` and `n - k` copies of `y` is
//! `n x = S (1 + alpha m)`, `n y = S (1 - alpha)`; `alpha` ranges over
//! `(-1/m, 0]` (negative branch) or `[0, 1)` (positive branch).
//!
//! * trace/norm: `(1 + alpha m)^k (1 - alpha)^(n-k) = p / s^n`
//! * power sums: `g(alpha) = k (1 + alpha m)^r + (n-k)(1 - alpha)^r - ratio`
//!   with `ratio = n^r S_r / S_1^r`.
//!
//! Each side of zero is monotone in both cases, so a sign-changing bracket
//! plus bisection-then-Newton is safe.

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    Negative,
    Positive,
}

/// A solved root.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlphaRoot<T: Real = f64> {
    pub alpha: T,
    pub branch: Branch,
    /// Number of points taking the value `x`.
    pub k: usize,
    /// Total number of points in the equation that was solved.
    pub n: usize,
    /// Equation value at `alpha`, in the original (non-log) form.
    pub residual: T,
    pub iterations: usize,
    /// The branch was accepted within tolerance of its existence boundary
    /// and `alpha` sits at the interval endpoint.
    pub at_endpoint: bool,
}

impl<T: Real> AlphaRoot<T> {
    pub fn m(&self) -> T {
        T::of_usize(self.n) / T::of_usize(self.k) - T::one()
    }

    pub fn diagnostics(&self) -> BranchDiagnostics<T> {
        let m = self.m();
        BranchDiagnostics { t: (T::one() + self.alpha * m) / (T::one() - self.alpha), m }
    }

    /// The two values `(x, y)` for total `s1`.
    pub fn two_values(&self, s1: T) -> (T, T) {
        let n = T::of_usize(self.n);
        let x = s1 * (T::one() + self.alpha * self.m()) / n;
        let y = s1 * (T::one() - self.alpha) / n;
        (x.max(T::zero()), y.max(T::zero()))
    }

    fn exact_zero(branch: Branch, n: usize, k: usize, residual: T) -> Self {
        Self { alpha: T::zero(), branch, k, n, residual, iterations: 0, at_endpoint: false }
    }
}

/// `t = (1 + alpha m)/(1 - alpha)`: below 1 on the negative branch, above 1
/// on the positive branch.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BranchDiagnostics<T: Real = f64> {
    pub t: T,
    pub m: T,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverOptions {
    /// Residual tolerance, relative to `max(1, |target|)`.
    pub tol: f64,
    /// Bisection runs until the bracket is this narrow, then Newton takes over.
    pub bisect_width: f64,
    pub max_iter: usize,
}

impl SolverOptions {
    pub fn for_scalar<T: Real>() -> Self {
        Self { tol: T::SOLVER_TOL, bisect_width: 1e-6, max_iter: 80 }
    }

    pub fn with_tol(tol: f64) -> Self {
        Self { tol, ..Self::default() }
    }
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self::for_scalar::<f64>()
    }
}

const ENDPOINT_EPS: f64 = 1e-14;

fn endpoint_eps<T: Real>() -> T {
    T::lit(ENDPOINT_EPS).max(T::epsilon())
}

fn check_k(n: usize, k: usize) -> Result<()> {
    if n < 2 || k == 0 || k >= n {
        return Err(Error::invalid(format!("need 1 <= k < n, got n = {n}, k = {k}")));
    }
    Ok(())
}

/// Root of the trace/norm equation on the requested side of zero.
///
/// Both branches exist whenever `p < s^n`; `p` within relative tolerance
/// of `s^n` returns `alpha = 0`.
pub fn solve_trace_norm_alpha<T: Real>(n: usize, k: usize, s: T, p: T, branch: Branch) -> Result<AlphaRoot<T>> {
    solve_trace_norm_alpha_with(n, k, s, p, branch, &SolverOptions::for_scalar::<T>())
}

pub fn solve_trace_norm_alpha_with<T: Real>(
    n: usize,
    k: usize,
    s: T,
    p: T,
    branch: Branch,
    opts: &SolverOptions,
) -> Result<AlphaRoot<T>> {
    check_k(n, k)?;
    if !(s > T::zero() && p > T::zero() && s.is_finite() && p.is_finite()) {
        return Err(Error::invalid("s and p must be positive and finite"));
    }
    // log(p / s^n)
    let log_target = p.ln() - T::of_usize(n) * s.ln();
    let target = log_target.exp();
    if log_target > T::lit(T::FEAS_TOL) {
        return Err(Error::infeasible("p <= s^n"));
    }
    if log_target >= -T::lit(T::FEAS_TOL) {
        return Ok(AlphaRoot::exact_zero(branch, n, k, target - T::one()));
    }
    let (nf, kf) = (T::of_usize(n), T::of_usize(k));
    let m = nf / kf - T::one();
    let nk = nf - kf;
    let phi = |a: T| {
        let u = T::one() + a * m;
        let v = T::one() - a;
        let val = kf * u.ln() + nk * v.ln() - log_target;
        let d = -nk * (m + T::one()) * a / (u * v);
        (val, d)
    };
    let eps = endpoint_eps::<T>();
    let (lo, hi) = match branch {
        Branch::Negative => (-T::one() / m + eps, -eps),
        Branch::Positive => (eps, T::one() - eps),
    };
    let (alpha, iterations) = hybrid(phi, lo, hi, T::lit(opts.tol), opts)?;
    let residual = target * phi(alpha).0.exp_m1();
    Ok(AlphaRoot { alpha, branch, k, n, residual, iterations, at_endpoint: false })
}

/// Which branches of `g(alpha) = 0` exist.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BranchExistence {
    pub negative: bool,
    pub positive: bool,
}

impl BranchExistence {
    pub fn has(&self, b: Branch) -> bool {
        match b {
            Branch::Negative => self.negative,
            Branch::Positive => self.positive,
        }
    }
}

/// `ñ` recovered from `ratio = n^r ñ^(1-r)`.
pub fn ntilde_from_ratio<T: Real>(n: usize, r: u32, ratio: T) -> T {
    let rf = T::of_usize(r as usize);
    ((rf * T::of_usize(n).ln() - ratio.ln()) / (rf - T::one())).exp()
}

fn check_ratio<T: Real>(n: usize, r: u32, ratio: T) -> Result<()> {
    if r < 3 {
        return Err(Error::invalid(format!("r must be >= 3, got {r}")));
    }
    if !(ratio > T::zero() && ratio.is_finite()) {
        return Err(Error::invalid("ratio must be positive and finite"));
    }
    let tol = T::lit(T::FEAS_TOL);
    let nf = T::of_usize(n);
    if ratio < nf * (T::one() - tol) {
        return Err(Error::DegenerateAllEqual { n, ratio: ratio.to_f64_lossy() });
    }
    let log_max = T::of_usize(r as usize) * nf.ln();
    if ratio.ln() > log_max + tol {
        return Err(Error::infeasible("ratio <= n^r (S_r <= S_1^r)"));
    }
    Ok(())
}

/// Existence of the negative root (`k > n - ñ`) and the positive root
/// (`k < ñ`); within tolerance of either threshold the branch counts as
/// present, with its root at the interval endpoint.
pub fn branch_exists<T: Real>(n: usize, k: usize, r: u32, ratio: T) -> Result<BranchExistence> {
    check_k(n, k)?;
    check_ratio(n, r, ratio)?;
    let nt = ntilde_from_ratio(n, r, ratio);
    let tol = T::lit(T::FEAS_TOL) * T::of_usize(n);
    let kf = T::of_usize(k);
    Ok(BranchExistence { negative: kf > T::of_usize(n) - nt - tol, positive: kf < nt + tol })
}

fn g_and_slope<T: Real>(n: usize, k: usize, r: u32, ratio: T) -> impl Fn(T) -> (T, T) {
    let (nf, kf) = (T::of_usize(n), T::of_usize(k));
    let m = nf / kf - T::one();
    let nk = nf - kf;
    let ri = r as i32;
    let rf = T::of_usize(r as usize);
    move |a: T| {
        let u = T::one() + a * m;
        let v = T::one() - a;
        let val = kf * u.powi(ri) + nk * v.powi(ri) - ratio;
        let d = nk * rf * (u.powi(ri - 1) - v.powi(ri - 1));
        (val, d)
    }
}

/// Root of `g(alpha) = 0` on the requested side of zero.
///
/// `ratio` within relative tolerance of `n` returns `alpha = 0`; below
/// that the data describe no configuration other than the all-equal one
/// and [`Error::DegenerateAllEqual`] is returned.
pub fn solve_powersum_alpha<T: Real>(n: usize, k: usize, r: u32, ratio: T, branch: Branch) -> Result<AlphaRoot<T>> {
    solve_powersum_alpha_with(n, k, r, ratio, branch, &SolverOptions::for_scalar::<T>())
}

pub fn solve_powersum_alpha_with<T: Real>(
    n: usize,
    k: usize,
    r: u32,
    ratio: T,
    branch: Branch,
    opts: &SolverOptions,
) -> Result<AlphaRoot<T>> {
    let exists = branch_exists(n, k, r, ratio)?;
    let g = g_and_slope(n, k, r, ratio);
    let nf = T::of_usize(n);
    if (ratio - nf).abs() <= T::lit(T::FEAS_TOL) * nf {
        return Ok(AlphaRoot::exact_zero(branch, n, k, g(T::zero()).0));
    }
    if !exists.has(branch) {
        let condition = match branch {
            Branch::Negative => format!("k > n - ntilde fails (k = {k}, n = {n})"),
            Branch::Positive => format!("k < ntilde fails (k = {k})"),
        };
        return Err(Error::BranchMissing { branch, condition });
    }
    let m = nf / T::of_usize(k) - T::one();
    let (end, lo, hi) = match branch {
        Branch::Negative => (-T::one() / m, -T::one() / m + endpoint_eps::<T>(), -endpoint_eps::<T>()),
        Branch::Positive => (T::one(), endpoint_eps::<T>(), T::one() - endpoint_eps::<T>()),
    };
    let outer = match branch {
        Branch::Negative => lo,
        Branch::Positive => hi,
    };
    if g(outer).0 <= T::zero() {
        // accepted only by the near-threshold rule: the root is the endpoint
        return Ok(AlphaRoot { alpha: end, branch, k, n, residual: g(end).0, iterations: 0, at_endpoint: true });
    }
    let tol = T::lit(opts.tol) * ratio.max(T::one());
    let (alpha, iterations) = hybrid(&g, lo, hi, tol, opts)?;
    Ok(AlphaRoot { alpha, branch, k, n, residual: g(alpha).0, iterations, at_endpoint: false })
}

/// Bisection until the bracket is narrower than `opts.bisect_width`, then
/// Newton steps that fall back to bisection whenever they leave the bracket.
/// `f` returns value and slope and must change sign on `[lo, hi]`.
/// One extra Newton step once the tolerance is met, kept only if it stays
/// in the bracket and does not increase the residual.
fn polish<T: Real, F: Fn(T) -> (T, T)>(f: &F, x: T, fx: T, dfx: T, a: T, b: T) -> T {
    let y = x - fx / dfx;
    if y.is_finite() && y >= a && y <= b && f(y).0.abs() <= fx.abs() {
        y
    } else {
        x
    }
}

pub(crate) fn hybrid<T: Real, F: Fn(T) -> (T, T)>(f: F, lo: T, hi: T, tol: T, opts: &SolverOptions) -> Result<(T, usize)> {
    let (flo, fhi) = (f(lo).0, f(hi).0);
    if flo.abs() <= tol {
        return Ok((lo, 0));
    }
    if fhi.abs() <= tol {
        return Ok((hi, 0));
    }
    if (flo > T::zero()) == (fhi > T::zero()) {
        return Err(Error::NotConverged { residual: flo.abs().min(fhi.abs()).to_f64_lossy(), iterations: 0 });
    }
    let rising = flo < T::zero();
    let (mut a, mut b) = (lo, hi);
    let half = T::lit(0.5);
    let width = T::lit(opts.bisect_width);
    let mut it = 0;
    let mut x = half * (a + b);
    while it < opts.max_iter {
        it += 1;
        let (fx, dfx) = f(x);
        if fx.abs() <= tol {
            return Ok((polish(&f, x, fx, dfx, a, b), it));
        }
        if (fx < T::zero()) == rising {
            a = x;
        } else {
            b = x;
        }
        let mid = half * (a + b);
        if b - a <= T::epsilon() * (T::one() + x.abs()) {
            break;
        }
        x = if b - a > width {
            mid
        } else {
            let step = x - fx / dfx;
            if step.is_finite() && step > a && step < b {
                step
            } else {
                mid
            }
        };
    }
    let residual = f(x).0;
    if residual.abs() <= tol {
        return Ok((x, it));
    }
    Err(Error::NotConverged { residual: residual.to_f64_lossy(), iterations: it })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Plain bisection on a monotone function, as an independent oracle.
    fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
        let sa = f(a) > 0.0;
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if (f(m) > 0.0) == sa {
                a = m;
            } else {
                b = m;
            }
        }
        0.5 * (a + b)
    }

    #[test]
    fn trace_norm_two_points_closed_form() {
        let r = solve_trace_norm_alpha::<f64>(2, 1, 1.5, 2.0, Branch::Negative).unwrap();
        assert!((r.alpha + 1.0 / 3.0).abs() < 1e-12);
        let r = solve_trace_norm_alpha::<f64>(2, 1, 1.5, 2.0, Branch::Positive).unwrap();
        assert!((r.alpha - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn trace_norm_cubic_example() {
        let oracle = bisect(|a| 2.0 * a * a * a - 3.0 * a * a + 0.25, -0.5, 0.0);
        let r = solve_trace_norm_alpha::<f64>(3, 1, 2.0, 6.0, Branch::Negative).unwrap();
        assert!((r.alpha - oracle).abs() < 1e-10);
        assert!((r.alpha + 0.266044443118978).abs() < 1e-12);
        assert!(r.residual.abs() <= 1e-10);
        let d = r.diagnostics();
        assert!(d.t > 0.0 && d.t < 1.0);
    }

    #[test]
    fn trace_norm_all_equal() {
        let r = solve_trace_norm_alpha::<f64>(4, 2, 1.5, 1.5f64.powi(4), Branch::Positive).unwrap();
        assert_eq!(r.alpha, 0.0);
        assert!(matches!(
            solve_trace_norm_alpha::<f64>(3, 1, 1.0, 2.0, Branch::Negative),
            Err(Error::Infeasible { .. })
        ));
    }

    #[test]
    fn powersum_cubic_example() {
        let oracle = bisect(|a| a * a * a + 3.0 * a * a - 1.0, 0.0, 1.0);
        let r = solve_powersum_alpha::<f64>(3, 1, 3, 9.0, Branch::Positive).unwrap();
        assert!((r.alpha - oracle).abs() < 1e-10);
        assert!((r.alpha - 0.532088886237956).abs() < 1e-12);
        assert!(r.residual.abs() <= 1e-10 * 9.0);
        let (x, y) = r.two_values(3.0);
        assert!((x + 2.0 * y - 3.0).abs() < 1e-12);
        assert!((x.powi(3) + 2.0 * y.powi(3) - 9.0).abs() < 1e-9);
    }

    #[test]
    fn powersum_two_points_closed_form() {
        let r = solve_powersum_alpha::<f64>(2, 1, 3, 8.0 * 9.0 / 27.0, Branch::Negative).unwrap();
        assert!((r.alpha + 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn powersum_boundary_and_degenerate() {
        let r = solve_powersum_alpha::<f64>(5, 2, 4, 5.0, Branch::Negative).unwrap();
        assert_eq!(r.alpha, 0.0);
        assert!(matches!(
            solve_powersum_alpha::<f64>(5, 2, 4, 4.0, Branch::Positive),
            Err(Error::DegenerateAllEqual { .. })
        ));
    }

    #[test]
    fn missing_branch_is_reported() {
        let e = branch_exists::<f64>(3, 1, 3, 9.0).unwrap();
        assert_eq!(e, BranchExistence { negative: false, positive: true });
        assert!(matches!(
            solve_powersum_alpha::<f64>(3, 1, 3, 9.0, Branch::Negative),
            Err(Error::BranchMissing { branch: Branch::Negative, .. })
        ));
        let e = branch_exists::<f64>(2, 1, 3, 2.0 + 1e-6).unwrap();
        assert!(e.negative && e.positive);
        // ñ = 2.5: k = 3 is neither below ñ nor above n - ñ
        let e = branch_exists::<f64>(6, 3, 3, 6f64.powi(3) / 2.5f64.powi(2)).unwrap();
        assert_eq!(e, BranchExistence { negative: false, positive: false });
    }

    #[test]
    fn near_threshold_branch_sits_at_endpoint() {
        // ñ = 2 exactly for n = 3, r = 3: ratio = 27 / 4
        let r = solve_powersum_alpha::<f64>(3, 2, 3, 27.0 / 4.0, Branch::Positive).unwrap();
        assert!((r.alpha - 1.0).abs() < 1e-9);
    }

    #[test]
    fn works_in_f32() {
        let r = solve_powersum_alpha::<f32>(3, 1, 3, 9.0f32, Branch::Positive).unwrap();
        assert!((r.alpha - 0.532_088_9).abs() < 1e-4);
        let r = solve_trace_norm_alpha::<f32>(3, 1, 2.0f32, 6.0, Branch::Negative).unwrap();
        assert!((r.alpha + 0.266_044_4).abs() < 1e-4);
    }

    #[test]
    fn larger_branch_dominates() {
        for &(n, k, r, ratio) in &[(4usize, 2usize, 3u32, 10.0f64), (5, 2, 4, 30.0), (6, 3, 3, 12.0)] {
            let e = branch_exists::<f64>(n, k, r, ratio).unwrap();
            if e.negative && e.positive {
                let a1 = solve_powersum_alpha::<f64>(n, k, r, ratio, Branch::Negative).unwrap().alpha;
                let a2 = solve_powersum_alpha::<f64>(n, k, r, ratio, Branch::Positive).unwrap().alpha;
                assert!(a1.abs() >= a2 - 1e-12);
            }
        }
    }
}
