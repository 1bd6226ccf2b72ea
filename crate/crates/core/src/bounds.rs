//! Closed-form energy bounds and the quantities used to test them.

use crate::combinatorics::{log_hyperfactorial, pairs};
use crate::constraints::{PowerSumConstraints, TraceNormConstraints};
use crate::error::{Error, Result};
use crate::rootfind::{
    branch_exists, hybrid, solve_powersum_alpha_with, solve_trace_norm_alpha_with, AlphaRoot, Branch, SolverOptions,
};
use crate::scalar::Real;

/// Which bound a [`BoundReport`] carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    /// Lower bound on `E` from trace and norm.
    TraceNormMin,
    /// Upper bound on `s^n / p` from `E` (reverse AM-GM).
    ReverseAmGm,
    /// Lower bound on `E` from `S_1`, `S_r`.
    PowerSumMin,
    /// Upper bound on `S_r` from `S_1`, `E`.
    PowerSumUpper,
    /// Upper bound on `E` from `S_1`, `S_r`.
    PowerSumMax,
    /// Lower bound on `E` from the discriminant.
    DiscriminantEnergy,
    /// Lower bound on a quadratic potential from the discriminant.
    DiscriminantPotential,
}

impl Formula {
    pub fn name(&self) -> &'static str {
        match self {
            Formula::TraceNormMin => "trace_norm_min",
            Formula::ReverseAmGm => "reverse_amgm",
            Formula::PowerSumMin => "power_sum_min",
            Formula::PowerSumUpper => "power_sum_upper",
            Formula::PowerSumMax => "power_sum_max",
            Formula::DiscriminantEnergy => "discriminant_energy",
            Formula::DiscriminantPotential => "discriminant_potential",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport<T: Real = f64> {
    pub value: T,
    pub alpha: Option<AlphaRoot<T>>,
    pub formula: Formula,
    pub inputs: Vec<(&'static str, f64)>,
    /// For the discriminant bounds: whether `(n-1) S_2 < S_1^2 < n S_2`
    /// holds, when the caller supplied `S_1`, `S_2`.
    pub hypothesis_holds: Option<bool>,
}

impl<T: Real> BoundReport<T> {
    fn new(value: T, formula: Formula, inputs: Vec<(&'static str, f64)>) -> Self {
        Self { value, alpha: None, formula, inputs, hypothesis_holds: None }
    }

    fn with_alpha(mut self, a: AlphaRoot<T>) -> Self {
        self.alpha = Some(a);
        self
    }
}

fn f<T: Real>(x: T) -> f64 {
    x.to_f64_lossy()
}

/// `E = n S_2 - S_1^2`; the whole story when `r = 2`.
pub fn energy_identity<T: Real>(n: usize, s1: T, s2: T) -> Result<T> {
    let e = T::of_usize(n) * s2 - s1 * s1;
    if e < -T::lit(T::FEAS_TOL) * s1 * s1 {
        return Err(Error::infeasible("S_1^2 <= n S_2"));
    }
    if e > T::of_usize(n - 1) * s1 * s1 * (T::one() + T::lit(T::FEAS_TOL)) {
        return Err(Error::infeasible("S_2 <= S_1^2"));
    }
    Ok(e.max(T::zero()))
}

/// `E >= (n-1)(ns)^2 alpha^2`, `alpha` the negative root of the trace/norm
/// equation with `k = 1`.
pub fn energy_min_trace_norm<T: Real>(tn: &TraceNormConstraints<T>) -> Result<BoundReport<T>> {
    energy_min_trace_norm_with(tn, &SolverOptions::for_scalar::<T>())
}

pub fn energy_min_trace_norm_with<T: Real>(tn: &TraceNormConstraints<T>, opts: &SolverOptions) -> Result<BoundReport<T>> {
    let n = tn.n();
    let root = solve_trace_norm_alpha_with(n, 1, tn.s(), tn.p(), Branch::Negative, opts)?;
    let ns = tn.trace();
    let value = T::of_usize(n - 1) * ns * ns * root.alpha * root.alpha;
    let inputs = vec![("n", n as f64), ("s", f(tn.s())), ("p", f(tn.p()))];
    Ok(BoundReport::new(value, Formula::TraceNormMin, inputs).with_alpha(root))
}

/// Upper bound on `s^n / p` given `E < (ns)^2 / (n-1)`:
/// `1 / ((1 + beta (n-1)) (1 - beta)^(n-1))` with
/// `beta = -sqrt(E / ((n-1)(ns)^2))`.
pub fn reverse_amgm<T: Real>(n: usize, s: T, e: T) -> Result<BoundReport<T>> {
    if n < 2 || !(s > T::zero()) || !(e >= T::zero()) || !e.is_finite() {
        return Err(Error::invalid("need n >= 2, s > 0, E >= 0"));
    }
    let ns = T::of_usize(n) * s;
    let nm1 = T::of_usize(n - 1);
    if e >= ns * ns / nm1 {
        return Err(Error::hypothesis("E < (ns)^2 / (n-1)"));
    }
    let beta = -(e / (nm1 * ns * ns)).sqrt();
    let log_bound = -(T::one() + beta * nm1).ln() - nm1 * (-beta).ln_1p();
    let inputs = vec![("n", n as f64), ("s", f(s)), ("E", f(e))];
    let mut rep = BoundReport::new(log_bound.exp(), Formula::ReverseAmGm, inputs);
    rep.alpha = Some(AlphaRoot {
        alpha: beta,
        branch: Branch::Negative,
        k: 1,
        n,
        residual: T::zero(),
        iterations: 0,
        at_endpoint: false,
    });
    Ok(rep)
}

/// `E >= (n-1) S_1^2 alpha^2`, `alpha` the positive root of `g` with `k = 1`.
pub fn energy_min_power<T: Real>(ps: &PowerSumConstraints<T>) -> Result<BoundReport<T>> {
    energy_min_power_with(ps, &SolverOptions::for_scalar::<T>())
}

pub fn energy_min_power_with<T: Real>(ps: &PowerSumConstraints<T>, opts: &SolverOptions) -> Result<BoundReport<T>> {
    let n = ps.n();
    let inputs = power_inputs(ps);
    if ps.is_all_equal() {
        return Ok(BoundReport::new(T::zero(), Formula::PowerSumMin, inputs));
    }
    let root = solve_powersum_alpha_with(n, 1, ps.r(), ps.ratio(), Branch::Positive, opts)?;
    let s1 = ps.s1();
    let value = T::of_usize(n - 1) * s1 * s1 * root.alpha * root.alpha;
    Ok(BoundReport::new(value, Formula::PowerSumMin, inputs).with_alpha(root))
}

fn power_inputs<T: Real>(ps: &PowerSumConstraints<T>) -> Vec<(&'static str, f64)> {
    vec![("n", ps.n() as f64), ("r", ps.r() as f64), ("s1", f(ps.s1())), ("sr", f(ps.sr()))]
}

/// `S_r <= ((1 + beta(n-1))^r + (n-1)(1 - beta)^r) S_1^r / n^r` with
/// `beta = sqrt(E / ((n-1) S_1^2))`.
pub fn power_sum_upper<T: Real>(n: usize, r: u32, s1: T, e: T) -> Result<BoundReport<T>> {
    if n < 2 || r < 2 || !(s1 > T::zero()) || !e.is_finite() {
        return Err(Error::invalid("need n >= 2, r >= 2, S_1 > 0"));
    }
    let nm1 = T::of_usize(n - 1);
    let emax = nm1 * s1 * s1;
    let tol = T::lit(T::FEAS_TOL);
    if e < -tol * emax || e > emax * (T::one() + tol) {
        return Err(Error::infeasible("0 <= E <= (n-1) S_1^2"));
    }
    let beta = (e.max(T::zero()) / emax).sqrt().min(T::one());
    let ri = r as i32;
    let factor = (T::one() + beta * nm1).powi(ri) + nm1 * (T::one() - beta).powi(ri);
    let value = factor * (s1 / T::of_usize(n)).powi(ri);
    let inputs = vec![("n", n as f64), ("r", r as f64), ("s1", f(s1)), ("E", f(e))];
    let mut rep = BoundReport::new(value, Formula::PowerSumUpper, inputs);
    rep.alpha = Some(AlphaRoot {
        alpha: beta,
        branch: Branch::Positive,
        k: 1,
        n,
        residual: T::zero(),
        iterations: 0,
        at_endpoint: false,
    });
    Ok(rep)
}

/// `E <= S_1^2 / c * (n (c-1) alpha^2 + n - c)` with `c = ceil(ñ)` and
/// `alpha` the negative root of `g` on `c` points with `k = 1`. For `c = 1`
/// the bound is `(n-1) S_1^2`, attained by `(S_1, 0, ..., 0)`.
pub fn energy_max_power<T: Real>(ps: &PowerSumConstraints<T>) -> Result<BoundReport<T>> {
    energy_max_power_with(ps, &SolverOptions::for_scalar::<T>())
}

pub fn energy_max_power_with<T: Real>(ps: &PowerSumConstraints<T>, opts: &SolverOptions) -> Result<BoundReport<T>> {
    let n = ps.n();
    let c = ps.ntilde().ceil;
    let s1 = ps.s1();
    let inputs = power_inputs(ps);
    if ps.is_all_equal() {
        return Ok(BoundReport::new(T::zero(), Formula::PowerSumMax, inputs));
    }
    if c == 1 {
        return Ok(BoundReport::new(T::of_usize(n - 1) * s1 * s1, Formula::PowerSumMax, inputs));
    }
    let root = solve_powersum_alpha_with(c, 1, ps.r(), ps.ratio_for(c), Branch::Negative, opts)?;
    let (nf, cf) = (T::of_usize(n), T::of_usize(c));
    let value = s1 * s1 / cf * (nf * (cf - T::one()) * root.alpha * root.alpha + nf - cf);
    Ok(BoundReport::new(value, Formula::PowerSumMax, inputs).with_alpha(root))
}

/// `U = alpha_1^2 m`, `V = alpha_2^2 m`, `F = (V+1)/n`, `G = (U+1)/n`, each
/// present only when its branch exists.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UvValues<T: Real = f64> {
    pub u: Option<T>,
    pub v: Option<T>,
    pub f: Option<T>,
    pub g: Option<T>,
    pub alpha_neg: Option<T>,
    pub alpha_pos: Option<T>,
}

pub fn uv_values<T: Real>(n: usize, k: usize, r: u32, ratio: T) -> Result<UvValues<T>> {
    uv_values_with(n, k, r, ratio, &SolverOptions::for_scalar::<T>())
}

pub fn uv_values_with<T: Real>(n: usize, k: usize, r: u32, ratio: T, opts: &SolverOptions) -> Result<UvValues<T>> {
    let exists = branch_exists(n, k, r, ratio)?;
    let nf = T::of_usize(n);
    let m = nf / T::of_usize(k) - T::one();
    let solve = |b: Branch| -> Result<Option<T>> {
        if !exists.has(b) {
            return Ok(None);
        }
        Ok(Some(solve_powersum_alpha_with(n, k, r, ratio, b, opts)?.alpha))
    };
    let alpha_neg = solve(Branch::Negative)?;
    let alpha_pos = solve(Branch::Positive)?;
    let u = alpha_neg.map(|a| a * a * m);
    let v = alpha_pos.map(|a| a * a * m);
    Ok(UvValues {
        u,
        v,
        f: v.map(|v| (v + T::one()) / nf),
        g: u.map(|u| (u + T::one()) / nf),
        alpha_neg,
        alpha_pos,
    })
}

/// `(n-1) S_2 < S_1^2 < n S_2`.
pub fn discriminant_hypothesis<T: Real>(n: usize, s1: T, s2: T) -> bool {
    let nf = T::of_usize(n);
    (nf - T::one()) * s2 < s1 * s1 && s1 * s1 < nf * s2
}

/// `binom(n,2) * 2n * (Delta / Y(n))^(1/binom(n,2))`, from `log Delta`.
pub fn energy_lower_from_log_disc<T: Real>(n: usize, log_delta: T) -> Result<BoundReport<T>> {
    if n < 2 {
        return Err(Error::invalid(format!("n must be >= 2, got {n}")));
    }
    if log_delta.is_nan() || log_delta == T::neg_infinity() {
        return Err(Error::invalid("Delta must be positive"));
    }
    let b = T::of_usize(pairs(n));
    let value = b * T::of_usize(2 * n) * ((log_delta - log_hyperfactorial::<T>(n)) / b).exp();
    let inputs = vec![("n", n as f64), ("log_delta", f(log_delta))];
    Ok(BoundReport::new(value, Formula::DiscriminantEnergy, inputs))
}

pub fn energy_lower_from_disc<T: Real>(n: usize, delta: T) -> Result<BoundReport<T>> {
    if !(delta > T::zero()) {
        return Err(Error::invalid("Delta must be positive"));
    }
    let mut rep = energy_lower_from_log_disc(n, delta.ln())?;
    rep.inputs = vec![("n", n as f64), ("delta", f(delta))];
    Ok(rep)
}

/// Coefficients of `F = (a/n) sum x_i^2 + (b/n^2)(sum x_i)^2 + (c/n) sum x_i + d`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PotentialSpec<T: Real = f64> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: Real> PotentialSpec<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Result<Self> {
        if !(a > T::zero()) {
            return Err(Error::invalid("a must be positive"));
        }
        Ok(Self { a, b, c, d })
    }

    /// `(n^2, -n^2, 0, 0)`, for which `F` is the energy.
    pub fn energy(n: usize) -> Self {
        let n2 = T::of_usize(n * n);
        Self { a: n2, b: -n2, c: T::zero(), d: T::zero() }
    }

    pub fn evaluate(&self, xs: &[T]) -> T {
        let n = T::of_usize(xs.len());
        let s1: T = xs.iter().copied().sum();
        let s2: T = xs.iter().map(|&x| x * x).sum();
        self.a / n * s2 + self.b / (n * n) * s1 * s1 + self.c / n * s1 + self.d
    }
}

/// `binom(n,2) (2a/n) (Delta/Y(n))^(1/binom(n,2)) + (a+b) S_1^2/n^2 + c S_1/n + d`.
pub fn potential_lower_from_disc<T: Real>(spec: &PotentialSpec<T>, n: usize, s1: T, delta: T) -> Result<BoundReport<T>> {
    if !(spec.a > T::zero()) {
        return Err(Error::invalid("a must be positive"));
    }
    let e = energy_lower_from_disc(n, delta)?;
    let nf = T::of_usize(n);
    let value = e.value * spec.a / (nf * nf) + (spec.a + spec.b) * s1 * s1 / (nf * nf) + spec.c * s1 / nf + spec.d;
    let inputs = vec![
        ("n", n as f64),
        ("s1", f(s1)),
        ("delta", f(delta)),
        ("a", f(spec.a)),
        ("b", f(spec.b)),
        ("c", f(spec.c)),
        ("d", f(spec.d)),
    ];
    Ok(BoundReport::new(value, Formula::DiscriminantPotential, inputs))
}

/// Constants of the trace problem: `theta`, `lambda0 = e (1 + 1/theta)^(-theta)`,
/// the best published limit 1.793145, and `2/sqrt(e)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SiegelConstants {
    pub theta: f64,
    /// `(1+theta) ln(1 + 1/theta) + ln(theta)/(1+theta) - 1` at `theta`.
    pub theta_residual: f64,
    pub lambda0: f64,
    pub lambda_www: f64,
    pub two_over_sqrt_e: f64,
}

pub const LAMBDA_WWW: f64 = 1.793145;

/// Left-hand side minus one of the equation defining `theta`, and its slope.
pub fn siegel_equation(t: f64) -> (f64, f64) {
    let l = (1.0 / t).ln_1p();
    let val = (1.0 + t) * l + t.ln() / (1.0 + t) - 1.0;
    let d = l - 1.0 / t + 1.0 / (t * (1.0 + t)) - t.ln() / ((1.0 + t) * (1.0 + t));
    (val, d)
}

pub fn siegel_constants() -> SiegelConstants {
    let opts = SolverOptions { tol: 1e-15, bisect_width: 1e-6, max_iter: 200 };
    // the equation has a single sign change on this interval
    let theta = match hybrid(siegel_equation, 0.01, 1.0, 1e-15, &opts) {
        Ok((t, _)) => t,
        Err(_) => unreachable!("bracket verified to change sign"),
    };
    SiegelConstants {
        theta,
        theta_residual: siegel_equation(theta).0,
        lambda0: std::f64::consts::E * (-theta * (1.0 / theta).ln_1p()).exp(),
        lambda_www: LAMBDA_WWW,
        two_over_sqrt_e: 2.0 / 0.5f64.exp(),
    }
}
