//! Theory-independent extrema of the energy on a constraint surface.
//!
//! Two oracles: enumeration of every two-valued critical configuration
//! (including ones with coordinates pinned at zero), and a seeded
//! projected-gradient search from random starting points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::constraints::{PowerSumConstraints, TraceNormConstraints};
use crate::error::Result;
use crate::rootfind::{branch_exists, solve_powersum_alpha, solve_trace_norm_alpha, Branch};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CriticalKind {
    Interior,
    /// `zeros > 0` coordinates sit at zero.
    Boundary,
}

/// `k` copies of `x`, `n - zeros - k` copies of `y`, `zeros` copies of 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CriticalConfig {
    pub k: usize,
    pub x: f64,
    pub y: f64,
    pub zeros: usize,
    pub energy: f64,
    pub kind: CriticalKind,
    /// `None` for the all-equal point of a stratum.
    pub branch: Option<Branch>,
}

impl CriticalConfig {
    pub fn points(&self, n: usize) -> Vec<f64> {
        let mut v = vec![self.x; self.k];
        v.resize(n - self.zeros, self.y);
        v.resize(n, 0.0);
        v
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TwoValueExtrema {
    pub candidates: Vec<CriticalConfig>,
    pub min: f64,
    pub max: f64,
}

/// Energy of `n` points after padding a configuration of `n - j` points
/// (energy `e_inner`, sum `s1`) with `j` zeros.
pub fn lift_energy(n: usize, j: usize, e_inner: f64, s1: f64) -> f64 {
    let nj = (n - j) as f64;
    n as f64 / nj * e_inner + j as f64 * s1 * s1 / nj
}

/// All two-valued critical configurations with `j = 0..=k*` zeros.
pub fn extrema_two_value(ps: &PowerSumConstraints) -> Result<TwoValueExtrema> {
    let n = ps.n();
    let (s1, sr, r) = (ps.s1(), ps.sr(), ps.r());
    if ps.is_all_equal() {
        let c = CriticalConfig {
            k: n,
            x: s1 / n as f64,
            y: s1 / n as f64,
            zeros: 0,
            energy: 0.0,
            kind: CriticalKind::Interior,
            branch: None,
        };
        return Ok(TwoValueExtrema { candidates: vec![c], min: 0.0, max: 0.0 });
    }
    let k_star = ps.ntilde().k_star;
    let cells: Vec<(usize, usize)> =
        (0..=k_star).flat_map(|j| (1..(n - j).max(2)).map(move |k| (j, k))).collect();
    let found: Vec<Vec<CriticalConfig>> =
        cells.par_iter().map(|&(j, k)| cell_candidates(ps, j, k)).collect::<Result<_>>()?;
    let candidates: Vec<CriticalConfig> = found
        .into_iter()
        .flatten()
        .filter(|c| reproduces(&c.points(n), s1, sr, r, 1e-9))
        .collect();
    let min = candidates.iter().map(|c| c.energy).fold(f64::INFINITY, f64::min);
    let max = candidates.iter().map(|c| c.energy).fold(f64::NEG_INFINITY, f64::max);
    Ok(TwoValueExtrema { candidates, min, max })
}

fn cell_candidates(ps: &PowerSumConstraints, j: usize, k: usize) -> Result<Vec<CriticalConfig>> {
    let n = ps.n();
    let (s1, r) = (ps.s1(), ps.r());
    let inner = n - j;
    let kind = if j == 0 { CriticalKind::Interior } else { CriticalKind::Boundary };
    let tol = 1e-9;
    if inner == 1 {
        // a single nonzero point only fits when S_r = S_1^r
        let ok = (ps.sr() / s1.powi(r as i32) - 1.0).abs() <= tol;
        let c = CriticalConfig { k: 1, x: s1, y: s1, zeros: j, energy: lift_energy(n, j, 0.0, s1), kind, branch: None };
        return Ok(if ok { vec![c] } else { vec![] });
    }
    let ratio = ps.ratio_for(inner);
    if (ratio - inner as f64).abs() <= tol * inner as f64 {
        if k > 1 {
            return Ok(vec![]);
        }
        let x = s1 / inner as f64;
        let c = CriticalConfig { k: inner, x, y: x, zeros: j, energy: lift_energy(n, j, 0.0, s1), kind, branch: None };
        return Ok(vec![c]);
    }
    if ratio < inner as f64 {
        return Ok(vec![]);
    }
    let exists = branch_exists(inner, k, r, ratio)?;
    let mut out = Vec::new();
    for b in [Branch::Negative, Branch::Positive] {
        if !exists.has(b) {
            continue;
        }
        let root = solve_powersum_alpha(inner, k, r, ratio, b)?;
        let (x, y) = root.two_values(s1);
        let e_inner = (k * (inner - k)) as f64 * (x - y) * (x - y);
        out.push(CriticalConfig { k, x, y, zeros: j, energy: lift_energy(n, j, e_inner, s1), kind, branch: Some(b) });
    }
    Ok(out)
}

fn reproduces(xs: &[f64], s1: f64, sr: f64, r: u32, tol: f64) -> bool {
    let a: f64 = xs.iter().sum();
    let b: f64 = xs.iter().map(|x| x.powi(r as i32)).sum();
    (a - s1).abs() <= tol * s1 && (b - sr).abs() <= tol * sr
}

fn energy_of(xs: &[f64]) -> f64 {
    crate::config::energy_slice(xs)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchOptions {
    pub restarts: usize,
    pub seed: u64,
    pub max_steps: usize,
}

impl SearchOptions {
    pub fn new(restarts: usize, seed: u64) -> Self {
        Self { restarts, seed, max_steps: 4000 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchExtrema {
    pub min: f64,
    pub max: f64,
    pub argmin: Vec<f64>,
    pub argmax: Vec<f64>,
    /// Restarts whose projection failed; excluded from the extremes.
    pub failed_restarts: Vec<usize>,
}

/// A constraint surface the search can move on.
trait Surface: Sync {
    fn n(&self) -> usize;
    fn s1(&self) -> f64;
    /// Second constraint normal at `x_i` (the first is all ones).
    fn normal(&self, x: f64) -> f64;
    /// Move `x` back onto the surface, possibly freezing coordinates at 0.
    fn retract(&self, x: &mut [f64], frozen: &mut [bool]) -> bool;
    /// Whether `free` non-frozen coordinates can still carry the constraints.
    fn can_freeze_to(&self, free: usize) -> bool;
}

struct PowerSurface {
    n: usize,
    r: i32,
    s1: f64,
    sr: f64,
    min_free: usize,
}

/// Solve a monotone scalar equation on `[lo, hi]` by safeguarded Newton.
fn monotone_solve(f: impl Fn(f64) -> (f64, f64), mut lo: f64, mut hi: f64, start: f64, tol: f64) -> f64 {
    let rising = f(lo).0 < f(hi).0;
    let mut t = start.clamp(lo, hi);
    for _ in 0..200 {
        let (v, d) = f(t);
        if v.abs() <= tol {
            return t;
        }
        if (v < 0.0) == rising {
            lo = t;
        } else {
            hi = t;
        }
        let step = t - v / d;
        let next = if step.is_finite() && step > lo && step < hi { step } else { 0.5 * (lo + hi) };
        if hi - lo <= 1e-16 * (1.0 + hi.abs()) || next == t {
            return next;
        }
        t = next;
    }
    t
}

fn free_mean(x: &[f64], frozen: &[bool]) -> (usize, f64) {
    let (c, s) = x.iter().zip(frozen).filter(|(_, f)| !**f).fold((0, 0.0), |(c, s), (v, _)| (c + 1, s + v));
    (c, s / c.max(1) as f64)
}

fn restore_sum(x: &mut [f64], frozen: &[bool], target: f64) {
    let (f, _) = free_mean(x, frozen);
    let sum: f64 = x.iter().sum();
    let delta = (target - sum) / f as f64;
    if x.iter().zip(frozen).all(|(v, fr)| *fr || v + delta > 0.0) {
        for (v, fr) in x.iter_mut().zip(frozen) {
            if !fr {
                *v += delta;
            }
        }
    } else {
        let scale = target / sum;
        x.iter_mut().for_each(|v| *v *= scale);
    }
}

impl Surface for PowerSurface {
    fn n(&self) -> usize {
        self.n
    }

    fn s1(&self) -> f64 {
        self.s1
    }

    fn normal(&self, x: f64) -> f64 {
        self.r as f64 * x.powi(self.r - 1)
    }

    fn can_freeze_to(&self, free: usize) -> bool {
        free >= self.min_free.max(1)
    }

    fn retract(&self, x: &mut [f64], frozen: &mut [bool]) -> bool {
        for _ in 0..=self.n {
            restore_sum(x, frozen, self.s1);
            let (f, m) = free_mean(x, frozen);
            let d: Vec<f64> = x.iter().zip(frozen.iter()).map(|(v, fr)| if *fr { 0.0 } else { v - m }).collect();
            let r = self.r;
            let h = |t: f64| {
                let mut v = 0.0;
                let mut dv = 0.0;
                for (di, fr) in d.iter().zip(frozen.iter()) {
                    if !fr {
                        let y = m + t * di;
                        v += y.powi(r);
                        dv += r as f64 * di * y.powi(r - 1);
                    }
                }
                (v - self.sr, dv)
            };
            let h0 = h(0.0).0;
            if h0 > 1e-9 * self.sr {
                return false;
            }
            let t_max = d.iter().filter(|di| **di < 0.0).map(|di| m / -di).fold(f64::INFINITY, f64::min);
            if !t_max.is_finite() {
                if h0.abs() <= 1e-9 * self.sr {
                    return true;
                }
                return false;
            }
            if h(t_max).0 < 0.0 {
                // spread until a coordinate reaches zero, pin it, and retry on fewer points
                if !self.can_freeze_to(f - 1) {
                    return false;
                }
                for ((v, di), fr) in x.iter_mut().zip(&d).zip(frozen.iter_mut()) {
                    if !*fr {
                        *v = m + t_max * di;
                        if *v <= 1e-14 * m {
                            *v = 0.0;
                            *fr = true;
                        }
                    }
                }
                continue;
            }
            let t = monotone_solve(h, 0.0, t_max, 1.0, 1e-13 * self.sr);
            for ((v, di), fr) in x.iter_mut().zip(&d).zip(frozen.iter()) {
                if !fr {
                    *v = (m + t * di).max(0.0);
                }
            }
            return reproduces(x, self.s1, self.sr, self.r as u32, 1e-10);
        }
        false
    }
}

struct TraceNormSurface {
    n: usize,
    total: f64,
    log_p: f64,
}

impl Surface for TraceNormSurface {
    fn n(&self) -> usize {
        self.n
    }

    fn s1(&self) -> f64 {
        self.total
    }

    fn normal(&self, x: f64) -> f64 {
        1.0 / x
    }

    fn can_freeze_to(&self, _free: usize) -> bool {
        false
    }

    fn retract(&self, x: &mut [f64], _frozen: &mut [bool]) -> bool {
        let sum: f64 = x.iter().sum();
        x.iter_mut().for_each(|v| *v *= self.total / sum);
        let m = self.total / self.n as f64;
        let d: Vec<f64> = x.iter().map(|v| v - m).collect();
        let h = |t: f64| {
            d.iter().fold((-self.log_p, 0.0), |(v, dv), di| {
                let y = m + t * di;
                (v + y.ln(), dv + di / y)
            })
        };
        let h0 = h(0.0).0;
        if h0 < -1e-12 {
            return false;
        }
        let t_max = d.iter().filter(|di| **di < 0.0).map(|di| m / -di).fold(f64::INFINITY, f64::min);
        if !t_max.is_finite() {
            return h0.abs() <= 1e-12;
        }
        let t = monotone_solve(h, 0.0, t_max * (1.0 - 1e-15), 1.0, 1e-13);
        for (v, di) in x.iter_mut().zip(&d) {
            *v = m + t * di;
        }
        x.iter().all(|v| *v > 0.0) && h(t).0.abs() <= 1e-10
    }
}

/// Tangential component (on free coordinates) of `g`, orthogonal to the
/// all-ones vector and to the surface's second normal.
fn project(surface: &dyn Surface, x: &[f64], frozen: &[bool], g: &[f64]) -> Vec<f64> {
    let mask = |v: &mut Vec<f64>| v.iter_mut().zip(frozen).for_each(|(a, f)| if *f { *a = 0.0 });
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(p, q)| p * q).sum::<f64>();
    let mut e1: Vec<f64> = vec![1.0; x.len()];
    mask(&mut e1);
    let norm1 = dot(&e1, &e1).sqrt();
    e1.iter_mut().for_each(|v| *v /= norm1);
    let mut e2: Vec<f64> = x.iter().map(|&v| surface.normal(v)).collect();
    mask(&mut e2);
    let c = dot(&e2, &e1);
    e2.iter_mut().zip(&e1).for_each(|(a, b)| *a -= c * b);
    let norm2 = dot(&e2, &e2).sqrt();
    let mut p = g.to_vec();
    mask(&mut p);
    let c1 = dot(&p, &e1);
    p.iter_mut().zip(&e1).for_each(|(a, b)| *a -= c1 * b);
    if norm2 > 1e-12 * norm1 {
        e2.iter_mut().for_each(|v| *v /= norm2);
        let c2 = dot(&p, &e2);
        p.iter_mut().zip(&e2).for_each(|(a, b)| *a -= c2 * b);
    }
    p
}

/// Monotone projected-gradient walk; `sign = 1` maximises, `-1` minimises.
fn walk(surface: &dyn Surface, mut x: Vec<f64>, mut frozen: Vec<bool>, sign: f64, max_steps: usize) -> (f64, Vec<f64>) {
    let n = surface.n();
    let mean = surface.s1() / n as f64;
    let h0 = 0.1 * mean;
    let h_min = 1e-13 * mean;
    let mut e = energy_of(&x);
    let mut h = h0;
    for _ in 0..max_steps {
        if sign < 0.0 {
            // descent pushes zero coordinates up, so pins never need to persist
            frozen.iter_mut().for_each(|f| *f = false);
        }
        let g: Vec<f64> = x.iter().map(|v| sign * (v - mean)).collect();
        let p = project(surface, &x, &frozen, &g);
        let pn = p.iter().map(|v| v * v).sum::<f64>().sqrt();
        if pn <= 1e-14 * mean {
            break;
        }
        let mut accepted = false;
        while h >= h_min {
            let mut y: Vec<f64> = x.iter().zip(&p).map(|(v, d)| v + h * d / pn).collect();
            let mut fr = frozen.clone();
            let free_before = fr.iter().filter(|f| !**f).count();
            let hits = y.iter().zip(&fr).filter(|(v, f)| !**f && **v <= 0.0).count();
            if hits > 0 {
                if !surface.can_freeze_to(free_before - hits) {
                    h *= 0.5;
                    continue;
                }
                for (v, f) in y.iter_mut().zip(fr.iter_mut()) {
                    if !*f && *v <= 0.0 {
                        *v = 0.0;
                        *f = true;
                    }
                }
            }
            if surface.retract(&mut y, &mut fr) {
                let ey = energy_of(&y);
                if sign * (ey - e) > 0.0 {
                    x = y;
                    frozen = fr;
                    e = ey;
                    accepted = true;
                    h = (2.0 * h).min(h0);
                    break;
                }
            }
            h *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    (e, x)
}

struct RestartOutcome {
    min: Option<(f64, Vec<f64>)>,
    max: Option<(f64, Vec<f64>)>,
}

fn random_start(rng: &mut ChaCha8Rng, n: usize, total: f64) -> Vec<f64> {
    let shape = 1.0 + 3.0 * rng.gen::<f64>();
    let raw: Vec<f64> = (0..n).map(|_| (-(1.0 - rng.gen::<f64>()).ln()).powf(shape) + 1e-9).collect();
    let s: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v * total / s).collect()
}

fn run_search(surface: &dyn Surface, opts: &SearchOptions) -> SearchExtrema {
    let n = surface.n();
    let outcomes: Vec<RestartOutcome> = (0..opts.restarts)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            rng.set_stream(i as u64);
            for _ in 0..16 {
                let mut x = random_start(&mut rng, n, surface.s1());
                let mut frozen = vec![false; n];
                if surface.retract(&mut x, &mut frozen) {
                    return RestartOutcome {
                        min: Some(walk(surface, x.clone(), frozen.clone(), -1.0, opts.max_steps)),
                        max: Some(walk(surface, x, frozen, 1.0, opts.max_steps)),
                    };
                }
            }
            RestartOutcome { min: None, max: None }
        })
        .collect();
    let mut best = SearchExtrema {
        min: f64::INFINITY,
        max: f64::NEG_INFINITY,
        argmin: vec![],
        argmax: vec![],
        failed_restarts: vec![],
    };
    // sequential merge: strict comparisons keep the lowest restart index on ties
    for (i, o) in outcomes.into_iter().enumerate() {
        match (o.min, o.max) {
            (Some((lo, xl)), Some((hi, xh))) => {
                if lo < best.min {
                    best.min = lo;
                    best.argmin = xl;
                }
                if hi > best.max {
                    best.max = hi;
                    best.argmax = xh;
                }
            }
            _ => best.failed_restarts.push(i),
        }
    }
    best
}

/// Randomised projected-gradient extrema of `E` on the power-sum surface.
pub fn extrema_search(ps: &PowerSumConstraints, restarts: usize, seed: u64) -> Result<SearchExtrema> {
    extrema_search_with(ps, &SearchOptions::new(restarts, seed))
}

pub fn extrema_search_with(ps: &PowerSumConstraints, opts: &SearchOptions) -> Result<SearchExtrema> {
    if opts.restarts == 0 {
        return Err(crate::error::Error::invalid("restarts must be >= 1"));
    }
    let n = ps.n();
    if ps.is_all_equal() {
        let x = vec![ps.s1() / n as f64; n];
        return Ok(SearchExtrema { min: 0.0, max: 0.0, argmin: x.clone(), argmax: x, failed_restarts: vec![] });
    }
    let surface = PowerSurface { n, r: ps.r() as i32, s1: ps.s1(), sr: ps.sr(), min_free: ps.ntilde().ceil };
    Ok(run_search(&surface, opts))
}

/// One two-valued critical point of the trace/norm problem.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceNormCandidate {
    pub k: usize,
    pub branch: Branch,
    pub alpha: f64,
    /// `(n/k - 1)(ns)^2 alpha^2`.
    pub energy: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceNormExtrema {
    pub candidates: Vec<TraceNormCandidate>,
    pub two_value_min: f64,
    pub two_value_max: f64,
    pub search: SearchExtrema,
    pub min: f64,
    pub max: f64,
}

impl TraceNormExtrema {
    /// Among negative-branch candidates with `k <= n/2` (each two-valued
    /// configuration appears once there), the `k` of least energy; ties
    /// within `rel_tol` go to the smaller `k`.
    pub fn argmin_k(&self, n: usize, rel_tol: f64) -> Option<usize> {
        let mut best: Option<&TraceNormCandidate> = None;
        for c in self.candidates.iter().filter(|c| c.branch == Branch::Negative && 2 * c.k <= n) {
            if best.map_or(true, |b| c.energy < b.energy * (1.0 - rel_tol)) {
                best = Some(c);
            }
        }
        best.map(|c| c.k)
    }
}

/// Extrema of `E` on `{sum x = ns, prod x = p, x > 0}`.
pub fn extrema_trace_norm(tn: &TraceNormConstraints, restarts: usize, seed: u64) -> Result<TraceNormExtrema> {
    extrema_trace_norm_with(tn, &SearchOptions::new(restarts, seed))
}

pub fn extrema_trace_norm_with(tn: &TraceNormConstraints, opts: &SearchOptions) -> Result<TraceNormExtrema> {
    if opts.restarts == 0 {
        return Err(crate::error::Error::invalid("restarts must be >= 1"));
    }
    let n = tn.n();
    let ns = tn.trace();
    if tn.is_all_equal() {
        let x = vec![tn.s(); n];
        let search = SearchExtrema { min: 0.0, max: 0.0, argmin: x.clone(), argmax: x, failed_restarts: vec![] };
        return Ok(TraceNormExtrema { candidates: vec![], two_value_min: 0.0, two_value_max: 0.0, search, min: 0.0, max: 0.0 });
    }
    let mut candidates = Vec::new();
    for k in 1..n {
        for b in [Branch::Negative, Branch::Positive] {
            let root = solve_trace_norm_alpha(n, k, tn.s(), tn.p(), b)?;
            let energy = (n as f64 / k as f64 - 1.0) * ns * ns * root.alpha * root.alpha;
            candidates.push(TraceNormCandidate { k, branch: b, alpha: root.alpha, energy });
        }
    }
    let two_value_min = candidates.iter().map(|c| c.energy).fold(f64::INFINITY, f64::min);
    let two_value_max = candidates.iter().map(|c| c.energy).fold(f64::NEG_INFINITY, f64::max);
    let surface = TraceNormSurface { n, total: ns, log_p: tn.p().ln() };
    let search = run_search(&surface, opts);
    Ok(TraceNormExtrema {
        min: two_value_min.min(search.min),
        max: two_value_max.max(search.max),
        candidates,
        two_value_min,
        two_value_max,
        search,
    })
}
