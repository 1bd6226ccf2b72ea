//! Constraint sets: fixed power sums `(S_1, S_r)` and fixed trace/norm `(ns, p)`.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Effective point count `ñ` with `ñ^(r-1) = S_1^r / S_r`, its (snapped)
/// ceiling, and the maximal number of zero coordinates `k* = n - ceil(ñ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NTilde<T: Real = f64> {
    pub value: T,
    pub ceil: usize,
    pub k_star: usize,
}

impl<T: Real> NTilde<T> {
    /// Whether `ñ` was snapped to an integer.
    pub fn is_integral(&self) -> bool {
        (self.value - T::of_usize(self.ceil)).abs() <= T::lit(T::FEAS_TOL) * self.value
    }
}

/// Compute `ñ`, `ceil(ñ)` and `k*` for power-sum data, checking
/// `S_r <= S_1^r <= n^(r-1) S_r` to relative tolerance.
pub fn ntilde<T: Real>(n: usize, r: u32, s1: T, sr: T) -> Result<NTilde<T>> {
    if n < 2 {
        return Err(Error::invalid(format!("n must be >= 2, got {n}")));
    }
    if r < 2 {
        return Err(Error::invalid(format!("r must be >= 2, got {r}")));
    }
    if !(s1 > T::zero() && s1.is_finite() && sr > T::zero() && sr.is_finite()) {
        return Err(Error::invalid("S_1 and S_r must be positive and finite"));
    }
    let tol = T::lit(T::FEAS_TOL);
    let rm1 = T::of_usize(r as usize - 1);
    // (r-1) log ñ = r log S_1 - log S_r
    let log_nt = (T::of_usize(r as usize) * s1.ln() - sr.ln()) / rm1;
    let log_n = T::of_usize(n).ln();
    if log_nt < -tol {
        return Err(Error::infeasible("S_r <= S_1^r"));
    }
    if log_nt > log_n + tol {
        return Err(Error::infeasible("S_1^r <= n^(r-1) S_r"));
    }
    let value = log_nt.max(T::zero()).min(log_n).exp();
    let nearest = value.round();
    let ceil = if (value - nearest).abs() <= tol * value {
        nearest
    } else {
        value.ceil()
    };
    let ceil = ceil.to_usize().unwrap_or(n).clamp(1, n);
    Ok(NTilde { value, ceil, k_star: n - ceil })
}

/// `(n, r, S_1, S_r)` with `r >= 3`; defines the manifold `M_{r,n}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PowerSumConstraints<T: Real = f64> {
    n: usize,
    r: u32,
    s1: T,
    sr: T,
    nt: NTilde<T>,
}

impl<T: Real> PowerSumConstraints<T> {
    pub fn new(n: usize, r: u32, s1: T, sr: T) -> Result<Self> {
        if r == 2 {
            return Err(Error::invalid(
                "r = 2 fixes the energy exactly (E = n S_2 - S_1^2); use the identity instead",
            ));
        }
        if r < 3 {
            return Err(Error::invalid(format!("r must be >= 3, got {r}")));
        }
        let nt = ntilde(n, r, s1, sr)?;
        Ok(Self { n, r, s1, sr, nt })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn s1(&self) -> T {
        self.s1
    }

    pub fn sr(&self) -> T {
        self.sr
    }

    pub fn ntilde(&self) -> NTilde<T> {
        self.nt
    }

    /// `n^r S_r / S_1^r`, the right-hand side of the alpha-equation.
    pub fn ratio(&self) -> T {
        self.ratio_for(self.n)
    }

    /// Same ratio with `m` points in place of `n`: `m^r S_r / S_1^r`.
    pub fn ratio_for(&self, m: usize) -> T {
        let r = T::of_usize(self.r as usize);
        (r * (T::of_usize(m).ln() - self.s1.ln()) + self.sr.ln()).exp()
    }

    /// Hölder equality: the manifold is the single all-equal point.
    pub fn is_all_equal(&self) -> bool {
        self.nt.ceil == self.n && self.nt.is_integral()
    }
}

/// `(n, s, p)`: points with trace `n s` and norm (product) `p`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceNormConstraints<T: Real = f64> {
    n: usize,
    s: T,
    p: T,
}

impl<T: Real> TraceNormConstraints<T> {
    pub fn new(n: usize, s: T, p: T) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid(format!("n must be >= 2, got {n}")));
        }
        if !(s > T::zero() && s.is_finite() && p > T::zero() && p.is_finite()) {
            return Err(Error::invalid("s and p must be positive and finite"));
        }
        let c = Self { n, s, p };
        if c.log_norm_ratio() > T::lit(T::FEAS_TOL) {
            return Err(Error::infeasible("p <= s^n"));
        }
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> T {
        self.s
    }

    pub fn p(&self) -> T {
        self.p
    }

    /// Trace `n s`.
    pub fn trace(&self) -> T {
        T::of_usize(self.n) * self.s
    }

    /// `log(p / s^n)`, non-positive on feasible data.
    pub fn log_norm_ratio(&self) -> T {
        self.p.ln() - T::of_usize(self.n) * self.s.ln()
    }

    /// AM-GM equality: all points equal `s`.
    pub fn is_all_equal(&self) -> bool {
        self.log_norm_ratio() >= -T::lit(T::FEAS_TOL)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ntilde_examples() {
        let nt = ntilde::<f64>(3, 3, 3.0, 9.0).unwrap();
        assert!((nt.value - 3f64.sqrt()).abs() < 1e-14);
        assert_eq!((nt.ceil, nt.k_star), (2, 1));

        // all equal: S_1^r = n^(r-1) S_r
        let nt = ntilde::<f64>(4, 3, 4.0, 4.0).unwrap();
        assert_eq!((nt.ceil, nt.k_star), (4, 0));
        assert!((nt.value - 4.0).abs() < 1e-12);

        // single point mass
        let nt = ntilde::<f64>(5, 4, 2.0, 16.0).unwrap();
        assert_eq!((nt.ceil, nt.k_star), (1, 4));
    }

    #[test]
    fn ntilde_snaps_near_integers() {
        // ñ = 2 (1 + 1e-12): ceil must not flip to 3
        let nt_target: f64 = 2.0 * (1.0 + 1e-12);
        let sr = 3f64.powi(3) / nt_target.powi(2);
        let nt = ntilde::<f64>(5, 3, 3.0, sr).unwrap();
        assert_eq!(nt.ceil, 2);
        assert_eq!(nt.k_star, 3);
        assert!(nt.is_integral());
    }

    #[test]
    fn infeasible_names_the_inequality() {
        match ntilde::<f64>(3, 3, 1.0, 2.0) {
            Err(Error::Infeasible { condition }) => assert_eq!(condition, "S_r <= S_1^r"),
            other => panic!("{other:?}"),
        }
        match ntilde::<f64>(3, 3, 3.0, 0.5) {
            Err(Error::Infeasible { condition }) => assert_eq!(condition, "S_1^r <= n^(r-1) S_r"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn r_two_is_routed_to_identity() {
        let err = PowerSumConstraints::<f64>::new(3, 2, 3.0, 5.0).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }

    #[test]
    fn ratio_matches_definition() {
        let ps = PowerSumConstraints::<f64>::new(3, 3, 3.0, 9.0).unwrap();
        assert!((ps.ratio() - 9.0).abs() < 1e-12);
        assert!((ps.ratio_for(2) - 8.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn trace_norm_feasibility() {
        assert!(TraceNormConstraints::<f64>::new(3, 2.0, 6.0).is_ok());
        assert!(TraceNormConstraints::<f64>::new(3, 2.0, 8.0).unwrap().is_all_equal());
        assert!(matches!(TraceNormConstraints::<f64>::new(3, 2.0, 9.0), Err(Error::Infeasible { .. })));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn ntilde_decreases_in_sr(n in 2usize..12, r in 3u32..7, s1 in 0.5f64..5.0, a in 0.0f64..1.0, b in 0.0f64..1.0) {
                let lo = s1.powi(r as i32) / (n as f64).powi(r as i32 - 1);
                let hi = s1.powi(r as i32);
                let (a, b) = if a < b { (a, b) } else { (b, a) };
                prop_assume!(b - a > 1e-6);
                let sr_a = lo + a * (hi - lo);
                let sr_b = lo + b * (hi - lo);
                let na = ntilde::<f64>(n, r, s1, sr_a).unwrap();
                let nb = ntilde::<f64>(n, r, s1, sr_b).unwrap();
                prop_assert!(nb.value < na.value);
                prop_assert!(na.value >= 1.0 && na.value <= n as f64);
                prop_assert!(na.k_star < n);
                let back = na.value.powi(r as i32 - 1) * sr_a;
                prop_assert!((back - s1.powi(r as i32)).abs() <= 1e-9 * s1.powi(r as i32));
            }
        }
    }
}
