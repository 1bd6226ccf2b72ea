//! Scalar abstractions shared by the floating-point side of the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumCast};

/// Floating-point scalar: `f32` or `f64`.
///
/// The associated tolerances are the defaults used by the solvers and the
/// feasibility checks; they are scaled to the precision of the type.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumCast + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Residual tolerance for transcendental root solves.
    const SOLVER_TOL: f64;
    /// Relative tolerance for feasibility and boundary snapping.
    const FEAS_TOL: f64;

    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable")
    }

    #[inline]
    fn of_usize(n: usize) -> Self {
        <Self as FromPrimitive>::from_usize(n).expect("integer representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        NumCast::from(self).unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const SOLVER_TOL: f64 = 1e-10;
    const FEAS_TOL: f64 = 1e-9;
}

impl Real for f32 {
    const SOLVER_TOL: f64 = 1e-4;
    const FEAS_TOL: f64 = 1e-5;
}

/// Neumaier compensated accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum<T> {
    sum: T,
    carry: T,
}

impl<T: Real> CompensatedSum<T> {
    pub fn new() -> Self {
        Self { sum: T::zero(), carry: T::zero() }
    }

    pub fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry = self.carry + ((self.sum - t) + x);
        } else {
            self.carry = self.carry + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    pub fn value(&self) -> T {
        self.sum + self.carry
    }
}

/// Compensated sum of an iterator of reals.
pub fn compensated_sum<T: Real, I: IntoIterator<Item = T>>(items: I) -> T {
    let mut acc = CompensatedSum::new();
    for x in items {
        acc.add(x);
    }
    acc.value()
}

/// `true` when `a` and `b` agree to relative tolerance `tol` (absolute near zero).
pub fn approx_eq<T: Real>(a: T, b: T, tol: T) -> bool {
    (a - b).abs() <= tol * T::one().max(a.abs()).max(b.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let xs = [1e16, 1.0, -1e16, 1.0];
        assert_eq!(compensated_sum(xs.iter().copied()), 2.0);
        let naive: f64 = xs.iter().sum();
        assert_ne!(naive, 2.0);
    }

    #[test]
    fn f32_is_usable() {
        let s: f32 = compensated_sum([0.5f32, 0.25, 0.25]);
        assert_eq!(s, 1.0);
        assert!(approx_eq(1.0f32, 1.0 + 1e-6, f32::lit(f32::FEAS_TOL)));
    }
}
