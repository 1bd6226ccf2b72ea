//! Point configurations and their elementary symmetric quantities.

use crate::error::{Error, Result};
use crate::scalar::{compensated_sum, CompensatedSum, Real};

/// A finite list of non-negative reals `x_1, ..., x_n` with `n >= 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct Configuration<T: Real = f64> {
    xs: Vec<T>,
}

impl<T: Real> Configuration<T> {
    pub fn new(xs: Vec<T>) -> Result<Self> {
        if xs.len() < 2 {
            return Err(Error::invalid(format!("configuration needs n >= 2 points, got {}", xs.len())));
        }
        if let Some((i, x)) = xs.iter().enumerate().find(|(_, x)| !x.is_finite() || **x < T::zero()) {
            return Err(Error::invalid(format!("entry {i} = {x} is not a non-negative real")));
        }
        Ok(Self { xs })
    }

    pub fn n(&self) -> usize {
        self.xs.len()
    }

    pub fn points(&self) -> &[T] {
        &self.xs
    }

    pub fn into_points(self) -> Vec<T> {
        self.xs
    }

    /// Potential energy `sum_{i<j} (x_i - x_j)^2`.
    pub fn energy(&self) -> T {
        energy(self)
    }

    pub fn power_sum(&self, r: u32) -> T {
        power_sum(self, r)
    }

    pub fn report(&self) -> EnergyReport<T> {
        EnergyReport { energy: self.energy(), s1: self.power_sum(1), s2: self.power_sum(2) }
    }
}

/// Energy together with the first two power sums.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnergyReport<T: Real = f64> {
    pub energy: T,
    pub s1: T,
    pub s2: T,
}

impl<T: Real> EnergyReport<T> {
    /// `n S_2 - S_1^2`, which equals the energy.
    pub fn identity_value(&self, n: usize) -> T {
        T::of_usize(n) * self.s2 - self.s1 * self.s1
    }
}

/// Potential energy of a configuration.
///
/// Evaluated as `n * sum (x_i - mean)^2` with a compensated two-pass sum;
/// this equals the pairwise sum exactly in real arithmetic and keeps the
/// relative error near machine precision for large `n`.
pub fn energy<T: Real>(c: &Configuration<T>) -> T {
    energy_slice(&c.xs)
}

/// [`energy`] on a raw slice (no validation).
pub fn energy_slice<T: Real>(xs: &[T]) -> T {
    let n = T::of_usize(xs.len());
    let mean = compensated_sum(xs.iter().copied()) / n;
    // second pass corrects the rounding of `mean`
    let mut dev = CompensatedSum::new();
    let mut sq = CompensatedSum::new();
    for &x in xs {
        let d = x - mean;
        dev.add(d);
        sq.add(d * d);
    }
    let shift = dev.value();
    let e = n * sq.value() - shift * shift;
    e.max(T::zero())
}

/// `sum x_i^r`.
pub fn power_sum<T: Real>(c: &Configuration<T>, r: u32) -> T {
    compensated_sum(c.xs.iter().map(|x| x.powi(r as i32)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairwise(xs: &[f64]) -> f64 {
        let mut e = 0.0;
        for i in 0..xs.len() {
            for j in i + 1..xs.len() {
                e += (xs[i] - xs[j]).powi(2);
            }
        }
        e
    }

    #[test]
    fn energy_examples() {
        let c = Configuration::<f64>::new(vec![1.0, 2.0, 3.0]).unwrap();
        assert!((c.energy() - 6.0).abs() < 1e-14);
        let c = Configuration::<f64>::new(vec![1.0, 2.0, 0.0]).unwrap();
        assert!((c.energy() - 6.0).abs() < 1e-14);
        assert!((c.report().identity_value(3) - 6.0).abs() < 1e-14);
        let c = Configuration::<f64>::new(vec![0.7; 9]).unwrap();
        assert_eq!(c.energy(), 0.0);
    }

    #[test]
    fn power_sum_examples() {
        let c = Configuration::<f64>::new(vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(c.power_sum(1), 6.0);
        assert_eq!(c.power_sum(3), 36.0);
        let c = Configuration::<f64>::new(vec![1.5; 4]).unwrap();
        assert_eq!(c.power_sum(3), 4.0 * 1.5f64.powi(3));
    }

    #[test]
    fn rejects_bad_configurations() {
        assert!(Configuration::<f64>::new(vec![1.0]).is_err());
        assert!(Configuration::<f64>::new(vec![1.0, -0.5]).is_err());
        assert!(Configuration::<f64>::new(vec![1.0, f64::NAN]).is_err());
    }

    #[test]
    fn generic_over_f32() {
        let c = Configuration::<f32>::new(vec![1.0, 2.0, 3.0]).unwrap();
        assert!((c.energy() - 6.0).abs() < 1e-5);
    }

    #[test]
    fn large_n_identity() {
        let xs: Vec<f64> = (0..10_000).map(|i| ((i * 7919) % 1000) as f64 / 997.0 + 0.1).collect();
        let c = Configuration::<f64>::new(xs.clone()).unwrap();
        let r = c.report();
        let e = r.energy;
        assert!((e - r.identity_value(c.n())).abs() <= 1e-12 * e);
        assert!((e - pairwise(&xs)).abs() <= 1e-9 * e);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn energy_matches_identity_and_pairwise(xs in prop::collection::vec(0.0f64..100.0, 2..40)) {
                let c = Configuration::<f64>::new(xs.clone()).unwrap();
                let r = c.report();
                let e = r.energy;
                let scale = r.s1 * r.s1;
                prop_assert!((e - r.identity_value(c.n())).abs() <= 1e-12 * scale.max(1.0));
                prop_assert!((e - pairwise(&xs)).abs() <= 1e-11 * scale.max(1.0));
                prop_assert!(e >= 0.0);
                prop_assert!(e <= (c.n() as f64 - 1.0) * scale * (1.0 + 1e-12));
            }
        }
    }
}
