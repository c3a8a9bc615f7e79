//! Exact root-system, weight-lattice, Weyl-group and character machinery.
//!
//! The invariant form is normalized so that long roots of every simple
//! factor have squared length 2, with distinct factors orthogonal. All
//! distance-valued quantities in the crate are measured in this metric.

mod character;
mod root_system;
mod weight;

use std::sync::Arc;

pub use character::Character;
pub use root_system::{Family, PositiveRoot, RootSystem, SimpleFactor};
pub use weight::Weight;

use crate::error::{Error, Result};
use crate::rational::{self, Q};

impl RootSystem {
    pub fn weyl_dim(&self, lambda: &Weight) -> Result<u64> {
        lambda.check_system(self)?;
        self.weyl_dim_int(&lambda.dominant_integral()?)
    }

    /// The dominant weight in the Weyl orbit of `mu`.
    pub fn dominance_reduce(&self, mu: &Weight) -> Result<Weight> {
        mu.check_system(self)?;
        let coords = self.dominant_of_rational(mu.coords());
        Weight::new(mu.system(), coords)
    }

    /// Euclidean distance in the invariant metric.
    pub fn distance(&self, a: &Weight, b: &Weight) -> Result<f64> {
        a.check_system(self)?;
        b.check_system(self)?;
        let d: Vec<Q> = a.coords().iter().zip(b.coords()).map(|(x, y)| x - y).collect();
        Ok(rational::to_f64(&self.inner(&d, &d)).max(0.0).sqrt())
    }

    /// Distance from an integral weight to the origin.
    pub fn norm_int(&self, a: &[i64]) -> f64 {
        (self.inner_scaled(a, a) as f64 / self.form_scale() as f64).sqrt()
    }

    /// All dominant integral `μ` with `dim V_μ < n`.
    ///
    /// The dimension is strictly increasing in every coordinate, so each
    /// coordinate is raised only until the bound is hit.
    pub fn dim_bounded_int(&self, n: u64) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let mut current = vec![0i64; self.rank()];
        self.dim_bounded_rec(n, 0, &mut current, &mut out);
        out.sort();
        out
    }

    fn dim_bounded_rec(&self, n: u64, index: usize, current: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if index == self.rank() {
            if self.weyl_dim_int(current).is_ok_and(|d| d < n) {
                out.push(current.clone());
            }
            return;
        }
        loop {
            match self.weyl_dim_int(current) {
                Ok(d) if d < n => {}
                _ => break,
            }
            self.dim_bounded_rec(n, index + 1, current, out);
            current[index] += 1;
        }
        current[index] = 0;
    }

    pub fn dim_bounded_weights(self: &Arc<Self>, n: u64) -> Vec<Weight> {
        self.dim_bounded_int(n)
            .iter()
            .map(|v| Weight::integral(self, v).expect("rank matches"))
            .collect()
    }

    /// Largest distance to the origin over `dim_bounded_int(n)`; 0 when empty.
    pub fn eta_n(&self, n: u64) -> f64 {
        self.dim_bounded_int(n).iter().map(|v| self.norm_int(v)).fold(0.0, f64::max)
    }

    pub fn check_rank(&self, w: &[i64]) -> Result<()> {
        if w.len() == self.rank() {
            Ok(())
        } else {
            Err(Error::RankMismatch { got: w.len(), rank: self.rank() })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weyl_dimension_examples() {
        let a1 = RootSystem::parse("A1").unwrap();
        assert_eq!(a1.weyl_dim_int(&[3]).unwrap(), 4);
        let a2 = RootSystem::parse("A2").unwrap();
        assert_eq!(a2.weyl_dim_int(&[1, 1]).unwrap(), 8);
        let a1a1 = RootSystem::parse("A1xA1").unwrap();
        assert_eq!(a1a1.weyl_dim_int(&[2, 3]).unwrap(), 12);
        assert!(a2.weyl_dim_int(&[-1, 0]).is_err());
        let half = Weight::new(&a2, vec![rational::q_frac(1, 2), rational::q(0)]).unwrap();
        assert!(a2.weyl_dim(&half).is_err());
    }

    #[test]
    fn dim_bounded_examples() {
        let a1 = RootSystem::parse("A1").unwrap();
        assert_eq!(a1.dim_bounded_int(4), vec![vec![0], vec![1], vec![2]]);
        assert!(a1.dim_bounded_int(1).is_empty());
        let a2 = RootSystem::parse("A2").unwrap();
        assert_eq!(a2.dim_bounded_int(4), vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn eta_examples() {
        let a1 = RootSystem::parse("A1").unwrap();
        assert_eq!(a1.eta_n(1), 0.0);
        assert_eq!(a1.eta_n(2), 0.0);
        assert!((a1.eta_n(4) - a1.norm_int(&[2])).abs() < 1e-15);
        // ω = α/2 and (α, α) = 2, so ‖2ω‖ = √2.
        assert!((a1.eta_n(4) - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn distance_examples() {
        let a1 = RootSystem::parse("A1").unwrap();
        let z = Weight::zero(&a1);
        let one = Weight::integral(&a1, &[1]).unwrap();
        let five = Weight::integral(&a1, &[5]).unwrap();
        assert_eq!(a1.distance(&five, &five).unwrap(), 0.0);
        let d1 = a1.distance(&one, &z).unwrap();
        assert!((a1.distance(&five, &z).unwrap() - 5.0 * d1).abs() < 1e-12);
        let pp = RootSystem::parse("A1xA1").unwrap();
        let x = Weight::integral(&pp, &[1, 0]).unwrap();
        let y = Weight::integral(&pp, &[0, 1]).unwrap();
        let o = Weight::zero(&pp);
        assert_eq!(pp.distance(&x, &o).unwrap(), pp.distance(&y, &o).unwrap());
        assert!(pp.distance(&x, &one).is_err());
    }

    #[test]
    fn dominance_reduce_examples() {
        let a2 = RootSystem::parse("A2").unwrap();
        let w = Weight::integral(&a2, &[-1, 2]).unwrap();
        assert_eq!(a2.dominance_reduce(&w).unwrap(), Weight::integral(&a2, &[1, 1]).unwrap());
        let d = Weight::integral(&a2, &[3, 1]).unwrap();
        assert_eq!(a2.dominance_reduce(&d).unwrap(), d);
    }
}
