use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::liecore::RootSystem;
use crate::rational::{self, q, Q};

/// A weight in fundamental-weight coordinates, tied to its root system.
#[derive(Clone, Debug)]
pub struct Weight {
    coords: Vec<Q>,
    system: Arc<RootSystem>,
}

impl Weight {
    pub fn new(system: &Arc<RootSystem>, coords: Vec<Q>) -> Result<Self> {
        if coords.len() != system.rank() {
            return Err(Error::RankMismatch { got: coords.len(), rank: system.rank() });
        }
        Ok(Weight { coords, system: Arc::clone(system) })
    }

    pub fn integral(system: &Arc<RootSystem>, coords: &[i64]) -> Result<Self> {
        Self::new(system, coords.iter().map(|&x| q(x)).collect())
    }

    pub fn zero(system: &Arc<RootSystem>) -> Self {
        Weight { coords: vec![Q::zero(); system.rank()], system: Arc::clone(system) }
    }

    /// Fundamental weight `ω_i` (0-based index).
    pub fn fundamental(system: &Arc<RootSystem>, i: usize) -> Self {
        let mut coords = vec![Q::zero(); system.rank()];
        coords[i] = q(1);
        Weight { coords, system: Arc::clone(system) }
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.system
    }

    /// `λ(α_i^∨)`.
    pub fn pairing(&self, i: usize) -> &Q {
        &self.coords[i]
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|x| x.is_integer())
    }

    pub fn is_dominant(&self) -> bool {
        self.coords.iter().all(|x| !x.is_negative())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn to_integral(&self) -> Option<Vec<i64>> {
        self.coords.iter().map(rational::to_i64).collect()
    }

    /// Integer coordinates, or an error unless dominant integral.
    pub fn dominant_integral(&self) -> Result<Vec<i64>> {
        match self.to_integral() {
            Some(v) if v.iter().all(|&x| x >= 0) => Ok(v),
            _ => Err(Error::NotDominantIntegral(self.to_string())),
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(rational::to_f64).collect()
    }

    pub fn scaled(&self, k: &Q) -> Self {
        Weight { coords: self.coords.iter().map(|x| x * k).collect(), system: Arc::clone(&self.system) }
    }

    pub fn add(&self, other: &Weight) -> Result<Self> {
        self.same_system(other)?;
        Ok(Weight {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
            system: Arc::clone(&self.system),
        })
    }

    pub fn sub(&self, other: &Weight) -> Result<Self> {
        self.same_system(other)?;
        Ok(Weight {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
            system: Arc::clone(&self.system),
        })
    }

    pub(crate) fn same_system(&self, other: &Weight) -> Result<()> {
        self.check_system(&other.system).map_err(|_| Error::SystemMismatch {
            weight: other.to_string(),
            expected: self.system.descriptor(),
        })
    }

    pub(crate) fn check_system(&self, rs: &RootSystem) -> Result<()> {
        if *self.system == *rs {
            Ok(())
        } else {
            Err(Error::SystemMismatch { weight: self.to_string(), expected: rs.descriptor() })
        }
    }
}

impl PartialEq for Weight {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && *self.system == *other.system
    }
}

impl Eq for Weight {}

impl Hash for Weight {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(rational::format_q).collect();
        write!(f, "({})", parts.join(","))
    }
}
