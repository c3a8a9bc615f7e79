//! Weight systems of irreducible modules via Freudenthal's recursion.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::liecore::{RootSystem, Weight};

/// Finite formal sum of integral weights with positive multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    system: Arc<RootSystem>,
    entries: BTreeMap<Vec<i64>, u64>,
}

impl Character {
    pub fn empty(system: &Arc<RootSystem>) -> Self {
        Character { system: Arc::clone(system), entries: BTreeMap::new() }
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.system
    }

    pub fn multiplicity(&self, w: &[i64]) -> u64 {
        self.entries.get(w).copied().unwrap_or(0)
    }

    pub fn multiplicity_of(&self, w: &Weight) -> Result<u64> {
        w.check_system(&self.system)?;
        Ok(w.to_integral().map(|v| self.multiplicity(&v)).unwrap_or(0))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<i64>, u64)> {
        self.entries.iter().map(|(k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of all multiplicities, i.e. the dimension of the module.
    pub fn total_mass(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn dominant_part(&self) -> BTreeMap<Vec<i64>, u64> {
        self.entries
            .iter()
            .filter(|(k, _)| k.iter().all(|&x| x >= 0))
            .map(|(k, &v)| (k.clone(), v))
            .collect()
    }

    pub(crate) fn insert(&mut self, w: Vec<i64>, m: u64) {
        if m > 0 {
            *self.entries.entry(w).or_insert(0) += m;
        }
    }
}

impl RootSystem {
    /// Dominant weights `μ ≤ λ` of `V_λ`, highest first.
    ///
    /// Every dominant weight below `λ` is reachable from `λ` through a chain
    /// of dominant weights whose consecutive differences are positive roots.
    pub fn dominant_weights_below(&self, lambda: &[i64]) -> Vec<Vec<i64>> {
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        let mut stack = vec![lambda.to_vec()];
        seen.insert(lambda.to_vec(), ());
        while let Some(mu) = stack.pop() {
            for root in self.positive_roots() {
                let nu: Vec<i64> = mu.iter().zip(&root.weight).map(|(a, b)| a - b).collect();
                if nu.iter().all(|&x| x >= 0) && !seen.contains_key(&nu) {
                    seen.insert(nu.clone(), ());
                    stack.push(nu);
                }
            }
        }
        let mut out: Vec<Vec<i64>> = seen.into_keys().collect();
        out.sort_by(|a, b| self.height_scaled(b).cmp(&self.height_scaled(a)).then_with(|| b.cmp(a)));
        out
    }

    /// Multiplicities of the dominant weights of `V_λ`.
    pub fn dominant_multiplicities(&self, lambda: &[i64]) -> Result<BTreeMap<Vec<i64>, u64>> {
        self.check_dominant_integral(lambda)?;
        let order = self.dominant_weights_below(lambda);
        let rho = self.rho();
        let shift = |w: &[i64]| -> Vec<i64> { w.iter().zip(&rho).map(|(a, b)| a + b).collect() };
        let top = {
            let lr = shift(lambda);
            self.inner_scaled(&lr, &lr)
        };
        let mut mult: HashMap<Vec<i64>, Option<u64>> = order.iter().map(|w| (w.clone(), None)).collect();
        mult.insert(lambda.to_vec(), Some(1));

        for mu in order.iter().skip(1) {
            let mut numer: i128 = 0;
            for root in self.positive_roots() {
                let mut shifted = mu.clone();
                loop {
                    for (x, a) in shifted.iter_mut().zip(&root.weight) {
                        *x += a;
                    }
                    let dom = self.dominant_of(&shifted);
                    let m = match mult.get(&dom) {
                        Some(Some(m)) => *m,
                        Some(None) => unreachable!("higher weight {dom:?} not yet computed"),
                        None => break,
                    };
                    let ip = self.inner_scaled(&shifted, &root.weight);
                    numer = ip
                        .checked_mul(m as i128)
                        .and_then(|t| numer.checked_add(t))
                        .ok_or(Error::Overflow("freudenthal recursion"))?;
                }
            }
            let mr = shift(mu);
            let denom = top - self.inner_scaled(&mr, &mr);
            let numer = 2 * numer;
            debug_assert!(denom > 0);
            debug_assert_eq!(numer % denom, 0, "Freudenthal quotient not integral at {mu:?}");
            let value = u64::try_from(numer / denom).map_err(|_| Error::Overflow("multiplicity"))?;
            mult.insert(mu.clone(), Some(value));
        }
        Ok(mult.into_iter().filter_map(|(k, v)| v.filter(|&m| m > 0).map(|m| (k, m))).collect())
    }

    /// Full weight system of the irreducible module `V_λ`.
    pub fn character_int(self: &Arc<Self>, lambda: &[i64]) -> Result<Character> {
        let dominant = self.dominant_multiplicities(lambda)?;
        let mut ch = Character::empty(self);
        for (mu, m) in dominant {
            for w in self.orbit(&mu) {
                ch.insert(w, m);
            }
        }
        Ok(ch)
    }

    pub fn weight_multiplicities(self: &Arc<Self>, lambda: &Weight) -> Result<Character> {
        lambda.check_system(self)?;
        let v = lambda.dominant_integral()?;
        self.character_int(&v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_string() {
        let rs = RootSystem::parse("A1").unwrap();
        let ch = rs.character_int(&[2]).unwrap();
        let v: Vec<(Vec<i64>, u64)> = ch.iter().map(|(k, m)| (k.clone(), m)).collect();
        assert_eq!(v, vec![(vec![-2], 1), (vec![0], 1), (vec![2], 1)]);
    }

    #[test]
    fn a2_adjoint_zero_weight_has_multiplicity_two() {
        let rs = RootSystem::parse("A2").unwrap();
        let ch = rs.character_int(&[1, 1]).unwrap();
        assert_eq!(ch.multiplicity(&[0, 0]), 2);
        assert_eq!(ch.len(), 7);
        assert_eq!(ch.total_mass(), 8);
    }

    #[test]
    fn a2_defining_module() {
        let rs = RootSystem::parse("A2").unwrap();
        let ch = rs.character_int(&[1, 0]).unwrap();
        assert_eq!(ch.len(), 3);
        assert!(ch.iter().all(|(_, m)| m == 1));
    }

    #[test]
    fn g2_small_modules() {
        let rs = RootSystem::parse("G2").unwrap();
        let seven = rs.character_int(&[1, 0]).unwrap();
        assert_eq!(seven.total_mass(), 7);
        assert_eq!(seven.multiplicity(&[0, 0]), 1);
        let adjoint = rs.character_int(&[0, 1]).unwrap();
        assert_eq!(adjoint.total_mass(), 14);
        assert_eq!(adjoint.multiplicity(&[0, 0]), 2);
    }

    #[test]
    fn non_dominant_is_rejected() {
        let rs = RootSystem::parse("A2").unwrap();
        assert!(rs.character_int(&[1, -1]).is_err());
        let w = Weight::integral(&rs, &[-1, 0]).unwrap();
        assert!(rs.weight_multiplicities(&w).is_err());
    }
}
