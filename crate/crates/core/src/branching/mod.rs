//! Restriction of irreducible `g`-modules to a subalgebra `h`.
//!
//! A restricted character is decomposed by repeatedly removing the
//! irreducible `h`-character of its highest remaining weight (largest
//! height, ties broken by the lexicographically largest coordinates).

mod catalog;
mod embedding;

use std::collections::HashMap;

pub use catalog::{catalog_embedding, diagonal, factor, identity, principal_sl2, sl_in_sl, STANDARD_PAIRS};
pub use embedding::{load_embedding, EmbeddingDocument, EmbeddingSpec, GeneratorElement, RationalEntry, SCHEMA_VERSION};

use crate::error::{Error, Result};
use crate::liecore::Weight;

/// One isotypic component of a restriction: highest weight and multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constituent {
    pub highest: Vec<i64>,
    pub multiplicity: u64,
    pub dimension: u64,
}

impl EmbeddingSpec {
    /// Decomposition of `V_λ|_h` into irreducibles, highest first.
    pub fn branch_int(&self, lambda: &[i64]) -> Result<Vec<Constituent>> {
        let g = self.g();
        let h = self.h();
        let ch = g.character_int(lambda)?;
        let mut residual: HashMap<Vec<i64>, i64> = HashMap::new();
        for (w, m) in ch.iter() {
            *residual.entry(self.restrict_int(w)).or_insert(0) += m as i64;
        }
        let mut out = Vec::new();
        while let Some(top) = residual
            .iter()
            .filter(|(_, &m)| m != 0)
            .map(|(w, _)| w)
            .max_by(|a, b| h.height_scaled(a).cmp(&h.height_scaled(b)).then_with(|| a.cmp(b)))
            .cloned()
        {
            let m = residual[&top];
            if m < 0 || top.iter().any(|&x| x < 0) {
                return Err(Error::InvalidEmbedding(format!(
                    "{}: residual multiplicity {m} at highest weight {top:?} while restricting {lambda:?}",
                    self.name()
                )));
            }
            let sub = h.character_int(&top)?;
            for (w, k) in sub.iter() {
                let entry = residual.entry(w.clone()).or_insert(0);
                *entry -= m * k as i64;
                if *entry < 0 {
                    return Err(Error::InvalidEmbedding(format!(
                        "{}: negative residual multiplicity at {w:?} while restricting {lambda:?}",
                        self.name()
                    )));
                }
            }
            residual.retain(|_, v| *v != 0);
            out.push(Constituent { dimension: sub.total_mass(), highest: top, multiplicity: m as u64 });
        }
        Ok(out)
    }

    pub fn branch(&self, lambda: &Weight) -> Result<Vec<(Weight, u64)>> {
        lambda.check_system(self.g())?;
        let v = lambda.dominant_integral()?;
        self.branch_int(&v)?
            .into_iter()
            .map(|c| Ok((Weight::integral(self.h(), &c.highest)?, c.multiplicity)))
            .collect()
    }

    /// Dimension of the `h`-invariants in `V_λ`.
    pub fn invariant_dim_int(&self, lambda: &[i64]) -> Result<u64> {
        Ok(self
            .branch_int(lambda)?
            .iter()
            .find(|c| c.highest.iter().all(|&x| x == 0))
            .map(|c| c.multiplicity)
            .unwrap_or(0))
    }

    pub fn invariant_dim(&self, lambda: &Weight) -> Result<u64> {
        lambda.check_system(self.g())?;
        self.invariant_dim_int(&lambda.dominant_integral()?)
    }

    /// Smallest dimension of an irreducible `h`-constituent of `V_λ`, λ ≠ 0.
    pub fn b_of_lambda_int(&self, lambda: &[i64]) -> Result<u64> {
        self.g().check_dominant_integral(lambda)?;
        if lambda.iter().all(|&x| x == 0) {
            return Err(Error::TrivialWeight);
        }
        Ok(self.branch_int(lambda)?.iter().map(|c| c.dimension).min().unwrap_or(0))
    }

    pub fn b_of_lambda(&self, lambda: &Weight) -> Result<u64> {
        lambda.check_system(self.g())?;
        self.b_of_lambda_int(&lambda.dominant_integral()?)
    }

    /// Whether some `h`-constituent of `V_λ` has dimension below `n`.
    pub fn in_d_prime_n_int(&self, lambda: &[i64], n: u64) -> Result<bool> {
        Ok(self.b_of_lambda_int(lambda)? < n)
    }

    pub fn in_d_prime_n(&self, lambda: &Weight, n: u64) -> Result<bool> {
        Ok(self.b_of_lambda(lambda)? < n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liecore::RootSystem;
    use crate::rational::{q, q_frac};

    fn decomposition(spec: &EmbeddingSpec, lambda: &[i64]) -> Vec<(Vec<i64>, u64)> {
        spec.branch_int(lambda).unwrap().into_iter().map(|c| (c.highest, c.multiplicity)).collect()
    }

    #[test]
    fn catalog_restriction_matrices() {
        let p = catalog_embedding("principal-sl2:A2").unwrap();
        assert_eq!(p.restriction_int(), &[vec![2, 2]]);
        let d = catalog_embedding("diagonal:A1").unwrap();
        assert_eq!(d.restriction_int(), &[vec![1, 1]]);
        let f = catalog_embedding("factor:A1xA1").unwrap();
        assert_eq!(f.restriction_int(), &[vec![1, 0]]);
        assert_eq!(catalog_embedding("principal-sl2:B2").unwrap().restriction_int(), &[vec![4, 3]]);
        assert_eq!(catalog_embedding("principal-sl2:G2").unwrap().restriction_int(), &[vec![6, 10]]);
        assert!(matches!(catalog_embedding("nosuch"), Err(Error::UnknownPair(_))));
        assert!(matches!(catalog_embedding("diagonal:Q7"), Err(Error::UnknownPair(_))));
    }

    #[test]
    fn branch_examples() {
        let d = catalog_embedding("diagonal:A1").unwrap();
        assert_eq!(decomposition(&d, &[2, 1]), vec![(vec![3], 1), (vec![1], 1)]);
        let f = catalog_embedding("factor:A1xA1").unwrap();
        assert_eq!(decomposition(&f, &[1, 2]), vec![(vec![1], 3)]);
        let p = catalog_embedding("principal-sl2:A2").unwrap();
        assert_eq!(decomposition(&p, &[1, 1]), vec![(vec![4], 1), (vec![2], 1)]);
    }

    #[test]
    fn invariant_dim_examples() {
        let d = catalog_embedding("diagonal:A1").unwrap();
        assert_eq!(d.invariant_dim_int(&[2, 2]).unwrap(), 1);
        assert_eq!(d.invariant_dim_int(&[1, 0]).unwrap(), 0);
        for pair in STANDARD_PAIRS {
            let s = catalog_embedding(pair).unwrap();
            assert_eq!(s.invariant_dim_int(&vec![0; s.g().rank()]).unwrap(), 1, "{pair}");
        }
    }

    #[test]
    fn b_of_lambda_examples() {
        let p = catalog_embedding("principal-sl2:A2").unwrap();
        assert_eq!(p.b_of_lambda_int(&[1, 1]).unwrap(), 3);
        let d = catalog_embedding("diagonal:A1").unwrap();
        assert_eq!(d.b_of_lambda_int(&[2, 2]).unwrap(), 1);
        let id = catalog_embedding("identity:A1").unwrap();
        for m in 1..8 {
            assert_eq!(id.b_of_lambda_int(&[m]).unwrap(), m as u64 + 1);
        }
        assert!(matches!(p.b_of_lambda_int(&[0, 0]), Err(Error::TrivialWeight)));
    }

    #[test]
    fn d_prime_membership() {
        let p = catalog_embedding("principal-sl2:A2").unwrap();
        assert!(p.in_d_prime_n_int(&[1, 1], 4).unwrap());
        assert!(!p.in_d_prime_n_int(&[1, 1], 3).unwrap());
        let d = catalog_embedding("diagonal:A1").unwrap();
        assert!(d.in_d_prime_n_int(&[3, 3], 2).unwrap());
    }

    #[test]
    fn weight_api_matches_integer_api() {
        let p = catalog_embedding("principal-sl2:A2").unwrap();
        let lambda = Weight::integral(p.g(), &[1, 1]).unwrap();
        let out = p.branch(&lambda).unwrap();
        assert_eq!(out[0].0, Weight::integral(p.h(), &[4]).unwrap());
        let wrong = Weight::integral(p.h(), &[1]).unwrap();
        assert!(p.branch(&wrong).is_err());
        let r = p.restrict_weight(&Weight::new(p.g(), vec![q_frac(1, 2), q(0)]).unwrap()).unwrap();
        assert_eq!(r.coords(), &[q(1)]);
    }

    #[test]
    fn bogus_restriction_is_detected_while_stripping() {
        // Weights of V_(1,0) restrict to 1, 1, -2: not an sl2 character.
        let g = RootSystem::parse("A2").unwrap();
        let h = RootSystem::parse("A1").unwrap();
        let spec = EmbeddingSpec::new("bogus", g, h, vec![vec![q(1), q(2)]], None).unwrap();
        assert!(matches!(spec.branch_int(&[1, 0]), Err(Error::InvalidEmbedding(_))));
    }
}
