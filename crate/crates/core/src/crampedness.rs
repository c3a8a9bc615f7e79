//! Finite certificates of crampedness.
//!
//! If `V_{m_i ω_i}` has a nonzero `h`-invariant for every `i`, multiplying
//! by those invariants injects `V_λ` into `V_{λ + m_i ω_i}`
//! `h`-equivariantly. Every `b(λ)` is then bounded by a value attained on
//! the box `{λ : λ_i < m_i}`, and the maximum over the box bounds
//! `b(G, H)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::branching::EmbeddingSpec;
use crate::error::Result;

pub const DEFAULT_M_MAX: u64 = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxEntry {
    pub lambda: Vec<i64>,
    pub b: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrampednessCertificate {
    pub pair: String,
    /// `m_i`, indexed by fundamental weight.
    pub m: Vec<u64>,
    pub box_entries: Vec<BoxEntry>,
    pub b_gh: u64,
    pub search_bound: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertifyOutcome {
    Certified(CrampednessCertificate),
    /// The `m_i` search hit the bound for the listed (1-based) indices.
    Inconclusive {
        pair: String,
        search_bound: u64,
        found: Vec<Option<u64>>,
        missing: Vec<usize>,
    },
}

impl CertifyOutcome {
    pub fn certificate(&self) -> Option<&CrampednessCertificate> {
        match self {
            CertifyOutcome::Certified(c) => Some(c),
            CertifyOutcome::Inconclusive { .. } => None,
        }
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, CertifyOutcome::Certified(_))
    }

    pub fn to_document(&self) -> CertificateDocument {
        match self {
            CertifyOutcome::Certified(c) => CertificateDocument {
                pair: c.pair.clone(),
                m_max: c.search_bound,
                m: c.m.iter().map(|&x| Some(x)).collect(),
                box_entries: c.box_entries.clone(),
                b_gh: Some(c.b_gh),
                status: "certified".into(),
                missing: Vec::new(),
            },
            CertifyOutcome::Inconclusive { pair, search_bound, found, missing } => CertificateDocument {
                pair: pair.clone(),
                m_max: *search_bound,
                m: found.clone(),
                box_entries: Vec::new(),
                b_gh: None,
                status: "inconclusive".into(),
                missing: missing.clone(),
            },
        }
    }
}

/// Serialized form of a certificate or an inconclusive search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub pair: String,
    #[serde(rename = "mMax")]
    pub m_max: u64,
    pub m: Vec<Option<u64>>,
    #[serde(rename = "box")]
    pub box_entries: Vec<BoxEntry>,
    #[serde(rename = "bGH")]
    pub b_gh: Option<u64>,
    pub status: String,
    pub missing: Vec<usize>,
}

/// Least `m ≤ m_max` such that `V_{m ω_i}` has an `h`-invariant (0-based `i`).
pub fn find_mi(spec: &EmbeddingSpec, i: usize, m_max: u64) -> Result<Option<u64>> {
    let rank = spec.g().rank();
    for m in 1..=m_max {
        let mut lambda = vec![0i64; rank];
        lambda[i] = m as i64;
        if spec.invariant_dim_int(&lambda)? > 0 {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Nonzero dominant weights with `λ_i < m_i`, in lexicographic order.
pub fn box_weights(m: &[u64]) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut current = vec![0i64; m.len()];
    if m.iter().any(|&x| x == 0) {
        return out;
    }
    loop {
        if current.iter().any(|&x| x != 0) {
            out.push(current.clone());
        }
        let mut k = m.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            current[k] += 1;
            if (current[k] as u64) < m[k] {
                break;
            }
            current[k] = 0;
        }
    }
}

pub fn certify(spec: &EmbeddingSpec, m_max: u64) -> Result<CertifyOutcome> {
    let rank = spec.g().rank();
    let found = (0..rank)
        .into_par_iter()
        .map(|i| find_mi(spec, i, m_max))
        .collect::<Result<Vec<_>>>()?;
    let missing: Vec<usize> = found.iter().enumerate().filter(|(_, m)| m.is_none()).map(|(i, _)| i + 1).collect();
    if !missing.is_empty() {
        return Ok(CertifyOutcome::Inconclusive {
            pair: spec.name().to_string(),
            search_bound: m_max,
            found,
            missing,
        });
    }
    let m: Vec<u64> = found.into_iter().map(|x| x.expect("all found")).collect();
    let box_entries = box_weights(&m)
        .into_par_iter()
        .map(|lambda| spec.b_of_lambda_int(&lambda).map(|b| BoxEntry { lambda, b }))
        .collect::<Result<Vec<_>>>()?;
    let b_gh = box_entries.iter().map(|e| e.b).max().unwrap_or(1);
    Ok(CertifyOutcome::Certified(CrampednessCertificate {
        pair: spec.name().to_string(),
        m,
        box_entries,
        b_gh,
        search_bound: m_max,
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Obstruction {
    NotCramped,
    NoObstruction,
}

pub fn dimension_obstruction(spec: &EmbeddingSpec) -> Obstruction {
    if spec.g().dimension() < 2 * spec.h().dimension() {
        Obstruction::NotCramped
    } else {
        Obstruction::NoObstruction
    }
}
