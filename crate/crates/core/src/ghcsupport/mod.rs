//! Support calculus for generalized Harish-Chandra modules.
//!
//! A module is represented only through its `g`-support, restricted to
//! finite sets plus shifted rays. The verdict compares asymptotic
//! directions of the support against the moment image `im N`.

mod support;

pub use support::{
    asymptotic_support, load_support, primitive, vagrancy, Direction, Ray, SupportDocument, SupportSpec, Vagrancy,
};

use serde::{Deserialize, Serialize};

use crate::branching::EmbeddingSpec;
use crate::crampedness::CrampednessCertificate;
use crate::error::Result;
use crate::momentgeo::{moment_image_distance, CompactModel, OptimizerConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Membership {
    /// `V_{nλ}` has an `h`-invariant for this least `n`.
    Yes(u64),
    UnknownUpTo(u64),
}

/// Semidecision of `0 ∈ π(O_λ)` through invariants in `V_{nλ}`, `n ≤ m_max`.
pub fn moment_cone_membership(spec: &EmbeddingSpec, lambda: &[i64], m_max: u64) -> Result<Membership> {
    spec.g().check_dominant_integral(lambda)?;
    for n in 1..=m_max {
        let scaled: Vec<i64> = lambda.iter().map(|x| x * n as i64).collect();
        if spec.invariant_dim_int(&scaled)? > 0 {
            return Ok(Membership::Yes(n));
        }
    }
    Ok(Membership::UnknownUpTo(m_max))
}

/// Dominant integral weights with coordinates `≤ bound` whose numerical
/// distance to `im N` is at most `gamma`.
pub fn n_gamma_sample(model: &CompactModel, gamma: f64, bound: i64, cfg: &OptimizerConfig) -> Vec<Vec<i64>> {
    let rank = model.system().rank();
    let mut out = Vec::new();
    let mut current = vec![0i64; rank];
    loop {
        let real: Vec<f64> = current.iter().map(|&x| x as f64).collect();
        if moment_image_distance(model, &real, cfg).distance <= gamma {
            out.push(current.clone());
        }
        let mut k = rank;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            current[k] += 1;
            if current[k] <= bound {
                break;
            }
            current[k] = 0;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GhcStatus {
    #[serde(rename = "GHC")]
    Ghc,
    #[serde(rename = "NotGHC")]
    NotGhc,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RayEvidence {
    pub direction: Vec<i64>,
    pub membership: Membership,
    pub distance: f64,
    pub meets: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GhcVerdict {
    pub status: GhcStatus,
    /// `exact` or `evidence`.
    pub grade: String,
    pub per_ray_evidence: Vec<RayEvidence>,
    pub vagrancy: Vagrancy,
    pub rationale: String,
}

/// Decides whether a module with support `s` can be GHC for `h ⊂ g`.
///
/// A finite support is always GHC; a certified cramped pair forces an
/// infinite support to be non-GHC. Otherwise an asymptotic direction with a
/// proven invariant rules GHC out, and GHC is reported as evidence only when
/// every direction lacks invariants up to `m_max` and stays numerically
/// away from `im N`.
pub fn ghc_verdict(
    model: &CompactModel,
    s: &SupportSpec,
    certificate: Option<&CrampednessCertificate>,
    m_max: u64,
    cfg: &OptimizerConfig,
    tol: f64,
) -> Result<GhcVerdict> {
    let spec = model.spec();
    let vag = vagrancy(s);
    let verdict = |status, grade: &str, evidence, rationale: String| GhcVerdict {
        status,
        grade: grade.to_string(),
        per_ray_evidence: evidence,
        vagrancy: vag,
        rationale,
    };
    if s.is_finite() {
        return Ok(verdict(GhcStatus::Ghc, "exact", Vec::new(), "support is finite, so the module is finite-dimensional".into()));
    }
    let mut evidence = Vec::new();
    for d in asymptotic_support(s) {
        let membership = moment_cone_membership(spec, &d.primitive, m_max)?;
        let real: Vec<f64> = d.primitive.iter().map(|&x| x as f64).collect();
        let dist = moment_image_distance(model, &real, cfg);
        evidence.push(RayEvidence { direction: d.primitive, membership, distance: dist.distance, meets: dist.meets(tol) });
    }
    if let Some(c) = certificate {
        return Ok(verdict(
            GhcStatus::NotGhc,
            "exact",
            evidence,
            format!("pair is cramped (certificate bGH = {}) and the support is infinite", c.b_gh),
        ));
    }
    if let Some(e) = evidence.iter().find(|e| matches!(e.membership, Membership::Yes(_))) {
        let Membership::Yes(n) = e.membership else { unreachable!() };
        return Ok(verdict(
            GhcStatus::NotGhc,
            "exact",
            evidence.clone(),
            format!("direction {:?} lies in im N: V_{{{n}·d}} has an h-invariant", e.direction),
        ));
    }
    if evidence.iter().all(|e| !e.meets) {
        return Ok(verdict(
            GhcStatus::Ghc,
            "evidence",
            evidence,
            format!("no direction has invariants up to n = {m_max} and every direction is numerically away from im N"),
        ));
    }
    Ok(verdict(
        GhcStatus::Undetermined,
        "evidence",
        evidence,
        format!("some direction is numerically close to im N but has no invariant up to n = {m_max}"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branching::catalog_embedding;
    use crate::crampedness::certify;

    fn model(pair: &str) -> CompactModel {
        CompactModel::new(&catalog_embedding(pair).unwrap()).unwrap()
    }

    fn cfg() -> OptimizerConfig {
        OptimizerConfig { restarts: 16, ..OptimizerConfig::with_seed(4) }
    }

    fn ray_spec(m: &CompactModel, base: Vec<i64>, direction: Vec<i64>) -> SupportSpec {
        SupportSpec::new("test", m.system().clone(), vec![], vec![Ray { base, direction }]).unwrap()
    }

    #[test]
    fn membership_examples() {
        let d = catalog_embedding("diagonal:A1").unwrap();
        assert_eq!(moment_cone_membership(&d, &[1, 1], 12).unwrap(), Membership::Yes(1));
        assert_eq!(moment_cone_membership(&d, &[1, 0], 12).unwrap(), Membership::UnknownUpTo(12));
        let p = catalog_embedding("principal-sl2:A2").unwrap();
        assert_eq!(moment_cone_membership(&p, &[1, 0], 12).unwrap(), Membership::Yes(2));
    }

    #[test]
    fn diagonal_verdicts() {
        let m = model("diagonal:A1");
        let v = ghc_verdict(&m, &ray_spec(&m, vec![0, 0], vec![1, 0]), None, 12, &cfg(), 1e-3).unwrap();
        assert_eq!(v.status, GhcStatus::Ghc);
        assert_eq!(v.grade, "evidence");
        let v = ghc_verdict(&m, &ray_spec(&m, vec![0, 0], vec![1, 1]), None, 12, &cfg(), 1e-3).unwrap();
        assert_eq!(v.status, GhcStatus::NotGhc);
        let empty = SupportSpec::new("e", m.system().clone(), vec![], vec![]).unwrap();
        assert_eq!(ghc_verdict(&m, &empty, None, 12, &cfg(), 1e-3).unwrap().status, GhcStatus::Ghc);
    }

    #[test]
    fn certificate_forces_not_ghc() {
        let m = model("principal-sl2:A2");
        let cert = certify(m.spec(), 12).unwrap();
        let s = ray_spec(&m, vec![1, 0], vec![0, 1]);
        let v = ghc_verdict(&m, &s, cert.certificate(), 12, &cfg(), 1e-3).unwrap();
        assert_eq!(v.status, GhcStatus::NotGhc);
    }

    #[test]
    fn n_gamma_examples() {
        let id = model("identity:A1");
        let gamma = 0.5 * id.system().norm_int(&[1]) * 5.0;
        let got = n_gamma_sample(&id, gamma, 5, &cfg());
        let expected: Vec<Vec<i64>> = (0..=5).filter(|&k| id.system().norm_int(&[k]) <= gamma).map(|k| vec![k]).collect();
        assert_eq!(got, expected);
        let d = model("diagonal:A1");
        let got = n_gamma_sample(&d, 1e-3, 4, &cfg());
        let diag: Vec<Vec<i64>> = (0..=4).map(|k| vec![k, k]).collect();
        assert_eq!(got, diag);
    }
}
