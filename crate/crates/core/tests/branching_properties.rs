use std::collections::{BTreeMap, HashMap};

use cramped::branching::{catalog_embedding, load_embedding, EmbeddingSpec, STANDARD_PAIRS};
use cramped::liecore::Weight;
use cramped::rational::{q, q_frac};
use cramped::Error;
use proptest::prelude::*;

fn pair(name: &str) -> EmbeddingSpec {
    catalog_embedding(name).unwrap()
}

fn weights_upto(rank: usize, max: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut w = vec![0i64; rank];
    loop {
        out.push(w.clone());
        let mut k = 0;
        while k < rank {
            w[k] += 1;
            if w[k] <= max {
                break;
            }
            w[k] = 0;
            k += 1;
        }
        if k == rank {
            return out;
        }
    }
}

/// Multiplicities of sl2-irreducibles from the restricted weight
/// multiplicities alone: `mult(V_k) = m(k) − m(k+2)`.
fn sl2_alternating_sum(spec: &EmbeddingSpec, lambda: &[i64]) -> BTreeMap<i64, u64> {
    let ch = spec.g().character_int(lambda).unwrap();
    let mut m: HashMap<i64, i64> = HashMap::new();
    for (w, k) in ch.iter() {
        *m.entry(spec.restrict_int(w)[0]).or_default() += k as i64;
    }
    let top = m.keys().copied().max().unwrap_or(0);
    (0..=top)
        .filter_map(|k| {
            let v = m.get(&k).copied().unwrap_or(0) - m.get(&(k + 2)).copied().unwrap_or(0);
            assert!(v >= 0);
            (v > 0).then_some((k, v as u64))
        })
        .collect()
}

#[test]
fn dimension_is_conserved() {
    for name in STANDARD_PAIRS {
        let spec = pair(name);
        let max = if spec.g().rank() == 1 { 8 } else { 3 };
        for lambda in weights_upto(spec.g().rank(), max) {
            let total: u64 = spec.branch_int(&lambda).unwrap().iter().map(|c| c.multiplicity * c.dimension).sum();
            assert_eq!(total, spec.g().weyl_dim_int(&lambda).unwrap(), "{name} {lambda:?}");
        }
    }
}

#[test]
fn stripping_agrees_with_alternating_sum() {
    for name in STANDARD_PAIRS {
        let spec = pair(name);
        assert_eq!(spec.h().rank(), 1);
        let max = if spec.g().rank() == 1 { 8 } else { 3 };
        for lambda in weights_upto(spec.g().rank(), max) {
            let got: BTreeMap<i64, u64> =
                spec.branch_int(&lambda).unwrap().into_iter().map(|c| (c.highest[0], c.multiplicity)).collect();
            assert_eq!(got, sl2_alternating_sum(&spec, &lambda), "{name} {lambda:?}");
        }
    }
}

#[test]
fn diagonal_is_clebsch_gordan() {
    let spec = pair("diagonal:A1");
    for m in 0..=6i64 {
        for n in 0..=6i64 {
            let got: Vec<(i64, u64)> =
                spec.branch_int(&[m, n]).unwrap().into_iter().map(|c| (c.highest[0], c.multiplicity)).collect();
            let expected: Vec<(i64, u64)> = (0..=m.min(n)).map(|j| (m + n - 2 * j, 1)).collect();
            assert_eq!(got, expected, "({m},{n})");
        }
    }
}

#[test]
fn b_is_bounded_and_detects_invariants() {
    for name in STANDARD_PAIRS {
        let spec = pair(name);
        for lambda in weights_upto(spec.g().rank(), 3).into_iter().skip(1) {
            let b = spec.b_of_lambda_int(&lambda).unwrap();
            assert!(b <= spec.g().weyl_dim_int(&lambda).unwrap());
            assert_eq!(b == 1, spec.invariant_dim_int(&lambda).unwrap() > 0, "{name} {lambda:?}");
        }
    }
}

#[test]
fn invariant_weights_form_a_semigroup() {
    for name in STANDARD_PAIRS {
        let spec = pair(name);
        let max = 4;
        let invariant: Vec<Vec<i64>> = weights_upto(spec.g().rank(), max)
            .into_iter()
            .filter(|l| spec.invariant_dim_int(l).unwrap() > 0)
            .collect();
        for a in &invariant {
            for b in &invariant {
                let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                assert!(spec.invariant_dim_int(&s).unwrap() > 0, "{name} {a:?}+{b:?}");
            }
        }
    }
}

#[test]
fn catalog_documents_round_trip() {
    for name in STANDARD_PAIRS.iter().copied().chain(["identity:G2", "sl-in-sl:3", "diagonal:A2"]) {
        let spec = pair(name);
        let text = spec.to_json();
        let back = load_embedding(&text).unwrap();
        assert_eq!(back.to_json(), text, "{name}");
        assert_eq!(back.restriction(), spec.restriction());
    }
}

#[test]
fn non_integral_restriction_is_rejected() {
    let text = r#"{"schema": 1, "name": "half", "g": "A1xA1", "h": "A1", "restriction": [[1, "1/2"]]}"#;
    match load_embedding(text) {
        Err(Error::NonIntegralRestriction { index, .. }) => assert_eq!(index, 2),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn non_closed_generators_are_rejected() {
    // [h1, e_1 + e_2] = 2e_1 - e_2 leaves the span of h1, e_1 + e_2, f_1.
    let text = r#"{"schema": 1, "name": "open", "g": "A2", "h": "A1", "restriction": [[1, 0]],
        "compact_generators": [{"h1": 1.0}, {"e_1": 1.0, "e_2": 1.0}, {"f_1": 1.0}]}"#;
    assert!(matches!(load_embedding(text), Err(Error::BracketClosure { .. })));
}

#[test]
fn malformed_documents_are_rejected() {
    assert!(matches!(load_embedding("{}"), Err(Error::Malformed(_))));
    let wrong_shape = r#"{"schema": 1, "name": "x", "g": "A2", "h": "A1", "restriction": [[1]]}"#;
    assert!(matches!(load_embedding(wrong_shape), Err(Error::Malformed(_))));
    let wrong_schema = r#"{"schema": 9, "name": "x", "g": "A1", "h": "A1", "restriction": [[1]]}"#;
    assert!(matches!(load_embedding(wrong_schema), Err(Error::Malformed(_))));
}

proptest! {
    #[test]
    fn restriction_is_linear(
        name in prop::sample::select(STANDARD_PAIRS.to_vec()),
        a in proptest::collection::vec((-6i64..7, 1i64..4), 2),
        b in proptest::collection::vec((-6i64..7, 1i64..4), 2),
    ) {
        let spec = pair(name);
        let r = spec.g().rank();
        let mk = |v: &[(i64, i64)]| Weight::new(spec.g(), v[..r].iter().map(|&(n, d)| q_frac(n, d)).collect()).unwrap();
        let (wa, wb) = (mk(&a), mk(&b));
        let lhs = spec.restrict_weight(&wa.add(&wb).unwrap()).unwrap();
        let rhs = spec.restrict_weight(&wa).unwrap().add(&spec.restrict_weight(&wb).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let zero = spec.restrict_weight(&Weight::zero(spec.g())).unwrap();
        prop_assert!(zero.coords().iter().all(|c| *c == q(0)));
    }
}
