use cramped::branching::{catalog_embedding, STANDARD_PAIRS};
use cramped::ghcsupport::{
    asymptotic_support, ghc_verdict, moment_cone_membership, vagrancy, Membership, Ray, SupportSpec,
};
use cramped::liecore::RootSystem;
use cramped::momentgeo::{moment_image_distance, CompactModel, OptimizerConfig};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cfg() -> OptimizerConfig {
    OptimizerConfig { restarts: 16, ..OptimizerConfig::with_seed(21) }
}

fn model(pair: &str) -> CompactModel {
    CompactModel::new(&catalog_embedding(pair).unwrap()).unwrap()
}

/// Vagrancy by brute force: ray points up to `n_max`, asymptotic rays
/// sampled on a grid of spacing `h` up to `t_max`.
fn vagrancy_oracle(s: &SupportSpec, n_max: i64, t_max: f64, h: f64) -> f64 {
    let rs = &s.system;
    let mut pts: Vec<Vec<f64>> = s.finite.iter().map(|w| w.iter().map(|&x| x as f64).collect()).collect();
    for r in &s.rays {
        for n in 0..=n_max {
            pts.push(r.base.iter().zip(&r.direction).map(|(&b, &d)| (b + n * d) as f64).collect());
        }
    }
    let dirs = asymptotic_support(s);
    let dist = |a: &[f64], b: &[f64]| {
        let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        rs.norm_f64(&d)
    };
    let to_asupp = |p: &[f64]| {
        let mut best = rs.norm_f64(p);
        for d in &dirs {
            let x = rs.inner_f64(p, &d.unit).max(0.0);
            let foot: Vec<f64> = d.unit.iter().map(|u| u * x).collect();
            best = best.min(dist(p, &foot));
        }
        best
    };
    let first = pts.iter().map(|p| to_asupp(p)).fold(0.0, f64::max);
    let to_supp = |x: &[f64]| pts.iter().map(|p| dist(x, p)).fold(f64::INFINITY, f64::min);
    let mut second = to_supp(&vec![0.0; rs.rank()]);
    for d in &dirs {
        let mut t = 0.0;
        while t <= t_max {
            let x: Vec<f64> = d.unit.iter().map(|u| u * t).collect();
            second = second.max(to_supp(&x));
            t += h;
        }
    }
    first + second
}

fn small_weight(rank: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(0i64..4, rank)
}

fn nonzero_weight(rank: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(0i64..3, rank).prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn vagrancy_matches_brute_force(
        system in prop::sample::select(vec!["A1xA1", "A2", "B2"]),
        finite in proptest::collection::vec(small_weight(2), 0..3),
        rays in proptest::collection::vec((small_weight(2), nonzero_weight(2)), 1..3),
    ) {
        let rs = RootSystem::parse(system).unwrap();
        let rays = rays.into_iter().map(|(base, direction)| Ray { base, direction }).collect();
        let s = SupportSpec::new("p", rs, finite, rays).unwrap();
        let exact = vagrancy(&s).total();
        let brute = vagrancy_oracle(&s, 80, 40.0, 0.01);
        // The grid can only underestimate the supremum.
        prop_assert!(brute <= exact + 1e-9, "{brute} > {exact}");
        prop_assert!(exact - brute < 5e-3, "{exact} vs {brute}");
    }

    #[test]
    fn asymptotic_support_ignores_bases(
        bases in proptest::collection::vec(small_weight(2), 2),
        dirs in proptest::collection::vec(nonzero_weight(2), 2),
    ) {
        let rs = RootSystem::parse("A2").unwrap();
        let mk = |bs: &[Vec<i64>]| {
            let rays = bs.iter().zip(&dirs).map(|(b, d)| Ray { base: b.clone(), direction: d.clone() }).collect();
            SupportSpec::new("p", rs.clone(), vec![], rays).unwrap()
        };
        let zero = vec![vec![0, 0]; 2];
        prop_assert_eq!(asymptotic_support(&mk(&bases)), asymptotic_support(&mk(&zero)));
    }
}

#[test]
fn origin_ray_vagrancy_is_half_direction() {
    for (system, d) in [("A1", vec![3]), ("A2", vec![1, 2]), ("G2", vec![1, 1]), ("B2", vec![0, 1])] {
        let rs = RootSystem::parse(system).unwrap();
        let s = SupportSpec::new("o", rs.clone(), vec![], vec![Ray { base: vec![0; rs.rank()], direction: d.clone() }]).unwrap();
        assert!((vagrancy(&s).total() - rs.norm_int(&d) / 2.0).abs() < 1e-12, "{system}");
    }
}

#[test]
fn verdict_is_scale_invariant() {
    for (pair, dir) in [("diagonal:A1", vec![1, 0]), ("diagonal:A1", vec![1, 1]), ("factor:A1xA1", vec![1, 1])] {
        let m = model(pair);
        let s = SupportSpec::new("v", m.system().clone(), vec![vec![1, 1]], vec![Ray { base: vec![0, 1], direction: dir }])
            .unwrap();
        let a = ghc_verdict(&m, &s, None, 12, &cfg(), 1e-3).unwrap();
        let b = ghc_verdict(&m, &s.with_scaled_directions(2), None, 12, &cfg(), 1e-3).unwrap();
        assert_eq!(a.status, b.status, "{pair}");
    }
}

#[test]
fn weights_with_small_constituents_are_near_the_moment_image() {
    let n = 4;
    for pair in STANDARD_PAIRS {
        let spec = catalog_embedding(pair).unwrap();
        let m = CompactModel::new(&spec).unwrap();
        let bound = spec.h().eta_n(n) + 0.05;
        let rank = spec.g().rank();
        let mut lambda = vec![0i64; rank];
        loop {
            if lambda.iter().any(|&x| x != 0) && spec.b_of_lambda_int(&lambda).unwrap() < n {
                let real: Vec<f64> = lambda.iter().map(|&x| x as f64).collect();
                let d = moment_image_distance(&m, &real, &cfg()).distance;
                assert!(d <= bound, "{pair} {lambda:?}: {d} > {bound}");
            }
            let mut k = 0;
            while k < rank {
                lambda[k] += 1;
                if lambda[k] <= 2 {
                    break;
                }
                lambda[k] = 0;
                k += 1;
            }
            if k == rank {
                break;
            }
        }
    }
}

#[test]
fn exact_membership_agrees_with_numerics() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let tol = 1e-3;
    let mut checked = 0;
    while checked < 50 {
        let pair = STANDARD_PAIRS[rng.random_range(0..STANDARD_PAIRS.len())];
        let spec = catalog_embedding(pair).unwrap();
        let rank = spec.g().rank();
        let d: Vec<i64> = (0..rank).map(|_| rng.random_range(0..4)).collect();
        if d.iter().all(|&x| x == 0) {
            continue;
        }
        checked += 1;
        if let Membership::Yes(_) = moment_cone_membership(&spec, &d, 12).unwrap() {
            let m = CompactModel::new(&spec).unwrap();
            let real: Vec<f64> = d.iter().map(|&x| x as f64).collect();
            let dist = moment_image_distance(&m, &real, &cfg());
            assert!(dist.meets(tol), "{pair} {d:?}: {}", dist.distance);
            assert!(dist.distance <= 0.05);
        }
    }
}
