//! Built-in inclusions, addressed by pair strings such as
//! `principal-sl2:A2`, `diagonal:A1`, `factor:A1xA1`, `sl-in-sl:2` and
//! `identity:A1`.

use std::sync::Arc;

use num::{One, Zero};

use super::{EmbeddingSpec, GeneratorElement};
use crate::error::{Error, Result};
use crate::liecore::{Family, RootSystem};
use crate::rational::{self, q, Q, QMatrix};

/// Pairs exercised by the test and acceptance suites.
pub const STANDARD_PAIRS: &[&str] = &[
    "principal-sl2:A1",
    "diagonal:A1",
    "factor:A1xA1",
    "sl-in-sl:2",
    "principal-sl2:A2",
    "principal-sl2:B2",
    "principal-sl2:G2",
];

pub fn catalog_embedding(pair: &str) -> Result<EmbeddingSpec> {
    let (kind, arg) = pair.split_once(':').ok_or_else(|| Error::UnknownPair(pair.to_string()))?;
    let system = |d: &str| RootSystem::parse(d).map_err(|_| Error::UnknownPair(pair.to_string()));
    match kind.trim() {
        "principal-sl2" => principal_sl2(&system(arg)?),
        "diagonal" => diagonal(&system(arg)?),
        "factor" => factor(&system(arg)?),
        "identity" => identity(&system(arg)?),
        "sl-in-sl" => {
            let n: usize = arg.trim().parse().map_err(|_| Error::UnknownPair(pair.to_string()))?;
            sl_in_sl(n)
        }
        _ => Err(Error::UnknownPair(pair.to_string())),
    }
}

fn cartan_generator(coeffs: impl IntoIterator<Item = (usize, f64)>) -> GeneratorElement {
    coeffs
        .into_iter()
        .filter(|(_, c)| *c != 0.0)
        .map(|(i, c)| (format!("h{}", i + 1), c))
        .collect()
}

fn root_generator(kind: char, entries: impl IntoIterator<Item = (usize, f64)>) -> GeneratorElement {
    entries.into_iter().map(|(k, c)| (format!("{kind}_{}", k + 1), c)).collect()
}

/// Principal `sl2`: the Cartan element pairs to 2 with every simple root.
pub fn principal_sl2(g: &Arc<RootSystem>) -> Result<EmbeddingSpec> {
    let a: QMatrix = g.cartan_matrix().iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
    let a_inv = rational::inverse(&a).expect("Cartan matrix invertible");
    // α_j(Σ c_i h_i) = Σ_i A[j][i] c_i = 2 for all j.
    let c: Vec<Q> = rational::mat_vec(&a_inv, &vec![q(2); g.rank()]);
    let c_f: Vec<f64> = c.iter().map(rational::to_f64).collect();
    let h_gen = cartan_generator(c_f.iter().copied().enumerate());
    // e = Σ √c_i e_i and f = Σ √c_i f_i keep the triple transpose-stable.
    let simple: Vec<(usize, f64)> = (0..g.rank())
        .map(|i| {
            let mut s = vec![0i64; g.rank()];
            s[i] = 1;
            (g.root_index(&s).expect("simple root"), c_f[i].sqrt())
        })
        .collect();
    let gens = vec![h_gen, root_generator('e', simple.clone()), root_generator('f', simple)];
    let h = RootSystem::new(&[(Family::A, 1)])?;
    EmbeddingSpec::new(format!("principal-sl2:{g}"), Arc::clone(g), h, vec![c], Some(gens))
}

/// `h` embedded diagonally in `h × h`.
pub fn diagonal(h: &Arc<RootSystem>) -> Result<EmbeddingSpec> {
    let mut factors: Vec<(Family, usize)> = h.factors().iter().map(|f| (f.family, f.rank)).collect();
    factors.extend(factors.clone());
    let g = RootSystem::new(&factors)?;
    let r = h.rank();
    let restriction: QMatrix = (0..r)
        .map(|i| (0..2 * r).map(|j| if j == i || j == i + r { Q::one() } else { Q::zero() }).collect())
        .collect();
    let mut gens: Vec<GeneratorElement> = (0..r).map(|i| cartan_generator([(i, 1.0), (i + r, 1.0)])).collect();
    for kind in ['e', 'f'] {
        for root in h.positive_roots() {
            let mut first = root.simple.clone();
            first.extend(vec![0; r]);
            let mut second = vec![0; r];
            second.extend(root.simple.iter().copied());
            let a = g.root_index(&first).expect("copy root");
            let b = g.root_index(&second).expect("copy root");
            gens.push(root_generator(kind, [(a, 1.0), (b, 1.0)]));
        }
    }
    EmbeddingSpec::new(format!("diagonal:{h}"), g, Arc::clone(h), restriction, Some(gens))
}

/// The first simple factor of a product, `h ⊂ h × h′ × …`.
pub fn factor(g: &Arc<RootSystem>) -> Result<EmbeddingSpec> {
    if g.factors().len() < 2 {
        return Err(Error::UnknownPair(format!("factor:{g} (needs at least two factors)")));
    }
    let first = g.factors()[0];
    let h = RootSystem::new(&[(first.family, first.rank)])?;
    sub_by_simple_roots(format!("factor:{g}"), g, h, (0..first.rank).collect())
}

/// `sl(n)` as the upper-left block of `sl(n+1)`.
pub fn sl_in_sl(n: usize) -> Result<EmbeddingSpec> {
    if n < 2 {
        return Err(Error::UnknownPair(format!("sl-in-sl:{n} (needs n >= 2)")));
    }
    let g = RootSystem::new(&[(Family::A, n)])?;
    let h = RootSystem::new(&[(Family::A, n - 1)])?;
    sub_by_simple_roots(format!("sl-in-sl:{n}"), &g, h, (0..n - 1).collect())
}

pub fn identity(g: &Arc<RootSystem>) -> Result<EmbeddingSpec> {
    sub_by_simple_roots(format!("identity:{g}"), g, Arc::clone(g), (0..g.rank()).collect())
}

/// Regular subalgebra spanned by the root subsystem on the given simple
/// roots; `h` must have matching Cartan data in that order.
fn sub_by_simple_roots(
    name: String,
    g: &Arc<RootSystem>,
    h: Arc<RootSystem>,
    simple: Vec<usize>,
) -> Result<EmbeddingSpec> {
    let restriction: QMatrix = simple
        .iter()
        .map(|&s| (0..g.rank()).map(|j| if j == s { Q::one() } else { Q::zero() }).collect())
        .collect();
    let mut gens: Vec<GeneratorElement> = simple.iter().map(|&s| cartan_generator([(s, 1.0)])).collect();
    let inside: Vec<usize> = g
        .positive_roots()
        .iter()
        .enumerate()
        .filter(|(_, r)| r.simple.iter().enumerate().all(|(i, &c)| c == 0 || simple.contains(&i)))
        .map(|(k, _)| k)
        .collect();
    for kind in ['e', 'f'] {
        for &k in &inside {
            gens.push(root_generator(kind, [(k, 1.0)]));
        }
    }
    EmbeddingSpec::new(name, Arc::clone(g), h, restriction, Some(gens))
}
