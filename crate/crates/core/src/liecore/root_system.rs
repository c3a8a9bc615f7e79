//! Cartan data, positive roots and the invariant form of a semisimple
//! root system given as a product of simple factors.
//!
//! Weights are written in the fundamental-weight basis throughout, so the
//! coordinate `λ_i` is the pairing `λ(α_i^∨)`. Simple root `α_i` has
//! fundamental coordinates equal to row `i` of the Cartan matrix, with
//! `cartan[i][j] = 2(α_i, α_j)/(α_j, α_j)`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num::{BigInt, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, q, q_frac, Q, QMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'A' => Some(Family::A),
            'B' => Some(Family::B),
            'C' => Some(Family::C),
            'D' => Some(Family::D),
            'G' => Some(Family::G),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SimpleFactor {
    pub family: Family,
    pub rank: usize,
}

impl SimpleFactor {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(SimpleFactor { family, rank })
        } else {
            Err(Error::InvalidRootSystem(format!(
                "{}{} is not a valid simple type (A n>=1, B n>=2, C n>=3, D n>=4, G n=2)",
                family.letter(),
                rank
            )))
        }
    }

    /// Number of positive roots of this simple factor.
    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::G => 6,
        }
    }

    /// Cartan matrix and squared simple-root lengths (long roots have length² 2).
    fn cartan_data(&self) -> (Vec<Vec<i64>>, Vec<Q>) {
        let n = self.rank;
        // (α_i, α_j) for adjacent nodes, then A[i][j] = 2 (α_i, α_j) / (α_j, α_j).
        let mut norms = vec![q(2); n];
        let mut links: Vec<(usize, usize, Q)> = Vec::new();
        match self.family {
            Family::A => {
                for i in 0..n.saturating_sub(1) {
                    links.push((i, i + 1, q(-1)));
                }
            }
            Family::B => {
                norms[n - 1] = q(1);
                for i in 0..n - 1 {
                    links.push((i, i + 1, q(-1)));
                }
            }
            Family::C => {
                for norm in norms.iter_mut().take(n - 1) {
                    *norm = q(1);
                }
                for i in 0..n - 2 {
                    links.push((i, i + 1, q_frac(-1, 2)));
                }
                links.push((n - 2, n - 1, q(-1)));
            }
            Family::D => {
                for i in 0..n - 2 {
                    links.push((i, i + 1, q(-1)));
                }
                links.push((n - 3, n - 1, q(-1)));
            }
            Family::G => {
                norms[0] = q_frac(2, 3);
                links.push((0, 1, q(-1)));
            }
        }
        let mut form = vec![vec![Q::zero(); n]; n];
        for i in 0..n {
            form[i][i] = norms[i].clone();
        }
        for (i, j, v) in links {
            form[i][j] = v.clone();
            form[j][i] = v;
        }
        let cartan = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let v = q(2) * &form[i][j] / &norms[j];
                        rational::to_i64(&v).expect("Cartan entries are integral")
                    })
                    .collect()
            })
            .collect();
        (cartan, norms)
    }
}

impl fmt::Display for SimpleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// A positive root, in simple-root and fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveRoot {
    pub simple: Vec<i64>,
    pub weight: Vec<i64>,
    pub height: i64,
}

#[derive(Debug)]
pub struct RootSystem {
    factors: Vec<SimpleFactor>,
    factor_of: Vec<usize>,
    offsets: Vec<usize>,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    root_norms: Vec<Q>,
    form: QMatrix,
    form_int: Vec<Vec<i128>>,
    form_den: i128,
    height_num: Vec<i128>,
    height_den: i128,
    coroot_gram: QMatrix,
    positive_roots: Vec<PositiveRoot>,
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors
    }
}

impl Eq for RootSystem {}

impl RootSystem {
    pub fn new(factors: &[(Family, usize)]) -> Result<Arc<Self>> {
        if factors.is_empty() {
            return Err(Error::InvalidRootSystem("no simple factors given".into()));
        }
        let factors = factors
            .iter()
            .map(|&(f, r)| SimpleFactor::new(f, r))
            .collect::<Result<Vec<_>>>()?;
        Ok(Arc::new(Self::assemble(factors)))
    }

    /// Parses descriptors such as `A2`, `a1xa1` or `G2`.
    pub fn parse(descriptor: &str) -> Result<Arc<Self>> {
        let factors = descriptor
            .trim()
            .split(['x', 'X'])
            .map(|part| {
                let part = part.trim();
                let mut chars = part.chars();
                let family = chars
                    .next()
                    .and_then(Family::from_letter)
                    .ok_or_else(|| Error::InvalidRootSystem(format!("bad factor `{part}` in `{descriptor}`")))?;
                let rank: usize = chars
                    .as_str()
                    .parse()
                    .map_err(|_| Error::InvalidRootSystem(format!("bad rank in `{part}`")))?;
                Ok((family, rank))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&factors)
    }

    fn assemble(factors: Vec<SimpleFactor>) -> Self {
        let rank: usize = factors.iter().map(|f| f.rank).sum();
        let mut cartan = vec![vec![0i64; rank]; rank];
        let mut root_norms = vec![Q::zero(); rank];
        let mut factor_of = Vec::with_capacity(rank);
        let mut offsets = Vec::with_capacity(factors.len());
        let mut offset = 0;
        for (fi, f) in factors.iter().enumerate() {
            let (c, norms) = f.cartan_data();
            for i in 0..f.rank {
                for j in 0..f.rank {
                    cartan[offset + i][offset + j] = c[i][j];
                }
                root_norms[offset + i] = norms[i].clone();
                factor_of.push(fi);
            }
            offsets.push(offset);
            offset += f.rank;
        }

        // (α_i, α_j) = A[i][j] (α_j, α_j) / 2
        let root_form: QMatrix = (0..rank)
            .map(|i| (0..rank).map(|j| q(cartan[i][j]) * &root_norms[j] / q(2)).collect())
            .collect();
        let a: QMatrix = cartan.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        let a_inv = rational::inverse(&a).expect("Cartan matrices are invertible");
        let form = rational::mat_mul(&rational::mat_mul(&a_inv, &root_form), &rational::transpose(&a_inv));

        let den = rational::common_denominator(&form);
        let form_den = den.to_i128().expect("form denominator fits");
        let form_int = form
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| (x * Q::from_integer(den.clone())).to_integer().to_i128().unwrap())
                    .collect()
            })
            .collect();

        let ones = vec![q(1); rank];
        let height = rational::mat_vec(&a_inv, &ones);
        let hden = rational::common_denominator(&vec![height.clone()]);
        let height_den = hden.to_i128().unwrap();
        let height_num = height
            .iter()
            .map(|x| (x * Q::from_integer(hden.clone())).to_integer().to_i128().unwrap())
            .collect();

        let coroot_gram = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| q(4) * &root_form[i][j] / (&root_norms[i] * &root_norms[j]))
                    .collect()
            })
            .collect();

        let positive_roots = Self::close_roots(&cartan);

        RootSystem {
            factors,
            factor_of,
            offsets,
            rank,
            cartan,
            root_norms,
            form,
            form_int,
            form_den,
            height_num,
            height_den,
            coroot_gram,
            positive_roots,
        }
    }

    /// Positive roots by closure from the simple roots using root strings:
    /// `β + α_i` is a root iff `p - ⟨β, α_i^∨⟩ > 0`, where `p` is the length
    /// of the α_i-string below β.
    fn close_roots(cartan: &[Vec<i64>]) -> Vec<PositiveRoot> {
        let rank = cartan.len();
        let unit = |i: usize| {
            let mut v = vec![0i64; rank];
            v[i] = 1;
            v
        };
        let mut all: HashSet<Vec<i64>> = HashSet::new();
        let mut level: Vec<Vec<i64>> = (0..rank).map(unit).collect();
        all.extend(level.iter().cloned());
        let mut ordered: Vec<Vec<i64>> = Vec::new();
        while !level.is_empty() {
            let mut next: Vec<Vec<i64>> = Vec::new();
            for beta in &level {
                for i in 0..rank {
                    let mut p = 0;
                    let mut probe = beta.clone();
                    loop {
                        probe[i] -= 1;
                        if all.contains(&probe) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pairing: i64 = (0..rank).map(|j| beta[j] * cartan[j][i]).sum();
                    if p - pairing > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if all.insert(up.clone()) {
                            next.push(up);
                        }
                    }
                }
            }
            ordered.append(&mut level);
            level = next;
        }
        let mut roots: Vec<PositiveRoot> = ordered
            .into_iter()
            .map(|simple| {
                let weight = (0..rank).map(|k| (0..rank).map(|j| simple[j] * cartan[j][k]).sum()).collect();
                let height = simple.iter().sum();
                PositiveRoot { simple, weight, height }
            })
            .collect();
        roots.sort_by(|a, b| a.height.cmp(&b.height).then_with(|| b.simple.cmp(&a.simple)));
        roots
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn factors(&self) -> &[SimpleFactor] {
        &self.factors
    }

    /// Index of the simple factor containing simple root `i`.
    pub fn factor_of(&self, i: usize) -> usize {
        self.factor_of[i]
    }

    /// First simple-root index of factor `f`.
    pub fn factor_offset(&self, f: usize) -> usize {
        self.offsets[f]
    }

    pub fn descriptor(&self) -> String {
        self.to_string()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Squared length `(α_i, α_i)` of each simple root.
    pub fn simple_root_norms(&self) -> &[Q] {
        &self.root_norms
    }

    /// Simple root `α_i` in fundamental-weight coordinates.
    pub fn simple_root(&self, i: usize) -> &[i64] {
        &self.cartan[i]
    }

    pub fn positive_roots(&self) -> &[PositiveRoot] {
        &self.positive_roots
    }

    pub fn rho(&self) -> Vec<i64> {
        vec![1; self.rank]
    }

    /// Complex dimension of the Lie algebra.
    pub fn dimension(&self) -> usize {
        self.rank + 2 * self.positive_roots.len()
    }

    /// Invariant form on the fundamental-weight basis: `(ω_i, ω_j)`.
    pub fn form(&self) -> &QMatrix {
        &self.form
    }

    /// `(α_i^∨, α_j^∨)` under the same form.
    pub fn coroot_gram(&self) -> &QMatrix {
        &self.coroot_gram
    }

    /// Exact inner product of rational weights.
    pub fn inner(&self, a: &[Q], b: &[Q]) -> Q {
        let mut acc = Q::zero();
        for i in 0..self.rank {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..self.rank {
                acc += &a[i] * &self.form[i][j] * &b[j];
            }
        }
        acc
    }

    /// Inner product of integral weights scaled by `form_scale()`.
    pub fn inner_scaled(&self, a: &[i64], b: &[i64]) -> i128 {
        let mut acc = 0i128;
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            let mut row = 0i128;
            for j in 0..self.rank {
                row += self.form_int[i][j] * b[j] as i128;
            }
            acc += a[i] as i128 * row;
        }
        acc
    }

    pub fn form_scale(&self) -> i128 {
        self.form_den
    }

    pub fn inner_f64(&self, a: &[f64], b: &[f64]) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                acc += a[i] * (self.form_int[i][j] as f64) * b[j];
            }
        }
        acc / self.form_den as f64
    }

    pub fn norm_f64(&self, a: &[f64]) -> f64 {
        self.inner_f64(a, a).max(0.0).sqrt()
    }

    /// Height of an element of the root lattice, scaled by `height_scale()`.
    pub fn height_scaled(&self, w: &[i64]) -> i128 {
        w.iter().zip(&self.height_num).map(|(&x, &h)| x as i128 * h).sum()
    }

    pub fn height_scale(&self) -> i128 {
        self.height_den
    }

    /// Simple reflection `s_i(w) = w - w_i α_i` on an integral weight.
    pub fn reflect(&self, w: &mut [i64], i: usize) {
        let c = w[i];
        if c != 0 {
            for (x, a) in w.iter_mut().zip(&self.cartan[i]) {
                *x -= c * a;
            }
        }
    }

    /// Dominant representative of the Weyl orbit of an integral weight.
    pub fn dominant_of(&self, w: &[i64]) -> Vec<i64> {
        let mut w = w.to_vec();
        while let Some(i) = w.iter().position(|&x| x < 0) {
            self.reflect(&mut w, i);
        }
        w
    }

    /// Dominant representative for rational weights.
    pub fn dominant_of_rational(&self, w: &[Q]) -> Vec<Q> {
        let mut w = w.to_vec();
        while let Some(i) = w.iter().position(|x| *x < Q::zero()) {
            let c = w[i].clone();
            for (x, a) in w.iter_mut().zip(&self.cartan[i]) {
                *x -= &c * q(*a);
            }
        }
        w
    }

    /// Whole Weyl orbit of an integral weight.
    pub fn orbit(&self, w: &[i64]) -> Vec<Vec<i64>> {
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut stack = vec![w.to_vec()];
        seen.insert(w.to_vec());
        let mut out = Vec::new();
        while let Some(v) = stack.pop() {
            for i in 0..self.rank {
                if v[i] != 0 {
                    let mut u = v.clone();
                    self.reflect(&mut u, i);
                    if seen.insert(u.clone()) {
                        stack.push(u);
                    }
                }
            }
            out.push(v);
        }
        out
    }

    /// Weyl dimension formula `∏_{α>0} (λ+ρ, α)/(ρ, α)` for a dominant
    /// integral `λ`.
    pub fn weyl_dim_int(&self, lambda: &[i64]) -> Result<u64> {
        self.check_dominant_integral(lambda)?;
        let shifted: Vec<i64> = lambda.iter().map(|x| x + 1).collect();
        let rho = self.rho();
        let mut num = BigInt::from(1);
        let mut den = BigInt::from(1);
        for root in &self.positive_roots {
            num *= BigInt::from(self.inner_scaled(&shifted, &root.weight));
            den *= BigInt::from(self.inner_scaled(&rho, &root.weight));
        }
        let (quot, rem) = num::Integer::div_rem(&num, &den);
        debug_assert!(rem.is_zero());
        quot.to_u64().ok_or(Error::Overflow("weyl dimension"))
    }

    pub fn check_dominant_integral(&self, lambda: &[i64]) -> Result<()> {
        if lambda.len() != self.rank {
            return Err(Error::RankMismatch { got: lambda.len(), rank: self.rank });
        }
        if lambda.iter().any(|&x| x < 0) {
            return Err(Error::NotDominantIntegral(format!("{lambda:?}")));
        }
        Ok(())
    }

    /// Fundamental coordinates of the simple-root combination `Σ c_i α_i`.
    pub fn root_combination(&self, c: &[i64]) -> Vec<i64> {
        (0..self.rank)
            .map(|k| (0..self.rank).map(|j| c[j] * self.cartan[j][k]).sum())
            .collect()
    }

    /// Index of a positive root given in simple-root coordinates.
    pub fn root_index(&self, simple: &[i64]) -> Option<usize> {
        self.positive_roots.iter().position(|r| r.simple == simple)
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.chars();
        match (chars.next().and_then(Family::from_letter), chars.next()) {
            (Some(f), None) => Ok(f),
            _ => Err(Error::InvalidRootSystem(format!("unknown family `{s}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_is_forced() {
        let rs = RootSystem::parse("A1").unwrap();
        assert_eq!(rs.positive_roots().len(), 1);
        assert_eq!(rs.rho(), vec![1]);
        assert_eq!(rs.positive_roots()[0].weight, vec![2]);
    }

    #[test]
    fn g2_closure_gives_six_roots() {
        let rs = RootSystem::parse("G2").unwrap();
        let simple: Vec<Vec<i64>> = rs.positive_roots().iter().map(|r| r.simple.clone()).collect();
        assert_eq!(
            simple,
            vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 1], vec![3, 1], vec![3, 2]]
        );
        // 2α1+α2 = ω1 (short, the 7-dimensional module), 3α1+2α2 = ω2 (adjoint).
        assert_eq!(rs.positive_roots()[3].weight, vec![1, 0]);
        assert_eq!(rs.positive_roots()[5].weight, vec![0, 1]);
    }

    #[test]
    fn product_system_is_orthogonal() {
        let rs = RootSystem::parse("A1xA1").unwrap();
        assert_eq!(rs.positive_roots().len(), 2);
        assert_eq!(rs.cartan_matrix(), &[vec![2, 0], vec![0, 2]]);
        assert!(rs.form()[0][1].is_zero());
    }

    #[test]
    fn root_counts_match_known_values() {
        for (d, n) in [("A3", 6), ("A4", 10), ("B2", 4), ("B3", 9), ("B4", 16), ("C3", 9), ("C4", 16), ("D4", 12), ("G2", 6)] {
            let rs = RootSystem::parse(d).unwrap();
            assert_eq!(rs.positive_roots().len(), n, "{d}");
            assert_eq!(rs.factors()[0].positive_root_count(), n);
        }
    }

    #[test]
    fn cartan_matrix_matches_form() {
        for d in ["A3", "B3", "C3", "D4", "G2", "B2xA1"] {
            let rs = RootSystem::parse(d).unwrap();
            let r = rs.rank();
            for i in 0..r {
                for j in 0..r {
                    let ai: Vec<Q> = rs.simple_root(i).iter().map(|&x| q(x)).collect();
                    let aj: Vec<Q> = rs.simple_root(j).iter().map(|&x| q(x)).collect();
                    let v = q(2) * rs.inner(&ai, &aj) / rs.inner(&aj, &aj);
                    assert_eq!(v, q(rs.cartan_matrix()[i][j]), "{d} {i} {j}");
                }
            }
        }
    }

    #[test]
    fn long_roots_have_length_two() {
        for d in ["A2", "B3", "C3", "D4", "G2"] {
            let rs = RootSystem::parse(d).unwrap();
            let max = rs
                .positive_roots()
                .iter()
                .map(|r| rs.inner_scaled(&r.weight, &r.weight))
                .max()
                .unwrap();
            assert_eq!(max, 2 * rs.form_scale(), "{d}");
        }
    }

    #[test]
    fn invalid_types_are_rejected() {
        for d in ["B1", "C2", "D3", "G3", "A0", "E6", "", "A", "A1x"] {
            assert!(RootSystem::parse(d).is_err(), "{d}");
        }
        assert!(RootSystem::parse("a1Xg2").is_ok());
    }

    #[test]
    fn reflection_example() {
        let rs = RootSystem::parse("A2").unwrap();
        assert_eq!(rs.dominant_of(&[-1, 2]), vec![1, 1]);
        let rs = RootSystem::parse("A1").unwrap();
        assert_eq!(rs.dominant_of(&[-5]), vec![5]);
    }
}
