//! Real matrix model of a semisimple Lie algebra in a faithful module.
//!
//! Every simple factor is realized by its smallest faithful module
//! (`sl(n+1)`, `so(2n+1)`, `sp(2n)`, `so(2n)` or the 7-dimensional `G2`
//! module) with simple raising operators `E_i` chosen so that the lowering
//! operators are their transposes, `F_i = E_iᵀ`. Non-simple root vectors are
//! obtained from iterated brackets and rescaled so that `[E_β, E_βᵀ] = H_β`
//! is the coroot. The basis is ordered `h_1..h_r, e_1..e_N, f_1..f_N`, with
//! roots numbered as in [`RootSystem::positive_roots`].

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::liecore::{Family, RootSystem, SimpleFactor};
use crate::rational::{self, q, Q};

pub type Mat = DMatrix<f64>;

#[derive(Debug)]
pub struct MatrixModel {
    system: Arc<RootSystem>,
    size: usize,
    basis: Vec<Mat>,
    factor_of_basis: Vec<usize>,
    cartan_gram_inv: Mat,
    root_norms: Vec<f64>,
    /// `ad[a][(k, b)]`: coefficient of basis element `k` in `[B_a, B_b]`.
    ad: Vec<Mat>,
}

fn unit(n: usize, i: usize, j: usize) -> Mat {
    let mut m = Mat::zeros(n, n);
    m[(i, j)] = 1.0;
    m
}

fn commutator(a: &Mat, b: &Mat) -> Mat {
    a * b - b * a
}

fn frob(a: &Mat, b: &Mat) -> f64 {
    a.component_mul(b).sum()
}

/// Simple raising operators of one simple factor in its defining module.
fn simple_raising(factor: &SimpleFactor) -> (usize, Vec<Mat>) {
    let n = factor.rank;
    match factor.family {
        Family::A => {
            let size = n + 1;
            (size, (0..n).map(|i| unit(size, i, i + 1)).collect())
        }
        Family::B | Family::C | Family::D => {
            let odd = factor.family == Family::B;
            let size = if odd { 2 * n + 1 } else { 2 * n };
            // basis e_1..e_n, [e_0], e_{-n}..e_{-1}
            let idx = |k: i64| -> usize {
                if k > 0 {
                    (k - 1) as usize
                } else if k == 0 {
                    n
                } else {
                    size - (-k) as usize
                }
            };
            let mut gens: Vec<Mat> = (1..n as i64)
                .map(|i| unit(size, idx(i), idx(i + 1)) - unit(size, idx(-(i + 1)), idx(-i)))
                .collect();
            let n = n as i64;
            let last = match factor.family {
                Family::B => (unit(size, idx(n), idx(0)) - unit(size, idx(0), idx(-n))) * 2f64.sqrt(),
                Family::C => unit(size, idx(n), idx(-n)),
                _ => unit(size, idx(n - 1), idx(-n)) - unit(size, idx(n), idx(-(n - 1))),
            };
            gens.push(last);
            (size, gens)
        }
        Family::G => {
            // weights 2α1+α2, α1+α2, α1, 0, -α1, -α1-α2, -2α1-α2
            let s2 = 2f64.sqrt();
            let e1 = unit(7, 0, 1) + unit(7, 2, 3) * s2 + unit(7, 3, 4) * s2 + unit(7, 5, 6);
            let e2 = unit(7, 1, 2) + unit(7, 4, 5);
            (7, vec![e1, e2])
        }
    }
}

impl MatrixModel {
    pub fn new(system: &Arc<RootSystem>) -> Result<Self> {
        let rank = system.rank();
        let sizes: Vec<(usize, Vec<Mat>)> = system.factors().iter().map(simple_raising).collect();
        let size: usize = sizes.iter().map(|(s, _)| s).sum();

        let mut simple = Vec::with_capacity(rank);
        let mut block = 0;
        for (s, gens) in &sizes {
            for g in gens {
                let mut m = Mat::zeros(size, size);
                m.view_mut((block, block), (*s, *s)).copy_from(g);
                simple.push(m);
            }
            block += s;
        }
        let cartan: Vec<Mat> = simple.iter().map(|e| commutator(e, &e.transpose())).collect();

        let cm = system.cartan_matrix();
        for i in 0..rank {
            for j in 0..rank {
                let lhs = commutator(&cartan[i], &simple[j]);
                let err = (lhs - &simple[j] * cm[j][i] as f64).abs().max();
                if err > 1e-12 {
                    return Err(Error::InvalidRootSystem(format!(
                        "matrix model violates [h_{}, e_{}] relation (err {err:e})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }

        let roots = system.positive_roots();
        let index: HashMap<Vec<i64>, usize> =
            roots.iter().enumerate().map(|(k, r)| (r.simple.clone(), k)).collect();
        let norms = system.simple_root_norms();
        let mut raising: Vec<Mat> = Vec::with_capacity(roots.len());
        let mut root_norms = Vec::with_capacity(roots.len());
        for root in roots {
            let beta_q: Vec<Q> = root.weight.iter().map(|&x| q(x)).collect();
            let beta_norm = system.inner(&beta_q, &beta_q);
            root_norms.push(rational::to_f64(&beta_norm));
            if root.height == 1 {
                let i = root.simple.iter().position(|&c| c == 1).unwrap();
                raising.push(simple[i].clone());
                continue;
            }
            let coroot = root
                .simple
                .iter()
                .enumerate()
                .fold(Mat::zeros(size, size), |acc, (i, &c)| {
                    let coef = rational::to_f64(&(q(c) * &norms[i] / &beta_norm));
                    acc + &cartan[i] * coef
                });
            let mut built = None;
            for i in 0..rank {
                let mut lower = root.simple.clone();
                lower[i] -= 1;
                if let Some(&k) = index.get(&lower) {
                    let x = commutator(&simple[i], &raising[k]);
                    let hx = commutator(&x, &x.transpose());
                    let kappa = frob(&hx, &coroot) / frob(&coroot, &coroot);
                    if kappa > 1e-9 {
                        built = Some(x / kappa.sqrt());
                        break;
                    }
                }
            }
            let e = built.ok_or_else(|| {
                Error::InvalidRootSystem(format!("no root vector for {:?}", root.simple))
            })?;
            let err = (commutator(&e, &e.transpose()) - &coroot).abs().max();
            if err > 1e-9 {
                return Err(Error::InvalidRootSystem(format!(
                    "root vector {:?} not normalized (err {err:e})",
                    root.simple
                )));
            }
            raising.push(e);
        }

        let mut basis: Vec<Mat> = cartan.clone();
        basis.extend(raising.iter().cloned());
        basis.extend(raising.iter().map(|e| e.transpose()));
        let mut factor_of_basis: Vec<usize> = (0..rank).map(|i| system.factor_of(i)).collect();
        let root_factor: Vec<usize> = roots
            .iter()
            .map(|r| system.factor_of(r.simple.iter().position(|&c| c != 0).unwrap()))
            .collect();
        factor_of_basis.extend(root_factor.iter().copied());
        factor_of_basis.extend(root_factor.iter().copied());

        let gram = Mat::from_fn(rank, rank, |i, j| frob(&cartan[i], &cartan[j]));
        let cartan_gram_inv = gram
            .try_inverse()
            .ok_or_else(|| Error::InvalidRootSystem("degenerate Cartan subalgebra".into()))?;

        let mut model = MatrixModel {
            system: Arc::clone(system),
            size,
            basis,
            factor_of_basis,
            cartan_gram_inv,
            root_norms,
            ad: Vec::new(),
        };
        let dim = model.dimension();
        let mut ad = vec![Mat::zeros(dim, dim); dim];
        for a in 0..dim {
            for b in 0..dim {
                let c = commutator(&model.basis[a], &model.basis[b]);
                let (coords, residual) = model.decompose(&c);
                if residual > 1e-9 {
                    return Err(Error::InvalidRootSystem(format!(
                        "bracket of {} and {} leaves the algebra (residual {residual:e})",
                        model.label(a),
                        model.label(b)
                    )));
                }
                for k in 0..dim {
                    ad[a][(k, b)] = coords[k];
                }
            }
        }
        model.ad = ad;
        Ok(model)
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.system
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Size of the faithful module the matrices act on.
    pub fn module_size(&self) -> usize {
        self.size
    }

    pub fn rank(&self) -> usize {
        self.system.rank()
    }

    pub fn root_count(&self) -> usize {
        (self.basis.len() - self.rank()) / 2
    }

    pub fn basis_matrix(&self, k: usize) -> &Mat {
        &self.basis[k]
    }

    pub fn factor_of_basis(&self, k: usize) -> usize {
        self.factor_of_basis[k]
    }

    /// Squared length of positive root `k` in the invariant form.
    pub fn root_norm(&self, k: usize) -> f64 {
        self.root_norms[k]
    }

    pub fn cartan_index(&self, j: usize) -> usize {
        j
    }

    pub fn raising_index(&self, k: usize) -> usize {
        self.rank() + k
    }

    pub fn lowering_index(&self, k: usize) -> usize {
        self.rank() + self.root_count() + k
    }

    pub fn label(&self, k: usize) -> String {
        let r = self.rank();
        let n = self.root_count();
        if k < r {
            format!("h{}", k + 1)
        } else if k < r + n {
            format!("e_{}", k - r + 1)
        } else {
            format!("f_{}", k - r - n + 1)
        }
    }

    pub fn parse_label(&self, label: &str) -> Option<usize> {
        let r = self.rank();
        let n = self.root_count();
        let label = label.trim();
        let (kind, num) = if let Some(rest) = label.strip_prefix('h') {
            ('h', rest)
        } else if let Some(rest) = label.strip_prefix("e_") {
            ('e', rest)
        } else if let Some(rest) = label.strip_prefix("f_") {
            ('f', rest)
        } else {
            return None;
        };
        let i: usize = num.parse().ok()?;
        match kind {
            'h' if (1..=r).contains(&i) => Some(i - 1),
            'e' if (1..=n).contains(&i) => Some(r + i - 1),
            'f' if (1..=n).contains(&i) => Some(r + n + i - 1),
            _ => None,
        }
    }

    /// Coordinates of a vector given as a `label → coefficient` map.
    pub fn coords_from_labels(&self, element: &BTreeMap<String, f64>) -> Result<Vec<f64>> {
        let mut v = vec![0.0; self.dimension()];
        for (label, &c) in element {
            let k = self
                .parse_label(label)
                .ok_or_else(|| Error::Malformed(format!("unknown basis label `{label}`")))?;
            v[k] += c;
        }
        Ok(v)
    }

    pub fn labels_from_coords(&self, v: &[f64]) -> BTreeMap<String, f64> {
        v.iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(k, &c)| (self.label(k), c))
            .collect()
    }

    pub fn matrix_of(&self, v: &[f64]) -> Mat {
        v.iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .fold(Mat::zeros(self.size, self.size), |acc, (k, &c)| acc + &self.basis[k] * c)
    }

    /// Coordinates of a matrix in the basis, plus the Frobenius residual of
    /// the part lying outside the algebra.
    pub fn decompose(&self, m: &Mat) -> (Vec<f64>, f64) {
        let r = self.rank();
        let mut coords = vec![0.0; self.dimension()];
        let rhs = DVector::from_fn(r, |j, _| frob(m, &self.basis[j]));
        let h = &self.cartan_gram_inv * rhs;
        coords[..r].copy_from_slice(h.as_slice());
        for k in r..self.dimension() {
            let b = &self.basis[k];
            coords[k] = frob(m, b) / frob(b, b);
        }
        let residual = (m - self.matrix_of(&coords)).norm();
        (coords, residual)
    }

    /// Adjoint matrix of basis element `a`.
    pub fn ad_basis(&self, a: usize) -> &Mat {
        &self.ad[a]
    }

    pub fn ad_of(&self, x: &[f64]) -> Mat {
        let dim = self.dimension();
        x.iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .fold(Mat::zeros(dim, dim), |acc, (a, &c)| acc + &self.ad[a] * c)
    }

    pub fn bracket(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let v = self.ad_of(x) * DVector::from_column_slice(y);
        v.as_slice().to_vec()
    }

    /// `tr(B_a B_b)` in the faithful module.
    pub fn trace_form(&self, a: usize, b: usize) -> f64 {
        (&self.basis[a] * &self.basis[b]).trace()
    }
}

/// Orthonormal basis (Euclidean) of the span of `vectors`, by modified
/// Gram-Schmidt with relative rank tolerance `tol`.
pub(crate) fn orthonormal_span(vectors: &[Vec<f64>], tol: f64) -> Vec<DVector<f64>> {
    let scale = vectors
        .iter()
        .map(|v| v.iter().map(|x| x * x).sum::<f64>().sqrt())
        .fold(0.0, f64::max)
        .max(1.0);
    let mut basis: Vec<DVector<f64>> = Vec::new();
    for v in vectors {
        let mut w = DVector::from_column_slice(v);
        for _ in 0..2 {
            for b in &basis {
                let c = b.dot(&w);
                w -= b * c;
            }
        }
        let n = w.norm();
        if n > tol * scale {
            basis.push(w / n);
        }
    }
    basis
}

pub(crate) fn distance_to_span(basis: &[DVector<f64>], v: &[f64]) -> f64 {
    let mut w = DVector::from_column_slice(v);
    for b in basis {
        let c = b.dot(&w);
        w -= b * c;
    }
    w.norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_match_root_counts() {
        for (d, dim, size) in [
            ("A1", 3, 2),
            ("A2", 8, 3),
            ("B2", 10, 5),
            ("C3", 21, 6),
            ("D4", 28, 8),
            ("G2", 14, 7),
            ("A1xA1", 6, 4),
        ] {
            let rs = RootSystem::parse(d).unwrap();
            let m = MatrixModel::new(&rs).unwrap();
            assert_eq!(m.dimension(), dim, "{d}");
            assert_eq!(m.module_size(), size, "{d}");
        }
    }

    #[test]
    fn structure_constants_are_antisymmetric_and_satisfy_jacobi() {
        for d in ["A2", "B2", "G2"] {
            let rs = RootSystem::parse(d).unwrap();
            let m = MatrixModel::new(&rs).unwrap();
            let dim = m.dimension();
            let e = |k: usize| {
                let mut v = vec![0.0; dim];
                v[k] = 1.0;
                v
            };
            for a in 0..dim {
                for b in 0..dim {
                    let ab = m.bracket(&e(a), &e(b));
                    let ba = m.bracket(&e(b), &e(a));
                    assert!(ab.iter().zip(&ba).all(|(x, y)| (x + y).abs() < 1e-10));
                }
            }
            let (x, y, z) = (e(m.raising_index(0)), e(m.lowering_index(1)), e(m.raising_index(2)));
            let t1 = m.bracket(&x, &m.bracket(&y, &z));
            let t2 = m.bracket(&y, &m.bracket(&z, &x));
            let t3 = m.bracket(&z, &m.bracket(&x, &y));
            assert!(t1.iter().zip(&t2).zip(&t3).all(|((a, b), c)| (a + b + c).abs() < 1e-10));
        }
    }

    #[test]
    fn labels_round_trip() {
        let rs = RootSystem::parse("A2").unwrap();
        let m = MatrixModel::new(&rs).unwrap();
        for k in 0..m.dimension() {
            assert_eq!(m.parse_label(&m.label(k)), Some(k));
        }
        assert_eq!(m.parse_label("h3"), None);
        assert_eq!(m.parse_label("e_4"), None);
        assert_eq!(m.parse_label("x1"), None);
    }
}
