use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::branching::EmbeddingSpec;
use crate::error::{Error, Result};
use crate::lie_algebra::{orthonormal_span, Mat, MatrixModel};
use crate::liecore::RootSystem;
use crate::rational;

const CLOSURE_TOL: f64 = 1e-9;

/// The compact real form `k` of `g` together with the compact form `l` of `h`.
///
/// Coordinates refer to the basis `u_j = i·h_j`, `a_β = e_β − f_β`,
/// `b_β = i·(e_β + f_β)`. Internally everything is also held in an
/// orthonormal basis for the metric, where `ad` is antisymmetric and the
/// projector onto `l` is symmetric.
#[derive(Debug)]
pub struct CompactModel {
    spec: EmbeddingSpec,
    rank: usize,
    roots: usize,
    adjoint_basis: Vec<Mat>,
    metric: Mat,
    h_projector: Mat,
    coroot_gram_inv: Mat,
    to_ortho: Mat,
    from_ortho: Mat,
    ad_ortho: Vec<Mat>,
    proj_ortho: Mat,
}

/// A complex element of `g` as real and imaginary Chevalley coordinates.
struct Complex {
    re: Vec<f64>,
    im: Vec<f64>,
}

impl CompactModel {
    pub fn new(spec: &EmbeddingSpec) -> Result<Self> {
        let gens = spec
            .compact_generators()
            .ok_or_else(|| Error::MissingGenerators(spec.name().to_string()))?;
        let g = spec.g();
        let model = MatrixModel::new(g)?;
        let rank = model.rank();
        let roots = model.root_count();
        let dim = model.dimension();

        let mut cm = CompactModel {
            spec: spec.clone(),
            rank,
            roots,
            adjoint_basis: Vec::new(),
            metric: Mat::zeros(dim, dim),
            h_projector: Mat::zeros(dim, dim),
            coroot_gram_inv: Mat::zeros(rank, rank),
            to_ortho: Mat::zeros(dim, dim),
            from_ortho: Mat::zeros(dim, dim),
            ad_ortho: Vec::new(),
            proj_ortho: Mat::zeros(dim, dim),
        };

        let elements: Vec<Complex> = (0..dim).map(|a| cm.unit_complex(a)).collect();
        let mut adjoint_basis = vec![Mat::zeros(dim, dim); dim];
        for a in 0..dim {
            for b in 0..dim {
                let x = &elements[a];
                let y = &elements[b];
                let rr = model.bracket(&x.re, &y.re);
                let ii = model.bracket(&x.im, &y.im);
                let ri = model.bracket(&x.re, &y.im);
                let ir = model.bracket(&x.im, &y.re);
                let z = Complex {
                    re: rr.iter().zip(&ii).map(|(p, q)| p - q).collect(),
                    im: ri.iter().zip(&ir).map(|(p, q)| p + q).collect(),
                };
                let coords = cm.compact_coords(&z);
                let residual = cm.residual(&z, &coords);
                if residual > CLOSURE_TOL {
                    return Err(Error::BracketClosure {
                        left: cm.label(a),
                        right: cm.label(b),
                        residual,
                    });
                }
                for (k, c) in coords.into_iter().enumerate() {
                    adjoint_basis[a][(k, b)] = c;
                }
            }
        }
        cm.adjoint_basis = adjoint_basis;

        // Re tr(K1 K2) = tr(X1 X2) - tr(Y1 Y2) for K = X + iY.
        let factor_scale = factor_scales(&model, g);
        let mats: Vec<(Mat, Mat)> = elements
            .iter()
            .map(|e| (model.matrix_of(&e.re), model.matrix_of(&e.im)))
            .collect();
        let factor_of: Vec<usize> = (0..dim).map(|a| model.factor_of_basis(cm.chevalley_anchor(a))).collect();
        let mut metric = Mat::zeros(dim, dim);
        for a in 0..dim {
            for b in a..dim {
                if factor_of[a] != factor_of[b] {
                    continue;
                }
                let re_tr = (&mats[a].0 * &mats[b].0).trace() - (&mats[a].1 * &mats[b].1).trace();
                let v = -factor_scale[factor_of[a]] * re_tr;
                metric[(a, b)] = v;
                metric[(b, a)] = v;
            }
        }
        let chol = metric.clone().cholesky().ok_or_else(|| {
            Error::InvalidRootSystem(format!("compact form of {g} has an indefinite metric"))
        })?;
        let l = chol.l();
        let to_ortho = l.transpose();
        let from_ortho = to_ortho
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::InvalidRootSystem("singular metric".into()))?;
        cm.metric = metric;

        cm.ad_ortho = (0..dim)
            .map(|a| {
                let combo = (0..dim).fold(Mat::zeros(dim, dim), |acc, b| {
                    let c = from_ortho[(b, a)];
                    if c == 0.0 {
                        acc
                    } else {
                        acc + &cm.adjoint_basis[b] * c
                    }
                });
                &to_ortho * combo * &from_ortho
            })
            .collect();

        let mut l_vectors = Vec::new();
        for gen in gens {
            let v = model.coords_from_labels(gen)?;
            let (skew, isym) = cm.split_real(&v);
            l_vectors.push((&to_ortho * DVector::from_vec(skew)).as_slice().to_vec());
            l_vectors.push((&to_ortho * DVector::from_vec(isym)).as_slice().to_vec());
        }
        let span = orthonormal_span(&l_vectors, CLOSURE_TOL);
        let dim_h = spec.h().dimension();
        if span.len() != dim_h {
            return Err(Error::GeneratorMismatch(format!(
                "{}: compact form of h has dimension {}, expected {dim_h}; the generators are not stable under the compact involution",
                spec.name(),
                span.len()
            )));
        }
        let proj_ortho = span.iter().fold(Mat::zeros(dim, dim), |acc, q| acc + q * q.transpose());
        cm.h_projector = &from_ortho * &proj_ortho * &to_ortho;
        cm.proj_ortho = proj_ortho;
        cm.to_ortho = to_ortho;
        cm.from_ortho = from_ortho;

        let gram: Vec<Vec<f64>> = g
            .coroot_gram()
            .iter()
            .map(|row| row.iter().map(rational::to_f64).collect())
            .collect();
        cm.coroot_gram_inv = DMatrix::from_fn(rank, rank, |i, j| gram[i][j])
            .try_inverse()
            .ok_or_else(|| Error::InvalidRootSystem("singular coroot Gram matrix".into()))?;
        Ok(cm)
    }

    /// Chevalley coordinates of compact basis element `a`.
    fn unit_complex(&self, a: usize) -> Complex {
        let (r, n) = (self.rank, self.roots);
        let dim = r + 2 * n;
        let mut re = vec![0.0; dim];
        let mut im = vec![0.0; dim];
        if a < r {
            im[a] = 1.0;
        } else if a < r + n {
            re[a] = 1.0;
            re[a + n] = -1.0;
        } else {
            im[a - n] = 1.0;
            im[a] = 1.0;
        }
        Complex { re, im }
    }

    /// A Chevalley basis index lying in the same simple factor as compact element `a`.
    fn chevalley_anchor(&self, a: usize) -> usize {
        if a < self.rank + self.roots {
            a
        } else {
            a - self.roots
        }
    }

    fn compact_coords(&self, z: &Complex) -> Vec<f64> {
        let (r, n) = (self.rank, self.roots);
        let mut out = Vec::with_capacity(r + 2 * n);
        out.extend_from_slice(&z.im[..r]);
        out.extend_from_slice(&z.re[r..r + n]);
        out.extend_from_slice(&z.im[r..r + n]);
        out
    }

    fn residual(&self, z: &Complex, coords: &[f64]) -> f64 {
        let back = coords.iter().enumerate().fold(
            Complex { re: vec![0.0; coords.len()], im: vec![0.0; coords.len()] },
            |mut acc, (a, &c)| {
                let e = self.unit_complex(a);
                for k in 0..coords.len() {
                    acc.re[k] += c * e.re[k];
                    acc.im[k] += c * e.im[k];
                }
                acc
            },
        );
        back.re
            .iter()
            .zip(&z.re)
            .chain(back.im.iter().zip(&z.im))
            .map(|(p, q)| (p - q) * (p - q))
            .sum::<f64>()
            .sqrt()
    }

    /// For a real Chevalley vector `X`, compact coordinates of
    /// `(X + θX)/2` and `i(X − θX)/2`, where `θX = −Xᵀ`.
    fn split_real(&self, v: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let (r, n) = (self.rank, self.roots);
        let mut skew = vec![0.0; r + 2 * n];
        let mut isym = vec![0.0; r + 2 * n];
        isym[..r].copy_from_slice(&v[..r]);
        for k in 0..n {
            let x = v[r + k];
            let y = v[r + n + k];
            skew[r + k] = (x - y) / 2.0;
            isym[r + n + k] = (x + y) / 2.0;
        }
        (skew, isym)
    }

    pub fn spec(&self) -> &EmbeddingSpec {
        &self.spec
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        self.spec.g()
    }

    pub fn dimension(&self) -> usize {
        self.rank + 2 * self.roots
    }

    pub fn label(&self, a: usize) -> String {
        let (r, n) = (self.rank, self.roots);
        if a < r {
            format!("u{}", a + 1)
        } else if a < r + n {
            format!("a_{}", a - r + 1)
        } else {
            format!("b_{}", a - r - n + 1)
        }
    }

    /// `ad` of the compact basis elements, in compact coordinates.
    pub fn adjoint_basis(&self) -> &[Mat] {
        &self.adjoint_basis
    }

    pub fn metric(&self) -> &Mat {
        &self.metric
    }

    /// Metric-orthogonal projector onto `l`.
    pub fn h_projector(&self) -> &Mat {
        &self.h_projector
    }

    pub fn h_rank(&self) -> usize {
        self.proj_ortho.trace().round() as usize
    }

    /// The element of the compact Cartan dual to a weight (fundamental coordinates).
    pub fn chamber_map(&self, lambda: &[f64]) -> Vec<f64> {
        let c = &self.coroot_gram_inv * DVector::from_column_slice(lambda);
        let mut out = vec![0.0; self.dimension()];
        out[..self.rank].copy_from_slice(c.as_slice());
        out
    }

    pub fn inner(&self, x: &[f64], y: &[f64]) -> f64 {
        (DVector::from_column_slice(x).transpose() * &self.metric * DVector::from_column_slice(y))[(0, 0)]
    }

    pub fn norm(&self, x: &[f64]) -> f64 {
        self.inner(x, x).max(0.0).sqrt()
    }

    pub fn bracket(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let ad = x
            .iter()
            .enumerate()
            .fold(Mat::zeros(self.dimension(), self.dimension()), |acc, (a, &c)| acc + &self.adjoint_basis[a] * c);
        (ad * DVector::from_column_slice(y)).as_slice().to_vec()
    }

    pub fn project(&self, x: &[f64]) -> Vec<f64> {
        (&self.h_projector * DVector::from_column_slice(x)).as_slice().to_vec()
    }

    /// `Ad_{exp z} x`.
    pub fn conjugate(&self, z: &[f64], x: &[f64]) -> Vec<f64> {
        let zo = self.to_ortho(z);
        let xo = self.to_ortho(x);
        let moved = self.ad_ortho_of(&zo).exp() * xo;
        self.from_ortho(&moved)
    }

    pub(crate) fn to_ortho(&self, x: &[f64]) -> DVector<f64> {
        &self.to_ortho * DVector::from_column_slice(x)
    }

    pub(crate) fn from_ortho(&self, y: &DVector<f64>) -> Vec<f64> {
        (&self.from_ortho * y).as_slice().to_vec()
    }

    pub(crate) fn ad_ortho_of(&self, y: &DVector<f64>) -> Mat {
        let dim = self.dimension();
        y.iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .fold(Mat::zeros(dim, dim), |acc, (a, &c)| acc + &self.ad_ortho[a] * c)
    }

    pub(crate) fn bracket_ortho(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        self.ad_ortho_of(x) * y
    }

    pub(crate) fn project_ortho(&self, y: &DVector<f64>) -> DVector<f64> {
        &self.proj_ortho * y
    }
}

/// Per-factor scale making the metric on the compact Cartan equal to the
/// normalized invariant form: `c_f · tr(H_j²) = (α_j^∨, α_j^∨) = 4 / (α_j, α_j)`.
fn factor_scales(model: &MatrixModel, g: &RootSystem) -> Vec<f64> {
    let norms = g.simple_root_norms();
    (0..g.factors().len())
        .map(|f| {
            let j = (0..g.rank()).find(|&j| g.factor_of(j) == f).expect("factor has a simple root");
            4.0 / rational::to_f64(&norms[j]) / model.trace_form(j, j)
        })
        .collect()
}
