use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num::integer::{gcd, lcm};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liecore::RootSystem;
use crate::rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ray {
    pub base: Vec<i64>,
    pub direction: Vec<i64>,
}

/// A support made of finitely many weights plus shifted rays
/// `{base + n·direction : n ≥ 0}`.
#[derive(Clone, Debug)]
pub struct SupportSpec {
    pub ambient: String,
    pub system: Arc<RootSystem>,
    pub finite: Vec<Vec<i64>>,
    pub rays: Vec<Ray>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportDocument {
    #[serde(default)]
    pub ambient: String,
    pub system: String,
    #[serde(default)]
    pub finite: Vec<Vec<i64>>,
    #[serde(default)]
    pub rays: Vec<Ray>,
}

/// An asymptotic direction: primitive integral vector and its unit rescaling.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Direction {
    pub primitive: Vec<i64>,
    pub unit: Vec<f64>,
}

pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |acc, &x| gcd(acc, x));
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

impl SupportSpec {
    pub fn new(ambient: impl Into<String>, system: Arc<RootSystem>, finite: Vec<Vec<i64>>, rays: Vec<Ray>) -> Result<Self> {
        for w in &finite {
            system.check_dominant_integral(w)?;
        }
        for r in &rays {
            system.check_dominant_integral(&r.base)?;
            system.check_dominant_integral(&r.direction)?;
            if r.direction.iter().all(|&x| x == 0) {
                return Err(Error::Malformed("ray direction must be nonzero".into()));
            }
        }
        Ok(SupportSpec { ambient: ambient.into(), system, finite, rays })
    }

    pub fn from_document(doc: SupportDocument) -> Result<Self> {
        let system = RootSystem::parse(&doc.system)?;
        SupportSpec::new(doc.ambient, system, doc.finite, doc.rays)
    }

    pub fn to_document(&self) -> SupportDocument {
        SupportDocument {
            ambient: self.ambient.clone(),
            system: self.system.descriptor(),
            finite: self.finite.clone(),
            rays: self.rays.clone(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.finite.is_empty() && self.rays.is_empty()
    }

    /// Same support with every ray direction multiplied by `k`.
    pub fn with_scaled_directions(&self, k: i64) -> Self {
        let rays = self
            .rays
            .iter()
            .map(|r| Ray { base: r.base.clone(), direction: r.direction.iter().map(|x| x * k).collect() })
            .collect();
        SupportSpec { rays, ..self.clone() }
    }
}

pub fn load_support(text: &str) -> Result<SupportSpec> {
    let doc: SupportDocument = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    SupportSpec::from_document(doc)
}

/// Distinct ray directions, in order of first appearance.
pub fn asymptotic_support(s: &SupportSpec) -> Vec<Direction> {
    let mut out: Vec<Direction> = Vec::new();
    for r in &s.rays {
        let p = primitive(&r.direction);
        if out.iter().any(|d| d.primitive == p) {
            continue;
        }
        let f: Vec<f64> = p.iter().map(|&x| x as f64).collect();
        let n = s.system.norm_f64(&f);
        out.push(Direction { unit: f.iter().map(|x| x / n).collect(), primitive: p });
    }
    out
}

/// The two suprema making up the vagrancy.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vagrancy {
    /// `sup_{λ ∈ supp} δ(λ, asupp)`.
    pub support_to_asymptotic: f64,
    /// `sup_{x ∈ asupp} δ(x, supp)`.
    pub asymptotic_to_support: f64,
}

impl Vagrancy {
    pub fn total(&self) -> f64 {
        self.support_to_asymptotic + self.asymptotic_to_support
    }
}

/// Euclidean picture of a support: weights mapped isometrically to `R^r`.
struct Geometry {
    finite: Vec<DVector<f64>>,
    rays: Vec<(DVector<f64>, DVector<f64>, usize, i64)>,
    /// Unit vector and length of the primitive direction, per class.
    classes: Vec<(DVector<f64>, f64)>,
}

impl Geometry {
    fn new(s: &SupportSpec) -> Self {
        let r = s.system.rank();
        let form = DMatrix::from_fn(r, r, |i, j| rational::to_f64(&s.system.form()[i][j]));
        let lt = form.cholesky().expect("invariant form is positive definite").l().transpose();
        let embed = |v: &[i64]| &lt * DVector::from_iterator(r, v.iter().map(|&x| x as f64));
        let dirs = asymptotic_support(s);
        let classes = dirs
            .iter()
            .map(|d| {
                let v = embed(&d.primitive);
                let n = v.norm();
                (v / n, n)
            })
            .collect();
        let rays = s
            .rays
            .iter()
            .map(|ray| {
                let p = primitive(&ray.direction);
                let class = dirs.iter().position(|d| d.primitive == p).expect("listed direction");
                let k = ray.direction.iter().zip(&p).find(|(_, &q)| q != 0).map(|(&x, &q)| x / q).unwrap();
                (embed(&ray.base), embed(&ray.direction), class, k)
            })
            .collect();
        Geometry { finite: s.finite.iter().map(|w| embed(w)).collect(), rays, classes }
    }

    fn distance_to_asymptotic(&self, p: &DVector<f64>) -> f64 {
        self.classes
            .iter()
            .map(|(u, _)| {
                let x = p.dot(u);
                if x > 0.0 {
                    (p.norm_squared() - x * x).max(0.0).sqrt()
                } else {
                    p.norm()
                }
            })
            .fold(p.norm(), f64::min)
    }

    /// `sup_{t ≥ 0} δ(t·u, supp)` for direction class `c`.
    fn sup_along(&self, c: usize) -> f64 {
        let (u, prim_len) = &self.classes[c];
        let same: Vec<_> = self.rays.iter().filter(|r| r.2 == c).collect();
        let mut t0 = 0.0f64;
        let mut reach = f64::INFINITY;
        let mut period_mult = 1i64;
        for (b, _, _, k) in &same {
            let s0 = b.dot(u);
            let perp2 = (b.norm_squared() - s0 * s0).max(0.0);
            let step = *k as f64 * prim_len;
            t0 = t0.max(s0);
            reach = reach.min((perp2 + step * step / 4.0).sqrt());
            period_mult = lcm(period_mult, *k);
        }
        let mut t1 = t0 + reach;
        for p in &self.finite {
            t1 = t1.max(reach + p.norm());
        }
        for (b, d, class, _) in &self.rays {
            if *class == c {
                continue;
            }
            let cos = d.dot(u) / d.norm();
            let sin = (1.0 - cos * cos).max(0.0).sqrt();
            t1 = t1.max((reach + b.norm()) / sin);
        }
        let window = t1 + period_mult as f64 * prim_len;
        let nearest_bound = window + same.iter().map(|r| r.0.norm()).fold(f64::INFINITY, f64::min);
        let cutoff = window + nearest_bound;

        let mut points: Vec<&DVector<f64>> = self.finite.iter().collect();
        let mut owned = Vec::new();
        for (b, d, _, _) in &self.rays {
            let mut n = 0.0;
            loop {
                let q = b + d * n;
                if q.norm() > cutoff {
                    break;
                }
                owned.push(q);
                n += 1.0;
            }
        }
        points.extend(owned.iter());
        let lines: Vec<(f64, f64)> = points.iter().map(|q| (q.norm_squared(), -2.0 * q.dot(u))).collect();
        envelope_sup(&lines, window).sqrt()
    }
}

/// `max_{0 ≤ t ≤ w} t² + min_i (a_i + m_i t)`. On each piece of the lower
/// envelope the function is a convex quadratic, so the maximum sits at a
/// breakpoint or an endpoint.
fn envelope_sup(lines: &[(f64, f64)], w: f64) -> f64 {
    let value = |t: f64| t * t + lines.iter().map(|(a, m)| a + m * t).fold(f64::INFINITY, f64::min);
    let mut best = value(0.0).max(value(w));
    let mut current = (0..lines.len())
        .min_by(|&i, &j| lines[i].0.total_cmp(&lines[j].0).then(lines[i].1.total_cmp(&lines[j].1)))
        .expect("nonempty");
    let mut t = 0.0;
    loop {
        let (ac, mc) = lines[current];
        let next = lines
            .iter()
            .enumerate()
            .filter(|(_, (_, m))| *m < mc)
            .map(|(i, (a, m))| (i, (a - ac) / (mc - m), *m))
            .filter(|(_, s, _)| *s >= t)
            .min_by(|x, y| x.1.total_cmp(&y.1).then(x.2.total_cmp(&y.2)));
        match next {
            Some((i, s, _)) if s < w => {
                best = best.max(value(s));
                current = i;
                t = s;
            }
            _ => break,
        }
    }
    best.max(0.0)
}

/// Both terms of the vagrancy of a finite-plus-rays support, in the
/// invariant metric. The empty support has vagrancy 0.
pub fn vagrancy(s: &SupportSpec) -> Vagrancy {
    if s.is_empty() {
        return Vagrancy { support_to_asymptotic: 0.0, asymptotic_to_support: 0.0 };
    }
    let geo = Geometry::new(s);
    let mut first = geo.finite.iter().map(|p| geo.distance_to_asymptotic(p)).fold(0.0, f64::max);
    for (b, _, c, _) in &geo.rays {
        let u = &geo.classes[*c].0;
        let x = b.dot(u);
        first = first.max((b.norm_squared() - x * x).max(0.0).sqrt());
    }
    let second = if geo.classes.is_empty() {
        geo.finite.iter().map(|p| p.norm()).fold(f64::INFINITY, f64::min)
    } else {
        (0..geo.classes.len()).map(|c| geo.sup_along(c)).fold(0.0, f64::max)
    };
    Vagrancy { support_to_asymptotic: first, asymptotic_to_support: second }
}
