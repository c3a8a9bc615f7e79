use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lie_algebra::{distance_to_span, orthonormal_span, MatrixModel};
use crate::liecore::{RootSystem, Weight};
use crate::rational::{self, Q, QMatrix};

pub const SCHEMA_VERSION: u32 = 1;

const CLOSURE_TOL: f64 = 1e-9;

/// An element of `g` as `basis label → coefficient`, labels `h1..`, `e_k`, `f_k`.
pub type GeneratorElement = BTreeMap<String, f64>;

/// A subalgebra inclusion `h ⊂ g`.
///
/// `restriction` is the `rank(h) × rank(g)` matrix taking fundamental
/// coordinates of a `g`-weight to fundamental coordinates of its
/// restriction to `h`. When present, the first `rank(h)` compact generators
/// are the images of the simple coroots of `h`, so their Cartan
/// coefficients are exactly the rows of `restriction`.
#[derive(Clone, Debug)]
pub struct EmbeddingSpec {
    name: String,
    g: Arc<RootSystem>,
    h: Arc<RootSystem>,
    restriction: QMatrix,
    restriction_int: Vec<Vec<i64>>,
    compact_generators: Option<Vec<GeneratorElement>>,
}

impl EmbeddingSpec {
    pub fn new(
        name: impl Into<String>,
        g: Arc<RootSystem>,
        h: Arc<RootSystem>,
        restriction: QMatrix,
        compact_generators: Option<Vec<GeneratorElement>>,
    ) -> Result<Self> {
        let name = name.into();
        if restriction.len() != h.rank() || restriction.iter().any(|row| row.len() != g.rank()) {
            return Err(Error::Malformed(format!(
                "restriction matrix must be {} x {}",
                h.rank(),
                g.rank()
            )));
        }
        let mut restriction_int = vec![vec![0i64; g.rank()]; h.rank()];
        for j in 0..g.rank() {
            for i in 0..h.rank() {
                match rational::to_i64(&restriction[i][j]) {
                    Some(v) => restriction_int[i][j] = v,
                    None => {
                        let image: Vec<String> = restriction.iter().map(|row| rational::format_q(&row[j])).collect();
                        return Err(Error::NonIntegralRestriction {
                            index: j + 1,
                            image: format!("({})", image.join(",")),
                        });
                    }
                }
            }
        }
        let spec = EmbeddingSpec { name, g, h, restriction, restriction_int, compact_generators };
        if let Some(gens) = &spec.compact_generators {
            spec.validate_generators(gens)?;
        }
        Ok(spec)
    }

    fn validate_generators(&self, gens: &[GeneratorElement]) -> Result<()> {
        let model = MatrixModel::new(&self.g)?;
        let hr = self.h.rank();
        if gens.len() < hr {
            return Err(Error::GeneratorMismatch(format!(
                "expected at least {hr} generators, got {}",
                gens.len()
            )));
        }
        let vectors = gens.iter().map(|e| model.coords_from_labels(e)).collect::<Result<Vec<_>>>()?;
        for (i, v) in vectors.iter().take(hr).enumerate() {
            for (k, &c) in v.iter().enumerate() {
                let expected = if k < self.g.rank() { rational::to_f64(&self.restriction[i][k]) } else { 0.0 };
                if (c - expected).abs() > CLOSURE_TOL {
                    return Err(Error::GeneratorMismatch(format!(
                        "Cartan generator {} has {} = {c}, restriction matrix requires {expected}",
                        i + 1,
                        model.label(k)
                    )));
                }
            }
        }
        let span = orthonormal_span(&vectors, CLOSURE_TOL);
        if span.len() != self.h.dimension() {
            return Err(Error::GeneratorMismatch(format!(
                "generators span a {}-dimensional space, h has dimension {}",
                span.len(),
                self.h.dimension()
            )));
        }
        for (a, x) in vectors.iter().enumerate() {
            for (b, y) in vectors.iter().enumerate().skip(a + 1) {
                let z = model.bracket(x, y);
                let scale = z.iter().map(|t| t * t).sum::<f64>().sqrt().max(1.0);
                let residual = distance_to_span(&span, &z) / scale;
                if residual > CLOSURE_TOL {
                    return Err(Error::BracketClosure {
                        left: format!("generator {}", a + 1),
                        right: format!("generator {}", b + 1),
                        residual,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn g(&self) -> &Arc<RootSystem> {
        &self.g
    }

    pub fn h(&self) -> &Arc<RootSystem> {
        &self.h
    }

    pub fn restriction(&self) -> &QMatrix {
        &self.restriction
    }

    pub fn restriction_int(&self) -> &[Vec<i64>] {
        &self.restriction_int
    }

    pub fn compact_generators(&self) -> Option<&[GeneratorElement]> {
        self.compact_generators.as_deref()
    }

    pub fn restrict_int(&self, w: &[i64]) -> Vec<i64> {
        self.restriction_int
            .iter()
            .map(|row| row.iter().zip(w).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Image of a `g`-weight under restriction to the Cartan of `h`.
    pub fn restrict_weight(&self, w: &Weight) -> Result<Weight> {
        w.check_system(&self.g)?;
        let coords = rational::mat_vec(&self.restriction, w.coords());
        Weight::new(&self.h, coords)
    }

    pub fn to_document(&self) -> EmbeddingDocument {
        EmbeddingDocument {
            schema: SCHEMA_VERSION,
            name: self.name.clone(),
            g: self.g.descriptor(),
            h: self.h.descriptor(),
            restriction: self
                .restriction
                .iter()
                .map(|row| row.iter().cloned().map(RationalEntry).collect())
                .collect(),
            compact_generators: self.compact_generators.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("document serializes")
    }

    pub fn from_document(doc: EmbeddingDocument) -> Result<Self> {
        if doc.schema != SCHEMA_VERSION {
            return Err(Error::Malformed(format!(
                "unsupported schema version {} (expected {SCHEMA_VERSION})",
                doc.schema
            )));
        }
        let g = RootSystem::parse(&doc.g)?;
        let h = RootSystem::parse(&doc.h)?;
        let restriction = doc.restriction.into_iter().map(|row| row.into_iter().map(|e| e.0).collect()).collect();
        EmbeddingSpec::new(doc.name, g, h, restriction, doc.compact_generators)
    }
}

/// Reads an embedding-spec document (JSON) and validates it.
pub fn load_embedding(text: &str) -> Result<EmbeddingSpec> {
    let doc: EmbeddingDocument = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    EmbeddingSpec::from_document(doc)
}

impl fmt::Display for EmbeddingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} in {})", self.name, self.h, self.g)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingDocument {
    pub schema: u32,
    pub name: String,
    pub g: String,
    pub h: String,
    pub restriction: Vec<Vec<RationalEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compact_generators: Option<Vec<GeneratorElement>>,
}

/// A rational matrix entry: an integer, or a string such as `"1/2"`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalEntry(pub Q);

impl Serialize for RationalEntry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match rational::to_i64(&self.0) {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&rational::format_q(&self.0)),
        }
    }
}

impl<'de> Deserialize<'de> for RationalEntry {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(RationalEntry(rational::q(v))),
            Raw::Str(s) => rational::parse_q(&s)
                .map(RationalEntry)
                .ok_or_else(|| serde::de::Error::custom(format!("bad rational `{s}`"))),
        }
    }
}
