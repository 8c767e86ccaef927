//! Orthogonal and independent vector representations of graphs: checking,
//! locality, and exact solvers for the orthogonality dimension, its local
//! variant, and minrank over prime fields.

mod search;
mod solvers;

use serde::{Deserialize, Serialize};

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::field::{format_rational, parse_rational, Field, FieldSpec, PrimeField, Rationals};
use crate::graph::Graph;
use crate::linalg::{rank_of, Basis};

pub use search::{
    anisotropic_points, find_independent_rep, find_local_rep, find_orthogonal_rep, for_each_orthogonal_rep,
    projective_count, projective_points, SearchLimits,
};
pub use solvers::{
    local_od_lower_bounds, local_orthogonality_dimension, minrank, minrank_with, orthogonality_dimension,
    LocalOdOptions, LocalOdResult, MinrankResult, OdOptions,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RepKind {
    Orthogonal,
    Independent,
}

/// One vector per vertex, all in `F^dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorRepresentation<F: Field> {
    pub field: F,
    pub dim: usize,
    pub vectors: Vec<Vec<F::Elem>>,
    pub kind: RepKind,
}

/// The first failed condition of a representation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "violation")]
pub enum Violation {
    SelfOrthogonal { vertex: usize },
    NotOrthogonal { u: usize, v: usize },
    InNeighborSpan { vertex: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::SelfOrthogonal { vertex } => write!(f, "vector of vertex {vertex} is self-orthogonal"),
            Violation::NotOrthogonal { u, v } => write!(f, "adjacent vertices {u} and {v} are not orthogonal"),
            Violation::InNeighborSpan { vertex } => {
                write!(f, "vector of vertex {vertex} lies in the span of its neighbours")
            }
        }
    }
}

impl<F: Field> VectorRepresentation<F> {
    pub fn new(field: F, dim: usize, vectors: Vec<Vec<F::Elem>>, kind: RepKind) -> Result<Self> {
        if let Some(bad) = vectors.iter().find(|v| v.len() != dim) {
            return Err(Error::LengthMismatch(bad.len(), dim));
        }
        Ok(VectorRepresentation {
            field,
            dim,
            vectors,
            kind,
        })
    }

    fn check_shape(&self, g: &Graph) -> Result<()> {
        if self.vectors.len() != g.n() {
            return Err(Error::InvalidRepresentation(format!(
                "{} vectors for {} vertices",
                self.vectors.len(),
                g.n()
            )));
        }
        if let Some(v) = self.vectors.iter().position(|x| x.len() != self.dim) {
            return Err(Error::InvalidRepresentation(format!(
                "vector of vertex {v} has length {} instead of {}",
                self.vectors[v].len(),
                self.dim
            )));
        }
        Ok(())
    }

    /// Checks the condition matching `self.kind`.
    pub fn verify(&self, g: &Graph) -> Result<Option<Violation>> {
        match self.kind {
            RepKind::Orthogonal => verify_orthogonal(g, self),
            RepKind::Independent => verify_independent(g, self),
        }
    }

    pub fn as_kind(&self, kind: RepKind) -> Self {
        VectorRepresentation { kind, ..self.clone() }
    }

    /// Multiplies the vector of `v` by `s`.
    pub fn scale(&mut self, v: usize, s: &F::Elem) {
        let f = self.field.clone();
        for x in self.vectors[v].iter_mut() {
            *x = f.mul(x, s);
        }
    }
}

/// Nonzero self inner products, zero inner products across edges.
pub fn verify_orthogonal<F: Field>(g: &Graph, rep: &VectorRepresentation<F>) -> Result<Option<Violation>> {
    rep.check_shape(g)?;
    let f = &rep.field;
    let ip = |a: usize, b: usize| crate::linalg::dot(f, &rep.vectors[a], &rep.vectors[b]);
    for v in 0..g.n() {
        if f.is_zero(&ip(v, v)) {
            return Ok(Some(Violation::SelfOrthogonal { vertex: v }));
        }
    }
    for (u, v) in g.edges() {
        if !f.is_zero(&ip(u, v)) {
            return Ok(Some(Violation::NotOrthogonal { u, v }));
        }
    }
    Ok(None)
}

/// Every vector lies outside the span of its neighbours' vectors.
pub fn verify_independent<F: Field>(g: &Graph, rep: &VectorRepresentation<F>) -> Result<Option<Violation>> {
    rep.check_shape(g)?;
    for v in 0..g.n() {
        let mut b = Basis::new(rep.field.clone(), rep.dim);
        for w in g.neighbors(v) {
            b.extend(&rep.vectors[w])?;
        }
        if b.contains(&rep.vectors[v])? {
            return Ok(Some(Violation::InNeighborSpan { vertex: v }));
        }
    }
    Ok(None)
}

/// Maximum rank of the vectors on a closed neighbourhood.
pub fn locality_of_rep<F: Field>(g: &Graph, rep: &VectorRepresentation<F>) -> Result<usize> {
    if let Some(v) = rep.verify(g)? {
        return Err(Error::InvalidRepresentation(v.to_string()));
    }
    Ok((0..g.n())
        .map(|v| {
            let vecs: Vec<Vec<F::Elem>> = g
                .closed_neighborhood(v)
                .into_iter()
                .map(|u| rep.vectors[u].clone())
                .collect();
            rank_of(&rep.field, &vecs)
        })
        .max()
        .unwrap_or(0))
}

/// Standard basis vector `e_{c(v)}` for every vertex: an orthogonal
/// representation in dimension `m` whose locality equals the coloring's.
pub fn rep_from_coloring<F: Field>(field: F, c: &Coloring) -> VectorRepresentation<F> {
    let m = c.num_colors();
    let vectors = c
        .colors()
        .iter()
        .map(|&col| {
            let mut x = vec![field.zero(); m];
            x[col] = field.one();
            x
        })
        .collect();
    VectorRepresentation {
        field,
        dim: m,
        vectors,
        kind: RepKind::Orthogonal,
    }
}

/// A representation over GF(p) or over the rationals.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyRep {
    Prime(VectorRepresentation<PrimeField>),
    Rational(VectorRepresentation<Rationals>),
}

impl AnyRep {
    pub fn kind(&self) -> RepKind {
        match self {
            AnyRep::Prime(r) => r.kind,
            AnyRep::Rational(r) => r.kind,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            AnyRep::Prime(r) => r.dim,
            AnyRep::Rational(r) => r.dim,
        }
    }

    pub fn verify(&self, g: &Graph) -> Result<Option<Violation>> {
        match self {
            AnyRep::Prime(r) => r.verify(g),
            AnyRep::Rational(r) => r.verify(g),
        }
    }

    pub fn locality(&self, g: &Graph) -> Result<usize> {
        match self {
            AnyRep::Prime(r) => locality_of_rep(g, r),
            AnyRep::Rational(r) => locality_of_rep(g, r),
        }
    }

    pub fn to_json(&self) -> RepJson {
        match self {
            AnyRep::Prime(r) => RepJson {
                field: r.field.spec(),
                dim: r.dim,
                kind: r.kind,
                vectors: r
                    .vectors
                    .iter()
                    .map(|v| v.iter().map(|&x| Entry::Int(x as i64)).collect())
                    .collect(),
            },
            AnyRep::Rational(r) => RepJson {
                field: FieldSpec::Rationals,
                dim: r.dim,
                kind: r.kind,
                vectors: r
                    .vectors
                    .iter()
                    .map(|v| v.iter().map(|x| Entry::Text(format_rational(x))).collect())
                    .collect(),
            },
        }
    }

    pub fn from_json(j: &RepJson) -> Result<Self> {
        match j.field {
            FieldSpec::Prime(p) => {
                let f = PrimeField::new(p as u32)?;
                let vectors = j
                    .vectors
                    .iter()
                    .map(|v| {
                        v.iter()
                            .map(|e| match e {
                                Entry::Int(x) if (0..p as i64).contains(x) => Ok(*x as u8),
                                other => Err(Error::InvalidRepresentation(format!(
                                    "{other:?} is not a residue modulo {p}"
                                ))),
                            })
                            .collect::<Result<Vec<u8>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(AnyRep::Prime(VectorRepresentation::new(f, j.dim, vectors, j.kind)?))
            }
            FieldSpec::Rationals => {
                let vectors = j
                    .vectors
                    .iter()
                    .map(|v| {
                        v.iter()
                            .map(|e| match e {
                                Entry::Int(x) => Ok(Rationals.from_int(*x)),
                                Entry::Text(s) => parse_rational(s),
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(AnyRep::Rational(VectorRepresentation::new(
                    Rationals, j.dim, vectors, j.kind,
                )?))
            }
        }
    }
}

/// JSON form: residues as integers, rationals as `"n/d"` strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepJson {
    pub field: FieldSpec,
    pub dim: usize,
    pub kind: RepKind,
    pub vectors: Vec<Vec<Entry>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}
