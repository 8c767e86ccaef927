use serde::{Deserialize, Serialize};

use super::code::{build_code, representing_matrix, IndexCode};
use crate::coloring::{local_chromatic_number, Coloring};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::graph::Graph;
use crate::linalg::{ceil_log, random_mat, rank_of, schulman_vectors, vandermonde};
use crate::ortho::{
    local_orthogonality_dimension, locality_of_rep, minrank, rep_from_coloring, verify_independent, LocalOdOptions,
    RepKind, SearchLimits, VectorRepresentation,
};

/// Code for side-information graph `g` from a coloring `c` of its
/// complement and one vector per color: vertex `v` gets `u_{c(v)}`.
///
/// On every closed neighbourhood of the complement the vectors of the
/// colors present must be linearly independent; this is checked.
pub fn code_from_local_coloring(g: &Graph, c: &Coloring, vectors: &[Vec<u8>], f: &PrimeField) -> Result<IndexCode> {
    let h = g.complement();
    c.check_proper(&h)?;
    if vectors.len() < c.num_colors() {
        return Err(Error::Precondition(format!(
            "{} vectors for {} colors",
            vectors.len(),
            c.num_colors()
        )));
    }
    let t = vectors.first().map_or(0, |v| v.len());
    for v in 0..h.n() {
        let cols = c.closed_neighborhood_colors(&h, v);
        let vs: Vec<Vec<u8>> = cols.iter().map(|&k| vectors[k].clone()).collect();
        if rank_of(f, &vs) < vs.len() {
            return Err(Error::Precondition(format!(
                "color vectors on the closed neighbourhood of vertex {v} are dependent"
            )));
        }
    }
    let rep = VectorRepresentation::new(
        *f,
        t,
        c.colors().iter().map(|&k| vectors[k].clone()).collect(),
        RepKind::Independent,
    )?;
    let m = representing_matrix(g, &rep)?;
    build_code(g, &m)
}

/// Vector family used by [`local_coloring_code`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VectorFamily {
    Vandermonde,
    Schulman,
}

#[derive(Clone, Debug)]
pub struct LocalColoringCode {
    pub code: IndexCode,
    pub family: VectorFamily,
    pub locality: usize,
    /// Ambient dimension of the color vectors.
    pub dim: usize,
}

/// Code from an optimal local coloring of the complement. Vandermonde
/// vectors of length `χ_l` when the field has at least as many elements as
/// colors, otherwise greedy vectors of length `χ_l + ⌈log_q h⌉` over the
/// `h` distinct closed-neighbourhood color sets.
pub fn local_coloring_code(g: &Graph, f: &PrimeField) -> Result<LocalColoringCode> {
    let h = g.complement();
    let r = local_chromatic_number(&h)?;
    let m = r.witness.num_colors();
    let ell = r.value;
    if f.order() >= m {
        let vs = vandermonde(m, ell, f)?;
        let code = code_from_local_coloring(g, &r.witness, &vs, f)?;
        return Ok(LocalColoringCode {
            code,
            family: VectorFamily::Vandermonde,
            locality: ell,
            dim: ell,
        });
    }
    let mut sets: Vec<Vec<usize>> = (0..h.n())
        .map(|v| r.witness.closed_neighborhood_colors(&h, v))
        .collect();
    sets.sort();
    sets.dedup();
    let (t, vs) = schulman_vectors(&sets, m, ell, f)?;
    let code = code_from_local_coloring(g, &r.witness, &vs, f)?;
    Ok(LocalColoringCode {
        code,
        family: VectorFamily::Schulman,
        locality: ell,
        dim: t,
    })
}

pub const COMPRESSION_RETRIES: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct CompressionResult {
    pub attempts: usize,
    pub rep: VectorRepresentation<PrimeField>,
    pub locality: usize,
    pub m: usize,
}

/// Target dimension `ℓ + ⌈log_q n⌉` for an orthogonal representation of
/// locality `ℓ` on `n` vertices.
pub fn compression_dim(f: &PrimeField, locality: usize, n: usize) -> usize {
    locality + ceil_log(f.order(), n)
}

/// One draw of a uniform `m × t` matrix `A`; returns `v ↦ A u_v` when it is
/// an independent representation of `g`.
pub fn try_compress(
    g: &Graph,
    rep: &VectorRepresentation<PrimeField>,
    m: usize,
    seed: u64,
) -> Result<Option<VectorRepresentation<PrimeField>>> {
    let a = random_mat(m, rep.dim, &rep.field.spec(), seed)?;
    let vectors = rep.vectors.iter().map(|u| a.mul_vec(u)).collect::<Result<Vec<_>>>()?;
    let out = VectorRepresentation::new(rep.field, m, vectors, RepKind::Independent)?;
    Ok(if verify_independent(g, &out)?.is_none() {
        Some(out)
    } else {
        None
    })
}

/// Random projection of an orthogonal representation of `g` to an
/// independent one of dimension `locality + ⌈log_q n⌉`. Attempt `k`
/// (0-based) draws its matrix from `seed + k`.
pub fn compress_representation(
    g: &Graph,
    rep: &VectorRepresentation<PrimeField>,
    seed: u64,
) -> Result<CompressionResult> {
    compress_with_retries(g, rep, seed, COMPRESSION_RETRIES)
}

pub fn compress_with_retries(
    g: &Graph,
    rep: &VectorRepresentation<PrimeField>,
    seed: u64,
    retries: usize,
) -> Result<CompressionResult> {
    let ortho = rep.as_kind(RepKind::Orthogonal);
    let locality = locality_of_rep(g, &ortho)?;
    let m = compression_dim(&rep.field, locality, g.n());
    for k in 0..retries {
        if let Some(out) = try_compress(g, rep, m, seed.wrapping_add(k as u64))? {
            return Ok(CompressionResult {
                attempts: k + 1,
                rep: out,
                locality,
                m,
            });
        }
    }
    Err(Error::RetryLimit(retries))
}

/// How an index code is obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Minrank,
    Local,
    Compress,
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "minrank" => Ok(Method::Minrank),
            "local" => Ok(Method::Local),
            "compress" => Ok(Method::Compress),
            _ => Err(Error::Precondition(format!("unknown method {s:?}"))),
        }
    }
}

/// A code plus the facts about its construction.
#[derive(Clone, Debug)]
pub struct BuiltCode {
    pub method: Method,
    pub code: IndexCode,
    pub family: Option<VectorFamily>,
    pub locality: Option<usize>,
    pub attempts: Option<usize>,
    /// Dimension of the independent representation the code came from.
    pub rep_dim: usize,
}

/// Node budget per decision when searching for the compression source.
pub const COMPRESS_SOURCE_NODES: usize = 200_000;

/// Builds a code for side-information graph `g`. The compression source is
/// the best orthogonal representation of the complement found by the
/// local orthogonality dimension solver within its node budget (at most 12
/// vertices), else the one induced by an optimal local coloring.
pub fn build_index_code(g: &Graph, f: &PrimeField, method: Method, seed: u64) -> Result<BuiltCode> {
    match method {
        Method::Minrank => {
            let r = minrank(g, f)?;
            let m = representing_matrix(g, &r.witness)?;
            Ok(BuiltCode {
                method,
                code: build_code(g, &m)?,
                family: None,
                locality: None,
                attempts: None,
                rep_dim: r.value,
            })
        }
        Method::Local => {
            let r = local_coloring_code(g, f)?;
            Ok(BuiltCode {
                method,
                code: r.code,
                family: Some(r.family),
                locality: Some(r.locality),
                attempts: None,
                rep_dim: r.dim,
            })
        }
        Method::Compress => {
            let h = g.complement();
            let src = if h.n() <= LocalOdOptions::default().max_vertices {
                let opts = LocalOdOptions {
                    limits: SearchLimits {
                        max_nodes: Some(COMPRESS_SOURCE_NODES),
                        ..Default::default()
                    },
                    ..Default::default()
                };
                local_orthogonality_dimension(&h, f, opts)?.witness
            } else {
                rep_from_coloring(*f, &local_chromatic_number(&h)?.witness)
            };
            let c = compress_representation(&h, &src, seed)?;
            let m = representing_matrix(g, &c.rep)?;
            Ok(BuiltCode {
                method,
                code: build_code(g, &m)?,
                family: None,
                locality: Some(c.locality),
                attempts: Some(c.attempts),
                rep_dim: c.m,
            })
        }
    }
}
