use super::search::{find_independent_rep, find_local_rep, find_orthogonal_rep, projective_count, SearchLimits};
use super::{locality_of_rep, rep_from_coloring, RepKind, VectorRepresentation};
use crate::coloring::{
    chromatic_number, local_chromatic_number, local_lower_bound, max_clique, LowerBoundReason, ParamResult,
};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::graph::Graph;

/// Caps for [`orthogonality_dimension`].
#[derive(Clone, Copy, Debug)]
pub struct OdOptions {
    pub max_vertices: usize,
    pub max_dim: usize,
    pub limits: SearchLimits,
}

impl Default for OdOptions {
    fn default() -> Self {
        OdOptions {
            max_vertices: 16,
            max_dim: 6,
            limits: SearchLimits::default(),
        }
    }
}

/// Caps for [`local_orthogonality_dimension`]. `dim_cap` defaults to `n`.
#[derive(Clone, Copy, Debug)]
pub struct LocalOdOptions {
    pub max_vertices: usize,
    pub dim_cap: Option<usize>,
    pub limits: SearchLimits,
}

impl Default for LocalOdOptions {
    fn default() -> Self {
        LocalOdOptions {
            max_vertices: 12,
            dim_cap: None,
            limits: SearchLimits::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocalOdResult {
    pub value: usize,
    pub witness: VectorRepresentation<PrimeField>,
    /// Largest ambient dimension searched for every smaller locality.
    pub dim_cap: usize,
    pub exact_under_cap: bool,
    pub lower_bound: usize,
    pub lower_bound_reason: LowerBoundReason,
    /// The value meets a proven lower bound.
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinrankResult {
    pub value: usize,
    /// Independent representation of the complement in `F^value`.
    pub witness: VectorRepresentation<PrimeField>,
    pub lower_bound_reason: LowerBoundReason,
}

fn vertex_cap(g: &Graph, cap: usize, what: &'static str) -> Result<()> {
    if g.n() > cap {
        return Err(Error::CapExceeded { what, got: g.n(), cap });
    }
    Ok(())
}

/// Lower bound on the local orthogonality dimension over any field.
pub fn local_od_lower_bounds(g: &Graph) -> Result<(usize, LowerBoundReason)> {
    let clique = max_clique(g)?;
    Ok(local_lower_bound(g, clique.len()))
}

/// Exact orthogonality dimension over a prime field.
pub fn orthogonality_dimension(
    g: &Graph,
    f: &PrimeField,
    opts: OdOptions,
) -> Result<ParamResult<VectorRepresentation<PrimeField>>> {
    vertex_cap(g, opts.max_vertices, "orthogonality dimension vertices")?;
    if g.n() == 0 {
        return Ok(ParamResult {
            value: 0,
            witness: VectorRepresentation::new(*f, 0, Vec::new(), RepKind::Orthogonal)?,
            lower_bound_reason: LowerBoundReason::Clique,
            exact: true,
        });
    }
    let lb = max_clique(g)?.len();
    let chi = chromatic_number(g)?;
    for t in lb..chi.value {
        if t > opts.max_dim {
            return Err(Error::CapExceeded {
                what: "orthogonality dimension",
                got: t,
                cap: opts.max_dim,
            });
        }
        if let Some(vs) = find_orthogonal_rep(g, f, t, opts.limits)? {
            return Ok(ParamResult {
                value: t,
                witness: VectorRepresentation::new(*f, t, vs, RepKind::Orthogonal)?,
                lower_bound_reason: reason(t, lb),
                exact: true,
            });
        }
    }
    Ok(ParamResult {
        value: chi.value,
        witness: rep_from_coloring(*f, &chi.witness),
        lower_bound_reason: reason(chi.value, lb),
        exact: true,
    })
}

fn reason(value: usize, lb: usize) -> LowerBoundReason {
    if value == lb {
        LowerBoundReason::Clique
    } else {
        LowerBoundReason::ExhaustedSearch
    }
}

/// Local orthogonality dimension over a prime field, exact among
/// representations of ambient dimension at most the reported `dim_cap`.
///
/// The starting witness comes from an optimal local coloring; each smaller
/// locality `ell` is searched in `F^t` for `t = ell..=dim_cap`. The cap is
/// lowered when `F^dim_cap` has more projective points than allowed. When
/// the node budget runs out the best witness so far is returned with
/// `exact_under_cap` unset.
pub fn local_orthogonality_dimension(g: &Graph, f: &PrimeField, opts: LocalOdOptions) -> Result<LocalOdResult> {
    vertex_cap(g, opts.max_vertices, "local orthogonality dimension vertices")?;
    let mut dim_cap = opts.dim_cap.unwrap_or(g.n());
    while dim_cap > 0 && projective_count(f.order(), dim_cap) > opts.limits.max_points {
        dim_cap -= 1;
    }
    let (lb, lb_reason) = local_od_lower_bounds(g)?;
    let chi_l = local_chromatic_number(g)?;
    let mut witness = rep_from_coloring(*f, &chi_l.witness);
    let mut value = chi_l.value;
    let mut exact_under_cap = true;
    'outer: for ell in lb..chi_l.value {
        for t in ell..=dim_cap {
            match find_local_rep(g, f, ell, t, opts.limits) {
                Ok(Some(vs)) => {
                    witness = VectorRepresentation::new(*f, t, vs, RepKind::Orthogonal)?;
                    value = ell;
                    break 'outer;
                }
                Ok(None) => {}
                Err(Error::CapExceeded {
                    what: "search nodes", ..
                }) => {
                    exact_under_cap = false;
                    break 'outer;
                }
                Err(e) => return Err(e),
            }
        }
    }
    debug_assert_eq!(locality_of_rep(g, &witness).ok(), Some(value));
    Ok(LocalOdResult {
        value,
        witness,
        dim_cap,
        exact_under_cap,
        lower_bound: lb,
        lower_bound_reason: if value == lb {
            lb_reason
        } else {
            LowerBoundReason::ExhaustedSearch
        },
        exact: value == lb,
    })
}

/// Exact minrank of `g` over a prime field, found as the smallest dimension
/// of an independent representation of the complement.
pub fn minrank(g: &Graph, f: &PrimeField) -> Result<MinrankResult> {
    minrank_with(g, f, 12, SearchLimits::default())
}

pub fn minrank_with(g: &Graph, f: &PrimeField, max_vertices: usize, limits: SearchLimits) -> Result<MinrankResult> {
    vertex_cap(g, max_vertices, "minrank vertices")?;
    let h = g.complement();
    let lb = max_clique(&h)?.len();
    for t in lb..=g.n() {
        if let Some(vs) = find_independent_rep(&h, f, t, limits)? {
            return Ok(MinrankResult {
                value: t,
                witness: VectorRepresentation::new(*f, t, vs, RepKind::Independent)?,
                lower_bound_reason: reason(t, lb),
            });
        }
    }
    // unreachable for n >= 1: the standard basis is independent in F^n
    let vectors = (0..g.n())
        .map(|i| (0..g.n()).map(|j| if i == j { f.one() } else { f.zero() }).collect())
        .collect();
    Ok(MinrankResult {
        value: g.n(),
        witness: VectorRepresentation::new(*f, g.n(), vectors, RepKind::Independent)?,
        lower_bound_reason: reason(g.n(), lb),
    })
}
