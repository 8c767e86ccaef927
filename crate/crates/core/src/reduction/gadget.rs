use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::field::{Field, FieldSpec, PrimeField};
use crate::graph::Graph;
use crate::ortho::{for_each_orthogonal_rep, SearchLimits};

// vertex numbering of the standalone gadget
const I: usize = 0;
const A: usize = 1;
const B: usize = 2;
const J: usize = 3;
const D: usize = 4;
const C: usize = 5;

/// One of the three matching edges between the two triangles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatchingEdge {
    ID,
    AJ,
    BC,
}

impl MatchingEdge {
    pub const ALL: [MatchingEdge; 3] = [MatchingEdge::ID, MatchingEdge::AJ, MatchingEdge::BC];

    fn ends(self) -> (usize, usize) {
        match self {
            MatchingEdge::ID => (I, D),
            MatchingEdge::AJ => (A, J),
            MatchingEdge::BC => (B, C),
        }
    }
}

/// The 6-vertex gadget on `i, a, b, j, d, c` (numbered 0..6 in that order),
/// optionally with one matching edge removed.
pub fn h_gadget(removed: Option<MatchingEdge>) -> Graph {
    let mut g = Graph::from_edges(
        6,
        &[(I, A), (I, B), (A, B), (J, D), (J, C), (D, C), (I, D), (A, J), (B, C)],
    )
    .expect("static gadget");
    if let Some(e) = removed {
        let (u, v) = e.ends();
        g.remove_edge(u, v);
    }
    g
}

/// Outcome of an exhaustive check that every orthogonal representation of
/// the gadget in `F^3` makes `u_i` and `u_j` orthogonal or parallel.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetReport {
    pub field: FieldSpec,
    pub dim: usize,
    pub removed_edge: Option<MatchingEdge>,
    pub enumerated: u64,
    pub counterexamples: u64,
    pub first_counterexample: Option<Vec<Vec<u8>>>,
}

pub fn certify_gadget_lemma(f: &PrimeField) -> Result<GadgetReport> {
    certify(f, None)
}

/// The same check on a gadget missing one matching edge.
pub fn certify_mutated_gadget(f: &PrimeField, removed: MatchingEdge) -> Result<GadgetReport> {
    certify(f, Some(removed))
}

fn certify(f: &PrimeField, removed: Option<MatchingEdge>) -> Result<GadgetReport> {
    let g = h_gadget(removed);
    let mut counterexamples = 0u64;
    let mut first = None;
    // vectors come normalized, so parallel means equal
    let enumerated = for_each_orthogonal_rep(&g, f, 3, SearchLimits::default(), |rep| {
        let ok = f.is_zero(&f.dot(&rep[I], &rep[J])) || rep[I] == rep[J];
        if !ok {
            counterexamples += 1;
            if first.is_none() {
                first = Some(rep.to_vec());
            }
        }
        true
    })?;
    Ok(GadgetReport {
        field: f.spec(),
        dim: 3,
        removed_edge: removed,
        enumerated,
        counterexamples,
        first_counterexample: first,
    })
}
