//! Proper colorings, their locality, and exact solvers for the clique
//! number, chromatic number and local chromatic number of small graphs.

mod chromatic;
mod clique;
mod local;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub use chromatic::{chromatic_number, chromatic_number_with_cap, k_coloring, CHROMATIC_CAP};
pub use clique::{max_clique, max_clique_with_cap, CLIQUE_CAP};
pub use local::{local_chromatic_number, local_chromatic_number_with_cap, locality_coloring, LOCAL_CHROMATIC_CAP};

/// Why a reported value cannot be improved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LowerBoundReason {
    ExhaustedSearch,
    Clique,
    OddCycle,
    BipartiteTest,
    TheoremCitation,
}

/// A solver answer together with the object that attains it.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamResult<W> {
    pub value: usize,
    pub witness: W,
    pub lower_bound_reason: LowerBoundReason,
    pub exact: bool,
}

/// Vertex colors in `0..m`, every color used at least once.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Coloring {
    colors: Vec<usize>,
    m: usize,
}

impl Coloring {
    /// Rejects colorings that skip a color index.
    pub fn new(colors: Vec<usize>) -> Result<Self> {
        let m = colors.iter().map(|&c| c + 1).max().unwrap_or(0);
        let mut seen = vec![false; m];
        for &c in &colors {
            seen[c] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::ImproperColoring(format!("color {missing} unused among 0..{m}")));
        }
        Ok(Coloring { colors, m })
    }

    /// Relabels colors in order of first appearance.
    pub fn normalized(raw: &[usize]) -> Self {
        let mut map = std::collections::HashMap::new();
        let colors = raw
            .iter()
            .map(|c| {
                let next = map.len();
                *map.entry(*c).or_insert(next)
            })
            .collect();
        Coloring { colors, m: map.len() }
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn num_colors(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// First monochromatic edge, if any.
    pub fn conflict(&self, g: &Graph) -> Option<(usize, usize)> {
        g.edges().into_iter().find(|&(u, v)| self.colors[u] == self.colors[v])
    }

    pub fn check_proper(&self, g: &Graph) -> Result<()> {
        if self.colors.len() != g.n() {
            return Err(Error::ImproperColoring(format!(
                "{} colors for {} vertices",
                self.colors.len(),
                g.n()
            )));
        }
        match self.conflict(g) {
            Some((u, v)) => Err(Error::ImproperColoring(format!(
                "adjacent vertices {u} and {v} share color {}",
                self.colors[u]
            ))),
            None => Ok(()),
        }
    }

    /// Colors of the closed neighbourhood of `v`, sorted and deduplicated.
    pub fn closed_neighborhood_colors(&self, g: &Graph, v: usize) -> Vec<usize> {
        let mut cs: Vec<usize> = std::iter::once(v)
            .chain(g.neighbors(v))
            .map(|u| self.colors[u])
            .collect();
        cs.sort_unstable();
        cs.dedup();
        cs
    }
}

impl TryFrom<Vec<usize>> for Coloring {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Coloring::new(v)
    }
}

impl From<Coloring> for Vec<usize> {
    fn from(c: Coloring) -> Vec<usize> {
        c.colors
    }
}

/// Maximum number of distinct colors on a closed neighbourhood.
pub fn locality_of_coloring(g: &Graph, c: &Coloring) -> Result<usize> {
    c.check_proper(g)?;
    Ok((0..g.n())
        .map(|v| c.closed_neighborhood_colors(g, v).len())
        .max()
        .unwrap_or(0))
}

/// Lower bound on the local chromatic number: 1, 2 with an edge, 3 when
/// an odd cycle exists, and the clique number.
pub fn local_lower_bound(g: &Graph, clique: usize) -> (usize, LowerBoundReason) {
    let mut lb = (g.n().min(1), LowerBoundReason::Clique);
    if g.has_edges() {
        lb = (2, LowerBoundReason::BipartiteTest);
        if !g.is_bipartite() {
            lb = (3, LowerBoundReason::OddCycle);
        }
    }
    if clique > lb.0 {
        lb = (clique, LowerBoundReason::Clique);
    }
    lb
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, edgeless};

    #[test]
    fn locality_examples() {
        let g = edgeless(4).unwrap();
        assert_eq!(
            locality_of_coloring(&g, &Coloring::new(vec![0; 4]).unwrap()).unwrap(),
            1
        );
        let k5 = complete(5).unwrap();
        let c = Coloring::new(vec![4, 2, 0, 1, 3]).unwrap();
        assert_eq!(locality_of_coloring(&k5, &c).unwrap(), 5);
        let c5 = cycle(5).unwrap();
        let c = Coloring::new(vec![0, 1, 0, 1, 2]).unwrap();
        assert_eq!(locality_of_coloring(&c5, &c).unwrap(), 3);
    }

    #[test]
    fn improper_coloring_rejected() {
        let c5 = cycle(5).unwrap();
        let bad = Coloring::new(vec![0, 1, 0, 1, 0]).unwrap();
        assert!(matches!(
            locality_of_coloring(&c5, &bad),
            Err(Error::ImproperColoring(_))
        ));
        assert!(Coloring::new(vec![0, 2]).is_err());
        let short = Coloring::new(vec![0, 1]).unwrap();
        assert!(short.check_proper(&c5).is_err());
    }

    #[test]
    fn normalization_and_serde() {
        let c = Coloring::normalized(&[7, 3, 7, 9]);
        assert_eq!(c.colors(), &[0, 1, 0, 2]);
        assert_eq!(c.num_colors(), 3);
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, "[0,1,0,2]");
        assert!(serde_json::from_str::<Coloring>("[0,2]").is_err());
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(local_lower_bound(&edgeless(3).unwrap(), 1).0, 1);
        assert_eq!(
            local_lower_bound(&cycle(6).unwrap(), 2),
            (2, LowerBoundReason::BipartiteTest)
        );
        assert_eq!(
            local_lower_bound(&cycle(5).unwrap(), 2),
            (3, LowerBoundReason::OddCycle)
        );
        assert_eq!(
            local_lower_bound(&complete(5).unwrap(), 5),
            (5, LowerBoundReason::Clique)
        );
    }
}
