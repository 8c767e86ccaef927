//! Simple undirected graphs stored as fixed-width adjacency bit rows.

mod dimacs;
pub mod enumerate;
mod generate;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use dimacs::{read_dimacs, write_dimacs};
pub use generate::*;

/// Storage cap on the number of vertices.
pub const MAX_VERTICES: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::CapExceeded {
                what: "graph vertices",
                got: n,
                cap: MAX_VERTICES,
            });
        }
        let words = n.div_ceil(64);
        Ok(Graph {
            n,
            words,
            adj: vec![0; n * words],
            labels: None,
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<()> {
        if labels.len() != self.n {
            return Err(Error::LengthMismatch(labels.len(), self.n));
        }
        self.labels = Some(labels);
        Ok(())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        self.set_labels(labels)?;
        Ok(self)
    }

    /// Adds `{u, v}`; adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidGraph(format!(
                "edge ({u}, {v}) out of range for {} vertices",
                self.n
            )));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
        }
        self.adj[u * self.words + v / 64] |= 1 << (v % 64);
        self.adj[v * self.words + u / 64] |= 1 << (u % 64);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u * self.words + v / 64] &= !(1 << (v % 64));
        self.adj[v * self.words + u / 64] &= !(1 << (u % 64));
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    /// Neighbors of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(w, &bits)| {
            let mut bits = bits;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(w * 64 + b)
                }
            })
        })
    }

    /// `v` followed by its neighbors.
    pub fn closed_neighborhood(&self, v: usize) -> Vec<usize> {
        std::iter::once(v).chain(self.neighbors(v)).collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Adjacency row as a single word; only valid for `n <= 64`.
    #[inline]
    pub fn mask(&self, v: usize) -> u64 {
        debug_assert!(self.n <= 64);
        self.adj[v]
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn has_edges(&self) -> bool {
        self.adj.iter().any(|&w| w != 0)
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    pub fn complement(&self) -> Graph {
        let mut c = Graph::new(self.n).expect("same size");
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    c.add_edge(u, v).expect("in range");
                }
            }
        }
        c.labels = self.labels.clone();
        c
    }

    /// Subgraph induced on `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::new(vertices.len()).expect("smaller graph");
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j).expect("in range");
                }
            }
        }
        if let Some(l) = &self.labels {
            g.labels = Some(vertices.iter().map(|&v| l[v].clone()).collect());
        }
        g
    }

    /// Proper 2-coloring if one exists, otherwise an odd cycle.
    pub fn two_coloring(&self) -> std::result::Result<Vec<usize>, Vec<usize>> {
        let mut side = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        for root in 0..self.n {
            if side[root] != usize::MAX {
                continue;
            }
            side[root] = 0;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if side[v] == usize::MAX {
                        side[v] = 1 - side[u];
                        parent[v] = u;
                        queue.push_back(v);
                    } else if side[v] == side[u] {
                        return Err(self.odd_cycle_through(u, v, &parent));
                    }
                }
            }
        }
        Ok(side)
    }

    fn odd_cycle_through(&self, u: usize, v: usize, parent: &[usize]) -> Vec<usize> {
        let path = |mut x: usize| {
            let mut p = vec![x];
            while parent[x] != usize::MAX {
                x = parent[x];
                p.push(x);
            }
            p
        };
        let pu = path(u);
        let pv = path(v);
        let common = *pu.iter().find(|x| pv.contains(x)).expect("same BFS tree");
        let mut cycle: Vec<usize> = pu.iter().copied().take_while(|&x| x != common).collect();
        cycle.push(common);
        let back: Vec<usize> = pv.iter().copied().take_while(|&x| x != common).collect();
        cycle.extend(back.into_iter().rev());
        cycle
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_ok()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            labels: self.labels.clone(),
        }
    }

    pub fn from_json(j: &GraphJson) -> Result<Self> {
        let mut g = Graph::new(j.n)?;
        for &[u, v] in &j.edges {
            g.add_edge(u, v)?;
        }
        if let Some(l) = &j.labels {
            g.set_labels(l.clone())?;
        }
        Ok(g)
    }
}

/// JSON export; vertices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub labels: Option<Vec<String>>,
}

/// A family of distinct subsets of `{1, ..., ground}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetSystem {
    ground: usize,
    family: Vec<Vec<usize>>,
}

impl SetSystem {
    /// Members are sorted internally; duplicates and out-of-range
    /// elements are rejected.
    pub fn new(ground: usize, family: Vec<Vec<usize>>) -> Result<Self> {
        let mut normalized: Vec<Vec<usize>> = Vec::with_capacity(family.len());
        for mut s in family {
            s.sort_unstable();
            s.dedup();
            if let Some(&x) = s.iter().find(|&&x| x == 0 || x > ground) {
                return Err(Error::Precondition(format!(
                    "element {x} outside ground set 1..={ground}"
                )));
            }
            if normalized.contains(&s) {
                return Err(Error::Precondition(format!("duplicate member {s:?}")));
            }
            normalized.push(s);
        }
        Ok(SetSystem {
            ground,
            family: normalized,
        })
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn family(&self) -> &[Vec<usize>] {
        &self.family
    }
}

pub(crate) fn set_label(s: &[usize]) -> String {
    let inner: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut g = Graph::new(4).unwrap();
        g.add_edge(0, 1).unwrap();
        g.add_edge(1, 0).unwrap();
        g.add_edge(2, 3).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.edges(), vec![(0, 1), (2, 3)]);
        assert!(g.add_edge(1, 1).is_err());
        assert!(g.add_edge(1, 4).is_err());
        assert_eq!(g.complement().complement(), g);
        assert_eq!(g.complement().edge_count(), 4);
        assert!(g.is_bipartite());
        assert!(!g.is_connected());
    }

    #[test]
    fn wide_rows() {
        let mut g = Graph::new(130).unwrap();
        g.add_edge(3, 129).unwrap();
        g.add_edge(3, 64).unwrap();
        assert_eq!(g.neighbors(3).collect::<Vec<_>>(), vec![64, 129]);
        assert!(Graph::new(MAX_VERTICES + 1).is_err());
    }

    #[test]
    fn odd_cycle_witness() {
        let g = cycle(7).unwrap();
        let cyc = g.two_coloring().unwrap_err();
        assert_eq!(cyc.len() % 2, 1);
        for i in 0..cyc.len() {
            assert!(g.has_edge(cyc[i], cyc[(i + 1) % cyc.len()]));
        }
        let mut h = disjoint_union(&cycle(4).unwrap(), &complete(3).unwrap()).unwrap();
        let cyc = h.two_coloring().unwrap_err();
        assert_eq!(cyc.len(), 3);
        h.remove_edge(4, 5);
        assert!(h.is_bipartite());
    }

    #[test]
    fn set_system_validation() {
        assert!(SetSystem::new(3, vec![vec![1], vec![1]]).is_err());
        assert!(SetSystem::new(3, vec![vec![4]]).is_err());
        assert!(SetSystem::new(3, vec![vec![0]]).is_err());
        let s = SetSystem::new(4, vec![vec![2, 1], vec![3, 4]]).unwrap();
        assert_eq!(s.family(), &[vec![1, 2], vec![3, 4]]);
    }

    #[test]
    fn json_round_trip() {
        let g = kneser(5, 2).unwrap();
        let j = g.to_json();
        let text = serde_json::to_string(&j).unwrap();
        let back: GraphJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Graph::from_json(&back).unwrap(), g);
    }
}
