//! Isomorphism-free enumeration of small graphs.
//!
//! Graphs on `n` vertices are grown from those on `n - 1` by adding one
//! vertex with every possible neighbourhood, then deduplicated by a
//! canonical code. The code is the maximum upper-triangle bit string over
//! all vertex orders that sort vertices by degree; that set of orders is
//! isomorphism-invariant, so isomorphic graphs get equal codes.

use std::collections::BTreeSet;

use super::Graph;

/// Largest order supported (the code must fit in a `u64`).
pub const MAX_ORDER: usize = 11;

fn code_under(g: &Graph, order: &[usize]) -> u64 {
    let n = order.len();
    let mut code = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            code = code << 1 | g.has_edge(order[i], order[j]) as u64;
        }
    }
    code
}

/// Canonical code of `g` (requires `g.n() <= MAX_ORDER`).
pub fn canonical_code(g: &Graph) -> u64 {
    assert!(
        g.n() <= MAX_ORDER,
        "canonical code supports at most {MAX_ORDER} vertices"
    );
    let mut by_degree: Vec<usize> = (0..g.n()).collect();
    by_degree.sort_by_key(|&v| g.degree(v));
    // cells of equal degree, in degree order
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for v in by_degree {
        match cells.last_mut() {
            Some(c) if g.degree(c[0]) == g.degree(v) => c.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut best = 0u64;
    let mut order = Vec::with_capacity(g.n());
    permute_cells(g, &mut cells, 0, &mut order, &mut best);
    best
}

fn permute_cells(g: &Graph, cells: &mut [Vec<usize>], cell: usize, order: &mut Vec<usize>, best: &mut u64) {
    if cell == cells.len() {
        *best = (*best).max(code_under(g, order));
        return;
    }
    let len = cells[cell].len();
    permute_within(g, cells, cell, 0, len, order, best);
}

fn permute_within(
    g: &Graph,
    cells: &mut [Vec<usize>],
    cell: usize,
    k: usize,
    len: usize,
    order: &mut Vec<usize>,
    best: &mut u64,
) {
    if k == len {
        permute_cells(g, cells, cell + 1, order, best);
        return;
    }
    for i in k..len {
        cells[cell].swap(k, i);
        order.push(cells[cell][k]);
        permute_within(g, cells, cell, k + 1, len, order, best);
        order.pop();
        cells[cell].swap(k, i);
    }
}

/// Rebuilds a graph from a canonical code on `n` vertices.
pub fn from_code(n: usize, code: u64) -> Graph {
    let mut g = Graph::new(n).expect("small");
    let mut bit = n * (n.saturating_sub(1)) / 2;
    for i in 0..n {
        for j in i + 1..n {
            bit -= 1;
            if code >> bit & 1 == 1 {
                g.add_edge(i, j).expect("in range");
            }
        }
    }
    g
}

/// One representative of every isomorphism class on `n` vertices,
/// ordered by canonical code.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= MAX_ORDER);
    let mut level: BTreeSet<u64> = BTreeSet::from([0]);
    for order in 1..n {
        let mut next = BTreeSet::new();
        for &code in &level {
            let base = from_code(order, code);
            for nbhd in 0u64..1 << order {
                let mut g = Graph::new(order + 1).expect("small");
                for (u, v) in base.edges() {
                    g.add_edge(u, v).expect("in range");
                }
                for u in (0..order).filter(|u| nbhd >> u & 1 == 1) {
                    g.add_edge(u, order).expect("in range");
                }
                next.insert(canonical_code(&g));
            }
        }
        level = next;
    }
    level.into_iter().map(|c| from_code(n, c)).collect()
}

/// Connected representatives on `n` vertices.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    all_graphs(n).into_iter().filter(|g| g.is_connected()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, kneser};

    #[test]
    fn class_counts_match_known_sequence() {
        // unlabeled graphs: 1, 2, 4, 11, 34, 156; connected: 1, 1, 2, 6, 21, 112
        let all = [1, 2, 4, 11, 34, 156];
        let conn = [1, 1, 2, 6, 21, 112];
        for n in 1..=6 {
            assert_eq!(all_graphs(n).len(), all[n - 1], "n={n}");
            assert_eq!(connected_graphs(n).len(), conn[n - 1], "n={n}");
        }
    }

    #[test]
    fn codes_are_relabeling_invariant() {
        let g = kneser(5, 2).unwrap();
        let perm = [3, 7, 0, 9, 1, 5, 2, 8, 6, 4];
        let mut h = Graph::new(10).unwrap();
        for (u, v) in g.edges() {
            h.add_edge(perm[u], perm[v]).unwrap();
        }
        assert_eq!(canonical_code(&g), canonical_code(&h));
        assert_ne!(
            canonical_code(&cycle(6).unwrap()),
            canonical_code(&{
                let mut two = Graph::new(6).unwrap();
                for (u, v) in [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)] {
                    two.add_edge(u, v).unwrap();
                }
                two
            })
        );
    }
}
