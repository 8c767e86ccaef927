use crate::error::{Error, Result};
use crate::graph::Graph;

pub const CLIQUE_CAP: usize = 64;

/// Maximum clique (sorted vertex list) by branch and bound with a greedy
/// coloring bound.
pub fn max_clique(g: &Graph) -> Result<Vec<usize>> {
    max_clique_with_cap(g, CLIQUE_CAP)
}

pub fn max_clique_with_cap(g: &Graph, cap: usize) -> Result<Vec<usize>> {
    let cap = cap.min(64);
    if g.n() > cap {
        return Err(Error::CapExceeded {
            what: "max clique vertices",
            got: g.n(),
            cap,
        });
    }
    let adj: Vec<u64> = (0..g.n()).map(|v| g.mask(v)).collect();
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    let mut best = Vec::new();
    let mut cur = Vec::new();
    if g.n() > 0 {
        expand(&adj, &mut cur, all, &mut best);
    }
    best.sort_unstable();
    Ok(best)
}

/// Greedy color classes over `p`; returns vertices with their class
/// number (1-based), class numbers nondecreasing.
fn color_sort(adj: &[u64], p: u64) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(p.count_ones() as usize);
    let mut uncolored = p;
    let mut k = 0;
    while uncolored != 0 {
        k += 1;
        let mut q = uncolored;
        while q != 0 {
            let v = q.trailing_zeros() as usize;
            q &= !(1 << v) & !adj[v];
            uncolored &= !(1 << v);
            out.push((v, k));
        }
    }
    out
}

fn expand(adj: &[u64], cur: &mut Vec<usize>, mut p: u64, best: &mut Vec<usize>) {
    let order = color_sort(adj, p);
    for &(v, bound) in order.iter().rev() {
        if cur.len() + bound <= best.len() {
            return;
        }
        cur.push(v);
        let np = p & adj[v];
        if np == 0 {
            if cur.len() > best.len() {
                best.clone_from(cur);
            }
        } else {
            expand(adj, cur, np, best);
        }
        cur.pop();
        p &= !(1 << v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, edgeless, kneser, random_graph};

    fn brute(g: &Graph) -> usize {
        let n = g.n();
        (0u32..1 << n)
            .filter(|&s| (0..n).all(|u| (u + 1..n).all(|v| s >> u & 1 == 0 || s >> v & 1 == 0 || g.has_edge(u, v))))
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn examples() {
        assert_eq!(max_clique(&complete(5).unwrap()).unwrap(), vec![0, 1, 2, 3, 4]);
        assert_eq!(max_clique(&kneser(5, 2).unwrap()).unwrap().len(), 2);
        assert_eq!(max_clique(&edgeless(4).unwrap()).unwrap().len(), 1);
        assert_eq!(max_clique(&cycle(3).unwrap()).unwrap().len(), 3);
        assert!(max_clique(&edgeless(0).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn cap_enforced() {
        let g = edgeless(65).unwrap();
        assert!(matches!(max_clique(&g), Err(Error::CapExceeded { .. })));
        assert!(max_clique_with_cap(&edgeless(10).unwrap(), 5).is_err());
    }

    #[test]
    fn agrees_with_brute_force() {
        for seed in 0..40 {
            let g = random_graph(12, 0.5, seed).unwrap();
            let c = max_clique(&g).unwrap();
            assert_eq!(c.len(), brute(&g), "seed {seed}");
            for (i, &u) in c.iter().enumerate() {
                for &v in &c[i + 1..] {
                    assert!(g.has_edge(u, v));
                }
            }
        }
    }
}
