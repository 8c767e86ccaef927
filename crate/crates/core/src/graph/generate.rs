use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{set_label, Graph, SetSystem};
use crate::error::{Error, Result};

/// All `k`-subsets of `{1, ..., n}` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (1..=k).collect();
    loop {
        out.push(cur.clone());
        // rightmost position that can still be incremented
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - (k - 1 - i)) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

fn disjoint(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| !b.contains(x))
}

fn disjointness_graph(sets: &[Vec<usize>]) -> Result<Graph> {
    let mut g = Graph::new(sets.len())?;
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if disjoint(&sets[i], &sets[j]) {
                g.add_edge(i, j)?;
            }
        }
    }
    g.with_labels(sets.iter().map(|s| set_label(s)).collect())
}

/// Kneser graph K(n, k): `k`-subsets of `[n]`, adjacent when disjoint.
pub fn kneser(n: usize, k: usize) -> Result<Graph> {
    if k == 0 || n < 2 * k {
        return Err(Error::Precondition(format!(
            "Kneser graph needs n >= 2k >= 2, got n={n}, k={k}"
        )));
    }
    disjointness_graph(&k_subsets(n, k))
}

/// True when `s` has no two cyclically consecutive elements of `[n]`.
pub fn is_stable(s: &[usize], n: usize) -> bool {
    let has = |x: usize| s.contains(&x);
    !s.iter().any(|&x| if x == n { has(1) && n > 1 } else { has(x + 1) })
}

/// Schrijver graph S(n, k): the subgraph of K(n, k) induced on stable sets.
pub fn schrijver(n: usize, k: usize) -> Result<Graph> {
    if k == 0 || n < 2 * k {
        return Err(Error::Precondition(format!(
            "Schrijver graph needs n >= 2k >= 2, got n={n}, k={k}"
        )));
    }
    let stable: Vec<Vec<usize>> = k_subsets(n, k).into_iter().filter(|s| is_stable(s, n)).collect();
    disjointness_graph(&stable)
}

/// K(F): one vertex per member, adjacent when the members are disjoint.
pub fn intersection_graph(system: &SetSystem) -> Result<Graph> {
    disjointness_graph(system.family())
}

pub fn complete(n: usize) -> Result<Graph> {
    let mut g = Graph::new(n)?;
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

pub fn edgeless(n: usize) -> Result<Graph> {
    Graph::new(n)
}

pub fn cycle(r: usize) -> Result<Graph> {
    if r < 3 {
        return Err(Error::Precondition(format!("cycle needs r >= 3, got {r}")));
    }
    let mut g = Graph::new(r)?;
    for i in 0..r {
        g.add_edge(i, (i + 1) % r)?;
    }
    Ok(g)
}

pub fn path(n: usize) -> Result<Graph> {
    let mut g = Graph::new(n)?;
    for i in 1..n {
        g.add_edge(i - 1, i)?;
    }
    Ok(g)
}

/// One vertex per edge of `h` (in sorted edge order), adjacent when the
/// edges share an endpoint.
pub fn line_graph(h: &Graph) -> Result<Graph> {
    let edges = h.edges();
    let mut g = Graph::new(edges.len())?;
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            if a == c || a == d || b == c || b == d {
                g.add_edge(i, j)?;
            }
        }
    }
    g.with_labels(edges.iter().map(|&(u, v)| format!("{{{},{}}}", u + 1, v + 1)).collect())
}

/// Vertices of `b` are shifted by `a.n()`.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Result<Graph> {
    let off = a.n();
    let mut g = Graph::new(off + b.n())?;
    for (u, v) in a.edges() {
        g.add_edge(u, v)?;
    }
    for (u, v) in b.edges() {
        g.add_edge(u + off, v + off)?;
    }
    Ok(g)
}

/// Erdos-Renyi G(n, p) from a seeded generator.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n)?;
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// A random family of distinct 2-subsets of `[ground]`, each pair kept
/// independently with probability `p`.
pub fn random_two_uniform(ground: usize, p: f64, seed: u64) -> Result<SetSystem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let family = k_subsets(ground, 2)
        .into_iter()
        .filter(|_| rng.gen_bool(p.clamp(0.0, 1.0)))
        .collect();
    SetSystem::new(ground, family)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn subsets_lexicographic() {
        assert_eq!(
            k_subsets(4, 2),
            vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]]
        );
        assert_eq!(k_subsets(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(k_subsets(7, 3).len(), 35);
    }

    #[test]
    fn petersen() {
        let g = kneser(5, 2).unwrap();
        assert_eq!(g.n(), 10);
        assert_eq!(g.edge_count(), 15);
        assert!((0..10).all(|v| g.degree(v) == 3));
        assert_eq!(g.labels().unwrap()[0], "{1,2}");
    }

    #[test]
    fn kneser_regularity_and_matchings() {
        for (n, k) in [(4, 2), (5, 2), (6, 2), (6, 3), (7, 2), (7, 3), (8, 3), (8, 4)] {
            let g = kneser(n, k).unwrap();
            assert_eq!(g.n(), binom(n, k));
            assert!((0..g.n()).all(|v| g.degree(v) == binom(n - k, k)), "K({n},{k})");
        }
        let g = kneser(6, 3).unwrap();
        assert_eq!((g.n(), g.edge_count()), (20, 10));
        assert!(kneser(5, 3).is_err());
    }

    #[test]
    fn schrijver_small_cases() {
        let g = schrijver(4, 2).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edges(), vec![(0, 1)]);
        assert_eq!(g.labels().unwrap(), &["{1,3}", "{2,4}"]);

        let c5 = schrijver(5, 2).unwrap();
        assert_eq!(c5.n(), 5);
        assert!((0..5).all(|v| c5.degree(v) == 2));
        assert!(c5.is_connected());

        // stable 2-subsets of [6]: C(6,2) minus 6 cyclic neighbours
        assert_eq!(schrijver(6, 2).unwrap().n(), 9);
        assert!(schrijver(3, 2).is_err());
    }

    #[test]
    fn schrijver_is_induced_in_kneser() {
        for (n, k) in [(5, 2), (6, 2), (7, 2), (7, 3), (8, 3)] {
            let s = schrijver(n, k).unwrap();
            let kn = kneser(n, k).unwrap();
            let kl = kn.labels().unwrap();
            let idx: Vec<usize> = s
                .labels()
                .unwrap()
                .iter()
                .map(|l| kl.iter().position(|m| m == l).unwrap())
                .collect();
            assert_eq!(kn.induced(&idx).edges(), s.edges());
        }
    }

    #[test]
    fn intersection_graph_cases() {
        let all = SetSystem::new(5, k_subsets(5, 2)).unwrap();
        assert_eq!(intersection_graph(&all).unwrap().edges(), kneser(5, 2).unwrap().edges());
        let f = SetSystem::new(4, vec![vec![1, 2], vec![3, 4], vec![1, 3]]).unwrap();
        assert_eq!(intersection_graph(&f).unwrap().edges(), vec![(0, 1)]);
    }

    #[test]
    fn line_graph_and_friends() {
        assert_eq!(
            line_graph(&complete(3).unwrap()).unwrap().edges(),
            complete(3).unwrap().edges()
        );
        let u = disjoint_union(&complete(2).unwrap(), &cycle(3).unwrap()).unwrap();
        assert_eq!(u.edges(), vec![(0, 1), (2, 3), (2, 4), (3, 4)]);
        assert!(cycle(2).is_err());
        assert_eq!(path(4).unwrap().edge_count(), 3);
    }

    #[test]
    fn schrijver_two_is_complement_of_line_graph_of_cycle_complement() {
        for n in 5..=7 {
            let h = line_graph(&cycle(n).unwrap().complement()).unwrap();
            let g = h.complement();
            let s = schrijver(n, 2).unwrap();
            assert_eq!(g.n(), s.n());
            // label map: line-graph vertex {u,v} (1-based) corresponds to the
            // same pair in S(n,2), since non-edges of C_n are exactly the
            // stable pairs.
            let sl = s.labels().unwrap();
            let map: Vec<usize> = g
                .labels()
                .unwrap()
                .iter()
                .map(|l| sl.iter().position(|m| m == l).expect("label present"))
                .collect();
            let mut relabeled: Vec<(usize, usize)> = g
                .edges()
                .into_iter()
                .map(|(u, v)| (map[u].min(map[v]), map[u].max(map[v])))
                .collect();
            relabeled.sort();
            assert_eq!(relabeled, s.edges(), "n={n}");
        }
    }

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(random_graph(12, 0.4, 3).unwrap(), random_graph(12, 0.4, 3).unwrap());
        assert_eq!(
            random_two_uniform(6, 0.5, 1).unwrap(),
            random_two_uniform(6, 0.5, 1).unwrap()
        );
    }
}
