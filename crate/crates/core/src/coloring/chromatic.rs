use super::{max_clique, Coloring, LowerBoundReason, ParamResult};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const CHROMATIC_CAP: usize = 64;

/// Exact chromatic number with an optimal coloring.
///
/// The clique found by [`max_clique`] is precolored; each color count `k`
/// from the clique size upward is decided by DSATUR-ordered backtracking
/// where a fresh color is only ever the smallest unused index.
pub fn chromatic_number(g: &Graph) -> Result<ParamResult<Coloring>> {
    chromatic_number_with_cap(g, CHROMATIC_CAP)
}

pub fn chromatic_number_with_cap(g: &Graph, cap: usize) -> Result<ParamResult<Coloring>> {
    let cap = cap.min(64);
    if g.n() > cap {
        return Err(Error::CapExceeded {
            what: "chromatic number vertices (use a greedy coloring for an upper bound only)",
            got: g.n(),
            cap,
        });
    }
    if g.n() == 0 {
        return Ok(ParamResult {
            value: 0,
            witness: Coloring::normalized(&[]),
            lower_bound_reason: LowerBoundReason::Clique,
            exact: true,
        });
    }
    let clique = max_clique(g)?;
    let greedy = dsatur_greedy(g);
    let ub = greedy.num_colors();
    for k in clique.len()..ub {
        if let Some(c) = k_coloring_seeded(g, k, &clique) {
            return Ok(result(g, c, clique.len()));
        }
    }
    Ok(result(g, greedy, clique.len()))
}

fn result(g: &Graph, c: Coloring, clique: usize) -> ParamResult<Coloring> {
    let value = c.num_colors();
    let reason = if value == clique {
        LowerBoundReason::Clique
    } else if value == 3 && !g.is_bipartite() {
        LowerBoundReason::OddCycle
    } else {
        LowerBoundReason::ExhaustedSearch
    };
    ParamResult {
        value,
        witness: c,
        lower_bound_reason: reason,
        exact: true,
    }
}

/// A proper coloring with at most `k` colors, if one exists.
pub fn k_coloring(g: &Graph, k: usize) -> Result<Option<Coloring>> {
    if g.n() > CHROMATIC_CAP {
        return Err(Error::CapExceeded {
            what: "k-coloring vertices",
            got: g.n(),
            cap: CHROMATIC_CAP,
        });
    }
    let clique = max_clique(g)?;
    if clique.len() > k {
        return Ok(None);
    }
    Ok(k_coloring_seeded(g, k, &clique))
}

fn dsatur_greedy(g: &Graph) -> Coloring {
    let n = g.n();
    let mut color = vec![usize::MAX; n];
    let mut sat = vec![0u64; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| color[v] == usize::MAX)
            .max_by_key(|&v| (sat[v].count_ones(), g.degree(v), std::cmp::Reverse(v)))
            .expect("uncolored vertex remains");
        let c = (!sat[v]).trailing_zeros() as usize;
        color[v] = c;
        for w in g.neighbors(v) {
            sat[w] |= 1 << c;
        }
    }
    Coloring::normalized(&color)
}

struct KColor<'a> {
    g: &'a Graph,
    k: usize,
    color: Vec<usize>,
    // count[v * k + c]: colored neighbours of v with color c
    count: Vec<u8>,
    sat: Vec<u64>,
    used: usize,
    uncolored: usize,
}

impl KColor<'_> {
    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = c;
        self.uncolored -= 1;
        for w in self.g.neighbors(v) {
            self.count[w * self.k + c] += 1;
            self.sat[w] |= 1 << c;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.color[v];
        self.color[v] = usize::MAX;
        self.uncolored += 1;
        for w in self.g.neighbors(v) {
            self.count[w * self.k + c] -= 1;
            if self.count[w * self.k + c] == 0 {
                self.sat[w] &= !(1 << c);
            }
        }
    }

    fn search(&mut self) -> bool {
        if self.uncolored == 0 {
            return true;
        }
        let n = self.g.n();
        let mut pick = usize::MAX;
        let mut key = (0u32, 0usize);
        for v in 0..n {
            if self.color[v] != usize::MAX {
                continue;
            }
            let s = self.sat[v].count_ones();
            if s as usize >= self.k {
                return false;
            }
            let kv = (s, self.g.degree(v));
            if pick == usize::MAX || kv > key {
                pick = v;
                key = kv;
            }
        }
        let v = pick;
        let limit = (self.used + 1).min(self.k);
        for c in 0..limit {
            if self.sat[v] >> c & 1 == 1 {
                continue;
            }
            let fresh = c == self.used;
            if fresh {
                self.used += 1;
            }
            self.assign(v, c);
            if self.search() {
                return true;
            }
            self.unassign(v);
            if fresh {
                self.used -= 1;
            }
        }
        false
    }
}

fn k_coloring_seeded(g: &Graph, k: usize, clique: &[usize]) -> Option<Coloring> {
    if g.n() == 0 {
        return Some(Coloring::normalized(&[]));
    }
    if k == 0 || clique.len() > k {
        return None;
    }
    let mut st = KColor {
        g,
        k,
        color: vec![usize::MAX; g.n()],
        count: vec![0; g.n() * k],
        sat: vec![0; g.n()],
        used: 0,
        uncolored: g.n(),
    };
    for (c, &v) in clique.iter().enumerate() {
        st.assign(v, c);
    }
    st.used = clique.len();
    if st.search() {
        Some(Coloring::normalized(&st.color))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, edgeless, kneser, random_graph, schrijver};

    /// Exhaustive k-colorability over all k^n assignments.
    fn brute_colorable(g: &Graph, k: usize) -> bool {
        let n = g.n();
        let mut c = vec![0usize; n];
        loop {
            if g.edges().iter().all(|&(u, v)| c[u] != c[v]) {
                return true;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return false;
                }
                c[i] += 1;
                if c[i] < k {
                    break;
                }
                c[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn examples() {
        assert_eq!(chromatic_number(&kneser(5, 2).unwrap()).unwrap().value, 3);
        assert_eq!(chromatic_number(&complete(4).unwrap()).unwrap().value, 4);
        assert_eq!(chromatic_number(&schrijver(6, 2).unwrap()).unwrap().value, 4);
        assert_eq!(chromatic_number(&edgeless(3).unwrap()).unwrap().value, 1);
        assert_eq!(chromatic_number(&edgeless(0).unwrap()).unwrap().value, 0);
        let c5 = chromatic_number(&cycle(5).unwrap()).unwrap();
        assert_eq!((c5.value, c5.lower_bound_reason), (3, LowerBoundReason::OddCycle));
    }

    #[test]
    fn witnesses_verify_and_match_brute_force() {
        for seed in 0..30 {
            let g = random_graph(8, 0.45, seed).unwrap();
            let r = chromatic_number(&g).unwrap();
            r.witness.check_proper(&g).unwrap();
            assert_eq!(r.witness.num_colors(), r.value);
            assert!(brute_colorable(&g, r.value));
            assert!(r.value == 0 || !brute_colorable(&g, r.value - 1), "seed {seed}");
        }
    }

    #[test]
    fn k_coloring_decisions() {
        let p = kneser(5, 2).unwrap();
        assert!(k_coloring(&p, 2).unwrap().is_none());
        let c = k_coloring(&p, 3).unwrap().unwrap();
        c.check_proper(&p).unwrap();
    }

    #[test]
    fn cap_enforced() {
        assert!(matches!(
            chromatic_number_with_cap(&edgeless(10).unwrap(), 5),
            Err(Error::CapExceeded { .. })
        ));
    }
}
