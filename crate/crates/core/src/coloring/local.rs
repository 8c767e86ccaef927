use super::{
    chromatic_number_with_cap, local_lower_bound, locality_of_coloring, max_clique, Coloring, LowerBoundReason,
    ParamResult,
};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const LOCAL_CHROMATIC_CAP: usize = 56;

/// Exact local chromatic number with a witness coloring.
///
/// Candidate localities run upward from the clique / bipartiteness lower
/// bound; each is decided by [`locality_coloring`]. The locality of an
/// optimal proper coloring caps the range.
pub fn local_chromatic_number(g: &Graph) -> Result<ParamResult<Coloring>> {
    local_chromatic_number_with_cap(g, LOCAL_CHROMATIC_CAP)
}

pub fn local_chromatic_number_with_cap(g: &Graph, cap: usize) -> Result<ParamResult<Coloring>> {
    let cap = cap.min(64);
    if g.n() > cap {
        return Err(Error::CapExceeded {
            what: "local chromatic number vertices",
            got: g.n(),
            cap,
        });
    }
    let clique = max_clique(g)?;
    let (lb, lb_reason) = local_lower_bound(g, clique.len());
    let chi = chromatic_number_with_cap(g, cap)?;
    let ub = locality_of_coloring(g, &chi.witness)?;
    for ell in lb..ub {
        if let Some(c) = locality_coloring(g, ell)? {
            return Ok(ParamResult {
                value: ell,
                witness: c,
                lower_bound_reason: if ell == lb {
                    lb_reason
                } else {
                    LowerBoundReason::ExhaustedSearch
                },
                exact: true,
            });
        }
    }
    Ok(ParamResult {
        value: ub,
        witness: chi.witness,
        lower_bound_reason: if ub == lb {
            lb_reason
        } else {
            LowerBoundReason::ExhaustedSearch
        },
        exact: true,
    })
}

/// A proper coloring whose every closed neighbourhood sees at most `ell`
/// colors, if one exists.
///
/// Backtracking with forward checking: the next vertex is the one with the
/// fewest admissible colors, and a fresh color is always the smallest
/// unused index (at most `n` colors overall).
pub fn locality_coloring(g: &Graph, ell: usize) -> Result<Option<Coloring>> {
    if g.n() > 64 {
        return Err(Error::CapExceeded {
            what: "locality decision vertices",
            got: g.n(),
            cap: 64,
        });
    }
    if g.n() == 0 {
        return Ok(Some(Coloring::normalized(&[])));
    }
    if ell == 0 {
        return Ok(None);
    }
    let n = g.n();
    let mut st = LocalSearch {
        g,
        ell: ell as u32,
        max_colors: n,
        color: vec![NONE; n],
        count: vec![0; n * n],
        nmask: vec![0; n],
        used: 0,
        uncolored: n,
    };
    Ok(if st.search() {
        Some(Coloring::new(st.color.iter().map(|&c| c as usize).collect())?)
    } else {
        None
    })
}

const NONE: u8 = u8::MAX;

struct LocalSearch<'a> {
    g: &'a Graph,
    ell: u32,
    max_colors: usize,
    color: Vec<u8>,
    // count[v * n + c]: colored neighbours of v with color c
    count: Vec<u8>,
    // colors present among colored neighbours
    nmask: Vec<u64>,
    used: usize,
    uncolored: usize,
}

impl LocalSearch<'_> {
    fn closed_mask(&self, v: usize) -> u64 {
        match self.color[v] {
            NONE => self.nmask[v],
            c => self.nmask[v] | 1 << c,
        }
    }

    fn domain(&self, v: usize) -> u64 {
        let mut d = if self.used >= 64 {
            u64::MAX
        } else {
            (1u64 << self.used) - 1
        };
        if self.used < self.max_colors {
            d |= 1 << self.used;
        }
        d &= !self.nmask[v];
        // v's own neighbourhood still needs v's color
        if self.nmask[v].count_ones() >= self.ell {
            return 0;
        }
        for w in self.g.neighbors(v) {
            if self.color[w] == NONE {
                // w's closed neighbourhood will also contain w's own color,
                // which differs from every neighbour color
                if self.nmask[w].count_ones() + 1 >= self.ell {
                    d &= self.nmask[w];
                }
            } else {
                let cm = self.closed_mask(w);
                if cm.count_ones() >= self.ell {
                    d &= cm;
                }
            }
        }
        d
    }

    fn assign(&mut self, v: usize, c: u8) {
        let n = self.g.n();
        self.color[v] = c;
        self.uncolored -= 1;
        for w in self.g.neighbors(v) {
            self.count[w * n + c as usize] += 1;
            self.nmask[w] |= 1 << c;
        }
    }

    fn unassign(&mut self, v: usize) {
        let n = self.g.n();
        let c = self.color[v];
        self.color[v] = NONE;
        self.uncolored += 1;
        for w in self.g.neighbors(v) {
            self.count[w * n + c as usize] -= 1;
            if self.count[w * n + c as usize] == 0 {
                self.nmask[w] &= !(1 << c);
            }
        }
    }

    fn search(&mut self) -> bool {
        if self.uncolored == 0 {
            return true;
        }
        let mut pick = usize::MAX;
        let mut best = (u32::MAX, 0usize);
        let mut pick_dom = 0;
        for v in 0..self.g.n() {
            if self.color[v] != NONE {
                continue;
            }
            let d = self.domain(v);
            let size = d.count_ones();
            if size == 0 {
                return false;
            }
            let deg = self.g.degree(v);
            if size < best.0 || (size == best.0 && deg > best.1) {
                best = (size, deg);
                pick = v;
                pick_dom = d;
            }
        }
        let v = pick;
        let mut d = pick_dom;
        while d != 0 {
            let c = d.trailing_zeros() as usize;
            d &= d - 1;
            let fresh = c == self.used;
            if fresh {
                self.used += 1;
            }
            self.assign(v, c as u8);
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, edgeless, kneser, random_graph, schrijver};

    /// Minimum locality over every proper coloring, by enumerating all
    /// colorings with colors in 0..n.
    fn brute_local(g: &Graph) -> usize {
        let n = g.n();
        let mut c = vec![0usize; n];
        let mut best = usize::MAX;
        loop {
            if g.edges().iter().all(|&(u, v)| c[u] != c[v]) {
                let loc = (0..n)
                    .map(|v| {
                        let mut s: Vec<usize> = g.closed_neighborhood(v).iter().map(|&u| c[u]).collect();
                        s.sort_unstable();
                        s.dedup();
                        s.len()
                    })
                    .max()
                    .unwrap_or(0);
                best = best.min(loc);
            }
            let mut i = 0;
            loop {
                if i == n {
                    return best;
                }
                c[i] += 1;
                if c[i] < n {
                    break;
                }
                c[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn examples() {
        assert_eq!(local_chromatic_number(&kneser(6, 3).unwrap()).unwrap().value, 2);
        assert_eq!(local_chromatic_number(&cycle(5).unwrap()).unwrap().value, 3);
        assert_eq!(local_chromatic_number(&edgeless(4).unwrap()).unwrap().value, 1);
        assert_eq!(local_chromatic_number(&complete(4).unwrap()).unwrap().value, 4);
    }

    #[test]
    fn schrijver_local_equals_chromatic() {
        for n in 4..=7 {
            let g = schrijver(n, 2).unwrap();
            let r = local_chromatic_number(&g).unwrap();
            assert_eq!(r.value, n - 2, "S({n},2)");
            assert_eq!(locality_of_coloring(&g, &r.witness).unwrap(), r.value);
        }
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        for seed in 0..25 {
            let g = random_graph(6, 0.5, seed).unwrap();
            let r = local_chromatic_number(&g).unwrap();
            assert_eq!(r.value, brute_local(&g), "seed {seed}");
            assert_eq!(locality_of_coloring(&g, &r.witness).unwrap(), r.value);
        }
    }

    #[test]
    fn decision_is_monotone() {
        let g = schrijver(6, 2).unwrap();
        assert!(locality_coloring(&g, 3).unwrap().is_none());
        let c = locality_coloring(&g, 4).unwrap().unwrap();
        assert!(locality_of_coloring(&g, &c).unwrap() <= 4);
        assert!(locality_coloring(&g, 5).unwrap().is_some());
    }
}
