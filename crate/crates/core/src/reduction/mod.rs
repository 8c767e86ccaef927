//! Graphs built from a CNF formula whose 3-colorability (and, through the
//! H gadgets, local orthogonality dimension 3) tracks satisfiability.
//!
//! Vertex numbering is fixed: `w = 0`, `t = 1`, `f = 2`, then `x_i` and
//! `¬x_i` for each variable, then OR gadget vertices clause by clause, then
//! the H gadget blocks `(a, b, c, d)` for `i ∈ {w, t, f}` and each other
//! vertex `j` of the base graph, then the extra clique.

mod cnf;
mod gadget;

use serde::{Deserialize, Serialize};

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub use cnf::CnfFormula;
pub use gadget::{certify_gadget_lemma, certify_mutated_gadget, h_gadget, GadgetReport, MatchingEdge};

pub const W: usize = 0;
pub const T: usize = 1;
pub const F: usize = 2;

/// What a vertex of a reduction graph stands for. Clause and position
/// indices are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "role")]
pub enum Role {
    W,
    T,
    F,
    Literal { var: usize, positive: bool },
    OrTop { clause: usize, pos: usize },
    OrMid { clause: usize, pos: usize, side: usize },
    HA { i: usize, j: usize },
    HB { i: usize, j: usize },
    HC { i: usize, j: usize },
    HD { i: usize, j: usize },
    CliqueExtra { idx: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Stage {
    G,
    GPrime,
    Gk(usize),
}

/// A reduction graph with its role map.
#[derive(Clone, Debug)]
pub struct GadgetGraph {
    pub graph: Graph,
    pub roles: Vec<Role>,
    pub stage: Stage,
    /// Number of vertices of the base graph `G`.
    pub base_len: usize,
    /// `(top, mid1, mid2, base1, base2)` for every OR gadget, in order.
    or_gadgets: Vec<[usize; 5]>,
}

impl GadgetGraph {
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Vertex of literal `l` (signed, 1-based variable).
    pub fn literal_vertex(l: i32) -> usize {
        3 + 2 * (l.unsigned_abs() as usize - 1) + usize::from(l < 0)
    }

    /// `(i, j, a, b, c, d)` for every H gadget.
    pub fn h_blocks(&self) -> Vec<[usize; 6]> {
        let mut out = Vec::new();
        for (v, r) in self.roles.iter().enumerate() {
            if let Role::HA { i, j } = *r {
                out.push([i, j, v, v + 1, v + 2, v + 3]);
            }
        }
        out
    }
}

pub fn build_g(phi: &CnfFormula) -> Result<GadgetGraph> {
    let k = phi.num_vars();
    let mut roles = vec![Role::W, Role::T, Role::F];
    for var in 1..=k {
        roles.push(Role::Literal { var, positive: true });
        roles.push(Role::Literal { var, positive: false });
    }
    let mut edges = vec![(W, T), (W, F), (T, F)];
    for var in 1..=k {
        let p = GadgetGraph::literal_vertex(var as i32);
        edges.extend([(p, p + 1), (p, W), (p + 1, W)]);
    }
    let mut or_gadgets = Vec::new();
    for (ci, clause) in phi.padded_clauses().iter().enumerate() {
        let r = clause.len();
        let mut prev = GadgetGraph::literal_vertex(clause[0]);
        for pos in 0..r - 1 {
            let last = pos == r - 2;
            let top = if last {
                T
            } else {
                roles.push(Role::OrTop { clause: ci, pos });
                roles.len() - 1
            };
            roles.push(Role::OrMid {
                clause: ci,
                pos,
                side: 0,
            });
            let m1 = roles.len() - 1;
            roles.push(Role::OrMid {
                clause: ci,
                pos,
                side: 1,
            });
            let m2 = roles.len() - 1;
            let b2 = GadgetGraph::literal_vertex(clause[pos + 1]);
            edges.extend([(top, m1), (top, m2), (m1, m2), (m1, prev), (m2, b2), (top, W)]);
            or_gadgets.push([top, m1, m2, prev, b2]);
            prev = top;
        }
    }
    let mut g = Graph::new(roles.len())?;
    for (u, v) in edges {
        g.add_edge(u, v)?;
    }
    let n = g.n();
    let expected = 3
        + 2 * k
        + phi
            .padded_clauses()
            .iter()
            .map(|c| 3 * (c.len() - 1) - 1)
            .sum::<usize>();
    if n != expected {
        return Err(Error::InvalidGraph(format!("built {n} vertices, expected {expected}")));
    }
    Ok(GadgetGraph {
        graph: g,
        roles,
        stage: Stage::G,
        base_len: n,
        or_gadgets,
    })
}

pub fn build_g_prime(phi: &CnfFormula) -> Result<GadgetGraph> {
    let base = build_g(phi)?;
    let n0 = base.n();
    let mut roles = base.roles.clone();
    let mut edges = base.graph.edges();
    for i in [W, T, F] {
        for j in 3..n0 {
            let a = roles.len();
            let (b, c, d) = (a + 1, a + 2, a + 3);
            roles.extend([
                Role::HA { i, j },
                Role::HB { i, j },
                Role::HC { i, j },
                Role::HD { i, j },
            ]);
            edges.extend([(i, a), (i, b), (a, b), (j, d), (j, c), (d, c), (i, d), (a, j), (b, c)]);
        }
    }
    let mut g = Graph::new(roles.len())?;
    for (u, v) in edges {
        g.add_edge(u, v)?;
    }
    Ok(GadgetGraph {
        graph: g,
        roles,
        stage: Stage::GPrime,
        base_len: n0,
        or_gadgets: base.or_gadgets,
    })
}

pub fn build_gk(phi: &CnfFormula, k: usize) -> Result<GadgetGraph> {
    if k < 4 {
        return Err(Error::Precondition(format!("k = {k} must be at least 4")));
    }
    let gp = build_g_prime(phi)?;
    let n1 = gp.n();
    let mut roles = gp.roles.clone();
    roles.extend((0..k - 3).map(|idx| Role::CliqueExtra { idx }));
    let mut g = Graph::new(roles.len())?;
    for (u, v) in gp.graph.edges() {
        g.add_edge(u, v)?;
    }
    for x in n1..roles.len() {
        for y in 0..x {
            g.add_edge(x, y)?;
        }
    }
    Ok(GadgetGraph {
        graph: g,
        roles,
        stage: Stage::Gk(k),
        base_len: gp.base_len,
        or_gadgets: gp.or_gadgets,
    })
}

pub fn build(phi: &CnfFormula, stage: Stage) -> Result<GadgetGraph> {
    match stage {
        Stage::G => build_g(phi),
        Stage::GPrime => build_g_prime(phi),
        Stage::Gk(k) => build_gk(phi, k),
    }
}

/// Proper coloring of `gg` from a satisfying assignment: `w`, `t`, `f` get
/// colors 0, 1, 2, literals follow their truth value, and extra clique
/// vertices get colors 3 onward.
pub fn assignment_to_coloring(phi: &CnfFormula, gg: &GadgetGraph, assignment: &[bool]) -> Result<Coloring> {
    if let Some(ci) = phi.first_falsified(assignment)? {
        return Err(Error::Unsatisfied(ci));
    }
    const NONE: usize = usize::MAX;
    let mut col = vec![NONE; gg.n()];
    col[W] = W;
    col[T] = T;
    col[F] = F;
    for (var, &val) in assignment.iter().enumerate() {
        let p = GadgetGraph::literal_vertex(var as i32 + 1);
        col[p] = if val { T } else { F };
        col[p + 1] = if val { F } else { T };
    }
    for &[top, m1, m2, b1, b2] in &gg.or_gadgets {
        let want_top = if col[b1] == T || col[b2] == T { T } else { F };
        if top == T && want_top != T {
            return Err(Error::Precondition("OR chain ends false on a satisfied clause".into()));
        }
        col[top] = want_top;
        let (x, y) = (0..3)
            .flat_map(|x| (0..3).map(move |y| (x, y)))
            .find(|&(x, y)| x != y && x != want_top && y != want_top && x != col[b1] && y != col[b2])
            .ok_or_else(|| Error::Precondition("OR gadget cannot be extended".into()))?;
        col[m1] = x;
        col[m2] = y;
    }
    for [i, j, a, b, c, d] in gg.h_blocks() {
        let (ci, cj) = (col[i], col[j]);
        if ci == cj {
            let others: Vec<usize> = (0..3).filter(|&x| x != ci).collect();
            col[a] = others[0];
            col[c] = others[0];
            col[b] = others[1];
            col[d] = others[1];
        } else {
            let third = 3 - ci - cj;
            col[c] = ci;
            col[b] = cj;
            col[a] = third;
            col[d] = third;
        }
    }
    for (v, r) in gg.roles.iter().enumerate() {
        if let Role::CliqueExtra { idx } = r {
            col[v] = 3 + idx;
        }
    }
    let c = Coloring::new(col)?;
    c.check_proper(&gg.graph)?;
    Ok(c)
}

/// Reads the assignment off a proper 3-coloring: a variable is true when
/// its positive literal has the color of `t`. Any stage is accepted; only
/// the base graph is inspected.
pub fn coloring_to_assignment(phi: &CnfFormula, gg: &GadgetGraph, c: &Coloring) -> Result<Vec<bool>> {
    c.check_proper(&gg.graph)?;
    let base: Vec<usize> = (0..gg.base_len).collect();
    let sub = gg.graph.induced(&base);
    let restricted = Coloring::normalized(&c.colors()[..gg.base_len]);
    restricted.check_proper(&sub)?;
    if restricted.num_colors() > 3 {
        return Err(Error::ImproperColoring(format!(
            "base graph uses {} colors",
            restricted.num_colors()
        )));
    }
    let tc = c.color(T);
    let assignment: Vec<bool> = (1..=phi.num_vars())
        .map(|v| c.color(GadgetGraph::literal_vertex(v as i32)) == tc)
        .collect();
    if let Some(ci) = phi.first_falsified(&assignment)? {
        return Err(Error::Unsatisfied(ci));
    }
    Ok(assignment)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::k_coloring;
    use proptest::prelude::*;

    fn sat_brute(phi: &CnfFormula) -> Option<Vec<bool>> {
        let k = phi.num_vars();
        (0u32..1 << k)
            .map(|m| (0..k).map(|i| m >> i & 1 == 1).collect::<Vec<bool>>())
            .find(|a| phi.is_satisfied_by(a).unwrap())
    }

    fn or2() -> CnfFormula {
        CnfFormula::new(2, vec![vec![1, 2]]).unwrap()
    }

    #[test]
    fn vertex_counts() {
        assert_eq!(build_g(&or2()).unwrap().n(), 9);
        let three = CnfFormula::new(3, vec![vec![1, 2, 3]]).unwrap();
        assert_eq!(build_g(&three).unwrap().n(), 14);
        assert_eq!(build_g_prime(&or2()).unwrap().n(), 81);
        assert_eq!(build_gk(&or2(), 5).unwrap().n(), 83);
        assert_eq!(build_gk(&or2(), 4).unwrap().n(), 82);
        assert!(build_gk(&or2(), 3).is_err());
    }

    #[test]
    fn gadget_edges_and_extra_clique() {
        let gp = build_g_prime(&or2()).unwrap();
        for [i, j, a, b, c, d] in gp.h_blocks() {
            let vs = [i, j, a, b, c, d];
            let internal = vs
                .iter()
                .enumerate()
                .flat_map(|(x, &u)| vs[x + 1..].iter().map(move |&v| (u, v)))
                .filter(|&(u, v)| gp.graph.has_edge(u, v))
                .count();
            // i–j may already be an edge of G (w–literal); it is not a gadget edge
            let base = usize::from(gp.graph.has_edge(i, j));
            assert_eq!(internal - base, 9);
        }
        assert_eq!(gp.h_blocks().len(), 18);
        let gk = build_gk(&or2(), 5).unwrap();
        for x in 81..83 {
            assert_eq!(gk.graph.degree(x), 82);
        }
    }

    #[test]
    fn roles_are_consistent() {
        let phi = CnfFormula::new(3, vec![vec![1, -2, 3], vec![-1]]).unwrap();
        let gg = build_g(&phi).unwrap();
        assert_eq!(
            gg.roles[GadgetGraph::literal_vertex(-2)],
            Role::Literal {
                var: 2,
                positive: false
            }
        );
        let tops = gg.roles.iter().filter(|r| matches!(r, Role::OrTop { .. })).count();
        assert_eq!(tops, 1);
        let mids = gg.roles.iter().filter(|r| matches!(r, Role::OrMid { .. })).count();
        assert_eq!(mids, 6);
    }

    #[test]
    fn single_or_example() {
        let phi = or2();
        let gp = build_g_prime(&phi).unwrap();
        let c = assignment_to_coloring(&phi, &gp, &[true, false]).unwrap();
        assert_eq!(c.num_colors(), 3);
        assert_eq!(c.color(T), T);
        let back = coloring_to_assignment(&phi, &gp, &c).unwrap();
        assert_eq!(back, vec![true, false]);
        assert!(matches!(
            assignment_to_coloring(&phi, &gp, &[false, false]),
            Err(Error::Unsatisfied(0))
        ));
    }

    #[test]
    fn h_gadget_patterns() {
        let phi = or2();
        let gp = build_g_prime(&phi).unwrap();
        let c = assignment_to_coloring(&phi, &gp, &[true, true]).unwrap();
        for [i, j, a, b, cc, d] in gp.h_blocks() {
            let col = |v: usize| c.color(v);
            if col(i) == col(j) {
                assert_eq!((col(a), col(b)), (col(cc), col(d)));
            } else {
                assert_eq!((col(i), col(a), col(j)), (col(cc), col(d), col(b)));
            }
        }
    }

    #[test]
    fn contradiction_needs_four_colors() {
        let phi = CnfFormula::new(1, vec![vec![1], vec![-1]]).unwrap();
        let g = build_g(&phi).unwrap();
        assert!(k_coloring(&g.graph, 3).unwrap().is_none());
        assert!(k_coloring(&g.graph, 4).unwrap().is_some());
    }

    #[test]
    fn gk_coloring_uses_k_colors() {
        let phi = or2();
        let gk = build_gk(&phi, 4).unwrap();
        let c = assignment_to_coloring(&phi, &gk, &[false, true]).unwrap();
        assert_eq!(c.num_colors(), 4);
    }

    fn formula() -> impl Strategy<Value = CnfFormula> {
        (1usize..=4).prop_flat_map(|k| {
            let clause = prop::collection::btree_set(1..=k as i32, 1..=k.min(3)).prop_flat_map(|vars| {
                let vars: Vec<i32> = vars.into_iter().collect();
                let n = vars.len();
                prop::collection::vec(any::<bool>(), n).prop_map(move |signs| {
                    vars.iter()
                        .zip(signs)
                        .map(|(&v, s)| if s { v } else { -v })
                        .collect::<Vec<i32>>()
                })
            });
            prop::collection::vec(clause, 1..=4).prop_map(move |cs| CnfFormula::new(k, cs).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn counts_match_closed_form(phi in formula()) {
            let g = build_g(&phi).unwrap();
            let n0 = 3 + 2 * phi.num_vars()
                + phi.padded_clauses().iter().map(|c| 3 * (c.len() - 1) - 1).sum::<usize>();
            prop_assert_eq!(g.n(), n0);
            let m0 = 3 + 3 * phi.num_vars()
                + phi.padded_clauses().iter().map(|c| 6 * (c.len() - 1) - 1).sum::<usize>();
            prop_assert_eq!(g.graph.edge_count(), m0);
            let gp = build_g_prime(&phi).unwrap();
            prop_assert_eq!(gp.n(), n0 + 12 * (n0 - 3));
            let m1 = m0 + 27 * (n0 - 3);
            prop_assert_eq!(gp.graph.edge_count(), m1);
        }

        #[test]
        fn satisfiable_iff_three_colorable(phi in formula()) {
            let g = build_g(&phi).unwrap();
            let sat = sat_brute(&phi);
            let col = k_coloring(&g.graph, 3).unwrap();
            prop_assert_eq!(sat.is_some(), col.is_some());
            if let Some(c) = col {
                let a = coloring_to_assignment(&phi, &g, &c).unwrap();
                prop_assert!(phi.is_satisfied_by(&a).unwrap());
            }
            if let Some(a) = sat {
                let gp = build_g_prime(&phi).unwrap();
                let c = assignment_to_coloring(&phi, &gp, &a).unwrap();
                prop_assert_eq!(c.num_colors(), 3);
                let back = coloring_to_assignment(&phi, &gp, &c).unwrap();
                prop_assert!(phi.is_satisfied_by(&back).unwrap());
            }
        }
    }
}
