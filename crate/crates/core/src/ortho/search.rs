//! Backtracking searches for representations over a prime field, with
//! vectors taken up to scalar multiples.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::graph::Graph;
use crate::linalg::{nullspace_basis, odometer_next, Basis, Extend, Mat};

/// Bounds on the candidate vector pools.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_points: usize,
    /// Candidate vectors tried per decision; exceeding it is a `CapExceeded`
    /// error.
    pub max_nodes: Option<usize>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_points: 1 << 17,
            max_nodes: None,
        }
    }
}

impl SearchLimits {
    fn tick(&self, nodes: &mut usize) -> Result<()> {
        *nodes += 1;
        match self.max_nodes {
            Some(cap) if *nodes > cap => Err(Error::CapExceeded {
                what: "search nodes",
                got: *nodes,
                cap,
            }),
            _ => Ok(()),
        }
    }
}

/// Number of projective points of `F_q^t`, saturating.
pub fn projective_count(q: usize, t: usize) -> usize {
    let mut total: usize = 0;
    let mut pow: usize = 1;
    for _ in 0..t {
        total = total.saturating_add(pow);
        pow = pow.saturating_mul(q);
    }
    total
}

fn check_pool(f: &PrimeField, t: usize, limits: SearchLimits) -> Result<()> {
    let got = projective_count(f.order(), t);
    if got > limits.max_points {
        return Err(Error::CapExceeded {
            what: "projective points",
            got,
            cap: limits.max_points,
        });
    }
    Ok(())
}

/// Nonzero vectors of `F^t` whose first nonzero coordinate is 1, in
/// lexicographic order.
pub fn projective_points(f: &PrimeField, t: usize) -> Vec<Vec<u8>> {
    let q = f.p() as u8;
    let mut out = Vec::with_capacity(projective_count(f.order(), t));
    for lead in (0..t).rev() {
        let mut tail = vec![0u8; t - lead - 1];
        loop {
            let mut x = vec![0u8; t];
            x[lead] = 1;
            x[lead + 1..].copy_from_slice(&tail);
            out.push(x);
            if !odometer_next(&mut tail, q) {
                break;
            }
        }
    }
    out
}

/// Projective points that are not self-orthogonal.
pub fn anisotropic_points(f: &PrimeField, t: usize) -> Vec<Vec<u8>> {
    projective_points(f, t)
        .into_iter()
        .filter(|x| f.dot(x, x) != 0)
        .collect()
}

/// One point per orbit under coordinate permutations and scalars.
fn orbit_representatives(f: &PrimeField, points: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let mut reps: Vec<Vec<u8>> = points
        .iter()
        .map(|x| {
            let mut best: Option<Vec<u8>> = None;
            for c in 1..f.p() as u8 {
                let mut y: Vec<u8> = x.iter().map(|&a| ((a as u32 * c as u32) % f.p()) as u8).collect();
                y.sort_unstable_by(|a, b| b.cmp(a));
                if best.as_ref().is_none_or(|b| y > *b) {
                    best = Some(y);
                }
            }
            let mut y = best.expect("p >= 2");
            f.normalize(&mut y);
            y
        })
        .collect();
    reps.sort();
    reps.dedup();
    reps
}

/// Static vertex order: start at a maximum-degree vertex, then repeatedly
/// take the vertex with the most placed neighbours, ties by degree.
pub(crate) fn search_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut placed = vec![false; n];
    let mut seen = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (seen[v], g.degree(v), std::cmp::Reverse(v)))
            .expect("unplaced vertex remains");
        placed[v] = true;
        order.push(v);
        for w in g.neighbors(v) {
            seen[w] += 1;
        }
    }
    order
}

/// An orthogonal representation in `F^t`, if one exists.
pub fn find_orthogonal_rep(g: &Graph, f: &PrimeField, t: usize, limits: SearchLimits) -> Result<Option<Vec<Vec<u8>>>> {
    check_pool(f, t, limits)?;
    let pool = anisotropic_points(f, t);
    let reps = orbit_representatives(f, &pool);
    let order = search_order(g);
    let mut vecs: Vec<Option<usize>> = vec![None; g.n()];
    let mut st = OrthoSearch {
        g,
        f,
        pool: &pool,
        reps: &reps,
        order: &order,
        vecs: &mut vecs,
    };
    Ok(if st.run(0) {
        Some(vecs.iter().map(|i| pool[i.expect("assigned")].clone()).collect())
    } else {
        None
    })
}

struct OrthoSearch<'a> {
    g: &'a Graph,
    f: &'a PrimeField,
    pool: &'a [Vec<u8>],
    reps: &'a [Vec<u8>],
    order: &'a [usize],
    vecs: &'a mut Vec<Option<usize>>,
}

impl OrthoSearch<'_> {
    fn run(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            return true;
        }
        let v = self.order[i];
        let nbrs: Vec<usize> = self.g.neighbors(v).filter_map(|w| self.vecs[w]).collect();
        if nbrs.is_empty() {
            for r in self.reps {
                let idx = self.pool.binary_search(r).unwrap_or_else(|_| self.index_of(r));
                self.vecs[v] = Some(idx);
                if self.run(i + 1) {
                    return true;
                }
            }
        } else {
            for idx in 0..self.pool.len() {
                let x = &self.pool[idx];
                if nbrs.iter().all(|&w| self.f.dot(x, &self.pool[w]) == 0) {
                    self.vecs[v] = Some(idx);
                    if self.run(i + 1) {
                        return true;
                    }
                }
            }
        }
        self.vecs[v] = None;
        false
    }

    fn index_of(&self, x: &[u8]) -> usize {
        self.pool.iter().position(|y| y == x).expect("representative in pool")
    }
}

/// Calls `visit` on every orthogonal representation in `F^t` with vectors
/// normalized (first nonzero coordinate 1). Stops early when `visit`
/// returns false. Returns the number of representations visited.
pub fn for_each_orthogonal_rep(
    g: &Graph,
    f: &PrimeField,
    t: usize,
    limits: SearchLimits,
    mut visit: impl FnMut(&[Vec<u8>]) -> bool,
) -> Result<u64> {
    check_pool(f, t, limits)?;
    let pool = anisotropic_points(f, t);
    let order = search_order(g);
    let mut cur: Vec<Vec<u8>> = vec![Vec::new(); g.n()];
    let mut count = 0u64;
    enumerate_all(g, f, &pool, &order, 0, &mut cur, &mut count, &mut visit);
    Ok(count)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_all(
    g: &Graph,
    f: &PrimeField,
    pool: &[Vec<u8>],
    order: &[usize],
    i: usize,
    cur: &mut Vec<Vec<u8>>,
    count: &mut u64,
    visit: &mut impl FnMut(&[Vec<u8>]) -> bool,
) -> bool {
    if i == order.len() {
        *count += 1;
        return visit(cur);
    }
    let v = order[i];
    let placed: Vec<usize> = order[..i].to_vec();
    for x in pool {
        if placed.iter().all(|&w| !g.has_edge(v, w) || f.dot(x, &cur[w]) == 0) {
            cur[v] = x.clone();
            if !enumerate_all(g, f, pool, order, i + 1, cur, count, visit) {
                return false;
            }
        }
    }
    cur[v] = Vec::new();
    true
}

/// All projective points of the span of `b`.
fn span_points(f: &PrimeField, b: &Basis<PrimeField>, t: usize) -> Vec<Vec<u8>> {
    let q = f.p() as u8;
    let r = b.len();
    let mut coeffs = vec![0u8; r];
    let mut out = Vec::new();
    while odometer_next(&mut coeffs, q) {
        let mut x = vec![0u8; t];
        for (c, row) in coeffs.iter().zip(b.rows()) {
            if *c == 0 {
                continue;
            }
            for (xi, ri) in x.iter_mut().zip(row) {
                *xi = ((*xi as u32 + *c as u32 * *ri as u32) % f.p()) as u8;
            }
        }
        if f.is_normalized(&x) {
            out.push(x);
        }
    }
    out.sort();
    out
}

/// An orthogonal representation in `F^t` with every closed neighbourhood
/// spanning at most `ell` dimensions, if one exists.
pub fn find_local_rep(
    g: &Graph,
    f: &PrimeField,
    ell: usize,
    t: usize,
    limits: SearchLimits,
) -> Result<Option<Vec<Vec<u8>>>> {
    if g.n() == 0 {
        return Ok(Some(Vec::new()));
    }
    if ell == 0 || t == 0 {
        return Ok(None);
    }
    check_pool(f, t, limits)?;
    let reps = orbit_representatives(f, &anisotropic_points(f, t));
    let order = search_order(g);
    let mut st = LocalSearch {
        g,
        f: *f,
        ell,
        t,
        reps,
        order,
        vecs: vec![None; g.n()],
        // span of placed vectors on N[u] (placed u) or N(u) (unplaced u)
        spans: (0..g.n()).map(|_| Basis::new(*f, t)).collect(),
        limits,
        nodes: 0,
    };
    Ok(if st.run(0)? {
        Some(st.vecs.into_iter().map(|x| x.expect("assigned")).collect())
    } else {
        None
    })
}

enum Source {
    Reps,
    List(Vec<Vec<u8>>),
}

struct LocalSearch<'a> {
    g: &'a Graph,
    f: PrimeField,
    ell: usize,
    t: usize,
    reps: Vec<Vec<u8>>,
    order: Vec<usize>,
    vecs: Vec<Option<Vec<u8>>>,
    spans: Vec<Basis<PrimeField>>,
    limits: SearchLimits,
    nodes: usize,
}

impl LocalSearch<'_> {
    /// Largest span size allowed for `u` before its own vector is placed.
    fn limit(&self, u: usize) -> usize {
        if self.vecs[u].is_some() {
            self.ell
        } else {
            self.ell - 1
        }
    }

    /// Candidate vectors for `v`: orbit representatives when no neighbour
    /// is placed, else the anisotropic points of the smaller of a full
    /// neighbourhood span containing `v` and the orthogonal complement of
    /// the placed neighbours.
    fn candidates(&self, v: usize) -> Result<Source> {
        let placed: Vec<Vec<u8>> = self.g.neighbors(v).filter_map(|w| self.vecs[w].clone()).collect();
        if placed.is_empty() {
            return Ok(Source::Reps);
        }
        let perp = nullspace_basis(&Mat::from_rows(self.f, self.t, &placed)?);
        let mut best = perp;
        for u in self.g.neighbors(v) {
            if self.spans[u].len() == self.limit(u) && self.spans[u].len() < best.len() {
                best = self.spans[u].clone();
            }
        }
        Ok(Source::List(
            span_points(&self.f, &best, self.t)
                .into_iter()
                .filter(|x| self.f.dot(x, x) != 0)
                .collect(),
        ))
    }

    fn admissible(&self, v: usize, x: &[u8]) -> Result<bool> {
        for w in self.g.neighbors(v) {
            if let Some(y) = &self.vecs[w] {
                if self.f.dot(x, y) != 0 {
                    return Ok(false);
                }
            }
        }
        for u in self.g.neighbors(v) {
            if self.spans[u].len() >= self.limit(u) && !self.spans[u].contains(x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn run(&mut self, i: usize) -> Result<bool> {
        if i == self.order.len() {
            return Ok(true);
        }
        let v = self.order[i];
        if self.spans[v].len() >= self.ell || self.spans[v].len() >= self.t {
            return Ok(false);
        }
        let touched = self.g.closed_neighborhood(v);
        let src = self.candidates(v)?;
        let count = match &src {
            Source::Reps => self.reps.len(),
            Source::List(l) => l.len(),
        };
        for k in 0..count {
            self.limits.tick(&mut self.nodes)?;
            let x = match &src {
                Source::Reps => self.reps[k].clone(),
                Source::List(l) => l[k].clone(),
            };
            if !self.admissible(v, &x)? {
                continue;
            }
            let saved: Vec<Basis<PrimeField>> = touched.iter().map(|&u| self.spans[u].clone()).collect();
            self.vecs[v] = Some(x.clone());
            let mut ok = true;
            for &u in &touched {
                if let Extend::Added = self.spans[u].extend(&x)? {
                    if self.spans[u].len() > self.limit(u) {
                        ok = false;
                    }
                }
            }
            if ok && self.run(i + 1)? {
                return Ok(true);
            }
            self.vecs[v] = None;
            for (&u, b) in touched.iter().zip(saved) {
                self.spans[u] = b;
            }
        }
        Ok(false)
    }
}

/// An independent representation in `F^t`, if one exists.
///
/// Up to a change of basis, each new vector either lies in the span of the
/// vectors placed so far, which is `span(e_1..e_d)`, or equals `e_{d+1}`.
pub fn find_independent_rep(g: &Graph, f: &PrimeField, t: usize, limits: SearchLimits) -> Result<Option<Vec<Vec<u8>>>> {
    if g.n() == 0 {
        return Ok(Some(Vec::new()));
    }
    if t == 0 {
        return Ok(None);
    }
    check_pool(f, t, limits)?;
    let pools: Vec<Vec<Vec<u8>>> = (0..=t)
        .map(|d| {
            projective_points(f, d)
                .into_iter()
                .map(|mut x| {
                    x.resize(t, 0);
                    x
                })
                .collect()
        })
        .collect();
    let mut st = IndepSearch {
        g,
        t,
        pools,
        order: search_order(g),
        vecs: vec![None; g.n()],
        spans: (0..g.n()).map(|_| Basis::new(*f, t)).collect(),
        limits,
        nodes: 0,
    };
    Ok(if st.run(0, 0)? {
        Some(st.vecs.into_iter().map(|x| x.expect("assigned")).collect())
    } else {
        None
    })
}

struct IndepSearch<'a> {
    g: &'a Graph,
    t: usize,
    pools: Vec<Vec<Vec<u8>>>,
    order: Vec<usize>,
    vecs: Vec<Option<Vec<u8>>>,
    // span of placed neighbour vectors
    spans: Vec<Basis<PrimeField>>,
    limits: SearchLimits,
    nodes: usize,
}

impl IndepSearch<'_> {
    fn run(&mut self, i: usize, d: usize) -> Result<bool> {
        if i == self.order.len() {
            return Ok(true);
        }
        let v = self.order[i];
        let mut cands: Vec<(Vec<u8>, usize)> = self.pools[d].iter().map(|x| (x.clone(), d)).collect();
        if d < self.t {
            let mut e = vec![0u8; self.t];
            e[d] = 1;
            cands.push((e, d + 1));
        }
        let nbrs: Vec<usize> = self.g.neighbors(v).collect();
        for (x, nd) in cands {
            self.limits.tick(&mut self.nodes)?;
            if self.spans[v].contains(&x)? {
                continue;
            }
            let mut saved = Vec::with_capacity(nbrs.len());
            let mut ok = true;
            for &w in &nbrs {
                saved.push(self.spans[w].clone());
                self.spans[w].extend(&x)?;
                match &self.vecs[w] {
                    Some(y) => {
                        if self.spans[w].contains(y)? {
                            ok = false;
                        }
                    }
                    None => {
                        if self.spans[w].len() >= self.t {
                            ok = false;
                        }
                    }
                }
            }
            if ok {
                self.vecs[v] = Some(x);
                if self.run(i + 1, nd)? {
                    return Ok(true);
                }
                self.vecs[v] = None;
            }
            for (&w, b) in nbrs.iter().zip(saved) {
                self.spans[w] = b;
            }
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, edgeless, kneser, path};
    use crate::ortho::{verify_independent, verify_orthogonal, RepKind, VectorRepresentation};

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn rep(f: PrimeField, t: usize, v: Vec<Vec<u8>>, kind: RepKind) -> VectorRepresentation<PrimeField> {
        VectorRepresentation::new(f, t, v, kind).unwrap()
    }

    #[test]
    fn point_counts() {
        assert_eq!(projective_points(&gf(2), 3).len(), 7);
        assert_eq!(projective_points(&gf(3), 3).len(), 13);
        assert_eq!(projective_points(&gf(5), 2).len(), 6);
        // odd-weight vectors of GF(2)^4
        assert_eq!(anisotropic_points(&gf(2), 4).len(), 8);
        for x in projective_points(&gf(3), 3) {
            assert!(gf(3).is_normalized(&x));
        }
    }

    #[test]
    fn orthogonal_search_examples() {
        let l = SearchLimits::default();
        let f = gf(2);
        let c5 = cycle(5).unwrap();
        assert!(find_orthogonal_rep(&c5, &f, 2, l).unwrap().is_none());
        let w = find_orthogonal_rep(&c5, &f, 3, l).unwrap().unwrap();
        assert_eq!(
            verify_orthogonal(&c5, &rep(f, 3, w, RepKind::Orthogonal)).unwrap(),
            None
        );
        let k4 = complete(4).unwrap();
        assert!(find_orthogonal_rep(&k4, &f, 3, l).unwrap().is_none());
        assert!(find_orthogonal_rep(&k4, &f, 4, l).unwrap().is_some());
    }

    #[test]
    fn local_search_examples() {
        let l = SearchLimits::default();
        let f = gf(2);
        let c5 = cycle(5).unwrap();
        for t in 2..=5 {
            assert!(find_local_rep(&c5, &f, 2, t, l).unwrap().is_none(), "t = {t}");
        }
        let w = find_local_rep(&c5, &f, 3, 3, l).unwrap().unwrap();
        let r = rep(f, 3, w, RepKind::Orthogonal);
        assert_eq!(crate::ortho::locality_of_rep(&c5, &r).unwrap(), 3);
        let p = path(5).unwrap();
        let w = find_local_rep(&p, &gf(3), 2, 4, l).unwrap().unwrap();
        let r = rep(gf(3), 4, w, RepKind::Orthogonal);
        assert!(crate::ortho::locality_of_rep(&p, &r).unwrap() <= 2);
    }

    #[test]
    fn petersen_has_no_locality_two() {
        let g = kneser(5, 2).unwrap();
        assert!(find_local_rep(&g, &gf(2), 2, 6, SearchLimits::default())
            .unwrap()
            .is_none());
    }

    #[test]
    fn independent_search_examples() {
        let l = SearchLimits::default();
        let f = gf(2);
        // complement of C5 is C5
        let c5 = cycle(5).unwrap();
        assert!(find_independent_rep(&c5, &f, 2, l).unwrap().is_none());
        let w = find_independent_rep(&c5, &f, 3, l).unwrap().unwrap();
        assert_eq!(
            verify_independent(&c5, &rep(f, 3, w, RepKind::Independent)).unwrap(),
            None
        );
        let e = edgeless(4).unwrap();
        assert!(find_independent_rep(&e, &f, 1, l).unwrap().is_some());
        let k4 = complete(4).unwrap();
        assert!(find_independent_rep(&k4, &gf(3), 3, l).unwrap().is_none());
        assert!(find_independent_rep(&k4, &gf(3), 4, l).unwrap().is_some());
    }

    #[test]
    fn enumeration_counts_single_edge() {
        // K2 over GF(2) in F^2: anisotropic points are 01 and 10
        let g = complete(2).unwrap();
        let n = for_each_orthogonal_rep(&g, &gf(2), 2, SearchLimits::default(), |_| true).unwrap();
        assert_eq!(n, 2);
        // over GF(3) in F^2: 4 points, 11 and 12 isotropic? 1+1=2, 1+4=2: all anisotropic
        // orthogonal pairs: (01,10), (10,01), (11,12), (12,11)
        let n = for_each_orthogonal_rep(&g, &gf(3), 2, SearchLimits::default(), |_| true).unwrap();
        assert_eq!(n, 4);
    }

    #[test]
    fn pool_cap_enforced() {
        let l = SearchLimits {
            max_points: 10,
            max_nodes: None,
        };
        assert!(matches!(
            find_local_rep(&cycle(5).unwrap(), &gf(3), 2, 3, l),
            Err(Error::CapExceeded { .. })
        ));
        let l = SearchLimits {
            max_nodes: Some(5),
            ..Default::default()
        };
        assert!(matches!(
            find_local_rep(&kneser(5, 2).unwrap(), &gf(2), 2, 6, l),
            Err(Error::CapExceeded {
                what: "search nodes",
                ..
            })
        ));
    }
}
