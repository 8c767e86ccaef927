//! Dense vectors and matrices over a [`Field`]: rank, span membership,
//! nullspaces, affine solves, and the structured vector families used by
//! the index-coding constructions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Mat {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = m.field.one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(field: F, cols: usize, rows: &[Vec<F::Elem>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::LengthMismatch(r.len(), cols));
            }
            data.extend_from_slice(r);
        }
        Ok(Mat {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if x.len() != self.cols {
            return Err(Error::LengthMismatch(x.len(), self.cols));
        }
        Ok((0..self.rows).map(|i| dot(&self.field, self.row(i), x)).collect())
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }
}

impl<F: Field> std::ops::Index<(usize, usize)> for Mat<F> {
    type Output = F::Elem;
    fn index(&self, (i, j): (usize, usize)) -> &F::Elem {
        &self.data[i * self.cols + j]
    }
}

impl<F: Field> std::ops::IndexMut<(usize, usize)> for Mat<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F::Elem {
        &mut self.data[i * self.cols + j]
    }
}

pub(crate) fn dot<F: Field>(f: &F, x: &[F::Elem], y: &[F::Elem]) -> F::Elem {
    x.iter().zip(y).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
}

/// Row rank by Gaussian elimination; pivots are the first nonzero entry
/// in column-then-row scan order.
pub fn rank<F: Field>(m: &Mat<F>) -> usize {
    let mut basis = Basis::new(m.field.clone(), m.cols);
    for i in 0..m.rows {
        basis.insert_unchecked(m.row(i).to_vec());
    }
    basis.len()
}

/// Rank of a list of vectors of a common length.
pub fn rank_of<F: Field>(field: &F, vectors: &[Vec<F::Elem>]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let mut basis = Basis::new(field.clone(), first.len());
    for v in vectors {
        basis.insert_unchecked(v.clone());
    }
    basis.len()
}

/// Outcome of [`Basis::extend`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extend {
    InSpan,
    Added,
}

/// A subspace kept in reduced row-echelon form: each row has leading
/// entry 1 at a distinct pivot column, zero in every other row's pivot.
#[derive(Clone, Debug, PartialEq)]
pub struct Basis<F: Field> {
    field: F,
    dim: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Basis<F> {
    pub fn new(field: F, dim: usize) -> Self {
        Basis {
            field,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors(field: F, dim: usize, vectors: &[Vec<F::Elem>]) -> Result<Self> {
        let mut b = Self::new(field, dim);
        for v in vectors {
            b.extend(v)?;
        }
        Ok(b)
    }

    /// Ambient dimension.
    pub fn ambient(&self) -> usize {
        self.dim
    }
    pub fn len(&self) -> usize {
        self.rows.len()
    }
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn field(&self) -> &F {
        &self.field
    }

    /// Residue of `v` after eliminating every pivot column.
    fn reduce(&self, v: &mut [F::Elem]) {
        let f = &self.field;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if !f.is_zero(&v[pc]) {
                let c = v[pc].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !f.is_zero(r) {
                        *x = f.sub(x, &f.mul(&c, r));
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[F::Elem]) -> Result<bool> {
        if v.len() != self.dim {
            return Err(Error::LengthMismatch(v.len(), self.dim));
        }
        let mut w = v.to_vec();
        self.reduce(&mut w);
        Ok(w.iter().all(|x| self.field.is_zero(x)))
    }

    /// Adds `v` to the basis unless it already lies in the span.
    pub fn extend(&mut self, v: &[F::Elem]) -> Result<Extend> {
        if v.len() != self.dim {
            return Err(Error::LengthMismatch(v.len(), self.dim));
        }
        Ok(if self.insert_unchecked(v.to_vec()) {
            Extend::Added
        } else {
            Extend::InSpan
        })
    }

    pub(crate) fn insert_unchecked(&mut self, mut v: Vec<F::Elem>) -> bool {
        let f = self.field.clone();
        self.reduce(&mut v);
        let Some(pc) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[pc]).expect("nonzero pivot");
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        for row in self.rows.iter_mut() {
            if !f.is_zero(&row[pc]) {
                let c = row[pc].clone();
                for (x, r) in row.iter_mut().zip(&v) {
                    *x = f.sub(x, &f.mul(&c, r));
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, v);
        true
    }
}

/// Basis of `{x : M x = 0}`, of dimension `cols - rank(M)`.
pub fn nullspace_basis<F: Field>(m: &Mat<F>) -> Basis<F> {
    let f = m.field.clone();
    let mut rref = Basis::new(f.clone(), m.cols);
    for i in 0..m.rows {
        rref.insert_unchecked(m.row(i).to_vec());
    }
    let mut out = Basis::new(f.clone(), m.cols);
    for free in (0..m.cols).filter(|c| !rref.pivots.contains(c)) {
        let mut x = vec![f.zero(); m.cols];
        x[free] = f.one();
        for (row, &pc) in rref.rows.iter().zip(&rref.pivots) {
            x[pc] = f.neg(&row[free]);
        }
        out.insert_unchecked(x);
    }
    out
}

/// Solution set of `A x = b`: one particular solution plus a basis of the
/// homogeneous solutions, or `None` when inconsistent.
pub fn solve_affine<F: Field>(
    field: &F,
    cols: usize,
    equations: &[(Vec<F::Elem>, F::Elem)],
) -> Result<Option<(Vec<F::Elem>, Basis<F>)>> {
    let f = field;
    // Augmented rows [a | b]; inconsistency shows up as a pivot in column `cols`.
    let mut aug = Basis::new(f.clone(), cols + 1);
    for (a, b) in equations {
        if a.len() != cols {
            return Err(Error::LengthMismatch(a.len(), cols));
        }
        let mut row = a.clone();
        row.push(b.clone());
        aug.insert_unchecked(row);
    }
    if aug.pivots.contains(&cols) {
        return Ok(None);
    }
    let mut particular = vec![f.zero(); cols];
    for (row, &pc) in aug.rows.iter().zip(&aug.pivots) {
        particular[pc] = row[cols].clone();
    }
    let mut homogeneous = Basis::new(f.clone(), cols);
    for free in (0..cols).filter(|c| !aug.pivots.contains(c)) {
        let mut x = vec![f.zero(); cols];
        x[free] = f.one();
        for (row, &pc) in aug.rows.iter().zip(&aug.pivots) {
            x[pc] = f.neg(&row[free]);
        }
        homogeneous.insert_unchecked(x);
    }
    Ok(Some((particular, homogeneous)))
}

/// Lexicographically smallest `y` (residues ordered 0 < 1 < ... < p-1)
/// with `<a, y> = 0` for every `a` in `orthogonal_to` and `<y, u> != 0`.
pub fn lex_min_orthogonal_not_to(
    field: &PrimeField,
    dim: usize,
    orthogonal_to: &[Vec<u8>],
    u: &[u8],
) -> Result<Option<Vec<u8>>> {
    let feasible = |prefix: &[u8]| -> Result<bool> {
        let mut eqs: Vec<(Vec<u8>, u8)> = orthogonal_to.iter().map(|a| (a.clone(), 0)).collect();
        for (k, &val) in prefix.iter().enumerate() {
            let mut e = vec![0u8; dim];
            e[k] = 1;
            eqs.push((e, val));
        }
        let Some((part, hom)) = solve_affine(field, dim, &eqs)? else {
            return Ok(false);
        };
        // The functional <., u> is nonzero somewhere on part + span(hom).
        Ok(field.dot(&part, u) != 0 || hom.rows().iter().any(|h| field.dot(h, u) != 0))
    };
    if !feasible(&[])? {
        return Ok(None);
    }
    let mut prefix = Vec::with_capacity(dim);
    for _ in 0..dim {
        let mut chosen = None;
        for val in 0..field.p() as u8 {
            prefix.push(val);
            if feasible(&prefix)? {
                chosen = Some(val);
                break;
            }
            prefix.pop();
        }
        if chosen.is_none() {
            unreachable!("a feasible prefix always has a feasible extension");
        }
    }
    Ok(Some(prefix))
}

/// Smallest `e >= 0` with `q^e >= h`; defined as 0 for `h = 0`.
pub fn ceil_log(q: usize, h: usize) -> usize {
    let mut e = 0;
    let mut pow = 1usize;
    while pow < h {
        pow = pow.saturating_mul(q);
        e += 1;
    }
    e
}

/// `m` vectors `(1, a, a^2, ..., a^(len-1))` for the evaluation points
/// `a = 0, 1, ..., m-1`; every `len` of them are linearly independent.
pub fn vandermonde(m: usize, len: usize, field: &PrimeField) -> Result<Vec<Vec<u8>>> {
    if field.order() < m {
        return Err(Error::FieldTooSmall {
            size: field.order(),
            needed: m,
        });
    }
    if len > m {
        return Err(Error::Precondition(format!(
            "vector length {len} exceeds the number of vectors {m}"
        )));
    }
    Ok((0..m)
        .map(|a| {
            let a = a as u8;
            let mut v = Vec::with_capacity(len);
            let mut pow = 1u8;
            for _ in 0..len {
                v.push(pow);
                pow = field.mul(&pow, &a);
            }
            v
        })
        .collect())
}

/// Greedy construction of `m` vectors in `F^t`, `t = len + ceil_log_q(h)`,
/// such that the vectors indexed by each member of `sets` are linearly
/// independent. Each `u_j` is the lexicographically smallest nonzero vector
/// outside every span `{u_i : i in H, i < j}` with `j in H`.
///
/// Set members are 0-based indices into `0..m`.
pub fn schulman_vectors(
    sets: &[Vec<usize>],
    m: usize,
    len: usize,
    field: &PrimeField,
) -> Result<(usize, Vec<Vec<u8>>)> {
    if let Some(big) = sets.iter().find(|s| s.len() > len) {
        return Err(Error::Precondition(format!("set {big:?} has more than {len} members")));
    }
    if let Some(&bad) = sets.iter().flatten().find(|&&i| i >= m) {
        return Err(Error::Precondition(format!("index {bad} out of range 0..{m}")));
    }
    let q = field.order();
    let t = len + ceil_log(q, sets.len());
    if m > 0 && t == 0 {
        return Err(Error::Precondition("dimension 0 leaves no nonzero vector".into()));
    }
    let mut out: Vec<Vec<u8>> = Vec::with_capacity(m);
    for j in 0..m {
        let forbidden: Vec<Basis<PrimeField>> = sets
            .iter()
            .filter(|s| s.contains(&j))
            .map(|s| {
                let mut b = Basis::new(*field, t);
                for &i in s.iter().filter(|&&i| i < j) {
                    b.insert_unchecked(out[i].clone());
                }
                b
            })
            .collect();
        let mut cand = vec![0u8; t];
        let found = loop {
            if !odometer_next(&mut cand, field.p() as u8) {
                break None;
            }
            if forbidden.iter().all(|b| !b.contains(&cand).expect("dimensions agree")) {
                break Some(cand.clone());
            }
        };
        match found {
            Some(v) => out.push(v),
            None => unreachable!("forbidden vectors never exhaust F^t"),
        }
    }
    Ok((t, out))
}

/// Advances `v` to the next vector in lexicographic order (last coordinate
/// fastest); returns false after the last vector.
pub(crate) fn odometer_next(v: &mut [u8], q: u8) -> bool {
    for i in (0..v.len()).rev() {
        if v[i] + 1 < q {
            v[i] += 1;
            return true;
        }
        v[i] = 0;
    }
    false
}

/// Matrix with i.i.d. uniform entries drawn from a generator seeded by `seed`.
pub fn random_mat(rows: usize, cols: usize, spec: &FieldSpec, seed: u64) -> Result<Mat<PrimeField>> {
    let field = spec.finite().ok_or(Error::NeedsFiniteField("random matrix"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = field.p() as u8;
    let mut m = Mat::zeros(field, rows, cols);
    for x in m.data.iter_mut() {
        *x = rng.gen_range(0..p);
    }
    Ok(m)
}
