use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::graph::Graph;
use crate::linalg::{lex_min_orthogonal_not_to, solve_affine, Basis, Extend, Mat};
use crate::ortho::{verify_independent, RepKind, VectorRepresentation};

/// A linear index code for a side-information graph: the broadcast is
/// `y = B x`, and receiver `i` computes `M_i x = λ_i · y`.
#[derive(Clone, Debug, PartialEq)]
pub struct IndexCode {
    field: PrimeField,
    neighbors: Vec<Vec<usize>>,
    encode: Mat<PrimeField>,
    representing: Mat<PrimeField>,
    decode: Vec<Vec<u8>>,
}

/// Checks that `m` is zero off the edges and nonzero on the diagonal.
pub fn check_representing(g: &Graph, m: &Mat<PrimeField>) -> Result<()> {
    let n = g.n();
    if m.rows() != n || m.cols() != n {
        return Err(Error::InvalidRepresentation(format!(
            "matrix is {}x{}, graph has {n} vertices",
            m.rows(),
            m.cols()
        )));
    }
    for i in 0..n {
        if m[(i, i)] == 0 {
            return Err(Error::InvalidRepresentation(format!("M[{i}][{i}] is zero")));
        }
        for j in 0..n {
            if i != j && !g.has_edge(i, j) && m[(i, j)] != 0 {
                return Err(Error::InvalidRepresentation(format!(
                    "M[{i}][{j}] is nonzero but {i} and {j} are not adjacent"
                )));
            }
        }
    }
    Ok(())
}

/// Matrix representing `g` built from an independent representation of
/// its complement: row `i` pairs the vectors with the lexicographically
/// smallest `y_i` orthogonal to the vectors of `i`'s complement-neighbours
/// and not to `u_i`.
pub fn representing_matrix(g: &Graph, rep: &VectorRepresentation<PrimeField>) -> Result<Mat<PrimeField>> {
    let h = g.complement();
    let indep = rep.as_kind(RepKind::Independent);
    if let Some(v) = verify_independent(&h, &indep)? {
        return Err(Error::InvalidRepresentation(v.to_string()));
    }
    let f = rep.field;
    let n = g.n();
    let mut m = Mat::zeros(f, n, n);
    for i in 0..n {
        let others: Vec<Vec<u8>> = h.neighbors(i).map(|j| rep.vectors[j].clone()).collect();
        let y = lex_min_orthogonal_not_to(&f, rep.dim, &others, &rep.vectors[i])?
            .expect("an independent vector has a separating functional");
        for j in 0..n {
            m[(i, j)] = f.dot(&y, &rep.vectors[j]);
        }
    }
    check_representing(g, &m)?;
    Ok(m)
}

/// Code whose encoding rows are the first linearly independent rows of `m`.
pub fn build_code(g: &Graph, m: &Mat<PrimeField>) -> Result<IndexCode> {
    check_representing(g, m)?;
    let f = *m.field();
    let n = g.n();
    let mut span = Basis::new(f, n);
    let mut rows = Vec::new();
    for i in 0..n {
        if let Extend::Added = span.extend(m.row(i))? {
            rows.push(m.row(i).to_vec());
        }
    }
    let b = Mat::from_rows(f, n, &rows)?;
    let len = rows.len();
    let mut decode = Vec::with_capacity(n);
    for i in 0..n {
        // λ B = M_i, one equation per column
        let eqs: Vec<(Vec<u8>, u8)> = (0..n)
            .map(|c| ((0..len).map(|k| b[(k, c)]).collect(), m[(i, c)]))
            .collect();
        let (lambda, _) = solve_affine(&f, len, &eqs)?
            .ok_or_else(|| Error::InvalidRepresentation(format!("row {i} outside the row space")))?;
        decode.push(lambda);
    }
    Ok(IndexCode {
        field: f,
        neighbors: (0..n).map(|v| g.neighbors(v).collect()).collect(),
        encode: b,
        representing: m.clone(),
        decode,
    })
}

impl IndexCode {
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn n(&self) -> usize {
        self.neighbors.len()
    }

    pub fn len(&self) -> usize {
        self.encode.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn encode_matrix(&self) -> &Mat<PrimeField> {
        &self.encode
    }

    pub fn representing_matrix(&self) -> &Mat<PrimeField> {
        &self.representing
    }

    pub fn decode_coeffs(&self) -> &[Vec<u8>] {
        &self.decode
    }

    /// Replaces one receiver's coefficients; used to exercise the decoder.
    pub fn with_decode_coeffs(mut self, i: usize, lambda: Vec<u8>) -> Result<Self> {
        if lambda.len() != self.len() {
            return Err(Error::LengthMismatch(lambda.len(), self.len()));
        }
        self.decode[i] = lambda;
        Ok(self)
    }

    pub fn encode(&self, x: &[u8]) -> Result<Vec<u8>> {
        self.encode.mul_vec(x)
    }

    /// Recovers `x_i` from the broadcast and the symbols of `i`'s
    /// neighbours, given as `(vertex, symbol)` pairs covering exactly `N(i)`.
    pub fn decode_one(&self, i: usize, y: &[u8], side: &[(usize, u8)]) -> Result<u8> {
        if i >= self.n() {
            return Err(Error::Decode(format!("receiver {i} out of range")));
        }
        if y.len() != self.len() {
            return Err(Error::LengthMismatch(y.len(), self.len()));
        }
        let mut given: Vec<usize> = side.iter().map(|&(j, _)| j).collect();
        given.sort_unstable();
        if given != self.neighbors[i] {
            return Err(Error::Decode(format!(
                "receiver {i} needs side information on {:?}, got {:?}",
                self.neighbors[i], given
            )));
        }
        let f = &self.field;
        let mut s = f.dot(&self.decode[i], y);
        for &(j, xj) in side {
            s = f.sub(&s, &f.mul(&self.representing[(i, j)], &xj));
        }
        f.div(&s, &self.representing[(i, i)])
    }

    /// Rebuilds a code for `g` from its JSON form, checking the pattern of
    /// `M` and `λ_i B = M_i` for every receiver.
    pub fn from_json(g: &Graph, j: &CodeJson) -> Result<Self> {
        let f = PrimeField::new(j.field as u32)?;
        let n = g.n();
        if j.n != n || j.decode.len() != n {
            return Err(Error::LengthMismatch(j.n, n));
        }
        let residues = |rows: &[Vec<u8>]| -> Result<()> {
            match rows.iter().flatten().find(|&&x| x as u32 >= f.p()) {
                Some(x) => Err(Error::InvalidRepresentation(format!(
                    "{x} is not a residue modulo {}",
                    f.p()
                ))),
                None => Ok(()),
            }
        };
        residues(&j.encode)?;
        residues(&j.representing)?;
        residues(&j.decode)?;
        let encode = Mat::from_rows(f, n, &j.encode)?;
        let representing = Mat::from_rows(f, n, &j.representing)?;
        check_representing(g, &representing)?;
        if encode.rows() != j.length {
            return Err(Error::LengthMismatch(encode.rows(), j.length));
        }
        for (i, lambda) in j.decode.iter().enumerate() {
            if lambda.len() != j.length {
                return Err(Error::LengthMismatch(lambda.len(), j.length));
            }
            for c in 0..n {
                let col: Vec<u8> = (0..j.length).map(|k| encode[(k, c)]).collect();
                if f.dot(lambda, &col) != representing[(i, c)] {
                    return Err(Error::InvalidRepresentation(format!(
                        "decode coefficients of receiver {i} miss column {c}"
                    )));
                }
            }
        }
        Ok(IndexCode {
            field: f,
            neighbors: (0..n).map(|v| g.neighbors(v).collect()).collect(),
            encode,
            representing,
            decode: j.decode.clone(),
        })
    }

    pub fn to_json(&self) -> CodeJson {
        CodeJson {
            field: self.field.p() as u8,
            n: self.n(),
            length: self.len(),
            encode: self.encode.row_vecs(),
            representing: self.representing.row_vecs(),
            decode: self.decode.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeJson {
    pub field: u8,
    pub n: usize,
    pub length: usize,
    pub encode: Vec<Vec<u8>>,
    pub representing: Vec<Vec<u8>>,
    pub decode: Vec<Vec<u8>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub trials: usize,
    /// Receiver decodings that returned a wrong symbol.
    pub failures: usize,
    pub length: usize,
}

/// Broadcasts `trials` uniformly random messages and decodes every symbol.
pub fn simulate(code: &IndexCode, trials: usize, seed: u64) -> Result<SimulationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = code.field.p() as u8;
    let mut failures = 0;
    for _ in 0..trials {
        let x: Vec<u8> = (0..code.n()).map(|_| rng.gen_range(0..p)).collect();
        let y = code.encode(&x)?;
        for i in 0..code.n() {
            let side: Vec<(usize, u8)> = code.neighbors[i].iter().map(|&j| (j, x[j])).collect();
            if code.decode_one(i, &y, &side)? != x[i] {
                failures += 1;
            }
        }
    }
    Ok(SimulationReport {
        trials,
        failures,
        length: code.len(),
    })
}
