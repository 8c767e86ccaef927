use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A CNF formula over variables `1..=num_vars`; literal `-i` is the
/// negation of `x_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    /// Rejects empty clauses, out-of-range literals and tautologies.
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        for (ci, c) in clauses.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::Precondition(format!("clause {} is empty", ci + 1)));
            }
            for &l in c {
                if l == 0 || l.unsigned_abs() as usize > num_vars {
                    return Err(Error::Precondition(format!(
                        "literal {l} in clause {} out of range 1..={num_vars}",
                        ci + 1
                    )));
                }
                if c.contains(&-l) {
                    return Err(Error::Precondition(format!(
                        "clause {} contains both {} and {}",
                        ci + 1,
                        l.abs(),
                        -l.abs()
                    )));
                }
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    /// Clauses as fed to the reduction: a unit clause `(x)` becomes `(x ∨ x)`.
    pub fn padded_clauses(&self) -> Vec<Vec<i32>> {
        self.clauses
            .iter()
            .map(|c| if c.len() == 1 { vec![c[0], c[0]] } else { c.clone() })
            .collect()
    }

    /// `assignment[i]` is the value of `x_{i+1}`. Returns the index of the
    /// first falsified clause.
    pub fn first_falsified(&self, assignment: &[bool]) -> Result<Option<usize>> {
        if assignment.len() != self.num_vars {
            return Err(Error::LengthMismatch(assignment.len(), self.num_vars));
        }
        Ok(self
            .clauses
            .iter()
            .position(|c| !c.iter().any(|&l| assignment[l.unsigned_abs() as usize - 1] == (l > 0))))
    }

    pub fn is_satisfied_by(&self, assignment: &[bool]) -> Result<bool> {
        Ok(self.first_falsified(assignment)?.is_none())
    }

    /// Parses DIMACS CNF (`p cnf k m`, clauses terminated by `0`).
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut cur: Vec<i32> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = i + 1;
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if line.starts_with('%') {
                break;
            }
            if line.starts_with('p') {
                let parts: Vec<&str> = line.split_whitespace().collect();
                if parts.len() != 4 || parts[1] != "cnf" {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "expected `p cnf <vars> <clauses>`".into(),
                    });
                }
                let num = |s: &str| {
                    s.parse::<usize>().map_err(|_| Error::Parse {
                        line: lineno,
                        msg: format!("bad number {s:?}"),
                    })
                };
                header = Some((num(parts[2])?, num(parts[3])?));
                continue;
            }
            if header.is_none() {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "clause before header".into(),
                });
            }
            for tok in line.split_whitespace() {
                let l: i32 = tok.parse().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("bad literal {tok:?}"),
                })?;
                if l == 0 {
                    if cur.is_empty() {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: "empty clause".into(),
                        });
                    }
                    clauses.push(std::mem::take(&mut cur));
                } else {
                    cur.push(l);
                }
            }
        }
        let (k, m) = header.ok_or(Error::Parse {
            line: 0,
            msg: "missing `p cnf` header".into(),
        })?;
        if !cur.is_empty() {
            clauses.push(cur);
        }
        if clauses.len() != m {
            return Err(Error::Parse {
                line: 0,
                msg: format!("header declares {m} clauses, found {}", clauses.len()),
            });
        }
        CnfFormula::new(k, clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                s.push_str(&format!("{l} "));
            }
            s.push_str("0\n");
        }
        s
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .clauses
            .iter()
            .map(|c| {
                let lits: Vec<String> = c
                    .iter()
                    .map(|&l| if l > 0 { format!("x{l}") } else { format!("¬x{}", -l) })
                    .collect();
                format!("({})", lits.join(" ∨ "))
            })
            .collect();
        write!(f, "{}", parts.join(" ∧ "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let f = CnfFormula::parse_dimacs("c demo\np cnf 3 2\n1 -2 0\n2 3\n0\n").unwrap();
        assert_eq!(f.clauses(), &[vec![1, -2], vec![2, 3]]);
        assert_eq!(CnfFormula::parse_dimacs(&f.to_dimacs()).unwrap(), f);
        assert_eq!(f.to_string(), "(x1 ∨ ¬x2) ∧ (x2 ∨ x3)");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(CnfFormula::parse_dimacs("p cnf 2 1\n1 -1 0\n").is_err());
        assert!(CnfFormula::parse_dimacs("p cnf 2 1\n0\n").is_err());
        assert!(CnfFormula::parse_dimacs("p cnf 2 1\n3 0\n").is_err());
        assert!(CnfFormula::parse_dimacs("1 2 0\n").is_err());
        assert!(CnfFormula::parse_dimacs("p cnf 2 2\n1 2 0\n").is_err());
        assert!(CnfFormula::new(2, vec![vec![]]).is_err());
    }

    #[test]
    fn unit_clauses_are_padded() {
        let f = CnfFormula::new(1, vec![vec![1], vec![-1]]).unwrap();
        assert_eq!(f.padded_clauses(), vec![vec![1, 1], vec![-1, -1]]);
        assert!(!f.is_satisfied_by(&[true]).unwrap());
        assert_eq!(f.first_falsified(&[false]).unwrap(), Some(0));
    }
}
