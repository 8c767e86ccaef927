//! JSON certificates and their independent re-verification.

use serde::{Deserialize, Serialize};

use lodim::coloring::{locality_of_coloring, Coloring, LowerBoundReason};
use lodim::field::FieldSpec;
use lodim::graph::Graph;
use lodim::indexcoding::{simulate, CodeJson, IndexCode, Method, SimulationReport, VectorFamily};
use lodim::ortho::{AnyRep, RepJson, RepKind};

use crate::error::{CliError, CliResult};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Param {
    Chi,
    ChiLocal,
    Clique,
    Od,
    OdLocal,
    Minrank,
}

impl std::fmt::Display for Param {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use clap::ValueEnum;
        f.write_str(self.to_possible_value().expect("no skipped variants").get_name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Witness {
    Coloring { colors: Vec<usize> },
    Clique { vertices: Vec<usize> },
    Representation(RepJson),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SolveCert {
    pub schema: u32,
    pub command: Vec<String>,
    pub param: Param,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub field: Option<FieldSpec>,
    pub value: usize,
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact_under_cap: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dim_cap: Option<usize>,
    pub lower_bound_reason: LowerBoundReason,
    pub witness: Witness,
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seconds: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct IndexCodeCert {
    pub schema: u32,
    pub command: Vec<String>,
    pub method: Method,
    pub field: FieldSpec,
    pub length: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub family: Option<VectorFamily>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub locality: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub attempts: Option<usize>,
    pub rep_dim: usize,
    pub seed: u64,
    pub code: CodeJson,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub simulation: Option<SimulationReport>,
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seconds: Option<f64>,
}

/// Anything `verify` accepts.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Document {
    Solve(SolveCert),
    IndexCode(IndexCodeCert),
    Rep(RepJson),
}

fn reject(msg: impl Into<String>) -> CliError {
    CliError::Rejected(msg.into())
}

fn check_coloring(g: &Graph, colors: &[usize]) -> CliResult<Coloring> {
    if colors.len() != g.n() {
        return Err(reject(format!("{} colors for {} vertices", colors.len(), g.n())));
    }
    let c = Coloring::new(colors.to_vec()).map_err(|e| reject(e.to_string()))?;
    c.check_proper(g).map_err(|e| reject(e.to_string()))?;
    Ok(c)
}

/// Checks a representation against `g` and returns its locality.
pub fn check_rep(g: &Graph, j: &RepJson) -> CliResult<usize> {
    let rep = AnyRep::from_json(j).map_err(|e| reject(e.to_string()))?;
    if let Some(v) = rep.verify(g).map_err(|e| reject(e.to_string()))? {
        return Err(reject(v.to_string()));
    }
    Ok(rep.locality(g)?)
}

fn expect(what: &str, got: usize, claimed: usize) -> CliResult<()> {
    if got != claimed {
        return Err(reject(format!("{what} is {got}, certificate claims {claimed}")));
    }
    Ok(())
}

/// Re-checks a solver certificate against the graph it was computed for.
pub fn check_solve(g: &Graph, c: &SolveCert) -> CliResult<String> {
    match (&c.param, &c.witness) {
        (Param::Chi, Witness::Coloring { colors }) => {
            let col = check_coloring(g, colors)?;
            expect("number of colors", col.num_colors(), c.value)?;
        }
        (Param::ChiLocal, Witness::Coloring { colors }) => {
            let col = check_coloring(g, colors)?;
            expect("locality", locality_of_coloring(g, &col)?, c.value)?;
        }
        (Param::Clique, Witness::Clique { vertices }) => {
            let mut sorted = vertices.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != vertices.len() || sorted.iter().any(|&v| v >= g.n()) {
                return Err(reject("clique vertices repeat or fall outside the graph"));
            }
            for (k, &u) in sorted.iter().enumerate() {
                if let Some(&v) = sorted[k + 1..].iter().find(|&&v| !g.has_edge(u, v)) {
                    return Err(reject(format!("{u} and {v} are not adjacent")));
                }
            }
            expect("clique size", sorted.len(), c.value)?;
        }
        (Param::Od | Param::OdLocal, Witness::Representation(r)) => {
            if r.kind != RepKind::Orthogonal {
                return Err(reject("expected an orthogonal representation"));
            }
            check_field(c.field, r.field)?;
            let locality = check_rep(g, r)?;
            if c.param == Param::Od {
                expect("dimension", r.dim, c.value)?;
            } else {
                expect("locality", locality, c.value)?;
                if let Some(cap) = c.dim_cap {
                    if r.dim > cap {
                        return Err(reject(format!("dimension {} exceeds the cap {cap}", r.dim)));
                    }
                }
            }
        }
        (Param::Minrank, Witness::Representation(r)) => {
            if r.kind != RepKind::Independent {
                return Err(reject("expected an independent representation"));
            }
            check_field(c.field, r.field)?;
            check_rep(&g.complement(), r)?;
            expect("dimension", r.dim, c.value)?;
        }
        (p, _) => return Err(reject(format!("witness type does not fit {p}"))),
    }
    Ok(format!("{} = {} verified", c.param, c.value))
}

fn check_field(claimed: Option<FieldSpec>, actual: FieldSpec) -> CliResult<()> {
    match claimed {
        Some(f) if f != actual => Err(reject(format!("witness over {actual}, certificate says {f}"))),
        _ => Ok(()),
    }
}

/// Re-checks an index code and, when a simulation was recorded, replays it.
pub fn check_index_code(g: &Graph, c: &IndexCodeCert) -> CliResult<String> {
    let code = IndexCode::from_json(g, &c.code).map_err(|e| reject(e.to_string()))?;
    expect("code length", code.len(), c.length)?;
    if let Some(sim) = &c.simulation {
        let replay = simulate(&code, sim.trials, c.seed)?;
        if replay.failures != 0 {
            return Err(reject(format!("{} decoding failures", replay.failures)));
        }
    }
    Ok(format!("index code of length {} verified", code.len()))
}

pub fn check_document(g: &Graph, doc: &Document) -> CliResult<String> {
    match doc {
        Document::Solve(c) => check_solve(g, c),
        Document::IndexCode(c) => check_index_code(g, c),
        Document::Rep(r) => {
            let locality = check_rep(g, r)?;
            let kind = match r.kind {
                RepKind::Orthogonal => "orthogonal",
                RepKind::Independent => "independent",
            };
            Ok(format!(
                "{kind} representation of dimension {}, locality {locality}",
                r.dim
            ))
        }
    }
}
