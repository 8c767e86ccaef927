//! Browser bindings. Each export returns a JSON string; the `*_json`
//! functions hold the logic and run natively as well.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use lodim::coloring::{chromatic_number, local_chromatic_number};
use lodim::field::PrimeField;
use lodim::graph::{complete, cycle, edgeless, kneser, schrijver, Graph};
use lodim::indexcoding::{build_index_code, Method};
use lodim::reduction::{certify_gadget_lemma, certify_mutated_gadget, h_gadget, MatchingEdge};

/// Largest ground set accepted by the coloring demo.
pub const MAX_GROUND: usize = 8;

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ColoringDemo {
    n: usize,
    edges: Vec<[usize; 2]>,
    labels: Vec<String>,
    chi: usize,
    chi_local: usize,
    colors: Vec<usize>,
    /// Colors seen in each closed neighbourhood under `colors`.
    neighborhood_colors: Vec<usize>,
}

fn edges_of(g: &Graph) -> Vec<[usize; 2]> {
    g.edges().into_iter().map(|(u, v)| [u, v]).collect()
}

pub fn local_coloring_json(family: &str, n: usize, k: usize) -> Result<String, String> {
    if n > MAX_GROUND {
        return Err(format!("ground set larger than {MAX_GROUND}"));
    }
    let g = match family {
        "kneser" => kneser(n, k),
        "schrijver" => schrijver(n, k),
        other => return Err(format!("unknown family {other:?}")),
    }
    .map_err(|e| e.to_string())?;
    let chi = chromatic_number(&g).map_err(|e| e.to_string())?;
    let local = local_chromatic_number(&g).map_err(|e| e.to_string())?;
    let c = &local.witness;
    let demo = ColoringDemo {
        n: g.n(),
        edges: edges_of(&g),
        labels: g.labels().map(<[String]>::to_vec).unwrap_or_default(),
        chi: chi.value,
        chi_local: local.value,
        colors: c.colors().to_vec(),
        neighborhood_colors: (0..g.n()).map(|v| c.closed_neighborhood_colors(&g, v).len()).collect(),
    };
    serde_json::to_string(&demo).map_err(|e| e.to_string())
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct IndexCodeDemo {
    n: usize,
    edges: Vec<[usize; 2]>,
    length: usize,
    encode: Vec<Vec<u8>>,
    message: Vec<u8>,
    broadcast: Vec<u8>,
    decoded: Vec<u8>,
}

/// Builds a code for the side-information graph and runs one broadcast of
/// `message`; receiver `i` decodes from the broadcast and its neighbours'
/// symbols.
pub fn index_code_json(
    graph: &str,
    n: usize,
    p: u32,
    method: &str,
    seed: u64,
    message: &[u8],
) -> Result<String, String> {
    let g = match graph {
        "complete" => complete(n),
        "edgeless" => edgeless(n),
        "cycle" => cycle(n),
        "petersen" => kneser(5, 2),
        other => return Err(format!("unknown graph {other:?}")),
    }
    .map_err(|e| e.to_string())?;
    if message.len() != g.n() {
        return Err(format!(
            "message has {} symbols, graph has {} vertices",
            message.len(),
            g.n()
        ));
    }
    let f = PrimeField::new(p).map_err(|e| e.to_string())?;
    let x: Vec<u8> = message.iter().map(|&s| (s as u32 % p) as u8).collect();
    let method: Method = method.parse().map_err(|e: lodim::Error| e.to_string())?;
    let code = build_index_code(&g, &f, method, seed).map_err(|e| e.to_string())?.code;
    let y = code.encode(&x).map_err(|e| e.to_string())?;
    let decoded = (0..g.n())
        .map(|i| {
            let side: Vec<(usize, u8)> = g.neighbors(i).map(|j| (j, x[j])).collect();
            code.decode_one(i, &y, &side)
        })
        .collect::<Result<Vec<u8>, _>>()
        .map_err(|e| e.to_string())?;
    let demo = IndexCodeDemo {
        n: g.n(),
        edges: edges_of(&g),
        length: code.len(),
        encode: code.encode_matrix().row_vecs(),
        message: x,
        broadcast: y,
        decoded,
    };
    serde_json::to_string(&demo).map_err(|e| e.to_string())
}

/// Exhaustive gadget check over GF(p), optionally with one matching edge
/// (`"id"`, `"aj"` or `"bc"`) removed.
pub fn gadget_json(p: u32, removed: &str) -> Result<String, String> {
    let f = PrimeField::new(p).map_err(|e| e.to_string())?;
    if f.p() > 5 {
        return Err("fields up to GF(5) only".into());
    }
    let edge = match removed {
        "" | "none" => None,
        "id" => Some(MatchingEdge::ID),
        "aj" => Some(MatchingEdge::AJ),
        "bc" => Some(MatchingEdge::BC),
        other => return Err(format!("unknown edge {other:?}")),
    };
    let report = match edge {
        None => certify_gadget_lemma(&f),
        Some(e) => certify_mutated_gadget(&f, e),
    }
    .map_err(|e| e.to_string())?;
    let g = h_gadget(edge);
    let doc = serde_json::json!({ "edges": edges_of(&g), "report": report });
    serde_json::to_string(&doc).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn local_coloring(family: &str, n: usize, k: usize) -> Result<String, JsError> {
    local_coloring_json(family, n, k).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn index_code(graph: &str, n: usize, p: u32, method: &str, seed: u64, message: &[u8]) -> Result<String, JsError> {
    index_code_json(graph, n, p, method, seed, message).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn gadget(p: u32, removed: &str) -> Result<String, JsError> {
    gadget_json(p, removed).map_err(|e| JsError::new(&e))
}
