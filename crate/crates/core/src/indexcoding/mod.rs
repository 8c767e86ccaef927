//! Linear index codes for symmetric side-information graphs, built from
//! independent representations of the complement.

mod code;
mod construct;

pub use code::{build_code, check_representing, representing_matrix, simulate, CodeJson, IndexCode, SimulationReport};
pub use construct::{
    build_index_code, code_from_local_coloring, compress_representation, compress_with_retries, compression_dim,
    local_coloring_code, try_compress, BuiltCode, CompressionResult, LocalColoringCode, Method, VectorFamily,
    COMPRESSION_RETRIES,
};
