mod cert;
mod error;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lodim::coloring::{chromatic_number, local_chromatic_number, max_clique, LowerBoundReason};
use lodim::field::{Field, PrimeField};
use lodim::graph::{
    complete, cycle, edgeless, intersection_graph, kneser, line_graph, path, random_graph, random_two_uniform,
    read_dimacs, schrijver, write_dimacs, Graph,
};
use lodim::indexcoding::{build_index_code, simulate, Method};
use lodim::ortho::{
    local_orthogonality_dimension, minrank, orthogonality_dimension, AnyRep, LocalOdOptions, OdOptions, SearchLimits,
};
use lodim::reduction::{build, CnfFormula, Stage};
use lodim::selftest;

use cert::{check_document, check_index_code, check_solve, Document, IndexCodeCert, Param, SolveCert, Witness, SCHEMA};
use error::{CliError, CliResult};

#[derive(Parser, Debug)]
#[command(
    name = "lodim",
    version,
    about = "Local orthogonality dimension, minrank and index coding on small graphs"
)]
struct Cli {
    /// Worker threads; results do not depend on this value.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    threads: u32,
    /// Report wall time (makes output nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Generate a graph in DIMACS format.
    Gen(GenArgs),
    /// Compute a graph parameter with a checkable witness.
    Solve(SolveArgs),
    /// Build the reduction graph of a DIMACS CNF formula.
    Reduce(ReduceArgs),
    /// Build a linear index code for a side-information graph.
    IndexCode(IndexCodeArgs),
    /// Check a certificate or representation against a graph.
    Verify(VerifyArgs),
    /// Run the acceptance criteria.
    Selftest(SelftestArgs),
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(subcommand)]
    family: Family,
    /// Output file (default stdout).
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Emit JSON `{n, edges, labels}` instead of DIMACS.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Family {
    Kneser {
        n: usize,
        k: usize,
    },
    Schrijver {
        n: usize,
        k: usize,
    },
    Complete {
        n: usize,
    },
    Edgeless {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    Path {
        n: usize,
    },
    /// Erdős–Rényi graph.
    Random {
        n: usize,
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Disjointness graph of a random family of 2-subsets of `[ground]`.
    SetSystem {
        ground: usize,
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Line graph of a DIMACS graph.
    Line {
        graph: PathBuf,
    },
    /// Complement of a DIMACS graph.
    Complement {
        graph: PathBuf,
    },
}

#[derive(Args, Debug)]
struct SolveArgs {
    param: Param,
    graph: PathBuf,
    /// Prime field order for od, od-local and minrank.
    #[arg(long, default_value_t = 2)]
    field: u32,
    /// Largest ambient dimension searched by od-local (default n).
    #[arg(long)]
    dim_cap: Option<usize>,
    /// Largest dimension searched by od.
    #[arg(long, default_value_t = 6)]
    max_dim: usize,
    /// Candidate checks allowed per od-local decision; when spent, the best
    /// witness so far is reported with `exactUnderCap: false`.
    #[arg(long, default_value_t = 1_000_000)]
    max_nodes: usize,
    /// Search od-local without a candidate budget.
    #[arg(long, conflicts_with = "max_nodes")]
    exhaustive: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StageArg {
    #[value(name = "G")]
    G,
    #[value(name = "Gprime")]
    Gprime,
    #[value(name = "Gk")]
    Gk,
}

#[derive(Args, Debug)]
struct ReduceArgs {
    cnf: PathBuf,
    /// Number of colors; 4 or more selects the `Gk` stage.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum)]
    stage: Option<StageArg>,
    /// DIMACS output (default stdout).
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Write the role map as JSON.
    #[arg(long)]
    roles: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct IndexCodeArgs {
    graph: PathBuf,
    #[arg(long, default_value_t = 2)]
    field: u32,
    #[arg(long, default_value = "minrank", value_parser = parse_method)]
    method: Method,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Broadcast this many random messages and decode them.
    #[arg(long)]
    simulate: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    certificate: PathBuf,
    graph: PathBuf,
}

#[derive(Args, Debug)]
struct SelftestArgs {
    /// Run only these criteria (1-based, repeatable).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=selftest::CRITERIA as i64))]
    only: Vec<u32>,
    #[arg(long)]
    json: bool,
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: lodim::Error| e.to_string())
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn emit(output: Option<&Path>, text: &str) -> CliResult<()> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_graph(path: &Path) -> CliResult<Graph> {
    Ok(read_dimacs(&read(path)?)?)
}

fn field(p: u32) -> CliResult<PrimeField> {
    Ok(PrimeField::new(p)?)
}

fn to_json<T: serde::Serialize>(v: &T) -> CliResult<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn gen(args: GenArgs) -> CliResult<()> {
    let g = match args.family {
        Family::Kneser { n, k } => kneser(n, k)?,
        Family::Schrijver { n, k } => schrijver(n, k)?,
        Family::Complete { n } => complete(n)?,
        Family::Edgeless { n } => edgeless(n)?,
        Family::Cycle { n } => cycle(n)?,
        Family::Path { n } => path(n)?,
        Family::Random { n, p, seed } => random_graph(n, p, seed)?,
        Family::SetSystem { ground, p, seed } => intersection_graph(&random_two_uniform(ground, p, seed)?)?,
        Family::Line { graph } => line_graph(&read_graph(&graph)?)?,
        Family::Complement { graph } => read_graph(&graph)?.complement(),
    };
    let text = if args.json {
        to_json(&g.to_json())?
    } else {
        write_dimacs(&g)
    };
    emit(args.output.as_deref(), &text)
}

fn solve(args: SolveArgs, command: Vec<String>, timing: bool) -> CliResult<bool> {
    let g = read_graph(&args.graph)?;
    let start = Instant::now();
    let f = field(args.field)?;
    let rep_witness = |r: &lodim::ortho::VectorRepresentation<PrimeField>| {
        Witness::Representation(AnyRep::Prime(r.clone()).to_json())
    };
    let mut c = SolveCert {
        schema: SCHEMA,
        command,
        param: args.param,
        field: None,
        value: 0,
        exact: true,
        exact_under_cap: None,
        dim_cap: None,
        lower_bound_reason: LowerBoundReason::ExhaustedSearch,
        witness: Witness::Clique { vertices: Vec::new() },
        verified: false,
        seconds: None,
    };
    match args.param {
        Param::Chi | Param::ChiLocal => {
            let r = if args.param == Param::Chi {
                chromatic_number(&g)?
            } else {
                local_chromatic_number(&g)?
            };
            c.value = r.value;
            c.exact = r.exact;
            c.lower_bound_reason = r.lower_bound_reason;
            c.witness = Witness::Coloring {
                colors: r.witness.colors().to_vec(),
            };
        }
        Param::Clique => {
            let k = max_clique(&g)?;
            c.value = k.len();
            c.witness = Witness::Clique { vertices: k };
        }
        Param::Od => {
            let opts = OdOptions {
                max_dim: args.max_dim,
                ..Default::default()
            };
            let r = orthogonality_dimension(&g, &f, opts)?;
            c.field = Some(f.spec());
            c.value = r.value;
            c.exact = r.exact;
            c.lower_bound_reason = r.lower_bound_reason;
            c.witness = rep_witness(&r.witness);
        }
        Param::OdLocal => {
            let opts = LocalOdOptions {
                dim_cap: args.dim_cap,
                limits: SearchLimits {
                    max_nodes: (!args.exhaustive).then_some(args.max_nodes),
                    ..Default::default()
                },
                ..Default::default()
            };
            let r = local_orthogonality_dimension(&g, &f, opts)?;
            c.field = Some(f.spec());
            c.value = r.value;
            c.exact = r.exact;
            c.exact_under_cap = Some(r.exact_under_cap);
            c.dim_cap = Some(r.dim_cap);
            c.lower_bound_reason = r.lower_bound_reason;
            c.witness = rep_witness(&r.witness);
        }
        Param::Minrank => {
            let r = minrank(&g, &f)?;
            c.field = Some(f.spec());
            c.value = r.value;
            c.lower_bound_reason = r.lower_bound_reason;
            c.witness = rep_witness(&r.witness);
        }
    }
    check_solve(&g, &c)?;
    c.verified = true;
    if timing {
        c.seconds = Some(start.elapsed().as_secs_f64());
    }
    if args.json {
        print!("{}", to_json(&c)?);
    } else {
        let mut line = format!("{} = {}", c.param, c.value);
        if let Some(f) = c.field {
            line.push_str(&format!(" over GF({f})"));
        }
        if !c.exact {
            line.push_str(" (not proven optimal)");
        }
        if let Some(e) = c.exact_under_cap {
            line.push_str(&format!(", exact under dimension cap {}: {e}", c.dim_cap.unwrap_or(0)));
        }
        if let Some(s) = c.seconds {
            line.push_str(&format!(" [{s:.3}s]"));
        }
        println!("{line}");
    }
    Ok(true)
}

#[derive(serde::Serialize)]
#[serde(rename_all = "camelCase")]
struct RolesDoc<'a> {
    schema: u32,
    stage: Stage,
    n: usize,
    base_len: usize,
    roles: &'a [lodim::reduction::Role],
}

fn reduce(args: ReduceArgs) -> CliResult<()> {
    let phi = CnfFormula::parse_dimacs(&read(&args.cnf)?)?;
    let stage = match (args.stage, args.k) {
        (Some(StageArg::Gk), k) => Stage::Gk(k.unwrap_or(4)),
        (Some(_), Some(k)) if k != 3 => {
            return Err(CliError::Usage(format!("--k {k} needs --stage Gk")));
        }
        (Some(StageArg::G), _) => Stage::G,
        (Some(StageArg::Gprime), _) => Stage::GPrime,
        (None, Some(k)) if k >= 4 => Stage::Gk(k),
        (None, Some(3) | None) => Stage::G,
        (None, Some(k)) => return Err(CliError::Usage(format!("--k {k} must be at least 3"))),
    };
    let gg = build(&phi, stage)?;
    if let Some(p) = &args.roles {
        let doc = RolesDoc {
            schema: SCHEMA,
            stage: gg.stage,
            n: gg.n(),
            base_len: gg.base_len,
            roles: &gg.roles,
        };
        emit(Some(p), &to_json(&doc)?)?;
    }
    emit(args.output.as_deref(), &write_dimacs(&gg.graph))
}

fn index_code(args: IndexCodeArgs, command: Vec<String>, timing: bool) -> CliResult<bool> {
    let g = read_graph(&args.graph)?;
    let start = Instant::now();
    let f = field(args.field)?;
    let built = build_index_code(&g, &f, args.method, args.seed)?;
    let simulation = args.simulate.map(|t| simulate(&built.code, t, args.seed)).transpose()?;
    let mut c = IndexCodeCert {
        schema: SCHEMA,
        command,
        method: built.method,
        field: f.spec(),
        length: built.code.len(),
        family: built.family,
        locality: built.locality,
        attempts: built.attempts,
        rep_dim: built.rep_dim,
        seed: args.seed,
        code: built.code.to_json(),
        simulation,
        verified: false,
        seconds: None,
    };
    check_index_code(&g, &c)?;
    c.verified = true;
    if timing {
        c.seconds = Some(start.elapsed().as_secs_f64());
    }
    if args.json {
        print!("{}", to_json(&c)?);
    } else {
        println!(
            "{:?} code over GF({}) of length {} for {} receivers",
            c.method,
            c.field,
            c.length,
            g.n()
        );
        if let Some(s) = &c.simulation {
            println!("simulated {} messages: {} decoding failures", s.trials, s.failures);
        }
        if let Some(s) = c.seconds {
            println!("[{s:.3}s]");
        }
    }
    Ok(c.simulation.is_none_or(|s| s.failures == 0))
}

fn verify(args: VerifyArgs) -> CliResult<bool> {
    let doc: Document = serde_json::from_str(&read(&args.certificate)?)?;
    let g = read_graph(&args.graph)?;
    let msg = check_document(&g, &doc)?;
    println!("ok: {msg}");
    Ok(true)
}

fn run_selftest(args: SelftestArgs, timing: bool) -> CliResult<bool> {
    let ids: Vec<usize> = if args.only.is_empty() {
        (1..=selftest::CRITERIA).collect()
    } else {
        args.only.iter().map(|&i| i as usize).collect()
    };
    let reports: Vec<_> = ids.into_iter().map(selftest::run_criterion).collect();
    if args.json {
        let mut v = serde_json::to_value(&reports)?;
        if !timing {
            for r in v.as_array_mut().into_iter().flatten() {
                r.as_object_mut().map(|o| o.remove("seconds"));
            }
        }
        print!("{}", to_json(&serde_json::json!({ "schema": SCHEMA, "criteria": v }))?);
    } else {
        for r in &reports {
            println!("{}", r.line(timing));
        }
    }
    Ok(reports.iter().all(|r| r.passed))
}

fn run(cli: Cli, command: Vec<String>) -> CliResult<bool> {
    match cli.cmd {
        Cmd::Gen(a) => gen(a).map(|_| true),
        Cmd::Solve(a) => solve(a, command, cli.timing),
        Cmd::Reduce(a) => reduce(a).map(|_| true),
        Cmd::IndexCode(a) => index_code(a, command, cli.timing),
        Cmd::Verify(a) => verify(a),
        Cmd::Selftest(a) => run_selftest(a, cli.timing),
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli, argv[1..].to_vec()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("lodim: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
