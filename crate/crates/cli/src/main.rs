use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use xchain::graphs::{named, parse_graph6};
use xchain::{Bipartition, BitVec, Error, Graph};

mod render;
mod report;

use report::{Format, GraphInfo, Report, Results};

#[derive(Parser, Debug)]
#[command(name = "xchain", version, about = "X-basis analysis of graph states")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GraphArg {
    /// `star:4`, `cycle:5`, `house`, `@file.edges` or `g6:<graph6>`
    #[arg(long)]
    graph: String,
}

#[derive(Args, Debug)]
struct PartArgs {
    #[arg(long)]
    graph: String,
    /// Alice's vertices, e.g. `1,2,3`
    #[arg(long)]
    part_a: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// X-chain group, correlation generators and x_Gamma
    Xchains(GraphArg),
    /// X-basis expansion with its factorization diagram
    Represent(GraphArg),
    /// Bias degree against the all-plus X state
    Bias(GraphArg),
    /// Overlap of two graph states
    Overlap {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        graph2: String,
    },
    /// Catalog of Z-balanced graphs
    Balanced {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
    /// Schmidt decomposition across a bipartition
    Schmidt(PartArgs),
    /// Entanglement localization with Z errors on Alice's side
    Localize {
        #[command(flatten)]
        part: PartArgs,
        /// Vertices hit by Z errors, e.g. `2` or `1,3`
        #[arg(long)]
        errors: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare the factorization against the dense oracle
    Verify {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Resolves a graph spec: a named graph, `@path` to an edge list, or `g6:` graph6.
pub fn load_graph(spec: &str) -> Result<Graph, Error> {
    if let Some(path) = spec.strip_prefix('@') {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
        Graph::parse_edge_list(&text)
    } else if let Some(g6) = spec.strip_prefix("g6:") {
        parse_graph6(g6)
    } else {
        named(spec.strip_prefix("named:").unwrap_or(spec))
    }
}

fn vertex_list(n: usize, list: &str) -> Result<Vec<usize>, Error> {
    let mut out = Vec::new();
    for tok in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let v: usize = tok.parse().map_err(|_| Error::Parse(format!("bad vertex `{tok}`")))?;
        if v == 0 || v > n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        if out.contains(&v) {
            return Err(Error::Partition(format!("vertex {v} listed twice")));
        }
        out.push(v);
    }
    Ok(out)
}

fn partition(g: &Graph, list: &str) -> Result<Bipartition, Error> {
    Bipartition::from_vertices(g.n(), &vertex_list(g.n(), list)?)
}

fn execute(command: &Command) -> Result<(Option<GraphInfo>, Results), Error> {
    let with_graph = |spec: &str, f: &dyn Fn(&Graph) -> Result<Results, Error>| {
        let g = load_graph(spec)?;
        Ok((Some(GraphInfo::of(&g)), f(&g)?))
    };
    match command {
        Command::Xchains(a) => with_graph(&a.graph, &report::xchains),
        Command::Represent(a) => with_graph(&a.graph, &report::represent),
        Command::Bias(a) => with_graph(&a.graph, &report::bias),
        Command::Overlap { graph, graph2 } => {
            let h = load_graph(graph2)?;
            with_graph(graph, &|g| report::overlap_of(g, &h))
        }
        Command::Balanced { max_n } => Ok((None, report::balanced(*max_n)?)),
        Command::Schmidt(p) => with_graph(&p.graph, &|g| report::schmidt(g, &partition(g, &p.part_a)?)),
        Command::Localize { part, errors, seed } => with_graph(&part.graph, &|g| {
            let errors = BitVec::from_vertices(g.n(), &vertex_list(g.n(), errors)?)?;
            report::localize(g, &partition(g, &part.part_a)?, errors, *seed)
        }),
        Command::Verify { max_n, samples, seed } => Ok((None, report::verify(*max_n, *samples, *seed)?)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (graph, results) = match execute(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mismatch = matches!(results, Results::Verify { ok: false, .. });
    let report = Report { command: std::env::args().skip(1).collect(), format: cli.format, graph, results };
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize")),
        Format::Text => print!("{}", render::text(&report)),
    }
    if mismatch {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
