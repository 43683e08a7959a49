//! `treedep`: analyze spanning-tree edge densities, build graphs with a
//! prescribed dependence, and run the verification suites.
//!
//! Exit codes: 0 when everything checked out, 1 when a verification failed
//! (the witness is printed), 2 for usage and domain errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use treedep_core::constructions::{ClaimKind, Family, Strategy, TargetRational};
use treedep_core::rational::{format_ratio, parse_ratio};
use treedep_core::search::{search_planar_dep, SearchConfig};
use treedep_core::verify::{
    build_construction, check_recipe_claim, run_suite, OracleBudget, Suite, SuiteConfig,
};
use treedep_core::{density_report, parse_graph, resistance, serialize_graph, Multigraph, VertexId};

#[derive(Parser, Debug)]
#[command(name = "treedep", version, about = "Exact spanning-tree edge densities and dependences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the density of every edge, the dependence and its argmax.
    Analyze {
        graph: PathBuf,
        /// Emit the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Build a graph realizing p/q, then re-verify the claim by analysis.
    Construct {
        #[arg(value_enum)]
        family: FamilyArg,
        /// Target as p/q with 0 < p/q < 1.
        target: String,
        #[arg(long, value_enum, default_value_t = StrategyArg::Greedy)]
        strategy: StrategyArg,
        /// Write the graph to FILE and the recipe to FILE.recipe.json.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Run a property suite; prints a TSV summary and any witnesses.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Enumeration budget as V,E,T (vertices, edge units, trees).
        #[arg(long, default_value = "9,18,1000000")]
        budget: OracleBudget,
        /// Size of the random corpus.
        #[arg(long, default_value_t = 500)]
        corpus: usize,
        /// Largest denominator of the constructions checked.
        #[arg(long, default_value_t = 6)]
        max_q: u64,
        /// Also write summary.tsv and witnesses.json into DIR.
        #[arg(long, value_name = "DIR")]
        out_dir: Option<PathBuf>,
    },
    /// Search small simple planar graphs for dependences in (lo, hi].
    SearchPlanar {
        #[arg(long)]
        max_v: usize,
        #[arg(long)]
        max_e: usize,
        #[arg(long, default_value = "1/3")]
        lo: String,
        #[arg(long, default_value = "1/2")]
        hi: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Random triangulations to grow.
        #[arg(long, default_value_t = 200)]
        rounds: usize,
    },
    /// Exact effective resistance between two vertices.
    Resistance { graph: PathBuf, u: usize, v: usize },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    /// Bipartite necklace of complete bipartite blocks (dependence).
    Bipartite,
    /// Theta graph whose hub edge has the target density.
    Theta,
    /// Planar multigraph dual to a theta graph (dependence).
    ThetaDual,
    /// Simple planar necklace of H gadgets (dependence, p/q > 1/2).
    Planar,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Bipartite => Family::BipartiteNecklace,
            FamilyArg::Theta => Family::ThetaDensity,
            FamilyArg::ThetaDual => Family::ThetaDualMultigraph,
            FamilyArg::Planar => Family::HNecklace,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Greedy,
    Uniform,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::Greedy => Strategy::Greedy,
            StrategyArg::Uniform => Strategy::Uniform,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Foster,
    Dual,
    Bound,
    Forms,
    Oracle,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Foster => Suite::Foster,
            SuiteArg::Dual => Suite::Dual,
            SuiteArg::Bound => Suite::Bound,
            SuiteArg::Forms => Suite::Forms,
            SuiteArg::Oracle => Suite::Oracle,
        }
    }
}

/// How a command ended, mapped onto the exit codes.
enum Failure {
    /// A claim did not hold (exit 1).
    Verification,
    /// Bad input or a target outside a construction's domain (exit 2).
    Usage(String),
}

type Outcome = Result<(), Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn read_graph(path: &Path) -> Result<Multigraph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn analyze(path: &Path, json: bool) -> Outcome {
    let g = read_graph(path)?;
    let report = density_report(&g).map_err(usage)?;
    if json {
        let text = serde_json::to_string(&report.to_json(&g)).expect("report serializes");
        println!("{text}");
        return Ok(());
    }
    println!("vertices\t{}", g.vertex_count());
    println!("edge_units\t{}", g.edge_units());
    println!("tau\t{}", report.tau);
    println!("edge\tu\tv\tmult\ttau_e\tdensity");
    for (d, rec) in report.per_edge.iter().zip(g.edges()) {
        println!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            d.edge.0,
            rec.u(),
            rec.v(),
            rec.multiplicity(),
            d.tau_edge,
            format_ratio(&d.density)
        );
    }
    println!("dep\t{}", format_ratio(&report.dep));
    let argmax: Vec<String> = report.argmax.iter().map(|e| e.0.to_string()).collect();
    println!("argmax\t{}", argmax.join(" "));
    Ok(())
}

fn construct(family: FamilyArg, target: &str, strategy: StrategyArg, out: Option<&Path>) -> Outcome {
    let t: TargetRational = target.parse().map_err(usage)?;
    let family = Family::from(family);
    let (graph, recipe) = build_construction(family, t, strategy.into()).map_err(usage)?;
    let graph_text = serialize_graph(&graph);
    let recipe_text = serde_json::to_string_pretty(&recipe.to_json()).expect("recipe serializes");
    match out {
        Some(path) => {
            let recipe_path = recipe_path(path);
            fs::write(path, &graph_text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            fs::write(&recipe_path, format!("{recipe_text}\n"))
                .map_err(|e| usage(format!("{}: {e}", recipe_path.display())))?;
            println!("graph\t{}", path.display());
            println!("recipe\t{}", recipe_path.display());
        }
        None => {
            print!("{graph_text}");
            println!("{recipe_text}");
        }
    }
    // Re-verify from the written text, not from the in-memory graph.
    let reparsed = parse_graph(&graph_text).map_err(usage)?;
    let report = density_report(&reparsed).map_err(usage)?;
    let valid = recipe.validate();
    let outcome = check_recipe_claim(&reparsed, &recipe, &report);
    let kind = match recipe.claim.kind {
        ClaimKind::Density => "density",
        ClaimKind::Dependence => "dep",
    };
    if outcome.passed && valid.is_ok() {
        println!(
            "PASS\t{kind} {} at edge {} (|V|={}, |E|={})",
            format_ratio(report.density_of(recipe.key_edge)),
            recipe.key_edge.0,
            reparsed.vertex_count(),
            reparsed.edge_units()
        );
        Ok(())
    } else {
        println!("FAIL\t{outcome}");
        if let Err(e) = valid {
            println!("recipe\t{e}");
        }
        if let Some(w) = &outcome.witness {
            println!("{}", serde_json::to_string_pretty(w).expect("witness serializes"));
        }
        Err(Failure::Verification)
    }
}

fn recipe_path(graph: &Path) -> PathBuf {
    let mut name = graph.as_os_str().to_owned();
    name.push(".recipe.json");
    PathBuf::from(name)
}

fn verify(suite: Suite, config: SuiteConfig, out_dir: Option<&Path>) -> Outcome {
    let report = run_suite(suite, &config).map_err(usage)?;
    print!("{}", report.summary_tsv());
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
        fs::write(dir.join("summary.tsv"), report.summary_tsv()).map_err(usage)?;
        fs::write(dir.join("witnesses.json"), report.witnesses_json() + "\n").map_err(usage)?;
    }
    if report.passed() {
        println!("PASS\t{}", suite.name());
        Ok(())
    } else {
        for o in report.failures() {
            println!("FAIL\t{o}");
        }
        println!("{}", report.witnesses_json());
        Err(Failure::Verification)
    }
}

fn search(max_v: usize, max_e: usize, lo: &str, hi: &str, config: SearchConfig) -> Outcome {
    let lo = parse_ratio(lo).map_err(usage)?;
    let hi = parse_ratio(hi).map_err(usage)?;
    if lo >= hi {
        return Err(usage("--lo must be smaller than --hi"));
    }
    if max_v < 2 || max_e < 1 {
        return Err(usage("--max-v must be at least 2 and --max-e at least 1"));
    }
    let found = search_planar_dep(max_v, max_e, &lo, &hi, &config);
    println!(
        "# best-effort search: {} simple planar graphs with dep in ({}, {}]; not exhaustive",
        found.len(),
        format_ratio(&lo),
        format_ratio(&hi)
    );
    for c in &found {
        println!(
            "# dep {} |V|={} |E|={}",
            format_ratio(&c.dep),
            c.graph.vertex_count(),
            c.graph.edge_units()
        );
        print!("{}", serialize_graph(&c.graph));
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Analyze { graph, json } => analyze(&graph, json),
        Command::Construct {
            family,
            target,
            strategy,
            out,
        } => construct(family, &target, strategy, out.as_deref()),
        Command::Verify {
            suite,
            seed,
            budget,
            corpus,
            max_q,
            out_dir,
        } => verify(
            suite.into(),
            SuiteConfig {
                seed,
                budget,
                corpus_size: corpus,
                max_q,
            },
            out_dir.as_deref(),
        ),
        Command::SearchPlanar {
            max_v,
            max_e,
            lo,
            hi,
            seed,
            rounds,
        } => search(
            max_v,
            max_e,
            &lo,
            &hi,
            SearchConfig {
                seed,
                rounds,
                ..SearchConfig::default()
            },
        ),
        Command::Resistance { graph, u, v } => {
            let g = read_graph(&graph)?;
            let omega = resistance(&g, VertexId(u), VertexId(v)).map_err(usage)?;
            println!("{}", format_ratio(&omega));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version exit 0; malformed invocations exit 2.
            e.exit()
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
