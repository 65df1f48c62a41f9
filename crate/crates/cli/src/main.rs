use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sha2::{Digest, Sha256};

use mds_core::dag::{build_dag, evaluate_counts, prune};
use mds_core::enumerate::{delay_profile, run, Engine};
use mds_core::extremal::{table, PruneMode};
use mds_core::growth::{
    boundary_seeds, check_closure, check_identities, check_seed, lambda_f64, load_polytope, search_from,
    search_lambda, upper_bound_constant, Polytope, SearchOutcome,
};
use mds_core::oracle::brute_force_mds;
use mds_core::{count_mds, decompose, generators, parse_tree, vector_of, OracleError, Tree};

#[derive(Parser)]
#[command(name = "mds", about = "Count, enumerate and bound minimal dominating sets of trees", disable_version_flag = true)]
struct Cli {
    /// Print version and checksums of the binary and bundled data.
    #[arg(long, short = 'V')]
    version: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Number of minimal dominating sets.
    Count { file: PathBuf },
    /// Category vector (G,S,L,d,p,f) at a root.
    Vector {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        root: usize,
    },
    /// List all minimal dominating sets, one per line.
    Enum {
        file: PathBuf,
        #[arg(long, default_value_t = Engine::Enum2)]
        engine: Engine,
        /// Append delay statistics as comments.
        #[arg(long)]
        stats: bool,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Maximum counts M_n as CSV.
    Table {
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value = "majorize")]
        hull: PruneMode,
        /// Directory receiving one optimal tree per n.
        #[arg(long)]
        provenance: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Write a tree of a named family.
    Gen {
        /// path, star, comb, extended-comb, snowflake, star-of-snowflakes, record, star-clusters
        family: String,
        k: usize,
        #[arg(long, default_value_t = 2)]
        cluster_size: usize,
    },
    /// List all minimal dominating sets by exhaustive search.
    Oracle { file: PathBuf },
    /// Cross-check the oracle, the counter and all engines.
    Check { file: PathBuf },
    /// Verify that the polytope is closed under the product.
    Certify {
        #[arg(long)]
        polytope: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Floating-point search for a closed polytope at a trial growth constant.
    Search {
        /// Trial constant; `auto` means 95^(1/13).
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        extra: Option<f64>,
        #[arg(long, default_value_t = 200)]
        max_iter: usize,
        #[arg(long, default_value_t = 1e6)]
        norm_cap: f64,
        /// Start from (1/λ,0,...,0) and eight known boundary vertices instead.
        #[arg(long)]
        boundary_seeds: bool,
    },
    /// Print the expression DAG, one node per line.
    DumpDag {
        file: PathBuf,
        #[arg(long)]
        no_prune: bool,
    },
}

enum Failure {
    /// Usage or input errors; exit code 2.
    Input(String),
    /// Runtime errors; exit code 1.
    Error(String),
    /// A failed check, reported on stdout; exit code 1.
    Verdict(String),
}

type CliResult = Result<String, Failure>;

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn fail<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Error(e.to_string())
}

fn read_source(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(input)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
    }
}

fn read_tree(path: &Path) -> Result<Tree, Failure> {
    parse_tree(&read_source(path)?).map_err(input)
}

fn set_threads(n: usize) -> Result<(), Failure> {
    rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global().map_err(fail)
}

fn line(set: &[usize]) -> String {
    set.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn version() -> String {
    let exe = std::env::current_exe()
        .and_then(std::fs::read)
        .map(|b| hex::encode(Sha256::digest(b)))
        .unwrap_or_else(|_| "unavailable".into());
    format!(
        "mds {}\nbinary sha256 {exe}\npolytope sha256 {}\n",
        env!("CARGO_PKG_VERSION"),
        Polytope::bundled().checksum()
    )
}

fn cmd_enum(file: &Path, engine: Engine, stats: bool, limit: Option<usize>) -> CliResult {
    let t = read_tree(file)?;
    let (dag, _) = prune(&build_dag(&decompose(&t, 0).map_err(input)?)).map_err(fail)?;
    let stream = run(engine.start(&dag).as_mut(), limit).map_err(fail)?;
    let mut out = String::new();
    for s in &stream.solutions {
        out.push_str(&line(s));
        out.push('\n');
    }
    if stats {
        let p = delay_profile(&stream);
        let _ = writeln!(out, "# engine {engine}");
        let _ = writeln!(out, "# solutions {}", stream.solutions.len());
        let _ = writeln!(out, "# max_delay {}", p.max);
        let _ = writeln!(out, "# mean_delay {:.3}", p.mean);
        let _ = writeln!(out, "# first_delay {}", p.first);
        let _ = writeln!(out, "# tail {}", p.tail);
        let _ = writeln!(out, "# max_products {}", p.max_products);
    }
    Ok(out)
}

fn cmd_table(max_n: usize, hull: PruneMode, provenance: Option<&Path>) -> CliResult {
    let tab = table(max_n, hull).map_err(fail)?;
    let mut out = String::from("n,M_n,hull_size,convex_size\n");
    for r in &tab.rows {
        let convex = r.convex_size.map_or(String::new(), |c| c.to_string());
        let _ = writeln!(out, "{},{},{},{convex}", r.n, r.m_n, r.hull_size);
    }
    if let Some(dir) = provenance {
        std::fs::create_dir_all(dir).map_err(fail)?;
        for r in &tab.rows {
            let t = tab.reconstruct_tree(r.n).map_err(fail)?;
            let body = format!("# M_{} = {}\n{}", r.n, r.m_n, t.render());
            std::fs::write(dir.join(format!("tree_{}.txt", r.n)), body).map_err(fail)?;
        }
    }
    Ok(out)
}

fn cmd_gen(family: &str, k: usize, cluster_size: usize) -> CliResult {
    let t = match family {
        "path" => Tree::path(k),
        "star" => generators::star(k),
        "comb" => generators::comb(k),
        "extended-comb" => generators::extended_comb(k),
        "snowflake" => generators::snowflake(),
        "star-of-snowflakes" => generators::star_of_snowflakes(k),
        "record" => generators::record_tree(k),
        "star-clusters" => generators::chain_of_star_clusters(k, cluster_size),
        other => return Err(Failure::Input(format!("unknown family {other:?}"))),
    };
    Ok(t.render())
}

fn cmd_check(file: &Path) -> CliResult {
    let t = read_tree(file)?;
    let count = count_mds(&t);
    let (dag, _) = prune(&build_dag(&decompose(&t, 0).map_err(input)?)).map_err(fail)?;
    let target = evaluate_counts(&dag)[dag.target].clone();
    let mut out = String::new();
    let mut ok = true;
    let mut verdict = |out: &mut String, name: &str, pass: bool, detail: String| {
        ok &= pass;
        let _ = writeln!(out, "{} {name} {detail}", if pass { "PASS" } else { "FAIL" });
    };
    verdict(&mut out, "dag-count", target == count, format!("{target} vs {count}"));
    let reference = match brute_force_mds(&t) {
        Ok(sets) => {
            let n = sets.len();
            verdict(&mut out, "oracle-count", count == n.into(), format!("{n} vs {count}"));
            Some(sets)
        }
        Err(OracleError::TooLarge { n, limit }) => {
            let _ = writeln!(out, "SKIP oracle n={n} exceeds {limit}");
            None
        }
    };
    for engine in Engine::ALL {
        let stream = run(engine.start(&dag).as_mut(), None).map_err(fail)?;
        let mut sets = stream.solutions;
        let emitted = sets.len();
        sets.sort();
        let distinct = sets.windows(2).all(|w| w[0] != w[1]);
        let pass = distinct
            && count == emitted.into()
            && reference.as_ref().is_none_or(|r| *r == sets);
        verdict(&mut out, &engine.to_string(), pass, format!("{emitted} solutions"));
    }
    let _ = writeln!(out, "{}", if ok { "PASS" } else { "FAIL" });
    if ok {
        Ok(out)
    } else {
        Err(Failure::Verdict(out))
    }
}

fn cmd_certify(polytope: Option<&Path>, report: Option<&Path>) -> CliResult {
    let p = match polytope {
        Some(path) => load_polytope(&read_source(path)?).map_err(input)?,
        None => Polytope::bundled(),
    };
    let mut out = String::new();
    let mut ok = true;
    let _ = writeln!(out, "vertices {}", p.len());
    let bad = check_identities(&p);
    let identities: usize = p.vertices.iter().map(|v| v.identities.len()).sum();
    ok &= bad.is_empty();
    let _ = writeln!(out, "identities {}/{} exact", identities - bad.len(), identities);
    for (m, a, b) in &bad {
        let _ = writeln!(out, "identity FAIL v{m} = v{a} * v{b}");
    }
    let seed = check_seed(&p);
    ok &= seed;
    let _ = writeln!(out, "seed {}", if seed { "member" } else { "MISSING" });
    let closure = check_closure(&p);
    ok &= closure.passed();
    let _ = writeln!(
        out,
        "pairs {} certified {} equal {} failed {}",
        closure.pairs,
        closure.certificates.len(),
        closure.equalities(),
        closure.failures.len()
    );
    for (i, j, e) in closure.failures.iter().take(20) {
        let _ = writeln!(out, "pair ({i},{j}) FAIL {e}");
    }
    if let Some(c) = closure.min_margin() {
        let _ = writeln!(out, "min margin {:.4e} at ({},{})", c.margin_f64().unwrap_or(f64::NAN), c.i, c.j);
    }
    if !p.is_empty() {
        let (bound, at) = upper_bound_constant(&p).map_err(fail)?;
        let _ = writeln!(out, "upper bound constant {:.8} at v{at}", bound.to_f64());
    }
    if let Some(path) = report {
        std::fs::write(path, closure.render()).map_err(fail)?;
    }
    let _ = writeln!(out, "{}", if ok { "PASS" } else { "FAIL" });
    if ok {
        Ok(out)
    } else {
        Err(Failure::Verdict(out))
    }
}

fn cmd_search(lambda: &str, extra: Option<f64>, max_iter: usize, norm_cap: f64, boundary: bool) -> CliResult {
    let trial = if lambda == "auto" { lambda_f64() } else { lambda.parse::<f64>().map_err(input)? };
    if !(trial > 1.0) {
        return Err(Failure::Input(format!("trial constant must exceed 1, got {trial}")));
    }
    let outcome = if boundary {
        search_from(boundary_seeds(&Polytope::bundled(), trial), max_iter, norm_cap)
    } else {
        search_lambda(trial, extra, max_iter, norm_cap)
    }
    .map_err(fail)?;
    let mut out = String::new();
    match outcome {
        SearchOutcome::Converged { iterations, vertices } => {
            let _ = writeln!(out, "converged after {iterations} iterations with {} vertices", vertices.len());
            for v in vertices {
                let _ = writeln!(out, "{}", v.map(|x| format!("{x:.10}")).join(" "));
            }
        }
        SearchOutcome::Diverged { iteration } => {
            let _ = writeln!(out, "diverged at iteration {iteration}");
        }
    }
    Ok(out)
}

fn cmd_dump(file: &Path, no_prune: bool) -> CliResult {
    let t = read_tree(file)?;
    let mut dag = build_dag(&decompose(&t, 0).map_err(input)?);
    if !no_prune {
        dag = prune(&dag).map_err(fail)?.0;
    }
    Ok(dag.dump(&evaluate_counts(&dag)))
}

fn dispatch(cmd: Command) -> CliResult {
    match cmd {
        Command::Count { file } => Ok(format!("{}\n", count_mds(&read_tree(&file)?))),
        Command::Vector { file, root } => {
            let t = read_tree(&file)?;
            Ok(format!("{}\n", vector_of(&t, root).map_err(input)?))
        }
        Command::Enum { file, engine, stats, limit } => cmd_enum(&file, engine, stats, limit),
        Command::Table { max_n, hull, provenance, threads } => {
            set_threads(threads)?;
            cmd_table(max_n, hull, provenance.as_deref())
        }
        Command::Gen { family, k, cluster_size } => cmd_gen(&family, k, cluster_size),
        Command::Oracle { file } => {
            let sets = brute_force_mds(&read_tree(&file)?).map_err(fail)?;
            Ok(sets.iter().map(|s| line(s) + "\n").collect())
        }
        Command::Check { file } => cmd_check(&file),
        Command::Certify { polytope, report, threads } => {
            set_threads(threads)?;
            cmd_certify(polytope.as_deref(), report.as_deref())
        }
        Command::Search { lambda, extra, max_iter, norm_cap, boundary_seeds } => {
            cmd_search(&lambda, extra, max_iter, norm_cap, boundary_seeds)
        }
        Command::DumpDag { file, no_prune } => cmd_dump(&file, no_prune),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = if cli.version {
        Ok(version())
    } else {
        match cli.command {
            Some(cmd) => dispatch(cmd),
            None => Err(Failure::Input("missing subcommand; see --help".into())),
        }
    };
    let mut stdout = io::stdout().lock();
    match result {
        Ok(text) => {
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(Failure::Verdict(text)) => {
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::from(1)
        }
        Err(Failure::Error(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
