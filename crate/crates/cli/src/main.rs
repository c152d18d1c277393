use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use sgx_core::families::FamilyParams;
use sgx_core::forbidden::{book_count, friendship_count, is_forbidden_free};
use sgx_core::io::{parse_graph, to_json, to_sg};
use sgx_core::search::{
    enumerate_extremal_tuned, enumerate_naive_tuned, local_search, LocalSearchConfig, SearchReport, Tolerances,
};
use sgx_core::spectra::{char_poly_exact, eigenvalues_symmetric, Spectrum};
use sgx_core::verify::{
    verify_c3_bound, verify_extremal_top, verify_gamma_index, verify_identities, verify_index_crossing,
    verify_second_maximum, verify_u1_gap, VerifyReport,
};
use sgx_core::{Execution, ForbiddenSpec, SignedGraph};

#[derive(Parser)]
#[command(
    name = "sgx",
    version,
    about = "Signed graphs: spectra, switching, forbidden unbalanced triangles, extremal search"
)]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Worker threads for enumeration and search (1 = sequential).
    #[arg(long, global = true, env = "SGX_WORKERS", value_parser = clap::value_parser!(u64).range(1..))]
    workers: Option<u64>,

    /// Off-diagonal norm at which the eigensolver stops.
    #[arg(long, global = true, default_value = "1e-12", value_parser = tolerance)]
    eig_tol: f64,

    /// Index agreement for two graphs to share a class, and tie width at the top-k cut.
    #[arg(long, global = true, default_value = "1e-9", value_parser = tolerance)]
    class_tol: f64,

    /// Minimum index gain for a local-search move.
    #[arg(long, global = true, default_value = "1e-10", value_parser = tolerance)]
    improve_tol: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Thm1,
    Thm2,
    Lq1,
    Lqq1,
    Identities,
    C3bound,
    GammaIndex,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named graph, e.g. gamma:6,3, sigma:1,3,4, u1:9, knminus:5:0-1;2-3, knplus:4.
    Construct {
        family: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Largest adjacency eigenvalue, 9 decimals.
    Index { file: PathBuf },
    /// All adjacency eigenvalues, decreasing.
    Spectrum { file: PathBuf },
    /// Exact characteristic polynomial.
    Charpoly { file: PathBuf },
    /// Unbalanced triangles and the largest book and friendship configurations.
    Triangles { file: PathBuf },
    /// Whether a graph avoids a forbidden configuration, e.g. tc3:3, book:2, friendship:2, c3.
    Check {
        #[arg(long)]
        forbid: String,
        file: PathBuf,
    },
    /// Exhaustive top-k switching-isomorphism classes (n <= 7).
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        forbid: String,
        #[arg(long, default_value_t = 1)]
        top: usize,
        /// Use the unreduced 3^C(n,2) enumeration instead (n <= 6).
        #[arg(long)]
        naive: bool,
    },
    /// Seeded hill climbing with restarts.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        forbid: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        restarts: usize,
        #[arg(long, default_value_t = 5)]
        top: usize,
        /// Family spec of a class to reject as incumbent; repeatable.
        #[arg(long)]
        exclude: Vec<String>,
    },
    /// Check a family of claims over a range.
    Verify {
        #[arg(long, value_enum)]
        target: Target,
        /// `lo:hi` over n (over t for thm2).
        #[arg(long)]
        range: String,
        /// Order for thm2.
        #[arg(long, default_value_t = 9)]
        n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        restarts: usize,
    },
}

enum Outcome {
    Success,
    AssertionFailed,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(&cli) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::AssertionFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn execution(cli: &Cli) -> Execution {
    match cli.workers {
        Some(w) => Execution::with_workers(w as usize),
        None => Execution::default(),
    }
}

fn tolerances(cli: &Cli) -> Tolerances {
    Tolerances { class: cli.class_tol, improve: cli.improve_tol }
}

fn tolerance(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 0.0 => Ok(v),
        _ => Err(format!("`{s}` is not a nonnegative number")),
    }
}

fn spectrum_of(cli: &Cli, g: &SignedGraph) -> Result<Spectrum> {
    Ok(eigenvalues_symmetric(&g.adjacency().to_f64(), cli.eig_tol)?)
}

fn read_graph(path: &Path) -> Result<SignedGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read `{}`", path.display()))?;
    parse_graph(&text).with_context(|| format!("`{}`", path.display()))
}

fn forbid(spec: &str) -> Result<ForbiddenSpec> {
    Ok(spec.parse()?)
}

fn family(spec: &str) -> Result<SignedGraph> {
    let params: FamilyParams = spec.parse()?;
    params.build().with_context(|| format!("cannot build `{spec}`"))
}

fn parse_range(s: &str) -> Result<(usize, usize)> {
    let (lo, hi) = s.split_once(':').with_context(|| format!("range `{s}` should be lo:hi"))?;
    let lo: usize = lo.trim().parse().with_context(|| format!("bad range bound `{lo}`"))?;
    let hi: usize = hi.trim().parse().with_context(|| format!("bad range bound `{hi}`"))?;
    if lo > hi {
        bail!("range `{s}` has lo > hi");
    }
    Ok((lo, hi))
}

fn emit_search(cli: &Cli, r: &SearchReport) {
    match cli.format {
        Format::Json => println!("{}", r.to_json()),
        Format::Table => print!("{}", r.to_table()),
    }
}

fn emit_verify(cli: &Cli, r: &VerifyReport) -> Outcome {
    match cli.format {
        Format::Json => println!("{}", r.to_json()),
        Format::Table => print!("{}", r.to_table()),
    }
    if r.passed {
        Outcome::Success
    } else {
        Outcome::AssertionFailed
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Construct { family: spec, output } => {
            let g = family(spec)?;
            let text = if json { to_json(&g) + "\n" } else { to_sg(&g) };
            match output {
                Some(p) => fs::write(p, text).with_context(|| format!("cannot write `{}`", p.display()))?,
                None => print!("{text}"),
            }
        }
        Command::Index { file } => {
            let s = spectrum_of(cli, &read_graph(file)?)?;
            if json {
                println!("{}", json!({ "index": s.index() }));
            } else {
                println!("{:.9}", s.index());
            }
        }
        Command::Spectrum { file } => {
            let s = spectrum_of(cli, &read_graph(file)?)?;
            if json {
                println!("{}", serde_json::to_string(&s)?);
            } else {
                for v in &s.values {
                    println!("{v:.9}");
                }
            }
        }
        Command::Charpoly { file } => {
            let p = char_poly_exact(&read_graph(file)?.adjacency())?;
            if json {
                println!("{}", json!({ "charpoly": p.to_string(), "coefficients": p }));
            } else {
                println!("{p}");
            }
        }
        Command::Triangles { file } => {
            let g = read_graph(file)?;
            let tris = g.unbalanced_triangles();
            let book = book_count(&g);
            let fr = friendship_count(&g);
            if json {
                let v = json!({
                    "unbalanced_triangles": tris.len(),
                    "triangles": tris,
                    "book": { "edge": book.edge, "count": book.count },
                    "friendship": { "vertex": fr.vertex, "count": fr.count },
                });
                println!("{}", serde_json::to_string_pretty(&v)?);
            } else {
                println!("unbalanced triangles: {}", tris.len());
                for [a, b, c] in &tris {
                    println!("  {a} {b} {c}");
                }
                match book.edge {
                    Some((u, v)) => println!("largest book: {} on edge {u}-{v}", book.count),
                    None => println!("largest book: 0"),
                }
                println!("largest friendship: {} at vertex {}", fr.count, fr.vertex);
            }
        }
        Command::Check { forbid: spec, file } => {
            let spec = forbid(spec)?;
            let g = read_graph(file)?;
            let free = is_forbidden_free(&g, &spec);
            let count = g.count_unbalanced_triangles();
            if json {
                println!("{}", json!({ "forbid": spec, "free": free, "unbalanced_triangles": count }));
            } else {
                println!("free: {free} (unbalanced triangles = {count})");
            }
        }
        Command::Enumerate { n, forbid: spec, top, naive } => {
            let spec = forbid(spec)?;
            let r = if *naive {
                enumerate_naive_tuned(*n, &spec, *top, tolerances(cli))?
            } else {
                enumerate_extremal_tuned(*n, &spec, *top, execution(cli), tolerances(cli))?
            };
            emit_search(cli, &r);
        }
        Command::Search { n, forbid: spec, seed, restarts, top, exclude } => {
            let excluded = exclude.iter().map(|e| family(e)).collect::<Result<Vec<_>>>()?;
            let cfg = LocalSearchConfig::new(*n, forbid(spec)?, *seed, *restarts)
                .exclude(excluded)
                .top_k(*top)
                .execution(execution(cli))
                .tolerances(tolerances(cli));
            emit_search(cli, &local_search(&cfg)?);
        }
        Command::Verify { target, range, n, seed, restarts } => {
            let (lo, hi) = parse_range(range)?;
            let report = match target {
                Target::Identities => verify_identities(lo, hi)?,
                Target::GammaIndex => verify_gamma_index(lo, hi)?,
                Target::Lq1 => verify_index_crossing(lo, hi)?,
                Target::Lqq1 => verify_u1_gap(lo, hi)?,
                Target::C3bound => verify_c3_bound(lo, hi)?,
                Target::Thm1 => verify_extremal_top(lo, hi, execution(cli))?,
                Target::Thm2 => {
                    let mut all_ok = true;
                    for t in lo..=hi {
                        let (v, _) = verify_second_maximum(*n, t, *seed, *restarts, execution(cli))?;
                        all_ok &= matches!(emit_verify(cli, &v), Outcome::Success);
                    }
                    return Ok(if all_ok { Outcome::Success } else { Outcome::AssertionFailed });
                }
            };
            return Ok(emit_verify(cli, &report));
        }
    }
    Ok(Outcome::Success)
}
