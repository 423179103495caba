use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use gapcheck::analysis::{AnalysisConfig, CheckGroup, GraphRecord, Subject};
use gapcheck::cayley::{parse_generators, parse_group};
use gapcheck::corpus::{cayley_subject, family_corpus, random_corpus, standard_corpus, RandomSpec};
use gapcheck::expansion::{cheeger_constant, ratio_f64, vertex_expansion};
use gapcheck::graph::{parse_graph, Family, Graph};
use gapcheck::report::RunReport;
use gapcheck::spectra::{diagnostics, normalized_spectrum_with};
use gapcheck::verdict::Status;

#[derive(Parser)]
#[command(
    name = "gapcheck",
    version,
    about = "Normalized-adjacency spectra, exact edge-expansion and bottom-gap bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the spectrum of D^-1 A with multiplicities and solver diagnostics.
    Spectrum {
        /// Edge-list file (`-` for stdin).
        path: PathBuf,
        #[arg(long, default_value_t = gapcheck::spectra::DEFAULT_CLUSTER_TOL)]
        cluster_tol: f64,
    },
    /// Compute the exact Cheeger constant and vertex-expansion.
    Cheeger {
        path: PathBuf,
        #[arg(long, default_value_t = gapcheck::expansion::DEFAULT_MAX_N)]
        max_n: usize,
    },
    /// Run every applicable check on a graph.
    Verify {
        path: PathBuf,
        #[command(flatten)]
        opts: AnalysisOpts,
    },
    /// Build a Cayley graph from a group table and verify it.
    Cayley {
        /// Group table file.
        path: PathBuf,
        /// Comma-separated generator indices, closed under inverses.
        #[arg(long)]
        gens: String,
        /// Treat the group as simple.
        #[arg(long)]
        assert_simple: bool,
        #[command(flatten)]
        opts: AnalysisOpts,
    },
    /// Emit a named family as an edge list, or verify it.
    Family {
        /// cycle, complete, complete_bipartite, hypercube or petersen.
        name: String,
        params: Vec<usize>,
        /// Verify instead of printing the edge list.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        opts: AnalysisOpts,
    },
    /// Run the standard corpus: families, Cayley graphs and random graphs.
    Corpus {
        /// Number of random graphs.
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        n_min: usize,
        #[arg(long, default_value_t = 14)]
        n_max: usize,
        #[arg(long, default_value_t = 0.25)]
        p_min: f64,
        #[arg(long, default_value_t = 0.75)]
        p_max: f64,
        /// Sampling attempts per random graph.
        #[arg(long, default_value_t = 1000)]
        retries: usize,
        /// Only families and random graphs.
        #[arg(long)]
        no_cayley: bool,
        #[command(flatten)]
        opts: AnalysisOpts,
    },
}

#[derive(Args)]
struct AnalysisOpts {
    /// Absolute verdict tolerance.
    #[arg(long, default_value_t = gapcheck::verdict::DEFAULT_TOL)]
    tol: f64,
    /// Largest n for exact expansion.
    #[arg(long, default_value_t = gapcheck::expansion::DEFAULT_MAX_N)]
    max_n: usize,
    /// Largest n for the automorphism search.
    #[arg(long, default_value_t = gapcheck::symmetry::DEFAULT_SEARCH_LIMIT)]
    vt_limit: usize,
    /// Treat the graph as vertex-transitive without searching.
    #[arg(long)]
    assume_vt: bool,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Comma-separated check groups (default: all).
    #[arg(long, alias = "check", value_delimiter = ',')]
    checks: Vec<CheckGroup>,
    /// Write the JSON report here and the CSV beside it.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl AnalysisOpts {
    fn config(&self) -> AnalysisConfig {
        let mut config = AnalysisConfig {
            tol: self.tol,
            max_n: self.max_n,
            vt_limit: self.vt_limit,
            assume_vt: self.assume_vt,
            seed: self.seed,
            ..AnalysisConfig::default()
        };
        if !self.checks.is_empty() {
            config.checks = self.checks.iter().copied().collect::<BTreeSet<_>>();
        }
        config
    }
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn load_graph(path: &Path) -> Result<Graph> {
    let text = read_input(path)?;
    parse_graph(&text).with_context(|| format!("parsing {}", path.display()))
}

fn graph_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "stdin".to_string())
}

fn fmt_value(x: f64) -> String {
    if x.is_nan() {
        "-".to_string()
    } else {
        format!("{x:.12}")
    }
}

fn print_record(r: &GraphRecord) {
    println!("graph {} ({})", r.graph_id, r.source);
    println!(
        "  n = {}, m = {}, regular degree = {}, connected = {}, bipartite = {}, vertex-transitive = {}",
        r.n,
        r.m,
        r.regular_degree.map_or("-".to_string(), |d| d.to_string()),
        r.connected,
        r.bipartite,
        r.vertex_transitive.as_deref().unwrap_or("-"),
    );
    println!("  h = {}", r.h);
    if let Some(h_out) = &r.h_out {
        println!("  h_out = {h_out}");
    }
    println!(
        "  {:<8} {:<36} {:>16} {:>16} {:>16}",
        "status", "check", "lhs", "rhs", "slack"
    );
    for v in &r.verdicts {
        let status = match v.status() {
            Status::Holds => "holds",
            Status::Failed => "FAILED",
            Status::Skipped => "skipped",
        };
        println!(
            "  {:<8} {:<36} {:>16} {:>16} {:>16}",
            status,
            v.name,
            fmt_value(v.lhs),
            fmt_value(v.rhs),
            fmt_value(v.slack)
        );
        if let Some(reason) = &v.reason {
            println!("           {reason}");
        }
    }
    if let Some(ratios) = &r.ratios {
        println!(
            "  prior-bound ratios: edge = {}, vertex = {}",
            fmt_value(ratios.edge_ratio),
            fmt_value(ratios.vertex_ratio)
        );
    }
}

fn run_report(
    subjects: &[Subject],
    opts: &AnalysisOpts,
    random: Option<RandomSpec>,
    verbose: bool,
) -> Result<ExitCode> {
    let report = RunReport::run(subjects, &opts.config(), random)?;
    if verbose {
        for r in &report.graphs {
            print_record(r);
        }
    } else {
        for (id, v) in report.failed() {
            println!(
                "FAILED {id} {}: lhs {} rhs {} slack {}",
                v.name, v.lhs, v.rhs, v.slack
            );
        }
    }
    let s = report.summary;
    println!(
        "{} graphs, {} checks: {} hold, {} skipped, {} failed",
        s.graphs, s.checks_total, s.holds, s.skipped, s.failed
    );
    if let Some(out) = &opts.out {
        let csv = report
            .write_files(out)
            .with_context(|| format!("writing {}", out.display()))?;
        println!("wrote {} and {}", out.display(), csv.display());
    }
    Ok(if s.failed > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Spectrum { path, cluster_tol } => {
            let g = load_graph(&path)?;
            let s =
                normalized_spectrum_with(&g, gapcheck::spectra::DEFAULT_MAX_SWEEPS, cluster_tol)?;
            println!("{:>20} {:>5}", "eigenvalue", "mult");
            for cluster in s.clusters().iter().rev() {
                println!("{:>20.12} {:>5}", s.values()[cluster.start], cluster.len());
            }
            let d = diagnostics(&g, &s);
            println!("1 - mu_2   = {:.12}", s.top_gap());
            println!("1 + mu_n   = {:.12}", 1.0 + s.mu_min());
            println!("1 + mu_n-1 = {:.12}", 1.0 + s.mu_second_min());
            println!(
                "sweeps {}, residual {:.3e}, trace {:.3e}, orthonormality {:.3e}",
                s.sweeps(),
                d.residual,
                d.trace,
                d.orthonormality_error
            );
        }
        Command::Cheeger { path, max_n } => {
            let g = load_graph(&path)?;
            let e = cheeger_constant(&g, max_n)?;
            println!(
                "h = {}/{} = {:.12}",
                e.h.numer(),
                e.h.denom(),
                ratio_f64(e.h)
            );
            println!(
                "witness S = {:?} (|boundary| = {}, vol S = {}, vol complement = {})",
                e.witness.members, e.witness.boundary, e.witness.vol, e.witness.vol_complement
            );
            let v = vertex_expansion(&g, max_n)?;
            println!(
                "h_out = {}/{} = {:.12}, witness {:?}",
                v.ratio.numer(),
                v.ratio.denom(),
                v.value(),
                v.witness
            );
        }
        Command::Verify { path, opts } => {
            let g = load_graph(&path)?;
            let subject = Subject::new(graph_id(&path), path.display().to_string(), g);
            return run_report(&[subject], &opts, None, true);
        }
        Command::Cayley {
            path,
            gens,
            assert_simple,
            opts,
        } => {
            let text = read_input(&path)?;
            let mut group =
                parse_group(&text).with_context(|| format!("parsing {}", path.display()))?;
            if assert_simple {
                group = group.assert_simple();
            }
            let gens = parse_generators(&gens)?;
            let subject = cayley_subject(&graph_id(&path), &group, &gens)?;
            return run_report(&[subject], &opts, None, true);
        }
        Command::Family {
            name,
            params,
            verify,
            opts,
        } => {
            let family = Family::parse(&name, &params)?;
            let g = family.build();
            if !verify {
                print!("{}", g.to_edge_list());
                return Ok(ExitCode::SUCCESS);
            }
            let subject = Subject::new(family.id(), "family", g);
            return run_report(&[subject], &opts, None, true);
        }
        Command::Corpus {
            count,
            n_min,
            n_max,
            p_min,
            p_max,
            retries,
            no_cayley,
            opts,
        } => {
            let spec = RandomSpec {
                count,
                n_min,
                n_max,
                p_min,
                p_max,
                max_retries: retries,
            };
            let subjects = if no_cayley {
                let mut s = family_corpus();
                s.extend(random_corpus(&spec, opts.seed)?);
                s
            } else {
                standard_corpus(&spec, opts.seed)?
            };
            if subjects.is_empty() {
                bail!("empty corpus");
            }
            return run_report(&subjects, &opts, Some(spec), false);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
