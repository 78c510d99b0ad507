//! `grpcomplex`: bounds, builders, verification and exhaustive search for
//! the complexity of finitely presented groups.

mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use grpcomplex::coset::DEFAULT_MAX_COSETS;
use grpcomplex::families::{ChainStrategy, MilnorFamily};
use grpcomplex::search::SearchParams;
use serde_json::Value;

use report::{Output, RunReport, Status};

#[derive(Parser, Debug)]
#[command(name = "grpcomplex", version, about = "Complexity of finitely presented groups")]
struct Cli {
    /// Print one JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Length, T-cost, Abelianization and torsion lower bounds of a presentation.
    Bounds {
        /// Presentation file, or `-` for standard input.
        file: String,
    },
    /// Print a short presentation of a standard group.
    #[command(subcommand)]
    Present(Present),
    /// Check the order of a presented group by coset enumeration.
    Verify {
        file: String,
        #[arg(long)]
        order: u64,
        /// Also require the group to be cyclic.
        #[arg(long)]
        cyclic: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        coset_cap: usize,
    },
    /// Exact complexity by exhaustive search.
    #[command(subcommand)]
    Search(Search),
    /// Continued fractions and Zaremba pairs.
    #[command(subcommand)]
    Zaremba(Zaremba),
    /// Complexity estimates for lens spaces and Seifert manifolds.
    #[command(subcommand)]
    Manifold(Manifold),
    /// Roots of x = a·log2(x) + c.
    Roots {
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
    },
}

#[derive(Subcommand, Debug)]
enum Present {
    /// Z/p by division chains.
    Cyclic {
        p: u64,
        #[arg(long, default_value = "dp")]
        strategy: ChainStrategy,
    },
    /// Z/p1 x Z/p2 x ... with pairwise commutators.
    Abelian {
        #[arg(required = true)]
        orders: Vec<u64>,
        #[arg(long, default_value = "dp")]
        strategy: ChainStrategy,
    },
    /// A Milnor group times Z/q.
    Milnor {
        /// Q, D, P24, P48, P120 or Pprime.
        family: MilnorFamily,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, default_value_t = 1)]
        q: u64,
        #[arg(long, default_value = "dp")]
        strategy: ChainStrategy,
    },
}

#[derive(Subcommand, Debug)]
enum Search {
    /// Shortest presentation of Z/n.
    Cyclic {
        n: u64,
        #[arg(long)]
        max_length: usize,
        /// Defaults to --max-length; smaller values make the answer conditional.
        #[arg(long)]
        max_gens: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        coset_cap: usize,
        #[command(flatten)]
        jobs: Jobs,
    },
}

#[derive(Args, Debug)]
struct Jobs {
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand, Debug)]
enum Zaremba {
    /// Continued fraction of p/q and the Zaremba predicates.
    Check { p: u64, q: u64 },
    /// Best partner q for every 3 <= p <= max-p, as rows p,q,max_quotient.
    Scan {
        #[arg(long)]
        max_p: u64,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Consecutive Fibonacci numbers (F_{k+1}, F_k).
    Fib { k: u32 },
    /// Check the partial quotient sum bounds over all pairs with p <= max-p.
    Sweep {
        #[arg(long)]
        max_p: u64,
        #[command(flatten)]
        jobs: Jobs,
    },
}

#[derive(Subcommand, Debug)]
enum Manifold {
    /// Lens space L(p, q).
    Lens {
        p: u64,
        q: u64,
        /// Use the weak Zaremba hypothesis.
        #[arg(long)]
        weak: bool,
    },
    /// Seifert manifold (S^2; (2,1), (2,1), (p,q), -1).
    Seifert { p: u64, q: u64 },
}

fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build()?;
    Ok(pool.install(f))
}

fn subcommand_name(c: &Command) -> &'static str {
    match c {
        Command::Bounds { .. } => "bounds",
        Command::Present(Present::Cyclic { .. }) => "present cyclic",
        Command::Present(Present::Abelian { .. }) => "present abelian",
        Command::Present(Present::Milnor { .. }) => "present milnor",
        Command::Verify { .. } => "verify",
        Command::Search(Search::Cyclic { .. }) => "search cyclic",
        Command::Zaremba(Zaremba::Check { .. }) => "zaremba check",
        Command::Zaremba(Zaremba::Scan { .. }) => "zaremba scan",
        Command::Zaremba(Zaremba::Fib { .. }) => "zaremba fib",
        Command::Zaremba(Zaremba::Sweep { .. }) => "zaremba sweep",
        Command::Manifold(Manifold::Lens { .. }) => "manifold lens",
        Command::Manifold(Manifold::Seifert { .. }) => "manifold seifert",
        Command::Roots { .. } => "roots",
    }
}

fn run(command: Command) -> Result<Output> {
    match command {
        Command::Bounds { file } => commands::bounds(&file),
        Command::Present(Present::Cyclic { p, strategy }) => commands::present_cyclic(p, strategy),
        Command::Present(Present::Abelian { orders, strategy }) => commands::present_abelian(&orders, strategy),
        Command::Present(Present::Milnor { family, n, k, q, strategy }) => {
            commands::present_milnor(&commands::milnor_spec(family, n, k, q)?, strategy)
        }
        Command::Verify { file, order, cyclic, coset_cap } => commands::verify(&file, order, cyclic, coset_cap),
        Command::Search(Search::Cyclic { n, max_length, max_gens, coset_cap, jobs }) => {
            let params = SearchParams {
                max_gens: max_gens.unwrap_or(max_length),
                coset_cap,
                jobs: jobs.jobs,
                ..SearchParams::new(max_length)
            };
            commands::search_cyclic(n, params)
        }
        Command::Zaremba(Zaremba::Check { p, q }) => commands::zaremba_check(p, q),
        Command::Zaremba(Zaremba::Scan { max_p, jobs }) => with_jobs(jobs.jobs, || commands::zaremba_scan(max_p)),
        Command::Zaremba(Zaremba::Fib { k }) => commands::zaremba_fib(k),
        Command::Zaremba(Zaremba::Sweep { max_p, jobs }) => with_jobs(jobs.jobs, || commands::zaremba_sweep(max_p)),
        Command::Manifold(Manifold::Lens { p, q, weak }) => commands::manifold_lens(p, q, weak),
        Command::Manifold(Manifold::Seifert { p, q }) => commands::manifold_seifert(p, q),
        Command::Roots { a, c } => commands::roots(a, c),
    }
}

fn main() -> ExitCode {
    let inputs: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let subcommand = subcommand_name(&cli.command).to_string();
    let start = Instant::now();
    let output = run(cli.command).unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        let mut out = Output::new();
        out.set("error", Value::String(format!("{e:#}")));
        out.fail(Status::Usage);
        out
    });
    let status = output.status;
    let text = if cli.json {
        let report = RunReport {
            subcommand,
            inputs,
            outputs: output.fields,
            elapsed_micros: start.elapsed().as_micros() as u64,
            status,
            exit_code: status.code(),
        };
        report.to_json() + "\n"
    } else {
        output.text
    };
    // a closed pipe downstream is not our failure
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    ExitCode::from(status.code() as u8)
}
