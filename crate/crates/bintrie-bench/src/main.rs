use std::fs;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use bintrie::differential::run_differential;
use bintrie::script::OperationScript;
use bintrie::{CanonicalTree, Node01Tree, OriginalTree};
use bintrie_bench::{
    gen_words, load_words, render_csv, render_table, run_dense, run_dict, run_repeated,
    run_sparse, BenchReport, ImplTag, WorkloadTag,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WorkloadArg {
    Dense,
    Sparse,
    Repeated,
    Dict,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ImplArg {
    Original,
    Node01,
    Canonical,
    Baseline,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Table,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "bench",
    about = "Map workload benchmarks over the trie representations",
    after_help = "Without a subcommand, runs the selected workloads and prints a report."
)]
struct Cli {
    #[command(subcommand)]
    command: Option<Cmd>,

    #[arg(long, value_enum, default_value_t = WorkloadArg::All)]
    workload: WorkloadArg,

    #[arg(long = "impl", value_enum, default_value_t = ImplArg::All)]
    implementation: ImplArg,

    /// Seed for the generated word corpus.
    #[arg(long, default_value_t = 24657)]
    seed: u64,

    /// Key count for the dense workload.
    #[arg(long, default_value_t = 2048)]
    dense_n: u64,

    /// Word count for the sparse and dict workloads (generated corpus).
    #[arg(long, default_value_t = 5064)]
    sparse_count: usize,

    /// Total insertions for the repeated workload.
    #[arg(long, default_value_t = 1_000_000)]
    repeated_iters: u64,

    /// Word file (one word per line, ASCII, lengths 1..=18, no duplicates)
    /// replacing the generated corpus.
    #[arg(long)]
    words_file: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,

    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Replay an operation script file differentially against the oracle.
    Replay {
        script: PathBuf,
        #[arg(long = "impl", value_enum, default_value_t = ReplayArg::All)]
        implementation: ReplayArg,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReplayArg {
    Original,
    Node01,
    Canonical,
    All,
}

fn main() {
    if let Err(err) = run() {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}

fn run() -> Result<()> {
    let cli = Cli::parse();
    if let Some(Cmd::Replay { script, implementation }) = cli.command {
        return replay(&script, implementation);
    }

    let workloads: Vec<WorkloadTag> = match cli.workload {
        WorkloadArg::Dense => vec![WorkloadTag::Dense],
        WorkloadArg::Sparse => vec![WorkloadTag::Sparse],
        WorkloadArg::Repeated => vec![WorkloadTag::Repeated],
        WorkloadArg::Dict => vec![WorkloadTag::Dict],
        WorkloadArg::All => vec![
            WorkloadTag::Dense,
            WorkloadTag::Sparse,
            WorkloadTag::Repeated,
            WorkloadTag::Dict,
        ],
    };
    let impls: Vec<ImplTag> = match cli.implementation {
        ImplArg::Original => vec![ImplTag::Original],
        ImplArg::Node01 => vec![ImplTag::Node01],
        ImplArg::Canonical => vec![ImplTag::Canonical],
        ImplArg::Baseline => vec![ImplTag::Baseline],
        ImplArg::All => vec![
            ImplTag::Original,
            ImplTag::Node01,
            ImplTag::Canonical,
            ImplTag::Baseline,
        ],
    };
    if cli.implementation == ImplArg::Node01 && cli.workload == WorkloadArg::Dict {
        bail!("the dict workload runs original, canonical, or baseline");
    }

    let needs_words = workloads
        .iter()
        .any(|w| matches!(w, WorkloadTag::Sparse | WorkloadTag::Dict));
    let words = if needs_words {
        match &cli.words_file {
            Some(path) => load_words(path)?,
            None => gen_words(cli.seed, cli.sparse_count),
        }
    } else {
        Vec::new()
    };

    let mut reports: Vec<BenchReport> = Vec::new();
    for &workload in &workloads {
        for &tag in &impls {
            // node01 has no dictionary row; skip it when expanding `all`.
            if workload == WorkloadTag::Dict && tag == ImplTag::Node01 {
                continue;
            }
            let report = match workload {
                WorkloadTag::Dense => run_dense(tag, cli.dense_n)?,
                WorkloadTag::Sparse => run_sparse(tag, &words)?,
                WorkloadTag::Repeated => run_repeated(tag, cli.repeated_iters)?,
                WorkloadTag::Dict => run_dict(tag, &words)?,
            };
            reports.push(report);
        }
    }

    let corpus_seed = cli.words_file.is_none().then_some(cli.seed);
    let text = match cli.format {
        FormatArg::Table => render_table(&reports, corpus_seed),
        FormatArg::Csv => render_csv(&reports),
    };
    match &cli.out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn replay(path: &PathBuf, which: ReplayArg) -> Result<()> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let script = OperationScript::parse(&text)
        .map_err(|e| anyhow!("{}: {e}", path.display()))?;

    let mut failed = false;
    let mut check = |name: &str, report: bintrie::laws::LawReport| {
        if report.passed() {
            println!("{name}: ok ({} steps)", script.steps.len());
        } else {
            failed = true;
            println!("{name}: DIVERGED");
            if let Some(detail) = report.first_failure {
                println!("{detail}");
            }
        }
    };
    if matches!(which, ReplayArg::Original | ReplayArg::All) {
        check("original", run_differential::<OriginalTree<u64>>(&script));
    }
    if matches!(which, ReplayArg::Node01 | ReplayArg::All) {
        check("node01", run_differential::<Node01Tree<u64>>(&script));
    }
    if matches!(which, ReplayArg::Canonical | ReplayArg::All) {
        check("canonical", run_differential::<CanonicalTree<u64>>(&script));
    }
    if failed {
        bail!("script diverged from the oracle");
    }
    Ok(())
}
