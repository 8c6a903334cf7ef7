use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use shagate::json::{self as js, SCHEMA_VERSION};
use shagate::scan::{write_scan, Filter, Format, ScanOptions};
use shagate::suites::Suite;
use shagate_core::cassels::{build_cassels_solutions, check_mainthm2, cor2_check, pairing_table};
use shagate_core::classgroup::class_group;
use shagate_core::classify::{classify, ClassifyOptions, Criterion, Verdict};
use shagate_core::genus::{Decomposition, Genus, HigherRedei, SolveOptions};
use shagate_core::selmer::{enumerate_selmer, monsky_matrix, s2, selmer_basis_h4_1};
use shagate_core::SquarefreeInteger;

#[derive(Parser)]
#[command(
    name = "shagate",
    version,
    about = "Rank-zero and Sha[2^inf] criteria for congruent number curves"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Cross-check 2-power ranks against the class-group oracle.
    #[arg(long, global = true)]
    oracle: bool,
    /// Largest z the norm-equation solver tries.
    #[arg(long, global = true, default_value_t = SolveOptions::default().budget)]
    budget: u64,
}

impl Global {
    fn solve(&self) -> SolveOptions {
        SolveOptions {
            budget: self.budget,
            ..SolveOptions::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify one n (pretty JSON).
    Classify {
        n: String,
        /// Comma-separated blocks d1,d2,... instead of searching.
        #[arg(long, value_delimiter = ',')]
        decomposition: Option<Vec<u64>>,
    },
    /// Classify every square-free n in a range.
    Scan {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long, value_enum, default_value = "any")]
        filter: Filter,
        /// Worker threads; defaults to all cores.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value = "jsonl")]
        format: Format,
        /// Add per-record wall time in microseconds (output is then not reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Monsky matrix, pure 2-Selmer rank and Selmer classes.
    Selmer { n: String },
    /// Redei matrix, norm divisors, 4- and 8-ranks; with a decomposition,
    /// the higher Redei matrix.
    Genus {
        n: String,
        #[arg(long, value_delimiter = ',')]
        decomposition: Option<Vec<u64>>,
    },
    /// Cassels pairing table for a decomposition.
    Pairing {
        n: String,
        #[arg(long, value_delimiter = ',', required = true)]
        decomposition: Vec<u64>,
    },
    /// Class group of discriminant -4n by reduced forms.
    Classgroup { n: String },
    /// Run a cross-check suite; exits nonzero on any violation.
    Verify {
        /// remark1, litian, monsky, lemma41, selmer, oracle, theorem1,
        /// pairing, cor2 or sanity.
        suite: Suite,
        /// Upper end of the range checked.
        #[arg(long)]
        bound: Option<u64>,
    },
}

fn parse_n(s: &str) -> Result<SquarefreeInteger> {
    let n: u64 = s
        .trim()
        .parse()
        .with_context(|| format!("{s:?} is not a non-negative integer"))?;
    SquarefreeInteger::new(n).with_context(|| format!("cannot use n = {n}"))
}

fn print_pretty(v: &Value) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

fn cmd_classify(g: &Global, n: &str, decomposition: Option<Vec<u64>>) -> Result<ExitCode> {
    let n = parse_n(n)?;
    let opts = ClassifyOptions {
        solve: g.solve(),
        decomposition,
        oracle: g.oracle,
    };
    let c = classify(&n, &opts)?;
    print_pretty(&js::classification(&c))?;
    Ok(match c.verdict {
        Verdict::NotApplicable { .. } => ExitCode::from(2),
        _ => ExitCode::SUCCESS,
    })
}

fn cmd_selmer(n: &str) -> Result<ExitCode> {
    let n = parse_n(n)?;
    let m = monsky_matrix(&n)?;
    let triples = enumerate_selmer(&n)?;
    let basis = selmer_basis_h4_1(&n).ok().map(|b| {
        json!({
            "case": js::basis_case(b.case),
            "d": b.d,
            "generators": b.generators.iter().map(js::triple).collect::<Vec<_>>(),
        })
    });
    print_pretty(&json!({
        "schema_version": SCHEMA_VERSION,
        "n": n.value(),
        "monsky_matrix": js::matrix(&m),
        "rank": m.rank(),
        "s2": s2(&n)?,
        "selmer": triples.iter().map(js::triple).collect::<Vec<_>>(),
        "basis_h4_1": basis,
    }))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_genus(gl: &Global, n: &str, decomposition: Option<Vec<u64>>) -> Result<ExitCode> {
    let n = parse_n(n)?;
    let opts = gl.solve();
    let g = Genus::new(&n)?;
    let divisors: Vec<Value> = g
        .norm_divisors()
        .iter()
        .map(|e| json!({ "odd": e.odd, "two": e.two, "value": e.value() }))
        .collect();
    let (h8, d_n) = if g.in_family() {
        (Some(g.h8(&opts)?), g.d_of_n().ok())
    } else {
        (None, None)
    };
    let higher = match decomposition {
        Some(blocks) => {
            let dec = Decomposition::new(&n, &blocks)?;
            Some(js::higher_redei(&HigherRedei::new(&dec, &opts)?))
        }
        None => None,
    };
    print_pretty(&json!({
        "schema_version": SCHEMA_VERSION,
        "n": n.value(),
        "redei_matrix": js::matrix(g.redei_matrix()),
        "h4": g.h4(),
        "norm_divisors": divisors,
        "h8": h8,
        "d_n": d_n,
        "higher_redei": higher,
    }))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_pairing(gl: &Global, n: &str, blocks: &[u64]) -> Result<ExitCode> {
    let n = parse_n(n)?;
    let opts = gl.solve();
    let dec = Decomposition::new(&n, blocks)?;
    dec.check_conditions()?;
    let sols = build_cassels_solutions(&dec, &opts)?;
    let table = pairing_table(&sols, &opts)?;
    let check = check_mainthm2(&dec, &opts)?;
    let two = if dec.k() == 2 {
        Some(js::two_block(&cor2_check(&dec, &opts)?))
    } else {
        None
    };
    let verdict = if check.holds() {
        Verdict::Rank0Sha { k: dec.k() as u32 }
    } else {
        Verdict::CriterionFailed {
            criterion: Criterion::HigherRedei,
        }
    };
    print_pretty(&json!({
        "schema_version": SCHEMA_VERSION,
        "n": n.value(),
        "decomposition": dec.values(),
        "solutions": js::cassels_solutions(&sols),
        "pairing": js::pairing(&table),
        "check": js::main_check(&check),
        "two_block": two,
        "verdict": js::verdict(&verdict),
    }))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_classgroup(n: &str) -> Result<ExitCode> {
    let n = parse_n(n)?;
    let g = class_group(&n)?;
    let ranks = g.two_power_ranks()?;
    let factors = g.invariant_factors()?;
    print_pretty(&js::class_group(&g, &ranks, &factors))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_scan(opts: ScanOptions, jobs: Option<usize>, format: Format) -> Result<ExitCode> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            bail!("--jobs must be at least 1");
        }
        pool = pool.num_threads(j);
    }
    let pool = pool.build().context("starting worker threads")?;
    let errors = pool.install(|| {
        let mut out = BufWriter::new(io::stdout().lock());
        write_scan(&opts, format, &mut out)
    })?;
    if errors > 0 {
        eprintln!("shagate: {errors} n failed to classify");
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(gl: &Global, suite: Suite, bound: Option<u64>) -> Result<ExitCode> {
    let report = suite.run(bound.unwrap_or(suite.default_bound()), &gl.solve());
    print_pretty(&report.to_json())?;
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    let g = &cli.global;
    match cli.command {
        Command::Classify { n, decomposition } => cmd_classify(g, &n, decomposition),
        Command::Scan {
            from,
            to,
            filter,
            jobs,
            format,
            timing,
        } => {
            let opts = ScanOptions {
                from,
                to,
                filter,
                classify: ClassifyOptions {
                    solve: g.solve(),
                    decomposition: None,
                    oracle: g.oracle,
                },
                timing,
            };
            cmd_scan(opts, jobs, format)
        }
        Command::Selmer { n } => cmd_selmer(&n),
        Command::Genus { n, decomposition } => cmd_genus(g, &n, decomposition),
        Command::Pairing { n, decomposition } => cmd_pairing(g, &n, &decomposition),
        Command::Classgroup { n } => cmd_classgroup(&n),
        Command::Verify { suite, bound } => cmd_verify(g, suite, bound),
    }
}

fn main() -> ExitCode {
    // Usage errors exit 1; 2 is reserved for not_applicable.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(u8::from(e.use_stderr()));
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("shagate: {e:#}");
            ExitCode::from(1)
        }
    }
}
