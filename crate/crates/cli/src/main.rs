use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use powseries::bench::{recip_plan_for, run_grid, sqrt_plan_for, BenchOp, BenchRecord, GridSpec};
use powseries::io::{format_coefficients, format_summary, parse_coeff_list, parse_coefficients};
use powseries::recip::recip_planned_with;
use powseries::rng::{random_monic, InputKind};
use powseries::selftest::{run_selftest, Depth};
use powseries::sqrt::{sqrt_planned_with, sqrt_rem_with};
use powseries::transform::{Direction, FftEngine, Phase, TransformLedger};
use powseries::Poly;

#[derive(Parser)]
#[command(
    name = "powseries",
    version,
    about = "Fast square roots and reciprocals of power series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a reciprocal, square root or square root with remainder
    Compute(ComputeArgs),
    /// Emit transform counts, weighted costs and timings
    Bench(BenchArgs),
    /// Run the invariant suites
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ComputeOp {
    Recip,
    Sqrt,
    Sqrtrem,
}

#[derive(Args)]
struct ComputeArgs {
    #[arg(value_enum)]
    op: ComputeOp,
    /// Comma-separated real coefficients, constant term first
    #[arg(long, conflicts_with = "input")]
    coeffs: Option<String>,
    /// Coefficient file (`re` or `re im` per line)
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Random input from this seed when no coefficients are given
    #[arg(long)]
    seed: Option<u64>,
    /// Random series family: uniform, or damped to keep results bounded
    #[arg(long, default_value = "uniform")]
    dist: InputKind,
    /// Output precision; half the degree for a random sqrtrem input
    #[arg(long)]
    n: Option<usize>,
    /// Number of blocks (r for sqrt, s for recip)
    #[arg(long)]
    blocks: Option<usize>,
    #[arg(long = "block-size")]
    block_size: Option<usize>,
    /// Write full-precision coefficients here instead of printing them
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct BenchArgs {
    /// Operations: sqrt, recip, schonhage, coupled
    #[arg(long, value_delimiter = ',', default_value = "sqrt,recip")]
    op: Vec<String>,
    /// Precisions; ignored when both --blocks and --block-size are given
    #[arg(long, value_delimiter = ',', default_value = "1024")]
    n: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    blocks: Vec<usize>,
    #[arg(long = "block-size")]
    block_size: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Random series family: uniform, or damped to keep results bounded
    #[arg(long, default_value = "uniform")]
    dist: InputKind,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long, conflicts_with = "full")]
    quick: bool,
    #[arg(long)]
    full: bool,
    #[arg(long, hide = true)]
    corrupt_twiddle: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute(args) => compute(args),
        Command::Bench(args) => bench(args),
        Command::Selftest(args) => selftest(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn load_input(args: &ComputeArgs) -> Result<Poly> {
    if let Some(list) = &args.coeffs {
        return Ok(parse_coeff_list(list)?);
    }
    if let Some(path) = &args.input {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return parse_coefficients(&text).with_context(|| format!("parsing {}", path.display()));
    }
    let Some(seed) = args.seed else {
        bail!("give --coeffs, --in or --seed");
    };
    let Some(n) = args.n else {
        bail!("--n is required for random input");
    };
    Ok(match args.op {
        ComputeOp::Sqrtrem => random_monic(seed, n),
        _ => args.dist.series(seed, n),
    })
}

fn counts(ledger: &TransformLedger, phase: Phase) -> String {
    let show = |d| {
        ledger
            .by_length(phase, d)
            .iter()
            .map(|(len, c)| format!("{len}:{c}"))
            .collect::<Vec<_>>()
            .join(";")
    };
    format!(
        "forward=[{}] inverse=[{}]",
        show(Direction::Forward),
        show(Direction::Inverse)
    )
}

fn emit(poly: &Poly, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, format_coefficients(poly))
            .with_context(|| format!("writing {}", path.display())),
        None => {
            println!("{}", format_summary(poly));
            Ok(())
        }
    }
}

fn compute(args: ComputeArgs) -> Result<ExitCode> {
    let f = load_input(&args)?;
    let engine = FftEngine::global();
    let mut ledger = TransformLedger::new();
    match args.op {
        ComputeOp::Sqrt => {
            let n = args.n.unwrap_or(f.len());
            let plan = sqrt_plan_for(n, args.blocks, args.block_size)?;
            let mut g = sqrt_planned_with(engine, &f, &plan, &mut ledger)?;
            g.truncate(n);
            emit(&g, args.out.as_ref())?;
            eprintln!(
                "op=sqrt n={n} m={} r={} block: {} base: {}",
                plan.m,
                plan.r,
                counts(&ledger, Phase::Block),
                counts(&ledger, Phase::Base)
            );
        }
        ComputeOp::Recip => {
            let n = args.n.unwrap_or(f.len());
            let plan = recip_plan_for(n, args.blocks, args.block_size)?;
            let mut g = recip_planned_with(engine, &f, &plan, &mut ledger)?;
            g.truncate(n);
            emit(&g, args.out.as_ref())?;
            eprintln!(
                "op=recip n={n} m={} s={} block: {} base: {}",
                plan.m,
                plan.s,
                counts(&ledger, Phase::Block),
                counts(&ledger, Phase::Base)
            );
        }
        ComputeOp::Sqrtrem => {
            let out = sqrt_rem_with(engine, &f, &mut ledger)?;
            match &args.out {
                Some(path) => {
                    emit(&out.root, Some(path))?;
                    let mut rem_path = path.clone().into_os_string();
                    rem_path.push(".rem");
                    emit(&out.remainder, Some(&PathBuf::from(rem_path)))?;
                }
                None => {
                    println!("{}", format_summary(&out.root));
                    println!("{}", format_summary(&out.remainder));
                }
            }
            eprintln!(
                "op=sqrtrem n={} m={} r={} block: {} base: {}",
                out.root.len() - 1,
                out.plan.m,
                out.plan.r,
                counts(&ledger, Phase::Block),
                counts(&ledger, Phase::Base)
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn map_field(m: &std::collections::BTreeMap<usize, u64>) -> String {
    m.iter()
        .map(|(len, c)| format!("{len}:{c}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

const CSV_HEADER: [&str; 17] = [
    "op",
    "n",
    "m",
    "blocks",
    "rng",
    "input",
    "seed",
    "forward",
    "inverse",
    "base_forward",
    "base_inverse",
    "weighted_cost",
    "base_cost",
    "cost_ratio",
    "expected_ratio",
    "wall_ns",
    "max_error",
];

fn csv_row(r: &BenchRecord) -> Vec<String> {
    vec![
        r.op.to_string(),
        r.n.to_string(),
        r.m.to_string(),
        r.blocks.to_string(),
        r.rng.clone(),
        r.input.to_string(),
        r.seed.to_string(),
        map_field(&r.forward),
        map_field(&r.inverse),
        map_field(&r.base_forward),
        map_field(&r.base_inverse),
        r.weighted_cost.to_string(),
        r.base_cost.to_string(),
        opt(r.cost_ratio),
        opt(r.expected_ratio),
        r.wall_ns.to_string(),
        opt(r.max_error),
    ]
}

fn bench(args: BenchArgs) -> Result<ExitCode> {
    let ops = args
        .op
        .iter()
        .map(|s| s.parse::<BenchOp>())
        .collect::<Result<Vec<_>, _>>()?;
    let grid = GridSpec {
        ops,
        ns: if args.block_size.is_some() && !args.blocks.is_empty() {
            vec![0]
        } else {
            args.n.clone()
        },
        blocks: args.blocks.clone(),
        block_size: args.block_size,
        seed: args.seed,
        input: args.dist,
    };
    let sink: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(fs::File::create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    match args.format {
        Format::Json => {
            let mut w = io::BufWriter::new(sink);
            run_grid(FftEngine::global(), &grid, |rec| {
                let line = serde_json::to_string(&rec).expect("records serialize");
                writeln!(w, "{line}")
                    .map_err(|e| powseries::SeriesError::Precondition(e.to_string()))
            })?;
            w.flush()?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(sink);
            w.write_record(CSV_HEADER)?;
            run_grid(FftEngine::global(), &grid, |rec| {
                w.write_record(csv_row(&rec))
                    .map_err(|e| powseries::SeriesError::Precondition(e.to_string()))
            })?;
            w.flush()?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn selftest(args: SelftestArgs) -> Result<ExitCode> {
    let depth = if args.full { Depth::Full } else { Depth::Quick };
    let engine = if args.corrupt_twiddle {
        FftEngine::with_corrupted_twiddle()
    } else {
        FftEngine::new()
    };
    let report = run_selftest(&engine, depth);
    for suite in &report.suites {
        println!("{suite}");
    }
    let passed = report.passed();
    println!(
        "selftest ({}): {}",
        if args.full { "full" } else { "quick" },
        if passed { "PASS" } else { "FAIL" }
    );
    Ok(if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
