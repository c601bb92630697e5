//! Benchmark records: exact transform counts, weighted costs and timings for
//! the block algorithms and their Newton baselines.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::baselines::{recip_schonhage_with, sqrt_newton_coupled_with};
use crate::error::{Result, SeriesError};
use crate::oracle::{recip_recurrence, sqrt_recurrence};
use crate::recip::{recip_planned_with, RecipPlan};
use crate::rng::{InputKind, RNG_NAME};
use crate::sqrt::{choose_params, sqrt_planned_with, SqrtPlan};
use crate::transform::{transform_weight, Direction, FftEngine, Phase, TransformLedger};

/// Records with `n` above this skip the quadratic oracle comparison.
pub const ORACLE_CUTOFF: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BenchOp {
    Sqrt,
    Recip,
    Schonhage,
    CoupledNewton,
}

impl BenchOp {
    pub fn name(self) -> &'static str {
        match self {
            BenchOp::Sqrt => "sqrt",
            BenchOp::Recip => "recip",
            BenchOp::Schonhage => "schonhage",
            BenchOp::CoupledNewton => "coupled-newton",
        }
    }

    /// The Newton baseline that computes the same thing.
    pub fn baseline(self) -> Option<BenchOp> {
        match self {
            BenchOp::Sqrt => Some(BenchOp::CoupledNewton),
            BenchOp::Recip => Some(BenchOp::Schonhage),
            _ => None,
        }
    }
}

impl fmt::Display for BenchOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BenchOp {
    type Err = SeriesError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sqrt" => Ok(BenchOp::Sqrt),
            "recip" => Ok(BenchOp::Recip),
            "schonhage" => Ok(BenchOp::Schonhage),
            "coupled" | "coupled-newton" => Ok(BenchOp::CoupledNewton),
            other => Err(SeriesError::Precondition(format!(
                "unknown bench op {other:?}"
            ))),
        }
    }
}

/// One benchmark measurement. Everything except `wall_ns` is deterministic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub op: BenchOp,
    pub n: usize,
    /// Block size; 0 for the Newton baselines.
    pub m: usize,
    /// `r` for sqrt, `s` for recip, 0 for baselines.
    pub blocks: usize,
    pub rng: String,
    pub input: InputKind,
    pub seed: u64,
    /// Forward transforms by length, block phase (everything for baselines).
    pub forward: BTreeMap<usize, u64>,
    pub inverse: BTreeMap<usize, u64>,
    pub base_forward: BTreeMap<usize, u64>,
    pub base_inverse: BTreeMap<usize, u64>,
    /// `sum len * log2(len)` over the block-phase transforms.
    pub weighted_cost: f64,
    /// Same sum over the base-case transforms.
    pub base_cost: f64,
    /// `weighted_cost / (3 r T(2m))` with `r = 3s` for recip.
    pub cost_ratio: Option<f64>,
    /// `(4r - 3) / 3r` for sqrt, `(13s - 3) / 9s` for recip.
    pub expected_ratio: Option<f64>,
    pub wall_ns: u64,
    pub max_error: Option<f64>,
}

impl BenchRecord {
    pub fn block_transforms(&self) -> u64 {
        self.forward.values().chain(self.inverse.values()).sum()
    }

    pub fn total_cost(&self) -> f64 {
        self.weighted_cost + self.base_cost
    }
}

/// What to run: `blocks` / `block_size` override the automatic layout. With
/// both set, `n` is replaced by the covered length (`r m` or `3 s m`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchSpec {
    pub op: BenchOp,
    pub n: usize,
    pub blocks: Option<usize>,
    pub block_size: Option<usize>,
    pub seed: u64,
    pub input: InputKind,
}

pub fn sqrt_plan_for(
    n: usize,
    blocks: Option<usize>,
    block_size: Option<usize>,
) -> Result<SqrtPlan> {
    let plan = match (blocks, block_size) {
        (Some(r), Some(m)) => SqrtPlan::fixed(r, m)?,
        (None, Some(m)) => SqrtPlan {
            n,
            r: n.div_ceil(m).max(1),
            m,
        },
        (r, None) => choose_params(n, r)?,
    };
    plan.validate()?;
    Ok(plan)
}

pub fn recip_plan_for(
    n: usize,
    blocks: Option<usize>,
    block_size: Option<usize>,
) -> Result<RecipPlan> {
    let plan = match (blocks, block_size) {
        (Some(s), Some(m)) => RecipPlan::fixed(s, m)?,
        (None, Some(m)) => RecipPlan {
            n,
            s: n.div_ceil(3 * m).max(1),
            m,
        },
        (s, None) => RecipPlan::choose(n, s)?,
    };
    plan.validate()?;
    Ok(plan)
}

fn record(
    spec: &BenchSpec,
    n: usize,
    m: usize,
    blocks: usize,
    ledger: &TransformLedger,
    wall_ns: u64,
    max_error: Option<f64>,
) -> BenchRecord {
    let weighted_cost = ledger.weighted_cost(Phase::Block);
    let (cost_ratio, expected_ratio) = match spec.op {
        BenchOp::Sqrt => {
            let r = blocks as f64;
            (
                Some(weighted_cost / (3.0 * r * transform_weight(2 * m))),
                Some((4.0 * r - 3.0) / (3.0 * r)),
            )
        }
        BenchOp::Recip => {
            let s = blocks as f64;
            (
                Some(weighted_cost / (9.0 * s * transform_weight(2 * m))),
                Some((13.0 * s - 3.0) / (9.0 * s)),
            )
        }
        _ => (None, None),
    };
    BenchRecord {
        op: spec.op,
        n,
        m,
        blocks,
        rng: RNG_NAME.to_string(),
        input: spec.input,
        seed: spec.seed,
        forward: ledger.by_length(Phase::Block, Direction::Forward),
        inverse: ledger.by_length(Phase::Block, Direction::Inverse),
        base_forward: ledger.by_length(Phase::Base, Direction::Forward),
        base_inverse: ledger.by_length(Phase::Base, Direction::Inverse),
        weighted_cost,
        base_cost: ledger.weighted_cost(Phase::Base),
        cost_ratio,
        expected_ratio,
        wall_ns,
        max_error,
    }
}

/// Runs one benchmark on a fresh ledger.
pub fn run_bench(engine: &FftEngine, spec: &BenchSpec) -> Result<BenchRecord> {
    run_bench_inner(engine, spec).map_err(|e| match e {
        SeriesError::NonFinite(_) if spec.input == InputKind::Uniform => SeriesError::Precondition(
            format!("{e}: uniform random inputs overflow at this precision, try the damped input"),
        ),
        e => e,
    })
}

fn run_bench_inner(engine: &FftEngine, spec: &BenchSpec) -> Result<BenchRecord> {
    let mut ledger = TransformLedger::new();
    match spec.op {
        BenchOp::Sqrt => {
            let plan = sqrt_plan_for(spec.n, spec.blocks, spec.block_size)?;
            let f = spec.input.series(spec.seed, plan.n);
            let start = Instant::now();
            let g = sqrt_planned_with(engine, &f, &plan, &mut ledger)?;
            let wall = start.elapsed().as_nanos() as u64;
            let err = (plan.n <= ORACLE_CUTOFF)
                .then(|| sqrt_recurrence(&f, plan.n).map(|o| g.max_diff(&o)))
                .transpose()?;
            Ok(record(spec, plan.n, plan.m, plan.r, &ledger, wall, err))
        }
        BenchOp::Recip => {
            let plan = recip_plan_for(spec.n, spec.blocks, spec.block_size)?;
            let f = spec.input.series(spec.seed, plan.n);
            let start = Instant::now();
            let g = recip_planned_with(engine, &f, &plan, &mut ledger)?;
            let wall = start.elapsed().as_nanos() as u64;
            let err = (plan.n <= ORACLE_CUTOFF)
                .then(|| recip_recurrence(&f, plan.n).map(|o| g.max_diff(&o)))
                .transpose()?;
            Ok(record(spec, plan.n, plan.m, plan.s, &ledger, wall, err))
        }
        BenchOp::Schonhage => {
            let f = spec.input.series(spec.seed, spec.n);
            let start = Instant::now();
            let g = recip_schonhage_with(engine, &f, spec.n, &mut ledger)?;
            let wall = start.elapsed().as_nanos() as u64;
            let err = (spec.n <= ORACLE_CUTOFF)
                .then(|| recip_recurrence(&f, spec.n).map(|o| g.max_diff(&o)))
                .transpose()?;
            Ok(record(spec, spec.n, 0, 0, &ledger, wall, err))
        }
        BenchOp::CoupledNewton => {
            let f = spec.input.series(spec.seed, spec.n);
            let start = Instant::now();
            let (g, _) = sqrt_newton_coupled_with(engine, &f, spec.n, &mut ledger)?;
            let wall = start.elapsed().as_nanos() as u64;
            let err = (spec.n <= ORACLE_CUTOFF)
                .then(|| sqrt_recurrence(&f, spec.n).map(|o| g.max_diff(&o)))
                .transpose()?;
            Ok(record(spec, spec.n, 0, 0, &ledger, wall, err))
        }
    }
}

/// A benchmark grid: every combination of `ops`, `ns` and `blocks`.
#[derive(Debug, Clone, Default)]
pub struct GridSpec {
    pub ops: Vec<BenchOp>,
    pub ns: Vec<usize>,
    /// Empty means the automatic block count.
    pub blocks: Vec<usize>,
    pub block_size: Option<usize>,
    pub seed: u64,
    pub input: InputKind,
}

/// Every `(op, n, blocks)` combination, each block-algorithm row followed by
/// its Newton baseline at the same precision (once per precision).
pub fn run_grid(
    engine: &FftEngine,
    grid: &GridSpec,
    mut sink: impl FnMut(BenchRecord) -> Result<()>,
) -> Result<()> {
    let GridSpec {
        ops,
        ns,
        blocks,
        block_size,
        seed,
        input,
    } = grid;
    let (block_size, seed, input) = (*block_size, *seed, *input);
    let block_choices: Vec<Option<usize>> = if blocks.is_empty() {
        vec![None]
    } else {
        blocks.iter().copied().map(Some).collect()
    };
    let mut baselines_done = std::collections::BTreeSet::new();
    for &op in ops {
        for &n in ns {
            let choices: &[Option<usize>] = if op.baseline().is_some() {
                &block_choices
            } else {
                &[None]
            };
            for &b in choices {
                let spec = BenchSpec {
                    op,
                    n,
                    blocks: b,
                    block_size: if op.baseline().is_some() {
                        block_size
                    } else {
                        None
                    },
                    seed,
                    input,
                };
                let rec = run_bench(engine, &spec)?;
                let covered = rec.n;
                sink(rec)?;
                if let Some(base) = op.baseline() {
                    if baselines_done.insert((base, covered)) {
                        let spec = BenchSpec {
                            op: base,
                            n: covered,
                            blocks: None,
                            block_size: None,
                            seed,
                            input,
                        };
                        sink(run_bench(engine, &spec)?)?;
                    }
                }
            }
        }
    }
    Ok(())
}
