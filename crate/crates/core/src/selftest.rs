//! Invariant suites runnable from the command line. Each suite reports the
//! worst error or the count mismatch it saw.

use std::fmt;
use std::time::Instant;

use crate::baselines::{recip_schonhage_with, sqrt_newton_coupled_with};
use crate::blockwise::{
    combined_block, product_block, BlockSeries, BlockTerm, Sign, TransformCache,
};
use crate::error::Result;
use crate::oracle::{mul_schoolbook, recip_recurrence, sqrt_recurrence};
use crate::poly::Poly;
use crate::recip::{recip_block_iter_with, recip_planned_with, recip_with, RecipPlan};
use crate::rng::{random_complex, random_damped, random_monic, random_series};
use crate::sqrt::{sqrt_block_iter_with, sqrt_rem_with, sqrt_with};
use crate::transform::{supported_sizes, Direction, FftEngine, Phase, TransformLedger};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Depth {
    Quick,
    Full,
}

#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:<22} {} ({} ms)",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail,
            self.elapsed_ms
        )
    }
}

#[derive(Debug, Clone, Default)]
pub struct SelfTestReport {
    pub suites: Vec<SuiteResult>,
}

impl SelfTestReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed)
    }
}

struct Outcome {
    passed: bool,
    detail: String,
}

fn error_outcome(worst: f64, limit: f64) -> Outcome {
    Outcome {
        passed: worst <= limit,
        detail: format!("max error {worst:.3e} (limit {limit:.1e})"),
    }
}

/// `1e-8 n` relative to the size of the exact answer. Coefficients of
/// `f^{1/2}` and `f^{-1}` grow geometrically for random `f`, so an absolute
/// bound stops making sense past a few hundred terms.
fn scaled_limit(n: usize, exact: &Poly) -> f64 {
    1e-8 * n as f64 * exact.max_abs().max(1.0)
}

fn max_abs_err(a: &Poly, b: &Poly) -> f64 {
    let e = a.max_diff(b);
    if e.is_nan() {
        f64::INFINITY
    } else {
        e
    }
}

fn roundtrip(engine: &FftEngine, depth: Depth) -> Result<Outcome> {
    let cap = if depth == Depth::Full {
        1 << 14
    } else {
        1 << 10
    };
    let mut worst: f64 = 0.0;
    let mut l = TransformLedger::new();
    for (i, n) in supported_sizes()
        .skip(1)
        .take_while(|&n| n <= cap)
        .enumerate()
    {
        let p = random_complex(i as u64, n);
        let back = engine.inverse(&engine.forward(&p, n, &mut l)?, &mut l)?;
        worst = worst.max(max_abs_err(&back, &p));
    }
    Ok(error_outcome(worst, 1e-10))
}

fn convolution(engine: &FftEngine, depth: Depth) -> Result<Outcome> {
    let cap = if depth == Depth::Full {
        1 << 12
    } else {
        1 << 8
    };
    let mut l = TransformLedger::new();
    let mut passed = true;
    let mut worst_ratio: f64 = 0.0;
    for (i, n) in supported_sizes()
        .skip(1)
        .take_while(|&n| n <= cap)
        .enumerate()
    {
        let a = random_complex(100 + i as u64, n);
        let b = random_complex(200 + i as u64, n);
        let before = l.clone();
        let got = engine.cyclic_convolution(&a, &b, n, &mut l)?;
        let delta = l.since(&before);
        passed &= delta.forward(n) == 2 && delta.inverse(n) == 1 && delta.total_transforms() == 3;
        let full = mul_schoolbook(&a, &b);
        let mut wrapped = Poly::zeros(n);
        for (k, c) in full.coeffs().iter().enumerate() {
            wrapped[k % n] += c;
        }
        let limit = 1e-9 * n as f64 * (1.0 + a.max_abs().max(b.max_abs()));
        let err = max_abs_err(&got, &wrapped);
        passed &= err <= limit;
        worst_ratio = worst_ratio.max(err / limit);
    }
    Ok(Outcome {
        passed,
        detail: format!("worst error / limit {worst_ratio:.3e}, ledger 2F+1I each"),
    })
}

fn middle_product(engine: &FftEngine, depth: Depth) -> Result<Outcome> {
    let cap = if depth == Depth::Full {
        1 << 11
    } else {
        1 << 7
    };
    let mut l = TransformLedger::new();
    let mut passed = true;
    let mut worst_ratio: f64 = 0.0;
    for (i, n) in supported_sizes().take_while(|&n| n <= cap).enumerate() {
        let g = random_complex(300 + i as u64, 2 * n);
        let h = random_complex(400 + i as u64, n);
        let before = l.clone();
        let got = engine.middle_product(&g, &h, n, &mut l)?;
        let delta = l.since(&before);
        passed &= delta.forward(2 * n) == 2 && delta.inverse(2 * n) == 1;
        let expect = crate::oracle::middle_product_naive(&g, &h, n)?;
        let limit = 2e-9 * n as f64;
        let err = max_abs_err(&got, &expect);
        passed &= err <= limit;
        worst_ratio = worst_ratio.max(err / limit);
    }
    Ok(Outcome {
        passed,
        detail: format!("worst error / limit {worst_ratio:.3e}"),
    })
}

fn block_shift(engine: &FftEngine, _depth: Depth) -> Result<Outcome> {
    let mut l = TransformLedger::new();
    let mut worst: f64 = 0.0;
    for m in supported_sizes().take_while(|&m| m <= 4096) {
        let s = engine.forward(&Poly::monomial(m, 2 * m), 2 * m, &mut l)?;
        for (j, v) in s.values().iter().enumerate() {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            worst = worst.max((v - sign).norm());
        }
    }
    Ok(error_outcome(worst, 1e-12))
}

fn warm(engine: &FftEngine, s: &BlockSeries, l: &mut TransformLedger) -> Result<TransformCache> {
    let mut c = TransformCache::new(s.block_size(), s.num_blocks());
    for i in 0..s.num_blocks() {
        c.ensure(engine, s, i, l)?;
    }
    Ok(c)
}

/// `cases` randomized block products and combinations against schoolbook.
fn block_product_cases(engine: &FftEngine, cases: usize) -> Result<Outcome> {
    let sizes = [1usize, 2, 4, 8, 16];
    let mut passed = true;
    let mut worst_ratio: f64 = 0.0;
    for case in 0..cases {
        let m = sizes[case % sizes.len()];
        let t = 1 + (case / sizes.len()) % 8;
        let seed = 1000 + 4 * case as u64;
        let fp = random_complex(seed, t * m);
        let gp = random_complex(seed + 1, t * m);
        let dp = random_complex(seed + 2, t * m);
        let mut l = TransformLedger::new();
        let fc = warm(engine, &BlockSeries::decompose(&fp, m, t), &mut l)?;
        let gc = warm(engine, &BlockSeries::decompose(&gp, m, t), &mut l)?;
        let dc = warm(engine, &BlockSeries::decompose(&dp, m, t), &mut l)?;
        let fg = mul_schoolbook(&fp, &gp);
        let mixed = mul_schoolbook(&dp, &dp).sub(&fg);
        let k = case % t;
        let block = |p: &Poly| Poly::new((k * m..(k + 1) * m).map(|i| p.coeff(i)).collect());
        let limit = 1e-9 * m as f64 * (k + 1) as f64;

        let before = l.clone();
        let got = product_block(engine, fc.view(), gc.view(), k, &mut l)?;
        let d = l.since(&before);
        passed &= d.inverse(2 * m) == 1 && d.total_transforms() == 1;
        let err = max_abs_err(&got, &block(&fg));

        let before = l.clone();
        let got2 = combined_block(
            engine,
            &[
                BlockTerm::new(dc.view(), dc.view(), Sign::Plus, k),
                BlockTerm::new(fc.view(), gc.view(), Sign::Minus, k),
            ],
            &mut l,
        )?;
        let d = l.since(&before);
        passed &= d.inverse(2 * m) == 1 && d.total_transforms() == 1;
        let err2 = max_abs_err(&got2, &block(&mixed));
        passed &= err <= limit && err2 <= limit;
        worst_ratio = worst_ratio.max(err.max(err2) / limit);
    }
    Ok(Outcome {
        passed,
        detail: format!("{cases} cases, worst error / limit {worst_ratio:.3e}, 1 inverse each"),
    })
}

fn block_products(engine: &FftEngine, depth: Depth) -> Result<Outcome> {
    block_product_cases(engine, if depth == Depth::Full { 200 } else { 50 })
}

fn sqrt_counts(engine: &FftEngine, _depth: Depth) -> Result<Outcome> {
    let m = 32;
    let mut bad = Vec::new();
    for r in 1..=16 {
        let fp = random_series(r as u64, r * m);
        let f = BlockSeries::decompose(&fp, m, r);
        let g0 = sqrt_recurrence(&fp, m)?;
        let h = recip_recurrence(&g0, m)?;
        let mut l = TransformLedger::new();
        sqrt_block_iter_with(engine, &f, &g0, &h, r, &mut l)?;
        let ok = l.forward(64) == (2 * r - 1) as u64
            && l.inverse(64) == (2 * r - 2) as u64
            && l.total_transforms() == (4 * r - 3) as u64;
        if !ok {
            bad.push(r);
        }
    }
    Ok(Outcome {
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            "r = 1..16 at m = 32: 4r-3 transforms of length 64".into()
        } else {
            format!("count mismatch for r in {bad:?}")
        },
    })
}

fn recip_counts(engine: &FftEngine, _depth: Depth) -> Result<Outcome> {
    let m = 16;
    let mut bad = Vec::new();
    for s in 1..=8 {
        let fp = random_series(50 + s as u64, 3 * s * m);
        let f = BlockSeries::decompose(&fp, m, 3 * s);
        let g0 = recip_recurrence(&fp, m)?;
        let mut l = TransformLedger::new();
        recip_block_iter_with(engine, &f, &g0, s, &mut l)?;
        let ok = l.forward(32) == (7 * s - 1) as u64
            && l.inverse(32) == (6 * s - 2) as u64
            && l.total_transforms() == (13 * s - 3) as u64;
        if !ok {
            bad.push(s);
        }
    }
    Ok(Outcome {
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            "s = 1..8 at m = 16: 7s-1 forward + 6s-2 inverse of length 32".into()
        } else {
            format!("count mismatch for s in {bad:?}")
        },
    })
}

fn oracle_sizes(depth: Depth) -> &'static [usize] {
    match depth {
        Depth::Quick => &[16, 100, 512],
        Depth::Full => &[16, 100, 512, 1024, 4096],
    }
}

/// Uniform inputs up to `n = 1024` against a scaled bound, damped inputs at
/// every size against the plain `1e-8 n` bound.
fn oracle_suite(
    depth: Depth,
    seed_base: u64,
    run: impl Fn(&Poly, usize) -> Result<Poly>,
    exact: impl Fn(&Poly, usize) -> Result<Poly>,
) -> Result<Outcome> {
    let (mut uniform, mut damped): (f64, f64) = (0.0, 0.0);
    for &n in oracle_sizes(depth) {
        for seed in seed_base..seed_base + 3 {
            if n <= 1024 {
                let f = random_series(seed, n);
                let e = exact(&f, n)?;
                uniform = uniform.max(max_abs_err(&run(&f, n)?, &e) / scaled_limit(n, &e));
            }
            let f = random_damped(seed, n);
            let e = exact(&f, n)?;
            damped = damped.max(max_abs_err(&run(&f, n)?, &e) / (1e-8 * n as f64));
        }
    }
    Ok(Outcome {
        passed: uniform <= 1.0 && damped <= 1.0,
        detail: format!(
            "n in {:?}, worst error / limit: uniform {uniform:.3e} (scaled), damped {damped:.3e}",
            oracle_sizes(depth)
        ),
    })
}

fn sqrt_oracle(engine: &FftEngine, depth: Depth) -> Result<Outcome> {
    oracle_suite(
        depth,
        0,
        |f, n| sqrt_with(engine, f, n, &mut TransformLedger::new()),
        sqrt_recurrence,
    )
}

fn recip_oracle(engine: &FftEngine, depth: Depth) -> Result<Outcome> {
    oracle_suite(
        depth,
        10,
        |f, n| recip_with(engine, f, n, &mut TransformLedger::new()),
        recip_recurrence,
    )
}

fn sqrt_remainder(engine: &FftEngine, depth: Depth) -> Result<Outcome> {
    let count = if depth == Depth::Full { 10 } else { 3 };
    let mut passed = true;
    let mut worst: f64 = 0.0;
    for seed in 0..count {
        let f = random_monic(seed, 64);
        let mut l = TransformLedger::new();
        let out = sqrt_rem_with(engine, &f, &mut l)?;
        let recon = mul_schoolbook(&out.root, &out.root).add(&out.remainder);
        let err = max_abs_err(&recon, &f);
        let r = out.plan.r as u64;
        let m2 = 2 * out.plan.m;
        passed &= l.forward(m2) == 2 * r && l.inverse(m2) == 3 * r - 2;
        passed &= out.root.len() == 65 && out.remainder.len() == 64;
        worst = worst.max(err);
    }
    let mut o = error_outcome(worst, 1e-7);
    o.passed &= passed;
    o.detail.push_str(", block transforms 5r-2");
    Ok(o)
}

fn baselines(engine: &FftEngine, depth: Depth) -> Result<Outcome> {
    let mut worst_ratio: f64 = 0.0;
    for &n in oracle_sizes(depth).iter().filter(|&&n| n <= 1024) {
        let f = random_series(20 + n as u64, n);
        let mut l = TransformLedger::new();
        let g = recip_schonhage_with(engine, &f, n, &mut l)?;
        let exact = recip_recurrence(&f, n)?;
        worst_ratio = worst_ratio.max(max_abs_err(&g, &exact) / scaled_limit(n, &exact));
        let (s, _) = sqrt_newton_coupled_with(engine, &f, n, &mut l)?;
        let exact = sqrt_recurrence(&f, n)?;
        worst_ratio = worst_ratio.max(max_abs_err(&s, &exact) / scaled_limit(n, &exact));
    }
    Ok(Outcome {
        passed: worst_ratio <= 1.0,
        detail: format!("worst scaled error / limit {worst_ratio:.3e}"),
    })
}

fn crossover(engine: &FftEngine, _depth: Depth) -> Result<Outcome> {
    let m = 256;
    let mut passed = true;
    let mut ratios = Vec::new();
    for s in 4..=8 {
        let plan = RecipPlan::fixed(s, m)?;
        let f = random_series(70 + s as u64, plan.n);
        let mut lb = TransformLedger::new();
        recip_planned_with(engine, &f, &plan, &mut lb)?;
        let block = lb.weighted_cost(Phase::Block) + lb.weighted_cost(Phase::Base);
        let mut ls = TransformLedger::new();
        recip_schonhage_with(engine, &f, plan.n, &mut ls)?;
        let newton = ls.weighted_cost(Phase::Block) + ls.weighted_cost(Phase::Base);
        passed &= block < newton;
        ratios.push(format!("{:.3}", block / newton));
        debug_assert_eq!(
            lb.total(Phase::Block, Direction::Forward),
            (7 * s - 1) as u64
        );
    }
    Ok(Outcome {
        passed,
        detail: format!(
            "blockwise / Newton cost for s = 4..8: [{}]",
            ratios.join(", ")
        ),
    })
}

type Suite = (&'static str, fn(&FftEngine, Depth) -> Result<Outcome>);

const SUITES: &[Suite] = &[
    ("fft-roundtrip", roundtrip),
    ("cyclic-convolution", convolution),
    ("middle-product", middle_product),
    ("block-shift-spectrum", block_shift),
    ("block-products", block_products),
    ("sqrt-transform-count", sqrt_counts),
    ("recip-transform-count", recip_counts),
    ("sqrt-vs-oracle", sqrt_oracle),
    ("recip-vs-oracle", recip_oracle),
    ("sqrt-with-remainder", sqrt_remainder),
    ("newton-baselines", baselines),
    ("recip-crossover", crossover),
];

/// Runs every suite; an error inside a suite counts as a failure.
pub fn run_selftest(engine: &FftEngine, depth: Depth) -> SelfTestReport {
    let suites = SUITES
        .iter()
        .map(|(name, suite)| {
            let start = Instant::now();
            let (passed, detail) = match suite(engine, depth) {
                Ok(o) => (o.passed, o.detail),
                Err(e) => (false, format!("error: {e}")),
            };
            SuiteResult {
                name,
                passed,
                detail,
                elapsed_ms: start.elapsed().as_millis(),
            }
        })
        .collect();
    SelfTestReport { suites }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_selftest_passes() {
        let report = run_selftest(FftEngine::global(), Depth::Quick);
        for s in &report.suites {
            assert!(s.passed, "{s}");
        }
    }

    #[test]
    fn corrupted_fft_is_detected() {
        let engine = FftEngine::with_corrupted_twiddle();
        let report = run_selftest(&engine, Depth::Quick);
        assert!(!report.passed());
        assert!(
            !report
                .suites
                .iter()
                .find(|s| s.name == "fft-roundtrip")
                .unwrap()
                .passed
        );
    }
}
