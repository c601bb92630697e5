//! Blockwise square root.
//!
//! With `g = f^{1/2}` split into blocks, block `k` satisfies
//! `2 g_[0] g_[k] = f_[k] - psi  (mod X)` where `psi` is block `k` of
//! `(g_[0] + ... + g_[k-1] X^{k-1})^2`. Every block spectrum is computed once
//! and reused by all later iterations, so `r` blocks cost `4r - 3` transforms
//! of length `2m` on top of the base case.

use serde::{Deserialize, Serialize};

use crate::baselines::sqrt_newton_coupled_with;
use crate::blockwise::{product_block, BlockSeries, TransformCache};
use crate::error::{Result, SeriesError};
use crate::poly::{require_unit_constant, Poly};
use crate::transform::{
    is_supported, next_supported, pointwise_mul, FftEngine, Phase, TransformLedger,
};

/// Block layout for a square root to precision `n`: `r` blocks of size `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SqrtPlan {
    pub n: usize,
    pub r: usize,
    pub m: usize,
}

impl SqrtPlan {
    /// Plan with an explicit block size, covering exactly `r * m` coefficients.
    pub fn fixed(r: usize, m: usize) -> Result<SqrtPlan> {
        let plan = SqrtPlan { n: r * m, r, m };
        plan.validate()?;
        Ok(plan)
    }

    pub fn validate(&self) -> Result<()> {
        if self.r == 0 {
            return Err(SeriesError::ZeroBlocks);
        }
        if self.n == 0 {
            return Err(SeriesError::ZeroPrecision);
        }
        if !is_supported(2 * self.m) {
            return Err(SeriesError::UnsupportedLength(2 * self.m));
        }
        if self.r * self.m < self.n {
            return Err(SeriesError::Precondition(format!(
                "{} blocks of size {} do not cover precision {}",
                self.r, self.m, self.n
            )));
        }
        Ok(())
    }
}

/// `round(log2(n) / 2)` blocks clamped to `[1, 32]`, unless overridden; the
/// block size is the smallest supported size covering `n` with that many blocks.
pub fn choose_params(n: usize, blocks_override: Option<usize>) -> Result<SqrtPlan> {
    if n == 0 {
        return Err(SeriesError::ZeroPrecision);
    }
    let r = match blocks_override {
        Some(0) => return Err(SeriesError::ZeroBlocks),
        Some(r) => r,
        None => ((n as f64).log2() / 2.0).round().clamp(1.0, 32.0) as usize,
    };
    Ok(SqrtPlan {
        n,
        r,
        m: next_supported(n.div_ceil(r)),
    })
}

/// Output of the block iteration, with the intermediate `psi` blocks kept
/// for inspection.
#[derive(Debug, Clone)]
pub struct SqrtIteration {
    /// `g_[0] + ... + g_[r-1] X^{r-1}`, length `r m`.
    pub root: Poly,
    /// `psi` from iteration `k` at index `k - 1`.
    pub psi: Vec<Poly>,
    blocks: BlockSeries,
    cache: TransformCache,
}

/// Computes `f^{1/2} mod X^r` from `g0 = f_[0]^{1/2} mod X` and
/// `h = g0^{-1} mod X`.
pub fn sqrt_block_iter_with(
    engine: &FftEngine,
    f: &BlockSeries,
    g0: &Poly,
    h: &Poly,
    r: usize,
    ledger: &mut TransformLedger,
) -> Result<SqrtIteration> {
    if r == 0 {
        return Err(SeriesError::ZeroBlocks);
    }
    let m = f.block_size();
    for len in [g0.len(), h.len()] {
        if len != m {
            return Err(SeriesError::BlockSizeMismatch(m, len));
        }
    }
    if f.num_blocks() < r {
        return Err(SeriesError::BlockOutOfRange {
            index: r - 1,
            len: f.num_blocks(),
        });
    }
    require_unit_constant(f.block(0)?)?;

    let h_spec = engine.forward(h, 2 * m, ledger)?;
    let mut g = BlockSeries::empty(m);
    g.push(g0.clone())?;
    let mut cache = TransformCache::new(m, r);
    let mut psis = Vec::with_capacity(r.saturating_sub(1));
    for k in 1..r {
        cache.ensure(engine, &g, k - 1, ledger)?;
        let psi = product_block(engine, cache.prefix(k), cache.prefix(k), k, ledger)?;
        let rhs = f.block(k)?.sub(&psi);
        let rhs_spec = engine.forward(&rhs, 2 * m, ledger)?;
        // deg(h * rhs) < 2m - 1, so the cyclic product is the full product
        let prod = engine.inverse(&pointwise_mul(&h_spec, &rhs_spec)?, ledger)?;
        let next = Poly::new(prod.coeffs()[..m].iter().map(|c| c * 0.5).collect());
        g.push(next)?;
        psis.push(psi);
    }
    Ok(SqrtIteration {
        root: g.recompose(),
        psi: psis,
        blocks: g,
        cache,
    })
}

/// [`sqrt_block_iter_with`] on the global engine, returning only the root.
pub fn sqrt_block_iter(
    f: &BlockSeries,
    g0: &Poly,
    h: &Poly,
    r: usize,
    ledger: &mut TransformLedger,
) -> Result<Poly> {
    Ok(sqrt_block_iter_with(FftEngine::global(), f, g0, h, r, ledger)?.root)
}

fn run_planned(
    engine: &FftEngine,
    f: &Poly,
    plan: &SqrtPlan,
    ledger: &mut TransformLedger,
) -> Result<SqrtIteration> {
    plan.validate()?;
    require_unit_constant(f)?;
    f.check_finite()?;
    let blocks = BlockSeries::decompose(f, plan.m, plan.r);
    let (g0, h) = ledger.scoped(Phase::Base, |l| {
        sqrt_newton_coupled_with(engine, &f.resized(plan.m), plan.m, l)
    })?;
    sqrt_block_iter_with(engine, &blocks, &g0, &h, plan.r, ledger)
}

/// Square root to precision `plan.n` using the given block layout. Base-case
/// transforms are charged to [`Phase::Base`].
pub fn sqrt_planned_with(
    engine: &FftEngine,
    f: &Poly,
    plan: &SqrtPlan,
    ledger: &mut TransformLedger,
) -> Result<Poly> {
    let mut root = run_planned(engine, f, plan, ledger)?.root;
    root.truncate(plan.n);
    root.check_finite()?;
    Ok(root)
}

/// `f^{1/2} mod x^n` for `f(0) = 1`, with the block layout from [`choose_params`].
pub fn sqrt_with(
    engine: &FftEngine,
    f: &Poly,
    n: usize,
    ledger: &mut TransformLedger,
) -> Result<Poly> {
    require_unit_constant(f)?;
    let plan = choose_params(n, None)?;
    sqrt_planned_with(engine, f, &plan, ledger)
}

/// [`sqrt_with`] on the global engine.
pub fn sqrt(f: &Poly, n: usize, ledger: &mut TransformLedger) -> Result<Poly> {
    sqrt_with(FftEngine::global(), f, n, ledger)
}

/// `f = root^2 + remainder` with `deg root = n`, `deg remainder < n`.
#[derive(Debug, Clone)]
pub struct SqrtRem {
    pub root: Poly,
    pub remainder: Poly,
    pub plan: SqrtPlan,
}

/// Picks a layout for the reversed root of length `len` such that the square's
/// coefficients `len..2len-1` span exactly `r` blocks.
fn rem_plan(len: usize) -> SqrtPlan {
    let spanned = |m: usize| (2 * len - 2) / m - len / m + 1;
    let target = ((len as f64).log2() / 2.0).round().clamp(1.0, 32.0) as usize;
    for r_goal in (1..=target).rev() {
        let mut m = next_supported(len.div_ceil(r_goal));
        let limit = 2 * m;
        while m <= limit {
            let r = len.div_ceil(m);
            if spanned(m) == r && is_supported(2 * m) {
                return SqrtPlan { n: len, r, m };
            }
            m = next_supported(m + 1);
        }
    }
    // A single block wider than the whole square always works.
    SqrtPlan {
        n: len,
        r: 1,
        m: next_supported(2 * len - 1),
    }
}

/// Square root with remainder of a monic polynomial of even degree `2n`.
///
/// Works on the reversal `x^{2n} f(1/x) = g̃^2 + x^n h̃`: the block iteration
/// gives `g̃ mod x^{n+1}`, then the blocks of `g̃^2` holding the remainder come
/// from the retained block spectra, at the price of one more forward
/// transform (the truncated top block) and one inverse per block.
pub fn sqrt_rem_with(
    engine: &FftEngine,
    f: &Poly,
    ledger: &mut TransformLedger,
) -> Result<SqrtRem> {
    f.check_finite()?;
    let deg = f.degree().ok_or(SeriesError::NotMonic)?;
    if (f.coeff(deg) - num_complex::Complex64::new(1.0, 0.0)).norm() > 1e-12 {
        return Err(SeriesError::NotMonic);
    }
    if deg % 2 == 1 {
        return Err(SeriesError::OddDegree(deg));
    }
    let n = deg / 2;
    if n == 0 {
        return Ok(SqrtRem {
            root: Poly::one(),
            remainder: Poly::default(),
            plan: SqrtPlan { n: 1, r: 1, m: 1 },
        });
    }
    let len = n + 1;
    let plan = rem_plan(len);
    let (m, r) = (plan.m, plan.r);
    let rev = f.reversed(deg + 1);

    let iter = run_planned(engine, &rev, &plan, ledger)?;
    let SqrtIteration { root, cache, .. } = iter;
    let truncated = root.resized(len).resized(r * m);
    let blocks = BlockSeries::decompose(&truncated, m, r);
    let mut cache = cache;
    // blocks 0..r-1 end below `len`, so their cached spectra stay valid
    cache.ensure(engine, &blocks, r - 1, ledger)?;

    let lo = len / m;
    let hi = (2 * len - 2) / m;
    let mut square = Poly::zeros((hi + 1) * m);
    for k in lo..=hi {
        let block = product_block(engine, cache.view(), cache.view(), k, ledger)?;
        square.coeffs_mut()[k * m..(k + 1) * m].copy_from_slice(block.coeffs());
    }

    let root = Poly::new((0..len).rev().map(|i| truncated.coeff(i)).collect());
    let remainder = Poly::new(
        (0..n)
            .map(|i| f.coeff(i) - square.coeff(2 * n - i))
            .collect(),
    );
    root.check_finite()?;
    remainder.check_finite()?;
    Ok(SqrtRem {
        root,
        remainder,
        plan,
    })
}

/// [`sqrt_rem_with`] on the global engine.
pub fn sqrt_rem(f: &Poly, ledger: &mut TransformLedger) -> Result<SqrtRem> {
    sqrt_rem_with(FftEngine::global(), f, ledger)
}

impl SqrtIteration {
    pub fn blocks(&self) -> &BlockSeries {
        &self.blocks
    }
}
