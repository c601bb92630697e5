//! Blockwise reciprocal with a third-order Newton step.
//!
//! For `g = f^{-1} mod X^s` write `f g = 1 + δ X^s` and `δ = δ_0 + δ_1 X^s`.
//! Then `g' = g (1 - δ X^s + δ^2 X^{2s}) = f^{-1} mod X^{3s}`, and modulo
//! `X^{3s}` only `δ_0^2 - δ_1` is needed at the top, which one combined block
//! product per block delivers. Four phases:
//!
//! 1. division loop for `g_[1..s]` from `f_[0] g_[k] = -ψ (mod X)`;
//! 2. `d_[k] = -(f g)_[k+s]` for `k < s`, i.e. `d = -δ_0`;
//! 3. `d_[k] = (d^2)_[k-s] - (f g)_[k+s]` for `s <= k < 2s`, i.e. `δ_0^2 - δ_1`;
//! 4. `g_[k] = (d g)_[k-s]` for `s <= k < 3s`.
//!
//! Total: `7s - 1` forward and `6s - 2` inverse transforms of length `2m`.

use serde::{Deserialize, Serialize};

use crate::baselines::recip_schonhage_with;
use crate::blockwise::{
    combined_block, product_block, BlockSeries, BlockTerm, Sign, TransformCache,
};
use crate::error::{Result, SeriesError};
use crate::oracle::mul_truncated;
use crate::poly::{require_unit_constant, Poly};
use crate::transform::{
    is_supported, next_supported, pointwise_mul, FftEngine, Phase, TransformLedger,
};

/// Block layout for a reciprocal: the output covers `3s` blocks of size `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecipPlan {
    pub n: usize,
    pub s: usize,
    pub m: usize,
}

impl RecipPlan {
    /// `s = round(log2(n) / 6)` clamped to `[1, 16]`, unless overridden.
    pub fn choose(n: usize, blocks_override: Option<usize>) -> Result<RecipPlan> {
        if n == 0 {
            return Err(SeriesError::ZeroPrecision);
        }
        let s = match blocks_override {
            Some(0) => return Err(SeriesError::ZeroBlocks),
            Some(s) => s,
            None => ((n as f64).log2() / 6.0).round().clamp(1.0, 16.0) as usize,
        };
        Ok(RecipPlan {
            n,
            s,
            m: next_supported(n.div_ceil(3 * s)),
        })
    }

    /// Plan covering exactly `3 s m` coefficients.
    pub fn fixed(s: usize, m: usize) -> Result<RecipPlan> {
        let plan = RecipPlan { n: 3 * s * m, s, m };
        plan.validate()?;
        Ok(plan)
    }

    pub fn validate(&self) -> Result<()> {
        if self.s == 0 {
            return Err(SeriesError::ZeroBlocks);
        }
        if self.n == 0 {
            return Err(SeriesError::ZeroPrecision);
        }
        if !is_supported(2 * self.m) {
            return Err(SeriesError::UnsupportedLength(2 * self.m));
        }
        if 3 * self.s * self.m < self.n {
            return Err(SeriesError::Precondition(format!(
                "3 * {} blocks of size {} do not cover precision {}",
                self.s, self.m, self.n
            )));
        }
        Ok(())
    }
}

/// The `2s` blocks `d_[0..2s]`, equal to `-δ + δ^2 X^s mod X^{2s}` once complete.
#[derive(Debug, Clone)]
pub struct DeltaBlocks {
    pub d: Vec<Poly>,
}

impl DeltaBlocks {
    pub fn recompose(&self) -> Poly {
        Poly::new(
            self.d
                .iter()
                .flat_map(|b| b.coeffs().iter().copied())
                .collect(),
        )
    }
}

#[derive(Debug, Clone)]
pub struct RecipIteration {
    /// `f^{-1} mod X^{3s}`, length `3 s m`.
    pub inverse: Poly,
    /// `ψ` from division-loop iteration `k` at index `k - 1`.
    pub psi: Vec<Poly>,
    pub delta: DeltaBlocks,
}

/// Computes `f^{-1} mod X^{3s}` from `g0 = f_[0]^{-1} mod X`.
pub fn recip_block_iter_with(
    engine: &FftEngine,
    f: &BlockSeries,
    g0: &Poly,
    s: usize,
    ledger: &mut TransformLedger,
) -> Result<RecipIteration> {
    if s == 0 {
        return Err(SeriesError::ZeroBlocks);
    }
    let m = f.block_size();
    if g0.len() != m {
        return Err(SeriesError::BlockSizeMismatch(m, g0.len()));
    }
    if f.num_blocks() < 3 * s {
        return Err(SeriesError::BlockOutOfRange {
            index: 3 * s - 1,
            len: f.num_blocks(),
        });
    }
    require_unit_constant(f.block(0)?)?;

    let mut g = BlockSeries::empty(m);
    g.push(g0.clone())?;
    let mut g_cache = TransformCache::new(m, s);
    let g0_spec = g_cache.ensure(engine, &g, 0, ledger)?.clone();
    let mut f_cache = TransformCache::new(m, 3 * s);
    for i in 0..3 * s {
        f_cache.ensure(engine, f, i, ledger)?;
    }

    let mut psis = Vec::with_capacity(s - 1);
    for k in 1..s {
        let psi = product_block(engine, f_cache.view(), g_cache.prefix(k), k, ledger)?;
        let psi_spec = engine.forward(&psi, 2 * m, ledger)?;
        let prod = engine.inverse(&pointwise_mul(&g0_spec, &psi_spec)?, ledger)?;
        g.push(Poly::new(prod.coeffs()[..m].iter().map(|c| -c).collect()))?;
        g_cache.ensure(engine, &g, k, ledger)?;
        psis.push(psi);
    }

    let mut d = BlockSeries::empty(m);
    let mut d_cache = TransformCache::new(m, 2 * s);
    for k in 0..s {
        let block = product_block(engine, f_cache.view(), g_cache.view(), k + s, ledger)?;
        d.push(block.scaled((-1.0).into()))?;
        d_cache.ensure(engine, &d, k, ledger)?;
    }
    for k in s..2 * s {
        let block = combined_block(
            engine,
            &[
                BlockTerm::new(d_cache.prefix(s), d_cache.prefix(s), Sign::Plus, k - s),
                BlockTerm::new(f_cache.view(), g_cache.view(), Sign::Minus, k + s),
            ],
            ledger,
        )?;
        d.push(block)?;
        d_cache.ensure(engine, &d, k, ledger)?;
    }

    for k in s..3 * s {
        let block = product_block(engine, d_cache.view(), g_cache.view(), k - s, ledger)?;
        g.push(block)?;
    }

    Ok(RecipIteration {
        inverse: g.recompose(),
        psi: psis,
        delta: DeltaBlocks {
            d: d.blocks().to_vec(),
        },
    })
}

/// [`recip_block_iter_with`] on the global engine, returning only the inverse.
pub fn recip_block_iter(
    f: &BlockSeries,
    g0: &Poly,
    s: usize,
    ledger: &mut TransformLedger,
) -> Result<Poly> {
    Ok(recip_block_iter_with(FftEngine::global(), f, g0, s, ledger)?.inverse)
}

/// Reciprocal to precision `plan.n` with the given layout; base-case
/// transforms are charged to [`Phase::Base`].
pub fn recip_planned_with(
    engine: &FftEngine,
    f: &Poly,
    plan: &RecipPlan,
    ledger: &mut TransformLedger,
) -> Result<Poly> {
    plan.validate()?;
    require_unit_constant(f)?;
    f.check_finite()?;
    let blocks = BlockSeries::decompose(f, plan.m, 3 * plan.s);
    let g0 = ledger.scoped(Phase::Base, |l| {
        recip_schonhage_with(engine, &f.resized(plan.m), plan.m, l)
    })?;
    let mut out = recip_block_iter_with(engine, &blocks, &g0, plan.s, ledger)?.inverse;
    out.truncate(plan.n);
    out.check_finite()?;
    Ok(out)
}

/// `f^{-1} mod x^n` for `f(0) = 1`, with the layout from [`RecipPlan::choose`].
pub fn recip_with(
    engine: &FftEngine,
    f: &Poly,
    n: usize,
    ledger: &mut TransformLedger,
) -> Result<Poly> {
    require_unit_constant(f)?;
    let plan = RecipPlan::choose(n, None)?;
    recip_planned_with(engine, f, &plan, ledger)
}

/// [`recip_with`] on the global engine.
pub fn recip(f: &Poly, n: usize, ledger: &mut TransformLedger) -> Result<Poly> {
    recip_with(FftEngine::global(), f, n, ledger)
}

/// Applies one third-order step `g' = g (1 - δ x^n + δ^2 x^{2n})` with
/// schoolbook arithmetic and returns `max |f g' - 1|` below `x^{3n}`.
///
/// `g` must already invert `f` modulo `x^n`.
pub fn third_order_step_identity_check(g: &Poly, f: &Poly, n: usize) -> Result<f64> {
    let target = 3 * n;
    let fg = mul_truncated(f, g, target);
    let one = Poly::one().resized(target);
    let low = (0..n)
        .map(|i| (fg.coeff(i) - one.coeff(i)).norm())
        .fold(0.0, f64::max);
    if low > 1e-8 {
        return Err(SeriesError::Precondition(format!(
            "f g differs from 1 below x^{n} by {low:e}"
        )));
    }
    let delta = Poly::new(fg.coeffs()[n..].to_vec());
    let delta_sq = mul_truncated(&delta, &delta, n);
    let mut factor = Poly::one().resized(target);
    for (i, c) in delta.coeffs().iter().enumerate() {
        factor[n + i] -= c;
    }
    for (i, c) in delta_sq.coeffs().iter().enumerate() {
        factor[2 * n + i] += c;
    }
    let next = mul_truncated(g, &factor, target);
    Ok(mul_truncated(f, &next, target).max_diff(&one))
}
