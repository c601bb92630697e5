//! Block decomposition `f = f_[0] + f_[1] X + ...` with `X = x^m`, cached
//! block spectra of length `2m`, and block extraction from products.
//!
//! Block `k` of `f * g` is
//!
//! ```text
//! (fg)_[k] = sum_{i=0..k} (f_[k-i-1] + f_[k-i] X) ⋊_m g_[i],    f_[-1] = 0,
//! ```
//!
//! and since `F_2m(X)_j = (-1)^j`, the whole sum can be accumulated in the
//! transform domain and recovered with a single inverse transform.

use num_complex::Complex64;

use crate::error::{Result, SeriesError};
use crate::poly::Poly;
use crate::transform::{FftEngine, Spectrum, TransformLedger};

/// A polynomial split into blocks of `m` coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockSeries {
    m: usize,
    blocks: Vec<Poly>,
}

impl BlockSeries {
    /// Splits `f` into `num_blocks` blocks of size `m`. Coefficients past
    /// `num_blocks * m` are dropped; missing ones are zero.
    pub fn decompose(f: &Poly, m: usize, num_blocks: usize) -> BlockSeries {
        assert!(m >= 1, "block size must be positive");
        let blocks = (0..num_blocks)
            .map(|i| Poly::new((i * m..(i + 1) * m).map(|j| f.coeff(j)).collect()))
            .collect();
        BlockSeries { m, blocks }
    }

    /// Series with no blocks yet; grow it with [`BlockSeries::push`].
    pub fn empty(m: usize) -> BlockSeries {
        assert!(m >= 1, "block size must be positive");
        BlockSeries {
            m,
            blocks: Vec::new(),
        }
    }

    pub fn block_size(&self) -> usize {
        self.m
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block(&self, i: usize) -> Result<&Poly> {
        self.blocks.get(i).ok_or(SeriesError::BlockOutOfRange {
            index: i,
            len: self.blocks.len(),
        })
    }

    pub fn blocks(&self) -> &[Poly] {
        &self.blocks
    }

    /// Appends a block; it must have exactly `m` coefficients.
    pub fn push(&mut self, block: Poly) -> Result<()> {
        if block.len() != self.m {
            return Err(SeriesError::BlockSizeMismatch(self.m, block.len()));
        }
        self.blocks.push(block);
        Ok(())
    }

    /// Concatenates the blocks back into one polynomial of length `m * num_blocks`.
    pub fn recompose(&self) -> Poly {
        Poly::new(
            self.blocks
                .iter()
                .flat_map(|b| b.coeffs().iter().copied())
                .collect(),
        )
    }
}

/// Lazily filled store of `F_2m(f_[i])` for the blocks of one series.
#[derive(Debug, Clone)]
pub struct TransformCache {
    m: usize,
    spectra: Vec<Option<Spectrum>>,
}

impl TransformCache {
    /// Cache for a series with `num_blocks` logical blocks of size `m`.
    pub fn new(m: usize, num_blocks: usize) -> TransformCache {
        TransformCache {
            m,
            spectra: vec![None; num_blocks],
        }
    }

    pub fn block_size(&self) -> usize {
        self.m
    }

    pub fn num_blocks(&self) -> usize {
        self.spectra.len()
    }

    pub fn get(&self, i: usize) -> Option<&Spectrum> {
        self.spectra.get(i).and_then(Option::as_ref)
    }

    /// Returns `F_2m(series_[i])`, transforming on first request only.
    pub fn ensure(
        &mut self,
        engine: &FftEngine,
        series: &BlockSeries,
        i: usize,
        ledger: &mut TransformLedger,
    ) -> Result<&Spectrum> {
        if series.block_size() != self.m {
            return Err(SeriesError::BlockSizeMismatch(self.m, series.block_size()));
        }
        let len = self.spectra.len();
        let slot = self
            .spectra
            .get_mut(i)
            .ok_or(SeriesError::BlockOutOfRange { index: i, len })?;
        if slot.is_none() {
            let block = series.block(i)?;
            *slot = Some(engine.forward(block, 2 * self.m, ledger)?);
        }
        Ok(slot.as_ref().expect("filled above"))
    }

    /// The full series: every block index below `num_blocks` must be cached
    /// by the time it is read.
    pub fn view(&self) -> CacheView<'_> {
        CacheView {
            cache: self,
            len: self.spectra.len(),
        }
    }

    /// The truncation `f_[0] + ... + f_[len-1] X^{len-1}`; higher blocks read as zero.
    pub fn prefix(&self, len: usize) -> CacheView<'_> {
        CacheView {
            cache: self,
            len: len.min(self.spectra.len()),
        }
    }
}

/// Read access to a cache with every block at index `>= len` treated as zero.
#[derive(Debug, Clone, Copy)]
pub struct CacheView<'a> {
    cache: &'a TransformCache,
    len: usize,
}

impl<'a> CacheView<'a> {
    pub fn block_size(&self) -> usize {
        self.cache.m
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn spectrum(&self, i: usize) -> Result<Option<&'a Spectrum>> {
        if i >= self.len {
            return Ok(None);
        }
        self.cache
            .get(i)
            .map(Some)
            .ok_or(SeriesError::MissingTransform(i))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// One signed product `±(left * right)_[index]` inside [`combined_block`].
#[derive(Debug, Clone, Copy)]
pub struct BlockTerm<'a> {
    pub left: CacheView<'a>,
    pub right: CacheView<'a>,
    pub sign: Sign,
    pub index: usize,
}

impl<'a> BlockTerm<'a> {
    pub fn new(left: CacheView<'a>, right: CacheView<'a>, sign: Sign, index: usize) -> Self {
        BlockTerm {
            left,
            right,
            sign,
            index,
        }
    }
}

/// Block `k` of `f * g` from cached spectra. One inverse transform, no forward.
pub fn product_block(
    engine: &FftEngine,
    f: CacheView<'_>,
    g: CacheView<'_>,
    k: usize,
    ledger: &mut TransformLedger,
) -> Result<Poly> {
    combined_block(engine, &[BlockTerm::new(f, g, Sign::Plus, k)], ledger)
}

/// `sum ± (left * right)_[index]` over `terms`, accumulated in the transform
/// domain and inverted once.
pub fn combined_block(
    engine: &FftEngine,
    terms: &[BlockTerm<'_>],
    ledger: &mut TransformLedger,
) -> Result<Poly> {
    let m = match terms.first() {
        Some(t) => t.left.block_size(),
        None => return Err(SeriesError::Precondition("no terms to combine".into())),
    };
    for t in terms {
        for bs in [t.left.block_size(), t.right.block_size()] {
            if bs != m {
                return Err(SeriesError::BlockSizeMismatch(m, bs));
            }
        }
    }
    let mut acc = Spectrum::zeros(2 * m);
    for t in terms {
        accumulate_term(acc.values_mut(), t)?;
    }
    let full = engine.inverse(&acc, ledger)?;
    Ok(Poly::new(full.coeffs()[m..].to_vec()))
}

fn accumulate_term(acc: &mut [Complex64], term: &BlockTerm<'_>) -> Result<()> {
    let k = term.index;
    for i in 0..=k {
        let Some(gs) = term.right.spectrum(i)? else {
            continue;
        };
        let hi = term.left.spectrum(k - i)?;
        let lo = if k > i {
            term.left.spectrum(k - i - 1)?
        } else {
            None
        };
        let gs = gs.values();
        match term.sign {
            Sign::Plus => add_window(acc, lo, hi, gs, 1.0),
            Sign::Minus => add_window(acc, lo, hi, gs, -1.0),
        }
    }
    Ok(())
}

// acc_j += sign * (lo_j + (-1)^j hi_j) * g_j
fn add_window(
    acc: &mut [Complex64],
    lo: Option<&Spectrum>,
    hi: Option<&Spectrum>,
    g: &[Complex64],
    sign: f64,
) {
    match (lo, hi) {
        (None, None) => {}
        (Some(lo), None) => {
            for ((a, l), g) in acc.iter_mut().zip(lo.values()).zip(g) {
                *a += sign * l * g;
            }
        }
        (lo, Some(hi)) => {
            for (j, (a, g)) in acc.iter_mut().zip(g).enumerate() {
                let h = if j % 2 == 0 {
                    hi.values()[j]
                } else {
                    -hi.values()[j]
                };
                let w = match lo {
                    Some(lo) => lo.values()[j] + h,
                    None => h,
                };
                *a += sign * w * g;
            }
        }
    }
}
