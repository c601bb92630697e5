use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex64;

use super::size::factorize;
use crate::error::{Result, SeriesError};

/// Precomputed plan for one transform length.
///
/// `roots[k] = e^{+2 pi i k / n}`; the forward transform uses them as stored
/// and the inverse uses their conjugates.
#[derive(Debug)]
pub(crate) struct FftPlan {
    n: usize,
    factors: Vec<usize>,
    roots: Vec<Complex64>,
}

impl FftPlan {
    fn new(n: usize, corrupt: bool) -> Result<Self> {
        let factors = factorize(n).ok_or(SeriesError::UnsupportedLength(n))?;
        let mut roots: Vec<Complex64> = (0..n)
            .map(|k| {
                let theta = 2.0 * PI * k as f64 / n as f64;
                Complex64::new(theta.cos(), theta.sin())
            })
            .collect();
        if corrupt && n > 2 {
            roots[1] = -roots[1];
        }
        Ok(FftPlan { n, factors, roots })
    }

    #[inline]
    fn root(&self, idx: usize, inverse: bool) -> Complex64 {
        let w = self.roots[idx];
        if inverse {
            w.conj()
        } else {
            w
        }
    }

    /// Unnormalized DFT of `input` (length `n`) into `output`.
    pub(crate) fn run(&self, input: &[Complex64], output: &mut [Complex64], inverse: bool) {
        debug_assert_eq!(input.len(), self.n);
        debug_assert_eq!(output.len(), self.n);
        self.step(input, 0, 1, output, 0, inverse);
    }

    // Decimation in time: split into `p` interleaved subsequences, transform
    // each into its slice of `out`, then combine with radix-p butterflies.
    fn step(
        &self,
        input: &[Complex64],
        offset: usize,
        stride: usize,
        out: &mut [Complex64],
        depth: usize,
        inverse: bool,
    ) {
        let n = out.len();
        if n == 1 {
            out[0] = input[offset];
            return;
        }
        let p = self.factors[depth];
        let m = n / p;
        for q in 0..p {
            self.step(
                input,
                offset + q * stride,
                stride * p,
                &mut out[q * m..(q + 1) * m],
                depth + 1,
                inverse,
            );
        }
        let tw = self.n / n;
        let rot = |z: Complex64| {
            if inverse {
                Complex64::new(z.im, -z.re)
            } else {
                Complex64::new(-z.im, z.re)
            }
        };
        match p {
            2 => {
                for k in 0..m {
                    let a = out[k];
                    let b = out[k + m] * self.root(k * tw, inverse);
                    out[k] = a + b;
                    out[k + m] = a - b;
                }
            }
            4 => {
                for k in 0..m {
                    let y0 = out[k];
                    let y1 = out[k + m] * self.root(k * tw, inverse);
                    let y2 = out[k + 2 * m] * self.root(2 * k * tw, inverse);
                    let y3 = out[k + 3 * m] * self.root(3 * k * tw, inverse);
                    let s02 = y0 + y2;
                    let d02 = y0 - y2;
                    let s13 = y1 + y3;
                    let d13 = rot(y1 - y3);
                    out[k] = s02 + s13;
                    out[k + m] = d02 + d13;
                    out[k + 2 * m] = s02 - s13;
                    out[k + 3 * m] = d02 - d13;
                }
            }
            3 => {
                let w1 = self.root(self.n / 3, inverse);
                let w2 = w1.conj();
                for k in 0..m {
                    let y0 = out[k];
                    let y1 = out[k + m] * self.root(k * tw, inverse);
                    let y2 = out[k + 2 * m] * self.root(2 * k * tw, inverse);
                    out[k] = y0 + y1 + y2;
                    out[k + m] = y0 + y1 * w1 + y2 * w2;
                    out[k + 2 * m] = y0 + y1 * w2 + y2 * w1;
                }
            }
            _ => unreachable!("radix {p} not in schedule"),
        }
    }
}

/// Source of FFT plans, one per transform length.
///
/// Plans are built on first use and never modified afterwards, so an engine
/// can be shared freely between threads.
#[derive(Debug, Default)]
pub struct FftEngine {
    plans: RwLock<HashMap<usize, Arc<FftPlan>>>,
    corrupt: bool,
}

impl FftEngine {
    pub fn new() -> Self {
        FftEngine::default()
    }

    /// Process-wide engine used by the free functions in this crate.
    pub fn global() -> &'static FftEngine {
        static ENGINE: OnceLock<FftEngine> = OnceLock::new();
        ENGINE.get_or_init(FftEngine::new)
    }

    /// Engine whose twiddle tables have the sign of `e^{2 pi i / n}` flipped.
    /// Only useful for checking that the self-test notices a broken FFT.
    #[doc(hidden)]
    pub fn with_corrupted_twiddle() -> Self {
        FftEngine {
            plans: RwLock::default(),
            corrupt: true,
        }
    }

    pub(crate) fn plan(&self, n: usize) -> Result<Arc<FftPlan>> {
        if let Some(plan) = self.plans.read().expect("plan cache poisoned").get(&n) {
            return Ok(plan.clone());
        }
        let plan = Arc::new(FftPlan::new(n, self.corrupt)?);
        let mut plans = self.plans.write().expect("plan cache poisoned");
        Ok(plans.entry(n).or_insert(plan).clone())
    }
}
