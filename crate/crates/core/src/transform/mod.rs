//! Complex FFT with the evaluation convention `F_n(g)_j = g(e^{2 pi i j / n})`,
//! plus cyclic convolution, middle product and transform bookkeeping.

mod fft;
mod ledger;
mod size;

use num_complex::Complex64;

use crate::error::{Result, SeriesError};
use crate::poly::Poly;

pub use fft::FftEngine;
pub use ledger::{transform_weight, Direction, Phase, TransformLedger};
pub use size::{is_supported, next_supported, supported_sizes};

/// Values of a polynomial at the `n`-th roots of unity.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<Complex64>,
}

impl Spectrum {
    /// Wraps raw values; the length must be a supported transform length.
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if !is_supported(values.len()) {
            return Err(SeriesError::UnsupportedLength(values.len()));
        }
        Ok(Spectrum { values })
    }

    pub(crate) fn zeros(n: usize) -> Self {
        Spectrum {
            values: vec![Complex64::default(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub(crate) fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }
}

/// Componentwise product of two spectra of equal length.
pub fn pointwise_mul(a: &Spectrum, b: &Spectrum) -> Result<Spectrum> {
    if a.len() != b.len() {
        return Err(SeriesError::LengthMismatch(a.len(), b.len()));
    }
    Ok(Spectrum {
        values: a.values.iter().zip(&b.values).map(|(x, y)| x * y).collect(),
    })
}

impl FftEngine {
    /// Evaluates `p` at the `n`-th roots of unity. Charges one forward
    /// transform of length `n`.
    pub fn forward(&self, p: &Poly, n: usize, ledger: &mut TransformLedger) -> Result<Spectrum> {
        if p.len() > n {
            return Err(SeriesError::InputTooLong { len: p.len(), n });
        }
        p.check_finite()?;
        let plan = self.plan(n)?;
        let input = p.resized(n);
        let mut values = vec![Complex64::default(); n];
        plan.run(input.coeffs(), &mut values, false);
        ledger.record(Direction::Forward, n);
        Ok(Spectrum { values })
    }

    /// Interpolates the degree `< n` polynomial with spectrum `s`. Charges one
    /// inverse transform of length `n`.
    pub fn inverse(&self, s: &Spectrum, ledger: &mut TransformLedger) -> Result<Poly> {
        let n = s.len();
        let plan = self.plan(n)?;
        let mut out = vec![Complex64::default(); n];
        plan.run(&s.values, &mut out, true);
        let scale = 1.0 / n as f64;
        for v in &mut out {
            *v *= scale;
        }
        ledger.record(Direction::Inverse, n);
        Ok(Poly::new(out))
    }

    /// `g1 * g2 mod x^n - 1` using two forward and one inverse transform.
    pub fn cyclic_convolution(
        &self,
        g1: &Poly,
        g2: &Poly,
        n: usize,
        ledger: &mut TransformLedger,
    ) -> Result<Poly> {
        let a = self.forward(g1, n, ledger)?;
        let b = self.forward(g2, n, ledger)?;
        self.inverse(&pointwise_mul(&a, &b)?, ledger)
    }

    /// Coefficients `n..2n` of `g * h`, for `deg g < 2n` and `deg h < n`.
    ///
    /// Reducing mod `x^{2n} - 1` folds only the top `n` coefficients onto the
    /// bottom half, so the upper half of the cyclic product is exact.
    pub fn middle_product(
        &self,
        g: &Poly,
        h: &Poly,
        n: usize,
        ledger: &mut TransformLedger,
    ) -> Result<Poly> {
        if g.len() > 2 * n {
            return Err(SeriesError::DegreeBound(format!(
                "middle product needs deg g < {}, got length {}",
                2 * n,
                g.len()
            )));
        }
        if h.len() > n {
            return Err(SeriesError::DegreeBound(format!(
                "middle product needs deg h < {n}, got length {}",
                h.len()
            )));
        }
        let full = self.cyclic_convolution(g, h, 2 * n, ledger)?;
        Ok(Poly::new(full.coeffs()[n..].to_vec()))
    }

    /// Full product `a * b` through one cyclic convolution of the next
    /// supported length.
    pub fn multiply(&self, a: &Poly, b: &Poly, ledger: &mut TransformLedger) -> Result<Poly> {
        if a.is_empty() || b.is_empty() {
            return Ok(Poly::default());
        }
        let len = a.len() + b.len() - 1;
        let mut out = self.cyclic_convolution(a, b, next_supported(len), ledger)?;
        out.truncate(len);
        Ok(out)
    }

    /// `a * b mod x^len`.
    pub fn multiply_truncated(
        &self,
        a: &Poly,
        b: &Poly,
        len: usize,
        ledger: &mut TransformLedger,
    ) -> Result<Poly> {
        let a = if a.len() > len {
            a.resized(len)
        } else {
            a.clone()
        };
        let b = if b.len() > len {
            b.resized(len)
        } else {
            b.clone()
        };
        let mut out = self.multiply(&a, &b, ledger)?;
        out.resize(len);
        Ok(out)
    }
}

/// [`FftEngine::forward`] on the global engine.
pub fn forward(p: &Poly, n: usize, ledger: &mut TransformLedger) -> Result<Spectrum> {
    FftEngine::global().forward(p, n, ledger)
}

/// [`FftEngine::inverse`] on the global engine.
pub fn inverse(s: &Spectrum, ledger: &mut TransformLedger) -> Result<Poly> {
    FftEngine::global().inverse(s, ledger)
}

/// [`FftEngine::cyclic_convolution`] on the global engine.
pub fn cyclic_convolution(
    g1: &Poly,
    g2: &Poly,
    n: usize,
    ledger: &mut TransformLedger,
) -> Result<Poly> {
    FftEngine::global().cyclic_convolution(g1, g2, n, ledger)
}

/// [`FftEngine::middle_product`] on the global engine.
pub fn middle_product(g: &Poly, h: &Poly, n: usize, ledger: &mut TransformLedger) -> Result<Poly> {
    FftEngine::global().middle_product(g, h, n, ledger)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol)
    }

    #[test]
    fn forward_examples() {
        let mut l = TransformLedger::new();
        let s = forward(&Poly::from_real(&[1.0]), 2, &mut l).unwrap();
        assert!(close(s.values(), &[c(1.0, 0.0), c(1.0, 0.0)], 1e-15));
        let s = forward(&Poly::from_real(&[0.0, 1.0]), 2, &mut l).unwrap();
        assert!(close(s.values(), &[c(1.0, 0.0), c(-1.0, 0.0)], 1e-15));
        // p(1), p(i), p(-1), p(-i) for p = 1 + 2x + 3x^2 + 4x^3
        let s = forward(&Poly::from_real(&[1.0, 2.0, 3.0, 4.0]), 4, &mut l).unwrap();
        let expect = [c(10.0, 0.0), c(-2.0, -2.0), c(-2.0, 0.0), c(-2.0, 2.0)];
        assert!(close(s.values(), &expect, 1e-13));
        assert_eq!(l.forward(2), 2);
        assert_eq!(l.forward(4), 1);
    }

    #[test]
    fn inverse_examples() {
        let mut l = TransformLedger::new();
        let s = Spectrum::new(vec![c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(close(
            inverse(&s, &mut l).unwrap().coeffs(),
            &[c(1.0, 0.0), c(0.0, 0.0)],
            1e-15
        ));
        let s = Spectrum::new(vec![c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        assert!(close(
            inverse(&s, &mut l).unwrap().coeffs(),
            &[c(0.0, 0.0), c(1.0, 0.0)],
            1e-15
        ));
        assert_eq!(l.inverse(2), 2);
    }

    #[test]
    fn forward_rejects_bad_input() {
        let mut l = TransformLedger::new();
        assert_eq!(
            forward(&Poly::zeros(3), 10, &mut l).unwrap_err(),
            SeriesError::UnsupportedLength(10)
        );
        assert!(matches!(
            forward(&Poly::zeros(5), 4, &mut l),
            Err(SeriesError::InputTooLong { .. })
        ));
        assert_eq!(
            forward(&Poly::from_real(&[f64::INFINITY]), 4, &mut l).unwrap_err(),
            SeriesError::NonFinite(0)
        );
        assert_eq!(l.total_transforms(), 0);
        assert!(Spectrum::new(vec![c(0.0, 0.0); 5]).is_err());
    }

    #[test]
    fn pointwise_examples() {
        let a = Spectrum::new(vec![c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        let b = Spectrum::new(vec![c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        assert_eq!(pointwise_mul(&a, &b).unwrap().values(), b.values());
        let a = Spectrum::new(vec![c(2.0, 0.0), c(3.0, 0.0)]).unwrap();
        let z = Spectrum::new(vec![c(0.0, 0.0); 2]).unwrap();
        assert_eq!(pointwise_mul(&a, &z).unwrap().values(), z.values());
        let four = Spectrum::new(vec![c(0.0, 0.0); 4]).unwrap();
        assert_eq!(
            pointwise_mul(&a, &four).unwrap_err(),
            SeriesError::LengthMismatch(2, 4)
        );
    }

    #[test]
    fn pointwise_product_is_cyclic_convolution() {
        // (1 + x)(1 + x^2) = 1 + x + x^2 + x^3, no wrap at n = 4
        let mut l = TransformLedger::new();
        let p = Poly::from_real(&[1.0, 1.0, 0.0, 0.0]);
        let q = Poly::from_real(&[1.0, 0.0, 1.0, 0.0]);
        let lhs = pointwise_mul(
            &forward(&p, 4, &mut l).unwrap(),
            &forward(&q, 4, &mut l).unwrap(),
        )
        .unwrap();
        let rhs = forward(&Poly::from_real(&[1.0, 1.0, 1.0, 1.0]), 4, &mut l).unwrap();
        assert!(close(lhs.values(), rhs.values(), 1e-13));
    }

    #[test]
    fn cyclic_convolution_examples() {
        let mut l = TransformLedger::new();
        let out = cyclic_convolution(
            &Poly::from_real(&[1.0, 1.0]),
            &Poly::from_real(&[1.0, 1.0]),
            2,
            &mut l,
        )
        .unwrap();
        assert!(close(out.coeffs(), &[c(2.0, 0.0), c(2.0, 0.0)], 1e-14));
        assert_eq!((l.forward(2), l.inverse(2)), (2, 1));

        let g2 = Poly::from_real(&[0.5, -1.0, 2.0]);
        let out =
            cyclic_convolution(&Poly::from_real(&[1.0, 0.0, 0.0, 0.0]), &g2, 4, &mut l).unwrap();
        assert!(close(out.coeffs(), g2.resized(4).coeffs(), 1e-14));

        let x = Poly::from_real(&[0.0, 1.0]);
        let out = cyclic_convolution(&x, &x, 2, &mut l).unwrap();
        assert!(close(out.coeffs(), &[c(1.0, 0.0), c(0.0, 0.0)], 1e-14));
    }

    #[test]
    fn middle_product_examples() {
        let mut l = TransformLedger::new();
        let out = middle_product(
            &Poly::from_real(&[1.0, 2.0, 3.0, 4.0]),
            &Poly::from_real(&[5.0, 6.0]),
            2,
            &mut l,
        )
        .unwrap();
        assert!(close(out.coeffs(), &[c(27.0, 0.0), c(38.0, 0.0)], 1e-12));
        assert_eq!((l.forward(4), l.inverse(4)), (2, 1));

        let h = Poly::from_real(&[0.25, -3.0, 1.5]);
        let out = middle_product(&Poly::monomial(3, 6), &h, 3, &mut l).unwrap();
        assert!(close(out.coeffs(), h.coeffs(), 1e-13));

        let out = middle_product(&Poly::zeros(6), &h, 3, &mut l).unwrap();
        assert!(out.max_abs() < 1e-15);
    }

    #[test]
    fn middle_product_degree_bounds() {
        let mut l = TransformLedger::new();
        assert!(matches!(
            middle_product(&Poly::zeros(5), &Poly::zeros(2), 2, &mut l),
            Err(SeriesError::DegreeBound(_))
        ));
        assert!(matches!(
            middle_product(&Poly::zeros(4), &Poly::zeros(3), 2, &mut l),
            Err(SeriesError::DegreeBound(_))
        ));
        assert_eq!(l.total_transforms(), 0);
    }

    #[test]
    fn transform_of_block_shift_is_alternating_sign() {
        let mut l = TransformLedger::new();
        for m in supported_sizes().take_while(|&m| m <= 512) {
            let s = forward(&Poly::monomial(m, 2 * m), 2 * m, &mut l).unwrap();
            for (j, v) in s.values().iter().enumerate() {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                assert!((v - c(sign, 0.0)).norm() <= 1e-12, "m = {m}, j = {j}");
            }
        }
    }

    #[test]
    fn multiply_matches_schoolbook() {
        let mut l = TransformLedger::new();
        let a = Poly::from_real(&[1.0, 2.0, 3.0, 4.0]);
        let b = Poly::from_real(&[5.0, 6.0]);
        let out = FftEngine::global().multiply(&a, &b, &mut l).unwrap();
        let expect: Vec<Complex64> = [5.0, 16.0, 27.0, 38.0, 24.0]
            .iter()
            .map(|&v| c(v, 0.0))
            .collect();
        assert!(close(out.coeffs(), &expect, 1e-12));
        let t = FftEngine::global()
            .multiply_truncated(&a, &b, 3, &mut l)
            .unwrap();
        assert!(close(t.coeffs(), &expect[..3], 1e-12));
    }
}
