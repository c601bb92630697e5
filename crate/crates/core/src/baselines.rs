//! Classical Newton-iteration algorithms. They provide the base cases of the
//! blockwise algorithms and serve as comparators in benchmarks.

use num_complex::Complex64;

use crate::error::{Result, SeriesError};
use crate::poly::{require_unit_constant, Poly};
use crate::transform::{next_supported, pointwise_mul, FftEngine, TransformLedger};

/// Precisions visited by a Newton iteration ending at `n`, smallest first.
/// Each entry is at most twice its predecessor.
pub(crate) fn newton_schedule(n: usize) -> Vec<usize> {
    let mut steps = vec![n];
    while *steps.last().expect("non-empty") > 1 {
        let last = *steps.last().expect("non-empty");
        steps.push(last.div_ceil(2));
    }
    steps.reverse();
    steps
}

/// Reciprocal by second-order Newton steps `g' = 2g - g^2 f`.
///
/// Going from precision `k` to `k' <= 2k`, the product `g^2 (f mod x^{k'})` is
/// only needed at coefficients `k..k'`, and reducing it mod `x^L - 1` with
/// `L >= k + k'` wraps nothing onto them. So each step is two forward and one
/// inverse transform of length `L = next_supported(k + k')`.
pub fn recip_schonhage_with(
    engine: &FftEngine,
    f: &Poly,
    n: usize,
    ledger: &mut TransformLedger,
) -> Result<Poly> {
    require_unit_constant(f)?;
    if n == 0 {
        return Err(SeriesError::ZeroPrecision);
    }
    let mut g = Poly::new(vec![Complex64::new(1.0, 0.0) / f.coeff(0)]);
    for window in newton_schedule(n).windows(2) {
        let (k, next) = (window[0], window[1]);
        let len = next_supported(k + next);
        let gs = engine.forward(&g, len, ledger)?;
        let fs = engine.forward(&f.resized(next), len, ledger)?;
        let prod = engine.inverse(&pointwise_mul(&pointwise_mul(&gs, &gs)?, &fs)?, ledger)?;
        g.resize(next);
        for i in k..next {
            g[i] = -prod[i];
        }
    }
    g.check_finite()?;
    Ok(g)
}

/// [`recip_schonhage_with`] on the global engine.
pub fn recip_schonhage(f: &Poly, n: usize, ledger: &mut TransformLedger) -> Result<Poly> {
    recip_schonhage_with(FftEngine::global(), f, n, ledger)
}

/// Square root together with its inverse, both to precision `n`.
///
/// Each step first extends `g` with the current inverse,
/// `g' = g + ginv (f - g^2) / 2`, then refreshes the inverse against the new
/// root, `ginv' = ginv + ginv (1 - g' ginv)`.
pub fn sqrt_newton_coupled_with(
    engine: &FftEngine,
    f: &Poly,
    n: usize,
    ledger: &mut TransformLedger,
) -> Result<(Poly, Poly)> {
    require_unit_constant(f)?;
    if n == 0 {
        return Err(SeriesError::ZeroPrecision);
    }
    let g0 = f.coeff(0).sqrt();
    let mut g = Poly::new(vec![g0]);
    let mut ginv = Poly::new(vec![Complex64::new(1.0, 0.0) / g0]);
    for window in newton_schedule(n).windows(2) {
        let (k, next) = (window[0], window[1]);

        let sq = engine.multiply_truncated(&g, &g, next, ledger)?;
        // f - g^2 vanishes below x^k; keep only its top part.
        let err = Poly::new((k..next).map(|i| f.coeff(i) - sq[i]).collect());
        let corr = engine.multiply_truncated(&ginv, &err, next - k, ledger)?;
        g.resize(next);
        for (i, c) in corr.coeffs().iter().enumerate() {
            g[k + i] = c * 0.5;
        }

        let prod = engine.multiply_truncated(&g, &ginv, next, ledger)?;
        let resid = Poly::new((k..next).map(|i| -prod[i]).collect());
        let corr = engine.multiply_truncated(&ginv, &resid, next - k, ledger)?;
        ginv.resize(next);
        for (i, c) in corr.coeffs().iter().enumerate() {
            ginv[k + i] = *c;
        }
    }
    g.check_finite()?;
    ginv.check_finite()?;
    Ok((g, ginv))
}

/// [`sqrt_newton_coupled_with`] on the global engine.
pub fn sqrt_newton_coupled(
    f: &Poly,
    n: usize,
    ledger: &mut TransformLedger,
) -> Result<(Poly, Poly)> {
    sqrt_newton_coupled_with(FftEngine::global(), f, n, ledger)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{recip_recurrence, sqrt_recurrence};

    fn test_series(n: usize) -> Poly {
        let mut p = Poly::new(
            (0..n)
                .map(|i| {
                    Complex64::new(0.25 * (i as f64 * 1.7).sin(), 0.2 * (i as f64 * 0.6).cos())
                })
                .collect(),
        );
        p[0] = Complex64::new(1.0, 0.0);
        p
    }

    #[test]
    fn schedule_halves() {
        assert_eq!(newton_schedule(1), vec![1]);
        assert_eq!(newton_schedule(8), vec![1, 2, 4, 8]);
        assert_eq!(newton_schedule(100), vec![1, 2, 4, 7, 13, 25, 50, 100]);
    }

    #[test]
    fn schonhage_examples() {
        let mut l = TransformLedger::new();
        let g = recip_schonhage(&Poly::from_real(&[1.0, -1.0]), 8, &mut l).unwrap();
        assert!(g.max_diff(&Poly::from_real(&[1.0; 8])) < 1e-13);
        let g = recip_schonhage(&Poly::from_real(&[1.0, 1.0]), 8, &mut l).unwrap();
        let alt: Vec<f64> = (0..8)
            .map(|i| if i % 2 == 0 { 1.0 } else { -1.0 })
            .collect();
        assert!(g.max_diff(&Poly::from_real(&alt)) < 1e-13);

        let f = test_series(512);
        let g = recip_schonhage(&f, 512, &mut l).unwrap();
        assert!(g.max_diff(&recip_recurrence(&f, 512).unwrap()) < 1e-8);
        assert!(recip_schonhage(&Poly::from_real(&[3.0]), 4, &mut l).is_err());
    }

    #[test]
    fn schonhage_uses_three_transforms_per_step() {
        let mut l = TransformLedger::new();
        recip_schonhage(&test_series(64), 64, &mut l).unwrap();
        // 1 -> 2 -> 4 -> ... -> 64: six steps
        assert_eq!(l.total_transforms(), 18);
        assert_eq!(l.forward(next_supported(96)), 2);
        assert_eq!(l.inverse(next_supported(96)), 1);
    }

    #[test]
    fn coupled_examples() {
        let mut l = TransformLedger::new();
        let (g, gi) = sqrt_newton_coupled(&Poly::one(), 1, &mut l).unwrap();
        assert!(g.max_diff(&Poly::one()) < 1e-15 && gi.max_diff(&Poly::one()) < 1e-15);

        let (g, gi) = sqrt_newton_coupled(&Poly::from_real(&[1.0, 2.0, 1.0]), 2, &mut l).unwrap();
        assert!(g.max_diff(&Poly::from_real(&[1.0, 1.0])) < 1e-14);
        assert!(gi.max_diff(&Poly::from_real(&[1.0, -1.0])) < 1e-14);

        let f = test_series(256);
        let (g, gi) = sqrt_newton_coupled(&f, 256, &mut l).unwrap();
        let expect = sqrt_recurrence(&f, 256).unwrap();
        assert!(g.max_diff(&expect) < 1e-8);
        assert!(gi.max_diff(&recip_recurrence(&expect, 256).unwrap()) < 1e-8);
    }

    #[test]
    fn coupled_rejects_bad_constant() {
        let mut l = TransformLedger::new();
        assert!(matches!(
            sqrt_newton_coupled(&Poly::from_real(&[4.0, 1.0]), 3, &mut l),
            Err(SeriesError::NotNormalized(_))
        ));
        assert_eq!(
            sqrt_newton_coupled(&Poly::one(), 0, &mut l).unwrap_err(),
            SeriesError::ZeroPrecision
        );
    }
}
