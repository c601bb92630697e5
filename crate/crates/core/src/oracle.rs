//! Quadratic-time reference implementations. Nothing here touches the FFT.

use num_complex::Complex64;

use crate::error::{Result, SeriesError};
use crate::poly::{require_unit_constant, Poly};

/// Plain convolution; the product has length `len(f) + len(g) - 1`.
pub fn mul_schoolbook(f: &Poly, g: &Poly) -> Poly {
    if f.is_empty() || g.is_empty() {
        return Poly::default();
    }
    let mut out = vec![Complex64::default(); f.len() + g.len() - 1];
    for (i, a) in f.coeffs().iter().enumerate() {
        for (j, b) in g.coeffs().iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    Poly::new(out)
}

/// `f * g mod x^n` by direct summation.
pub fn mul_truncated(f: &Poly, g: &Poly, n: usize) -> Poly {
    let mut out = vec![Complex64::default(); n];
    for (i, a) in f.coeffs().iter().enumerate().take(n) {
        for (j, b) in g.coeffs().iter().enumerate().take(n - i) {
            out[i + j] += a * b;
        }
    }
    Poly::new(out)
}

/// Square root solved one coefficient at a time:
/// `2 g_0 g_k = f_k - sum_{0 < i < k} g_i g_{k-i}` with `g_0 = 1`.
pub fn sqrt_recurrence(f: &Poly, n: usize) -> Result<Poly> {
    require_unit_constant(f)?;
    let mut g = vec![Complex64::default(); n];
    if n == 0 {
        return Ok(Poly::new(g));
    }
    g[0] = Complex64::new(1.0, 0.0);
    for k in 1..n {
        let mut acc = f.coeff(k);
        for i in 1..k {
            acc -= g[i] * g[k - i];
        }
        g[k] = acc / (g[0] * 2.0);
    }
    Ok(Poly::new(g))
}

/// Inverse series from `f g = 1`: `g_k = -sum_{1 <= i <= k} f_i g_{k-i}`.
pub fn recip_recurrence(f: &Poly, n: usize) -> Result<Poly> {
    require_unit_constant(f)?;
    let mut g = vec![Complex64::default(); n];
    if n == 0 {
        return Ok(Poly::new(g));
    }
    g[0] = Complex64::new(1.0, 0.0);
    for k in 1..n {
        let mut acc = Complex64::default();
        for i in 1..=k {
            acc -= f.coeff(i) * g[k - i];
        }
        g[k] = acc;
    }
    Ok(Poly::new(g))
}

/// Coefficients `n..2n` of `g * h` for `deg g < 2n`, `deg h < n`.
pub fn middle_product_naive(g: &Poly, h: &Poly, n: usize) -> Result<Poly> {
    if g.len() > 2 * n || h.len() > n {
        return Err(SeriesError::DegreeBound(format!(
            "naive middle product with n = {n}: lengths {} and {}",
            g.len(),
            h.len()
        )));
    }
    let prod = mul_schoolbook(g, h);
    Ok(Poly::new((n..2 * n).map(|i| prod.coeff(i)).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(p: &Poly) -> Vec<f64> {
        p.coeffs().iter().map(|c| c.re).collect()
    }

    #[test]
    fn schoolbook_examples() {
        let one_x = Poly::from_real(&[1.0, 1.0]);
        assert_eq!(real(&mul_schoolbook(&one_x, &one_x)), vec![1.0, 2.0, 1.0]);
        assert!(mul_schoolbook(&one_x, &Poly::default()).is_empty());
        let p = mul_schoolbook(
            &Poly::from_real(&[1.0, 2.0, 3.0, 4.0]),
            &Poly::from_real(&[5.0, 6.0]),
        );
        assert_eq!(real(&p), vec![5.0, 16.0, 27.0, 38.0, 24.0]);
    }

    #[test]
    fn sqrt_recurrence_examples() {
        let g = sqrt_recurrence(&Poly::from_real(&[1.0, 2.0, 1.0]), 5).unwrap();
        assert_eq!(real(&g), vec![1.0, 1.0, 0.0, 0.0, 0.0]);
        let g = sqrt_recurrence(&Poly::one(), 3).unwrap();
        assert_eq!(real(&g), vec![1.0, 0.0, 0.0]);
        let g = sqrt_recurrence(&Poly::from_real(&[1.0, 1.0]), 4).unwrap();
        assert_eq!(real(&g), vec![1.0, 0.5, -0.125, 0.0625]);
        assert!(sqrt_recurrence(&Poly::from_real(&[2.0, 1.0]), 4).is_err());
    }

    #[test]
    fn recip_recurrence_examples() {
        let g = recip_recurrence(&Poly::from_real(&[1.0, -1.0]), 5).unwrap();
        assert_eq!(real(&g), vec![1.0; 5]);
        let g = recip_recurrence(&Poly::from_real(&[1.0, 1.0]), 5).unwrap();
        assert_eq!(real(&g), vec![1.0, -1.0, 1.0, -1.0, 1.0]);
        let g = recip_recurrence(&Poly::from_real(&[1.0, 1.0, 1.0]), 6).unwrap();
        assert_eq!(real(&g), vec![1.0, -1.0, 0.0, 1.0, -1.0, 0.0]);
        assert!(recip_recurrence(&Poly::from_real(&[0.0, 1.0]), 4).is_err());
    }

    #[test]
    fn middle_product_naive_examples() {
        let g = Poly::from_real(&[1.0, 2.0, 3.0, 4.0]);
        let out = middle_product_naive(&g, &Poly::from_real(&[5.0, 6.0]), 2).unwrap();
        assert_eq!(real(&out), vec![27.0, 38.0]);
        let out = middle_product_naive(&Poly::zeros(4), &Poly::from_real(&[5.0, 6.0]), 2).unwrap();
        assert_eq!(real(&out), vec![0.0, 0.0]);
        let g = Poly::from_real(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        let out = middle_product_naive(&g, &Poly::from_real(&[1.0, 0.0, 0.0]), 3).unwrap();
        assert_eq!(real(&out), vec![4.0, 5.0, 6.0]);
        assert!(middle_product_naive(&g, &Poly::zeros(4), 3).is_err());
    }

    #[test]
    fn recurrences_are_self_consistent() {
        let f = Poly::from_real(&[1.0, 0.2, -0.1, 0.05, 0.25, -0.2, 0.1, 0.0, 0.15, -0.05]);
        let n = 40;
        let g = sqrt_recurrence(&f, n).unwrap();
        let sq = mul_truncated(&g, &g, n);
        assert!(sq.max_diff(&f.resized(n)) < 1e-12);
        let h = recip_recurrence(&f, n).unwrap();
        let one = mul_truncated(&f, &h, n);
        assert!(one.max_diff(&Poly::one().resized(n)) < 1e-12);
    }
}
