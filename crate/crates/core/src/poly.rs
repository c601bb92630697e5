use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Result, SeriesError};

/// Dense coefficient vector of a complex polynomial or truncated power series.
///
/// Coefficient `i` multiplies `x^i`. Trailing zeros are allowed, so the length
/// is a degree bound rather than the exact degree.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

impl Poly {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Poly { coeffs }
    }

    pub fn from_real(values: &[f64]) -> Self {
        Poly {
            coeffs: values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        }
    }

    pub fn zeros(len: usize) -> Self {
        Poly {
            coeffs: vec![Complex64::new(0.0, 0.0); len],
        }
    }

    pub fn one() -> Self {
        Poly::from_real(&[1.0])
    }

    /// `x^k` stored with `len` coefficients.
    pub fn monomial(k: usize, len: usize) -> Self {
        let mut p = Poly::zeros(len.max(k + 1));
        p.coeffs[k] = Complex64::new(1.0, 0.0);
        p
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the stored length.
    pub fn coeff(&self, i: usize) -> Complex64 {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    /// Index of the highest non-zero coefficient, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .rposition(|c| *c != Complex64::new(0.0, 0.0))
    }

    /// Copy resized to `len` coefficients (zero-padded or truncated).
    pub fn resized(&self, len: usize) -> Poly {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(len, Complex64::new(0.0, 0.0));
        Poly { coeffs }
    }

    pub fn truncate(&mut self, len: usize) {
        self.coeffs.truncate(len);
    }

    pub fn resize(&mut self, len: usize) {
        self.coeffs.resize(len, Complex64::new(0.0, 0.0));
    }

    /// Coefficients reversed as a polynomial of degree bound `len`.
    pub fn reversed(&self, len: usize) -> Poly {
        let mut p = self.resized(len);
        p.coeffs.reverse();
        p
    }

    pub fn check_finite(&self) -> Result<()> {
        match self
            .coeffs
            .iter()
            .position(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            Some(i) => Err(SeriesError::NonFinite(i)),
            None => Ok(()),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest componentwise distance, treating missing coefficients as zero.
    pub fn max_diff(&self, other: &Poly) -> f64 {
        let len = self.len().max(other.len());
        (0..len)
            .map(|i| (self.coeff(i) - other.coeff(i)).norm())
            .fold(0.0, f64::max)
    }

    pub fn scaled(&self, factor: Complex64) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let len = self.len().max(other.len());
        Poly {
            coeffs: (0..len).map(|i| self.coeff(i) + other.coeff(i)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let len = self.len().max(other.len());
        Poly {
            coeffs: (0..len).map(|i| self.coeff(i) - other.coeff(i)).collect(),
        }
    }
}

impl From<Vec<Complex64>> for Poly {
    fn from(coeffs: Vec<Complex64>) -> Self {
        Poly { coeffs }
    }
}

impl Index<usize> for Poly {
    type Output = Complex64;

    fn index(&self, i: usize) -> &Complex64 {
        &self.coeffs[i]
    }
}

impl IndexMut<usize> for Poly {
    fn index_mut(&mut self, i: usize) -> &mut Complex64 {
        &mut self.coeffs[i]
    }
}

/// Checks that the constant term is 1 within a small absolute tolerance.
pub(crate) fn require_unit_constant(f: &Poly) -> Result<()> {
    let c = f.coeff(0);
    if (c - Complex64::new(1.0, 0.0)).norm() > 1e-12 {
        return Err(SeriesError::NotNormalized(format!("{c}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_ignores_trailing_zeros() {
        assert_eq!(Poly::from_real(&[1.0, 2.0, 0.0, 0.0]).degree(), Some(1));
        assert_eq!(Poly::zeros(3).degree(), None);
    }

    #[test]
    fn reversal_pads_to_requested_length() {
        let p = Poly::from_real(&[1.0, 2.0]);
        assert_eq!(p.reversed(3), Poly::from_real(&[0.0, 2.0, 1.0]));
    }

    #[test]
    fn non_finite_is_reported() {
        let p = Poly::from_real(&[1.0, f64::NAN]);
        assert_eq!(p.check_finite(), Err(SeriesError::NonFinite(1)));
    }
}
