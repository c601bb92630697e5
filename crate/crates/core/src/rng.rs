//! Seeded random inputs. The generator is PCG-64 (XSL-RR 128/64) so that a
//! `(seed, n)` pair names the same series everywhere.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_pcg::Pcg64;
use serde::{Deserialize, Serialize};

use crate::poly::Poly;

pub const RNG_NAME: &str = "pcg64";

/// Largest magnitude of a random perturbation coefficient.
pub const PERTURBATION: f64 = 0.25;

fn uniform(rng: &mut Pcg64, len: usize) -> Vec<Complex64> {
    (0..len)
        .map(|_| Complex64::new(rng.random_range(-PERTURBATION..=PERTURBATION), 0.0))
        .collect()
}

/// `1 + a_1 x + ... + a_{n-1} x^{n-1}` with `a_i` uniform in `[-1/4, 1/4]`.
pub fn random_series(seed: u64, n: usize) -> Poly {
    let mut rng = Pcg64::seed_from_u64(seed);
    let mut coeffs = uniform(&mut rng, n.max(1));
    coeffs[0] = Complex64::new(1.0, 0.0);
    Poly::new(coeffs)
}

/// [`random_series`] with the perturbation divided by `n - 1`, so its
/// coefficients sum to at most `1/4` in absolute value. The square root and
/// reciprocal then have bounded coefficients at every precision, whereas
/// those of [`random_series`] grow geometrically and overflow `f64` for `n`
/// in the low thousands.
pub fn random_damped(seed: u64, n: usize) -> Poly {
    let scale = 1.0 / n.saturating_sub(1).max(1) as f64;
    let mut p = random_series(seed, n);
    for c in p.coeffs_mut().iter_mut().skip(1) {
        *c *= scale;
    }
    p
}

/// Which random series a benchmark draws.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InputKind {
    #[default]
    Uniform,
    Damped,
}

impl InputKind {
    pub fn name(self) -> &'static str {
        match self {
            InputKind::Uniform => "uniform",
            InputKind::Damped => "damped",
        }
    }

    pub fn series(self, seed: u64, n: usize) -> Poly {
        match self {
            InputKind::Uniform => random_series(seed, n),
            InputKind::Damped => random_damped(seed, n),
        }
    }
}

impl fmt::Display for InputKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InputKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "uniform" => Ok(InputKind::Uniform),
            "damped" => Ok(InputKind::Damped),
            other => Err(format!("unknown input kind {other:?}")),
        }
    }
}

/// Monic polynomial of degree `2 half_degree` with the other coefficients
/// uniform in `[-1/4, 1/4]`.
pub fn random_monic(seed: u64, half_degree: usize) -> Poly {
    let mut rng = Pcg64::seed_from_u64(seed);
    let mut coeffs = uniform(&mut rng, 2 * half_degree + 1);
    coeffs[2 * half_degree] = Complex64::new(1.0, 0.0);
    Poly::new(coeffs)
}

/// Coefficients uniform in `[-1, 1]` in both real and imaginary parts.
pub fn random_complex(seed: u64, len: usize) -> Poly {
    let mut rng = Pcg64::seed_from_u64(seed);
    Poly::new(
        (0..len)
            .map(|_| Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0)))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_series() {
        assert_eq!(random_series(7, 32), random_series(7, 32));
        assert_ne!(random_series(7, 32), random_series(8, 32));
    }

    #[test]
    fn shape_of_random_inputs() {
        let f = random_series(1, 100);
        assert_eq!(f[0], Complex64::new(1.0, 0.0));
        assert!(f.coeffs()[1..]
            .iter()
            .all(|c| c.re.abs() <= 0.25 && c.im == 0.0));
        let p = random_monic(2, 10);
        assert_eq!(p.degree(), Some(20));
        assert_eq!(p[20], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn damped_perturbation_is_small() {
        let f = random_damped(3, 1000);
        assert_eq!(f[0], Complex64::new(1.0, 0.0));
        let l1: f64 = f.coeffs()[1..].iter().map(|c| c.norm()).sum();
        assert!(l1 <= 0.25);
        assert_eq!(f[5] * 999.0, random_series(3, 1000)[5]);
        assert_eq!("damped".parse::<InputKind>().unwrap(), InputKind::Damped);
    }
}
