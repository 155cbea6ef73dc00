//! Standard normal kernel shared by every closed form in the crate.

use libm::erfc;
use std::f64::consts::FRAC_1_SQRT_2;

/// `1 / sqrt(2 pi)`
const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Standard normal cdf, computed from `erfc` so that both tails keep full
/// relative precision.
#[inline]
pub fn cdf(z: f64) -> f64 {
    if z == f64::INFINITY {
        return 1.0;
    }
    if z == f64::NEG_INFINITY {
        return 0.0;
    }
    0.5 * erfc(-z * FRAC_1_SQRT_2)
}

/// Standard normal upper tail `1 - cdf(z)`.
#[inline]
pub fn sf(z: f64) -> f64 {
    cdf(-z)
}

/// Standard normal density.
#[inline]
pub fn pdf(z: f64) -> f64 {
    if z.is_infinite() {
        return 0.0;
    }
    INV_SQRT_2PI * (-0.5 * z * z).exp()
}
