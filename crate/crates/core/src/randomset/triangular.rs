//! Triangular fuzzy numbers with a Gaussian random mode.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::normal;

use super::rng::SampleStream;
use super::sampler::{FuzzySampler, Realization};

/// Random fuzzy number whose realizations are triangular with mode
/// `M ~ N(mu, sigma^2)` and support `[M - a, M + a]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTriangular")]
pub struct TriangularGaussian {
    mu: f64,
    sigma: f64,
    a: f64,
}

#[derive(Deserialize)]
struct RawTriangular {
    mu: f64,
    sigma: f64,
    a: f64,
}

impl TryFrom<RawTriangular> for TriangularGaussian {
    type Error = Error;
    fn try_from(r: RawTriangular) -> Result<Self> {
        TriangularGaussian::new(r.mu, r.sigma, r.a)
    }
}

impl TriangularGaussian {
    pub fn new(mu: f64, sigma: f64, a: f64) -> Result<Self> {
        if !mu.is_finite() {
            return Err(Error::validation("mu", "must be finite"));
        }
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::validation("sigma", "must be positive and finite"));
        }
        if !(a.is_finite() && a >= 0.0) {
            return Err(Error::validation("a", "must be nonnegative and finite"));
        }
        Ok(TriangularGaussian { mu, sigma, a })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    /// Lower and upper cdf at `x`, i.e. `Bel((-inf, x])` and `Pl((-inf, x])`.
    pub fn cdf_bounds(&self, x: f64) -> (f64, f64) {
        let (mu, s, a) = (self.mu, self.sigma, self.a);
        let z = (x - mu) / s;
        if a == 0.0 {
            let p = normal::cdf(z);
            return (p, p);
        }
        let w = a / s;
        let (bel, pl) = if w < 1e-3 {
            // The closed forms cancel badly for narrow supports; average the
            // Gaussian cdf over the cut endpoints directly.
            (mean_cdf(z - w, z), mean_cdf(z, z + w))
        } else {
            (antiderivative_gap(z - w, z, w), antiderivative_gap(z, z + w, w))
        };
        (bel.clamp(0.0, 1.0), pl.clamp(0.0, 1.0))
    }

    /// Lower and upper expectations `mu - a/2` and `mu + a/2`.
    pub fn expectation_bounds(&self) -> (f64, f64) {
        (self.mu - 0.5 * self.a, self.mu + 0.5 * self.a)
    }
}

/// `(1/w) [z Phi(z) + phi(z)]` between `lo` and `hi = lo + w`.
fn antiderivative_gap(lo: f64, hi: f64, w: f64) -> f64 {
    let big = |z: f64| z * normal::cdf(z) + normal::pdf(z);
    (big(hi) - big(lo)) / w
}

/// Average of Phi over `[lo, hi]` by 5-point Gauss-Legendre.
fn mean_cdf(lo: f64, hi: f64) -> f64 {
    const NODES: [(f64, f64); 5] = [
        (0.0, 0.568_888_888_888_888_9),
        (-0.538_469_310_105_683, 0.478_628_670_499_366_47),
        (0.538_469_310_105_683, 0.478_628_670_499_366_47),
        (-0.906_179_845_938_664, 0.236_926_885_056_189_08),
        (0.906_179_845_938_664, 0.236_926_885_056_189_08),
    ];
    let (c, r) = (0.5 * (lo + hi), 0.5 * (hi - lo));
    0.5 * NODES.iter().map(|&(t, wt)| wt * normal::cdf(c + r * t)).sum::<f64>()
}

/// Lower and upper cdf of the triangular random fuzzy number at `x`.
pub fn triangular_gaussian_cdf_bounds(mu: f64, sigma: f64, a: f64, x: f64) -> Result<(f64, f64)> {
    Ok(TriangularGaussian::new(mu, sigma, a)?.cdf_bounds(x))
}

impl FuzzySampler for TriangularGaussian {
    fn sample(&self, rng: &mut SampleStream) -> Realization {
        Realization::Triangular {
            mode: self.mu + self.sigma * rng.normal(),
            spread: self.a,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Averages Phi((x - mu +- a(1 - alpha)) / sigma) over alpha numerically.
    fn integrate(mu: f64, sigma: f64, a: f64, x: f64) -> (f64, f64) {
        let n = 20_000;
        let (mut bel, mut pl) = (0.0, 0.0);
        for i in 0..n {
            let alpha = (i as f64 + 0.5) / n as f64;
            let r = a * (1.0 - alpha);
            bel += normal::cdf((x - r - mu) / sigma);
            pl += normal::cdf((x + r - mu) / sigma);
        }
        (bel / n as f64, pl / n as f64)
    }

    #[test]
    fn matches_alpha_integral() {
        for &(mu, sigma, a) in &[(0.0, 1.0, 0.5), (0.0, 1.0, 1.5), (1.0, 0.3, 2.0), (0.0, 1.0, 1e-5)] {
            let t = TriangularGaussian::new(mu, sigma, a).unwrap();
            for k in -8..=8 {
                let x = mu + 0.5 * k as f64;
                let (bel, pl) = t.cdf_bounds(x);
                let (ib, ip) = integrate(mu, sigma, a, x);
                assert!((bel - ib).abs() < 1e-8, "{mu} {sigma} {a} {x}: {bel} {ib}");
                assert!((pl - ip).abs() < 1e-8, "{mu} {sigma} {a} {x}: {pl} {ip}");
                assert!(bel <= pl);
            }
        }
    }

    #[test]
    fn zero_spread_is_gaussian_cdf() {
        assert_eq!(triangular_gaussian_cdf_bounds(0.0, 1.0, 0.0, 0.0).unwrap(), (0.5, 0.5));
        let (lo, hi) = triangular_gaussian_cdf_bounds(0.0, 1.0, 1.5, -40.0).unwrap();
        assert!(lo == 0.0 && hi < 1e-300);
    }

    #[test]
    fn validation() {
        assert!(TriangularGaussian::new(0.0, 0.0, 1.0).is_err());
        assert!(TriangularGaussian::new(0.0, 1.0, -1.0).is_err());
        let t: TriangularGaussian = serde_json::from_str(r#"{"mu":0,"sigma":1,"a":1.5}"#).unwrap();
        assert_eq!(t.expectation_bounds(), (-0.75, 0.75));
        let err = serde_json::from_str::<TriangularGaussian>(r#"{"mu":0,"sigma":-1,"a":1}"#);
        assert!(err.unwrap_err().to_string().contains("sigma"));
    }
}
