//! Dempster combination of Gaussian random rays and of consonant random
//! intervals.

use crate::error::{Error, Result};
use crate::fuzzy::Gfn;
use crate::normal;

use super::engine::{run, MCConfig, MCEstimate, Moments};
use super::estimators::{mc_conflict, TAG_FIRST};
use super::rng::SampleStream;
use super::sampler::{ClosedSource, ConsonantCuts, GaussianRandomInterval};

/// Largest conflict for which rejection sampling is attempted.
pub const MAX_REJECTION_CONFLICT: f64 = 1.0 - 1e-6;

/// Orthogonal sum of `[X1, +inf)` and `(-inf, X2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RayCombination {
    /// Closed-form degree of conflict `P(X1 > X2)`.
    pub kappa: f64,
    /// Fraction of independent draws with `X1 > X2`.
    pub rejection_rate: MCEstimate,
    /// Sampler of the conditioned interval `[X1', X2']`.
    pub sampler: GaussianRandomInterval,
}

fn check_ray(mu: f64, sigma: f64, which: &str) -> Result<()> {
    if !mu.is_finite() {
        return Err(Error::validation(format!("mu{which}"), "must be finite"));
    }
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::validation(format!("sigma{which}"), "must be positive and finite"));
    }
    Ok(())
}

/// `P(X1 > X2)` for independent `X1 ~ N(mu1, sigma1^2)`, `X2 ~ N(mu2, sigma2^2)`.
pub fn ray_conflict(mu1: f64, sigma1: f64, mu2: f64, sigma2: f64) -> f64 {
    normal::cdf((mu1 - mu2) / sigma1.hypot(sigma2))
}

/// Contours of `[X1, +inf)`, of `(-inf, X2]`, and of their orthogonal sum.
pub fn ray_contours(mu1: f64, sigma1: f64, mu2: f64, sigma2: f64, x: f64) -> (f64, f64, f64) {
    let pl1 = normal::cdf((x - mu1) / sigma1);
    let pl2 = normal::sf((x - mu2) / sigma2);
    let consistent = normal::sf((mu1 - mu2) / sigma1.hypot(sigma2));
    (pl1, pl2, pl1 * pl2 / consistent)
}

pub fn dempster_gaussian_rays(
    mu1: f64,
    sigma1: f64,
    mu2: f64,
    sigma2: f64,
    cfg: &MCConfig,
) -> Result<RayCombination> {
    check_ray(mu1, sigma1, "1")?;
    check_ray(mu2, sigma2, "2")?;
    let kappa = ray_conflict(mu1, sigma1, mu2, sigma2);
    if kappa > MAX_REJECTION_CONFLICT {
        return Err(Error::PracticalRejection(kappa));
    }
    let rejection_rate = run(cfg, &Moments::default(), |i, m| {
        let mut rng = SampleStream::new(cfg.seed, i, TAG_FIRST);
        let x1 = mu1 + sigma1 * rng.normal();
        let x2 = mu2 + sigma2 * rng.normal();
        m.push(f64::from(u8::from(x1 > x2)));
    })
    .proportion();
    Ok(RayCombination {
        kappa,
        rejection_rate,
        sampler: GaussianRandomInterval::Closed(ClosedSource::ConditionedRays {
            mu1,
            sigma1,
            mu2,
            sigma2,
        }),
    })
}

/// Orthogonal sum of the consonant random intervals induced by two GFNs
/// read as crisp but partially reliable evidence. Returns the estimated
/// conflict and a sampler of the combined random interval.
pub fn dempster_consonant(
    first: &Gfn,
    second: &Gfn,
    cfg: &MCConfig,
) -> Result<(MCEstimate, GaussianRandomInterval)> {
    for (g, name) in [(first, "first"), (second, "second")] {
        if !g.precision().is_proper() {
            return Err(Error::validation(
                format!("{name}.precision"),
                "must be positive and finite",
            ));
        }
    }
    let kappa = mc_conflict(&ConsonantCuts(*first), &ConsonantCuts(*second), cfg);
    if kappa.value > MAX_REJECTION_CONFLICT {
        return Err(Error::PracticalRejection(kappa.value));
    }
    Ok((
        kappa,
        GaussianRandomInterval::Closed(ClosedSource::ConsonantIntersection {
            first: *first,
            second: *second,
        }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::randomset::estimators::mc_contour;

    #[test]
    fn conflict_values() {
        assert_eq!(ray_conflict(1.0, 2.0, 1.0, 0.5), 0.5);
        let k = ray_conflict(0.0, 1.0, 3.0, 1.0);
        assert!((k - 0.016_947_426_762_344_636).abs() < 1e-15);
    }

    #[test]
    fn rejection_rate_and_contour() {
        let cfg = MCConfig::new(42, 200_000, 4).unwrap();
        let r = dempster_gaussian_rays(0.0, 1.0, 1.0, 1.5, &cfg).unwrap();
        assert!(r.rejection_rate.agrees_with(r.kappa, 4.0), "{r:?}");
        for x in [-1.0, 0.5, 2.0] {
            let want = ray_contours(0.0, 1.0, 1.0, 1.5, x).2;
            let got = mc_contour(&r.sampler, x, &cfg);
            assert!(got.agrees_with(want, 4.0), "{x}: {got:?} vs {want}");
        }
    }

    #[test]
    fn extreme_conflict_is_refused() {
        let cfg = MCConfig::new(1, 10, 1).unwrap();
        assert!(matches!(
            dempster_gaussian_rays(10.0, 1.0, 0.0, 1.0, &cfg),
            Err(Error::PracticalRejection(_))
        ));
        assert!(dempster_gaussian_rays(0.0, 0.0, 0.0, 1.0, &cfg).is_err());
    }

    #[test]
    fn consonant_contour_is_proportional_to_product() {
        let cfg = MCConfig::new(42, 200_000, 4).unwrap();
        let (a, b) = (Gfn::new(0.0, 0.3).unwrap(), Gfn::new(1.0, 0.5).unwrap());
        let (kappa, s) = dempster_consonant(&a, &b, &cfg).unwrap();
        for x in [-1.0, 0.625, 2.0] {
            let want = a.membership(x) * b.membership(x) / (1.0 - kappa.value);
            let got = mc_contour(&s, x, &cfg);
            // Both sides are noisy; allow for the conflict's error as well.
            let tol = 4.0 * (got.stderr + want * kappa.stderr / (1.0 - kappa.value));
            assert!((got.value - want).abs() <= tol, "{x}: {got:?} vs {want}");
        }
    }
}
