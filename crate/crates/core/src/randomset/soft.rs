//! Soft normalization of two GRFNs by importance weighting: pairs of modes
//! drawn from the product prior are weighted by the height of the product of
//! their realizations.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grfn::Grfn;

use super::engine::{run, MCConfig, MCEstimate, Moments};
use super::estimators::TAG_FIRST;
use super::rng::SampleStream;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedPair {
    pub m1: f64,
    pub m2: f64,
    pub weight: f64,
}

/// Weighted estimates of the conditional law of `(M1, M2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightedSample {
    pub mean1: MCEstimate,
    pub mean2: MCEstimate,
    pub var1: MCEstimate,
    pub var2: MCEstimate,
    pub rho: MCEstimate,
    /// Estimates `1 - kappa`.
    pub mean_weight: MCEstimate,
    /// Effective sample size `(sum w)^2 / sum w^2`.
    pub ess: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SoftConditioning {
    g1: Grfn,
    g2: Grfn,
    hbar: f64,
}

impl SoftConditioning {
    pub fn new(g1: &Grfn, g2: &Grfn) -> Result<Self> {
        let mut hs = [0.0; 2];
        for (k, g) in [g1, g2].into_iter().enumerate() {
            hs[k] = g
                .h()
                .finite()
                .filter(|h| *h > 0.0)
                .ok_or_else(|| Error::domain("soft conditioning needs precisions in (0, inf)"))?;
        }
        Ok(SoftConditioning {
            g1: *g1,
            g2: *g2,
            hbar: hs[0] * hs[1] / (hs[0] + hs[1]),
        })
    }

    /// Draw number `index` of the weighted sample.
    pub fn draw(&self, seed: u64, index: u64) -> WeightedPair {
        let mut rng = SampleStream::new(seed, index, TAG_FIRST);
        let m1 = self.g1.mu() + self.g1.sigma() * rng.normal();
        let m2 = self.g2.mu() + self.g2.sigma() * rng.normal();
        let d = m1 - m2;
        WeightedPair {
            m1,
            m2,
            weight: (-0.5 * self.hbar * d * d).exp(),
        }
    }

    /// Weighted moments with influence-function standard errors. The draws
    /// are regenerated for the second pass from their counters.
    pub fn moments(&self, cfg: &MCConfig) -> WeightedSample {
        let (c1, c2) = (self.g1.mu(), self.g2.mu());
        let (sums, weights) = run(cfg, &([0.0; 7], Moments::default()), |i, (s, w)| {
            let p = self.draw(cfg.seed, i);
            let (a, b) = (p.m1 - c1, p.m2 - c2);
            let wt = p.weight;
            s[0] += wt;
            s[1] += wt * wt;
            s[2] += wt * a;
            s[3] += wt * b;
            s[4] += wt * a * a;
            s[5] += wt * b * b;
            s[6] += wt * a * b;
            w.push(wt);
        });
        let sw = sums[0];
        let (ea, eb) = (sums[2] / sw, sums[3] / sw);
        let v1 = sums[4] / sw - ea * ea;
        let v2 = sums[5] / sw - eb * eb;
        let cov = sums[6] / sw - ea * eb;
        let (sd1, sd2) = (v1.sqrt(), v2.sqrt());
        let rho = cov / (sd1 * sd2);
        let (mean1, mean2) = (c1 + ea, c2 + eb);

        let influence = run(cfg, &[0.0; 5], |i, acc| {
            let p = self.draw(cfg.seed, i);
            let (a, b) = (p.m1 - mean1, p.m2 - mean2);
            let (za, zb) = (a / sd1, b / sd2);
            let w2 = p.weight * p.weight;
            let ifs = [
                a,
                b,
                a * a - v1,
                b * b - v2,
                za * zb - 0.5 * rho * (za * za + zb * zb),
            ];
            for (s, f) in acc.iter_mut().zip(ifs) {
                *s += w2 * f * f;
            }
        });
        let est = |value: f64, k: usize| MCEstimate {
            value,
            stderr: influence[k].sqrt() / sw,
            n: cfg.samples,
        };
        WeightedSample {
            mean1: est(mean1, 0),
            mean2: est(mean2, 1),
            var1: est(v1, 2),
            var2: est(v2, 3),
            rho: est(rho, 4),
            mean_weight: weights.estimate(),
            ess: sw * sw / sums[1],
        }
    }
}

/// Weighted sample summary of the soft-normalized pair of modes.
pub fn soft_conditioning_sampler(g1: &Grfn, g2: &Grfn, cfg: &MCConfig) -> Result<WeightedSample> {
    Ok(SoftConditioning::new(g1, g2)?.moments(cfg))
}
