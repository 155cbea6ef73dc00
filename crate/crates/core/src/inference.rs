//! Likelihood-based random fuzzy sets for the unit-variance Gaussian mean.

use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};
use crate::fuzzy::Gfn;
use crate::grfn::Grfn;
use crate::randomset::SampleStream;

/// A nonempty sample of finite observations.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    observations: Vec<f64>,
}

impl Sample {
    pub fn new(observations: Vec<f64>) -> Result<Self> {
        if observations.is_empty() {
            return Err(Error::domain("sample is empty"));
        }
        if let Some(i) = observations.iter().position(|x| !x.is_finite()) {
            return Err(Error::validation(format!("observations[{i}]"), "must be finite"));
        }
        Ok(Sample { observations })
    }

    /// Parses a JSON array of numbers, or whitespace/newline separated
    /// numbers. Lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim_start();
        if trimmed.starts_with('[') {
            let xs: Vec<f64> = serde_json::from_str(trimmed)
                .map_err(|e| Error::validation("observations", e.to_string()))?;
            return Sample::new(xs);
        }
        let mut xs = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            for tok in line.split_whitespace() {
                let x = tok.parse::<f64>().map_err(|_| {
                    Error::validation(
                        format!("observations (line {})", lineno + 1),
                        format!("not a number: {tok:?}"),
                    )
                })?;
                xs.push(x);
            }
        }
        Sample::new(xs)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::validation("sample", format!("{}: {e}", path.display())))?;
        Sample::parse(&text)
    }

    pub fn observations(&self) -> &[f64] {
        &self.observations
    }

    pub fn len(&self) -> usize {
        self.observations.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn mean(&self) -> f64 {
        self.observations.iter().sum::<f64>() / self.len() as f64
    }
}

/// Log-likelihood evaluator together with its maximizer.
pub struct LogLikelihood {
    eval: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    theta_hat: f64,
    max: f64,
}

impl fmt::Debug for LogLikelihood {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LogLikelihood")
            .field("theta_hat", &self.theta_hat)
            .field("max", &self.max)
            .finish_non_exhaustive()
    }
}

/// Slack allowed when an evaluation exceeds the supplied maximum.
const MAX_SLACK: f64 = 1e-9;
const PROBES: u64 = 1000;

impl LogLikelihood {
    /// Wraps `eval` with its claimed maximizer. The maximum is checked at
    /// `theta_hat` and at 1000 pseudo-random probes spread around it.
    pub fn new<F>(eval: F, theta_hat: f64) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !theta_hat.is_finite() {
            return Err(Error::validation("theta_hat", "must be finite"));
        }
        let max = eval(theta_hat);
        if !max.is_finite() {
            return Err(Error::domain("log-likelihood at the maximizer is not finite"));
        }
        let scale = 1.0 + theta_hat.abs();
        for i in 0..PROBES {
            let mut rng = SampleStream::new(0x5eed, i, 0);
            // Cauchy-like spread covers both the neighborhood and the tails.
            let theta = theta_hat + scale * (std::f64::consts::PI * (rng.uniform() - 0.5)).tan();
            if eval(theta) > max + MAX_SLACK {
                return Err(Error::domain(format!(
                    "log-likelihood at {theta} exceeds the value at theta_hat = {theta_hat}"
                )));
            }
        }
        Ok(LogLikelihood {
            eval: Box::new(eval),
            theta_hat,
            max,
        })
    }

    /// Log-likelihood of the unit-variance Gaussian mean model.
    pub fn gaussian_mean(s: &Sample) -> Self {
        let xs = s.observations.clone();
        let theta_hat = s.mean();
        let eval = move |theta: f64| -0.5 * xs.iter().map(|x| (x - theta).powi(2)).sum::<f64>();
        let max = eval(theta_hat);
        LogLikelihood {
            eval: Box::new(eval),
            theta_hat,
            max,
        }
    }

    pub fn theta_hat(&self) -> f64 {
        self.theta_hat
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn eval(&self, theta: f64) -> f64 {
        (self.eval)(theta)
    }
}

/// Relative likelihood `L(theta) / L(theta_hat)`.
pub fn relative_likelihood_contour(l: &LogLikelihood, theta: f64) -> Result<f64> {
    let v = l.eval(theta);
    if v > l.max + MAX_SLACK {
        return Err(Error::domain(format!(
            "log-likelihood at {theta} exceeds the supplied maximum"
        )));
    }
    if v.is_nan() {
        return Err(Error::domain(format!("log-likelihood at {theta} is NaN")));
    }
    Ok((v - l.max).exp().clamp(0.0, 1.0))
}

/// The relative likelihood of the mean, `GFN(theta_hat, n)`.
pub fn gaussian_mean_likelihood_fuzzy(s: &Sample) -> Gfn {
    Gfn::new(s.mean(), s.len() as f64).expect("finite mean and positive precision")
}

/// Predictive random fuzzy number `N~(theta_hat, 1, n)` for a new observation.
pub fn gaussian_mean_predictive(s: &Sample) -> Grfn {
    Grfn::new(s.mean(), 1.0, s.len() as f64).expect("finite mean and positive precision")
}
