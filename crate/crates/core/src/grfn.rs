//! Gaussian random fuzzy numbers `N~(mu, sigma2, h)`: a GFN with precision
//! `h` whose mode is drawn from `N(mu, sigma2)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::Gfn;
use crate::interval::Interval;
use crate::normal;
use crate::precision::Precision;

/// `1 - kappa` below this is treated as total conflict.
pub const CONFLICT_FLOOR: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGrfn")]
pub struct Grfn {
    mu: f64,
    sigma2: f64,
    h: Precision,
}

#[derive(Deserialize)]
struct RawGrfn {
    mu: f64,
    sigma2: f64,
    h: Precision,
}

impl TryFrom<RawGrfn> for Grfn {
    type Error = Error;
    fn try_from(raw: RawGrfn) -> Result<Self> {
        Grfn::with_precision(raw.mu, raw.sigma2, raw.h)
    }
}

/// Special cases of a GRFN, in priority order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GrfnKind {
    /// `h = 0`: total ignorance.
    Vacuous,
    /// `h = +inf`: a Gaussian random variable.
    Probabilistic,
    /// `sigma2 = 0`: a constant Gaussian possibility distribution.
    Possibilistic,
    General,
}

impl Grfn {
    /// `h` may be `f64::INFINITY`. Any `h = 0` instance becomes the
    /// canonical vacuous GRFN `(0, 1, 0)`.
    pub fn new(mu: f64, sigma2: f64, h: f64) -> Result<Self> {
        Grfn::with_precision(mu, sigma2, Precision::new(h).map_err(|_| {
            Error::validation("h", format!("must lie in [0, +inf], got {h}"))
        })?)
    }

    pub fn with_precision(mu: f64, sigma2: f64, h: Precision) -> Result<Self> {
        if !mu.is_finite() {
            return Err(Error::validation("mu", "must be finite"));
        }
        if !(sigma2.is_finite() && sigma2 >= 0.0) {
            return Err(Error::validation("sigma2", "must be finite and nonnegative"));
        }
        if h.is_zero() {
            return Ok(Grfn::vacuous());
        }
        Ok(Grfn { mu, sigma2, h })
    }

    pub fn vacuous() -> Self {
        Grfn {
            mu: 0.0,
            sigma2: 1.0,
            h: Precision::ZERO,
        }
    }

    /// Gaussian random variable `N(mu, sigma2)`.
    pub fn gaussian(mu: f64, sigma2: f64) -> Result<Self> {
        Grfn::with_precision(mu, sigma2, Precision::Infinite)
    }

    /// Constant possibility distribution `GFN(mode, h)`.
    pub fn possibilistic(g: &Gfn) -> Result<Self> {
        Grfn::with_precision(g.mode(), 0.0, g.precision())
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    pub fn sigma(&self) -> f64 {
        self.sigma2.sqrt()
    }

    pub fn h(&self) -> Precision {
        self.h
    }

    pub fn kind(&self) -> GrfnKind {
        if self.h.is_zero() {
            GrfnKind::Vacuous
        } else if self.h.is_infinite() {
            GrfnKind::Probabilistic
        } else if self.sigma2 == 0.0 {
            GrfnKind::Possibilistic
        } else {
            GrfnKind::General
        }
    }

    pub fn is_vacuous(&self) -> bool {
        self.kind() == GrfnKind::Vacuous
    }

    /// Fuzzy number realized when the random mode equals `m`.
    pub fn realize(&self, m: f64) -> Gfn {
        Gfn::with_precision(m, self.h).expect("finite mode")
    }
}

/// Contour function `pl(x) = Pl({x})`.
pub fn contour(g: &Grfn, x: f64) -> f64 {
    match g.h {
        Precision::Infinite => 0.0,
        Precision::Finite(h) if h == 0.0 => 1.0,
        Precision::Finite(h) => {
            if !x.is_finite() {
                return 0.0;
            }
            let spread = 1.0 + h * g.sigma2;
            (-0.5 * h * (x - g.mu).powi(2) / spread).exp() / spread.sqrt()
        }
    }
}

/// `Phi(b) - Phi(a)` evaluated on whichever tail keeps precision.
fn normal_mass(a: f64, b: f64) -> f64 {
    if a > 0.0 {
        normal::sf(a) - normal::sf(b)
    } else {
        normal::cdf(b) - normal::cdf(a)
    }
}

fn clamp01(v: f64) -> f64 {
    v.clamp(0.0, 1.0)
}

/// Degrees of belief and plausibility of the closed interval `b`. Infinite
/// endpoints are accepted and give the ray and whole-line limits.
pub fn bel_pl_interval(g: &Grfn, b: &Interval) -> (f64, f64) {
    if b.is_whole_line() {
        return (1.0, 1.0);
    }
    let (x, y) = (b.lo(), b.hi());
    match (g.kind(), g.h) {
        (GrfnKind::Vacuous, _) => (0.0, 1.0),
        (GrfnKind::Possibilistic, _) => {
            let gfn = g.realize(g.mu);
            (gfn.necessity(b), gfn.possibility(b))
        }
        (GrfnKind::Probabilistic, _) => {
            if g.sigma2 == 0.0 {
                let inside = if b.contains(g.mu) { 1.0 } else { 0.0 };
                (inside, inside)
            } else {
                let s = g.sigma();
                let p = clamp01(normal_mass((x - g.mu) / s, (y - g.mu) / s));
                (p, p)
            }
        }
        (GrfnKind::General, Precision::Finite(h)) => {
            let s = g.sigma();
            let t = s * (h * g.sigma2 + 1.0).sqrt();
            let z = |v: f64| (v - g.mu) / s;
            let w = |v: f64| (v - g.mu) / t;
            let lean = h * g.sigma2;
            let (pl_x, pl_y) = (contour(g, x), contour(g, y));
            let core = normal_mass(z(x), z(y));
            // Modes left of the midpoint are nearest to the complement at x,
            // the others at y. Each part is a truncated Gaussian integral whose
            // standardized bounds depend on the complement point c.
            let mid = 0.5 * x + 0.5 * y;
            let bound = |c: f64| (mid - g.mu + lean * (mid - c)) / t;
            let near_x = if x.is_finite() { pl_x * normal_mass(w(x), bound(x)) } else { 0.0 };
            let near_y = if y.is_finite() { pl_y * normal_mass(bound(y), w(y)) } else { 0.0 };
            let bel = core - near_x - near_y;
            let pl = core + pl_x * normal::cdf(w(x)) + pl_y * normal::sf(w(y));
            (clamp01(bel), clamp01(pl))
        }
        (GrfnKind::General, Precision::Infinite) => unreachable!("classified as probabilistic"),
    }
}

/// Lower and upper cdf at `y`: `Bel((-inf, y])` and `Pl((-inf, y])`.
pub fn cdf_bounds(g: &Grfn, y: f64) -> (f64, f64) {
    if y == f64::INFINITY {
        return (1.0, 1.0);
    }
    if y == f64::NEG_INFINITY {
        return (0.0, 0.0);
    }
    match (g.kind(), g.h) {
        (GrfnKind::General, Precision::Finite(h)) => {
            let s = g.sigma();
            let z = (y - g.mu) / s;
            let w = (y - g.mu) / (s * (h * g.sigma2 + 1.0).sqrt());
            let pl_y = contour(g, y);
            let lower = normal::cdf(z) - pl_y * normal::cdf(w);
            let upper = normal::cdf(z) + pl_y * normal::sf(w);
            (clamp01(lower), clamp01(upper))
        }
        _ => bel_pl_interval(g, &Interval::lower_ray(y)),
    }
}

/// Lower and upper expectations `mu -/+ sqrt(pi / (2h))`.
pub fn expectation_bounds(g: &Grfn) -> Result<(f64, f64)> {
    match g.h {
        Precision::Infinite => Ok((g.mu, g.mu)),
        Precision::Finite(h) if h == 0.0 => Err(Error::domain(
            "expectations of a vacuous GRFN are unbounded",
        )),
        Precision::Finite(h) => {
            let half_width = (std::f64::consts::PI / (2.0 * h)).sqrt();
            Ok((g.mu - half_width, g.mu + half_width))
        }
    }
}

/// Parameters of the soft-conditioned distribution of the two random modes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConditionedModes {
    pub mu1: f64,
    pub mu2: f64,
    pub sigma1_sq: f64,
    pub sigma2_sq: f64,
    pub rho: f64,
    pub hbar: Precision,
}

impl ConditionedModes {
    /// `Cov(M1, M2)` under the conditional distribution.
    pub fn covariance(&self) -> f64 {
        self.rho * (self.sigma1_sq * self.sigma2_sq).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrfnFusion {
    pub combined: Grfn,
    pub kappa: f64,
    pub intermediates: ConditionedModes,
}

/// Conditional moments of `(M1, M2)` given the fuzzy event of consistent
/// pairs, for finite `hbar`.
fn condition_modes(g1: &Grfn, g2: &Grfn, hbar: f64) -> (ConditionedModes, f64) {
    let (s1, s2) = (g1.sigma2, g2.sigma2);
    let denom = 1.0 + hbar * (s1 + s2);
    let modes = ConditionedModes {
        mu1: (g1.mu * (1.0 + hbar * s2) + g2.mu * hbar * s1) / denom,
        mu2: (g2.mu * (1.0 + hbar * s1) + g1.mu * hbar * s2) / denom,
        sigma1_sq: s1 * (1.0 + hbar * s2) / denom,
        sigma2_sq: s2 * (1.0 + hbar * s1) / denom,
        rho: if s1 == 0.0 || s2 == 0.0 {
            0.0
        } else {
            hbar * (s1 * s2).sqrt() / ((1.0 + hbar * s1) * (1.0 + hbar * s2)).sqrt()
        },
        hbar: Precision::Finite(hbar),
    };
    (modes, hbar * s1 * s2 / denom)
}

/// `ln(1 - kappa) = ln E[hgt]` where `M1 - M2 ~ N(d, s)` and
/// `hgt = exp(-hbar (M1 - M2)^2 / 2)`.
pub(crate) fn ln_consistency(d: f64, s: f64, hbar: f64) -> f64 {
    let spread = 1.0 + hbar * s;
    -0.5 * spread.ln() - 0.5 * hbar * d * d / spread
}

/// Orthogonal sum by the generalized product-intersection rule.
pub fn combine(g1: &Grfn, g2: &Grfn) -> Result<GrfnFusion> {
    if g1.is_vacuous() || g2.is_vacuous() {
        let keep = if g1.is_vacuous() { g2 } else { g1 };
        let (modes, _) = condition_modes(g1, g2, 0.0);
        return Ok(GrfnFusion {
            combined: *keep,
            kappa: 0.0,
            intermediates: modes,
        });
    }
    match g1.h.harmonic(g2.h) {
        Precision::Infinite => combine_gaussians(g1, g2),
        Precision::Finite(hbar) => {
            let ln_consistent = ln_consistency(g1.mu - g2.mu, g1.sigma2 + g2.sigma2, hbar);
            if ln_consistent <= CONFLICT_FLOOR.ln() {
                return Err(Error::ContradictoryEvidence(format!(
                    "degree of conflict rounds to 1 (ln(1 - kappa) = {ln_consistent:.3})"
                )));
            }
            let kappa = clamp01(-ln_consistent.exp_m1());
            let (modes, cov) = condition_modes(g1, g2, hbar);
            let (w1, w2) = match (g1.h, g2.h) {
                (Precision::Infinite, _) => (1.0, 0.0),
                (_, Precision::Infinite) => (0.0, 1.0),
                (Precision::Finite(a), Precision::Finite(b)) => (a / (a + b), b / (a + b)),
            };
            let mu = w1 * modes.mu1 + w2 * modes.mu2;
            let var = (w1 * w1 * modes.sigma1_sq + w2 * w2 * modes.sigma2_sq + 2.0 * w1 * w2 * cov)
                .max(0.0);
            Ok(GrfnFusion {
                combined: Grfn::with_precision(mu, var, g1.h.sum(g2.h))?,
                kappa,
                intermediates: modes,
            })
        }
    }
}

/// Both operands are Gaussian random variables: Dempster conditioning on
/// `X1 = X2`, a null event unless both are degenerate.
fn combine_gaussians(g1: &Grfn, g2: &Grfn) -> Result<GrfnFusion> {
    let s = g1.sigma2 + g2.sigma2;
    let (mu, var, kappa) = if s == 0.0 {
        if g1.mu != g2.mu {
            return Err(Error::ContradictoryEvidence(format!(
                "crisp values {} and {} differ",
                g1.mu, g2.mu
            )));
        }
        (g1.mu, 0.0, 0.0)
    } else {
        (
            (g1.mu * g2.sigma2 + g2.mu * g1.sigma2) / s,
            g1.sigma2 * g2.sigma2 / s,
            1.0,
        )
    };
    Ok(GrfnFusion {
        combined: Grfn::gaussian(mu, var)?,
        kappa,
        intermediates: ConditionedModes {
            mu1: mu,
            mu2: mu,
            sigma1_sq: var,
            sigma2_sq: var,
            rho: if var > 0.0 { 1.0 } else { 0.0 },
            hbar: Precision::Infinite,
        },
    })
}

/// Left fold of [`combine`].
pub fn combine_many(gs: &[Grfn]) -> Result<Grfn> {
    let (first, rest) = gs
        .split_first()
        .ok_or_else(|| Error::domain("combine_many needs at least one GRFN"))?;
    rest.iter()
        .try_fold(*first, |acc, g| Ok(combine(&acc, g)?.combined))
}

/// `sum_i lambda_i X_i` for independent GRFNs with finite positive precision.
pub fn linear_combination(terms: &[(f64, Grfn)]) -> Result<Grfn> {
    if terms.is_empty() {
        return Err(Error::domain("linear combination of an empty list"));
    }
    let (mut mu, mut var, mut spread) = (0.0, 0.0, 0.0);
    for (i, (lambda, g)) in terms.iter().enumerate() {
        if *lambda == 0.0 || !lambda.is_finite() {
            return Err(Error::domain(format!("term {i}: coefficient must be finite and nonzero")));
        }
        let h = match g.h {
            Precision::Finite(h) if h > 0.0 => h,
            p => {
                return Err(Error::domain(format!(
                    "term {i}: precision must lie in (0, inf), got {p}"
                )))
            }
        };
        mu += lambda * g.mu;
        var += lambda * lambda * g.sigma2;
        spread += lambda.abs() / h.sqrt();
    }
    Grfn::new(mu, var, spread.powi(-2))
}
