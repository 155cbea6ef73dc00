//! Random fuzzy set samplers. A sampler turns one random stream into one
//! realized fuzzy set, described by its membership function and α-cuts.

use crate::fuzzy::{gfn_product, Gfn};
use crate::grfn::Grfn;
use crate::interval::Interval;
use crate::precision::Precision;

use super::rng::SampleStream;

/// One realization `X~(omega)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Realization {
    Gaussian(Gfn),
    /// Symmetric triangular fuzzy number with support `[mode - spread, mode + spread]`.
    Triangular { mode: f64, spread: f64 },
    Crisp(Interval),
    Empty,
}

impl Realization {
    /// Rewrites degenerate fuzzy shapes as crisp sets.
    fn canonical(&self) -> Realization {
        match self {
            Realization::Gaussian(g) => match g.precision() {
                Precision::Infinite => Realization::Crisp(Interval::point(g.mode())),
                p if p.is_zero() => Realization::Crisp(Interval::whole_line()),
                _ => self.clone(),
            },
            Realization::Triangular { mode, spread } if *spread == 0.0 => {
                Realization::Crisp(Interval::point(*mode))
            }
            _ => self.clone(),
        }
    }

    pub fn membership(&self, x: f64) -> f64 {
        match self {
            Realization::Gaussian(g) => g.membership(x),
            Realization::Triangular { mode, spread } => {
                if *spread == 0.0 {
                    f64::from(x == *mode)
                } else {
                    (1.0 - (x - mode).abs() / spread).max(0.0)
                }
            }
            Realization::Crisp(b) => f64::from(b.contains(x)),
            Realization::Empty => 0.0,
        }
    }

    /// The α-cut for `alpha` in (0, 1]; `None` when the realization is empty.
    pub fn alpha_cut(&self, alpha: f64) -> Option<Interval> {
        match self.canonical() {
            Realization::Gaussian(g) => g.alpha_cut(alpha).ok(),
            Realization::Triangular { mode, spread } => {
                Some(Interval::centered(mode, spread * (1.0 - alpha)))
            }
            Realization::Crisp(b) => Some(b),
            Realization::Empty => None,
        }
    }

    /// Height of the product intersection with `other`.
    pub fn product_height(&self, other: &Realization) -> f64 {
        use Realization::*;
        match (self.canonical(), other.canonical()) {
            (Empty, _) | (_, Empty) => 0.0,
            (Crisp(a), Crisp(b)) => f64::from(a.intersects(&b)),
            (Gaussian(g), Crisp(b)) | (Crisp(b), Gaussian(g)) => g.possibility(&b),
            (Gaussian(a), Gaussian(b)) => gfn_product(&a, &b).map_or(0.0, |r| r.height),
            (Triangular { mode, spread }, Crisp(b)) | (Crisp(b), Triangular { mode, spread }) => {
                let gap = if b.contains(mode) {
                    0.0
                } else {
                    (b.lo() - mode).max(mode - b.hi())
                };
                (1.0 - gap / spread).max(0.0)
            }
            (t @ Triangular { .. }, o) | (o, t @ Triangular { .. }) => {
                let Triangular { mode, spread } = &t else { unreachable!() };
                let (mode, spread) = (*mode, *spread);
                let (mut lo, mut hi) = (mode - spread, mode + spread);
                if let Triangular { mode: m2, spread: s2 } = o {
                    lo = lo.max(m2 - s2);
                    hi = hi.min(m2 + s2);
                    if lo > hi {
                        return 0.0;
                    }
                }
                sup_unimodal(|x| t.membership(x) * o.membership(x), lo, hi)
            }
        }
    }
}

/// Maximum of a unimodal function on `[lo, hi]` by golden-section search.
fn sup_unimodal(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if b - a <= 1e-15 * (1.0 + a.abs().max(b.abs())) {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    fc.max(fd).max(f(lo)).max(f(hi)).max(f(0.5 * (a + b)))
}

/// Generator of realizations from a random stream.
pub trait FuzzySampler: Sync {
    fn sample(&self, rng: &mut SampleStream) -> Realization;
}

impl<S: FuzzySampler + ?Sized> FuzzySampler for &S {
    fn sample(&self, rng: &mut SampleStream) -> Realization {
        (**self).sample(rng)
    }
}

impl<S: FuzzySampler + ?Sized> FuzzySampler for Box<S> {
    fn sample(&self, rng: &mut SampleStream) -> Realization {
        (**self).sample(rng)
    }
}

/// GFN with Gaussian random mode.
impl FuzzySampler for Grfn {
    fn sample(&self, rng: &mut SampleStream) -> Realization {
        let m = if self.sigma2() == 0.0 {
            self.mu()
        } else {
            self.mu() + self.sigma() * rng.normal()
        };
        Realization::Gaussian(self.realize(m))
    }
}

/// A constant random fuzzy set.
impl FuzzySampler for Gfn {
    fn sample(&self, _rng: &mut SampleStream) -> Realization {
        Realization::Gaussian(*self)
    }
}

impl FuzzySampler for Realization {
    fn sample(&self, _rng: &mut SampleStream) -> Realization {
        self.clone()
    }
}

/// Total ignorance: every realization is the whole line.
#[derive(Debug, Clone, Copy, Default)]
pub struct Vacuous;

impl FuzzySampler for Vacuous {
    fn sample(&self, _rng: &mut SampleStream) -> Realization {
        Realization::Crisp(Interval::whole_line())
    }
}

/// Consonant random interval: the α-cut of a fixed GFN at a uniform level.
#[derive(Debug, Clone, PartialEq)]
pub struct ConsonantCuts(pub Gfn);

impl FuzzySampler for ConsonantCuts {
    fn sample(&self, rng: &mut SampleStream) -> Realization {
        let alpha = rng.alpha();
        Realization::Gaussian(self.0)
            .alpha_cut(alpha)
            .map_or(Realization::Empty, Realization::Crisp)
    }
}

/// Attempts before a conditioned sampler gives up and yields an empty set.
pub(crate) const MAX_ATTEMPTS: u32 = 100_000_000;

/// Random closed intervals with Gaussian endpoints.
#[derive(Debug, Clone, PartialEq)]
pub enum GaussianRandomInterval {
    /// `(-inf, X]` with `X ~ N(mu, sigma^2)`.
    LowerRay { mu: f64, sigma: f64 },
    /// `[X, +inf)` with `X ~ N(mu, sigma^2)`.
    UpperRay { mu: f64, sigma: f64 },
    Closed(ClosedSource),
}

/// How the endpoints of a closed random interval are produced.
#[derive(Debug, Clone, PartialEq)]
pub enum ClosedSource {
    /// `[X1, X2]` with independent Gaussian `X1`, `X2` conditioned on `X1 <= X2`.
    ConditionedRays { mu1: f64, sigma1: f64, mu2: f64, sigma2: f64 },
    /// Intersection of two independent consonant random intervals,
    /// conditioned on being nonempty.
    ConsonantIntersection { first: Gfn, second: Gfn },
}

impl FuzzySampler for GaussianRandomInterval {
    fn sample(&self, rng: &mut SampleStream) -> Realization {
        match self {
            GaussianRandomInterval::LowerRay { mu, sigma } => {
                Realization::Crisp(Interval::lower_ray(mu + sigma * rng.normal()))
            }
            GaussianRandomInterval::UpperRay { mu, sigma } => {
                Realization::Crisp(Interval::upper_ray(mu + sigma * rng.normal()))
            }
            GaussianRandomInterval::Closed(src) => {
                for _ in 0..MAX_ATTEMPTS {
                    let drawn = match src {
                        ClosedSource::ConditionedRays { mu1, sigma1, mu2, sigma2 } => {
                            let x1 = mu1 + sigma1 * rng.normal();
                            let x2 = mu2 + sigma2 * rng.normal();
                            (x1 <= x2).then(|| Interval::new(x1, x2).expect("ordered endpoints"))
                        }
                        ClosedSource::ConsonantIntersection { first, second } => {
                            let a = ConsonantCuts(*first).sample(rng);
                            let b = ConsonantCuts(*second).sample(rng);
                            match (a, b) {
                                (Realization::Crisp(a), Realization::Crisp(b)) => a.intersection(&b),
                                _ => None,
                            }
                        }
                    };
                    if let Some(b) = drawn {
                        return Realization::Crisp(b);
                    }
                }
                Realization::Empty
            }
        }
    }
}
