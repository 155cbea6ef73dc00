//! α-cut Monte-Carlo estimators.

use crate::error::{Error, Result};
use crate::grfv::Grfv;
use crate::interval::Interval;
use crate::linalg::{self, Vector};

use super::engine::{run, MCConfig, MCEstimate, Moments};
use super::rng::SampleStream;
use super::sampler::FuzzySampler;

/// Stream tag of the first (or only) random set.
pub const TAG_FIRST: u32 = 1;
/// Stream tag of the second random set in pairwise estimators.
pub const TAG_SECOND: u32 = 2;

/// Mean of `f` over independent streams, with its sample standard error.
pub fn mc_mean<F>(cfg: &MCConfig, tag: u32, f: F) -> MCEstimate
where
    F: Fn(&mut SampleStream) -> f64 + Sync,
{
    run(cfg, &Moments::default(), |i, m| {
        m.push(f(&mut SampleStream::new(cfg.seed, i, tag)))
    })
    .estimate()
}

/// Belief and plausibility of `b`.
pub fn mc_bel_pl<S: FuzzySampler + ?Sized>(
    s: &S,
    b: &Interval,
    cfg: &MCConfig,
) -> (MCEstimate, MCEstimate) {
    mc_bel_pl_many(s, std::slice::from_ref(b), cfg)[0]
}

/// Belief and plausibility of several sets, all from the same draws.
pub fn mc_bel_pl_many<S: FuzzySampler + ?Sized>(
    s: &S,
    bs: &[Interval],
    cfg: &MCConfig,
) -> Vec<(MCEstimate, MCEstimate)> {
    let empty = vec![Moments::default(); 2 * bs.len()];
    let acc = run(cfg, &empty, |i, acc| {
        let mut rng = SampleStream::new(cfg.seed, i, TAG_FIRST);
        let realized = s.sample(&mut rng);
        let cut = realized.alpha_cut(rng.alpha());
        for (k, b) in bs.iter().enumerate() {
            let (bel, pl) = match &cut {
                Some(c) => (c.is_subset_of(b), c.intersects(b)),
                None => (false, false),
            };
            acc[2 * k].push(f64::from(u8::from(bel)));
            acc[2 * k + 1].push(f64::from(u8::from(pl)));
        }
    });
    acc.chunks(2).map(|p| (p[0].proportion(), p[1].proportion())).collect()
}

/// Contour function at `x`: the mean realized membership.
pub fn mc_contour<S: FuzzySampler + ?Sized>(s: &S, x: f64, cfg: &MCConfig) -> MCEstimate {
    mc_mean(cfg, TAG_FIRST, |rng| s.sample(rng).membership(x))
}

/// Contour function at several points, all from the same draws.
pub fn mc_contour_many<S: FuzzySampler + ?Sized>(s: &S, xs: &[f64], cfg: &MCConfig) -> Vec<MCEstimate> {
    let acc = run(cfg, &vec![Moments::default(); xs.len()], |i, acc| {
        let realized = s.sample(&mut SampleStream::new(cfg.seed, i, TAG_FIRST));
        for (m, &x) in acc.iter_mut().zip(xs) {
            m.push(realized.membership(x));
        }
    });
    acc.iter().map(Moments::estimate).collect()
}

/// Degree of conflict: one minus the mean height of the product of
/// independent realizations.
pub fn mc_conflict<S1, S2>(s1: &S1, s2: &S2, cfg: &MCConfig) -> MCEstimate
where
    S1: FuzzySampler + ?Sized,
    S2: FuzzySampler + ?Sized,
{
    let m = run(cfg, &Moments::default(), |i, m| {
        let a = s1.sample(&mut SampleStream::new(cfg.seed, i, TAG_FIRST));
        let b = s2.sample(&mut SampleStream::new(cfg.seed, i, TAG_SECOND));
        m.push(a.product_height(&b));
    });
    let e = m.estimate();
    MCEstimate {
        value: (1.0 - e.value).clamp(0.0, 1.0),
        ..e
    }
}

/// Lower and upper expectations: means of the left and right endpoints of
/// randomly leveled cuts.
pub fn mc_expectation_bounds<S: FuzzySampler + ?Sized>(
    s: &S,
    cfg: &MCConfig,
) -> Result<(MCEstimate, MCEstimate)> {
    let empty = ([Moments::default(); 2], false);
    let (acc, unbounded) = run(cfg, &empty, |i, (acc, unbounded)| {
        let mut rng = SampleStream::new(cfg.seed, i, TAG_FIRST);
        let realized = s.sample(&mut rng);
        match realized.alpha_cut(rng.alpha()) {
            Some(c) if c.is_bounded() => {
                acc[0].push(c.lo());
                acc[1].push(c.hi());
            }
            _ => *unbounded = true,
        }
    });
    if unbounded {
        return Err(Error::domain("a sampled cut is unbounded or empty; expectations do not exist"));
    }
    Ok((acc[0].estimate(), acc[1].estimate()))
}

/// Contour function of a GRFV at `x`: the mean of `exp(-(x - M)' H (x - M) / 2)`
/// over `M ~ N(mu, Sigma)`.
pub fn mc_contour_vec(g: &Grfv, x: &Vector, cfg: &MCConfig) -> Result<MCEstimate> {
    let p = g.dim();
    if x.len() != p {
        return Err(Error::domain("point dimension does not match the GRFV"));
    }
    let root = linalg::psd_sqrt(g.sigma());
    let offset = x - g.mu();
    Ok(mc_mean(cfg, TAG_FIRST, |rng| {
        let z = Vector::from_fn(p, |_, _| rng.normal());
        let d = &offset - &root * z;
        (-0.5 * d.dot(&(g.h() * &d))).exp()
    }))
}
