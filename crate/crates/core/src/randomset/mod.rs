//! Monte-Carlo engine for random fuzzy sets. Every estimator here is an
//! independent check on a closed form elsewhere in the crate.

pub mod dempster;
pub mod engine;
pub mod estimators;
pub mod rng;
pub mod sampler;
pub mod soft;
pub mod triangular;

pub use dempster::{
    dempster_consonant, dempster_gaussian_rays, ray_conflict, ray_contours, RayCombination,
};
pub use engine::{MCConfig, MCEstimate, Moments, DEFAULT_SEED};
pub use estimators::{
    mc_bel_pl, mc_bel_pl_many, mc_conflict, mc_contour, mc_contour_many, mc_contour_vec, mc_expectation_bounds,
    mc_mean,
};
pub use rng::SampleStream;
pub use sampler::{
    ClosedSource, ConsonantCuts, FuzzySampler, GaussianRandomInterval, Realization, Vacuous,
};
pub use soft::{soft_conditioning_sampler, SoftConditioning, WeightedPair, WeightedSample};
pub use triangular::{triangular_gaussian_cdf_bounds, TriangularGaussian};
