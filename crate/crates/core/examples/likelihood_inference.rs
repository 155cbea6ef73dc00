//! Statistical evidence from a sample: the relative likelihood as a
//! possibility distribution, and a predictive GRFN.

use erfs::fuzzy::gfn_product;
use erfs::grfn;
use erfs::inference::{
    gaussian_mean_likelihood_fuzzy, gaussian_mean_predictive, relative_likelihood_contour, LogLikelihood,
    Sample,
};
use erfs::Result;

fn main() -> Result<()> {
    let sample = Sample::parse("# unit-variance measurements\n1.2 0.7 1.9\n0.4 1.1\n")?;
    let fuzzy = gaussian_mean_likelihood_fuzzy(&sample);
    println!("n = {}, theta_hat = {:.4}: {fuzzy:?}", sample.len(), sample.mean());

    let l = LogLikelihood::gaussian_mean(&sample);
    for theta in [0.5, 1.0, 1.5] {
        println!("relative likelihood at {theta}: {:.6}", relative_likelihood_contour(&l, theta)?);
    }

    // Any log-likelihood works if its maximizer is supplied.
    let laplace = LogLikelihood::new(|t| -(t - 2.0f64).abs(), 2.0)?;
    println!("Laplace-shaped evidence at 3: {:.6}", relative_likelihood_contour(&laplace, 3.0)?);

    // Splitting the sample and combining gives the same answer as the whole.
    let xs = sample.observations();
    let a = gaussian_mean_likelihood_fuzzy(&Sample::new(xs[..2].to_vec())?);
    let b = gaussian_mean_likelihood_fuzzy(&Sample::new(xs[2..].to_vec())?);
    let joined = gfn_product(&a, &b)?.product;
    println!("split-and-combine: {joined:?}");

    let next = gaussian_mean_predictive(&sample);
    let (lo, hi) = grfn::cdf_bounds(&next, 1.0);
    println!("next observation below 1.0: belief {lo:.4}, plausibility {hi:.4}");
    Ok(())
}
