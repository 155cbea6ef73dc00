//! Dempster's rule on two Gaussian random rays, each one-sided evidence
//! about the same quantity.

use erfs::randomset::{dempster_gaussian_rays, mc_contour_many, ray_contours, MCConfig};
use erfs::Result;

fn main() -> Result<()> {
    // [X1, inf) with X1 ~ N(0, 1) and (-inf, X2] with X2 ~ N(1, 1.5^2).
    let (mu1, s1, mu2, s2) = (0.0, 1.0, 1.0, 1.5);
    let cfg = MCConfig::with_seed(42, 400_000)?;
    let r = dempster_gaussian_rays(mu1, s1, mu2, s2, &cfg)?;
    println!(
        "kappa = {:.6}; observed rejection rate {:.6} +- {:.1e}",
        r.kappa, r.rejection_rate.value, r.rejection_rate.stderr
    );

    let xs: Vec<f64> = (-6..=8).map(|k| 0.5 * k as f64).collect();
    println!("   x     pl1     pl2   combined   MC");
    for (x, est) in xs.iter().zip(mc_contour_many(&r.sampler, &xs, &cfg)) {
        let (pl1, pl2, combined) = ray_contours(mu1, s1, mu2, s2, *x);
        println!("{x:+.1}  {pl1:.4}  {pl2:.4}  {combined:.4}   {:.4}", est.value);
    }
    Ok(())
}
