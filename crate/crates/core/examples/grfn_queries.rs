//! Queries on a single Gaussian random fuzzy number.

use erfs::grfn::{self, Grfn};
use erfs::{Interval, Result};

fn main() -> Result<()> {
    let g = Grfn::new(0.0, 1.0, 1.0)?;
    println!("{g:?} is {:?}", g.kind());

    for x in [-2.0, -1.0, 0.0, 1.0, 2.0] {
        println!("contour({x:+}) = {:.6}", grfn::contour(&g, x));
    }

    let b = Interval::new(-1.0, 1.0)?;
    let (bel, pl) = grfn::bel_pl_interval(&g, &b);
    println!("Bel([-1, 1]) = {bel:.6}, Pl([-1, 1]) = {pl:.6}");

    println!("   y   lower cdf  upper cdf");
    for y in [-2.0, -1.0, 0.0, 1.0, 2.0] {
        let (lo, hi) = grfn::cdf_bounds(&g, y);
        println!("{y:+.1}   {lo:.6}   {hi:.6}");
    }

    let (lo, hi) = grfn::expectation_bounds(&g)?;
    println!("expectation in [{lo:.6}, {hi:.6}]");

    // The family contains Gaussian variables (h = inf) and possibility
    // distributions (sigma2 = 0) as special cases.
    let gaussian = Grfn::new(0.0, 1.0, f64::INFINITY)?;
    let (bel, pl) = grfn::bel_pl_interval(&gaussian, &b);
    println!("h = inf: Bel = Pl = {bel:.6} ({pl:.6})");
    Ok(())
}
