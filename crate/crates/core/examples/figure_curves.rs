//! Curve data for plotting: lower and upper cdfs of a triangular random
//! fuzzy number and of a GRFN, printed as CSV.

use erfs::grfn::{self, Grfn};
use erfs::randomset::TriangularGaussian;
use erfs::Result;

fn main() -> Result<()> {
    let tri = TriangularGaussian::new(0.0, 1.0, 1.5)?;
    let g = Grfn::new(0.0, 1.0, 1.0)?;
    println!("x,tri_lower,tri_upper,grfn_lower,grfn_upper");
    for k in -40..=40 {
        let x = 0.1 * k as f64;
        let (tl, tu) = tri.cdf_bounds(x);
        let (gl, gu) = grfn::cdf_bounds(&g, x);
        println!("{x:.1},{tl:.6},{tu:.6},{gl:.6},{gu:.6}");
    }
    let (lo, hi) = tri.expectation_bounds();
    eprintln!("triangular expectations: [{lo}, {hi}]");
    Ok(())
}
