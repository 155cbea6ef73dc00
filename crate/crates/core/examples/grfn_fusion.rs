//! Combining independent pieces of evidence with the product-intersection
//! rule, and checking the result against a weighted Monte-Carlo sampler.

use erfs::grfn::{self, Grfn};
use erfs::randomset::{soft_conditioning_sampler, MCConfig};
use erfs::Result;

fn main() -> Result<()> {
    let sensor = Grfn::new(1.0, 0.5, 2.0)?;
    let expert = Grfn::new(2.0, 1.0, 0.5)?;

    let f = grfn::combine(&sensor, &expert)?;
    let c = &f.combined;
    println!("combined: mu {:.6}, sigma2 {:.6}, h {}", c.mu(), c.sigma2(), c.h());
    println!("conflict kappa = {:.6}", f.kappa);

    let cfg = MCConfig::with_seed(42, 200_000)?;
    let w = soft_conditioning_sampler(&sensor, &expert, &cfg)?;
    let m = &f.intermediates;
    println!("quantity     closed form   weighted MC (stderr)");
    for (name, closed, est) in [
        ("mu1", m.mu1, w.mean1),
        ("mu2", m.mu2, w.mean2),
        ("sigma1^2", m.sigma1_sq, w.var1),
        ("rho", m.rho, w.rho),
        ("1 - kappa", 1.0 - f.kappa, w.mean_weight),
    ] {
        println!("{name:<12} {closed:>11.6}   {:.6} ({:.1e})", est.value, est.stderr);
    }

    // A vacuous operand changes nothing.
    let same = grfn::combine(&sensor, &Grfn::vacuous())?;
    assert_eq!(same.combined, sensor);

    let all = grfn::combine_many(&[sensor, expert, Grfn::new(1.5, 0.2, 4.0)?])?;
    println!("three sources: mu {:.6}, h {}", all.mu(), all.h());
    Ok(())
}
