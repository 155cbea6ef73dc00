//! The Monte-Carlo random-set engine used as an independent check on the
//! closed forms: it samples fuzzy realizations and alpha levels directly.

use erfs::grfn::{self, Grfn};
use erfs::randomset::{mc_bel_pl, mc_conflict, mc_contour, mc_expectation_bounds, MCConfig};
use erfs::{Interval, Result};

fn main() -> Result<()> {
    let g = Grfn::new(0.5, 1.5, 0.8)?;
    let other = Grfn::new(-1.0, 0.5, 2.0)?;
    let cfg = MCConfig::with_seed(42, 500_000)?;

    let b = Interval::new(0.0, 2.0)?;
    let (bel, pl) = mc_bel_pl(&g, &b, &cfg);
    let (cb, cp) = grfn::bel_pl_interval(&g, &b);
    println!("Bel: closed {cb:.5}, MC {:.5} (z {:.2})", bel.value, bel.z_score(cb));
    println!("Pl:  closed {cp:.5}, MC {:.5} (z {:.2})", pl.value, pl.z_score(cp));

    let c = mc_contour(&g, 1.0, &cfg);
    println!("contour(1): closed {:.5}, MC {:.5}", grfn::contour(&g, 1.0), c.value);

    let k = mc_conflict(&g, &other, &cfg);
    let closed = grfn::combine(&g, &other)?.kappa;
    println!("kappa: closed {closed:.5}, MC {:.5} +- {:.1e}", k.value, k.stderr);

    let (lo, hi) = mc_expectation_bounds(&g, &cfg)?;
    let (clo, chi) = grfn::expectation_bounds(&g)?;
    println!("expectations: closed [{clo:.4}, {chi:.4}], MC [{:.4}, {:.4}]", lo.value, hi.value);

    // Results depend only on the seed, never on the thread count.
    let serial = MCConfig::new(42, 500_000, 1)?;
    assert_eq!(mc_bel_pl(&g, &b, &serial), (bel, pl));
    Ok(())
}
