//! Gaussian fuzzy numbers: membership, cuts, possibility and necessity,
//! normalized product and linear combinations.

use erfs::fuzzy::{gfn_linear_combination, gfn_product, Gfn};
use erfs::{Interval, Result};

fn main() -> Result<()> {
    let a = Gfn::new(0.0, 0.3)?;
    let b = Gfn::new(1.0, 0.5)?;

    println!("membership of 1.0 in a: {:.6}", a.membership(1.0));
    println!("0.5-cut of a: {:?}", a.alpha_cut(0.5)?);

    let range = Interval::new(0.5, 2.0)?;
    println!("Pi(a in [0.5, 2]) = {:.6}, N = {:.6}", a.possibility(&range), a.necessity(&range));

    let p = gfn_product(&a, &b)?;
    println!(
        "a * b = GFN(mode {}, precision {}), height {:.6}, conflict {:.6}",
        p.product.mode(),
        p.product.precision(),
        p.height,
        1.0 - p.height
    );

    // 2a - b keeps the Gaussian shape; precisions combine harmonically.
    let c = gfn_linear_combination(&[(2.0, a), (-1.0, b)])?;
    println!("2a - b = GFN(mode {}, precision {:.6})", c.mode(), c.precision());
    Ok(())
}
