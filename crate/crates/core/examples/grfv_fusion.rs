//! Gaussian random fuzzy vectors: combination, marginalization and vacuous
//! extension.

use erfs::grfv::{self, Grfv};
use erfs::linalg::{Matrix, Vector};
use erfs::Result;

fn main() -> Result<()> {
    let first = Grfv::new(
        Vector::from_vec(vec![0.0, 1.0]),
        Matrix::from_row_slice(2, 2, &[1.0, 0.3, 0.3, 0.5]),
        Matrix::from_row_slice(2, 2, &[2.0, 0.5, 0.5, 1.0]),
    )?;
    let second = Grfv::new(
        Vector::from_vec(vec![0.5, 0.5]),
        Matrix::identity(2, 2),
        Matrix::from_row_slice(2, 2, &[1.0, -0.2, -0.2, 3.0]),
    )?;

    let f = grfv::combine_vec(&first, &second)?;
    println!("combined mu = {}", f.combined.mu().transpose());
    println!("combined Sigma = {}", f.combined.sigma());
    println!("combined H = {}", f.combined.h());
    println!("kappa = {:.6}", f.kappa);

    let x = Vector::from_vec(vec![0.25, 0.75]);
    println!("contour at {} = {:.6}", x.transpose(), grfv::contour_vec(&f.combined, &x)?);

    let first_coordinate = grfv::marginalize(&f.combined, 1)?;
    println!("marginal on the first coordinate: {}", serde_json::to_string(&first_coordinate).unwrap());

    // Evidence about the first coordinate only, lifted to the joint space.
    let lifted = grfv::vacuous_extend(&first_coordinate, 1);
    println!("vacuous extension H = {}", lifted.h());
    assert_eq!(grfv::marginalize(&lifted, 1)?, first_coordinate);
    println!("noninteractive: {}", grfv::is_noninteractive(&lifted));
    Ok(())
}
