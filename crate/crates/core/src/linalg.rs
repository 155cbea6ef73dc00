//! Small symmetric positive-(semi)definite kernel on top of `nalgebra`.
//!
//! Definiteness is decided from the symmetric eigenvalues with a relative
//! tolerance; nothing is regularized. Solves, inverses and log-determinants
//! go through a Cholesky factor.

use nalgebra::{Cholesky, DMatrix, DVector, Dyn, SymmetricEigen};

use crate::error::{Error, Result};

/// Relative symmetry tolerance for input matrices.
pub const SYMMETRY_TOL: f64 = 1e-10;
/// Eigenvalues may dip to `-PSD_TOL * max_eig` and still count as PSD.
pub const PSD_TOL: f64 = 1e-10;
/// Eigenvalues must exceed `PD_TOL * trace / p` to count as PD.
pub const PD_TOL: f64 = 1e-12;

pub type Matrix = DMatrix<f64>;
pub type Vector = DVector<f64>;

fn max_abs(m: &Matrix) -> f64 {
    m.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
}

pub fn check_square(m: &Matrix, name: &str) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::validation(
            name,
            format!("expected a square matrix, got {}x{}", m.nrows(), m.ncols()),
        ));
    }
    if m.iter().any(|v| !v.is_finite()) {
        return Err(Error::validation(name, "entries must be finite"));
    }
    Ok(())
}

pub fn check_symmetric(m: &Matrix, name: &str) -> Result<()> {
    check_square(m, name)?;
    let scale = max_abs(m);
    let n = m.nrows();
    for i in 0..n {
        for j in (i + 1)..n {
            if (m[(i, j)] - m[(j, i)]).abs() > SYMMETRY_TOL * scale {
                return Err(Error::validation(
                    name,
                    format!("not symmetric at ({i},{j})"),
                ));
            }
        }
    }
    Ok(())
}

/// Averages a nearly symmetric matrix with its transpose.
pub fn symmetrize(m: &Matrix) -> Matrix {
    (m + m.transpose()) * 0.5
}

fn eigenvalues(m: &Matrix) -> DVector<f64> {
    SymmetricEigen::new(symmetrize(m)).eigenvalues
}

pub fn is_psd(m: &Matrix) -> bool {
    if m.nrows() == 0 {
        return true;
    }
    let ev = eigenvalues(m);
    let top = ev.max().max(0.0);
    ev.iter().all(|&l| l >= -PSD_TOL * top)
}

pub fn check_psd(m: &Matrix, name: &str) -> Result<()> {
    check_symmetric(m, name)?;
    if !is_psd(m) {
        return Err(Error::validation(name, "not positive semidefinite"));
    }
    Ok(())
}

pub fn is_pd(m: &Matrix) -> bool {
    let p = m.nrows();
    if p == 0 {
        return true;
    }
    let trace = m.trace();
    if !(trace > 0.0) {
        return false;
    }
    let floor = PD_TOL * trace / p as f64;
    eigenvalues(m).iter().all(|&l| l > floor)
}

/// `true` when the symmetric matrix is singular relative to its largest
/// eigenvalue magnitude.
pub fn is_singular(m: &Matrix, rel_tol: f64) -> bool {
    if m.nrows() == 0 {
        return false;
    }
    let ev = eigenvalues(m);
    let top = ev.amax();
    top == 0.0 || ev.iter().any(|l| l.abs() <= rel_tol * top)
}

/// Cholesky factor of a matrix that passed the PD test.
#[derive(Debug, Clone)]
pub struct SpdFactor {
    chol: Cholesky<f64, Dyn>,
}

impl SpdFactor {
    pub fn new(m: &Matrix, name: &str) -> Result<Self> {
        check_symmetric(m, name)?;
        if !is_pd(m) {
            return Err(Error::NotPositiveDefinite(name.to_string()));
        }
        Cholesky::new(symmetrize(m))
            .map(|chol| SpdFactor { chol })
            .ok_or_else(|| Error::NotPositiveDefinite(name.to_string()))
    }

    pub fn dim(&self) -> usize {
        self.chol.l_dirty().nrows()
    }

    pub fn solve(&self, b: &Vector) -> Vector {
        self.chol.solve(b)
    }

    pub fn solve_matrix(&self, b: &Matrix) -> Matrix {
        self.chol.solve(b)
    }

    pub fn inverse(&self) -> Matrix {
        symmetrize(&self.chol.inverse())
    }

    /// `log |M|` accumulated from the diagonal of the factor.
    pub fn log_det(&self) -> f64 {
        let l = self.chol.l_dirty();
        2.0 * (0..l.nrows()).map(|i| l[(i, i)].ln()).sum::<f64>()
    }

    /// `x^T M^{-1} x`
    pub fn inv_quad_form(&self, x: &Vector) -> f64 {
        x.dot(&self.solve(x))
    }
}

/// Inverse of an SPD matrix, named for error reporting.
pub fn spd_inverse(m: &Matrix, name: &str) -> Result<Matrix> {
    Ok(SpdFactor::new(m, name)?.inverse())
}

/// Symmetric square root factor `L` with `L L^T = m` for a PSD matrix,
/// obtained from the eigendecomposition so that singular covariances work.
pub fn psd_sqrt(m: &Matrix) -> Matrix {
    let eig = SymmetricEigen::new(symmetrize(m));
    let scale = eig.eigenvalues.map(|l| l.max(0.0).sqrt());
    &eig.eigenvectors * Matrix::from_diagonal(&scale)
}

/// Leading/trailing block split at `k` rows and columns.
pub(crate) struct Blocks {
    pub a11: Matrix,
    pub a12: Matrix,
    pub a21: Matrix,
    pub a22: Matrix,
}

pub(crate) fn split(m: &Matrix, k: usize) -> Blocks {
    let p = m.nrows();
    Blocks {
        a11: m.view((0, 0), (k, k)).into_owned(),
        a12: m.view((0, k), (k, p - k)).into_owned(),
        a21: m.view((k, 0), (p - k, k)).into_owned(),
        a22: m.view((k, k), (p - k, p - k)).into_owned(),
    }
}

/// Block-diagonal matrix `diag(a, b)`.
pub(crate) fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
    let (n, m) = (a.nrows(), b.nrows());
    let mut out = Matrix::zeros(n + m, n + m);
    out.view_mut((0, 0), (n, n)).copy_from(a);
    out.view_mut((n, n), (m, m)).copy_from(b);
    out
}

/// Applies a coordinate permutation `perm` (new index `i` reads old index
/// `perm[i]`) to a matrix.
pub fn permute_matrix(m: &Matrix, perm: &[usize]) -> Matrix {
    Matrix::from_fn(perm.len(), perm.len(), |i, j| m[(perm[i], perm[j])])
}

pub fn permute_vector(v: &Vector, perm: &[usize]) -> Vector {
    Vector::from_fn(perm.len(), |i, _| v[perm[i]])
}

pub(crate) fn check_permutation(perm: &[usize], p: usize) -> Result<()> {
    let mut seen = vec![false; p];
    if perm.len() != p {
        return Err(Error::validation("permutation", format!("expected length {p}")));
    }
    for &i in perm {
        if i >= p || seen[i] {
            return Err(Error::validation("permutation", "not a permutation of 0..p"));
        }
        seen[i] = true;
    }
    Ok(())
}

/// Converts row-major nested vectors into a matrix.
pub fn from_rows(rows: &[Vec<f64>], name: &str) -> Result<Matrix> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::validation(name, "rows must all have length equal to the row count"));
    }
    Ok(Matrix::from_fn(n, n, |i, j| rows[i][j]))
}

pub fn to_rows(m: &Matrix) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}
