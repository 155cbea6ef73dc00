//! Gaussian random fuzzy vectors `N~(mu, Sigma, H)`: a GFV with precision
//! matrix `H` whose mode is drawn from `N(mu, Sigma)`.

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fuzzy::{self, Gfv};
use crate::grfn::{Grfn, CONFLICT_FLOOR};
use crate::linalg::{self, Matrix, SpdFactor, Vector};
use crate::precision::Precision;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGrfv", into = "RawGrfv")]
pub struct Grfv {
    mu: Vector,
    sigma: Matrix,
    h: Matrix,
}

#[derive(Serialize, Deserialize)]
struct RawGrfv {
    mu: Vec<f64>,
    #[serde(rename = "Sigma")]
    sigma: Vec<Vec<f64>>,
    #[serde(rename = "H")]
    h: Vec<Vec<f64>>,
}

impl TryFrom<RawGrfv> for Grfv {
    type Error = Error;
    fn try_from(raw: RawGrfv) -> Result<Self> {
        let sigma = linalg::from_rows(&raw.sigma, "Sigma")?;
        let h = linalg::from_rows(&raw.h, "H")?;
        Grfv::new(Vector::from_vec(raw.mu), sigma, h)
    }
}

impl From<Grfv> for RawGrfv {
    fn from(g: Grfv) -> Self {
        RawGrfv {
            mu: g.mu.iter().copied().collect(),
            sigma: linalg::to_rows(&g.sigma),
            h: linalg::to_rows(&g.h),
        }
    }
}

impl Grfv {
    pub fn new(mu: Vector, sigma: Matrix, h: Matrix) -> Result<Self> {
        if mu.iter().any(|v| !v.is_finite()) {
            return Err(Error::validation("mu", "entries must be finite"));
        }
        let p = mu.len();
        for (name, m) in [("Sigma", &sigma), ("H", &h)] {
            if m.nrows() != p || m.ncols() != p {
                return Err(Error::validation(
                    name,
                    format!("expected {p}x{p}, got {}x{}", m.nrows(), m.ncols()),
                ));
            }
            linalg::check_psd(m, name)?;
        }
        Ok(Grfv { mu, sigma, h })
    }

    /// Noninteractive GRFV assembled from independent coordinates. Each
    /// coordinate needs a finite precision.
    pub fn from_coordinates(coords: &[Grfn]) -> Result<Self> {
        let p = coords.len();
        let mut h = Matrix::zeros(p, p);
        let mut sigma = Matrix::zeros(p, p);
        for (i, c) in coords.iter().enumerate() {
            h[(i, i)] = c.h().finite().ok_or_else(|| {
                Error::validation("H", format!("coordinate {i} has infinite precision"))
            })?;
            sigma[(i, i)] = c.sigma2();
        }
        Grfv::new(Vector::from_iterator(p, coords.iter().map(Grfn::mu)), sigma, h)
    }

    pub fn dim(&self) -> usize {
        self.mu.len()
    }

    pub fn mu(&self) -> &Vector {
        &self.mu
    }

    pub fn sigma(&self) -> &Matrix {
        &self.sigma
    }

    pub fn h(&self) -> &Matrix {
        &self.h
    }

    /// Fuzzy vector realized when the random mode equals `m`.
    pub fn realize(&self, m: Vector) -> Gfv {
        Gfv::new(m, self.h.clone()).expect("validated precision")
    }

    /// Reorders coordinates: new coordinate `i` is old coordinate `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Grfv> {
        linalg::check_permutation(perm, self.dim())?;
        Ok(Grfv {
            mu: linalg::permute_vector(&self.mu, perm),
            sigma: linalg::permute_matrix(&self.sigma, perm),
            h: linalg::permute_matrix(&self.h, perm),
        })
    }
}

/// Contour function at `x`; requires a positive definite `H`.
pub fn contour_vec(g: &Grfv, x: &Vector) -> Result<f64> {
    if x.len() != g.dim() {
        return Err(Error::domain("point dimension does not match the GRFV"));
    }
    let fh = SpdFactor::new(&g.h, "H")?;
    // |I + Sigma H| = |H| |H^{-1} + Sigma|
    let spread = fh.inverse() + &g.sigma;
    let fk = SpdFactor::new(&spread, "H^-1+Sigma")?;
    let ln_det = fh.log_det() + fk.log_det();
    let d = x - &g.mu;
    Ok((-0.5 * ln_det - 0.5 * fk.inv_quad_form(&d)).exp())
}

/// Conditional distribution of the stacked modes `(M1, M2)` and the
/// combination map `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionedModesVec {
    /// Mean of the stacked `2p` vector.
    pub mu_tilde: Vector,
    /// `2p x 2p` covariance.
    pub sigma_tilde: Matrix,
    /// `(H1^{-1} + H2^{-1})^{-1}`
    pub hbar: Matrix,
    /// `(H1 + H2)^{-1} [H1 H2]`, `p x 2p`.
    pub a: Matrix,
}

impl Serialize for ConditionedModesVec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Rows {
            mu_tilde: Vec<f64>,
            sigma_tilde: Vec<Vec<f64>>,
            hbar: Vec<Vec<f64>>,
            a: Vec<Vec<f64>>,
        }
        Rows {
            mu_tilde: self.mu_tilde.iter().copied().collect(),
            sigma_tilde: linalg::to_rows(&self.sigma_tilde),
            hbar: linalg::to_rows(&self.hbar),
            a: linalg::to_rows(&self.a),
        }
        .serialize(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrfvFusion {
    pub combined: Grfv,
    pub kappa: f64,
    pub intermediates: ConditionedModesVec,
}

/// Orthogonal sum of two GRFVs with positive definite `Sigma` and `H`.
pub fn combine_vec(g1: &Grfv, g2: &Grfv) -> Result<GrfvFusion> {
    let p = g1.dim();
    if g2.dim() != p {
        return Err(Error::domain("GRFV dimensions differ"));
    }
    let fh1 = SpdFactor::new(&g1.h, "H1")?;
    let fh2 = SpdFactor::new(&g2.h, "H2")?;
    let fs1 = SpdFactor::new(&g1.sigma, "Sigma1")?;
    let fs2 = SpdFactor::new(&g2.sigma, "Sigma2")?;
    let hbar = SpdFactor::new(&(fh1.inverse() + fh2.inverse()), "H1^-1+H2^-1")?.inverse();

    // Precision of the conditional law of (M1, M2):
    // [[S1^-1 + Hbar, -Hbar], [-Hbar, S2^-1 + Hbar]].
    let (s1_inv, s2_inv) = (fs1.inverse(), fs2.inverse());
    let mut lambda = Matrix::zeros(2 * p, 2 * p);
    lambda.view_mut((0, 0), (p, p)).copy_from(&(&s1_inv + &hbar));
    lambda.view_mut((p, p), (p, p)).copy_from(&(&s2_inv + &hbar));
    lambda.view_mut((0, p), (p, p)).copy_from(&(-&hbar));
    lambda.view_mut((p, 0), (p, p)).copy_from(&(-&hbar));
    let f_lambda = SpdFactor::new(&lambda, "conditional precision")?;

    // Conflict is translation invariant; centering the means keeps the
    // quadratic forms small.
    let center = (&g1.mu + &g2.mu) * 0.5;
    let (c1, c2) = (&g1.mu - &center, &g2.mu - &center);
    let (b1, b2) = (&s1_inv * &c1, &s2_inv * &c2);
    let mut rhs = Vector::zeros(2 * p);
    rhs.rows_mut(0, p).copy_from(&b1);
    rhs.rows_mut(p, p).copy_from(&b2);
    let mu_c = f_lambda.solve(&rhs);

    let ln_consistent = 0.5 * (-f_lambda.log_det() - fs1.log_det() - fs2.log_det())
        - 0.5 * (c1.dot(&b1) + c2.dot(&b2) - mu_c.dot(&rhs));
    if ln_consistent <= CONFLICT_FLOOR.ln() {
        return Err(Error::ContradictoryEvidence(format!(
            "degree of conflict rounds to 1 (ln(1 - kappa) = {ln_consistent:.3})"
        )));
    }
    let kappa = (-ln_consistent.exp_m1()).clamp(0.0, 1.0);

    let mut mu_tilde = mu_c;
    for i in 0..p {
        mu_tilde[i] += center[i];
        mu_tilde[p + i] += center[i];
    }
    let sigma_tilde = f_lambda.inverse();

    let h12 = &g1.h + &g2.h;
    let f12 = SpdFactor::new(&h12, "H1+H2")?;
    let mut stacked = Matrix::zeros(p, 2 * p);
    stacked.view_mut((0, 0), (p, p)).copy_from(&g1.h);
    stacked.view_mut((0, p), (p, p)).copy_from(&g2.h);
    let a = f12.solve_matrix(&stacked);

    let combined = Grfv::new(
        &a * &mu_tilde,
        linalg::symmetrize(&(&a * &sigma_tilde * a.transpose())),
        linalg::symmetrize(&h12),
    )?;
    Ok(GrfvFusion {
        combined,
        kappa,
        intermediates: ConditionedModesVec {
            mu_tilde,
            sigma_tilde,
            hbar,
            a,
        },
    })
}

/// Marginal on the leading `keep` coordinates. Permute first with
/// [`Grfv::permuted`] to keep another subset.
pub fn marginalize(g: &Grfv, keep: usize) -> Result<Grfv> {
    fuzzy::check_keep(keep, g.dim())?;
    if keep == g.dim() {
        return Ok(g.clone());
    }
    let h = fuzzy::schur_marginal_precision(&g.h, keep)?;
    Ok(Grfv {
        mu: g.mu.rows(0, keep).into_owned(),
        sigma: g.sigma.view((0, 0), (keep, keep)).into_owned(),
        h,
    })
}

/// Vacuous extension by `k` trailing coordinates.
pub fn vacuous_extend(g: &Grfv, k: usize) -> Grfv {
    let p = g.dim();
    Grfv {
        mu: g.mu.clone().resize_vertically(p + k, 0.0),
        sigma: linalg::block_diag(&g.sigma, &Matrix::identity(k, k)),
        h: linalg::block_diag(&g.h, &Matrix::zeros(k, k)),
    }
}

const NONINTERACTIVE_TOL: f64 = 1e-12;

fn is_diagonal(m: &Matrix) -> bool {
    let scale = m.diagonal().amax();
    let n = m.nrows();
    (0..n).all(|i| (0..n).all(|j| i == j || m[(i, j)].abs() <= NONINTERACTIVE_TOL * scale))
}

/// Whether the GRFV equals the orthogonal sum of its one-dimensional
/// marginals, i.e. both `Sigma` and `H` are diagonal.
pub fn is_noninteractive(g: &Grfv) -> bool {
    is_diagonal(&g.sigma) && is_diagonal(&g.h)
}

/// One-dimensional marginal of a noninteractive coordinate.
pub fn coordinate(g: &Grfv, i: usize) -> Result<Grfn> {
    if i >= g.dim() {
        return Err(Error::domain(format!("coordinate {i} out of range")));
    }
    let mut perm: Vec<usize> = (0..g.dim()).collect();
    perm.swap(0, i);
    let m = marginalize(&g.permuted(&perm)?, 1)?;
    Grfn::with_precision(m.mu[0], m.sigma[(0, 0)], Precision::Finite(m.h[(0, 0)]))
}
