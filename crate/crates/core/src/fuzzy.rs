//! Gaussian fuzzy numbers and vectors: membership, normalized product
//! intersection, alpha-cuts, possibility and necessity, extension-principle
//! arithmetic, projection and cylindrical extension.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::linalg::{self, Matrix, SpdFactor, Vector};
use crate::precision::Precision;

/// Gaussian fuzzy number with membership `exp(-h/2 (x - m)^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGfn")]
pub struct Gfn {
    mode: f64,
    precision: Precision,
}

#[derive(Deserialize)]
struct RawGfn {
    mode: f64,
    precision: Precision,
}

impl TryFrom<RawGfn> for Gfn {
    type Error = Error;
    fn try_from(raw: RawGfn) -> Result<Self> {
        Gfn::with_precision(raw.mode, raw.precision)
    }
}

impl Gfn {
    /// `h` may be `f64::INFINITY`.
    pub fn new(mode: f64, h: f64) -> Result<Self> {
        Gfn::with_precision(mode, Precision::new(h)?)
    }

    pub fn with_precision(mode: f64, precision: Precision) -> Result<Self> {
        if !mode.is_finite() {
            return Err(Error::validation("mode", "must be finite"));
        }
        if let Precision::Finite(h) = precision {
            if h.is_nan() || h < 0.0 {
                return Err(Error::validation("precision", "must be nonnegative"));
            }
        }
        Ok(Gfn { mode, precision })
    }

    /// Crisp real number `GFN(m, +inf)`.
    pub fn crisp(mode: f64) -> Result<Self> {
        Gfn::with_precision(mode, Precision::Infinite)
    }

    pub fn mode(&self) -> f64 {
        self.mode
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    /// `ln phi(x; m, h)`; `-inf` off the mode of a crisp number.
    pub fn ln_membership(&self, x: f64) -> f64 {
        match self.precision {
            Precision::Infinite => {
                if x == self.mode {
                    0.0
                } else {
                    f64::NEG_INFINITY
                }
            }
            Precision::Finite(h) => {
                if h == 0.0 {
                    0.0
                } else {
                    -0.5 * h * (x - self.mode).powi(2)
                }
            }
        }
    }

    pub fn membership(&self, x: f64) -> f64 {
        self.ln_membership(x).exp()
    }

    /// `{x : phi(x) >= alpha}` for `alpha` in `(0, 1]`.
    pub fn alpha_cut(&self, alpha: f64) -> Result<Interval> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::domain(format!("alpha must lie in (0, 1], got {alpha}")));
        }
        match self.precision {
            Precision::Infinite => Ok(Interval::point(self.mode)),
            Precision::Finite(h) if h == 0.0 => Err(Error::domain(
                "alpha-cut of a zero-precision GFN is the whole line",
            )),
            Precision::Finite(h) => Ok(Interval::centered(self.mode, cut_radius(alpha, h))),
        }
    }

    /// Sup of the membership over `b`.
    pub fn possibility(&self, b: &Interval) -> f64 {
        if b.contains(self.mode) {
            return 1.0;
        }
        if self.precision.is_infinite() {
            return 0.0;
        }
        let nearest = if self.mode < b.lo() { b.lo() } else { b.hi() };
        self.membership(nearest)
    }

    /// Sup of the membership over the open complement of `b`.
    fn possibility_of_complement(&self, b: &Interval) -> f64 {
        let left = open_ray_sup(self, b.lo(), Side::Below);
        let right = open_ray_sup(self, b.hi(), Side::Above);
        left.max(right)
    }

    pub fn necessity(&self, b: &Interval) -> f64 {
        1.0 - self.possibility_of_complement(b)
    }
}

#[derive(Clone, Copy)]
enum Side {
    Below,
    Above,
}

/// Sup of the membership over `(-inf, edge)` or `(edge, +inf)`.
fn open_ray_sup(g: &Gfn, edge: f64, side: Side) -> f64 {
    let empty = match side {
        Side::Below => edge == f64::NEG_INFINITY,
        Side::Above => edge == f64::INFINITY,
    };
    if empty {
        return 0.0;
    }
    let mode_inside = match side {
        Side::Below => g.mode < edge,
        Side::Above => g.mode > edge,
    };
    if mode_inside {
        return 1.0;
    }
    match g.precision {
        // the point mass sits on or beyond the excluded edge
        Precision::Infinite => 0.0,
        Precision::Finite(_) => g.membership(edge),
    }
}

pub(crate) fn cut_radius(alpha: f64, h: f64) -> f64 {
    (-2.0 * alpha.ln() / h).sqrt()
}

/// `phi(x; m, h)` for plain parameters.
pub fn gfn_membership(g: &Gfn, x: f64) -> f64 {
    g.membership(x)
}

pub fn gfn_alpha_cut(g: &Gfn, alpha: f64) -> Result<Interval> {
    g.alpha_cut(alpha)
}

/// Normalized product together with the height of the unnormalized product.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProductResult<T> {
    pub product: T,
    pub height: f64,
    /// `ln height`, finite even when `height` underflows.
    pub ln_height: f64,
}

/// Normalized product intersection of two GFNs.
pub fn gfn_product(g1: &Gfn, g2: &Gfn) -> Result<ProductResult<Gfn>> {
    use Precision::{Finite, Infinite};
    let (m1, m2) = (g1.mode, g2.mode);
    let (product, ln_height) = match (g1.precision, g2.precision) {
        (Infinite, Infinite) => {
            if m1 != m2 {
                return Err(Error::ContradictoryEvidence(format!(
                    "crisp values {m1} and {m2} differ"
                )));
            }
            (Gfn::crisp(m1)?, 0.0)
        }
        (Infinite, Finite(_)) => (*g1, g2.ln_membership(m1)),
        (Finite(_), Infinite) => (*g2, g1.ln_membership(m2)),
        (Finite(h1), Finite(h2)) => {
            if h1 == 0.0 && h2 == 0.0 {
                (Gfn::new(0.0, 0.0)?, 0.0)
            } else {
                let h12 = h1 + h2;
                let mode = (h1 * m1 + h2 * m2) / h12;
                let hbar = h1 * h2 / h12;
                (Gfn::new(mode, h12)?, -0.5 * hbar * (m1 - m2).powi(2))
            }
        }
    };
    Ok(ProductResult {
        product,
        height: ln_height.exp(),
        ln_height,
    })
}

/// Extension-principle linear combination `sum_i lambda_i GFN(m_i, h_i)`.
pub fn gfn_linear_combination(terms: &[(f64, Gfn)]) -> Result<Gfn> {
    if terms.is_empty() {
        return Err(Error::domain("linear combination of an empty list"));
    }
    let mut mode = 0.0;
    let mut spread = 0.0;
    for (i, (lambda, g)) in terms.iter().enumerate() {
        if *lambda == 0.0 || !lambda.is_finite() {
            return Err(Error::domain(format!("term {i}: coefficient must be finite and nonzero")));
        }
        let h = match g.precision {
            Precision::Finite(h) if h > 0.0 => h,
            p => {
                return Err(Error::domain(format!(
                    "term {i}: precision must lie in (0, inf), got {p}"
                )))
            }
        };
        mode += lambda * g.mode;
        spread += lambda.abs() / h.sqrt();
    }
    Gfn::new(mode, spread.powi(-2))
}

/// Possibility and necessity of `b` under the GFN.
pub fn possibility_necessity(g: &Gfn, b: &Interval) -> (f64, f64) {
    (g.possibility(b), g.necessity(b))
}

/// Gaussian fuzzy vector `exp(-1/2 (x-m)^T H (x-m))`, `H` symmetric PSD.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGfv", into = "RawGfv")]
pub struct Gfv {
    mode: Vector,
    precision: Matrix,
}

#[derive(Serialize, Deserialize)]
struct RawGfv {
    mode: Vec<f64>,
    precision: Vec<Vec<f64>>,
}

impl TryFrom<RawGfv> for Gfv {
    type Error = Error;
    fn try_from(raw: RawGfv) -> Result<Self> {
        let h = linalg::from_rows(&raw.precision, "precision")?;
        Gfv::new(Vector::from_vec(raw.mode), h)
    }
}

impl From<Gfv> for RawGfv {
    fn from(g: Gfv) -> Self {
        RawGfv {
            mode: g.mode.iter().copied().collect(),
            precision: linalg::to_rows(&g.precision),
        }
    }
}

impl Gfv {
    pub fn new(mode: Vector, precision: Matrix) -> Result<Self> {
        if mode.iter().any(|v| !v.is_finite()) {
            return Err(Error::validation("mode", "entries must be finite"));
        }
        if precision.nrows() != mode.len() {
            return Err(Error::validation(
                "precision",
                format!("dimension {} does not match mode length {}", precision.nrows(), mode.len()),
            ));
        }
        linalg::check_psd(&precision, "precision")?;
        Ok(Gfv { mode, precision })
    }

    pub fn dim(&self) -> usize {
        self.mode.len()
    }

    pub fn mode(&self) -> &Vector {
        &self.mode
    }

    pub fn precision(&self) -> &Matrix {
        &self.precision
    }

    pub fn ln_membership(&self, x: &Vector) -> f64 {
        let d = x - &self.mode;
        -0.5 * d.dot(&(&self.precision * &d))
    }

    pub fn membership(&self, x: &Vector) -> f64 {
        self.ln_membership(x).exp()
    }

    /// Reorders coordinates: new coordinate `i` is old coordinate `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Gfv> {
        linalg::check_permutation(perm, self.dim())?;
        Ok(Gfv {
            mode: linalg::permute_vector(&self.mode, perm),
            precision: linalg::permute_matrix(&self.precision, perm),
        })
    }
}

/// Normalized product of two GFVs with positive definite precisions.
pub fn gfv_product(g1: &Gfv, g2: &Gfv) -> Result<ProductResult<Gfv>> {
    if g1.dim() != g2.dim() {
        return Err(Error::domain("GFV dimensions differ"));
    }
    let f1 = SpdFactor::new(&g1.precision, "H1")?;
    let f2 = SpdFactor::new(&g2.precision, "H2")?;
    let h12 = &g1.precision + &g2.precision;
    let f12 = SpdFactor::new(&h12, "H1+H2")?;
    let rhs = &g1.precision * &g1.mode + &g2.precision * &g2.mode;
    let mode = f12.solve(&rhs);
    let spread = f1.inverse() + f2.inverse();
    let d = &g1.mode - &g2.mode;
    let ln_height = -0.5 * SpdFactor::new(&spread, "H1^-1+H2^-1")?.inv_quad_form(&d);
    Ok(ProductResult {
        product: Gfv {
            mode,
            precision: linalg::symmetrize(&h12),
        },
        height: ln_height.exp(),
        ln_height,
    })
}

/// Relative tolerance for a singular trailing block.
const SINGULAR_TOL: f64 = 1e-12;

/// Schur complement `H11 - H12 H22^{-1} H21` for the leading `keep` block.
///
/// A zero coupling block `H12` makes the projection structural (the
/// membership factorizes), which also covers cylindrical extensions where
/// `H22 = 0`.
pub(crate) fn schur_marginal_precision(h: &Matrix, keep: usize) -> Result<Matrix> {
    let b = linalg::split(h, keep);
    let scale = h.amax();
    if b.a12.amax() <= SINGULAR_TOL * scale {
        return Ok(b.a11);
    }
    if linalg::is_singular(&b.a22, SINGULAR_TOL) {
        return Err(Error::SingularBlock(format!(
            "H22 ({0}x{0}) is singular while H12 is nonzero",
            b.a22.nrows()
        )));
    }
    let f22 = SpdFactor::new(&b.a22, "H22")
        .map_err(|_| Error::SingularBlock("H22 is not positive definite".into()))?;
    let correction = &b.a12 * f22.solve_matrix(&b.a21);
    Ok(linalg::symmetrize(&(b.a11 - correction)))
}

pub(crate) fn check_keep(keep: usize, p: usize) -> Result<()> {
    if keep == 0 || keep > p {
        return Err(Error::domain(format!("keep must lie in 1..={p}, got {keep}")));
    }
    Ok(())
}

/// Projection onto the leading `keep` coordinates.
pub fn gfv_project(g: &Gfv, keep: usize) -> Result<Gfv> {
    check_keep(keep, g.dim())?;
    if keep == g.dim() {
        return Ok(g.clone());
    }
    let precision = schur_marginal_precision(&g.precision, keep)?;
    Ok(Gfv {
        mode: g.mode.rows(0, keep).into_owned(),
        precision,
    })
}

/// Cylindrical extension by `k` trailing coordinates.
pub fn gfv_cylindrical_extension(g: &Gfv, k: usize) -> Gfv {
    let mode = g.mode.clone().resize_vertically(g.dim() + k, 0.0);
    let precision = linalg::block_diag(&g.precision, &Matrix::zeros(k, k));
    Gfv { mode, precision }
}
