//! Independent reference computations. Nothing here calls the closed forms
//! under test; they rebuild each quantity from its definition by quadrature
//! or direct enumeration.

#![allow(dead_code)]

use std::f64::consts::PI;

use erfs::randomset::SampleStream;

/// Standard normal cdf from the series `1/2 + phi(z) sum z^(2n+1) / (2n+1)!!`
/// (all terms positive for z > 0), reflected for negative arguments.
pub fn phi_cdf(z: f64) -> f64 {
    if z < 0.0 {
        return 1.0 - phi_cdf(-z);
    }
    if z > 12.0 {
        return 1.0;
    }
    let mut term = z;
    let mut sum = z;
    let mut n = 1.0;
    while term > 1e-18 * sum {
        term *= z * z / (2.0 * n + 1.0);
        sum += term;
        n += 1.0;
    }
    0.5 + phi_pdf(z) * sum
}

pub fn phi_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * PI).sqrt()
}

/// Adaptive Simpson quadrature.
pub fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn rec<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    rec(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// Expectation of `f(M)` for `M ~ N(mu, s^2)`, by adaptive quadrature over
/// +-12 standard deviations split at `breaks` (points where `f` has kinks).
pub fn gaussian_expectation<F: Fn(f64) -> f64>(mu: f64, s: f64, breaks: &[f64], f: F) -> f64 {
    if s == 0.0 {
        return f(mu);
    }
    // Unit-sd pieces keep the adaptive rule from accepting a coarse first
    // estimate when the integrand happens to vanish at its probe points.
    let mut cuts: Vec<f64> = (-12..=12).map(|k| mu + k as f64 * s).collect();
    cuts.extend(breaks.iter().copied().filter(|b| (mu - 12.0 * s..=mu + 12.0 * s).contains(b)));
    cuts.sort_by(f64::total_cmp);
    let g = |m: f64| f(m) * phi_pdf((m - mu) / s) / s;
    cuts.windows(2).map(|w| simpson(&g, w[0], w[1], 1e-13)).sum()
}

/// Membership of `GFN(m, h)` for finite positive `h`.
pub fn gfn_mu(m: f64, h: f64, x: f64) -> f64 {
    (-0.5 * h * (x - m).powi(2)).exp()
}

/// Possibility of `[lo, hi]` under `GFN(m, h)`: sup of the membership.
pub fn gfn_possibility(m: f64, h: f64, lo: f64, hi: f64) -> f64 {
    gfn_mu(m, h, m.clamp(lo, hi))
}

/// Necessity of `[lo, hi]`: one minus the sup over the complement.
pub fn gfn_necessity(m: f64, h: f64, lo: f64, hi: f64) -> f64 {
    if m < lo || m > hi {
        return 0.0;
    }
    let left = if lo.is_finite() { gfn_mu(m, h, lo) } else { 0.0 };
    let right = if hi.is_finite() { gfn_mu(m, h, hi) } else { 0.0 };
    1.0 - left.max(right)
}

/// GRFN contour as `E[GFN(M, h)(x)]`.
pub fn grfn_contour(mu: f64, s2: f64, h: f64, x: f64) -> f64 {
    gaussian_expectation(mu, s2.sqrt(), &[x], |m| gfn_mu(m, h, x))
}

/// GRFN belief and plausibility of `[lo, hi]` as expected necessity and
/// possibility over the random mode.
pub fn grfn_bel_pl(mu: f64, s2: f64, h: f64, lo: f64, hi: f64) -> (f64, f64) {
    let mut breaks = vec![];
    for v in [lo, hi, 0.5 * lo + 0.5 * hi] {
        if v.is_finite() {
            breaks.push(v);
        }
    }
    let s = s2.sqrt();
    (
        gaussian_expectation(mu, s, &breaks, |m| gfn_necessity(m, h, lo, hi)),
        gaussian_expectation(mu, s, &breaks, |m| gfn_possibility(m, h, lo, hi)),
    )
}

/// Lower and upper expectations as integrals of the cut endpoints over
/// alpha. With alpha = exp(-v^2) the cut radius `sqrt(-2 ln alpha / h)`
/// becomes `sqrt(2/h) v` and d alpha = 2 v exp(-v^2) dv.
pub fn expectation_by_cuts(mu: f64, h: f64) -> (f64, f64) {
    let f = |v: f64| (2.0 / h).sqrt() * v * 2.0 * v * (-v * v).exp();
    let radius: f64 = (0..40).map(|k| simpson(&f, k as f64, k as f64 + 1.0, 1e-15)).sum();
    (mu - radius, mu + radius)
}

/// Normalized product of two GFNs by brute force over a fine grid:
/// returns (argmax, height) of the pointwise product.
pub fn gfn_product_by_grid(m1: f64, h1: f64, m2: f64, h2: f64) -> (f64, f64) {
    let (lo, hi) = (m1.min(m2) - 1.0, m1.max(m2) + 1.0);
    let n = 2_000_000;
    let mut best = (lo, 0.0);
    for i in 0..=n {
        let x = lo + (hi - lo) * i as f64 / n as f64;
        let v = gfn_mu(m1, h1, x) * gfn_mu(m2, h2, x);
        if v > best.1 {
            best = (x, v);
        }
    }
    best
}

/// Moments of `(M1, M2)` under the prior weighted by
/// `exp(-hbar (m1 - m2)^2 / 2)`, by nested quadrature. Returns
/// (mean weight, mean1, mean2, var1, var2, correlation).
pub fn soft_conditioning_moments(
    mu1: f64,
    s1: f64,
    mu2: f64,
    s2: f64,
    hbar: f64,
) -> (f64, f64, f64, f64, f64, f64) {
    let mom = |f: &dyn Fn(f64, f64) -> f64| {
        gaussian_expectation(mu1, s1, &[], |a| {
            gaussian_expectation(mu2, s2, &[], |b| (-0.5 * hbar * (a - b).powi(2)).exp() * f(a, b))
        })
    };
    let z = mom(&|_, _| 1.0);
    let e1 = mom(&|a, _| a) / z;
    let e2 = mom(&|_, b| b) / z;
    let v1 = mom(&|a, _| (a - e1).powi(2)) / z;
    let v2 = mom(&|_, b| (b - e2).powi(2)) / z;
    let c = mom(&|a, b| (a - e1) * (b - e2)) / z;
    (z, e1, e2, v1, v2, c / (v1 * v2).sqrt())
}

/// Determinant-form degree of conflict from the conditional parameters.
pub fn determinant_kappa(mu1: f64, s1sq: f64, mu2: f64, s2sq: f64, hbar: f64) -> f64 {
    let d = 1.0 + hbar * (s1sq + s2sq);
    1.0 - (-0.5 * hbar * (mu1 - mu2).powi(2) / d).exp() / d.sqrt()
}

/// Lower and upper cdf of the triangular random fuzzy number by
/// integrating the Gaussian cdf at the cut endpoints over alpha.
pub fn triangular_cdf_by_cuts(mu: f64, sigma: f64, a: f64, x: f64) -> (f64, f64) {
    let bel = simpson(&|al: f64| phi_cdf((x - a * (1.0 - al) - mu) / sigma), 0.0, 1.0, 1e-14);
    let pl = simpson(&|al: f64| phi_cdf((x + a * (1.0 - al) - mu) / sigma), 0.0, 1.0, 1e-14);
    (bel, pl)
}

/// Combined contour of two Gaussian rays, `P(X1' <= x <= X2')` by quadrature of the
/// joint density restricted to `x1 <= x <= x2`, divided by `P(X1 <= X2)`.
pub fn ray_combined_contour(mu1: f64, s1: f64, mu2: f64, s2: f64, x: f64) -> f64 {
    let num = gaussian_expectation(mu1, s1, &[x], |a| if a <= x { 1.0 } else { 0.0 })
        * gaussian_expectation(mu2, s2, &[x], |b| if b >= x { 1.0 } else { 0.0 });
    let den = gaussian_expectation(mu1, s1, &[], |a| 1.0 - phi_cdf((a - mu2) / s2));
    num / den
}

/// Deterministic parameter generator for randomized configurations.
pub struct Params {
    rng: SampleStream,
}

impl Params {
    pub fn new(tag: u32) -> Self {
        Params { rng: SampleStream::new(0xacce_97, 0, tag) }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.rng.uniform()
    }
}
