//! Numerical Bochner–Martinelli operator on the punctured disc `Δ*_{1/2}`
//! (one complex variable).
//!
//! Working convention: for a `(0,1)`-form `η = f dw̄`,
//!
//! ```text
//! Kη(z) = (1/π) ∫_{|w|<1/2} f(w) / (z - w) dA(w),
//! ```
//!
//! normalized so that `K(∂̄g) = g` for compactly supported `g` (the
//! Cauchy–Pompeiu formula). Forms are assumed supported in `|w| < 1/2`.
//!
//! The integral is split with a smooth partition of unity around `w = z`
//! of radius `|z|/2`. The piece near `z` is done in polar coordinates
//! centred at `z`, where the Jacobian cancels the `1/|z-w|` singularity.
//! The rest is done in polar coordinates about the puncture with
//! Gauss–Legendre panels in `t = -log ρ` (one per factor of √2 in `ρ`) and
//! the trapezoid rule in angle, truncated at `ρ = ε`.

mod forms;

pub use forms::{smoothstep, smoothstep_deriv, CompactBump, Frame, PlaneFunction, RadialTestForm};

use std::f64::consts::{LN_2, PI};
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Width of the far panels in `t = -log ρ` (half an octave).
const PANEL_WIDTH: f64 = LN_2 / 2.0;
/// Radial panels across the disc around `z`.
const NEAR_PANELS: usize = 4;
/// Subdivision of far panels meeting the annulus swept by that disc.
const BAND_SPLIT: usize = 4;

/// Outer radius of the disc.
pub const DISC_RADIUS: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureConfig {
    /// Gauss–Legendre nodes per log-dyadic panel (and along the near disc).
    pub radial_points: usize,
    /// Trapezoid nodes in each angular variable.
    pub angular_points: usize,
    /// Inner truncation radius.
    pub epsilon: f64,
    /// Absolute tolerance for level-to-level agreement.
    pub tolerance: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { radial_points: 16, angular_points: 96, epsilon: 1e-8, tolerance: 1e-3 }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if self.radial_points < 4 || self.angular_points < 4 {
            return Err(Error::InvalidConfig("point counts must be at least 4".into()));
        }
        if !(self.epsilon > 0.0 && self.epsilon < DISC_RADIUS / 4.0) {
            return Err(Error::InvalidConfig(format!("epsilon {} out of range", self.epsilon)));
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(Error::InvalidConfig("tolerance must be positive".into()));
        }
        Ok(())
    }

    /// Doubles both point counts.
    pub fn refined(&self) -> Self {
        QuadratureConfig { radial_points: 2 * self.radial_points, angular_points: 2 * self.angular_points, ..*self }
    }

    /// `self` refined `k` times.
    pub fn level(&self, k: usize) -> Self {
        (0..k).fold(*self, |c, _| c.refined())
    }

    fn admits(&self, z: Complex64) -> bool {
        let r = z.norm();
        r > 2.0 * self.epsilon && r < DISC_RADIUS
    }
}

fn gauss_rule(n: usize) -> Vec<(f64, f64)> {
    GaussLegendre::new(NonZeroUsize::new(n).expect("validated point count")).as_node_weight_pairs().to_vec()
}

/// Breakpoints in `t = -log ρ`: the dyadic grid plus the edges of the
/// annulus swept by the near disc, which is additionally subdivided.
fn far_panels(z: Complex64, cfg: &QuadratureConfig) -> Vec<(f64, f64)> {
    let t_min = -DISC_RADIUS.ln();
    let t_max = -cfg.epsilon.ln();
    let r = z.norm();
    let mut cuts: Vec<f64> = (0..)
        .map(|k| t_min + k as f64 * PANEL_WIDTH)
        .take_while(|&t| t < t_max)
        .chain([t_max, -(1.5 * r).ln(), -r.ln(), -(0.5 * r).ln()])
        .filter(|t| (t_min..=t_max).contains(t))
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    let (band_lo, band_hi) = (-(1.5 * r).ln(), -(0.5 * r).ln());
    let mut panels = Vec::new();
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let split = if a >= band_lo - 1e-12 && b <= band_hi + 1e-12 { BAND_SPLIT } else { 1 };
        let h = (b - a) / split as f64;
        panels.extend((0..split).map(|k| (a + k as f64 * h, a + (k + 1) as f64 * h)));
    }
    panels
}

/// One quadrature level of `Kf(z)`, without a convergence check.
pub fn bm_apply_level<F>(f: &F, z: Complex64, cfg: &QuadratureConfig) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64 + Sync + ?Sized,
{
    cfg.validate()?;
    if !cfg.admits(z) {
        return Err(Error::TruncationZone { re: z.re, im: z.im });
    }
    let rule = gauss_rule(cfg.radial_points);
    let m = cfg.angular_points;
    let dphi = 2.0 * PI / m as f64;
    let near_radius = z.norm() / 2.0;
    let cutoff = |s: f64| 1.0 - smoothstep(s / near_radius);

    // near part: w = z + s e^{iφ}, f(w)/(z - w) · s ds dφ = -f(w) e^{-iφ} ds dφ
    let mut near = Complex64::new(0.0, 0.0);
    let h = near_radius / NEAR_PANELS as f64;
    for p in 0..NEAR_PANELS {
        let s0 = p as f64 * h;
        for &(x, wt) in &rule {
            let s = s0 + 0.5 * h * (x + 1.0);
            let ws = 0.5 * h * wt * cutoff(s);
            if ws == 0.0 {
                continue;
            }
            let mut ring = Complex64::new(0.0, 0.0);
            for j in 0..m {
                let e = Complex64::from_polar(1.0, j as f64 * dphi);
                ring -= f(z + e * s) * e.conj();
            }
            near += ring * (ws * dphi);
        }
    }

    // far part: w = e^{-t} e^{iθ}, dA = ρ² dt dθ
    let theta0 = z.arg() + 0.5 * dphi;
    let mut far = Complex64::new(0.0, 0.0);
    for (a, b) in far_panels(z, cfg) {
        for &(x, wt) in &rule {
            let t = 0.5 * (a + b) + 0.5 * (b - a) * x;
            let rho = (-t).exp();
            let mut ring = Complex64::new(0.0, 0.0);
            for j in 0..m {
                let w = Complex64::from_polar(rho, theta0 + j as f64 * dphi);
                let weight = 1.0 - cutoff((w - z).norm());
                if weight == 0.0 {
                    continue;
                }
                let v = f(w);
                if v != Complex64::new(0.0, 0.0) {
                    ring += v / (z - w) * weight;
                }
            }
            far += ring * (0.5 * (b - a) * wt * rho * rho * dphi);
        }
    }
    Ok((near + far) / PI)
}

/// `Kf(z)` with a convergence check: the value at `cfg` and at
/// `cfg.refined()` must agree to `cfg.tolerance`. Returns the refined value.
pub fn bm_apply_fn<F>(f: &F, z: Complex64, cfg: &QuadratureConfig) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64 + Sync + ?Sized,
{
    let coarse = bm_apply_level(f, z, cfg)?;
    let fine = bm_apply_level(f, z, &cfg.refined())?;
    let gap = (coarse - fine).norm();
    if gap.is_nan() || gap > cfg.tolerance {
        return Err(Error::NotConverged(format!(
            "at z = {z}: {coarse} with ({}, {}) points vs {fine} with ({}, {}), gap {gap:.3e} > {:.1e}",
            cfg.radial_points,
            cfg.angular_points,
            2 * cfg.radial_points,
            2 * cfg.angular_points,
            cfg.tolerance
        )));
    }
    Ok(fine)
}

/// `K` applied to the `(0,1)`-form whose `dw̄` coefficient is `f.value`.
pub fn bm_apply<F: PlaneFunction + ?Sized>(f: &F, z: Complex64, cfg: &QuadratureConfig) -> Result<Complex64> {
    bm_apply_fn(&|w| f.value(w), z, cfg)
}

/// `n` sample points on the rings `|z| ∈ {0.1, 0.2, 0.3, 0.4}`.
pub fn default_grid(n: usize) -> Vec<Complex64> {
    let per_ring = n.div_ceil(4).max(1);
    (0..n)
        .map(|k| {
            let r = 0.1 * (1 + k % 4) as f64;
            let theta = PI / 8.0 + 2.0 * PI * (k / 4) as f64 / per_ring as f64;
            Complex64::from_polar(r, theta)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    /// Maximum of `|∂̄Kf + K∂̄f - f|` over the admissible grid points.
    pub max_residual: f64,
    pub points: usize,
    /// Grid points skipped for lying outside `2ε < |z| < 1/2`.
    pub skipped: usize,
}

/// Homotopy defect `|∂̄(Kf) + K(∂̄f) - f|` at one quadrature level.
///
/// For a function `f` the first term is absent. For a `(0,1)`-form
/// `f dw̄` the second term is absent (there are no `(0,2)`-forms in one
/// variable) and `∂̄(Kη) = K(∂̄f)` because `K` is convolution with
/// `1/(πu)`. Both cases reduce to `|K(∂̄f) - f|`.
pub fn homotopy_residual<F: PlaneFunction + ?Sized>(f: &F, grid: &[Complex64], cfg: &QuadratureConfig) -> Result<ResidualReport> {
    cfg.validate()?;
    let (inside, outside): (Vec<Complex64>, Vec<Complex64>) = grid.iter().partition(|z| cfg.admits(**z));
    let dbar = |w: Complex64| f.dbar(w);
    let residuals: Result<Vec<f64>> =
        inside.par_iter().map(|&z| Ok((bm_apply_level(&dbar, z, cfg)? - f.value(z)).norm())).collect();
    let max_residual = residuals?.into_iter().fold(0.0, f64::max);
    Ok(ResidualReport { max_residual, points: inside.len(), skipped: outside.len() })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecaySample {
    pub rho: f64,
    /// `max_θ |Kη(ρ e^{iθ})|`.
    pub max_abs: f64,
    /// `max_abs · |log ρ|^{N-1}`; roughly constant when the decay rate is `N-1`.
    pub scaled: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayFit {
    pub n: u32,
    /// Least-squares slope of `-log|Kη|` against `log|log ρ|`.
    pub exponent: f64,
    pub samples: Vec<DecaySample>,
}

/// Fits `|Kη(z)| ≈ C |log|z||^{-e}` over the given radii.
pub fn decay_fit(form: &RadialTestForm, radii: &[f64], angles: usize, cfg: &QuadratureConfig) -> Result<DecayFit> {
    if radii.len() < 2 || angles == 0 {
        return Err(Error::InvalidConfig("decay fit needs at least two radii and one angle".into()));
    }
    let samples: Result<Vec<DecaySample>> = radii
        .par_iter()
        .map(|&rho| {
            let mut max_abs = 0.0f64;
            for j in 0..angles {
                let z = Complex64::from_polar(rho, 0.3 + 2.0 * PI * j as f64 / angles as f64);
                max_abs = max_abs.max(bm_apply(form, z, cfg)?.norm());
            }
            let l = -rho.ln();
            Ok(DecaySample { rho, max_abs, scaled: max_abs * l.powi(form.n() as i32 - 1) })
        })
        .collect();
    let samples = samples?;
    let xs: Vec<f64> = samples.iter().map(|s| (-s.rho.ln()).ln()).collect();
    let ys: Vec<f64> = samples.iter().map(|s| -s.max_abs.ln()).collect();
    let k = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / k, ys.iter().sum::<f64>() / k);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(DecayFit { n: form.n(), exponent: sxy / sxx, samples })
}

/// Radii `2^{-4}, ..., 2^{-10}` used for decay sweeps.
pub fn decay_radii() -> Vec<f64> {
    (4..=10).map(|k| 2f64.powi(-k)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelResidual {
    pub radial_points: usize,
    pub angular_points: usize,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub convention: String,
    pub n: u32,
    pub grid_points: usize,
    pub skipped: usize,
    /// Homotopy residuals for a compact bump, per refinement level.
    pub bump: Vec<LevelResidual>,
    /// Homotopy residuals for the plain `N`-decay form, per refinement level.
    pub form: Vec<LevelResidual>,
    /// Ratios of successive `form` residuals.
    pub form_ratios: Vec<f64>,
    pub decay: DecayFit,
}

/// Coarse starting point for refinement studies.
pub fn coarse_config(tolerance: f64) -> QuadratureConfig {
    QuadratureConfig { radial_points: 4, angular_points: 12, tolerance, ..QuadratureConfig::default() }
}

/// Convergence report: residuals at `levels` successive refinements of
/// [`coarse_config`] and a decay fit at the default budget.
pub fn verify(n: u32, grid: usize, levels: usize, tolerance: f64) -> Result<VerifyReport> {
    if levels == 0 || grid == 0 {
        return Err(Error::InvalidConfig("need at least one level and one grid point".into()));
    }
    let points = default_grid(grid);
    let bump = CompactBump::default();
    let form = RadialTestForm::plain(n)?;
    let base = coarse_config(tolerance);
    let mut bump_levels = Vec::new();
    let mut form_levels = Vec::new();
    let mut skipped = 0;
    for k in 0..levels {
        let cfg = base.level(k);
        let rb = homotopy_residual(&bump, &points, &cfg)?;
        let rf = homotopy_residual(&form, &points, &cfg)?;
        skipped = rb.skipped;
        let entry = |r: f64| LevelResidual { radial_points: cfg.radial_points, angular_points: cfg.angular_points, residual: r };
        bump_levels.push(entry(rb.max_residual));
        form_levels.push(entry(rf.max_residual));
    }
    let form_ratios = form_levels.windows(2).map(|w| w[1].residual / w[0].residual).collect();
    let cfg = QuadratureConfig { tolerance, ..QuadratureConfig::default() };
    let decay = decay_fit(&RadialTestForm::balanced(n)?, &decay_radii(), 4, &cfg)?;
    Ok(VerifyReport {
        convention: "K(f dw̄)(z) = (1/π) ∫ f(w)/(z-w) dA(w), so that K∂̄g = g".into(),
        n,
        grid_points: points.len(),
        skipped,
        bump: bump_levels,
        form: form_levels,
        form_ratios,
        decay,
    })
}
