//! Test functions and forms on the punctured disc with closed-form `∂/∂z̄`.

use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// A function on the plane together with its `∂/∂z̄` derivative.
pub trait PlaneFunction: Sync {
    fn value(&self, w: Complex64) -> Complex64;
    fn dbar(&self, w: Complex64) -> Complex64;
}

/// `C^∞` step: 0 for `x ≤ 0`, 1 for `x ≥ 1`.
pub fn smoothstep(x: f64) -> f64 {
    let (a, b) = (bump_tail(x), bump_tail(1.0 - x));
    if a + b == 0.0 {
        return 0.0;
    }
    a / (a + b)
}

pub fn smoothstep_deriv(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    let (a, b) = (bump_tail(x), bump_tail(1.0 - x));
    let (da, db) = (a / (x * x), b / ((1.0 - x) * (1.0 - x)));
    (da * b + a * db) / ((a + b) * (a + b))
}

fn bump_tail(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        (-1.0 / x).exp()
    }
}

/// Coefficient frame of a `(0,1)`-form `η`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Frame {
    /// `η = F(|w|) dw̄`.
    Plain,
    /// `η = F(|w|) dw̄ / w̄`.
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
struct Balance {
    r1: f64,
    rm: f64,
    kappa: f64,
}

/// Radial form with profile `F(ρ) = |log ρ|^{-N} b(ρ)`, where `b` equals 1
/// near the puncture and vanishes for `ρ ≥ cutoff`.
///
/// The balanced variant multiplies `b` by `1 - κ u(ρ)` with `u` a step
/// between `r1` and `rm`, and `κ` chosen so that `∫ F dρ/ρ = 0`. Without
/// that the log-frame form has `Kη → const ≠ 0` at the puncture.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialTestForm {
    n: u32,
    cutoff: f64,
    frame: Frame,
    balance: Option<Balance>,
}

const TAPER_START: f64 = 0.25;

impl RadialTestForm {
    pub fn plain(n: u32) -> Result<Self> {
        Self::new(n, 0.45, Frame::Plain, None)
    }

    /// Log-frame form with vanishing residue, using `r1 = 0.1`, `rm = 0.2`.
    pub fn balanced(n: u32) -> Result<Self> {
        Self::new(n, 0.45, Frame::Log, Some((0.1, 0.2)))
    }

    pub fn new(n: u32, cutoff: f64, frame: Frame, balance: Option<(f64, f64)>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidConfig(format!("decay exponent N = {n} must be at least 2")));
        }
        if !(cutoff > TAPER_START && cutoff < 0.5) {
            return Err(Error::InvalidConfig(format!("cutoff {cutoff} must lie in ({TAPER_START}, 1/2)")));
        }
        let mut form = RadialTestForm { n, cutoff, frame, balance: None };
        if let Some((r1, rm)) = balance {
            if !(0.0 < r1 && r1 < rm && rm <= TAPER_START) {
                return Err(Error::InvalidConfig(format!("need 0 < r1 < rm ≤ {TAPER_START}")));
            }
            let nf = n as f64;
            let head = (-r1.ln()).powf(1.0 - nf) / (nf - 1.0);
            let a = log_measure_integral(r1, cutoff, |rho| form.taper(rho) * (-rho.ln()).powf(-nf));
            let b = log_measure_integral(r1, cutoff, |rho| {
                form.taper(rho) * smoothstep((rho - r1) / (rm - r1)) * (-rho.ln()).powf(-nf)
            });
            form.balance = Some(Balance { r1, rm, kappa: (head + a) / b });
        }
        Ok(form)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn kappa(&self) -> Option<f64> {
        self.balance.map(|b| b.kappa)
    }

    fn taper(&self, rho: f64) -> f64 {
        1.0 - smoothstep((rho - TAPER_START) / (self.cutoff - TAPER_START))
    }

    fn taper_deriv(&self, rho: f64) -> f64 {
        let w = self.cutoff - TAPER_START;
        -smoothstep_deriv((rho - TAPER_START) / w) / w
    }

    /// `b(ρ)` and `b'(ρ)`.
    fn shape(&self, rho: f64) -> (f64, f64) {
        let (c, dc) = (self.taper(rho), self.taper_deriv(rho));
        match self.balance {
            None => (c, dc),
            Some(Balance { r1, rm, kappa }) => {
                let w = rm - r1;
                let u = smoothstep((rho - r1) / w);
                let du = smoothstep_deriv((rho - r1) / w) / w;
                (c * (1.0 - kappa * u), dc * (1.0 - kappa * u) - c * kappa * du)
            }
        }
    }

    /// `F(ρ)`.
    pub fn profile(&self, rho: f64) -> f64 {
        if rho <= 0.0 || rho >= self.cutoff {
            return 0.0;
        }
        (-rho.ln()).powf(-(self.n as f64)) * self.shape(rho).0
    }

    /// `F'(ρ)`.
    pub fn profile_deriv(&self, rho: f64) -> f64 {
        if rho <= 0.0 || rho >= self.cutoff {
            return 0.0;
        }
        let nf = self.n as f64;
        let l = -rho.ln();
        let (b, db) = self.shape(rho);
        nf * l.powf(-nf - 1.0) * b / rho + l.powf(-nf) * db
    }
}

impl PlaneFunction for RadialTestForm {
    fn value(&self, w: Complex64) -> Complex64 {
        let f = Complex64::new(self.profile(w.norm()), 0.0);
        match self.frame {
            Frame::Plain => f,
            Frame::Log if f == Complex64::new(0.0, 0.0) => f,
            Frame::Log => f / w.conj(),
        }
    }

    fn dbar(&self, w: Complex64) -> Complex64 {
        let rho = w.norm();
        if rho <= 0.0 || rho >= self.cutoff {
            return Complex64::new(0.0, 0.0);
        }
        let radial = w * (self.profile_deriv(rho) / (2.0 * rho));
        match self.frame {
            Frame::Plain => radial,
            Frame::Log => {
                let wb = w.conj();
                radial / wb - self.profile(rho) / (wb * wb)
            }
        }
    }
}

/// `∫_a^b g(ρ) dρ/ρ` in the variable `log ρ`, by composite Gauss-Legendre.
fn log_measure_integral(a: f64, b: f64, g: impl Fn(f64) -> f64) -> f64 {
    let rule = GaussLegendre::new(NonZeroUsize::new(40).expect("nonzero"));
    let (la, lb) = (a.ln(), b.ln());
    let panels = 64;
    let h = (lb - la) / panels as f64;
    (0..panels)
        .map(|k| {
            let x0 = la + k as f64 * h;
            rule.integrate(x0, x0 + h, |x| g(x.exp()))
        })
        .sum()
}

/// `g(w) = exp(1 - 1/(1 - |w - c|²/a²))` inside the disc of radius `a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompactBump {
    pub center: (f64, f64),
    pub radius: f64,
}

impl Default for CompactBump {
    fn default() -> Self {
        CompactBump { center: (0.22, 0.05), radius: 0.15 }
    }
}

impl CompactBump {
    fn parts(&self, w: Complex64) -> Option<(f64, Complex64)> {
        let d = w - Complex64::new(self.center.0, self.center.1);
        let u = d.norm_sqr() / (self.radius * self.radius);
        (u < 1.0).then_some((u, d))
    }
}

impl PlaneFunction for CompactBump {
    fn value(&self, w: Complex64) -> Complex64 {
        match self.parts(w) {
            Some((u, _)) => Complex64::new((1.0 - 1.0 / (1.0 - u)).exp(), 0.0),
            None => Complex64::new(0.0, 0.0),
        }
    }

    fn dbar(&self, w: Complex64) -> Complex64 {
        match self.parts(w) {
            Some((u, d)) => {
                let phi = (1.0 - 1.0 / (1.0 - u)).exp();
                d * (-phi / ((1.0 - u) * (1.0 - u)) / (self.radius * self.radius))
            }
            None => Complex64::new(0.0, 0.0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Central difference for `∂/∂z̄ = (∂_x + i ∂_y)/2`.
    fn fd_dbar(f: &impl PlaneFunction, w: Complex64) -> Complex64 {
        let h = 1e-6;
        let dx = (f.value(w + h) - f.value(w - h)) / (2.0 * h);
        let i = Complex64::i();
        let dy = (f.value(w + i * h) - f.value(w - i * h)) / (2.0 * h);
        (dx + i * dy) / 2.0
    }

    #[test]
    fn smoothstep_shape() {
        assert_eq!(smoothstep(-1.0), 0.0);
        assert_eq!(smoothstep(2.0), 1.0);
        assert!((smoothstep(0.5) - 0.5).abs() < 1e-15);
        for x in [0.1, 0.3, 0.77] {
            let fd = (smoothstep(x + 1e-6) - smoothstep(x - 1e-6)) / 2e-6;
            assert!((fd - smoothstep_deriv(x)).abs() < 1e-6);
        }
    }

    #[test]
    fn balanced_residue_vanishes() {
        for n in [4, 6, 8] {
            let f = RadialTestForm::balanced(n).unwrap();
            // below r1 the profile is exactly |log ρ|^{-N}
            let head = (-(0.1f64).ln()).powf(1.0 - n as f64) / (n as f64 - 1.0);
            // midpoint rule in ρ on the remainder
            let steps = 200_000;
            let h = (0.45 - 0.1) / steps as f64;
            let tail: f64 = (0..steps)
                .map(|k| {
                    let rho = 0.1 + (k as f64 + 0.5) * h;
                    f.profile(rho) / rho * h
                })
                .sum();
            assert!((head + tail).abs() < 1e-9 * head, "N = {n}: {head} + {tail}");
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(RadialTestForm::plain(1).is_err());
        assert!(RadialTestForm::new(4, 0.6, Frame::Plain, None).is_err());
        assert!(RadialTestForm::new(4, 0.45, Frame::Log, Some((0.2, 0.1))).is_err());
    }

    #[test]
    fn log_decay_bound() {
        let f = RadialTestForm::plain(6).unwrap();
        for k in 3..30 {
            let rho = 2f64.powi(-k);
            assert!(f.profile(rho) <= (-rho.ln()).powi(-6) * (1.0 + 1e-12));
        }
    }

    proptest! {
        #[test]
        fn derivatives_match_finite_differences(r in 0.02f64..0.44, theta in 0.0f64..std::f64::consts::TAU, n in 2u32..9) {
            let w = Complex64::from_polar(r, theta);
            for f in [RadialTestForm::plain(n).unwrap(), RadialTestForm::balanced(n).unwrap()] {
                let exact = f.dbar(w);
                let fd = fd_dbar(&f, w);
                prop_assert!((exact - fd).norm() < 1e-6 * (1.0 + exact.norm()), "{} vs {}", exact, fd);
            }
            let g = CompactBump::default();
            let exact = g.dbar(w);
            prop_assert!((exact - fd_dbar(&g, w)).norm() < 1e-6 * (1.0 + exact.norm()));
        }
    }
}
