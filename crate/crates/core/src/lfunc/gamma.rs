//! Archimedean Γ-factors attached to Hodge numbers in weight 6.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};

/// `π^{-s/2} Γ(s/2)`.
pub fn gamma_r(s: f64) -> f64 {
    PI.powf(-s / 2.0) * gamma(s / 2.0)
}

/// `2 (2π)^{-s} Γ(s)`.
pub fn gamma_c(s: f64) -> f64 {
    2.0 * (2.0 * PI).powf(-s) * gamma(s)
}

/// Hodge numbers `h^{p,6-p}` together with the split `h^{3,3} = h^{3,+} + h^{3,-}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawHodge")]
pub struct HodgeNumbers {
    /// `h[p] = h^{p,6-p}`.
    pub h: [u64; 7],
    pub h3plus: u64,
    pub h3minus: u64,
}

#[derive(Deserialize)]
struct RawHodge {
    h: [u64; 7],
    h3plus: u64,
    h3minus: u64,
}

impl TryFrom<RawHodge> for HodgeNumbers {
    type Error = Error;
    fn try_from(r: RawHodge) -> Result<Self> {
        HodgeNumbers::new(r.h, r.h3plus, r.h3minus)
    }
}

impl HodgeNumbers {
    pub fn new(h: [u64; 7], h3plus: u64, h3minus: u64) -> Result<Self> {
        for p in 0..3 {
            if h[p] != h[6 - p] {
                return Err(Error::InvalidHodge(format!("h^{{{p},{}}} = {} but h^{{{},{p}}} = {}", 6 - p, h[p], 6 - p, h[6 - p])));
            }
        }
        if h3plus + h3minus != h[3] {
            return Err(Error::InvalidHodge(format!("h3plus + h3minus = {} but h^{{3,3}} = {}", h3plus + h3minus, h[3])));
        }
        Ok(HodgeNumbers { h, h3plus, h3minus })
    }

    pub fn zero() -> Self {
        HodgeNumbers { h: [0; 7], h3plus: 0, h3minus: 0 }
    }

    /// Hodge numbers from the three values `h^{0,6}, h^{1,5}, h^{2,4}`
    /// and the split of `h^{3,3}`.
    pub fn from_half(low: [u64; 3], h3plus: u64, h3minus: u64) -> Self {
        let [a, b, c] = low;
        HodgeNumbers { h: [a, b, c, h3plus + h3minus, c, b, a], h3plus, h3minus }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GammaKind {
    R,
    C,
}

/// `Γ_kind(s + shift)^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaFactor {
    pub kind: GammaKind,
    pub shift: i64,
    pub exponent: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaFactorList(pub Vec<GammaFactor>);

impl GammaFactorList {
    pub fn factors(&self) -> &[GammaFactor] {
        &self.0
    }

    pub fn evaluate(&self, s: f64) -> f64 {
        self.0
            .iter()
            .map(|f| {
                let g = match f.kind {
                    GammaKind::R => gamma_r(s + f.shift as f64),
                    GammaKind::C => gamma_c(s + f.shift as f64),
                };
                g.powi(f.exponent as i32)
            })
            .product()
    }
}

impl fmt::Display for GammaFactorList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .filter(|g| g.exponent > 0)
            .map(|g| {
                let arg = match g.shift {
                    0 => "s".to_string(),
                    k if k > 0 => format!("s+{k}"),
                    k => format!("s{k}"),
                };
                let kind = match g.kind {
                    GammaKind::R => "Γ_R",
                    GammaKind::C => "Γ_C",
                };
                if g.exponent == 1 {
                    format!("{kind}({arg})")
                } else {
                    format!("{kind}({arg})^{}", g.exponent)
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// `∏_{p<q} Γ_C(s-p)^{h^{p,q}} · Γ_R(s-3)^{h^{3,+}} Γ_R(s-2)^{h^{3,-}}`.
pub fn gamma_factor(h: &HodgeNumbers) -> GammaFactorList {
    let mut out: Vec<GammaFactor> =
        (0..3).map(|p| GammaFactor { kind: GammaKind::C, shift: -(p as i64), exponent: h.h[p] }).collect();
    out.push(GammaFactor { kind: GammaKind::R, shift: -3, exponent: h.h3plus });
    out.push(GammaFactor { kind: GammaKind::R, shift: -2, exponent: h.h3minus });
    GammaFactorList(out)
}

/// Order of the pole of the Γ-factor at the integer `m`.
pub fn pole_order(h: &HodgeNumbers, m: i64) -> u64 {
    let complex: u64 = (0..3).filter(|&p| m <= p as i64).map(|p| h.h[p]).sum();
    let real = if m > 3 {
        0
    } else if (m - 3).rem_euclid(2) == 0 {
        h.h3plus
    } else {
        h.h3minus
    };
    complex + real
}
