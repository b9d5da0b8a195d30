//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeMap;

use sp6::lfunc::{GammaFactorList, GammaKind};
use sp6::Weight;

/// Weight multiplicities of the U(3) irrep with highest weight `(a, b, c)`
/// by enumerating Gelfand–Tsetlin patterns.
pub fn gelfand_tsetlin_weights(hw: Weight) -> BTreeMap<Weight, i64> {
    let [a, b, c] = hw.0;
    let mut out = BTreeMap::new();
    for x in b..=a {
        for y in c..=b {
            for z in y..=x {
                let w = Weight::new(z, x + y - z, a + b + c - x - y);
                *out.entry(w).or_insert(0) += 1;
            }
        }
    }
    out
}

/// `dim` by the Weyl dimension formula.
pub fn weyl_dim(hw: Weight) -> u64 {
    let [a, b, c] = hw.0;
    ((a - b + 1) * (b - c + 1) * (a - c + 2) / 2) as u64
}

/// Order of the pole at `s = m` of the product of Γ-factors, from the
/// poles of Γ at the nonpositive integers.
pub fn count_poles(list: &GammaFactorList, m: i64) -> u64 {
    list.factors()
        .iter()
        .map(|f| {
            let x = m + f.shift;
            let pole = match f.kind {
                // Γ_C(x) = 2(2π)^{-x} Γ(x)
                GammaKind::C => x <= 0,
                // Γ_R(x) = π^{-x/2} Γ(x/2)
                GammaKind::R => x <= 0 && x % 2 == 0,
            };
            if pole {
                f.exponent
            } else {
                0
            }
        })
        .sum()
}

/// All dominant weights `a ≥ b ≥ c` with entries in `[lo, hi]`.
pub fn dominant_weights(lo: i64, hi: i64) -> Vec<Weight> {
    let mut out = Vec::new();
    for a in lo..=hi {
        for b in lo..=a {
            for c in lo..=b {
                out.push(Weight::new(a, b, c));
            }
        }
    }
    out
}

/// Prints the one-line verdict for an acceptance criterion and fails the
/// test if it does not hold.
pub fn verdict(n: usize, title: &str, ok: bool, detail: &str) {
    let status = if ok { "PASS" } else { "FAIL" };
    println!("criterion {n:>2} [{status}] {title}: {detail}");
    assert!(ok, "criterion {n} failed: {title}: {detail}");
}
