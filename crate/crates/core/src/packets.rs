//! Discrete-series L-packets of `Sp6(R)` with fixed infinitesimal character.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::{all_roots, coset_representatives, pairing, positive_noncompact_roots, rho, Weight};

/// `2δ_K` for the standard compact positive system.
const TWO_DELTA_K: Weight = Weight::new(2, 0, -2);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DiscreteSeriesDescriptor {
    /// Position `1..=8` in the fixed list of coset representatives.
    pub index: usize,
    /// Harish-Chandra parameter `Λ = w_i(λ + ρ)`.
    pub hc_param: Weight,
    /// Highest weight of the minimal `K`-type, `Λ + w_i ρ - 2δ_K`.
    pub min_ktype: Weight,
    pub hodge: (usize, usize),
}

/// The eight members of the packet attached to a dominant weight `λ`,
/// ordered by representative index.
pub fn packet(lambda: Weight) -> Result<Vec<DiscreteSeriesDescriptor>> {
    if !lambda.is_sp6_dominant() {
        return Err(Error::NotDominant(lambda));
    }
    let shifted = lambda + rho();
    coset_representatives()
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let hc_param = w.apply(&shifted);
            Ok(DiscreteSeriesDescriptor {
                index: i + 1,
                hc_param,
                min_ktype: hc_param + w.apply(&rho()) - TWO_DELTA_K,
                hodge: hodge_type(hc_param)?,
            })
        })
        .collect()
}

/// `(p, q)` with `p` the number of positive noncompact roots on which `Λ`
/// is positive.
pub fn hodge_type(hc_param: Weight) -> Result<(usize, usize)> {
    if all_roots().iter().any(|r| pairing(&hc_param, &r.weight) == 0) {
        return Err(Error::Singular(hc_param));
    }
    let p = positive_noncompact_roots().iter().filter(|r| pairing(&hc_param, &r.weight) > 0).count();
    Ok((p, 6 - p))
}
