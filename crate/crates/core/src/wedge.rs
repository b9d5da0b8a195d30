//! The spaces `Λ^p p+ ⊗ Λ^q p-` with the adjoint action of `k_C`.
//!
//! Basis monomials are pairs of subsets of the six positive (resp. negative)
//! noncompact roots, always written in the fixed enumeration
//! `2e1, 2e2, 2e3, e1+e2, e1+e3, e2+e3`. Coefficients carry the permutation
//! sign needed to bring a wedge product into that order.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matlie::{bracket, root_vector, GaussRat, Generator, LieBasis};
use crate::rootsys::{all_roots, positive_noncompact_roots, Root, Weight};
use crate::uchar::wedge_tensor_char;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Side {
    Pos,
    Neg,
}

/// A basis monomial `X_{β_1} ∧ ... ∧ X_{β_p} ⊗ X_{-γ_1} ∧ ... ∧ X_{-γ_q}`,
/// stored as two bitmasks over the root enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WedgeBasisIndex {
    pos: u8,
    neg: u8,
}

impl WedgeBasisIndex {
    /// Builds an index from strictly increasing enumeration positions
    /// (`0..6`) on each side.
    pub fn new(pos: &[usize], neg: &[usize]) -> Result<Self> {
        Ok(WedgeBasisIndex { pos: mask_of(pos)?, neg: mask_of(neg)? })
    }

    /// Builds an index from roots listed in any order, returning the sign
    /// of the sorting permutation. Positive-side roots must lie in `p+`,
    /// negative-side roots in `p-`.
    pub fn from_roots(pos: &[Weight], neg: &[Weight]) -> Result<(Self, i64)> {
        let (pos_idx, s1) = sorted_positions(pos, 1)?;
        let (neg_idx, s2) = sorted_positions(neg, -1)?;
        Ok((WedgeBasisIndex::new(&pos_idx, &neg_idx)?, s1 * s2))
    }

    pub fn grading(&self) -> (usize, usize) {
        (self.pos.count_ones() as usize, self.neg.count_ones() as usize)
    }

    pub fn pos_positions(&self) -> Vec<usize> {
        bits(self.pos)
    }

    pub fn neg_positions(&self) -> Vec<usize> {
        bits(self.neg)
    }

    pub fn pos_roots(&self) -> Vec<Root> {
        let r = positive_noncompact_roots();
        bits(self.pos).into_iter().map(|i| r[i]).collect()
    }

    pub fn neg_roots(&self) -> Vec<Root> {
        let r = positive_noncompact_roots();
        bits(self.neg).into_iter().map(|i| r[i].neg()).collect()
    }

    /// Sum of the root labels.
    pub fn weight(&self) -> Weight {
        self.pos_roots().iter().chain(self.neg_roots().iter()).fold(Weight::ZERO, |acc, r| acc + r.weight)
    }

    fn side(&self, s: Side) -> u8 {
        match s {
            Side::Pos => self.pos,
            Side::Neg => self.neg,
        }
    }

    fn with_side(&self, s: Side, mask: u8) -> Self {
        match s {
            Side::Pos => WedgeBasisIndex { pos: mask, neg: self.neg },
            Side::Neg => WedgeBasisIndex { pos: self.pos, neg: mask },
        }
    }

    /// All monomials of bidegree `(p, q)`.
    pub fn all(p: usize, q: usize) -> Vec<Self> {
        let masks = |k: usize| (0u8..64).filter(move |m| m.count_ones() as usize == k);
        masks(p).flat_map(|pm| masks(q).map(move |nm| WedgeBasisIndex { pos: pm, neg: nm })).collect()
    }
}

fn bits(mask: u8) -> Vec<usize> {
    (0..6).filter(|i| mask >> i & 1 == 1).collect()
}

fn mask_of(idx: &[usize]) -> Result<u8> {
    if idx.windows(2).any(|w| w[0] >= w[1]) || idx.iter().any(|&i| i >= 6) {
        return Err(Error::MalformedIndex(format!("{idx:?} is not a strictly increasing subset of 0..6")));
    }
    Ok(idx.iter().fold(0u8, |m, &i| m | 1 << i))
}

fn sorted_positions(roots: &[Weight], sign: i64) -> Result<(Vec<usize>, i64)> {
    let enumeration = positive_noncompact_roots();
    let mut idx = Vec::with_capacity(roots.len());
    for w in roots {
        let pos = enumeration
            .iter()
            .position(|r| sign * r.weight == *w)
            .ok_or_else(|| Error::MalformedIndex(format!("{w} is not a root of this side")))?;
        idx.push(pos);
    }
    let mut s = 1;
    for i in 0..idx.len() {
        for j in 0..idx.len() - 1 - i {
            if idx[j] > idx[j + 1] {
                idx.swap(j, j + 1);
                s = -s;
            }
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::MalformedIndex("repeated root in a wedge product".into()));
    }
    Ok((idx, s))
}

/// Element of `Λ^p p+ ⊗ Λ^q p-`.
#[derive(Clone, PartialEq, Eq)]
pub struct WedgeVector {
    grading: (usize, usize),
    coeffs: BTreeMap<WedgeBasisIndex, GaussRat>,
}

impl WedgeVector {
    pub fn zero(p: usize, q: usize) -> Self {
        WedgeVector { grading: (p, q), coeffs: BTreeMap::new() }
    }

    pub fn basis_vector(idx: WedgeBasisIndex) -> Self {
        let mut v = Self::zero(idx.grading().0, idx.grading().1);
        v.coeffs.insert(idx, GaussRat::one());
        v
    }

    pub fn grading(&self) -> (usize, usize) {
        self.grading
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, idx: &WedgeBasisIndex) -> GaussRat {
        self.coeffs.get(idx).cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WedgeBasisIndex, &GaussRat)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, idx: WedgeBasisIndex, c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(idx).or_insert_with(GaussRat::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&idx);
        }
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        let mut out = Self::zero(self.grading.0, self.grading.1);
        for (i, x) in &self.coeffs {
            out.add_term(*i, &(x * c));
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.grading, o.grading, "adding wedge vectors of different bidegree");
        let mut out = self.clone();
        for (i, x) in &o.coeffs {
            out.add_term(*i, x);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&GaussRat::from_int(-1)))
    }

    /// If `self = c · other`, returns `c`.
    pub fn ratio_to(&self, other: &Self) -> Option<GaussRat> {
        let (idx, x) = other.coeffs.iter().next()?;
        let c = &self.coefficient(idx) / x;
        (other.scale(&c) == *self).then_some(c)
    }
}

impl fmt::Debug for WedgeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(i, c)| {
                let pos: Vec<String> = i.pos_roots().iter().map(Root::label).collect();
                let neg: Vec<String> = i.neg_roots().iter().map(Root::label).collect();
                format!("({c})[{} | {}]", pos.join("∧"), neg.join("∧"))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize)]
struct WedgeTerm<'a> {
    pos: Vec<String>,
    neg: Vec<String>,
    coeff: &'a GaussRat,
}

impl Serialize for WedgeVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for (i, c) in &self.coeffs {
            seq.serialize_element(&WedgeTerm {
                pos: i.pos_roots().iter().map(Root::label).collect(),
                neg: i.neg_roots().iter().map(Root::label).collect(),
                coeff: c,
            })?;
        }
        seq.end()
    }
}

/// An element of `k_C`: `Σ t_j T_j + Σ c_α X_α` over compact roots `α`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct KElement {
    pub cartan: [GaussRat; 3],
    pub roots: Vec<(Root, GaussRat)>,
}

impl KElement {
    pub fn root(root: Root) -> Result<Self> {
        if !root.is_compact() {
            return Err(Error::NotCompact(root.weight));
        }
        Ok(KElement { cartan: Default::default(), roots: vec![(root, GaussRat::one())] })
    }

    /// Reads off a `k_C` element from coordinates in the [`LieBasis`].
    pub fn from_coordinates(basis: &LieBasis, coords: &[GaussRat]) -> Result<Self> {
        let mut out = KElement::default();
        for (label, c) in basis.labels().iter().zip(coords) {
            if c.is_zero() {
                continue;
            }
            match label {
                Generator::Cartan(j) => out.cartan[j - 1] = c.clone(),
                Generator::Root(r) if r.is_compact() => out.roots.push((*r, c.clone())),
                Generator::Root(r) => {
                    return Err(Error::Consistency(format!("element of k has a component along X[{r}]")))
                }
            }
        }
        Ok(out)
    }
}

/// `[X_α, X_β]` for compact `α` and noncompact `β`, re-expanded in the
/// root-vector basis by exact linear solving.
struct AdjointTable {
    /// Indexed by (compact root position in `compact`, noncompact slot 0..12).
    entries: Vec<Vec<Vec<(usize, GaussRat)>>>,
    compact: Vec<Root>,
}

/// Slots `0..6` are `p+` in enumeration order, `6..12` their negatives.
fn noncompact_slot_root(slot: usize) -> Root {
    let r = positive_noncompact_roots();
    if slot < 6 {
        r[slot]
    } else {
        r[slot - 6].neg()
    }
}

impl AdjointTable {
    fn build() -> Result<Self> {
        let basis = LieBasis::new();
        let compact: Vec<Root> = all_roots().into_iter().filter(Root::is_compact).collect();
        let mut entries = Vec::with_capacity(compact.len());
        for alpha in &compact {
            let xa = root_vector(alpha);
            let mut row = Vec::with_capacity(12);
            for slot in 0..12 {
                let beta = noncompact_slot_root(slot);
                let coords = basis
                    .coordinates(&bracket(&xa, &root_vector(&beta)))
                    .ok_or_else(|| Error::Consistency(format!("[X_{alpha}, X_{beta}] left sp6")))?;
                let mut terms = Vec::new();
                for (label, c) in basis.labels().iter().zip(coords) {
                    if c.is_zero() {
                        continue;
                    }
                    let target = match label {
                        Generator::Root(r) if !r.is_compact() => (0..12)
                            .find(|&s| noncompact_slot_root(s) == *r)
                            .expect("noncompact roots have slots"),
                        other => {
                            return Err(Error::Consistency(format!(
                                "[X_{alpha}, X_{beta}] has a component along {other}"
                            )))
                        }
                    };
                    if (target < 6) != (slot < 6) {
                        return Err(Error::Consistency(format!("[X_{alpha}, X_{beta}] changes p+/p-")));
                    }
                    terms.push((target % 6, c));
                }
                row.push(terms);
            }
            entries.push(row);
        }
        Ok(AdjointTable { entries, compact })
    }

    fn get() -> &'static AdjointTable {
        static TABLE: OnceLock<AdjointTable> = OnceLock::new();
        TABLE.get_or_init(|| AdjointTable::build().expect("adjoint action of k preserves p+ and p-"))
    }

    fn terms(&self, alpha: &Root, side: Side, pos: usize) -> &[(usize, GaussRat)] {
        let a = self.compact.iter().position(|r| r == alpha).expect("compact root");
        let slot = match side {
            Side::Pos => pos,
            Side::Neg => pos + 6,
        };
        &self.entries[a][slot]
    }
}

/// `(-1)^{#bits of mask strictly between a and b}`.
fn crossing_sign(mask: u8, a: usize, b: usize) -> i64 {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    let between = if hi > lo + 1 { ((1u8 << hi) - 1) & !((1u8 << (lo + 1)) - 1) } else { 0 };
    if (mask & between).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Derivation action of `k_C` on `Λ^p p+ ⊗ Λ^q p-`.
pub fn ad_element(x: &KElement, v: &WedgeVector) -> WedgeVector {
    let table = AdjointTable::get();
    let (p, q) = v.grading;
    let mut out = WedgeVector::zero(p, q);
    for (idx, c) in &v.coeffs {
        // Cartan part acts diagonally through the weight
        let w = idx.weight();
        let diag = x
            .cartan
            .iter()
            .zip(w.0)
            .fold(GaussRat::zero(), |acc, (t, k)| acc + t * &GaussRat::from_int(k));
        out.add_term(*idx, &(c * &diag));

        for (alpha, coeff) in &x.roots {
            let cc = c * coeff;
            for side in [Side::Pos, Side::Neg] {
                let mask = idx.side(side);
                for b in bits(mask) {
                    for (t, s) in table.terms(alpha, side, b) {
                        let term = &cc * s;
                        if *t == b {
                            out.add_term(*idx, &term);
                        } else if mask >> t & 1 == 0 {
                            let new_mask = (mask & !(1 << b)) | (1 << t);
                            let sign = crossing_sign(mask, b, *t);
                            out.add_term(idx.with_side(side, new_mask), &(&term * &GaussRat::from_int(sign)));
                        }
                    }
                }
            }
        }
    }
    out
}

/// `ad(X_α)` for a compact root `α`.
pub fn ad(root: &Root, v: &WedgeVector) -> Result<WedgeVector> {
    Ok(ad_element(&KElement::root(*root)?, v))
}

/// `ad(X_α)^n`.
pub fn ad_pow(root: &Root, n: usize, v: &WedgeVector) -> Result<WedgeVector> {
    let x = KElement::root(*root)?;
    Ok((0..n).fold(v.clone(), |acc, _| ad_element(&x, &acc)))
}

/// Regroups `v` by weight.
pub fn weight_decompose(v: &WedgeVector) -> BTreeMap<Weight, WedgeVector> {
    let mut out: BTreeMap<Weight, WedgeVector> = BTreeMap::new();
    for (idx, c) in &v.coeffs {
        out.entry(idx.weight())
            .or_insert_with(|| WedgeVector::zero(v.grading.0, v.grading.1))
            .add_term(*idx, c);
    }
    out
}

/// Number of basis monomials of bidegree `(p, q)` with the given weight.
pub fn weight_space_dim(p: usize, q: usize, w: Weight) -> usize {
    WedgeBasisIndex::all(p, q).into_iter().filter(|i| i.weight() == w).count()
}

fn wv(pos: [[i64; 3]; 3], neg: [[i64; 3]; 3]) -> WedgeVector {
    let pos: Vec<Weight> = pos.iter().map(|w| Weight(*w)).collect();
    let neg: Vec<Weight> = neg.iter().map(|w| Weight(*w)).collect();
    let (idx, sign) = WedgeBasisIndex::from_roots(&pos, &neg).expect("valid roots");
    WedgeVector::basis_vector(idx).scale(&GaussRat::from_int(sign))
}

/// `X0 = (X_{2e1} ∧ X_{2e2} ∧ X_{2e3}) ⊗ (X_{-2e1} ∧ X_{-2e2} ∧ X_{-2e3})`.
pub fn x0() -> WedgeVector {
    wv([[2, 0, 0], [0, 2, 0], [0, 0, 2]], [[-2, 0, 0], [0, -2, 0], [0, 0, -2]])
}

/// `(X_{2e1} ∧ X_{2e2} ∧ X_{e1+e2}) ⊗ (X_{-e1-e3} ∧ X_{-e2-e3} ∧ X_{-2e3})`.
pub fn x_2_2_m4() -> WedgeVector {
    wv([[2, 0, 0], [0, 2, 0], [1, 1, 0]], [[-1, 0, -1], [0, -1, -1], [0, 0, -2]])
}

/// `(X_{2e1} ∧ X_{e1+e2} ∧ X_{e1+e3}) ⊗ (X_{-e2-e3} ∧ X_{-2e2} ∧ X_{-2e3})`.
pub fn x_4_m2_m2() -> WedgeVector {
    wv([[2, 0, 0], [1, 1, 0], [1, 0, 1]], [[0, -1, -1], [0, -2, 0], [0, 0, -2]])
}

fn compact_root(a: [i64; 3]) -> Root {
    Root::from_weight(Weight(a)).expect("compact root")
}

/// Highest-weight vector of `τ_target` inside `Λ^3 p+ ⊗ Λ^3 p-`.
pub fn highest_weight_vector(target: Weight) -> Result<WedgeVector> {
    match target.0 {
        [2, 2, -4] => Ok(x_2_2_m4()),
        [4, -2, -2] => Ok(x_4_m2_m2()),
        _ => Err(Error::UnsupportedTarget(target)),
    }
}

/// The two squared root operators of the lowering step, in order of
/// application. The raising step uses the negated roots in reverse order.
fn lowering_roots(target: Weight) -> Result<[Root; 2]> {
    match target.0 {
        // A = Ad²(X_{e3-e2}) ∘ Ad²(X_{e3-e1})
        [2, 2, -4] => Ok([compact_root([-1, 0, 1]), compact_root([0, -1, 1])]),
        // A' = Ad²(X_{e2-e1}) ∘ Ad²(X_{e3-e1})
        [4, -2, -2] => Ok([compact_root([-1, 0, 1]), compact_root([-1, 1, 0])]),
        _ => Err(Error::UnsupportedTarget(target)),
    }
}

fn apply_squares(roots: &[Root], v: &WedgeVector) -> Result<WedgeVector> {
    roots.iter().try_fold(v.clone(), |acc, r| ad_pow(r, 2, &acc))
}

/// Result of projecting `X0` onto one of the minimal `K`-types.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Projection {
    pub target: Weight,
    /// `R(X0) = step1 · X_target` for the raising operator `R`.
    pub step1: GaussRat,
    /// `R(A(X_target)) = step2 · X_target` for the lowering operator `A`.
    pub step2: GaussRat,
    /// `step1 / step2`: the projection of `X0` is `alpha · A(X_target)`.
    pub alpha: GaussRat,
}

/// Computes the scalar `α` with `pr_τ(X0) = α · A(X_τ)`.
///
/// Applying the raising operator `R` (which kills every other isotypic
/// part at the target weight, as that weight has multiplicity one) to both
/// sides gives `R(X0) = α · R(A(X_τ))`, and both sides are multiples of
/// the highest-weight vector `X_τ`.
pub fn projection(target: Weight) -> Result<Projection> {
    let hw = highest_weight_vector(target)?;
    let mult = wedge_tensor_char(3, 3)?.coefficient(&target);
    if mult != 1 {
        return Err(Error::Multiplicity { weight: target, mult });
    }
    let lower = lowering_roots(target)?;
    let raise: Vec<Root> = lower.iter().rev().map(Root::neg).collect();

    let x_low = apply_squares(&lower, &hw)?;
    let raised_x0 = apply_squares(&raise, &x0())?;
    let raised_back = apply_squares(&raise, &x_low)?;

    let step1 = if raised_x0.is_zero() {
        GaussRat::zero()
    } else {
        raised_x0
            .ratio_to(&hw)
            .ok_or_else(|| Error::Consistency("R(X0) is not a multiple of the highest-weight vector".into()))?
    };
    let step2 = raised_back
        .ratio_to(&hw)
        .ok_or_else(|| Error::Consistency("R(A(X)) is not a multiple of the highest-weight vector".into()))?;
    if step2.is_zero() {
        return Err(Error::Consistency("R ∘ A annihilates the highest-weight vector".into()));
    }
    let alpha = &step1 / &step2;
    Ok(Projection { target, step1, step2, alpha })
}

pub fn projection_coefficient(target: Weight) -> Result<GaussRat> {
    Ok(projection(target)?.alpha)
}

/// The lowered vector `A(X_target)`, a weight-zero vector in `τ_target`.
pub fn lowered_vector(target: Weight) -> Result<WedgeVector> {
    apply_squares(&lowering_roots(target)?, &highest_weight_vector(target)?)
}
