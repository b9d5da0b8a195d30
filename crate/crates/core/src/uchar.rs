//! The character ring of `U(3)`.
//!
//! Characters are Laurent polynomials in `x1, x2, x3`, stored as finitely
//! supported maps from exponent vectors (weights) to integers. Irreducible
//! characters come from the alternant ratio `a_{λ+δ} / a_δ` with
//! `δ = (2, 1, 0)`, computed by exact Laurent division; decomposition
//! peels off the lexicographically leading term.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rootsys::{positive_noncompact_roots, Weight};

/// A virtual character of `U(3)`: weight ↦ multiplicity.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentChar {
    terms: BTreeMap<Weight, i64>,
}

impl LaurentChar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Weight::ZERO, 1)
    }

    pub fn monomial(w: Weight, c: i64) -> Self {
        let mut out = Self::zero();
        out.add_term(w, c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (Weight, i64)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (w, c) in terms {
            out.add_term(w, c);
        }
        out
    }

    fn add_term(&mut self, w: Weight, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(w).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Weight) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &i64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lexicographically greatest weight with a nonzero coefficient.
    pub fn leading(&self) -> Option<(Weight, i64)> {
        self.terms.iter().next_back().map(|(w, c)| (*w, *c))
    }

    /// Value at `x1 = x2 = x3 = 1`, i.e. the dimension.
    pub fn eval_at_one(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        LaurentChar { terms: self.terms.iter().map(|(w, v)| (*w, v * c)).collect() }
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, by: Weight) -> Self {
        LaurentChar { terms: self.terms.iter().map(|(w, v)| (*w + by, *v)).collect() }
    }

    /// Invariant under permutations of the variables.
    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(w, c)| {
            let [a, b, d] = w.0;
            [[a, d, b], [b, a, d], [b, d, a], [d, a, b], [d, b, a]]
                .iter()
                .all(|p| self.coefficient(&Weight(*p)) == *c)
        })
    }

    /// Exact division in the Laurent ring, by repeated cancellation of the
    /// lex-leading term. Fails if the quotient would leave the exponent box
    /// allowed by the operands, or a coefficient does not divide.
    pub fn div_exact(&self, divisor: &LaurentChar) -> Result<LaurentChar> {
        let (lead_w, lead_c) = divisor
            .leading()
            .ok_or_else(|| Error::InexactDivision("division by zero".into()))?;
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (nlo, nhi) = self.exponent_box();
        let (dlo, dhi) = divisor.exponent_box();
        let lo: [i64; 3] = std::array::from_fn(|k| nlo[k] - dhi[k]);
        let hi: [i64; 3] = std::array::from_fn(|k| nhi[k] - dlo[k]);

        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((w, c)) = rem.leading() {
            if c % lead_c != 0 {
                return Err(Error::InexactDivision(format!("coefficient {c} at {w} not divisible by {lead_c}")));
            }
            let q = w - lead_w;
            if (0..3).any(|k| q.0[k] < lo[k] || q.0[k] > hi[k]) {
                return Err(Error::InexactDivision(format!("remainder term at {w} cannot be cancelled")));
            }
            let qc = c / lead_c;
            quot.add_term(q, qc);
            rem = &rem - &divisor.shift(q).scale(qc);
        }
        Ok(quot)
    }

    fn exponent_box(&self) -> ([i64; 3], [i64; 3]) {
        let mut lo = [i64::MAX; 3];
        let mut hi = [i64::MIN; 3];
        for w in self.terms.keys() {
            for k in 0..3 {
                lo[k] = lo[k].min(w.0[k]);
                hi[k] = hi[k].max(w.0[k]);
            }
        }
        (lo, hi)
    }
}

impl fmt::Debug for LaurentChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().rev().map(|(w, c)| format!("{c}·x^{w}")).collect();
        write!(f, "{}", if parts.is_empty() { "0".to_string() } else { parts.join(" + ") })
    }
}

impl<'a> Add<&'a LaurentChar> for &'a LaurentChar {
    type Output = LaurentChar;
    fn add(self, o: &LaurentChar) -> LaurentChar {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(*w, *c);
        }
        out
    }
}

impl<'a> Sub<&'a LaurentChar> for &'a LaurentChar {
    type Output = LaurentChar;
    fn sub(self, o: &LaurentChar) -> LaurentChar {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(*w, -c);
        }
        out
    }
}

impl Neg for &LaurentChar {
    type Output = LaurentChar;
    fn neg(self) -> LaurentChar {
        self.scale(-1)
    }
}

impl<'a> Mul<&'a LaurentChar> for &'a LaurentChar {
    type Output = LaurentChar;
    fn mul(self, o: &LaurentChar) -> LaurentChar {
        let mut out = LaurentChar::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                out.add_term(*a + *b, x * y);
            }
        }
        out
    }
}

const DELTA: Weight = Weight::new(2, 1, 0);

/// `Σ_σ sgn(σ) x^{σ(μ)}` over the permutations of the three coordinates.
pub fn alternant(mu: Weight) -> LaurentChar {
    let [a, b, c] = mu.0;
    LaurentChar::from_terms([
        (Weight::new(a, b, c), 1),
        (Weight::new(b, c, a), 1),
        (Weight::new(c, a, b), 1),
        (Weight::new(b, a, c), -1),
        (Weight::new(a, c, b), -1),
        (Weight::new(c, b, a), -1),
    ])
}

/// Character of the irreducible representation `τ_hw`.
pub fn irrep_char(hw: Weight) -> Result<LaurentChar> {
    if !hw.is_k_dominant() {
        return Err(Error::NotDominant(hw));
    }
    alternant(hw + DELTA).div_exact(&alternant(DELTA))
}

/// Weyl dimension formula `(a-b+1)(b-c+1)(a-c+2)/2`.
pub fn dim(hw: Weight) -> Result<u64> {
    if !hw.is_k_dominant() {
        return Err(Error::NotDominant(hw));
    }
    let [a, b, c] = hw.0;
    Ok(((a - b + 1) * (b - c + 1) * (a - c + 2) / 2) as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NoncompactSpace {
    #[serde(rename = "p+")]
    PPlus,
    #[serde(rename = "p-")]
    PMinus,
}

impl NoncompactSpace {
    /// Weights of the space, in the fixed root enumeration.
    pub fn weights(self) -> [Weight; 6] {
        let sign = match self {
            NoncompactSpace::PPlus => 1,
            NoncompactSpace::PMinus => -1,
        };
        positive_noncompact_roots().map(|r| sign * r.weight)
    }
}

/// Character of `Λ^k p±`: the `k`-th elementary symmetric polynomial in the
/// six weight monomials.
pub fn wedge_char(space: NoncompactSpace, k: usize) -> Result<LaurentChar> {
    if k > 6 {
        return Err(Error::DegreeOutOfRange(k));
    }
    let ws = space.weights();
    let mut out = LaurentChar::zero();
    for mask in 0u32..64 {
        if mask.count_ones() as usize != k {
            continue;
        }
        let w = (0..6).filter(|i| mask >> i & 1 == 1).fold(Weight::ZERO, |acc, i| acc + ws[i]);
        out.add_term(w, 1);
    }
    Ok(out)
}

/// Character of `Λ^p p+ ⊗ Λ^q p-`.
pub fn wedge_tensor_char(p: usize, q: usize) -> Result<LaurentChar> {
    Ok(&wedge_char(NoncompactSpace::PPlus, p)? * &wedge_char(NoncompactSpace::PMinus, q)?)
}

/// Multiplicities of irreducible constituents, keyed by highest weight.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DecompTable {
    entries: BTreeMap<Weight, u64>,
}

impl DecompTable {
    pub fn from_entries<I: IntoIterator<Item = (Weight, u64)>>(it: I) -> Self {
        DecompTable { entries: it.into_iter().filter(|(_, m)| *m > 0).collect() }
    }

    pub fn get(&self, hw: &Weight) -> u64 {
        self.entries.get(hw).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries sorted lexicographically descending by highest weight.
    pub fn entries(&self) -> impl Iterator<Item = (Weight, u64)> + '_ {
        self.entries.iter().rev().map(|(w, m)| (*w, *m))
    }

    /// `Σ mult · dim(τ)`.
    pub fn dimension(&self) -> u64 {
        self.entries.iter().map(|(w, m)| m * dim(*w).expect("table entries are dominant")).sum()
    }

    /// `Σ mult · χ_τ`.
    pub fn character(&self) -> LaurentChar {
        self.entries.iter().fold(LaurentChar::zero(), |acc, (w, m)| {
            &acc + &irrep_char(*w).expect("table entries are dominant").scale(*m as i64)
        })
    }
}

impl fmt::Display for DecompTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries()
            .map(|(w, m)| if m == 1 { format!("τ{w}") } else { format!("{m}τ{w}") })
            .collect();
        f.write_str(&parts.join(" ⊕ "))
    }
}

#[derive(Serialize)]
struct DecompEntry {
    hw: Weight,
    mult: u64,
}

impl Serialize for DecompTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.entries.len()))?;
        for (hw, mult) in self.entries() {
            seq.serialize_element(&DecompEntry { hw, mult })?;
        }
        seq.end()
    }
}

/// Splits a genuine character into irreducibles.
pub fn decompose(ch: &LaurentChar) -> Result<DecompTable> {
    let budget = ch.eval_at_one();
    if budget < 0 {
        return Err(Error::NotACharacter(format!("negative dimension {budget}")));
    }
    let mut rem = ch.clone();
    let mut out = BTreeMap::new();
    let mut rounds = 0;
    while let Some((hw, m)) = rem.leading() {
        if m < 0 {
            return Err(Error::NotACharacter(format!("negative multiplicity {m} at leading weight {hw}")));
        }
        if !hw.is_k_dominant() {
            return Err(Error::NotACharacter(format!("leading weight {hw} is not dominant")));
        }
        rounds += 1;
        if rounds > budget {
            return Err(Error::NotACharacter(format!("no termination within {budget} rounds")));
        }
        rem = &rem - &irrep_char(hw)?.scale(m);
        out.insert(hw, m as u64);
    }
    Ok(DecompTable { entries: out })
}
