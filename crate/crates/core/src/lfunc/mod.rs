//! Local Spin L-factors of `GSp6` from Satake data, partial Spin
//! L-functions, and archimedean Γ-factors.

mod gamma;

pub use gamma::{gamma_c, gamma_factor, gamma_r, pole_order, GammaFactor, GammaFactorList, GammaKind, HodgeNumbers};

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::Neg;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, ToPrimitive};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matlie::parse_rational;

/// Restriction of a character to `Z_ℓ^×`, recorded as the element `r/m`
/// of `Q/Z`. Labels add when characters are multiplied; `r ≡ 0` is the
/// unramified case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawLabel")]
pub struct UnitCharLabel {
    m: u64,
    r: u64,
}

#[derive(Deserialize)]
struct RawLabel {
    m: u64,
    r: u64,
}

impl TryFrom<RawLabel> for UnitCharLabel {
    type Error = Error;
    fn try_from(raw: RawLabel) -> Result<Self> {
        UnitCharLabel::new(raw.m, raw.r)
    }
}

impl Default for UnitCharLabel {
    fn default() -> Self {
        UnitCharLabel::UNRAMIFIED
    }
}

impl UnitCharLabel {
    pub const UNRAMIFIED: UnitCharLabel = UnitCharLabel { m: 1, r: 0 };

    pub fn new(m: u64, r: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidSatake("unit label modulus must be positive".into()));
        }
        Ok(UnitCharLabel { m, r: r % m })
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn residue(&self) -> u64 {
        self.r
    }

    pub fn is_unramified(&self) -> bool {
        self.r == 0
    }

    /// Label of the product character.
    pub fn combine(&self, o: &Self) -> Self {
        let m = self.m.lcm(&o.m);
        let r = (self.r * (m / self.m) + o.r * (m / o.m)) % m;
        UnitCharLabel { m, r }
    }
}

/// Number types that Satake values may be given in.
pub trait SatakeValue: Clone + PartialEq + Debug + Num + Neg<Output = Self> {
    fn to_complex(&self) -> Complex64;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Option<Self>;
}

impl SatakeValue for BigRational {
    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(v: &Value) -> Option<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) if n.is_i64() => Some(BigRational::from_integer(n.as_i64()?.into())),
            _ => None,
        }
    }
}

impl SatakeValue for Complex64 {
    fn to_complex(&self) -> Complex64 {
        *self
    }

    fn to_json(&self) -> Value {
        json!([self.re, self.im])
    }

    fn from_json(v: &Value) -> Option<Self> {
        let a = v.as_array()?;
        match a.as_slice() {
            [re, im] => Some(Complex64::new(re.as_f64()?, im.as_f64()?)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SatakeEntry<V> {
    pub value: V,
    pub label: UnitCharLabel,
}

impl<V: SatakeValue> SatakeEntry<V> {
    pub fn unramified(value: V) -> Self {
        SatakeEntry { value, label: UnitCharLabel::UNRAMIFIED }
    }
}

/// `χ_0, ..., χ_3` at a prime `ℓ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SatakeData<V> {
    pub prime: u64,
    pub chi: [SatakeEntry<V>; 4],
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl<V: SatakeValue> SatakeData<V> {
    pub fn new(prime: u64, chi: [SatakeEntry<V>; 4]) -> Result<Self> {
        let d = SatakeData { prime, chi };
        d.validate()?;
        Ok(d)
    }

    pub fn unramified(prime: u64, values: [V; 4]) -> Result<Self> {
        Self::new(prime, values.map(SatakeEntry::unramified))
    }

    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.prime) {
            return Err(Error::InvalidSatake(format!("{} is not a prime", self.prime)));
        }
        if self.chi.iter().any(|c| c.value.is_zero()) {
            return Err(Error::InvalidSatake(format!("zero Satake value at {}", self.prime)));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let chi: Vec<Value> = self
            .chi
            .iter()
            .map(|c| json!({"value": c.value.to_json(), "label": {"m": c.label.m, "r": c.label.r}}))
            .collect();
        json!({"prime": self.prime, "chi": chi})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidSatake(msg.to_string());
        let prime = v.get("prime").and_then(Value::as_u64).ok_or_else(|| bad("missing integer `prime`"))?;
        let chi = v.get("chi").and_then(Value::as_array).ok_or_else(|| bad("missing array `chi`"))?;
        if chi.len() != 4 {
            return Err(bad("`chi` must have four entries"));
        }
        let mut entries = Vec::with_capacity(4);
        for c in chi {
            let value = c
                .get("value")
                .and_then(V::from_json)
                .ok_or_else(|| bad(&format!("unreadable Satake value in {c}")))?;
            let label = match c.get("label") {
                None => UnitCharLabel::UNRAMIFIED,
                Some(l) => serde_json::from_value(l.clone()).map_err(|e| bad(&e.to_string()))?,
            };
            entries.push(SatakeEntry { value, label });
        }
        let chi: [SatakeEntry<V>; 4] = entries.try_into().expect("four entries");
        Self::new(prime, chi)
    }
}

/// Satake data read from JSON, in whichever number type it was written.
#[derive(Debug, Clone, PartialEq)]
pub enum SatakeInput {
    Exact(Vec<SatakeData<BigRational>>),
    Float(Vec<SatakeData<Complex64>>),
}

impl SatakeInput {
    /// Accepts a single object or an array of them. Exact values are
    /// fraction strings, float values `[re, im]` pairs; mixing is rejected.
    pub fn from_json(v: &Value) -> Result<Self> {
        let items: Vec<&Value> = match v {
            Value::Array(a) => a.iter().collect(),
            other => vec![other],
        };
        let exact: Result<Vec<_>> = items.iter().map(|i| SatakeData::<BigRational>::from_json(i)).collect();
        if let Ok(e) = exact {
            return Ok(SatakeInput::Exact(e));
        }
        let float: Result<Vec<_>> = items.iter().map(|i| SatakeData::<Complex64>::from_json(i)).collect();
        match float {
            Ok(f) => Ok(SatakeInput::Float(f)),
            Err(_) => Err(exact.unwrap_err()),
        }
    }
}

/// `L_ℓ(s) = 1 / P(ℓ^{-s})`, stored through the coefficients of `P`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinFactor<V> {
    pub prime: u64,
    /// Coefficients of `P(t)`, constant term first.
    pub denominator: Vec<V>,
}

impl<V: SatakeValue> SpinFactor<V> {
    pub fn degree(&self) -> usize {
        self.denominator.len() - 1
    }

    pub fn eval_denominator(&self, t: &V) -> V {
        self.denominator.iter().rev().fold(V::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    fn eval_denominator_complex(&self, t: Complex64) -> (Complex64, f64) {
        let mut val = Complex64::new(0.0, 0.0);
        let mut scale = 0.0;
        for (k, c) in self.denominator.iter().enumerate().rev() {
            let c = c.to_complex();
            val = val * t + c;
            scale += c.norm() * t.norm().powi(k as i32);
        }
        (val, scale)
    }

    /// `L_ℓ(s)` at real `s`.
    pub fn evaluate(&self, s: f64) -> Result<Complex64> {
        let t = Complex64::new((self.prime as f64).powf(-s), 0.0);
        let (den, scale) = self.eval_denominator_complex(t);
        if den.norm() <= 1e-12 * scale {
            return Err(Error::Pole { prime: self.prime, s });
        }
        Ok(den.inv())
    }

    /// Coefficients `a_0, ..., a_k` of the power series `1 / P(t)`.
    pub fn series(&self, k: usize) -> Vec<V> {
        let d = &self.denominator;
        let mut a: Vec<V> = Vec::with_capacity(k + 1);
        a.push(V::one());
        for n in 1..=k {
            let mut acc = V::zero();
            for j in 1..=n.min(d.len() - 1) {
                acc = acc + d[j].clone() * a[n - j].clone();
            }
            a.push(-acc);
        }
        a
    }
}

fn poly_mul<V: SatakeValue>(a: &[V], b: &[V]) -> Vec<V> {
    let mut out = vec![V::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

/// The local Spin factor: one linear factor `1 - χ_0 χ_S(ℓ) t` for each
/// subset `S ⊆ {1,2,3}` whose combined character is unramified.
pub fn spin_factor<V: SatakeValue>(d: &SatakeData<V>) -> SpinFactor<V> {
    let mut den = vec![V::one()];
    for subset in 0u8..8 {
        let mut label = d.chi[0].label;
        let mut value = d.chi[0].value.clone();
        for i in 0..3 {
            if subset >> i & 1 == 1 {
                label = label.combine(&d.chi[i + 1].label);
                value = value * d.chi[i + 1].value.clone();
            }
        }
        if label.is_unramified() {
            den = poly_mul(&den, &[V::one(), -value]);
        }
    }
    SpinFactor { prime: d.prime, denominator: den }
}

fn check_distinct<V>(data: &[SatakeData<V>]) -> Result<()> {
    let mut primes: Vec<u64> = data.iter().map(|d| d.prime).collect();
    primes.sort_unstable();
    if primes.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidSatake("a prime occurs twice".into()));
    }
    Ok(())
}

/// `∏_{ℓ ≤ cutoff} L_ℓ(s)` over the supplied primes.
pub fn partial_l<V: SatakeValue>(data: &[SatakeData<V>], s: f64, cutoff: u64) -> Result<Complex64> {
    check_distinct(data)?;
    let mut out = Complex64::new(1.0, 0.0);
    for d in data.iter().filter(|d| d.prime <= cutoff) {
        d.validate()?;
        out *= spin_factor(d).evaluate(s)?;
    }
    Ok(out)
}

/// Nonzero Dirichlet coefficients `a_n`, `n ≤ bound`, of the partial
/// L-function over the supplied primes.
pub fn dirichlet_coefficients<V: SatakeValue>(data: &[SatakeData<V>], bound: u64) -> Result<BTreeMap<u64, V>> {
    check_distinct(data)?;
    let mut out = BTreeMap::new();
    out.insert(1u64, V::one());
    for d in data {
        d.validate()?;
        if d.prime > bound {
            continue;
        }
        let mut k = 0;
        let mut pk = 1u64;
        while let Some(next) = pk.checked_mul(d.prime).filter(|&n| n <= bound) {
            pk = next;
            k += 1;
        }
        let series = spin_factor(d).series(k);
        let mut next = out.clone();
        for (n, a) in &out {
            let mut m = *n;
            for c in series.iter().skip(1) {
                match m.checked_mul(d.prime).filter(|&x| x <= bound) {
                    Some(x) => m = x,
                    None => break,
                }
                let v = a.clone() * c.clone();
                if !v.is_zero() {
                    next.insert(m, v);
                }
            }
        }
        out = next;
    }
    Ok(out)
}

/// `Σ a_n n^{-s}`.
pub fn dirichlet_sum<V: SatakeValue>(coeffs: &BTreeMap<u64, V>, s: f64) -> Complex64 {
    coeffs.iter().map(|(n, a)| a.to_complex() * (*n as f64).powf(-s)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn binom(n: i64, k: i64) -> i64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn trivial_factor() {
        let d = SatakeData::unramified(2, [q(1, 1), q(1, 1), q(1, 1), q(1, 1)]).unwrap();
        let f = spin_factor(&d);
        assert_eq!(f.degree(), 8);
        let expected: Vec<BigRational> = (0..=8).map(|k| q(binom(8, k) * if k % 2 == 0 { 1 } else { -1 }, 1)).collect();
        assert_eq!(f.denominator, expected);
    }

    #[test]
    fn ramified_character_halves_degree() {
        let l = UnitCharLabel::new(2, 1).unwrap();
        let (b, c) = (q(3, 1), q(5, 1));
        let d = SatakeData::new(
            3,
            [
                SatakeEntry::unramified(q(1, 1)),
                SatakeEntry { value: q(7, 1), label: l },
                SatakeEntry::unramified(b.clone()),
                SatakeEntry::unramified(c.clone()),
            ],
        )
        .unwrap();
        let f = spin_factor(&d);
        assert_eq!(f.degree(), 4);
        let one = q(1, 1);
        let expected = [one.clone(), b.clone(), c.clone(), &b * &c]
            .iter()
            .fold(vec![one.clone()], |acc, x| poly_mul(&acc, &[one.clone(), -x.clone()]));
        assert_eq!(f.denominator, expected);
    }

    #[test]
    fn ramified_pair_can_cancel() {
        // χ1 and χ2 ramified with inverse restrictions: S = {1,2} survives
        let l = UnitCharLabel::new(3, 1).unwrap();
        let inv = UnitCharLabel::new(3, 2).unwrap();
        let one = || SatakeEntry::unramified(q(1, 1));
        let d = SatakeData::new(5, [one(), SatakeEntry { value: q(1, 1), label: l }, SatakeEntry { value: q(1, 1), label: inv }, one()])
            .unwrap();
        // surviving subsets: {}, {3}, {1,2}, {1,2,3}
        assert_eq!(spin_factor(&d).degree(), 4);
    }

    #[test]
    fn labels_form_a_group() {
        let a = UnitCharLabel::new(4, 3).unwrap();
        let b = UnitCharLabel::new(6, 1).unwrap();
        let c = a.combine(&b);
        assert_eq!((c.modulus(), c.residue()), (12, 11));
        assert!(UnitCharLabel::new(4, 2).unwrap().combine(&UnitCharLabel::new(2, 1).unwrap()).is_unramified());
        assert_eq!(UnitCharLabel::new(5, 7).unwrap().residue(), 2);
        assert!(UnitCharLabel::new(0, 1).is_err());
    }

    #[test]
    fn validation() {
        assert!(SatakeData::unramified(4, [q(1, 1), q(1, 1), q(1, 1), q(1, 1)]).is_err());
        assert!(SatakeData::unramified(1, [q(1, 1), q(1, 1), q(1, 1), q(1, 1)]).is_err());
        assert!(SatakeData::unramified(7, [q(1, 1), q(0, 1), q(1, 1), q(1, 1)]).is_err());
        let d = SatakeData::unramified(7, std::array::from_fn(|_| q(1, 1))).unwrap();
        assert!(partial_l(&[d.clone(), d], 2.0, 100).is_err());
    }

    #[test]
    fn partial_l_values() {
        assert_eq!(partial_l::<BigRational>(&[], 2.0, 10).unwrap(), Complex64::new(1.0, 0.0));
        let d = SatakeData::unramified(2, [q(1, 1), q(1, 1), q(1, 1), q(1, 1)]).unwrap();
        let v = partial_l(std::slice::from_ref(&d), 2.0, 10).unwrap();
        assert!((v.re - (4.0f64 / 3.0).powi(8)).abs() < 1e-12);
        assert_eq!(partial_l(&[d], 2.0, 1).unwrap(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn pole_names_the_prime() {
        let d = SatakeData::unramified(2, [q(8, 1), q(1, 1), q(1, 1), q(1, 1)]).unwrap();
        match partial_l(&[d], 3.0, 10) {
            Err(Error::Pole { prime, .. }) => assert_eq!(prime, 2),
            other => panic!("expected a pole, got {other:?}"),
        }
    }

    #[test]
    fn series_inverts_denominator() {
        let d = SatakeData::unramified(3, [q(1, 2), q(2, 3), q(-1, 1), q(5, 7)]).unwrap();
        let f = spin_factor(&d);
        let a = f.series(12);
        let prod = poly_mul(&f.denominator, &a);
        assert!(prod[0].is_one());
        assert!(prod[1..=12].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn json_round_trip() {
        let txt = r#"[{"prime":2,"chi":[{"value":"1","label":{"m":1,"r":0}},{"value":"1/2"},{"value":"3","label":{"m":4,"r":6}},{"value":"-1"}]}]"#;
        let v: Value = serde_json::from_str(txt).unwrap();
        match SatakeInput::from_json(&v).unwrap() {
            SatakeInput::Exact(d) => {
                assert_eq!(d[0].chi[2].label, UnitCharLabel::new(4, 2).unwrap());
                let again = SatakeData::<BigRational>::from_json(&d[0].to_json()).unwrap();
                assert_eq!(again, d[0]);
            }
            other => panic!("{other:?}"),
        }
        let f: Value = serde_json::from_str(r#"{"prime":3,"chi":[{"value":[1,0]},{"value":[0,1]},{"value":[0.5,0.5]},{"value":[-1,0]}]}"#).unwrap();
        assert!(matches!(SatakeInput::from_json(&f).unwrap(), SatakeInput::Float(_)));
        let mixed: Value =
            serde_json::from_str(r#"{"prime":3,"chi":[{"value":"1"},{"value":[0,1]},{"value":"1"},{"value":"1"}]}"#).unwrap();
        assert!(SatakeInput::from_json(&mixed).is_err());
    }

    #[test]
    fn product_matches_dirichlet_series() {
        let primes = [2u64, 3, 5, 7, 11, 13];
        let data: Vec<SatakeData<Complex64>> = primes
            .iter()
            .enumerate()
            .map(|(k, &p)| {
                let phase = |j: usize| Complex64::from_polar(1.0, 0.7 * (k * 4 + j) as f64 + 0.3);
                SatakeData::unramified(p, [phase(0), phase(1), phase(2), phase(3)]).unwrap()
            })
            .collect();
        let prod = partial_l(&data, 3.0, 100).unwrap();
        let coeffs = dirichlet_coefficients(&data, 100_000_000).unwrap();
        let sum = dirichlet_sum(&coeffs, 3.0);
        assert!((prod - sum).norm() < 1e-10, "{prod} vs {sum}");
    }

    fn small_q() -> impl Strategy<Value = BigRational> {
        (-6i64..=6, 1i64..=4).prop_filter_map("nonzero", |(n, d)| (n != 0).then(|| q(n, d)))
    }

    proptest! {
        #[test]
        fn first_coefficient_is_elementary(a in small_q(), b in small_q(), c in small_q(), e in small_q()) {
            let d = SatakeData::unramified(5, [a.clone(), b.clone(), c.clone(), e.clone()]).unwrap();
            let f = spin_factor(&d);
            let one = q(1, 1);
            prop_assert_eq!(&f.denominator[1], &-(a.clone() * (&one + &b) * (&one + &c) * (&one + &e)));
            // constant term of the reversed polynomial: ∏_S χ_0 χ_S = χ_0^8 (χ_1χ_2χ_3)^4
            let top = (0..8).fold(one.clone(), |acc, _| acc * &a) * (0..4).fold(one, |acc, _| acc * &b * &c * &e);
            prop_assert_eq!(&f.denominator[8], &top);
        }

        #[test]
        fn large_s_limit(re in -1.0f64..1.0, im in -1.0f64..1.0) {
            let v = Complex64::new(re, im);
            let d = SatakeData::unramified(7, [v, v, v.conj(), Complex64::new(1.0, 0.0)]).unwrap();
            let x = spin_factor(&d).evaluate(60.0).unwrap();
            prop_assert!((x - 1.0).norm() < 1e-12);
        }
    }
}
