//! The `C3` root system written in the compact-Cartan basis `(e1, e2, e3)`,
//! together with the Weyl group `{±1}^3 ⋊ S3`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An integral weight `k1 e1 + k2 e2 + k3 e3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub [i64; 3]);

impl Weight {
    pub const ZERO: Weight = Weight([0, 0, 0]);

    pub const fn new(k1: i64, k2: i64, k3: i64) -> Self {
        Weight([k1, k2, k3])
    }

    /// `e_j`, with `j` in `1..=3`.
    pub fn unit(j: usize) -> Self {
        let mut w = [0; 3];
        w[j - 1] = 1;
        Weight(w)
    }

    /// Dominance for the compact roots: `k1 >= k2 >= k3`.
    pub fn is_k_dominant(&self) -> bool {
        let [a, b, c] = self.0;
        a >= b && b >= c
    }

    /// Dominance for `Sp6`: `k1 >= k2 >= k3 >= 0`.
    pub fn is_sp6_dominant(&self) -> bool {
        self.is_k_dominant() && self.0[2] >= 0
    }

    /// No root is orthogonal to the weight.
    pub fn is_regular(&self) -> bool {
        all_roots().iter().all(|r| pairing(self, &r.weight) != 0)
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `(a, b, c) -> (-c, -b, -a)`: the highest weight of the dual
    /// representation, and the image of a Harish-Chandra parameter under
    /// complex conjugation.
    pub fn dual(&self) -> Self {
        let [a, b, c] = self.0;
        Weight([-c, -b, -a])
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "({a}, {b}, {c})")
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        Weight([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, o: Weight) -> Weight {
        self + (-o)
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.map(|x| -x))
    }
}

impl Mul<Weight> for i64 {
    type Output = Weight;
    fn mul(self, w: Weight) -> Weight {
        Weight(w.0.map(|x| self * x))
    }
}

/// Standard scalar product on `R^3`.
pub fn pairing(a: &Weight, b: &Weight) -> i64 {
    a.0.iter().zip(b.0.iter()).map(|(x, y)| x * y).sum()
}

/// Half-sum of the positive roots.
pub fn rho() -> Weight {
    Weight([3, 2, 1])
}

/// Half-sum of the positive compact roots.
pub fn delta_k() -> Weight {
    Weight([1, 0, -1])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootKind {
    Compact,
    Noncompact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    pub weight: Weight,
    pub kind: RootKind,
}

impl Root {
    /// Classifies `weight` as a root, or returns `None` if it is not one.
    pub fn from_weight(weight: Weight) -> Option<Root> {
        let nonzero: Vec<i64> = weight.0.iter().copied().filter(|&x| x != 0).collect();
        let kind = match nonzero.as_slice() {
            [x] if x.abs() == 2 => RootKind::Noncompact,
            [x, y] if x.abs() == 1 && y.abs() == 1 => {
                if x == y {
                    RootKind::Noncompact
                } else {
                    RootKind::Compact
                }
            }
            _ => return None,
        };
        Some(Root { weight, kind })
    }

    pub fn is_compact(&self) -> bool {
        self.kind == RootKind::Compact
    }

    pub fn is_positive(&self) -> bool {
        POSITIVE_ROOTS.contains(&self.weight.0)
    }

    pub fn neg(&self) -> Root {
        Root { weight: -self.weight, kind: self.kind }
    }

    /// Short human label such as `2e1`, `e1+e3`, `-e2-e3` or `e1-e2`.
    pub fn label(&self) -> String {
        let mut out = String::new();
        for (j, &c) in self.weight.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if out.is_empty() { "" } else { "+" };
            let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
            out.push_str(&format!("{sign}{mag}e{}", j + 1));
        }
        out
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

const POSITIVE_ROOTS: [[i64; 3]; 9] = [
    [2, 0, 0],
    [0, 2, 0],
    [0, 0, 2],
    [1, 1, 0],
    [1, 0, 1],
    [0, 1, 1],
    [1, -1, 0],
    [1, 0, -1],
    [0, 1, -1],
];

/// The six positive noncompact roots in the fixed enumeration
/// `2e1, 2e2, 2e3, e1+e2, e1+e3, e2+e3` used by the wedge basis.
pub fn positive_noncompact_roots() -> [Root; 6] {
    std::array::from_fn(|i| Root { weight: Weight(POSITIVE_ROOTS[i]), kind: RootKind::Noncompact })
}

/// `e1-e2, e1-e3, e2-e3`.
pub fn positive_compact_roots() -> [Root; 3] {
    std::array::from_fn(|i| Root { weight: Weight(POSITIVE_ROOTS[6 + i]), kind: RootKind::Compact })
}

pub fn positive_roots() -> Vec<Root> {
    POSITIVE_ROOTS.iter().map(|&w| Root::from_weight(Weight(w)).unwrap()).collect()
}

/// All 18 roots: the nine positive ones followed by their negatives.
pub fn all_roots() -> Vec<Root> {
    let pos = positive_roots();
    let neg: Vec<Root> = pos.iter().map(Root::neg).collect();
    pos.into_iter().chain(neg).collect()
}

/// Element of `{±1}^3 ⋊ S3` acting by `(w v)_i = signs[i] * v[perm[i]]`.
///
/// `perm` is stored 0-based; the JSON form uses 1-based indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    signs: [i8; 3],
    perm: [u8; 3],
}

impl SignedPermutation {
    pub const IDENTITY: SignedPermutation = SignedPermutation { signs: [1, 1, 1], perm: [0, 1, 2] };

    /// `perm` is 0-based. Returns `None` unless `perm` is a permutation and
    /// every sign is `±1`.
    pub fn new(signs: [i8; 3], perm: [u8; 3]) -> Option<Self> {
        let mut seen = [false; 3];
        for &p in &perm {
            if p > 2 || seen[p as usize] {
                return None;
            }
            seen[p as usize] = true;
        }
        if signs.iter().any(|s| s.abs() != 1) {
            return None;
        }
        Some(SignedPermutation { signs, perm })
    }

    pub fn signs(&self) -> [i8; 3] {
        self.signs
    }

    pub fn perm(&self) -> [u8; 3] {
        self.perm
    }

    /// Reflection in the hyperplane orthogonal to `2 e_j` (1-based `j`).
    pub fn sigma(j: usize) -> Self {
        let mut signs = [1; 3];
        signs[j - 1] = -1;
        SignedPermutation { signs, perm: [0, 1, 2] }
    }

    /// Reflection in the hyperplane orthogonal to `e_j - e_k` (1-based).
    pub fn sigma_jk(j: usize, k: usize) -> Self {
        let mut perm = [0, 1, 2];
        perm.swap(j - 1, k - 1);
        SignedPermutation { signs: [1; 3], perm }
    }

    pub fn apply(&self, v: &Weight) -> Weight {
        Weight(std::array::from_fn(|i| self.signs[i] as i64 * v.0[self.perm[i] as usize]))
    }

    /// `self ∘ other`, so that `compose(a, b).apply(v) == a.apply(&b.apply(v))`.
    pub fn compose(&self, other: &Self) -> Self {
        let perm = std::array::from_fn(|i| other.perm[self.perm[i] as usize]);
        let signs = std::array::from_fn(|i| self.signs[i] * other.signs[self.perm[i] as usize]);
        SignedPermutation { signs, perm }
    }

    pub fn inverse(&self) -> Self {
        let mut perm = [0u8; 3];
        let mut signs = [1i8; 3];
        for i in 0..3 {
            let p = self.perm[i] as usize;
            perm[p] = i as u8;
            signs[p] = self.signs[i];
        }
        SignedPermutation { signs, perm }
    }

    /// Lies in the Weyl group of `K = U(3)`.
    pub fn is_compact(&self) -> bool {
        self.signs == [1, 1, 1]
    }

    /// All 48 elements of the Weyl group of `Sp6`.
    pub fn all() -> Vec<Self> {
        const PERMS: [[u8; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let mut out = Vec::with_capacity(48);
        for perm in PERMS {
            for mask in 0..8u8 {
                let signs = std::array::from_fn(|i| if mask >> i & 1 == 1 { -1 } else { 1 });
                out.push(SignedPermutation { signs, perm });
            }
        }
        out
    }

    /// The six elements of the Weyl group of `K`.
    pub fn compact_subgroup() -> Vec<Self> {
        Self::all().into_iter().filter(Self::is_compact).collect()
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..3)
            .map(|i| format!("{}v{}", if self.signs[i] < 0 { "-" } else { "" }, self.perm[i] + 1))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct SignedPermutationRepr {
    signs: [i8; 3],
    perm: [u8; 3],
}

impl Serialize for SignedPermutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SignedPermutationRepr { signs: self.signs, perm: self.perm.map(|p| p + 1) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SignedPermutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = SignedPermutationRepr::deserialize(d)?;
        let perm = repr.perm.map(|p| p.wrapping_sub(1));
        SignedPermutation::new(repr.signs, perm)
            .ok_or_else(|| serde::de::Error::custom("invalid signed permutation"))
    }
}

/// The images `w_i ρ` fixing the order of the coset representatives.
pub const COSET_RHO_IMAGES: [[i64; 3]; 8] = [
    [3, 2, 1],
    [3, 2, -1],
    [3, 1, -2],
    [2, 1, -3],
    [3, -1, -2],
    [2, -1, -3],
    [1, -2, -3],
    [-1, -2, -3],
];

/// Representatives `w1, ..., w8` of `W(K) \ W(Sp6)` with `w_i ρ` dominant for
/// `K`, in the order of [`COSET_RHO_IMAGES`].
///
/// Since `ρ` has pairwise distinct absolute coordinates, each `w_i` is the
/// unique group element sending `ρ` to the listed image.
pub fn coset_representatives() -> [SignedPermutation; 8] {
    let group = SignedPermutation::all();
    COSET_RHO_IMAGES.map(|img| {
        *group
            .iter()
            .find(|w| w.apply(&rho()) == Weight(img))
            .expect("every listed image lies in the Weyl orbit of rho")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;
    use std::collections::HashSet;

    #[test]
    fn pairing_examples() {
        assert_eq!(pairing(&Weight::new(3, 2, 1), &Weight::new(2, 0, 0)), 6);
        assert_eq!(pairing(&Weight::new(2, 1, -3), &Weight::new(1, 0, 1)), -1);
        for w in [Weight::new(5, -2, 7), rho(), Weight::new(-1, -1, 0)] {
            assert_eq!(pairing(&Weight::ZERO, &w), 0);
        }
    }

    #[test]
    fn rho_and_delta_k_are_half_sums() {
        let twice_rho = positive_roots().iter().fold(Weight::ZERO, |acc, r| acc + r.weight);
        let half: Vec<Ratio<i64>> = twice_rho.0.iter().map(|&x| Ratio::new(x, 2)).collect();
        assert_eq!(half, rho().0.iter().map(|&x| Ratio::from_integer(x)).collect::<Vec<_>>());
        let twice_delta = positive_compact_roots().iter().fold(Weight::ZERO, |acc, r| acc + r.weight);
        assert_eq!(twice_delta, 2 * delta_k());
        assert_eq!(2 * delta_k(), Weight::new(2, 0, -2));
        assert_eq!(rho(), Weight::new(3, 2, 1));
    }

    #[test]
    fn root_counts() {
        let roots = all_roots();
        assert_eq!(roots.len(), 18);
        assert_eq!(roots.iter().filter(|r| r.is_compact()).count(), 6);
        assert_eq!(roots.iter().filter(|r| !r.is_compact()).count(), 12);
        assert_eq!(positive_roots().len(), 9);
        assert_eq!(positive_roots().iter().filter(|r| !r.is_compact()).count(), 6);
        let distinct: HashSet<Weight> = roots.iter().map(|r| r.weight).collect();
        assert_eq!(distinct.len(), 18);
        for r in &roots {
            assert_eq!(Root::from_weight(r.weight), Some(*r));
            let compact_form = r.weight.0.iter().sum::<i64>() == 0;
            assert_eq!(r.is_compact(), compact_form);
        }
        assert_eq!(Root::from_weight(Weight::new(1, 1, 1)), None);
        assert_eq!(Root::from_weight(Weight::ZERO), None);
    }

    #[test]
    fn labels() {
        let labels: Vec<String> = positive_noncompact_roots().iter().map(Root::label).collect();
        assert_eq!(labels, ["2e1", "2e2", "2e3", "e1+e2", "e1+e3", "e2+e3"]);
        assert_eq!(Root::from_weight(Weight::new(0, -1, -1)).unwrap().label(), "-e2-e3");
        assert_eq!(Root::from_weight(Weight::new(-1, 0, 1)).unwrap().label(), "-e1+e3");
    }

    #[test]
    fn reflections_act_as_described() {
        assert_eq!(SignedPermutation::sigma(1).apply(&rho()), Weight::new(-3, 2, 1));
        assert_eq!(SignedPermutation::sigma_jk(1, 2).apply(&rho()), Weight::new(2, 3, 1));
    }

    #[test]
    fn group_structure() {
        let g = SignedPermutation::all();
        assert_eq!(g.len(), 48);
        assert_eq!(g.iter().collect::<HashSet<_>>().len(), 48);
        assert_eq!(SignedPermutation::compact_subgroup().len(), 6);
        let probe = Weight::new(7, -3, 2);
        for a in &g {
            assert_eq!(a.compose(&a.inverse()), SignedPermutation::IDENTITY);
            for b in &g {
                let ab = a.compose(b);
                assert!(g.contains(&ab));
                assert_eq!(ab.apply(&probe), a.apply(&b.apply(&probe)));
            }
        }
    }

    #[test]
    fn weyl_group_preserves_roots() {
        let roots: HashSet<Weight> = all_roots().iter().map(|r| r.weight).collect();
        for w in SignedPermutation::all() {
            for r in &roots {
                assert!(roots.contains(&w.apply(r)));
            }
        }
    }

    #[test]
    fn coset_representatives_match_listed_images() {
        let reps = coset_representatives();
        assert_eq!(reps.len(), 8);
        for (w, img) in reps.iter().zip(COSET_RHO_IMAGES) {
            assert_eq!(w.apply(&rho()), Weight(img));
            assert!(w.apply(&rho()).is_k_dominant());
        }
        assert_eq!(reps[3].apply(&rho()), Weight::new(2, 1, -3));
        // the right cosets W(K) w_i partition the group
        let mut covered = HashSet::new();
        for w in &reps {
            for k in SignedPermutation::compact_subgroup() {
                assert!(covered.insert(k.compose(w)));
            }
        }
        assert_eq!(covered.len(), 48);
    }

    #[test]
    fn dominance_is_non_strict() {
        assert!(Weight::new(4, 4, 4).is_k_dominant());
        assert!(Weight::new(2, 2, -4).is_k_dominant());
        assert!(!Weight::new(2, 3, 1).is_k_dominant());
        assert!(Weight::new(0, 0, 0).is_sp6_dominant());
        assert!(!Weight::new(1, 0, -1).is_sp6_dominant());
    }

    #[test]
    fn serde_forms() {
        assert_eq!(serde_json::to_string(&Weight::new(2, 2, -4)).unwrap(), "[2,2,-4]");
        let w = SignedPermutation::sigma_jk(1, 2).compose(&SignedPermutation::sigma(3));
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"{"signs":[1,1,-1],"perm":[2,1,3]}"#);
        let back: SignedPermutation = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w);
        assert!(serde_json::from_str::<SignedPermutation>(r#"{"signs":[1,1,1],"perm":[1,1,3]}"#).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn weight() -> impl Strategy<Value = Weight> {
            prop::array::uniform3(-20i64..20).prop_map(Weight)
        }

        proptest! {
            #[test]
            fn action_is_isometric(v in weight(), u in weight(), i in 0usize..48) {
                let w = SignedPermutation::all()[i];
                prop_assert_eq!(pairing(&w.apply(&v), &w.apply(&u)), pairing(&v, &u));
            }

            #[test]
            fn representatives_keep_shifted_weights_dominant(a in 0i64..12, b in 0i64..12, c in 0i64..12) {
                let lambda = Weight::new(a + b + c, b + c, c);
                for w in coset_representatives() {
                    prop_assert!(w.apply(&(lambda + rho())).is_k_dominant());
                }
            }
        }
    }
}
