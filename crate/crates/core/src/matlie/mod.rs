//! Explicit `6 x 6` matrices over `Q(i)` for the compact Cartan subalgebra
//! and the root vectors of `sp6`.
//!
//! Conventions: `D_j` is the diagonal unit matrix at `(j, j)`, `E_jk` is
//! symmetric with ones at `(j, k)` and `(k, j)`, and `F_jk` has `1` at
//! `(j, k)` and `-1` at `(k, j)`. Then
//!
//! ```text
//! T_j          = -i [[0, D_j], [-D_j, 0]]
//! X_{±2e_j}    = [[D_j, ±i D_j], [±i D_j, -D_j]]
//! X_{±(ej+ek)} = [[E_jk, ±i E_jk], [±i E_jk, -E_jk]]
//! X_{±(ej-ek)} = [[±F_jk, -i E_jk], [i E_jk, ±F_jk]]
//! ```

mod gauss;

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rootsys::{all_roots, Root, Weight};

pub use gauss::{parse_rational, GaussRat};

pub const DIM: usize = 6;

/// Dense `6 x 6` matrix over `Q(i)`, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussMatrix {
    entries: Vec<GaussRat>,
}

impl GaussMatrix {
    pub fn zero() -> Self {
        GaussMatrix { entries: vec![GaussRat::zero(); DIM * DIM] }
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..DIM {
            m.set(i, i, GaussRat::one());
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussRat {
        &self.entries[i * DIM + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GaussRat) {
        self.entries[i * DIM + j] = v;
    }

    pub fn entries(&self) -> &[GaussRat] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Assembles `[[a, b], [c, d]]` from `3 x 3` blocks given as closures.
    fn from_blocks(blocks: [[&dyn Fn(usize, usize) -> GaussRat; 2]; 2]) -> Self {
        let mut m = Self::zero();
        for i in 0..DIM {
            for j in 0..DIM {
                m.set(i, j, blocks[i / 3][j / 3](i % 3, j % 3));
            }
        }
        m
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        GaussMatrix { entries: self.entries.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        GaussMatrix { entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        GaussMatrix { entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a - b).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut m = Self::zero();
        for i in 0..DIM {
            for j in 0..DIM {
                let mut acc = GaussRat::zero();
                for k in 0..DIM {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc += &(a * o.get(k, j));
                }
                m.set(i, j, acc);
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..DIM {
            for j in 0..DIM {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    /// If `self = c · other` for some scalar `c`, returns `c`.
    pub fn ratio_to(&self, other: &Self) -> Option<GaussRat> {
        let idx = other.entries.iter().position(|x| !x.is_zero())?;
        let c = &self.entries[idx] / &other.entries[idx];
        (other.scale(&c) == *self).then_some(c)
    }
}

impl fmt::Debug for GaussMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..DIM {
            let row: Vec<String> = (0..DIM).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for GaussMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<&[GaussRat]> = self.entries.chunks(DIM).collect();
        rows.serialize(s)
    }
}

/// `AB - BA`.
pub fn bracket(a: &GaussMatrix, b: &GaussMatrix) -> GaussMatrix {
    a.mul(b).sub(&b.mul(a))
}

/// The standard symplectic form `J = [[0, 1], [-1, 0]]`.
pub fn symplectic_form() -> GaussMatrix {
    let one = |i: usize, j: usize| if i == j { GaussRat::one() } else { GaussRat::zero() };
    let neg = |i: usize, j: usize| if i == j { GaussRat::from_int(-1) } else { GaussRat::zero() };
    let zero = |_: usize, _: usize| GaussRat::zero();
    GaussMatrix::from_blocks([[&zero, &one], [&neg, &zero]])
}

/// Returns `c` when `ᵗX J + J X = c J`, i.e. `X` lies in `gsp6` with
/// infinitesimal similitude `c` (`c = 0` on `sp6`).
pub fn similitude_defect(x: &GaussMatrix) -> Option<GaussRat> {
    let j = symplectic_form();
    let lhs = x.transpose().mul(&j).add(&j.mul(x));
    if lhs.is_zero() {
        return Some(GaussRat::zero());
    }
    lhs.ratio_to(&j)
}

/// Label of one of the 21 basis elements of `sp6,C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// `T_j`, with `j` in `1..=3`.
    Cartan(usize),
    Root(Root),
}

impl Generator {
    /// `T1, T2, T3` followed by the 18 root vectors in [`all_roots`] order.
    pub fn all() -> Vec<Generator> {
        (1..=3)
            .map(Generator::Cartan)
            .chain(all_roots().into_iter().map(Generator::Root))
            .collect()
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Cartan(j) => write!(f, "T{j}"),
            Generator::Root(r) => write!(f, "X[{}]", r.label()),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    /// Accepts `T1`..`T3`, and root labels such as `2e1`, `-e1-e3`,
    /// `e2-e3`, optionally wrapped as `X[...]`.
    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownLabel(s.to_string());
        let t = s.trim();
        if let Some(j) = t.strip_prefix('T') {
            return match j.parse::<usize>() {
                Ok(j @ 1..=3) => Ok(Generator::Cartan(j)),
                _ => Err(unknown()),
            };
        }
        let body = t
            .strip_prefix("X[")
            .and_then(|r| r.strip_suffix(']'))
            .unwrap_or(t);
        let weight = parse_root_label(body).ok_or_else(unknown)?;
        Root::from_weight(weight).map(Generator::Root).ok_or_else(unknown)
    }
}

/// Parses sums like `2e1`, `-e1-e3`, `e1+e2`.
pub fn parse_root_label(s: &str) -> Option<Weight> {
    let mut w = [0i64; 3];
    let bytes: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    if bytes.is_empty() {
        return None;
    }
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = 1;
        if bytes[i] == '+' || bytes[i] == '-' {
            if bytes[i] == '-' {
                sign = -1;
            }
            i += 1;
        } else if i > 0 {
            return None;
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let coeff: i64 = if i == start { 1 } else { bytes[start..i].iter().collect::<String>().parse().ok()? };
        if i >= bytes.len() || bytes[i] != 'e' {
            return None;
        }
        i += 1;
        let j = bytes.get(i)?.to_digit(10)? as usize;
        if !(1..=3).contains(&j) {
            return None;
        }
        i += 1;
        if w[j - 1] != 0 {
            return None;
        }
        w[j - 1] = sign * coeff;
    }
    Some(Weight(w))
}

fn unit3(j: usize) -> impl Fn(usize, usize) -> GaussRat {
    move |a, b| if a == j && b == j { GaussRat::one() } else { GaussRat::zero() }
}

fn sym3(j: usize, k: usize) -> impl Fn(usize, usize) -> GaussRat {
    move |a, b| if (a, b) == (j, k) || (a, b) == (k, j) { GaussRat::one() } else { GaussRat::zero() }
}

fn skew3(j: usize, k: usize) -> impl Fn(usize, usize) -> GaussRat {
    move |a, b| {
        if (a, b) == (j, k) {
            GaussRat::one()
        } else if (a, b) == (k, j) {
            GaussRat::from_int(-1)
        } else {
            GaussRat::zero()
        }
    }
}

fn scaled<'a>(c: GaussRat, f: &'a dyn Fn(usize, usize) -> GaussRat) -> impl Fn(usize, usize) -> GaussRat + 'a {
    move |a, b| &c * &f(a, b)
}

/// The matrix attached to a generator label.
pub fn generator_matrix(g: Generator) -> GaussMatrix {
    let i = GaussRat::i();
    let zero = |_: usize, _: usize| GaussRat::zero();
    match g {
        Generator::Cartan(j) => {
            // -i [[0, D], [-D, 0]]
            let d = unit3(j - 1);
            let ur = scaled(-&i, &d);
            let ll = scaled(i.clone(), &d);
            GaussMatrix::from_blocks([[&zero, &ur], [&ll, &zero]])
        }
        Generator::Root(root) => {
            let w = root.weight.0;
            let nz: Vec<usize> = (0..3).filter(|&k| w[k] != 0).collect();
            if nz.len() == 1 {
                let sign = GaussRat::from_int(w[nz[0]].signum());
                let d = unit3(nz[0]);
                let off = scaled(&sign * &i, &d);
                let neg = scaled(GaussRat::from_int(-1), &d);
                GaussMatrix::from_blocks([[&d, &off], [&off, &neg]])
            } else {
                let (j, k) = (nz[0], nz[1]);
                let e = sym3(j, k);
                if root.is_compact() {
                    // ±(e_j - e_k) with j < k; the sign is the e_j coefficient
                    let sign = GaussRat::from_int(w[j].signum());
                    let f = skew3(j, k);
                    let diag = scaled(sign, &f);
                    let ur = scaled(-&i, &e);
                    let ll = scaled(i.clone(), &e);
                    GaussMatrix::from_blocks([[&diag, &ur], [&ll, &diag]])
                } else {
                    let sign = GaussRat::from_int(w[j].signum());
                    let off = scaled(&sign * &i, &e);
                    let neg = scaled(GaussRat::from_int(-1), &e);
                    GaussMatrix::from_blocks([[&e, &off], [&off, &neg]])
                }
            }
        }
    }
}

/// Looks up a generator by its textual label.
pub fn generator(label: &str) -> Result<GaussMatrix> {
    Ok(generator_matrix(label.parse()?))
}

/// The root vector `X_α` for a root `α`.
pub fn root_vector(root: &Root) -> GaussMatrix {
    generator_matrix(Generator::Root(*root))
}

pub fn cartan(j: usize) -> GaussMatrix {
    generator_matrix(Generator::Cartan(j))
}

/// Returns `(c1, c2, c3)` when `[T_j, m] = c_j m` for integers `c_j`.
/// The zero matrix is not reported as a weight vector.
pub fn weight_of(m: &GaussMatrix) -> Option<Weight> {
    if m.is_zero() {
        return None;
    }
    let mut w = [0i64; 3];
    for (j, slot) in w.iter_mut().enumerate() {
        let b = bracket(&cartan(j + 1), m);
        let c = if b.is_zero() { GaussRat::zero() } else { b.ratio_to(m)? };
        let n = c.as_integer()?;
        *slot = i64::try_from(n).ok()?;
    }
    Some(Weight(w))
}

/// Summand of `sp6,C = k_C ⊕ p+ ⊕ p-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CartanPart {
    K,
    PPlus,
    PMinus,
}

/// Reports which summand of the Cartan decomposition contains `m`, if any
/// single one does. The zero matrix lies in all three; `K` is reported.
pub fn cartan_part(m: &GaussMatrix) -> Option<CartanPart> {
    let block = |bi: usize, bj: usize, a: usize, b: usize| m.get(3 * bi + a, 3 * bj + b).clone();
    let all = |f: &dyn Fn(usize, usize) -> bool| (0..3).all(|a| (0..3).all(|b| f(a, b)));
    // k: [[A, B], [-B, A]] with A = -ᵗA, B = ᵗB
    let in_k = all(&|a, b| {
        block(0, 0, a, b) == block(1, 1, a, b)
            && block(0, 1, a, b) == -block(1, 0, a, b)
            && block(0, 0, a, b) == -block(0, 0, b, a)
            && block(0, 1, a, b) == block(0, 1, b, a)
    });
    if in_k {
        return Some(CartanPart::K);
    }
    let in_p = |s: GaussRat| {
        let si = &s * &GaussRat::i();
        all(&|a, b| {
            let x = block(0, 0, a, b);
            x == block(0, 0, b, a)
                && block(0, 1, a, b) == &si * &x
                && block(1, 0, a, b) == &si * &x
                && block(1, 1, a, b) == -x
        })
    };
    if in_p(GaussRat::one()) {
        Some(CartanPart::PPlus)
    } else if in_p(GaussRat::from_int(-1)) {
        Some(CartanPart::PMinus)
    } else {
        None
    }
}

/// The 21 generators as a basis of `sp6,C`, with exact coordinate solving.
#[derive(Debug, Clone)]
pub struct LieBasis {
    labels: Vec<Generator>,
    matrices: Vec<GaussMatrix>,
}

impl Default for LieBasis {
    fn default() -> Self {
        Self::new()
    }
}

impl LieBasis {
    pub fn new() -> Self {
        let labels = Generator::all();
        let matrices = labels.iter().map(|&g| generator_matrix(g)).collect();
        LieBasis { labels, matrices }
    }

    pub fn labels(&self) -> &[Generator] {
        &self.labels
    }

    pub fn matrix(&self, idx: usize) -> &GaussMatrix {
        &self.matrices[idx]
    }

    /// Coordinates of `m` in the generator basis (one entry per label), or
    /// `None` if `m` is not in the span. Solved by exact Gaussian
    /// elimination on the `36 x 21` system.
    pub fn coordinates(&self, m: &GaussMatrix) -> Option<Vec<GaussRat>> {
        let n = self.matrices.len();
        let rows = DIM * DIM;
        let mut a: Vec<Vec<GaussRat>> = (0..rows)
            .map(|r| {
                let mut row: Vec<GaussRat> = self.matrices.iter().map(|g| g.entries[r].clone()).collect();
                row.push(m.entries[r].clone());
                row
            })
            .collect();
        let mut pivots = Vec::with_capacity(n);
        let mut r = 0;
        for c in 0..n {
            let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            let inv = a[r][c].inv().expect("pivot is nonzero");
            for x in a[r].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x -= &(&f * p);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        // any nonzero right-hand side below the pivots means inconsistency
        if a[r..].iter().any(|row| !row[n].is_zero()) {
            return None;
        }
        let mut x = vec![GaussRat::zero(); n];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = a[i][n].clone();
        }
        Some(x)
    }

    pub fn combine(&self, coords: &[GaussRat]) -> GaussMatrix {
        coords
            .iter()
            .zip(&self.matrices)
            .filter(|(c, _)| !c.is_zero())
            .fold(GaussMatrix::zero(), |acc, (c, m)| acc.add(&m.scale(c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{positive_noncompact_roots, RootKind};

    fn x(label: &str) -> GaussMatrix {
        generator(label).unwrap()
    }

    #[test]
    fn cartan_t1_blocks() {
        let t1 = x("T1");
        let i = GaussRat::i();
        assert_eq!(*t1.get(0, 3), -&i);
        assert_eq!(*t1.get(3, 0), i);
        assert_eq!(t1.entries().iter().filter(|e| !e.is_zero()).count(), 2);
    }

    #[test]
    fn x_2e1_blocks() {
        let m = x("2e1");
        let i = GaussRat::i();
        assert_eq!(*m.get(0, 0), GaussRat::one());
        assert_eq!(*m.get(0, 3), i);
        assert_eq!(*m.get(3, 0), i);
        assert_eq!(*m.get(3, 3), GaussRat::from_int(-1));
        assert_eq!(m.entries().iter().filter(|e| !e.is_zero()).count(), 4);
    }

    #[test]
    fn labels_parse() {
        assert_eq!("T2".parse::<Generator>().unwrap(), Generator::Cartan(2));
        assert!(matches!("X[-e1-e3]".parse::<Generator>().unwrap(), Generator::Root(r) if r.weight == Weight::new(-1, 0, -1)));
        assert!(matches!("e2-e3".parse::<Generator>().unwrap(), Generator::Root(r) if r.kind == RootKind::Compact));
        for bad in ["T4", "T0", "e1", "3e1", "e1+e1", "", "x", "2e4", "e1e2"] {
            assert!(generator(bad).is_err(), "{bad}");
        }
        for g in Generator::all() {
            assert_eq!(g.to_string().parse::<Generator>().unwrap(), g);
        }
    }

    #[test]
    fn generators_pairwise_distinct() {
        let b = LieBasis::new();
        for i in 0..21 {
            for j in 0..i {
                assert_ne!(b.matrix(i), b.matrix(j));
            }
        }
    }

    #[test]
    fn brackets_with_cartan() {
        for j in 1..=3 {
            for k in 1..=3 {
                let xj = root_vector(&Root::from_weight(2 * Weight::unit(j)).unwrap());
                let expected = if j == k { xj.scale(&GaussRat::from_int(2)) } else { GaussMatrix::zero() };
                assert_eq!(bracket(&cartan(k), &xj), expected);
            }
        }
        let a = x("e1-e3");
        assert!(bracket(&a, &a).is_zero());
        assert!(bracket(&x("T1"), &x("e2+e3")).is_zero());
    }

    #[test]
    fn weight_of_examples() {
        assert_eq!(weight_of(&x("e1+e2")), Some(Weight::new(1, 1, 0)));
        assert_eq!(weight_of(&x("-e1+e3")), Some(Weight::new(-1, 0, 1)));
        assert_eq!(weight_of(&x("T2")), Some(Weight::ZERO));
        assert_eq!(weight_of(&x("2e1").add(&x("2e2"))), None);
        assert_eq!(weight_of(&GaussMatrix::zero()), None);
    }

    #[test]
    fn every_root_vector_has_its_weight() {
        for r in all_roots() {
            assert_eq!(weight_of(&root_vector(&r)), Some(r.weight), "{r}");
        }
    }

    #[test]
    fn cartan_decomposition_membership() {
        for r in positive_noncompact_roots() {
            assert_eq!(cartan_part(&root_vector(&r)), Some(CartanPart::PPlus));
            assert_eq!(cartan_part(&root_vector(&r.neg())), Some(CartanPart::PMinus));
        }
        for r in all_roots().iter().filter(|r| r.is_compact()) {
            assert_eq!(cartan_part(&root_vector(r)), Some(CartanPart::K));
        }
        for j in 1..=3 {
            assert_eq!(cartan_part(&cartan(j)), Some(CartanPart::K));
        }
        assert_eq!(cartan_part(&x("2e1").add(&x("-2e1"))), None);
    }

    #[test]
    fn generators_are_symplectic() {
        for g in Generator::all() {
            assert_eq!(similitude_defect(&generator_matrix(g)), Some(GaussRat::zero()), "{g}");
        }
        assert_eq!(similitude_defect(&GaussMatrix::identity()), Some(GaussRat::from_int(2)));
    }

    #[test]
    fn coordinates_roundtrip() {
        let b = LieBasis::new();
        let m = x("2e1").scale(&GaussRat::from_ratio(3, 2)).add(&x("T3").scale(&GaussRat::i()));
        let c = b.coordinates(&m).unwrap();
        assert_eq!(b.combine(&c), m);
        assert_eq!(c.iter().filter(|v| !v.is_zero()).count(), 2);
        assert!(b.coordinates(&GaussMatrix::identity()).is_none());
    }

    #[test]
    fn jacobi_identity() {
        let b = LieBasis::new();
        let n = b.labels().len();
        for i in 0..n {
            for j in i + 1..n {
                let xy = bracket(b.matrix(i), b.matrix(j));
                for k in j + 1..n {
                    let (x, y, z) = (b.matrix(i), b.matrix(j), b.matrix(k));
                    let s = bracket(&xy, z)
                        .add(&bracket(&bracket(y, z), x))
                        .add(&bracket(&bracket(z, x), y));
                    assert!(s.is_zero());
                }
            }
        }
    }

    #[test]
    fn brackets_stay_in_the_algebra() {
        let b = LieBasis::new();
        for i in 0..21 {
            for j in 0..21 {
                let c = bracket(b.matrix(i), b.matrix(j));
                assert!(b.coordinates(&c).is_some());
            }
        }
    }
}
