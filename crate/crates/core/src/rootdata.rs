//! Finite-type Cartan data and simply connected root data.
//!
//! Weights are stored in fundamental-weight coordinates: the `i`-th
//! coordinate of a weight `x` is the pairing of the coroot `i` with `x`.
//! Simple roots `i'` are then the columns of the Cartan matrix.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weyl::WeylElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TypeLabel::A => "A",
            TypeLabel::B => "B",
            TypeLabel::C => "C",
            TypeLabel::D => "D",
            TypeLabel::E => "E",
            TypeLabel::F => "F",
            TypeLabel::G => "G",
        };
        f.write_str(s)
    }
}

impl FromStr for TypeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(TypeLabel::A),
            "B" => Ok(TypeLabel::B),
            "C" => Ok(TypeLabel::C),
            "D" => Ok(TypeLabel::D),
            "E" => Ok(TypeLabel::E),
            "F" => Ok(TypeLabel::F),
            "G" => Ok(TypeLabel::G),
            other => Err(Error::InvalidType {
                label: other.to_string(),
                rank: 0,
                reason: "unknown type label".into(),
            }),
        }
    }
}

/// An integral weight in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// All coordinates nonnegative.
    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn scale(&self, c: i64) -> Weight {
        Weight(self.0.iter().map(|x| x * c).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Parses comma-separated coordinates, e.g. `1,0,2`.
    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .map(|part| {
                part.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::InvalidWord(format!("malformed weight `{s}`")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl AddAssign<&Weight> for Weight {
    fn add_assign(&mut self, rhs: &Weight) {
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        -&self
    }
}

impl Mul<&Weight> for i64 {
    type Output = Weight;
    fn mul(self, rhs: &Weight) -> Weight {
        rhs.scale(self)
    }
}

/// A Cartan datum `(I, ·)` of finite type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CartanDatum {
    pub rank: usize,
    /// The symmetric form `i·j`.
    pub dot: Vec<Vec<i64>>,
    pub type_label: TypeLabel,
}

impl CartanDatum {
    pub fn new(type_label: TypeLabel, rank: usize) -> Result<Self> {
        let invalid = |reason: &str| Error::InvalidType {
            label: type_label.to_string(),
            rank,
            reason: reason.to_string(),
        };
        let n = rank;
        let mut dot = vec![vec![0i64; n]; n];
        let link = |dot: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
            dot[i][j] = v;
            dot[j][i] = v;
        };
        match type_label {
            TypeLabel::A => {
                if n < 1 {
                    return Err(invalid("rank must be at least 1"));
                }
                for i in 0..n {
                    dot[i][i] = 2;
                }
                for i in 1..n {
                    link(&mut dot, i - 1, i, -1);
                }
            }
            TypeLabel::B => {
                if n < 2 {
                    return Err(invalid("rank must be at least 2"));
                }
                // long roots 1..n-1, short root n
                for i in 0..n - 1 {
                    dot[i][i] = 4;
                }
                dot[n - 1][n - 1] = 2;
                for i in 1..n {
                    link(&mut dot, i - 1, i, -2);
                }
            }
            TypeLabel::C => {
                if n < 2 {
                    return Err(invalid("rank must be at least 2"));
                }
                // short roots 1..n-1, long root n
                for i in 0..n - 1 {
                    dot[i][i] = 2;
                }
                dot[n - 1][n - 1] = 4;
                for i in 1..n - 1 {
                    link(&mut dot, i - 1, i, -1);
                }
                link(&mut dot, n - 2, n - 1, -2);
            }
            TypeLabel::D => {
                if n < 4 {
                    return Err(invalid("rank must be at least 4"));
                }
                for i in 0..n {
                    dot[i][i] = 2;
                }
                for i in 1..n - 1 {
                    link(&mut dot, i - 1, i, -1);
                }
                link(&mut dot, n - 3, n - 1, -1);
            }
            TypeLabel::E => {
                if !(6..=8).contains(&n) {
                    return Err(invalid("rank must be 6, 7 or 8"));
                }
                // Bourbaki labelling: chain 1-3-4-5-6-..., node 2 attached to 4
                for i in 0..n {
                    dot[i][i] = 2;
                }
                link(&mut dot, 0, 2, -1);
                link(&mut dot, 1, 3, -1);
                for i in 3..n {
                    link(&mut dot, i - 1, i, -1);
                }
            }
            TypeLabel::F => {
                if n != 4 {
                    return Err(invalid("rank must be 4"));
                }
                dot[0][0] = 4;
                dot[1][1] = 4;
                dot[2][2] = 2;
                dot[3][3] = 2;
                link(&mut dot, 0, 1, -2);
                link(&mut dot, 1, 2, -2);
                link(&mut dot, 2, 3, -1);
            }
            TypeLabel::G => {
                if n != 2 {
                    return Err(invalid("rank must be 2"));
                }
                // short root 1, long root 2
                dot[0][0] = 2;
                dot[1][1] = 6;
                link(&mut dot, 0, 1, -3);
            }
        }
        let datum = CartanDatum {
            rank,
            dot,
            type_label,
        };
        datum.validate()?;
        Ok(datum)
    }

    /// Checks the finite-type axioms.
    pub fn validate(&self) -> Result<()> {
        let invalid = |reason: String| Error::InvalidType {
            label: self.type_label.to_string(),
            rank: self.rank,
            reason,
        };
        let n = self.rank;
        for i in 0..n {
            if ![2, 4, 6].contains(&self.dot[i][i]) {
                return Err(invalid(format!(
                    "i·i = {} at i = {}",
                    self.dot[i][i],
                    i + 1
                )));
            }
            for j in 0..n {
                if self.dot[i][j] != self.dot[j][i] {
                    return Err(invalid("form is not symmetric".into()));
                }
                if i != j {
                    let num = 2 * self.dot[i][j];
                    if num % self.dot[i][i] != 0 || !(-3..=0).contains(&(num / self.dot[i][i])) {
                        return Err(invalid(format!(
                            "bad off-diagonal entry at ({}, {})",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        // leading principal minors
        for k in 1..=n {
            let minor: Vec<Vec<i64>> = self.dot[..k].iter().map(|row| row[..k].to_vec()).collect();
            if determinant(&minor) <= 0 {
                return Err(invalid("form is not positive definite".into()));
            }
        }
        Ok(())
    }

    /// `⟨i, j'⟩ = 2 i·j / i·i`.
    pub fn cartan_entry(&self, i: usize, j: usize) -> i64 {
        2 * self.dot[i][j] / self.dot[i][i]
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| self.cartan_entry(i, j)).collect())
            .collect()
    }

    /// The symmetrizers `i·i / 2`.
    pub fn symmetrizers(&self) -> Vec<i64> {
        (0..self.rank).map(|i| self.dot[i][i] / 2).collect()
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub(crate) fn determinant(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|row| row.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

/// Inverse of an integer matrix over the rationals.
fn rational_inverse(m: &[Vec<i64>]) -> Vec<Vec<Rational64>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational64> = row.iter().map(|&x| Rational64::from_integer(x)).collect();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational64::one()
                } else {
                    Rational64::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("Cartan matrix of finite type is invertible");
        a.swap(col, pivot);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for c in 0..2 * n {
                    let v = a[col][c];
                    a[r][c] -= f * v;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// A root together with its expansion in simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Root {
    pub weight: Weight,
    pub simple_coords: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.simple_coords.iter().sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootSign {
    Positive(usize),
    Negative(usize),
}

/// Simply connected root datum of a finite Cartan type.
#[derive(Debug, Clone)]
pub struct RootDatum {
    pub cartan: CartanDatum,
    pub positive_roots: Vec<Root>,
    pub rho: Weight,
    pub two_rho: Weight,
    cartan_inverse: Vec<Vec<Rational64>>,
    root_lookup: HashMap<Weight, RootSign>,
}

impl RootDatum {
    pub fn new(type_label: TypeLabel, rank: usize) -> Result<Self> {
        Self::from_cartan(CartanDatum::new(type_label, rank)?)
    }

    pub fn from_cartan(cartan: CartanDatum) -> Result<Self> {
        cartan.validate()?;
        let n = cartan.rank;
        let a = cartan.cartan_matrix();

        let simple_weight = |coords: &[i64]| -> Weight {
            Weight(
                (0..n)
                    .map(|i| (0..n).map(|j| a[i][j] * coords[j]).sum())
                    .collect(),
            )
        };

        // closure over root strings, graded by height
        let mut known: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut level: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut c = vec![0; n];
                c[i] = 1;
                c
            })
            .collect();
        known.extend(level.iter().cloned());
        while !level.is_empty() {
            let mut next: BTreeSet<Vec<i64>> = BTreeSet::new();
            for beta in &level {
                let beta_weight = simple_weight(beta);
                for i in 0..n {
                    // p = largest r with beta - r i' a root
                    let mut p = 0;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if known.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let q = p - beta_weight.0[i];
                    if q > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if !known.contains(&up) {
                            next.insert(up);
                        }
                    }
                }
            }
            known.extend(next.iter().cloned());
            level = next.into_iter().collect();
        }

        let mut positive_roots: Vec<Root> = known
            .into_iter()
            .map(|c| Root {
                weight: simple_weight(&c),
                simple_coords: c,
            })
            .collect();
        positive_roots.sort_by(|x, y| {
            x.height()
                .cmp(&y.height())
                .then_with(|| y.simple_coords.cmp(&x.simple_coords))
        });

        let two_rho = positive_roots
            .iter()
            .fold(Weight::zero(n), |acc, r| &acc + &r.weight);
        let rho = Weight(vec![1; n]);
        debug_assert_eq!(two_rho, rho.scale(2));

        let mut root_lookup = HashMap::new();
        for (k, r) in positive_roots.iter().enumerate() {
            root_lookup.insert(r.weight.clone(), RootSign::Positive(k));
            root_lookup.insert(-&r.weight, RootSign::Negative(k));
        }

        Ok(RootDatum {
            cartan_inverse: rational_inverse(&a),
            cartan,
            positive_roots,
            rho,
            two_rho,
            root_lookup,
        })
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank
    }

    pub fn type_label(&self) -> TypeLabel {
        self.cartan.type_label
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// The simple root `i'` (zero-based index).
    pub fn simple_root(&self, i: usize) -> Weight {
        Weight(
            (0..self.rank())
                .map(|j| self.cartan.cartan_entry(j, i))
                .collect(),
        )
    }

    /// `⟨i, x⟩`, the `i`-th fundamental coordinate of `x`.
    pub fn pairing(&self, coroot: usize, x: &Weight) -> Result<i64> {
        if coroot >= self.rank() {
            return Err(Error::IndexOutOfRange {
                index: coroot,
                rank: self.rank(),
            });
        }
        Ok(x.0[coroot])
    }

    /// Expansion of `x` in simple roots (rational off the root lattice).
    pub fn simple_root_coords(&self, x: &Weight) -> Vec<Rational64> {
        self.cartan_inverse
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&x.0)
                    .fold(Rational64::zero(), |acc, (r, &c)| acc + r * c)
            })
            .collect()
    }

    pub fn hgt(&self, x: &Weight) -> Rational64 {
        self.simple_root_coords(x).into_iter().sum()
    }

    /// Height with the simple roots in `j` weighted by zero.
    pub fn hgt_j(&self, x: &Weight, j: &[usize]) -> Rational64 {
        self.simple_root_coords(x)
            .into_iter()
            .enumerate()
            .filter(|(i, _)| !j.contains(i))
            .map(|(_, c)| c)
            .sum()
    }

    /// Coefficient vector of `hgt_J` as integer numerators over a common
    /// denominator: `hgt_J(x) = (Σ num[i] x[i]) / den`.
    pub fn height_functional(&self, j: &[usize]) -> (Vec<i64>, i64) {
        let n = self.rank();
        let coeffs: Vec<Rational64> = (0..n)
            .map(|col| {
                (0..n)
                    .filter(|i| !j.contains(i))
                    .map(|i| self.cartan_inverse[i][col])
                    .sum()
            })
            .collect();
        let den = coeffs
            .iter()
            .fold(1i64, |acc, c| num_integer_lcm(acc, *c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (den / c.denom()))
            .collect();
        (num, den)
    }

    /// Simple reflection `x - ⟨i, x⟩ i'`.
    pub fn reflect(&self, i: usize, x: &Weight) -> Result<Weight> {
        let p = self.pairing(i, x)?;
        Ok(x - &self.simple_root(i).scale(p))
    }

    /// `w(λ + ρ) - ρ`.
    pub fn dot_action(&self, w: &WeylElement, lambda: &Weight) -> Weight {
        &w.act(&(lambda + &self.rho)) - &self.rho
    }

    pub fn classify_root(&self, x: &Weight) -> Option<RootSign> {
        self.root_lookup.get(x).copied()
    }

    pub fn is_positive_root(&self, x: &Weight) -> bool {
        matches!(self.classify_root(x), Some(RootSign::Positive(_)))
    }

    pub fn is_negative_root(&self, x: &Weight) -> bool {
        matches!(self.classify_root(x), Some(RootSign::Negative(_)))
    }

    /// Positive roots whose support lies in `j`.
    pub fn levi_roots(&self, j: &[usize]) -> Vec<&Root> {
        self.positive_roots
            .iter()
            .filter(|r| {
                r.simple_coords
                    .iter()
                    .enumerate()
                    .all(|(i, &c)| c == 0 || j.contains(&i))
            })
            .collect()
    }

    /// The invariant form on weights, `(i', j') = i·j` extended rationally.
    pub fn form(&self, x: &Weight, y: &Weight) -> Rational64 {
        let cx = self.simple_root_coords(x);
        let cy = self.simple_root_coords(y);
        let mut acc = Rational64::zero();
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                acc += cx[i] * cy[j] * self.cartan.dot[i][j];
            }
        }
        acc
    }
}

fn num_integer_lcm(a: i64, b: i64) -> i64 {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(t: TypeLabel, n: usize) -> RootDatum {
        RootDatum::new(t, n).unwrap()
    }

    #[test]
    fn rank_one() {
        let d = datum(TypeLabel::A, 1);
        assert_eq!(d.num_positive_roots(), 1);
        assert_eq!(d.cartan.dot[0][0], 2);
        assert_eq!(d.pairing(0, &d.simple_root(0)).unwrap(), 2);
    }

    #[test]
    fn a2_roots_and_pairings() {
        let d = datum(TypeLabel::A, 2);
        let coords: Vec<_> = d
            .positive_roots
            .iter()
            .map(|r| r.simple_coords.clone())
            .collect();
        assert_eq!(coords, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(d.pairing(0, &d.simple_root(1)).unwrap(), -1);
        assert_eq!(d.pairing(1, &Weight::zero(2)).unwrap(), 0);
        assert!(d.pairing(2, &Weight::zero(2)).is_err());
        let a1 = d.simple_root(0);
        let a2 = d.simple_root(1);
        assert_eq!(d.reflect(0, &a2).unwrap(), &a1 + &a2);
        assert_eq!(d.reflect(0, &a1).unwrap(), -&a1);
        assert_eq!(d.hgt(&d.rho), Rational64::from_integer(2));
    }

    #[test]
    fn classical_root_counts() {
        let cases = [
            (TypeLabel::A, 1, 1),
            (TypeLabel::A, 3, 6),
            (TypeLabel::A, 4, 10),
            (TypeLabel::B, 2, 4),
            (TypeLabel::C, 2, 4),
            (TypeLabel::B, 3, 9),
            (TypeLabel::C, 3, 9),
            (TypeLabel::D, 4, 12),
            (TypeLabel::G, 2, 6),
            (TypeLabel::F, 4, 24),
            (TypeLabel::E, 6, 36),
            (TypeLabel::E, 7, 63),
            (TypeLabel::E, 8, 120),
        ];
        for (t, n, count) in cases {
            let d = datum(t, n);
            assert_eq!(d.num_positive_roots(), count, "{t}{n}");
            assert_eq!(d.two_rho, d.rho.scale(2), "{t}{n}");
        }
    }

    #[test]
    fn invalid_types_rejected() {
        assert!(RootDatum::new(TypeLabel::A, 0).is_err());
        assert!(RootDatum::new(TypeLabel::B, 1).is_err());
        assert!(RootDatum::new(TypeLabel::D, 3).is_err());
        assert!(RootDatum::new(TypeLabel::E, 5).is_err());
        assert!(RootDatum::new(TypeLabel::G, 3).is_err());
        assert!("Q".parse::<TypeLabel>().is_err());
    }

    #[test]
    fn heights() {
        let d = datum(TypeLabel::A, 2);
        for i in 0..2 {
            assert_eq!(d.hgt(&d.simple_root(i)), Rational64::one());
        }
        assert_eq!(d.hgt(&Weight::zero(2)), Rational64::zero());
        // fundamental weight of A2 has height 1 = (2/3 + 1/3)
        assert_eq!(d.hgt(&Weight(vec![1, 0])), Rational64::one());
        let top = &d.simple_root(0) + &d.simple_root(1);
        assert_eq!(d.hgt_j(&top, &[0]), Rational64::one());
        assert_eq!(d.hgt_j(&top, &[]), d.hgt(&top));
        for r in &d.positive_roots {
            assert_eq!(d.hgt_j(&r.weight, &[0, 1]), Rational64::zero());
        }
        let (num, den) = d.height_functional(&[]);
        assert_eq!((num, den), (vec![1, 1], 1));

        // B2: the short fundamental weight has half-integral height
        let b = datum(TypeLabel::B, 2);
        assert_eq!(b.hgt(&Weight(vec![0, 1])), Rational64::new(3, 2));
        assert_eq!(b.height_functional(&[]), (vec![4, 3], 2));
    }

    #[test]
    fn positive_roots_closed_and_heights_positive() {
        for (t, n) in [
            (TypeLabel::B, 3),
            (TypeLabel::G, 2),
            (TypeLabel::F, 4),
            (TypeLabel::D, 5),
        ] {
            let d = datum(t, n);
            for a in &d.positive_roots {
                assert!(a.height() >= 1);
                assert_eq!(d.hgt(&a.weight), Rational64::from_integer(a.height()));
                let is_simple =
                    a.simple_coords.iter().filter(|&&c| c != 0).count() == 1 && a.height() == 1;
                assert_eq!(a.height() == 1, is_simple);
                for b in &d.positive_roots {
                    let s = &a.weight + &b.weight;
                    if d.classify_root(&s).is_some() {
                        assert!(d.is_positive_root(&s));
                    }
                }
            }
            // reflect(i, .) permutes R+ \ {i'}
            for i in 0..n {
                let ai = d.simple_root(i);
                for a in &d.positive_roots {
                    let image = d.reflect(i, &a.weight).unwrap();
                    if a.weight == ai {
                        assert_eq!(image, -&ai);
                    } else {
                        assert!(d.is_positive_root(&image));
                    }
                }
            }
        }
    }

    #[test]
    fn form_matches_dot() {
        let d = datum(TypeLabel::G, 2);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(
                    d.form(&d.simple_root(i), &d.simple_root(j)),
                    Rational64::from_integer(d.cartan.dot[i][j])
                );
            }
        }
    }

    #[test]
    fn weight_parsing() {
        assert_eq!("1, 0,-2".parse::<Weight>().unwrap(), Weight(vec![1, 0, -2]));
        assert!("1,x".parse::<Weight>().is_err());
    }
}
