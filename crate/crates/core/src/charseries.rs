//! Exact truncated arithmetic in `Z[t, t^{-1}][[weights]]`.
//!
//! A series lives in a [`Grading`]: a linear filtration degree `φ` on
//! monomials `e^μ t^k` that is strictly positive on every admissible
//! geometric ratio. The series stores the exact coefficients of every
//! monomial with `φ ≤ window`; nothing outside the window is kept. A series
//! without a window is a finite Laurent polynomial, exact everywhere.
//!
//! * Regime A (t-adic): `φ = tdeg`.
//! * Regime B (weight-adic): `φ = -hgt(μ)`.
//! * Parabolic regime for `J ⊆ I`: `φ = tdeg - 2 hgt_J(μ)`, which is
//!   positive on every coordinate of the parabolic local-cohomology module.
//!
//! For a product, a coefficient with `φ(x) ≤ D` only consults operand
//! coefficients down to the depth forced by the other operand's support
//! bound, so the product window is `min(D_a + s_b, D_b + s_a)` where `s` is
//! the least filtration degree in the support.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Bound::{Excluded, Unbounded};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootdata::{RootDatum, Weight};

/// The monomial `e^weight t^tdeg`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Monomial {
    pub weight: Weight,
    pub tdeg: i64,
}

impl Monomial {
    pub fn new(weight: Weight, tdeg: i64) -> Self {
        Monomial { weight, tdeg }
    }

    pub fn one(rank: usize) -> Self {
        Monomial::new(Weight::zero(rank), 0)
    }

    pub fn t(rank: usize, k: i64) -> Self {
        Monomial::new(Weight::zero(rank), k)
    }

    pub fn is_one(&self) -> bool {
        self.tdeg == 0 && self.weight.is_zero()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(&self.weight + &other.weight, self.tdeg + other.tdeg)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial::new(&self.weight - &other.weight, self.tdeg - other.tdeg)
    }

    pub fn pow(&self, k: i64) -> Monomial {
        Monomial::new(self.weight.scale(k), self.tdeg * k)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.weight.is_zero(), self.tdeg) {
            (true, 0) => f.write_str("1"),
            (true, d) => write!(f, "t^{d}"),
            (false, 0) => write!(f, "e^{}", self.weight),
            (false, d) => write!(f, "e^{} t^{d}", self.weight),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Regime {
    /// Complete in ascending t-degree.
    TAdic,
    /// Complete in descending height.
    WeightAdic,
    /// Complete in `tdeg - 2 hgt_J`; `J` zero-based and sorted.
    Parabolic(Vec<usize>),
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::TAdic => f.write_str("A"),
            Regime::WeightAdic => f.write_str("B"),
            Regime::Parabolic(j) => {
                let names: Vec<String> = j.iter().map(|i| (i + 1).to_string()).collect();
                write!(f, "J{{{}}}", names.join(","))
            }
        }
    }
}

/// A regime together with its filtration functional, tied to one root
/// datum. The functional is stored over a common denominator:
/// `φ(e^μ t^k) = (t_coeff·k + Σ weight_coeff[i]·μ[i]) / den`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grading {
    regime: Regime,
    t_coeff: i64,
    weight_coeff: Vec<i64>,
    den: i64,
    hgt_num: Vec<i64>,
    hgt_den: i64,
}

impl Grading {
    pub fn t_adic(datum: &RootDatum) -> Arc<Grading> {
        let (hgt_num, hgt_den) = datum.height_functional(&[]);
        Arc::new(Grading {
            regime: Regime::TAdic,
            t_coeff: 1,
            weight_coeff: vec![0; datum.rank()],
            den: 1,
            hgt_num,
            hgt_den,
        })
    }

    pub fn weight_adic(datum: &RootDatum) -> Arc<Grading> {
        let (hgt_num, hgt_den) = datum.height_functional(&[]);
        Arc::new(Grading {
            regime: Regime::WeightAdic,
            t_coeff: 0,
            weight_coeff: hgt_num.iter().map(|c| -c).collect(),
            den: hgt_den,
            hgt_num,
            hgt_den,
        })
    }

    pub fn parabolic(datum: &RootDatum, j: &[usize]) -> Arc<Grading> {
        let mut j = j.to_vec();
        j.sort_unstable();
        j.dedup();
        let (hgt_num, hgt_den) = datum.height_functional(&[]);
        let (hj_num, hj_den) = datum.height_functional(&j);
        Arc::new(Grading {
            regime: Regime::Parabolic(j),
            t_coeff: hj_den,
            weight_coeff: hj_num.iter().map(|c| -2 * c).collect(),
            den: hj_den,
            hgt_num,
            hgt_den,
        })
    }

    pub fn regime(&self) -> &Regime {
        &self.regime
    }

    pub fn rank(&self) -> usize {
        self.weight_coeff.len()
    }

    fn phi_scaled(&self, m: &Monomial) -> i64 {
        self.t_coeff * m.tdeg
            + self
                .weight_coeff
                .iter()
                .zip(&m.weight.0)
                .map(|(c, x)| c * x)
                .sum::<i64>()
    }

    /// Filtration degree of a monomial.
    pub fn phi(&self, m: &Monomial) -> Rational64 {
        Rational64::new(self.phi_scaled(m), self.den)
    }

    /// Largest scaled bound `b` with `φ_scaled ≤ b ⇔ φ ≤ bound`.
    fn scale_bound(&self, bound: Rational64) -> i64 {
        (bound * self.den).floor().to_integer()
    }

    fn hgt_scaled(&self, w: &Weight) -> i64 {
        self.hgt_num.iter().zip(&w.0).map(|(c, x)| c * x).sum()
    }

    pub fn hgt(&self, w: &Weight) -> Rational64 {
        Rational64::new(self.hgt_scaled(w), self.hgt_den)
    }

    /// Name of the filtration functional, for reports.
    pub fn functional_name(&self) -> &'static str {
        match self.regime {
            Regime::TAdic => "tdeg",
            Regime::WeightAdic => "-hgt",
            Regime::Parabolic(_) => "tdeg-2hgt_J",
        }
    }
}

/// Formula name and parameters that produced a character.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub formula: String,
    pub params: BTreeMap<String, String>,
}

impl Provenance {
    pub fn new(formula: &str) -> Self {
        Provenance {
            formula: formula.to_string(),
            params: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }
}

#[derive(Debug, Clone)]
pub struct BigradedSeries {
    grading: Arc<Grading>,
    terms: BTreeMap<Monomial, BigInt>,
    /// Scaled filtration bound; `None` means exact everywhere.
    window: Option<i64>,
    provenance: Option<Provenance>,
}

/// First coefficient where two series disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Difference {
    pub monomial: Monomial,
    pub left: String,
    pub right: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindowComparison {
    pub equal: bool,
    pub compared_terms: usize,
    pub first_difference: Option<Difference>,
}

impl BigradedSeries {
    pub fn zero(grading: &Arc<Grading>) -> Self {
        BigradedSeries {
            grading: grading.clone(),
            terms: BTreeMap::new(),
            window: None,
            provenance: None,
        }
    }

    pub fn one(grading: &Arc<Grading>) -> Self {
        Self::monomial(grading, Monomial::one(grading.rank()))
    }

    pub fn monomial(grading: &Arc<Grading>, m: Monomial) -> Self {
        Self::from_terms(grading, [(m, BigInt::one())])
    }

    /// A finite Laurent polynomial.
    pub fn from_terms<I, C>(grading: &Arc<Grading>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero(grading);
        for (m, c) in terms {
            debug_assert_eq!(m.weight.rank(), grading.rank());
            *out.terms.entry(m).or_insert_with(BigInt::zero) += c.into();
        }
        out.prune();
        out
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn grading(&self) -> &Arc<Grading> {
        &self.grading
    }

    pub fn regime(&self) -> &Regime {
        &self.grading.regime
    }

    pub fn rank(&self) -> usize {
        self.grading.rank()
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn with_provenance(mut self, p: Provenance) -> Self {
        self.provenance = Some(p);
        self
    }

    /// The truncation bound on `φ`, or `None` for an exact polynomial.
    pub fn window(&self) -> Option<Rational64> {
        self.window.map(|w| Rational64::new(w, self.grading.den))
    }

    pub fn is_polynomial(&self) -> bool {
        self.window.is_none()
    }

    /// Least filtration degree of the true support: the smallest stored
    /// degree, or the window itself when nothing is stored inside it.
    /// `None` for the zero polynomial.
    pub fn support_bound(&self) -> Option<Rational64> {
        self.support_bound_scaled()
            .map(|s| Rational64::new(s, self.grading.den))
    }

    fn support_bound_scaled(&self) -> Option<i64> {
        self.terms
            .keys()
            .map(|m| self.grading.phi_scaled(m))
            .min()
            .or(self.window)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn in_window(&self, m: &Monomial) -> bool {
        self.window.is_none_or(|w| self.grading.phi_scaled(m) <= w)
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Laurent polynomial in `t` at a fixed weight, as `tdeg → coefficient`.
    pub fn at_weight(&self, w: &Weight) -> BTreeMap<i64, BigInt> {
        let lo = Monomial::new(w.clone(), i64::MIN);
        let hi = Monomial::new(w.clone(), i64::MAX);
        self.terms
            .range(lo..=hi)
            .map(|(m, c)| (m.tdeg, c.clone()))
            .collect()
    }

    /// Finite weight polynomial at a fixed t-degree.
    pub fn t_slice(&self, k: i64) -> BTreeMap<Weight, BigInt> {
        self.terms
            .iter()
            .filter(|(m, _)| m.tdeg == k)
            .map(|(m, c)| (m.weight.clone(), c.clone()))
            .collect()
    }

    /// Restricts to a smaller window.
    pub fn truncate(&self, bound: Rational64) -> Self {
        let b = self.grading.scale_bound(bound);
        let b = self.window.map_or(b, |w| w.min(b));
        let mut out = self.clone();
        out.window = Some(b);
        out.terms.retain(|m, _| self.grading.phi_scaled(m) <= b);
        out
    }

    fn check_same_grading(&self, other: &Self) -> Result<()> {
        if self.grading != other.grading {
            return Err(Error::RegimeMismatch {
                left: self.grading.regime.to_string(),
                right: other.grading.regime.to_string(),
            });
        }
        Ok(())
    }

    fn combine_windows(a: Option<i64>, b: Option<i64>) -> Option<i64> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_grading(other)?;
        let window = Self::combine_windows(self.window, other.window);
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            *terms.entry(m.clone()).or_insert_with(BigInt::zero) += c;
        }
        let mut out = BigradedSeries {
            grading: self.grading.clone(),
            terms,
            window,
            provenance: None,
        };
        if let Some(w) = window {
            let g = out.grading.clone();
            out.terms.retain(|m, _| g.phi_scaled(m) <= w);
        }
        out.prune();
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        out.provenance = None;
        for c in out.terms.values_mut() {
            *c = -&*c;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scalar_mul(&self, c: &BigInt) -> Self {
        let mut out = self.clone();
        out.provenance = None;
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out.prune();
        out
    }

    /// Window-exact product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_grading(other)?;
        let g = &self.grading;
        let (sa, sb) = match (self.support_bound_scaled(), other.support_bound_scaled()) {
            (Some(a), Some(b)) => (a, b),
            // one side is the zero polynomial
            _ => return Ok(Self::zero(g)),
        };
        let window =
            Self::combine_windows(self.window.map(|d| d + sb), other.window.map(|d| d + sa));

        let mut right: Vec<(i64, &Monomial, &BigInt)> = other
            .terms
            .iter()
            .map(|(m, c)| (g.phi_scaled(m), m, c))
            .collect();
        right.sort_by_key(|(p, _, _)| *p);

        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (ma, ca) in &self.terms {
            let pa = g.phi_scaled(ma);
            for (pb, mb, cb) in &right {
                if let Some(w) = window {
                    if pa + pb > w {
                        break;
                    }
                }
                let prod = ca * *cb;
                *acc.entry(ma.mul(mb)).or_insert_with(BigInt::zero) += prod;
            }
        }
        let mut out = BigradedSeries {
            grading: g.clone(),
            terms: acc.into_iter().collect(),
            window,
            provenance: None,
        };
        out.prune();
        Ok(out)
    }

    /// Multiplies by a single monomial; the window shifts by `φ(m)`.
    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        let shift = self.grading.phi_scaled(m);
        BigradedSeries {
            grading: self.grading.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
            window: self.window.map(|w| w + shift),
            provenance: None,
        }
    }

    fn check_admissible(&self, m: &Monomial) -> Result<i64> {
        let phi = self.grading.phi_scaled(m);
        if phi <= 0 {
            return Err(Error::InadmissibleInverse {
                monomial: m.to_string(),
                regime: self.grading.regime.to_string(),
            });
        }
        Ok(phi)
    }

    /// `self · (1 - m)^{-1}`, exact on `φ ≤ min(window, bound)`.
    ///
    /// Uses the recurrence `g(x) = f(x) + g(x - m)`, sweeping the keys in
    /// the translation-invariant lexicographic order in the direction of `m`.
    pub fn mul_geom_inverse(&self, m: &Monomial, bound: Option<Rational64>) -> Result<Self> {
        self.check_admissible(m)?;
        let g = self.grading.clone();
        let window = Self::combine_windows(self.window, bound.map(|b| g.scale_bound(b)))
            .ok_or(Error::MissingWindow)?;

        let mut terms: BTreeMap<Monomial, BigInt> = self
            .terms
            .iter()
            .filter(|(k, _)| g.phi_scaled(k) <= window)
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        let ascending = *m > Monomial::one(g.rank());
        let mut cursor: Option<Monomial> = None;
        loop {
            let next = match (&cursor, ascending) {
                (None, true) => terms.iter().next(),
                (None, false) => terms.iter().next_back(),
                (Some(c), true) => terms.range((Excluded(c), Unbounded)).next(),
                (Some(c), false) => terms.range((Unbounded, Excluded(c))).next_back(),
            };
            let Some((key, value)) = next else { break };
            let key = key.clone();
            if !value.is_zero() {
                let value = value.clone();
                let target = key.mul(m);
                if g.phi_scaled(&target) <= window {
                    *terms.entry(target).or_insert_with(BigInt::zero) += value;
                }
            }
            cursor = Some(key);
        }
        let mut out = BigradedSeries {
            grading: g,
            terms,
            window: Some(window),
            provenance: None,
        };
        out.prune();
        Ok(out)
    }

    /// `Σ_{k≥0} m^k`, truncated to `φ ≤ bound`.
    pub fn geom_inverse(grading: &Arc<Grading>, m: &Monomial, bound: Rational64) -> Result<Self> {
        Self::one(grading).mul_geom_inverse(m, Some(bound))
    }

    /// `(μ, k) ↦ (cμ, k)`.
    pub fn scale_weights(&self, c: i64) -> Result<Self> {
        assert!(c >= 1, "weight scale must be positive");
        let window = match self.grading.regime {
            Regime::TAdic => self.window,
            Regime::WeightAdic => self.window.map(|w| w * c),
            Regime::Parabolic(_) => {
                return Err(Error::UnsupportedReindex(self.grading.regime.to_string()))
            }
        };
        Ok(BigradedSeries {
            grading: self.grading.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (Monomial::new(m.weight.scale(c), m.tdeg), v.clone()))
                .collect(),
            window,
            provenance: None,
        })
    }

    /// `(μ, k) ↦ (μ, pk)`.
    pub fn substitute_t_power(&self, p: i64) -> Result<Self> {
        assert!(p >= 1, "t substitution power must be positive");
        let window = match self.grading.regime {
            Regime::TAdic => self.window.map(|w| w * p),
            Regime::WeightAdic => self.window,
            Regime::Parabolic(_) => {
                return Err(Error::UnsupportedReindex(self.grading.regime.to_string()))
            }
        };
        Ok(BigradedSeries {
            grading: self.grading.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (Monomial::new(m.weight.clone(), m.tdeg * p), v.clone()))
                .collect(),
            window,
            provenance: None,
        })
    }

    /// Coefficient-wise comparison on the intersection of both windows.
    /// The gradings may differ (e.g. a parabolic series against a regime A
    /// series) as long as the rank agrees.
    pub fn equal_on_window(&self, other: &Self) -> WindowComparison {
        assert_eq!(
            self.rank(),
            other.rank(),
            "comparing series of different rank"
        );
        let shared = |m: &Monomial| self.in_window(m) && other.in_window(m);
        let mut compared = 0usize;
        let mut worst: Option<(i64, Monomial)> = None;
        let mut note = |m: &Monomial| {
            let key = (self.grading.phi_scaled(m), m.clone());
            if worst.as_ref().is_none_or(|w| key < *w) {
                worst = Some(key);
            }
        };
        for (m, c) in &self.terms {
            if !shared(m) {
                continue;
            }
            compared += 1;
            if other.terms.get(m) != Some(c) {
                note(m);
            }
        }
        for m in other.terms.keys() {
            if shared(m) && !self.terms.contains_key(m) {
                compared += 1;
                note(m);
            }
        }
        let first_difference = worst.map(|(_, m)| Difference {
            left: self.coeff(&m).to_string(),
            right: other.coeff(&m).to_string(),
            monomial: m,
        });
        WindowComparison {
            equal: first_difference.is_none(),
            compared_terms: compared,
            first_difference,
        }
    }

    /// Term of least `(φ, lex)`; the order is additive, so leading terms
    /// multiply.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        let g = &self.grading;
        self.terms
            .iter()
            .min_by(|(a, _), (b, _)| g.phi_scaled(a).cmp(&g.phi_scaled(b)).then_with(|| a.cmp(b)))
    }

    /// Finds `m` with `self = m · other` on the common window.
    pub fn detect_monomial_shift(&self, other: &Self) -> Option<Monomial> {
        if self.grading != other.grading {
            return None;
        }
        let (la, ca) = self.leading_term()?;
        let (lb, cb) = other.leading_term()?;
        if ca != cb {
            return None;
        }
        let m = la.div(lb);
        let shifted = other.mul_monomial(&m);
        let cmp = self.equal_on_window(&shifted);
        (cmp.equal && cmp.compared_terms > 0).then_some(m)
    }

    /// Sum of all coefficients (dimension of a finite character).
    pub fn total(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn all_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Terms sorted by `(hgt, weight, tdeg)`.
    pub fn canonical_terms(&self) -> Vec<(&Monomial, &BigInt)> {
        let g = &self.grading;
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| canonical_order(g, a, b));
        v
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let terms: Vec<TermJson> = self
            .canonical_terms()
            .into_iter()
            .map(|(m, c)| TermJson {
                weight: m.weight.0.clone(),
                hgt: self.grading.hgt(&m.weight).to_string(),
                tdeg: m.tdeg,
                coeff: c.to_string(),
            })
            .collect();
        let doc = SeriesJson {
            format: SERIES_FORMAT,
            regime: self.grading.regime.to_string(),
            rank: self.rank(),
            window: WindowJson {
                functional: self.grading.functional_name(),
                bound: self.window().map(|w| w.to_string()),
            },
            formula: self.provenance.clone(),
            terms,
        };
        serde_json::to_value(doc).expect("series serializes")
    }

    /// Canonical pretty-printed JSON.
    pub fn to_canonical_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("series serializes");
        s.push('\n');
        s
    }
}

pub const SERIES_FORMAT: &str = "semiinf-series/1";

fn canonical_order(g: &Grading, a: &Monomial, b: &Monomial) -> Ordering {
    g.hgt_scaled(&a.weight)
        .cmp(&g.hgt_scaled(&b.weight))
        .then_with(|| a.weight.cmp(&b.weight))
        .then_with(|| a.tdeg.cmp(&b.tdeg))
}

#[derive(Serialize)]
struct SeriesJson {
    format: &'static str,
    regime: String,
    rank: usize,
    window: WindowJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    formula: Option<Provenance>,
    terms: Vec<TermJson>,
}

#[derive(Serialize)]
struct WindowJson {
    functional: &'static str,
    bound: Option<String>,
}

#[derive(Serialize)]
struct TermJson {
    weight: Vec<i64>,
    hgt: String,
    tdeg: i64,
    coeff: String,
}

impl PartialEq for BigradedSeries {
    /// Same grading, window and coefficients; provenance is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.grading == other.grading && self.window == other.window && self.terms == other.terms
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::TypeLabel;

    fn a1() -> RootDatum {
        RootDatum::new(TypeLabel::A, 1).unwrap()
    }

    fn mono(w: i64, k: i64) -> Monomial {
        Monomial::new(Weight(vec![w]), k)
    }

    fn r(n: i64) -> Rational64 {
        Rational64::from_integer(n)
    }

    #[test]
    fn identity_monomial() {
        let g = Grading::t_adic(&a1());
        let f = BigradedSeries::geom_inverse(&g, &mono(2, 1), r(6)).unwrap();
        let one = BigradedSeries::one(&g);
        assert_eq!(f.mul(&one).unwrap(), f);
        assert_eq!(one.mul(&f).unwrap(), f);
    }

    #[test]
    fn telescoping_geometric_series() {
        for g in [Grading::t_adic(&a1()), Grading::weight_adic(&a1())] {
            let m = mono(-2, 1);
            let geo = BigradedSeries::geom_inverse(&g, &m, r(7)).unwrap();
            let factor = BigradedSeries::from_terms(&g, [(Monomial::one(1), 1), (m.clone(), -1)]);
            let prod = factor.mul(&geo).unwrap();
            assert!(prod.equal_on_window(&BigradedSeries::one(&g)).equal);
            assert_eq!(prod.window(), geo.window());
        }
    }

    #[test]
    fn geometric_series_terms() {
        let d = a1();
        let a = Grading::t_adic(&d);
        let geo = BigradedSeries::geom_inverse(&a, &mono(2, 1), r(4)).unwrap();
        let expected: Vec<_> = (0..=4).map(|k| mono(2 * k, k)).collect();
        assert_eq!(
            geo.terms().map(|(m, _)| m.clone()).collect::<Vec<_>>(),
            expected
        );

        let b = Grading::weight_adic(&d);
        let geo = BigradedSeries::geom_inverse(&b, &mono(-6, 2), r(9)).unwrap();
        // hgt of e^{-6k} is -3k
        assert_eq!(geo.len(), 4);
        assert_eq!(geo.coeff(&mono(-18, 6)), BigInt::one());

        let err = BigradedSeries::geom_inverse(&b, &mono(2, 0), r(4)).unwrap_err();
        assert!(matches!(err, Error::InadmissibleInverse { .. }));
        let err = BigradedSeries::geom_inverse(&a, &mono(2, 0), r(4)).unwrap_err();
        assert!(matches!(err, Error::InadmissibleInverse { .. }));
        assert!(matches!(
            BigradedSeries::one(&a).mul_geom_inverse(&mono(0, 1), None),
            Err(Error::MissingWindow)
        ));
    }

    #[test]
    fn regime_mismatch_rejected() {
        let d = a1();
        let a = BigradedSeries::one(&Grading::t_adic(&d));
        let b = BigradedSeries::one(&Grading::weight_adic(&d));
        assert!(matches!(a.mul(&b), Err(Error::RegimeMismatch { .. })));
        assert!(matches!(a.add(&b), Err(Error::RegimeMismatch { .. })));
    }

    #[test]
    fn identity_factor_at_weight() {
        let g = Grading::weight_adic(&a1());
        let s = BigradedSeries::from_terms(&g, [(mono(-2, -1), 1), (mono(-2, 0), 1)]);
        let p = s.mul(&BigradedSeries::one(&g)).unwrap();
        let at = p.at_weight(&Weight(vec![-2]));
        assert_eq!(
            at,
            BTreeMap::from([(-1, BigInt::one()), (0, BigInt::one())])
        );
    }

    #[test]
    fn kostant_a1_t2_has_five_monomials() {
        // (1+t)/((1-e^{-2}t)(1-e^{2}t)), expanded by hand at t^2:
        // e^4 + 1 + e^-4 from the product, e^2 + e^-2 from t·(t^1 slice)
        let g = Grading::t_adic(&a1());
        let num = BigradedSeries::from_terms(&g, [(mono(0, 0), 1), (mono(0, 1), 1)]);
        let k = num
            .mul_geom_inverse(&mono(-2, 1), Some(r(3)))
            .unwrap()
            .mul_geom_inverse(&mono(2, 1), Some(r(3)))
            .unwrap();
        let slice = k.t_slice(2);
        assert_eq!(slice.len(), 5);
        let weights: Vec<i64> = slice.keys().map(|w| w.0[0]).collect();
        assert_eq!(weights, vec![-4, -2, 0, 2, 4]);
        assert!(slice.values().all(|c| c == &BigInt::one()));
        assert!(k.equal_on_window(&k).equal);
    }

    #[test]
    fn product_window_accounts_for_negative_support() {
        // t^{-3}·(1-t)^{-1} in regime A: operand known to t^5 gives product to t^2
        let g = Grading::t_adic(&a1());
        let geo = BigradedSeries::geom_inverse(&g, &mono(0, 1), r(5)).unwrap();
        let shift = BigradedSeries::monomial(&g, mono(0, -3));
        let p = shift.mul(&geo).unwrap();
        assert_eq!(p.window(), Some(r(2)));
        assert_eq!(p.len(), 6);
        assert_eq!(p, geo.mul_monomial(&mono(0, -3)));
    }

    #[test]
    fn shift_detection() {
        let g = Grading::weight_adic(&a1());
        let b = BigradedSeries::geom_inverse(&g, &mono(-2, 1), r(10)).unwrap();
        let a = b.mul_monomial(&mono(0, 1));
        assert_eq!(a.detect_monomial_shift(&b), Some(mono(0, 1)));
        let unrelated = BigradedSeries::geom_inverse(&g, &mono(-2, 0), r(10)).unwrap();
        assert_eq!(unrelated.detect_monomial_shift(&b), None);
    }

    #[test]
    fn reindexing() {
        let d = a1();
        let g = Grading::weight_adic(&d);
        let s = BigradedSeries::geom_inverse(&g, &mono(-2, 1), r(5)).unwrap();
        assert_eq!(s.scale_weights(1).unwrap(), s);
        assert_eq!(s.substitute_t_power(1).unwrap(), s);
        let scaled = s.scale_weights(3).unwrap();
        assert_eq!(scaled.window(), Some(r(15)));
        assert_eq!(scaled.coeff(&mono(-6, 1)), BigInt::one());
        let sub = s.substitute_t_power(2).unwrap();
        assert_eq!(sub.coeff(&mono(-2, 2)), BigInt::one());
        assert_eq!(sub.coeff(&mono(-2, 1)), BigInt::zero());
        let p = BigradedSeries::one(&Grading::parabolic(&d, &[]));
        assert!(p.scale_weights(2).is_err());
    }

    #[test]
    fn first_difference_is_reported() {
        let g = Grading::t_adic(&a1());
        let a = BigradedSeries::from_terms(&g, [(mono(0, 0), 1), (mono(2, 3), 4)]);
        let b = BigradedSeries::from_terms(&g, [(mono(0, 0), 1), (mono(2, 3), 5), (mono(4, 5), 1)]);
        let cmp = a.equal_on_window(&b);
        assert!(!cmp.equal);
        let d = cmp.first_difference.unwrap();
        assert_eq!(d.monomial, mono(2, 3));
        assert_eq!((d.left.as_str(), d.right.as_str()), ("4", "5"));
        // truncation hides the disagreement
        assert!(a.truncate(r(2)).equal_on_window(&b).equal);
    }

    #[test]
    fn json_is_sorted_by_height() {
        let g = Grading::weight_adic(&a1());
        let s =
            BigradedSeries::from_terms(&g, [(mono(0, 0), 1), (mono(-2, 1), 2), (mono(-2, -1), 3)]);
        let v = s.to_json_value();
        let weights: Vec<i64> = v["terms"]
            .as_array()
            .unwrap()
            .iter()
            .map(|t| t["weight"][0].as_i64().unwrap())
            .collect();
        assert_eq!(weights, vec![-2, -2, 0]);
        assert_eq!(v["terms"][0]["tdeg"], -1);
        assert_eq!(v["regime"], "B");
        assert_eq!(s.to_canonical_json(), s.to_canonical_json());
    }
}
