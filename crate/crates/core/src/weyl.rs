//! The finite Weyl group: enumeration, lengths, reduced words, Bruhat order.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::rootdata::{Root, RootDatum, Weight};

/// An element of `W`, identified by its action on `X` in fundamental
/// coordinates.
#[derive(Debug, Clone)]
pub struct WeylElement {
    rank: usize,
    /// Row-major `rank × rank` matrix.
    matrix: Vec<i64>,
    pub length: usize,
    pub reduced_word: Vec<usize>,
    /// Position in the enumeration of the owning group.
    pub index: usize,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.matrix.hash(state);
    }
}

impl WeylElement {
    pub fn act(&self, x: &Weight) -> Weight {
        let n = self.rank;
        Weight(
            (0..n)
                .map(|r| (0..n).map(|c| self.matrix[r * n + c] * x.0[c]).sum())
                .collect(),
        )
    }

    pub fn matrix(&self) -> &[i64] {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    /// Word rendered as `e` or `s1s2…` (one-based).
    pub fn word_label(&self) -> String {
        if self.reduced_word.is_empty() {
            "e".to_string()
        } else {
            self.reduced_word
                .iter()
                .map(|i| format!("s{}", i + 1))
                .collect()
        }
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word_label())
    }
}

fn mat_mul(n: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; n * n];
    for r in 0..n {
        for k in 0..n {
            let x = a[r * n + k];
            if x == 0 {
                continue;
            }
            for c in 0..n {
                out[r * n + c] += x * b[k * n + c];
            }
        }
    }
    out
}

fn simple_reflection_matrix(datum: &RootDatum, i: usize) -> Vec<i64> {
    let n = datum.rank();
    let alpha = datum.simple_root(i);
    let mut m = vec![0; n * n];
    for r in 0..n {
        m[r * n + r] = 1;
        m[r * n + i] -= alpha.0[r];
    }
    m
}

/// The Weyl group with full multiplication tables and memoized Bruhat
/// lower ideals.
#[derive(Debug)]
pub struct WeylGroup {
    datum: RootDatum,
    elements: Vec<WeylElement>,
    by_matrix: HashMap<Vec<i64>, usize>,
    by_length: Vec<Vec<usize>>,
    right_mul: Vec<Vec<usize>>,
    left_mul: Vec<Vec<usize>>,
    longest: usize,
    lower_ideals: Vec<OnceLock<Vec<u64>>>,
}

impl WeylGroup {
    /// Breadth-first closure of the identity under right multiplication by
    /// simple reflections.
    pub fn enumerate(datum: &RootDatum) -> Self {
        let n = datum.rank();
        let gens: Vec<Vec<i64>> = (0..n).map(|i| simple_reflection_matrix(datum, i)).collect();
        let mut identity = vec![0; n * n];
        for r in 0..n {
            identity[r * n + r] = 1;
        }

        let mut matrices: Vec<Vec<i64>> = vec![identity.clone()];
        let mut lengths: Vec<usize> = vec![0];
        let mut by_matrix: HashMap<Vec<i64>, usize> = HashMap::from([(identity, 0)]);
        let mut right_mul: Vec<Vec<usize>> = Vec::new();
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        while let Some(idx) = queue.pop_front() {
            let mut row = Vec::with_capacity(n);
            for g in &gens {
                let m = mat_mul(n, &matrices[idx], g);
                let target = match by_matrix.get(&m) {
                    Some(&t) => t,
                    None => {
                        let t = matrices.len();
                        by_matrix.insert(m.clone(), t);
                        matrices.push(m);
                        lengths.push(lengths[idx] + 1);
                        queue.push_back(t);
                        t
                    }
                };
                row.push(target);
            }
            if right_mul.len() <= idx {
                right_mul.resize(idx + 1, Vec::new());
            }
            right_mul[idx] = row;
        }

        let left_mul: Vec<Vec<usize>> = matrices
            .iter()
            .map(|m| gens.iter().map(|g| by_matrix[&mat_mul(n, g, m)]).collect())
            .collect();

        let max_len = lengths.iter().copied().max().unwrap_or(0);
        let mut by_length = vec![Vec::new(); max_len + 1];
        for (idx, &l) in lengths.iter().enumerate() {
            by_length[l].push(idx);
        }

        // greedy left descents give the lexicographically least reduced word
        let words: Vec<Vec<usize>> = (0..matrices.len())
            .map(|mut idx| {
                let mut word = Vec::with_capacity(lengths[idx]);
                while lengths[idx] > 0 {
                    let i = (0..n)
                        .find(|&i| lengths[left_mul[idx][i]] < lengths[idx])
                        .expect("nonidentity element has a left descent");
                    word.push(i);
                    idx = left_mul[idx][i];
                }
                word
            })
            .collect();

        let elements: Vec<WeylElement> = matrices
            .into_iter()
            .zip(lengths)
            .zip(words)
            .enumerate()
            .map(|(index, ((matrix, length), reduced_word))| WeylElement {
                rank: n,
                matrix,
                length,
                reduced_word,
                index,
            })
            .collect();
        let longest = by_length[max_len][0];
        let lower_ideals = (0..elements.len()).map(|_| OnceLock::new()).collect();

        WeylGroup {
            datum: datum.clone(),
            elements,
            by_matrix,
            by_length,
            right_mul,
            left_mul,
            longest,
            lower_ideals,
        }
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, idx: usize) -> &WeylElement {
        &self.elements[idx]
    }

    pub fn identity(&self) -> &WeylElement {
        &self.elements[0]
    }

    pub fn longest(&self) -> &WeylElement {
        &self.elements[self.longest]
    }

    /// Indices of the elements of length `k`, in enumeration order.
    pub fn of_length(&self, k: usize) -> &[usize] {
        self.by_length.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn max_length(&self) -> usize {
        self.by_length.len() - 1
    }

    pub fn index_of(&self, w: &WeylElement) -> Option<usize> {
        self.by_matrix.get(&w.matrix).copied()
    }

    pub fn multiply(&self, v: usize, w: usize) -> usize {
        let mut idx = v;
        for &i in &self.elements[w].reduced_word {
            idx = self.right_mul[idx][i];
        }
        idx
    }

    pub fn inverse(&self, w: usize) -> usize {
        let mut idx = 0;
        for &i in self.elements[w].reduced_word.iter().rev() {
            idx = self.right_mul[idx][i];
        }
        idx
    }

    /// `w · s_i`.
    pub fn times_generator(&self, w: usize, i: usize) -> usize {
        self.right_mul[w][i]
    }

    /// `s_i · w`.
    pub fn generator_times(&self, i: usize, w: usize) -> usize {
        self.left_mul[w][i]
    }

    /// The element `s_{i1} … s_{ik}` for an arbitrary (not necessarily
    /// reduced) word.
    pub fn from_word(&self, word: &[usize]) -> Result<usize> {
        let n = self.datum.rank();
        let mut idx = 0;
        for &i in word {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, rank: n });
            }
            idx = self.right_mul[idx][i];
        }
        Ok(idx)
    }

    /// Parses `e`, `s1s2`, or `1,2` (one-based generator indices).
    pub fn parse_word(&self, text: &str) -> Result<usize> {
        let t = text.trim();
        if t.is_empty() || t == "e" {
            return Ok(0);
        }
        let bad = || Error::InvalidWord(text.to_string());
        let letters: Vec<usize> = if t.starts_with('s') {
            t.split('s')
                .skip(1)
                .map(|p| p.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            t.split(',')
                .map(|p| p.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        };
        if letters.contains(&0) {
            return Err(bad());
        }
        self.from_word(&letters.iter().map(|i| i - 1).collect::<Vec<_>>())
    }

    pub fn act(&self, w: usize, x: &Weight) -> Weight {
        self.elements[w].act(x)
    }

    pub fn dot_action(&self, w: usize, lambda: &Weight) -> Weight {
        self.datum.dot_action(&self.elements[w], lambda)
    }

    /// `{α ∈ R⁺ : w(α) ∈ R⁻}`.
    pub fn inversions(&self, w: usize) -> Vec<&Root> {
        let el = &self.elements[w];
        self.datum
            .positive_roots
            .iter()
            .filter(|a| self.datum.is_negative_root(&el.act(&a.weight)))
            .collect()
    }

    /// Coefficients of `Σ_w t^{l(w)}`.
    pub fn poincare_polynomial(&self) -> Vec<u64> {
        self.by_length.iter().map(|v| v.len() as u64).collect()
    }

    fn lower_ideal(&self, w: usize) -> &[u64] {
        self.lower_ideals[w].get_or_init(|| {
            let words = self.order().div_ceil(64);
            let mut bits = vec![0u64; words];
            let el = &self.elements[w];
            match el.reduced_word.last() {
                None => bits[0] |= 1,
                Some(&s) => {
                    // [e, w] = [e, ws] ∪ [e, ws]·s by the subword property
                    let u = self.right_mul[w][s];
                    let below = self.lower_ideal(u);
                    bits.copy_from_slice(below);
                    for (word_idx, &chunk) in below.iter().enumerate() {
                        let mut c = chunk;
                        while c != 0 {
                            let b = c.trailing_zeros() as usize;
                            c &= c - 1;
                            let x = word_idx * 64 + b;
                            let xs = self.right_mul[x][s];
                            bits[xs / 64] |= 1 << (xs % 64);
                        }
                    }
                }
            }
            bits
        })
    }

    /// Bruhat order `v ≤ w`.
    pub fn bruhat_leq(&self, v: usize, w: usize) -> bool {
        if self.elements[v].length > self.elements[w].length {
            return false;
        }
        let bits = self.lower_ideal(w);
        bits[v / 64] >> (v % 64) & 1 == 1
    }

    /// All pairs `(w, w')` with `l(w') = l(w) + 1` and `w < w'`, ordered by
    /// length and then enumeration index.
    pub fn bruhat_covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for k in 0..self.max_length() {
            for &w in self.of_length(k) {
                for &up in self.of_length(k + 1) {
                    if self.bruhat_leq(w, up) {
                        out.push((w, up));
                    }
                }
            }
        }
        out
    }

    /// Length-two intervals `(w, w'', middles)`.
    pub fn length_two_intervals(&self) -> Vec<(usize, usize, Vec<usize>)> {
        let mut out = Vec::new();
        for k in 0..self.max_length().saturating_sub(1) {
            for &w in self.of_length(k) {
                for &top in self.of_length(k + 2) {
                    if !self.bruhat_leq(w, top) {
                        continue;
                    }
                    let middles: Vec<usize> = self
                        .of_length(k + 1)
                        .iter()
                        .copied()
                        .filter(|&m| self.bruhat_leq(w, m) && self.bruhat_leq(m, top))
                        .collect();
                    out.push((w, top, middles));
                }
            }
        }
        out
    }

    /// Every length-two Bruhat interval has exactly two middle elements.
    pub fn check_diamond(&self) -> Result<()> {
        for (w, top, middles) in self.length_two_intervals() {
            if middles.len() != 2 {
                return Err(Error::UnsatisfiableSigns(format!(
                    "interval [{}, {}] has {} middle elements",
                    self.elements[w],
                    self.elements[top],
                    middles.len()
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::TypeLabel;

    fn group(t: TypeLabel, n: usize) -> WeylGroup {
        WeylGroup::enumerate(&RootDatum::new(t, n).unwrap())
    }

    #[test]
    fn orders_match_degree_products() {
        let cases = [
            (TypeLabel::A, 1, 2),
            (TypeLabel::A, 2, 6),
            (TypeLabel::A, 3, 24),
            (TypeLabel::A, 4, 120),
            (TypeLabel::B, 2, 8),
            (TypeLabel::C, 3, 48),
            (TypeLabel::B, 4, 384),
            (TypeLabel::D, 4, 192),
            (TypeLabel::G, 2, 12),
            (TypeLabel::F, 4, 1152),
        ];
        for (t, n, order) in cases {
            let w = group(t, n);
            assert_eq!(w.order(), order, "{t}{n}");
            assert_eq!(w.of_length(0).len(), 1);
            assert_eq!(w.longest().length, w.datum().num_positive_roots());
            assert_eq!(w.of_length(w.max_length()).len(), 1);
        }
    }

    #[test]
    fn poincare_polynomials() {
        assert_eq!(group(TypeLabel::A, 1).poincare_polynomial(), vec![1, 1]);
        assert_eq!(
            group(TypeLabel::A, 2).poincare_polynomial(),
            vec![1, 2, 2, 1]
        );
        assert_eq!(
            group(TypeLabel::B, 2).poincare_polynomial(),
            vec![1, 2, 2, 2, 1]
        );
        let g2 = group(TypeLabel::G, 2).poincare_polynomial();
        assert_eq!(g2, vec![1, 2, 2, 2, 2, 2, 1]);
        assert_eq!(g2.iter().sum::<u64>(), 12);
    }

    #[test]
    fn lengths_inversions_and_words_agree() {
        for (t, n) in [(TypeLabel::A, 3), (TypeLabel::B, 3), (TypeLabel::G, 2)] {
            let w = group(t, n);
            let d = w.datum().clone();
            let w0 = w.longest().index;
            for el in w.elements() {
                assert_eq!(el.length, el.reduced_word.len());
                assert_eq!(el.length, w.inversions(el.index).len());
                // matrix is the product of simple reflections along the word
                let mut m = el.clone();
                m.matrix = {
                    let mut acc = w.identity().matrix.clone();
                    for &i in &el.reduced_word {
                        acc = mat_mul(n, &acc, &simple_reflection_matrix(&d, i));
                    }
                    acc
                };
                assert_eq!(&m, el);
                let ww0 = w.multiply(el.index, w0);
                assert_eq!(w.element(ww0).length, w.longest().length - el.length);
                assert_eq!(w.multiply(el.index, w.inverse(el.index)), 0);
            }
            assert_eq!(w.inversions(w0).len(), d.num_positive_roots());
            assert!(w.inversions(0).is_empty());
        }
    }

    #[test]
    fn a2_relations() {
        let w = group(TypeLabel::A, 2);
        let s1 = w.from_word(&[0]).unwrap();
        let s2 = w.from_word(&[1]).unwrap();
        let s1s2 = w.multiply(s1, s2);
        let mut acc = 0;
        for _ in 0..3 {
            acc = w.multiply(acc, s1s2);
        }
        assert_eq!(acc, 0);
        assert_eq!(w.longest().reduced_word, vec![0, 1, 0]);
        let inv: Vec<_> = w
            .inversions(s1)
            .iter()
            .map(|r| r.simple_coords.clone())
            .collect();
        assert_eq!(inv, vec![vec![1, 0]]);
        let x = Weight(vec![3, -1]);
        assert_eq!(w.act(0, &x), x);
        assert_eq!(w.parse_word("s1s2").unwrap(), s1s2);
        assert_eq!(w.parse_word("1,2").unwrap(), s1s2);
        assert_eq!(w.parse_word("e").unwrap(), 0);
        assert!(w.parse_word("s3").is_err());
        assert!(w.parse_word("s0").is_err());
    }

    #[test]
    fn bruhat_basics() {
        let w = group(TypeLabel::A, 2);
        let s1 = w.from_word(&[0]).unwrap();
        let s2s1 = w.from_word(&[1, 0]).unwrap();
        let s1s2 = w.from_word(&[0, 1]).unwrap();
        assert!(w.bruhat_leq(s1, s2s1));
        assert!(w.bruhat_leq(s1, s1s2));
        assert!(!w.bruhat_leq(s1s2, s2s1));
        for el in w.elements() {
            assert!(w.bruhat_leq(0, el.index));
            assert!(w.bruhat_leq(el.index, el.index));
        }
        let covers = w.bruhat_covers();
        assert_eq!(covers.len(), 8);
        let a1 = group(TypeLabel::A, 1);
        assert_eq!(a1.bruhat_covers(), vec![(0, 1)]);
    }

    #[test]
    fn bruhat_is_partial_order_with_diamonds() {
        for (t, n) in [
            (TypeLabel::A, 3),
            (TypeLabel::B, 3),
            (TypeLabel::C, 3),
            (TypeLabel::G, 2),
        ] {
            let w = group(t, n);
            let m = w.order();
            for a in 0..m {
                for b in 0..m {
                    if a != b && w.bruhat_leq(a, b) {
                        assert!(!w.bruhat_leq(b, a));
                        for c in 0..m {
                            if w.bruhat_leq(b, c) {
                                assert!(w.bruhat_leq(a, c));
                            }
                        }
                    }
                }
            }
            w.check_diamond().unwrap();
            let covers = w.bruhat_covers();
            for el in w.elements().iter().skip(1) {
                assert!(covers.iter().any(|&(_, up)| up == el.index));
            }
        }
    }
}
