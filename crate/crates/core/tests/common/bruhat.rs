//! Bruhat order of a dihedral group by the subword property.

use std::collections::{BTreeMap, BTreeSet};

/// Elements of the dihedral group of order `2m` as alternating reduced
/// words in the zero-based generators; the identity is the empty word.
pub fn dihedral_elements(m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for len in 1..=m {
        for start in 0..2 {
            if len == m && start == 1 {
                continue;
            }
            out.push((0..len).map(|k| (start + k) % 2).collect());
        }
    }
    out
}

/// The element of a word as `(is_reflection, k)`: rotations are `r^k` and
/// reflections `r^k s_0`, where `s_1 = r s_0`.
pub fn eval(word: &[usize], m: usize) -> (bool, i64) {
    let (mut refl, mut k) = (false, 0i64);
    for &g in word {
        let g = g as i64;
        k = if refl { k - g } else { k + g }.rem_euclid(m as i64);
        refl = !refl;
    }
    (refl, k)
}

/// `v ≤ w` iff some subword of the reduced word `w` evaluates to `v`.
pub fn subword_leq(v: &[usize], w: &[usize], m: usize) -> bool {
    let target = eval(v, m);
    let n = w.len();
    (0u32..(1 << n)).any(|mask| {
        let sub: Vec<usize> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| w[i])
            .collect();
        eval(&sub, m) == target
    })
}

/// Cover relations as pairs of reduced words.
pub fn covers(m: usize) -> BTreeSet<(Vec<usize>, Vec<usize>)> {
    let mut by_len: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
    for w in dihedral_elements(m) {
        by_len.entry(w.len()).or_default().push(w);
    }
    let mut out = BTreeSet::new();
    for (len, ws) in &by_len {
        if let Some(up) = by_len.get(&(len + 1)) {
            for v in ws {
                for w in up {
                    if subword_leq(v, w, m) {
                        out.insert((v.clone(), w.clone()));
                    }
                }
            }
        }
    }
    out
}
