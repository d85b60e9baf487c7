//! Weight multiplicities of simple modules by Freudenthal's recursion,
//! from hard-coded rank two root data.

use std::collections::BTreeMap;

use num_rational::Rational64;

/// Rank two data: Cartan matrix with `a[i][j] = 2(α_i·α_j)/(α_i·α_i)`,
/// squared root lengths, and positive roots in simple-root coordinates.
pub struct RankTwo {
    pub cartan: [[i64; 2]; 2],
    pub norms: [i64; 2],
    pub positive_roots: Vec<[i64; 2]>,
}

pub fn a2() -> RankTwo {
    RankTwo {
        cartan: [[2, -1], [-1, 2]],
        norms: [2, 2],
        positive_roots: vec![[1, 0], [0, 1], [1, 1]],
    }
}

/// α1 long, α2 short.
pub fn b2() -> RankTwo {
    RankTwo {
        cartan: [[2, -1], [-2, 2]],
        norms: [4, 2],
        positive_roots: vec![[1, 0], [0, 1], [1, 1], [1, 2]],
    }
}

/// α1 short, α2 long.
pub fn g2() -> RankTwo {
    RankTwo {
        cartan: [[2, -3], [-1, 2]],
        norms: [2, 6],
        positive_roots: vec![[1, 0], [0, 1], [1, 1], [2, 1], [3, 1], [3, 2]],
    }
}

impl RankTwo {
    /// Fundamental-weight coordinates of `Σ c_j α_j`; `α_j` is column `j`.
    pub fn to_weight(&self, c: [i64; 2]) -> [i64; 2] {
        let a = &self.cartan;
        [
            a[0][0] * c[0] + a[0][1] * c[1],
            a[1][0] * c[0] + a[1][1] * c[1],
        ]
    }

    /// Simple-root coordinates of a weight.
    pub fn to_roots(&self, w: [i64; 2]) -> [Rational64; 2] {
        let a = &self.cartan;
        let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
        [
            Rational64::new(a[1][1] * w[0] - a[0][1] * w[1], det),
            Rational64::new(-a[1][0] * w[0] + a[0][0] * w[1], det),
        ]
    }

    /// `(μ, ν) = Σ_i x_i ν_i (α_i·α_i)/2` with `μ = Σ x_i α_i`.
    pub fn form(&self, mu: [i64; 2], nu: [i64; 2]) -> Rational64 {
        let x = self.to_roots(mu);
        (0..2)
            .map(|i| x[i] * nu[i] * self.norms[i] / 2)
            .fold(Rational64::from_integer(0), |a, b| a + b)
    }

    /// Nonzero weight multiplicities of the simple module `L(λ)`.
    pub fn multiplicities(&self, lambda: [i64; 2]) -> BTreeMap<[i64; 2], i64> {
        let rho = [1, 1];
        let shift = |w: [i64; 2]| [w[0] + rho[0], w[1] + rho[1]];
        let top = self.form(shift(lambda), shift(lambda));
        let x = self.to_roots(lambda);
        let max_level = ((x[0] + x[1]) * 2).to_integer() + 2;
        let mut mult: BTreeMap<[i64; 2], i64> = BTreeMap::new();
        mult.insert(lambda, 1);
        for level in 1..=max_level {
            for n0 in 0..=level {
                let n = [n0, level - n0];
                let d = self.to_weight(n);
                let mu = [lambda[0] - d[0], lambda[1] - d[1]];
                let denom = top - self.form(shift(mu), shift(mu));
                if denom == Rational64::from_integer(0) {
                    continue;
                }
                let mut sum = Rational64::from_integer(0);
                for r in &self.positive_roots {
                    let alpha = self.to_weight(*r);
                    let height = r[0] + r[1];
                    let mut k = 1;
                    while k * height <= level {
                        let up = [mu[0] + k * alpha[0], mu[1] + k * alpha[1]];
                        if let Some(&m) = mult.get(&up) {
                            sum += self.form(up, alpha) * m;
                        }
                        k += 1;
                    }
                }
                let m = sum * 2 / denom;
                assert!(
                    m.is_integer() && m >= Rational64::from_integer(0),
                    "bad multiplicity {m} at {mu:?}"
                );
                if m != Rational64::from_integer(0) {
                    mult.insert(mu, m.to_integer());
                }
            }
        }
        mult
    }

    /// Weyl dimension formula `Π (λ+ρ, α)/(ρ, α)`.
    pub fn dimension(&self, lambda: [i64; 2]) -> i64 {
        let lr = [lambda[0] + 1, lambda[1] + 1];
        let mut num = Rational64::from_integer(1);
        for r in &self.positive_roots {
            let a = self.to_weight(*r);
            num *= self.form(lr, a) / self.form([1, 1], a);
        }
        num.to_integer()
    }
}
