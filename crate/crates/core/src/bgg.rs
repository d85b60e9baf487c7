//! Combinatorial skeleton of the quasi-BGG complex: one quasi-Verma term per
//! Weyl group element, arrows along Bruhat covers, and signs making every
//! square anticommute.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use num_rational::Rational64;
use num_traits::Zero;
use serde_json::json;

use crate::charseries::{BigradedSeries, WindowComparison};
use crate::error::{Error, Result};
use crate::formulas::{quasi_verma_character, weyl_module_character, FormulaContext, WindowParams};
use crate::rootdata::Weight;

pub const BGG_FORMAT: &str = "semiinf-bgg/1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BggTerm {
    pub w: usize,
    pub word: String,
    /// `w·ℓλ`.
    pub highest_weight: Weight,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BggArrow {
    pub source: usize,
    pub target: usize,
    pub sign: Option<i8>,
}

#[derive(Debug, Clone)]
pub struct BggComplex {
    pub ctx: FormulaContext,
    pub lambda: Weight,
    /// `terms[k]` lists the elements of length `k`.
    pub terms: Vec<Vec<BggTerm>>,
    pub arrows: Vec<BggArrow>,
}

/// Terms and unsigned arrows for the dominant weight `λ`; the highest
/// weights are `w·ℓλ`.
pub fn build_complex(ctx: &FormulaContext, lambda: &Weight) -> Result<BggComplex> {
    if lambda.rank() != ctx.rank() {
        return Err(Error::RankMismatch {
            expected: ctx.rank(),
            found: lambda.rank(),
        });
    }
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let group = &ctx.group;
    let ell_lambda = lambda.scale(ctx.ell_i64());
    let terms = (0..=group.max_length())
        .map(|k| {
            group
                .of_length(k)
                .iter()
                .map(|&w| BggTerm {
                    w,
                    word: group.element(w).word_label(),
                    highest_weight: group.dot_action(w, &ell_lambda),
                })
                .collect()
        })
        .collect();
    let mut arrows: Vec<BggArrow> = group
        .bruhat_covers()
        .into_iter()
        .map(|(source, target)| BggArrow {
            source,
            target,
            sign: None,
        })
        .collect();
    arrows.sort_by_key(|a| arrow_key(ctx, a.source, a.target));
    Ok(BggComplex {
        ctx: ctx.clone(),
        lambda: lambda.clone(),
        terms,
        arrows,
    })
}

fn arrow_key(
    ctx: &FormulaContext,
    source: usize,
    target: usize,
) -> (usize, Vec<usize>, Vec<usize>) {
    let g = &ctx.group;
    (
        g.element(source).length,
        g.element(source).reduced_word.clone(),
        g.element(target).reduced_word.clone(),
    )
}

impl BggComplex {
    pub fn term_counts(&self) -> Vec<usize> {
        self.terms.iter().map(Vec::len).collect()
    }

    pub fn ell_lambda(&self) -> Weight {
        self.lambda.scale(self.ctx.ell_i64())
    }

    fn arrow_index(&self) -> BTreeMap<(usize, usize), usize> {
        self.arrows
            .iter()
            .enumerate()
            .map(|(i, a)| ((a.source, a.target), i))
            .collect()
    }

    pub fn sign(&self, source: usize, target: usize) -> Option<i8> {
        self.arrows
            .iter()
            .find(|a| a.source == source && a.target == target)
            .and_then(|a| a.sign)
    }

    pub fn is_signed(&self) -> bool {
        self.arrows.iter().all(|a| a.sign.is_some())
    }

    /// Every square `w < a, b < w''` has sign product `-1`. Fails on
    /// unsigned arrows and on intervals that are not diamonds.
    pub fn check_squares(&self) -> Result<()> {
        let index = self.arrow_index();
        let sign = |s: usize, t: usize| -> Result<i8> {
            index
                .get(&(s, t))
                .and_then(|&i| self.arrows[i].sign)
                .ok_or_else(|| Error::UnsatisfiableSigns(format!("unsigned arrow {s} -> {t}")))
        };
        for (w, top, middles) in self.ctx.group.length_two_intervals() {
            let [a, b] = middles[..] else {
                return Err(Error::UnsatisfiableSigns(format!(
                    "interval [{w}, {top}] has {} middle elements",
                    middles.len()
                )));
            };
            let product = sign(w, a)? * sign(a, top)? * sign(w, b)? * sign(b, top)?;
            if product != -1 {
                return Err(Error::UnsatisfiableSigns(format!(
                    "square {} < {{{}, {}}} < {}",
                    self.word(w),
                    self.word(a),
                    self.word(b),
                    self.word(top)
                )));
            }
        }
        Ok(())
    }

    /// `d² = 0` on the signed incidence matrix: for every length-two
    /// interval the signed paths through its middle elements cancel.
    pub fn check_d_squared(&self) -> Result<()> {
        let index = self.arrow_index();
        for (w, top, middles) in self.ctx.group.length_two_intervals() {
            let mut total = 0i64;
            for m in middles {
                let s1 = index.get(&(w, m)).and_then(|&i| self.arrows[i].sign);
                let s2 = index.get(&(m, top)).and_then(|&i| self.arrows[i].sign);
                match (s1, s2) {
                    (Some(x), Some(y)) => total += (x * y) as i64,
                    _ => {
                        return Err(Error::UnsatisfiableSigns(format!(
                            "unsigned path {} -> {} -> {}",
                            self.word(w),
                            self.word(m),
                            self.word(top)
                        )))
                    }
                }
            }
            if total != 0 {
                return Err(Error::UnsatisfiableSigns(format!(
                    "d^2 = {total} on [{}, {}]",
                    self.word(w),
                    self.word(top)
                )));
            }
        }
        Ok(())
    }

    fn word(&self, w: usize) -> String {
        self.ctx.group.element(w).word_label()
    }

    /// DOT digraph with nodes in (length, index) order and edges in arrow
    /// order.
    pub fn emit_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph bgg {{");
        let _ = writeln!(out, "  rankdir=LR;");
        for layer in &self.terms {
            for t in layer {
                let _ = writeln!(
                    out,
                    "  w{} [label=\"{}\\n{}\"];",
                    t.w, t.word, t.highest_weight
                );
            }
        }
        for a in &self.arrows {
            let label = match a.sign {
                Some(1) => "+",
                Some(_) => "-",
                None => "?",
            };
            let _ = writeln!(
                out,
                "  w{} -> w{} [label=\"{}\"];",
                a.source, a.target, label
            );
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .enumerate()
            .map(|(k, layer)| {
                json!({
                    "degree": k,
                    "modules": layer.iter().map(|t| json!({
                        "w": t.word,
                        "highest_weight": t.highest_weight.0,
                    })).collect::<Vec<_>>(),
                })
            })
            .collect();
        let arrows: Vec<serde_json::Value> = self
            .arrows
            .iter()
            .map(|a| {
                json!({
                    "source": self.word(a.source),
                    "target": self.word(a.target),
                    "sign": a.sign,
                })
            })
            .collect();
        json!({
            "format": BGG_FORMAT,
            "type": format!("{}{}", self.ctx.datum.type_label(), self.ctx.rank()),
            "ell": self.ctx.ell,
            "lambda": self.lambda.0,
            "terms": terms,
            "arrows": arrows,
        })
    }
}

/// Signs such that every square anticommutes.
///
/// Arrows out of the identity get `+1`. For each target of length `k ≥ 2`
/// the squares ending there fix the products of pairs of incoming signs;
/// these parity constraints are solved by breadth-first search over the
/// incoming arrows, seeding each component with `+1`. All squares are
/// verified afterwards.
pub fn assign_signs(mut complex: BggComplex) -> Result<BggComplex> {
    complex.ctx.group.check_diamond()?;
    let index = complex.arrow_index();
    for a in complex.arrows.iter_mut() {
        a.sign = None;
    }
    let group = complex.ctx.group.clone();
    for &w in group.of_length(0) {
        for a in complex.arrows.iter_mut().filter(|a| a.source == w) {
            a.sign = Some(1);
        }
    }
    let mut intervals_by_top: BTreeMap<usize, Vec<(usize, usize, usize)>> = BTreeMap::new();
    for (w, top, middles) in group.length_two_intervals() {
        if let [a, b] = middles[..] {
            intervals_by_top.entry(top).or_default().push((w, a, b));
        }
    }
    for k in 1..=group.max_length() {
        for &top in group.of_length(k) {
            let incoming: Vec<usize> = complex
                .arrows
                .iter()
                .filter(|a| a.target == top)
                .map(|a| a.source)
                .collect();
            // Constraint graph on incoming arrows: x_a · x_b = c.
            let mut edges: BTreeMap<usize, Vec<(usize, i8)>> = BTreeMap::new();
            for &(w, a, b) in intervals_by_top.get(&top).map(Vec::as_slice).unwrap_or(&[]) {
                let sa = complex.arrows[index[&(w, a)]]
                    .sign
                    .expect("lower layer signed");
                let sb = complex.arrows[index[&(w, b)]]
                    .sign
                    .expect("lower layer signed");
                let c = -sa * sb;
                edges.entry(a).or_default().push((b, c));
                edges.entry(b).or_default().push((a, c));
            }
            let mut value: BTreeMap<usize, i8> = BTreeMap::new();
            for &seed in &incoming {
                if value.contains_key(&seed) {
                    continue;
                }
                value.insert(seed, 1);
                let mut queue = VecDeque::from([seed]);
                while let Some(m) = queue.pop_front() {
                    let xm = value[&m];
                    for &(n, c) in edges.get(&m).map(Vec::as_slice).unwrap_or(&[]) {
                        let want = c * xm;
                        match value.get(&n) {
                            Some(&xn) if xn != want => {
                                return Err(Error::UnsatisfiableSigns(format!(
                                    "arrows into {}",
                                    group.element(top).word_label()
                                )))
                            }
                            Some(_) => {}
                            None => {
                                value.insert(n, want);
                                queue.push_back(n);
                            }
                        }
                    }
                }
            }
            for (m, x) in value {
                complex.arrows[index[&(m, top)]].sign = Some(x);
            }
        }
    }
    complex.check_squares()?;
    Ok(complex)
}

/// `Σ_w (-1)^{l(w)} ch M^w(w·ℓλ)` on the context window.
pub fn euler_character(complex: &BggComplex) -> Result<BigradedSeries> {
    euler_character_at(&complex.ctx, &complex.ell_lambda())
}

fn euler_character_at(ctx: &FormulaContext, ell_lambda: &Weight) -> Result<BigradedSeries> {
    let mut acc = BigradedSeries::zero(ctx.weight_adic());
    for w in ctx.group.elements() {
        let q = quasi_verma_character(ctx, w.index, ell_lambda)?;
        acc = if w.length % 2 == 0 {
            acc.add(&q)?
        } else {
            acc.sub(&q)?
        };
    }
    Ok(acc)
}

#[derive(Debug, Clone)]
pub struct EulerCheck {
    pub comparison: WindowComparison,
    /// Depth `D` of the first expansion; the second uses `2D`.
    pub depth: Rational64,
    /// Terms present at depth `2D` but not at depth `D`.
    pub new_terms_on_doubling: usize,
}

impl EulerCheck {
    pub fn passed(&self) -> bool {
        self.comparison.equal && self.new_terms_on_doubling == 0
    }
}

/// Compares the Euler character with `ch W(ℓλ)` and checks that doubling
/// the window adds nothing. The depth is the context depth, raised if
/// needed to reach one unit below the lowest weight `w₀(ℓλ)`.
pub fn verify_euler(complex: &BggComplex) -> Result<EulerCheck> {
    let ctx = &complex.ctx;
    let ell_lambda = complex.ell_lambda();
    let lowest = ctx.group.longest().act(&ell_lambda);
    let reach = -ctx.weight_adic().hgt(&lowest) + 1;
    let depth = ctx.window.hgt_depth.max(reach);
    let near = ctx.with_window(WindowParams {
        hgt_depth: depth,
        ..ctx.window
    });
    let far = ctx.with_window(WindowParams {
        hgt_depth: depth * 2,
        ..ctx.window
    });
    let chi = euler_character_at(&near, &ell_lambda)?;
    let chi_far = euler_character_at(&far, &ell_lambda)?;
    let new_terms_on_doubling = chi_far
        .terms()
        .filter(|(m, _)| chi.coeff(m).is_zero())
        .count();
    let weyl = weyl_module_character(ctx, &ell_lambda)?;
    Ok(EulerCheck {
        comparison: chi.equal_on_window(&weyl),
        depth,
        new_terms_on_doubling,
    })
}
