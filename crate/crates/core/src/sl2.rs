//! Rank-one suite: simple characters at a root of unity, the filtration
//! identities for quasi-Verma modules and the exact sequence
//! `0 → M^s(s·kℓ) → M^e(kℓ) → W(kℓ) → 0` at the level of characters.

use num_bigint::BigInt;
use serde::Serialize;

use crate::charseries::{BigradedSeries, Monomial, Provenance, WindowComparison};
use crate::error::{Error, Result};
use crate::formulas::{quasi_verma_character, weyl_module_character, FormulaContext, WindowParams};
use crate::rootdata::{TypeLabel, Weight};

/// A weight of `sl2`, with the weight lattice identified with `Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Sl2Weight(pub i64);

impl Sl2Weight {
    /// The unique `(k, m)` with `value = k + ℓm` and `0 ≤ k < ℓ`.
    pub fn decompose(self, ell: u32) -> (i64, i64) {
        let l = ell as i64;
        (self.0.rem_euclid(l), self.0.div_euclid(l))
    }

    pub fn weight(self) -> Weight {
        Weight(vec![self.0])
    }
}

/// Rank-one context with the regime B window `hgt ≥ -depth`.
pub fn sl2_context(ell: u32, depth: i64) -> Result<FormulaContext> {
    if ell < 3 || ell % 2 == 0 {
        return Err(Error::InvalidLevel {
            ell,
            label: "A1".into(),
            reason: "the rank one suite needs an odd level at least 3".into(),
        });
    }
    FormulaContext::for_type(TypeLabel::A, 1, ell, WindowParams::new(0, depth))
}

fn require_sl2(ctx: &FormulaContext) -> Result<()> {
    if ctx.datum.type_label() != TypeLabel::A || ctx.rank() != 1 {
        return Err(Error::InvalidType {
            label: ctx.datum.type_label().to_string(),
            rank: ctx.rank(),
            reason: "the rank one suite requires type A1".into(),
        });
    }
    if ctx.ell < 3 || ctx.ell % 2 == 0 {
        return Err(Error::InvalidLevel {
            ell: ctx.ell,
            label: "A1".into(),
            reason: "the rank one suite needs an odd level at least 3".into(),
        });
    }
    Ok(())
}

/// Lowest weight kept by the context window.
fn lowest_weight(ctx: &FormulaContext) -> i64 {
    // hgt(x) = x/2 in rank one.
    (-ctx.window.hgt_depth * 2).ceil().to_integer()
}

/// `ch L(k) ⊗ L(mℓ)` for `μ = k + ℓm`, expanded by listing weights.
///
/// For `m ≥ 0` the Frobenius factor is the finite character of `L(m)`
/// scaled by `ℓ`; for `m ≤ -1` it is the simple Verma character
/// `Σ_{j≥0} e^{ℓ(m-2j)}`.
pub fn sl2_simple_character(ctx: &FormulaContext, mu: Sl2Weight) -> Result<BigradedSeries> {
    require_sl2(ctx)?;
    let ell = ctx.ell_i64();
    let (k, m) = mu.decompose(ctx.ell);
    let floor = lowest_weight(ctx);
    let frobenius: Vec<i64> = if m >= 0 {
        (0..=m).map(|j| ell * (m - 2 * j)).collect()
    } else {
        (0..)
            .map(|j| ell * (m - 2 * j))
            .take_while(|&x| x + k >= floor)
            .collect()
    };
    let mut terms = Vec::new();
    for f in &frobenius {
        for i in 0..=k {
            let x = f + k - 2 * i;
            if x >= floor {
                terms.push((Monomial::new(Weight(vec![x]), 0), BigInt::from(1)));
            }
        }
    }
    let mut s = BigradedSeries::from_terms(ctx.weight_adic(), terms);
    if m < 0 {
        s = s.truncate(ctx.window.hgt_depth);
    }
    Ok(s.with_provenance(
        Provenance::new("sl2-simple")
            .with("mu", mu.0)
            .with("ell", ctx.ell)
            .with("hgt_depth", ctx.window.hgt_depth),
    ))
}

/// Character of the simple `U(sl2)`-module `L(m)`: finite for `m ≥ 0`,
/// the Verma character `e^m/(1 - e^{-2})` for `m ≤ -1`.
pub fn classical_simple_character(ctx: &FormulaContext, m: i64) -> Result<BigradedSeries> {
    require_sl2(ctx)?;
    let mw = Weight(vec![m]);
    if m >= 0 {
        weyl_module_character(ctx, &mw)
    } else {
        quasi_verma_character(ctx, ctx.group.identity().index, &mw)
    }
}

/// `ch L(k) · ch L(m)|_{e^x ↦ e^{ℓx}}`, the Steinberg-type factorization of
/// [`sl2_simple_character`].
pub fn sl2_simple_factorized(ctx: &FormulaContext, mu: Sl2Weight) -> Result<BigradedSeries> {
    require_sl2(ctx)?;
    let (k, m) = mu.decompose(ctx.ell);
    let small = sl2_simple_character(ctx, Sl2Weight(k))?;
    let inner = ctx.with_window(WindowParams {
        hgt_depth: ctx.window.hgt_depth / ctx.ell_i64(),
        ..ctx.window
    });
    let frobenius = classical_simple_character(&inner, m)?.scale_weights(ctx.ell_i64())?;
    let mut product = small.mul(&frobenius)?;
    if product.window().is_none() && m < 0 {
        product = product.truncate(ctx.window.hgt_depth);
    }
    Ok(product)
}

/// One character identity of the suite.
#[derive(Debug, Clone, Serialize)]
pub struct Sl2Check {
    pub identity: String,
    pub k: i64,
    pub comparison: WindowComparison,
}

impl Sl2Check {
    pub fn passed(&self) -> bool {
        self.comparison.equal
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Sl2Report {
    pub ell: u32,
    pub hgt_depth: String,
    pub checks: Vec<Sl2Check>,
}

impl Sl2Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Sl2Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Sl2Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

fn sum_simples(ctx: &FormulaContext, mus: &[i64]) -> Result<BigradedSeries> {
    let mut acc = BigradedSeries::zero(ctx.weight_adic());
    for &mu in mus {
        acc = acc.add(&sl2_simple_character(ctx, Sl2Weight(mu))?)?;
    }
    Ok(acc)
}

fn check(identity: String, k: i64, lhs: &BigradedSeries, rhs: &BigradedSeries) -> Sl2Check {
    Sl2Check {
        identity,
        k,
        comparison: lhs.equal_on_window(rhs),
    }
}

/// `ch M^e(kℓ)`, the Verma character `e^{kℓ}/(1 - e^{-2})`.
pub fn verma_e(ctx: &FormulaContext, k: i64) -> Result<BigradedSeries> {
    quasi_verma_character(
        ctx,
        ctx.group.identity().index,
        &Weight(vec![k * ctx.ell_i64()]),
    )
}

/// `ch M^s(s·kℓ)`, the character `e^{-kℓ-2}/(1 - e^{-2})`.
pub fn verma_s(ctx: &FormulaContext, k: i64) -> Result<BigradedSeries> {
    let s = ctx.group.from_word(&[0])?;
    quasi_verma_character(ctx, s, &Weight(vec![k * ctx.ell_i64()]))
}

/// The four quasi-Verma filtration identities for `k = 0..=k_max`, plus the
/// composition series `ch W(kℓ) = ch L(kℓ) + ch L(kℓ-2)` for `k > 0`.
pub fn verify_filtration_identities(ctx: &FormulaContext, k_max: i64) -> Result<Sl2Report> {
    require_sl2(ctx)?;
    let l = ctx.ell_i64();
    let mut checks = Vec::new();
    for k in 0..=k_max {
        let me = verma_e(ctx, k)?;
        let ms = verma_s(ctx, k)?;
        if k == 0 {
            checks.push(check(
                "ch M^e(0) = ch L(0) + ch L(-2) + ch L(-2l)".into(),
                0,
                &me,
                &sum_simples(ctx, &[0, -2, -2 * l])?,
            ));
            checks.push(check(
                "ch M^s(s.0) = ch L(-2) + ch L(-2l)".into(),
                0,
                &ms,
                &sum_simples(ctx, &[-2, -2 * l])?,
            ));
        } else {
            checks.push(check(
                "ch M^e(kl) = ch L(kl) + ch L(kl-2) + ch L(-kl-2) + ch L(-(k+2)l)".into(),
                k,
                &me,
                &sum_simples(ctx, &[k * l, k * l - 2, -k * l - 2, -(k + 2) * l])?,
            ));
            checks.push(check(
                "ch M^s(s.kl) = ch L(-kl-2) + ch L(-(k+2)l)".into(),
                k,
                &ms,
                &sum_simples(ctx, &[-k * l - 2, -(k + 2) * l])?,
            ));
            checks.push(check(
                "ch W(kl) = ch L(kl) + ch L(kl-2)".into(),
                k,
                &weyl_module_character(ctx, &Weight(vec![k * l]))?,
                &sum_simples(ctx, &[k * l, k * l - 2])?,
            ));
        }
    }
    Ok(Sl2Report {
        ell: ctx.ell,
        hgt_depth: ctx.window.hgt_depth.to_string(),
        checks,
    })
}

/// `ch M^e(kℓ) = ch M^s(s·kℓ) + ch W(kℓ)`.
pub fn verify_exact_sequence(ctx: &FormulaContext, k: i64) -> Result<Sl2Check> {
    require_sl2(ctx)?;
    let me = verma_e(ctx, k)?;
    let rhs = verma_s(ctx, k)?.add(&weyl_module_character(
        ctx,
        &Weight(vec![k * ctx.ell_i64()]),
    )?)?;
    Ok(check(
        "ch M^e(kl) = ch M^s(s.kl) + ch W(kl)".into(),
        k,
        &me,
        &rhs,
    ))
}

/// Filtration identities, exact sequences and the factorization of simple
/// characters for `k = 0..=k_max`.
pub fn run_suite(ctx: &FormulaContext, k_max: i64) -> Result<Sl2Report> {
    let mut report = verify_filtration_identities(ctx, k_max)?;
    for k in 0..=k_max {
        report.checks.push(verify_exact_sequence(ctx, k)?);
    }
    let l = ctx.ell_i64();
    for mu in -(k_max + 2) * l - 2..=(k_max + 1) * l {
        let direct = sl2_simple_character(ctx, Sl2Weight(mu))?;
        let factored = sl2_simple_factorized(ctx, Sl2Weight(mu))?;
        report.checks.push(check(
            format!("ch L({mu}) = ch L(k) ch L(m)^[l]"),
            mu,
            &direct,
            &factored,
        ));
    }
    Ok(report)
}
