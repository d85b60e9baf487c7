//! Character formulas, one constructor per identity, each expanded exactly
//! in the regime its denominators demand.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::Rational64;

use crate::charseries::{BigradedSeries, Grading, Monomial, Provenance};
use crate::error::{Error, Result};
use crate::rootdata::{CartanDatum, RootDatum, TypeLabel, Weight};
use crate::weyl::WeylGroup;

/// Truncation parameters shared by all constructors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowParams {
    /// Maximal t-degree kept in regime A; also the bound on
    /// `tdeg - 2 hgt_J` for parabolic characters.
    pub t_max: i64,
    /// Regime B keeps the monomials with `hgt ≥ -hgt_depth`.
    pub hgt_depth: Rational64,
}

impl WindowParams {
    pub fn new(t_max: i64, hgt_depth: i64) -> Self {
        WindowParams {
            t_max,
            hgt_depth: Rational64::from_integer(hgt_depth),
        }
    }
}

impl Default for WindowParams {
    fn default() -> Self {
        WindowParams::new(8, 40)
    }
}

/// Admissibility test for the level `ℓ`.
pub type LevelCheck = fn(&CartanDatum, u32) -> std::result::Result<(), String>;

/// `ℓ` odd and coprime to every symmetrizer `i·i/2`.
pub fn default_level_check(cartan: &CartanDatum, ell: u32) -> std::result::Result<(), String> {
    if ell == 0 {
        return Err("level must be positive".into());
    }
    if ell % 2 == 0 {
        return Err("level must be odd".into());
    }
    for d in cartan.symmetrizers() {
        if gcd(ell as i64, d) != 1 {
            return Err(format!("level must be coprime to the symmetrizer {d}"));
        }
    }
    Ok(())
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Clone)]
pub struct FormulaContext {
    pub datum: RootDatum,
    pub group: Arc<WeylGroup>,
    pub ell: u32,
    pub window: WindowParams,
    t_adic: Arc<Grading>,
    weight_adic: Arc<Grading>,
}

impl FormulaContext {
    pub fn new(datum: RootDatum, ell: u32, window: WindowParams) -> Result<Self> {
        Self::with_level_check(datum, ell, window, default_level_check)
    }

    pub fn with_level_check(
        datum: RootDatum,
        ell: u32,
        window: WindowParams,
        check: LevelCheck,
    ) -> Result<Self> {
        check(&datum.cartan, ell).map_err(|reason| Error::InvalidLevel {
            ell,
            label: format!("{}{}", datum.type_label(), datum.rank()),
            reason,
        })?;
        let group = Arc::new(WeylGroup::enumerate(&datum));
        Ok(FormulaContext {
            t_adic: Grading::t_adic(&datum),
            weight_adic: Grading::weight_adic(&datum),
            datum,
            group,
            ell,
            window,
        })
    }

    pub fn for_type(label: TypeLabel, rank: usize, ell: u32, window: WindowParams) -> Result<Self> {
        Self::new(RootDatum::new(label, rank)?, ell, window)
    }

    /// Same datum and group with different truncation parameters.
    pub fn with_window(&self, window: WindowParams) -> Self {
        FormulaContext {
            window,
            ..self.clone()
        }
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn ell_i64(&self) -> i64 {
        self.ell as i64
    }

    pub fn num_positive_roots(&self) -> i64 {
        self.datum.num_positive_roots() as i64
    }

    pub fn t_adic(&self) -> &Arc<Grading> {
        &self.t_adic
    }

    pub fn weight_adic(&self) -> &Arc<Grading> {
        &self.weight_adic
    }

    fn t_bound(&self) -> Option<Rational64> {
        Some(Rational64::from_integer(self.window.t_max))
    }

    fn hgt_bound(&self) -> Option<Rational64> {
        Some(self.window.hgt_depth)
    }

    fn provenance(&self, formula: &str) -> Provenance {
        Provenance::new(formula)
            .with(
                "type",
                format!("{}{}", self.datum.type_label(), self.rank()),
            )
            .with("ell", self.ell)
    }

    fn mono(&self, weight: Weight, tdeg: i64) -> Monomial {
        debug_assert_eq!(weight.rank(), self.rank());
        Monomial::new(weight, tdeg)
    }

    fn positive_root_weights(&self) -> impl Iterator<Item = &Weight> {
        self.datum.positive_roots.iter().map(|r| &r.weight)
    }

    /// `Σ_w t^{step·l(w)}`.
    fn poincare_numerator(&self, step: i64) -> Vec<(Monomial, BigInt)> {
        self.group
            .poincare_polynomial()
            .into_iter()
            .enumerate()
            .map(|(k, c)| (Monomial::t(self.rank(), step * k as i64), BigInt::from(c)))
            .collect()
    }
}

/// Expands `numerator · Π_r (1 - r)^{-1}` to `φ ≤ bound`.
fn expand(
    grading: &Arc<Grading>,
    numerator: Vec<(Monomial, BigInt)>,
    ratios: &[Monomial],
    bound: Option<Rational64>,
) -> Result<BigradedSeries> {
    let mut acc = BigradedSeries::from_terms(grading, numerator);
    if let Some(b) = bound {
        acc = acc.truncate(b);
    }
    for r in ratios {
        acc = acc.mul_geom_inverse(r, bound)?;
    }
    Ok(acc)
}

/// Kostant's graded character of functions on the nilpotent cone,
/// `Σ_w t^{l(w)} / Π_α (1 - e^{-α} t)(1 - e^{α} t)`, regime A.
pub fn kostant_character(ctx: &FormulaContext) -> Result<BigradedSeries> {
    let mut ratios = Vec::new();
    for a in ctx.positive_root_weights() {
        ratios.push(ctx.mono(-a, 1));
        ratios.push(ctx.mono(a.clone(), 1));
    }
    Ok(expand(
        ctx.t_adic(),
        ctx.poincare_numerator(1),
        &ratios,
        ctx.t_bound(),
    )?
    .with_provenance(ctx.provenance("kostant").with("t_max", ctx.window.t_max)))
}

/// Ext over the small quantum group: the Kostant character on the `ℓ·X`
/// grading.
pub fn ext_small_character(ctx: &FormulaContext) -> Result<BigradedSeries> {
    Ok(kostant_character(ctx)?
        .scale_weights(ctx.ell_i64())?
        .with_provenance(ctx.provenance("ext-small").with("t_max", ctx.window.t_max)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BorelSign {
    Minus,
    Plus,
}

/// `(Σ_w t^{l(w)} e^{ρ - w(ρ)}) · Π_α (1 - e^{ℓα} t²)^{-1}`.
pub fn ext_uminus_character(ctx: &FormulaContext) -> Result<BigradedSeries> {
    let rho = &ctx.datum.rho;
    let numerator: Vec<(Monomial, BigInt)> = ctx
        .group
        .elements()
        .iter()
        .map(|w| {
            (
                ctx.mono(rho - &w.act(rho), w.length as i64),
                BigInt::from(1),
            )
        })
        .collect();
    let ratios: Vec<Monomial> = ctx
        .positive_root_weights()
        .map(|a| ctx.mono(a.scale(ctx.ell_i64()), 2))
        .collect();
    Ok(expand(ctx.t_adic(), numerator, &ratios, ctx.t_bound())?
        .with_provenance(ctx.provenance("ext-uminus").with("t_max", ctx.window.t_max)))
}

/// Ext over the Borel parts: `Π_α (1 - e^{∓ℓα} t²)^{-1}` with the sign
/// selecting `e^{ℓα}` for `Minus` and `e^{-ℓα}` for `Plus`.
pub fn ext_borel_character(ctx: &FormulaContext, sign: BorelSign) -> Result<BigradedSeries> {
    let s = match sign {
        BorelSign::Minus => ctx.ell_i64(),
        BorelSign::Plus => -ctx.ell_i64(),
    };
    let ratios: Vec<Monomial> = ctx
        .positive_root_weights()
        .map(|a| ctx.mono(a.scale(s), 2))
        .collect();
    let name = match sign {
        BorelSign::Minus => "ext-borel-minus",
        BorelSign::Plus => "ext-borel-plus",
    };
    Ok(expand(
        ctx.t_adic(),
        vec![(Monomial::one(ctx.rank()), BigInt::from(1))],
        &ratios,
        ctx.t_bound(),
    )?
    .with_provenance(ctx.provenance(name).with("t_max", ctx.window.t_max)))
}

/// `Σ_w t^{2l(w)} / Π_α (1 - e^{-ℓα} t²)(1 - e^{ℓα} t²)`, regime A.
pub fn ext_tilde_character(ctx: &FormulaContext) -> Result<BigradedSeries> {
    let l = ctx.ell_i64();
    let mut ratios = Vec::new();
    for a in ctx.positive_root_weights() {
        ratios.push(ctx.mono(a.scale(-l), 2));
        ratios.push(ctx.mono(a.scale(l), 2));
    }
    Ok(expand(
        ctx.t_adic(),
        ctx.poincare_numerator(2),
        &ratios,
        ctx.t_bound(),
    )?
    .with_provenance(ctx.provenance("ext-tilde").with("t_max", ctx.window.t_max)))
}

/// `ext_borel(−) · ext_borel(+) · Σ_w t^{2l(w)}`, the factorized form of
/// [`ext_tilde_character`].
pub fn ext_tilde_factorized(ctx: &FormulaContext) -> Result<BigradedSeries> {
    let minus = ext_borel_character(ctx, BorelSign::Minus)?;
    let plus = ext_borel_character(ctx, BorelSign::Plus)?;
    let h0 = BigradedSeries::from_terms(ctx.t_adic(), ctx.poincare_numerator(2));
    minus.mul(&plus)?.mul(&h0)
}

/// Semiinfinite cohomology of the trivial module:
/// `t^{-N} e^{-2ℓρ} Σ_w t^{2l(w)} / Π_α (1 - e^{-ℓα} t^{-2})(1 - e^{-ℓα} t²)`,
/// regime B, with `N = ♯R⁺`.
pub fn semiinf_tilde_character(ctx: &FormulaContext) -> Result<BigradedSeries> {
    let l = ctx.ell_i64();
    let prefactor = ctx.mono(ctx.datum.two_rho.scale(-l), -ctx.num_positive_roots());
    let numerator = ctx
        .poincare_numerator(2)
        .into_iter()
        .map(|(m, c)| (m.mul(&prefactor), c))
        .collect();
    let mut ratios = Vec::new();
    for a in ctx.positive_root_weights() {
        ratios.push(ctx.mono(a.scale(-l), -2));
        ratios.push(ctx.mono(a.scale(-l), 2));
    }
    Ok(
        expand(ctx.weight_adic(), numerator, &ratios, ctx.hgt_bound())?.with_provenance(
            ctx.provenance("semiinf-tilde")
                .with("hgt_depth", ctx.window.hgt_depth),
        ),
    )
}

/// Local cohomology of functions on the nilpotent cone with support in
/// `n⁺`: `Π_α (Σ_{k≥1} e^{-kα} t^{-k}) · Σ_w t^{l(w)} · Π_α (1 - e^{-α} t)^{-1}`,
/// regime B.
pub fn local_cohomology_character(ctx: &FormulaContext) -> Result<BigradedSeries> {
    let prefactor = ctx.mono(-&ctx.datum.two_rho, -ctx.num_positive_roots());
    let numerator = ctx
        .poincare_numerator(1)
        .into_iter()
        .map(|(m, c)| (m.mul(&prefactor), c))
        .collect();
    let mut ratios = Vec::new();
    for a in ctx.positive_root_weights() {
        ratios.push(ctx.mono(-a, -1));
        ratios.push(ctx.mono(-a, 1));
    }
    Ok(
        expand(ctx.weight_adic(), numerator, &ratios, ctx.hgt_bound())?.with_provenance(
            ctx.provenance("local-cohomology")
                .with("hgt_depth", ctx.window.hgt_depth),
        ),
    )
}

/// Local cohomology reindexed by `t ↦ t²` and `μ ↦ ℓμ`, expanded deep
/// enough to cover the context's regime B window.
pub fn reindexed_local_cohomology_character(ctx: &FormulaContext) -> Result<BigradedSeries> {
    let l = ctx.ell_i64();
    let inner = ctx.with_window(WindowParams {
        hgt_depth: ctx.window.hgt_depth / l,
        ..ctx.window
    });
    Ok(local_cohomology_character(&inner)?
        .substitute_t_power(2)?
        .scale_weights(l)?
        .with_provenance(
            ctx.provenance("local-cohomology-reindexed")
                .with("hgt_depth", ctx.window.hgt_depth),
        ))
}

/// Parabolic local cohomology: only the coordinates dual to root vectors
/// of `n_J^-` are inverted. Expanded in the parabolic regime with bound
/// `tdeg - 2 hgt_J ≤ t_max`. `j` is zero-based.
pub fn parabolic_local_cohomology_character(
    ctx: &FormulaContext,
    j: &[usize],
) -> Result<BigradedSeries> {
    let n = ctx.rank();
    if let Some(&bad) = j.iter().find(|&&i| i >= n) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            rank: n,
        });
    }
    let grading = Grading::parabolic(&ctx.datum, j);
    let levi: Vec<&Weight> = ctx
        .datum
        .levi_roots(j)
        .into_iter()
        .map(|r| &r.weight)
        .collect();
    let mut prefactor = Monomial::one(n);
    let mut ratios = Vec::new();
    for a in ctx.positive_root_weights() {
        if levi.contains(&a) {
            ratios.push(ctx.mono(a.clone(), 1));
        } else {
            prefactor = prefactor.mul(&ctx.mono(-a, -1));
            ratios.push(ctx.mono(-a, -1));
        }
        ratios.push(ctx.mono(-a, 1));
    }
    let numerator = ctx
        .poincare_numerator(1)
        .into_iter()
        .map(|(m, c)| (m.mul(&prefactor), c))
        .collect();
    let mut j_label: Vec<String> = j.iter().map(|i| (i + 1).to_string()).collect();
    j_label.sort();
    Ok(
        expand(&grading, numerator, &ratios, ctx.t_bound())?.with_provenance(
            ctx.provenance("parabolic-local-cohomology")
                .with("J", j_label.join(","))
                .with("bound", ctx.window.t_max),
        ),
    )
}

fn require_dominant(lambda: &Weight) -> Result<()> {
    if lambda.is_dominant() {
        Ok(())
    } else {
        Err(Error::NotDominant(lambda.to_string()))
    }
}

/// Weyl module character `Σ_w (-1)^{l(w)} e^{w·λ} / Π_α (1 - e^{-α})`.
///
/// Expanded in regime B one layer of `hgt(2ρ)` past the lowest weight
/// `w₀(λ)`; every coefficient below `w₀(λ)` must cancel, after which the
/// result is returned as an exact Laurent polynomial.
pub fn weyl_module_character(ctx: &FormulaContext, lambda: &Weight) -> Result<BigradedSeries> {
    require_dominant(lambda)?;
    let g = ctx.weight_adic();
    let group = &ctx.group;
    let lowest = group.longest().act(lambda);
    let floor = g.hgt(&lowest);
    let depth = -floor + g.hgt(&ctx.datum.two_rho);
    let numerator: Vec<(Monomial, BigInt)> = group
        .elements()
        .iter()
        .map(|w| {
            let sign = if w.length % 2 == 0 { 1 } else { -1 };
            (
                ctx.mono(group.dot_action(w.index, lambda), 0),
                BigInt::from(sign),
            )
        })
        .collect();
    let ratios: Vec<Monomial> = ctx
        .positive_root_weights()
        .map(|a| ctx.mono(-a, 0))
        .collect();
    let expanded = expand(g, numerator, &ratios, Some(depth))?;
    if let Some((m, _)) = expanded.terms().find(|(m, _)| g.hgt(&m.weight) < floor) {
        return Err(Error::NotPolynomial(m.to_string()));
    }
    let poly = BigradedSeries::from_terms(g, expanded.terms().map(|(m, c)| (m.clone(), c.clone())));
    Ok(poly.with_provenance(ctx.provenance("weyl-module").with("lambda", lambda)))
}

/// Quasi-Verma character `e^{w·λ} / Π_α (1 - e^{-α})`, regime B.
pub fn quasi_verma_character(
    ctx: &FormulaContext,
    w: usize,
    lambda: &Weight,
) -> Result<BigradedSeries> {
    let top = ctx.group.dot_action(w, lambda);
    let ratios: Vec<Monomial> = ctx
        .positive_root_weights()
        .map(|a| ctx.mono(-a, 0))
        .collect();
    Ok(expand(
        ctx.weight_adic(),
        vec![(ctx.mono(top, 0), BigInt::from(1))],
        &ratios,
        ctx.hgt_bound(),
    )?
    .with_provenance(
        ctx.provenance("quasi-verma")
            .with("w", ctx.group.element(w).word_label())
            .with("lambda", lambda)
            .with("hgt_depth", ctx.window.hgt_depth),
    ))
}

/// `t^{tshift}/Π_α(1 - e^{-ℓα}) · Σ_v e^{v(ℓλ)} t^{2l(v)} / (Π_{v(α)>0}(1 - t²e^{-ℓα}) Π_{v(α)<0}(1 - t^{-2}e^{-ℓα}))`.
fn semiinf_weyl_sum(ctx: &FormulaContext, lambda: &Weight, tshift: i64) -> Result<BigradedSeries> {
    let l = ctx.ell_i64();
    let g = ctx.weight_adic();
    let ell_lambda = lambda.scale(l);
    let mut total = BigradedSeries::zero(g);
    for v in ctx.group.elements() {
        let mut ratios: Vec<Monomial> = Vec::new();
        for a in ctx.positive_root_weights() {
            ratios.push(ctx.mono(a.scale(-l), 0));
            let t = if ctx.datum.is_positive_root(&v.act(a)) {
                2
            } else {
                -2
            };
            ratios.push(ctx.mono(a.scale(-l), t));
        }
        let lead = ctx.mono(v.act(&ell_lambda), 2 * v.length as i64 + tshift);
        let term = expand(g, vec![(lead, BigInt::from(1))], &ratios, ctx.hgt_bound())?;
        total = total.add(&term)?;
    }
    if total.window().is_none() {
        total = total.truncate(ctx.window.hgt_depth);
    }
    Ok(total)
}

/// Semiinfinite Ext into the contragradient Weyl module `DW(ℓλ)`, with the
/// linear action `v(ℓλ)` in the numerators.
pub fn semiinf_weyl_character(ctx: &FormulaContext, lambda: &Weight) -> Result<BigradedSeries> {
    require_dominant(lambda)?;
    Ok(
        semiinf_weyl_sum(ctx, lambda, -ctx.num_positive_roots())?.with_provenance(
            ctx.provenance("semiinf-weyl")
                .with("lambda", lambda)
                .with("hgt_depth", ctx.window.hgt_depth),
        ),
    )
}

/// The same character for `DW(ℓλ + w·0)`; the overall power of `t` is
/// raised by `l(w)`.
pub fn semiinf_weyl_shifted_character(
    ctx: &FormulaContext,
    lambda: &Weight,
    w: usize,
) -> Result<BigradedSeries> {
    let highest =
        &lambda.scale(ctx.ell_i64()) + &ctx.group.dot_action(w, &Weight::zero(ctx.rank()));
    require_dominant(&highest)?;
    let el = ctx.group.element(w);
    let tshift = -ctx.num_positive_roots() + el.length as i64;
    Ok(semiinf_weyl_sum(ctx, lambda, tshift)?.with_provenance(
        ctx.provenance("semiinf-weyl-shifted")
            .with("lambda", lambda)
            .with("w", el.word_label())
            .with("hgt_depth", ctx.window.hgt_depth),
    ))
}
