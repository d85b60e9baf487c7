//! Verification suites and the report they produce.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_rational::Rational64;
use serde::Serialize;

use crate::bgg::{assign_signs, build_complex, verify_euler};
use crate::charseries::{BigradedSeries, Difference, Monomial, WindowComparison};
use crate::error::{Error, Result};
use crate::formulas::{
    ext_tilde_character, ext_tilde_factorized, kostant_character, local_cohomology_character,
    parabolic_local_cohomology_character, reindexed_local_cohomology_character,
    semiinf_tilde_character, semiinf_weyl_character, FormulaContext, WindowParams,
};
use crate::rootdata::{TypeLabel, Weight};
use crate::sl2;

pub const REPORT_FORMAT: &str = "semiinf-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckName {
    Feigin,
    Sl2,
    BggEuler,
    Kostant,
    TildeFactorization,
    ParabolicBoundaries,
    ChformulaCompare,
}

impl CheckName {
    pub const ALL: [CheckName; 7] = [
        CheckName::Feigin,
        CheckName::Sl2,
        CheckName::BggEuler,
        CheckName::Kostant,
        CheckName::TildeFactorization,
        CheckName::ParabolicBoundaries,
        CheckName::ChformulaCompare,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::Feigin => "feigin",
            CheckName::Sl2 => "sl2",
            CheckName::BggEuler => "bgg-euler",
            CheckName::Kostant => "kostant",
            CheckName::TildeFactorization => "tilde-factorization",
            CheckName::ParabolicBoundaries => "parabolic-boundaries",
            CheckName::ChformulaCompare => "chformula-compare",
        }
    }

    /// The identity the check exercises.
    pub fn source(self) -> &'static str {
        match self {
            CheckName::Feigin => {
                "semiinfinite cohomology of the trivial module vs reindexed local cohomology of the nilpotent cone"
            }
            CheckName::Sl2 => "rank one quasi-Verma filtrations and 0 -> M^s(s.kl) -> M^e(kl) -> W(kl) -> 0",
            CheckName::BggEuler => "Euler characteristic of the quasi-BGG complex vs the Weyl module",
            CheckName::Kostant => "graded character of functions on the nilpotent cone",
            CheckName::TildeFactorization => "Ext over the extended small quantum group as a product of Borel factors",
            CheckName::ParabolicBoundaries => "parabolic local cohomology at J = I and J = empty",
            CheckName::ChformulaCompare => {
                "semiinfinite Ext into DW(l lambda) vs the semiinfinite cohomology of the trivial module"
            }
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        CheckName::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown check '{s}'"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    ReportedDiscrepancy,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub source: String,
    pub status: Status,
    pub shift: Option<String>,
    pub first_difference: Option<Difference>,
    pub compared_terms: usize,
    pub details: Vec<String>,
    pub wall_time_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    #[serde(rename = "type")]
    pub type_label: String,
    pub rank: usize,
    pub ell: u32,
    pub lambda: Option<Vec<i64>>,
    pub window: Option<i64>,
    pub tmax: Option<i64>,
    pub checks: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub format: &'static str,
    pub version: &'static str,
    pub config: ConfigEcho,
    pub entries: Vec<CheckEntry>,
    pub timestamp: u64,
}

impl VerificationReport {
    pub fn has_failure(&self) -> bool {
        self.entries.iter().any(|e| e.status == Status::Fail)
    }

    pub fn exit_code(&self) -> i32 {
        if self.has_failure() {
            1
        } else {
            0
        }
    }

    pub fn entry(&self, name: CheckName) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.name == name.as_str())
    }

    /// Report JSON without the timestamp, stable across runs up to
    /// wall times.
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub type_label: TypeLabel,
    pub rank: usize,
    pub ell: u32,
    pub lambda: Option<Weight>,
    /// Regime B depth `H` overriding each check's default.
    pub window: Option<i64>,
    /// Maximal t-degree overriding each check's default.
    pub tmax: Option<i64>,
    pub checks: Vec<CheckName>,
}

impl VerifyConfig {
    pub fn new(type_label: TypeLabel, rank: usize, ell: u32) -> Self {
        VerifyConfig {
            type_label,
            rank,
            ell,
            lambda: None,
            window: None,
            tmax: None,
            checks: CheckName::ALL.to_vec(),
        }
    }

    fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            type_label: self.type_label.to_string(),
            rank: self.rank,
            ell: self.ell,
            lambda: self.lambda.as_ref().map(|w| w.0.clone()),
            window: self.window,
            tmax: self.tmax,
            checks: self.checks.iter().map(|c| c.to_string()).collect(),
        }
    }
}

struct Outcome {
    status: Status,
    shift: Option<String>,
    first_difference: Option<Difference>,
    compared_terms: usize,
    details: Vec<String>,
}

impl Outcome {
    fn from_comparisons(comparisons: &[(&str, WindowComparison)]) -> Self {
        let mut out = Outcome {
            status: Status::Pass,
            shift: None,
            first_difference: None,
            compared_terms: 0,
            details: Vec::new(),
        };
        for (label, c) in comparisons {
            out.compared_terms += c.compared_terms;
            out.details.push(format!(
                "{label}: {} ({} terms)",
                if c.equal { "equal" } else { "differ" },
                c.compared_terms
            ));
            if !c.equal {
                out.status = Status::Fail;
                if out.first_difference.is_none() {
                    out.first_difference = c.first_difference.clone();
                }
            }
        }
        out
    }

    fn fail(&mut self, detail: String) {
        self.status = Status::Fail;
        self.details.push(detail);
    }
}

/// Rejects configurations a check cannot run on; these are usage errors.
pub fn validate(config: &VerifyConfig) -> Result<()> {
    if config.checks.contains(&CheckName::Sl2)
        && (config.type_label != TypeLabel::A || config.rank != 1)
    {
        return Err(Error::InvalidType {
            label: config.type_label.to_string(),
            rank: config.rank,
            reason: "sl2 suite requires rank 1".into(),
        });
    }
    if let Some(l) = &config.lambda {
        if l.rank() != config.rank {
            return Err(Error::RankMismatch {
                expected: config.rank,
                found: l.rank(),
            });
        }
        if !l.is_dominant() {
            return Err(Error::NotDominant(l.to_string()));
        }
    }
    Ok(())
}

pub fn run_verify(config: &VerifyConfig) -> Result<VerificationReport> {
    validate(config)?;
    let base = FormulaContext::for_type(
        config.type_label,
        config.rank,
        config.ell,
        WindowParams::default(),
    )?;
    let mut entries = Vec::new();
    let mut seen = Vec::new();
    for &name in &config.checks {
        if seen.contains(&name) {
            continue;
        }
        seen.push(name);
        let start = Instant::now();
        let outcome = run_check(name, &base, config)?;
        entries.push(CheckEntry {
            name: name.to_string(),
            source: name.source().to_string(),
            status: outcome.status,
            shift: outcome.shift,
            first_difference: outcome.first_difference,
            compared_terms: outcome.compared_terms,
            details: outcome.details,
            wall_time_ms: start.elapsed().as_millis(),
        });
    }
    Ok(VerificationReport {
        format: REPORT_FORMAT,
        version: env!("CARGO_PKG_VERSION"),
        config: config.echo(),
        entries,
        timestamp: std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
    })
}

fn two_rho_height(ctx: &FormulaContext) -> Rational64 {
    ctx.datum.hgt(&ctx.datum.two_rho)
}

fn run_check(name: CheckName, base: &FormulaContext, config: &VerifyConfig) -> Result<Outcome> {
    let ell = Rational64::from_integer(base.ell_i64());
    let depth = |default: Rational64| {
        config
            .window
            .map(Rational64::from_integer)
            .unwrap_or(default)
    };
    let tmax = |default: i64| config.tmax.unwrap_or(default);
    let lambda = config
        .lambda
        .clone()
        .unwrap_or_else(|| Weight::zero(base.rank()));
    match name {
        CheckName::Feigin => {
            let h = depth(ell * 10 * two_rho_height(base));
            feigin(&base.with_window(WindowParams {
                t_max: 0,
                hgt_depth: h,
            }))
        }
        CheckName::Sl2 => {
            let h = depth(ell * 50);
            let ctx = base.with_window(WindowParams {
                t_max: 0,
                hgt_depth: h,
            });
            let report = sl2::run_suite(&ctx, 5)?;
            let comparisons: Vec<(String, WindowComparison)> = report
                .checks
                .iter()
                .map(|c| (format!("k={}: {}", c.k, c.identity), c.comparison.clone()))
                .collect();
            let refs: Vec<(&str, WindowComparison)> = comparisons
                .iter()
                .map(|(l, c)| (l.as_str(), c.clone()))
                .collect();
            Ok(Outcome::from_comparisons(&refs))
        }
        CheckName::BggEuler => {
            let h = depth(Rational64::from_integer(0));
            bgg_euler(
                &base.with_window(WindowParams {
                    t_max: 0,
                    hgt_depth: h,
                }),
                &lambda,
            )
        }
        CheckName::Kostant => kostant(&base.with_window(WindowParams::new(tmax(10), 0))),
        CheckName::TildeFactorization => {
            let ctx = base.with_window(WindowParams::new(tmax(10), 0));
            let direct = ext_tilde_character(&ctx)?;
            let factored = ext_tilde_factorized(&ctx)?;
            Ok(Outcome::from_comparisons(&[(
                "ext_tilde = ext_borel(-) ext_borel(+) sum t^{2l(w)}",
                direct.equal_on_window(&factored),
            )]))
        }
        CheckName::ParabolicBoundaries => {
            let h = depth(two_rho_height(base) * 2);
            parabolic_boundaries(&base.with_window(WindowParams {
                t_max: tmax(6),
                hgt_depth: h,
            }))
        }
        CheckName::ChformulaCompare => {
            let h = depth(ell * 4 * two_rho_height(base));
            chformula_compare(
                &base.with_window(WindowParams {
                    t_max: 0,
                    hgt_depth: h,
                }),
                &lambda,
            )
        }
    }
}

/// Detected monomial shift between two series, verified on the window.
fn shift_comparison(
    lhs: &BigradedSeries,
    rhs: &BigradedSeries,
) -> (Option<Monomial>, WindowComparison) {
    match lhs.detect_monomial_shift(rhs) {
        Some(m) => {
            let shifted = rhs.mul_monomial(&m);
            (Some(m), lhs.equal_on_window(&shifted))
        }
        None => (None, lhs.equal_on_window(rhs)),
    }
}

fn feigin(ctx: &FormulaContext) -> Result<Outcome> {
    let semiinf = semiinf_tilde_character(ctx)?;
    let local = reindexed_local_cohomology_character(ctx)?;
    let (shift, cmp) = shift_comparison(&semiinf, &local);
    let mut out = Outcome::from_comparisons(&[("semiinf_tilde = m * local(t^2, l.)", cmp)]);
    let expected = Monomial::t(ctx.rank(), ctx.num_positive_roots());
    match &shift {
        Some(m) if *m == expected => {}
        Some(m) => out.fail(format!("detected shift {m}, expected {expected}")),
        None => out.fail("no monomial shift reconciles the two characters".into()),
    }
    out.shift = shift.map(|m| m.to_string());
    out.details
        .push(format!("window: hgt >= -{}", ctx.window.hgt_depth));
    Ok(out)
}

fn bgg_euler(ctx: &FormulaContext, lambda: &Weight) -> Result<Outcome> {
    let complex = assign_signs(build_complex(ctx, lambda)?)?;
    let mut out = Outcome::from_comparisons(&[]);
    let poincare: Vec<usize> = ctx
        .group
        .poincare_polynomial()
        .into_iter()
        .map(|c| c as usize)
        .collect();
    if complex.term_counts() != poincare {
        out.fail(format!(
            "term counts {:?} differ from Poincare coefficients {:?}",
            complex.term_counts(),
            poincare
        ));
    }
    if let Err(e) = complex.check_squares() {
        out.fail(e.to_string());
    }
    if let Err(e) = complex.check_d_squared() {
        out.fail(e.to_string());
    }
    let euler = verify_euler(&complex)?;
    out.compared_terms = euler.comparison.compared_terms;
    out.details.push(format!(
        "euler = ch W(l lambda): {} ({} terms, depth {})",
        if euler.comparison.equal {
            "equal"
        } else {
            "differ"
        },
        euler.comparison.compared_terms,
        euler.depth
    ));
    if !euler.comparison.equal {
        out.first_difference = euler.comparison.first_difference.clone();
        out.fail("euler character differs from the Weyl module".into());
    }
    if euler.new_terms_on_doubling > 0 {
        out.fail(format!(
            "doubling the window added {} terms",
            euler.new_terms_on_doubling
        ));
    }
    Ok(out)
}

fn kostant(ctx: &FormulaContext) -> Result<Outcome> {
    let k = kostant_character(ctx)?;
    let n = ctx.rank();
    let mut out = Outcome::from_comparisons(&[]);
    let one = BigradedSeries::one(ctx.t_adic());
    let slice0 = BigradedSeries::from_terms(
        ctx.t_adic(),
        k.t_slice(0)
            .into_iter()
            .map(|(w, c)| (Monomial::new(w, 0), c)),
    );
    let c0 = slice0.equal_on_window(&one);
    out.compared_terms += c0.compared_terms;
    if !c0.equal {
        out.fail("t^0 slice is not the constant 1".into());
    }
    let mut adjoint: Vec<(Monomial, i64)> = vec![(Monomial::t(n, 1), n as i64)];
    for r in &ctx.datum.positive_roots {
        adjoint.push((Monomial::new(r.weight.clone(), 1), 1));
        adjoint.push((Monomial::new(-&r.weight, 1), 1));
    }
    let expected = BigradedSeries::from_terms(ctx.t_adic(), adjoint);
    let slice1 = BigradedSeries::from_terms(
        ctx.t_adic(),
        k.t_slice(1)
            .into_iter()
            .map(|(w, c)| (Monomial::new(w, 1), c)),
    );
    let c1 = slice1.equal_on_window(&expected);
    out.compared_terms += c1.compared_terms;
    if !c1.equal {
        out.first_difference = c1.first_difference;
        out.fail("t^1 slice is not the adjoint character".into());
    } else {
        out.details.push(format!(
            "t^1 slice: adjoint, dimension {}",
            expected.total()
        ));
    }
    if ctx.datum.type_label() == TypeLabel::A && n == 1 {
        for d in 0..=ctx.window.t_max {
            let dim: num_bigint::BigInt = k.t_slice(d).values().sum();
            if dim != num_bigint::BigInt::from(2 * d + 1) {
                out.fail(format!(
                    "t^{d} slice has dimension {dim}, expected {}",
                    2 * d + 1
                ));
            }
        }
        out.details.push(format!(
            "t^d slices of dimension 2d+1 for d <= {}",
            ctx.window.t_max
        ));
    }
    Ok(out)
}

fn parabolic_boundaries(ctx: &FormulaContext) -> Result<Outcome> {
    let all: Vec<usize> = (0..ctx.rank()).collect();
    let at_i = parabolic_local_cohomology_character(ctx, &all)?;
    let kostant = kostant_character(ctx)?;
    let local = local_cohomology_character(ctx)?;
    let wide_bound = (ctx.window.hgt_depth * 2).ceil().to_integer() + ctx.window.t_max;
    let wide = ctx.with_window(WindowParams {
        t_max: wide_bound,
        ..ctx.window
    });
    let at_empty = parabolic_local_cohomology_character(&wide, &[])?;
    let c_i = at_i.equal_on_window(&kostant);
    let c_empty = at_empty.equal_on_window(&local);
    let mut out = Outcome::from_comparisons(&[
        ("J = I vs kostant", c_i.clone()),
        ("J = empty vs local cohomology", c_empty.clone()),
    ]);
    if c_i.compared_terms == 0 || c_empty.compared_terms == 0 {
        out.fail("a boundary comparison has an empty shared window".into());
    }
    Ok(out)
}

fn chformula_compare(ctx: &FormulaContext, lambda: &Weight) -> Result<Outcome> {
    let weyl = semiinf_weyl_character(ctx, lambda)?;
    let trivial = semiinf_tilde_character(ctx)?;
    let (shift, cmp) = shift_comparison(&weyl, &trivial);
    let mut out =
        Outcome::from_comparisons(&[("semiinf_weyl(lambda) vs semiinf_tilde", cmp.clone())]);
    out.status = if shift.is_some() && cmp.equal {
        Status::Pass
    } else {
        Status::ReportedDiscrepancy
    };
    out.details.push(match &shift {
        Some(m) => format!(
            "candidate shift {m}: {}",
            if cmp.equal { "verified" } else { "rejected" }
        ),
        None => "no monomial shift aligns the leading terms".into(),
    });
    out.shift = shift.filter(|_| cmp.equal).map(|m| m.to_string());
    Ok(out)
}
