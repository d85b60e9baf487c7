use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use semiinf::bgg::{assign_signs, build_complex};
use semiinf::formulas::{self, BorelSign, FormulaContext, WindowParams};
use semiinf::sl2;
use semiinf::verify::{run_verify, CheckName, VerifyConfig};
use semiinf::{BigradedSeries, Error, TypeLabel, Weight};

#[derive(Parser)]
#[command(
    name = "semiinf",
    version,
    about = "Exact characters for semiinfinite cohomology of small quantum groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and print a JSON report.
    Verify(VerifyArgs),
    /// Expand one character formula and print its canonical JSON.
    Char(CharArgs),
    /// Build the signed quasi-BGG complex.
    Bgg(BggArgs),
}

#[derive(Args)]
struct TypeArgs {
    /// Cartan type: A, B, C, D, E, F or G.
    #[arg(long = "type", default_value = "A")]
    type_label: TypeLabel,
    #[arg(long, default_value_t = 1)]
    rank: usize,
    #[arg(long, default_value_t = 3)]
    ell: u32,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    ty: TypeArgs,
    /// Comma-separated checks; defaults to every check valid for the type.
    #[arg(long, value_delimiter = ',')]
    checks: Option<Vec<CheckName>>,
    /// Dominant weight in fundamental-weight coordinates, e.g. 1,0.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<Weight>,
    /// Depth H of the weight window hgt >= -H.
    #[arg(long)]
    window: Option<i64>,
    /// Maximal t-degree.
    #[arg(long)]
    tmax: Option<i64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Formula {
    Kostant,
    ExtSmall,
    ExtUminus,
    ExtBorelMinus,
    ExtBorelPlus,
    ExtTilde,
    SemiinfTilde,
    LocalCohomology,
    LocalCohomologyReindexed,
    ParabolicLocalCohomology,
    WeylModule,
    QuasiVerma,
    SemiinfWeyl,
    SemiinfWeylShifted,
    Sl2Simple,
}

#[derive(Args)]
struct CharArgs {
    #[command(flatten)]
    ty: TypeArgs,
    #[arg(long, value_enum)]
    formula: Formula,
    /// Maximal t-degree (t-adic and parabolic expansions).
    #[arg(long, default_value_t = 4)]
    tmax: i64,
    /// Depth H of the weight window hgt >= -H.
    #[arg(long, alias = "window", default_value_t = 10)]
    depth: i64,
    /// Weight in fundamental-weight coordinates, e.g. 1,0.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<Weight>,
    /// Weyl group element: "e", "s1s2" or "1,2".
    #[arg(long, default_value = "e")]
    w: String,
    /// Parabolic subset J as comma-separated one-based indices; empty for J = ∅.
    #[arg(long, default_value = "")]
    j: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Dot,
    Json,
}

#[derive(Args)]
struct BggArgs {
    #[command(flatten)]
    ty: TypeArgs,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<Weight>,
    #[arg(long, value_enum, default_value = "dot")]
    emit: Emit,
}

enum Failure {
    Usage(String),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Char(a) => cmd_char(a),
        Command::Bgg(a) => cmd_bgg(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn print_json(v: &serde_json::Value) {
    emit(&(serde_json::to_string_pretty(v).expect("json") + "\n"));
}

fn cmd_verify(a: VerifyArgs) -> Result<(), Failure> {
    let checks = a.checks.unwrap_or_else(|| {
        CheckName::ALL
            .into_iter()
            .filter(|&c| c != CheckName::Sl2 || (a.ty.type_label == TypeLabel::A && a.ty.rank == 1))
            .collect()
    });
    let config = VerifyConfig {
        type_label: a.ty.type_label,
        rank: a.ty.rank,
        ell: a.ty.ell,
        lambda: a.lambda,
        window: a.window,
        tmax: a.tmax,
        checks,
    };
    let report = run_verify(&config)?;
    print_json(&report.to_json_value());
    if report.has_failure() {
        Err(Failure::Checks)
    } else {
        Ok(())
    }
}

fn parse_j(text: &str, rank: usize) -> Result<Vec<usize>, Failure> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let i: usize = part
            .parse()
            .map_err(|_| Failure::Usage(format!("invalid index '{part}' in --j")))?;
        if i == 0 || i > rank {
            return Err(Failure::Usage(format!(
                "index {i} in --j is out of range 1..={rank}"
            )));
        }
        out.push(i - 1);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn cmd_char(a: CharArgs) -> Result<(), Failure> {
    let ctx = FormulaContext::for_type(
        a.ty.type_label,
        a.ty.rank,
        a.ty.ell,
        WindowParams::new(a.tmax, a.depth),
    )?;
    let lambda = a.lambda.unwrap_or_else(|| Weight::zero(ctx.rank()));
    if lambda.rank() != ctx.rank() {
        return Err(Error::RankMismatch {
            expected: ctx.rank(),
            found: lambda.rank(),
        }
        .into());
    }
    let w = ctx.group.parse_word(&a.w)?;
    let series: BigradedSeries = match a.formula {
        Formula::Kostant => formulas::kostant_character(&ctx)?,
        Formula::ExtSmall => formulas::ext_small_character(&ctx)?,
        Formula::ExtUminus => formulas::ext_uminus_character(&ctx)?,
        Formula::ExtBorelMinus => formulas::ext_borel_character(&ctx, BorelSign::Minus)?,
        Formula::ExtBorelPlus => formulas::ext_borel_character(&ctx, BorelSign::Plus)?,
        Formula::ExtTilde => formulas::ext_tilde_character(&ctx)?,
        Formula::SemiinfTilde => formulas::semiinf_tilde_character(&ctx)?,
        Formula::LocalCohomology => formulas::local_cohomology_character(&ctx)?,
        Formula::LocalCohomologyReindexed => formulas::reindexed_local_cohomology_character(&ctx)?,
        Formula::ParabolicLocalCohomology => {
            let j = parse_j(&a.j, ctx.rank())?;
            formulas::parabolic_local_cohomology_character(&ctx, &j)?
        }
        Formula::WeylModule => formulas::weyl_module_character(&ctx, &lambda)?,
        Formula::QuasiVerma => formulas::quasi_verma_character(&ctx, w, &lambda)?,
        Formula::SemiinfWeyl => formulas::semiinf_weyl_character(&ctx, &lambda)?,
        Formula::SemiinfWeylShifted => formulas::semiinf_weyl_shifted_character(&ctx, &lambda, w)?,
        Formula::Sl2Simple => {
            let ctx = sl2::sl2_context(a.ty.ell, a.depth)?;
            if a.ty.type_label != TypeLabel::A || a.ty.rank != 1 {
                return Err(Failure::Usage("sl2-simple requires type A rank 1".into()));
            }
            sl2::sl2_simple_character(&ctx, sl2::Sl2Weight(lambda.0[0]))?
        }
    };
    emit(&(series.to_canonical_json() + "\n"));
    Ok(())
}

fn cmd_bgg(a: BggArgs) -> Result<(), Failure> {
    let ctx = FormulaContext::for_type(
        a.ty.type_label,
        a.ty.rank,
        a.ty.ell,
        WindowParams::default(),
    )?;
    let lambda = a.lambda.unwrap_or_else(|| Weight::zero(ctx.rank()));
    let complex = assign_signs(build_complex(&ctx, &lambda)?)?;
    match a.emit {
        Emit::Dot => emit(&complex.emit_dot()),
        Emit::Json => print_json(&complex.to_json_value()),
    }
    Ok(())
}
