//! Command-line front end. [`run_command`] parses an argument vector,
//! runs one subcommand and returns the exit code together with the text
//! destined for stdout and stderr, so the whole CLI is testable in-process.
//!
//! Exit codes: `0` every check passed, `1` a bound violation or a failed
//! certification, `2` invalid input.

use std::f64::consts::FRAC_PI_2;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::ambient::AmbientModel;
use crate::gauss::{self, check_bound, corollary_triple, gauss_tensor, is_totally_symmetric, BoundMode, BoundReport};
use crate::instance::{load_instance, save_instance, Instance, InstanceError, StructureModel};
use crate::optim::{brute_force_max, ConstrainedQuadratic, LemmaKind, LemmaMaximum, OracleMaximum};
use crate::report::{self, build_report, InstanceEcho, Provenance};
use crate::sampling::Sampler;
use crate::structures::{construct_family, Family, FamilyParams, SlantStructure};
use crate::tensor::{Dimensions, UnitVector};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

/// Largest `--count` accepted by `sample`.
pub const MAX_SAMPLE_COUNT: usize = 1_000_000;
/// Agreement required between the closed-form lemma maxima and the oracle.
pub const LEMMA_ORACLE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutput {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn verdict(passed: bool, stdout: String) -> Self {
        Self {
            code: if passed { EXIT_OK } else { EXIT_FAILED },
            stdout,
            stderr: String::new(),
        }
    }

    fn invalid(message: impl std::fmt::Display) -> Self {
        Self {
            code: EXIT_INVALID,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "curvlike", version, about = "Chen-Ricci bounds for curvature-like tensors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every check on an instance file.
    Check { file: PathBuf },
    /// Evaluate one bound and its equality classification.
    Bound {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
    },
    /// Write an instance for a named family.
    Construct {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        lambda: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        mu: Option<f64>,
        /// Slant angle; also used by a complex_slant ambient.
        #[arg(long)]
        theta: Option<f64>,
        /// Comma-separated bundle vector for totally-umbilical.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        h0: Option<Vec<f64>>,
        /// Bundle dimension for totally-geodesic (defaults to n).
        #[arg(long)]
        bundle: Option<usize>,
        #[command(flatten)]
        ambient: AmbientArgs,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Closed-form and oracle maxima of the constrained quadratics.
    Lemma {
        #[arg(long, value_enum)]
        which: LemmaArg,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        sum: f64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        values: Option<Vec<f64>>,
    },
    /// Seeded campaign over random forms.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        bundle: usize,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum)]
        family: SampleFamily,
        #[command(flatten)]
        ambient: AmbientArgs,
        /// Slant angle for a complex_slant ambient.
        #[arg(long)]
        theta: Option<f64>,
    },
    /// Orthonormal basis of the relative null space.
    Nullspace { file: PathBuf },
    /// Full report on an instance.
    Report {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Debug, Args)]
struct AmbientArgs {
    #[arg(long, value_enum)]
    ambient: Option<AmbientKind>,
    /// Curvature parameter of the ambient model.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    c: f64,
}

impl AmbientArgs {
    fn model(&self, theta: Option<f64>) -> Option<AmbientModel> {
        let c = self.c;
        self.ambient.map(|kind| match kind {
            AmbientKind::RealSpaceForm => AmbientModel::RealSpaceForm { c },
            AmbientKind::ComplexLagrangian => AmbientModel::ComplexLagrangian { c },
            AmbientKind::ComplexSlant => AmbientModel::ComplexSlant {
                c,
                theta: theta.unwrap_or(FRAC_PI_2),
            },
            AmbientKind::SasakianCTotallyReal => AmbientModel::SasakianCTotallyReal { c },
        })
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum AmbientKind {
    RealSpaceForm,
    ComplexLagrangian,
    ComplexSlant,
    SasakianCTotallyReal,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    General,
    Improved,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LemmaArg {
    F1,
    F2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum SampleFamily {
    General,
    Symmetric,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Parses `argv` (program name first) and runs the subcommand.
pub fn run_command<I, T>(argv: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => CommandOutput::ok(text),
                _ => CommandOutput {
                    code: EXIT_INVALID,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let tol = match crate::default_tolerance() {
        Ok(t) => t,
        Err(e) => return CommandOutput::invalid(e),
    };
    match dispatch(cli.command, tol) {
        Ok(out) => out,
        Err(message) => CommandOutput::invalid(message),
    }
}

type Outcome = std::result::Result<CommandOutput, String>;

fn load(path: &PathBuf) -> std::result::Result<Instance, String> {
    load_instance(path).map_err(|e: InstanceError| e.to_string())
}

fn dispatch(command: Command, tol: f64) -> Outcome {
    match command {
        Command::Check { file } => check(&load(&file)?, tol),
        Command::Bound { file, mode } => bound(&load(&file)?, mode, tol),
        Command::Construct {
            family,
            n,
            lambda,
            mu,
            theta,
            h0,
            bundle,
            ambient,
            output,
        } => {
            let params = family_params(&family, n, lambda, mu, theta, h0, bundle)?;
            construct(&params, ambient.model(theta), output)
        }
        Command::Lemma { which, n, sum, values } => lemma(which, n, sum, values, tol),
        Command::Sample {
            n,
            bundle,
            count,
            seed,
            family,
            ambient,
            theta,
        } => sample(
            SampleConfig {
                n,
                bundle,
                count,
                seed,
                family,
                ambient: ambient.model(theta),
            },
            tol,
        ),
        Command::Nullspace { file } => nullspace(&load(&file)?, tol),
        Command::Report { file, format } => {
            let r = build_report(&load(&file)?, tol, None).map_err(|e| e.to_string())?;
            let text = match format {
                Format::Json => report::to_json(&r),
                Format::Text => report::to_text(&r),
            };
            Ok(CommandOutput::verdict(r.verdict.passed, text))
        }
    }
}

#[derive(Debug, Serialize)]
struct CheckItem {
    name: &'static str,
    passed: bool,
    value: f64,
}

#[derive(Debug, Serialize)]
struct CheckOutput {
    instance: InstanceEcho,
    checks: Vec<CheckItem>,
    failures: Vec<String>,
    passed: bool,
    provenance: Provenance,
}

fn check(instance: &Instance, tol: f64) -> Outcome {
    let r = build_report(instance, tol, None).map_err(|e| e.to_string())?;
    let mut checks = vec![
        CheckItem {
            name: "curvature_symmetries",
            passed: r.symmetry.passed,
            value: r.symmetry.max_residual(),
        },
        CheckItem {
            name: "gauss_residual",
            passed: r.invariants.gauss_residual == 0.0,
            value: r.invariants.gauss_residual,
        },
        CheckItem {
            name: "general_bound",
            passed: !r.general.violated(),
            value: r.general.gap,
        },
        CheckItem {
            name: "improved_bound",
            passed: !(r.improved.symmetry_certified && r.improved.violated()),
            value: r.improved.gap,
        },
        CheckItem {
            name: "corollary",
            passed: r.corollary.iter().all(|c| c.verified),
            value: r.corollary.iter().filter(|c| !c.verified).count() as f64,
        },
    ];
    if let Some(a) = &r.ambient {
        checks.push(CheckItem {
            name: "ambient_bound",
            passed: a.holds,
            value: a.gap,
        });
    }
    if let Some(s) = &r.structure {
        checks.push(CheckItem {
            name: "structure",
            passed: s.passed,
            value: s.residual,
        });
    }
    let out = CheckOutput {
        instance: r.instance,
        checks,
        passed: r.verdict.passed,
        failures: r.verdict.failures,
        provenance: r.provenance,
    };
    Ok(CommandOutput::verdict(out.passed, report::to_json(&out)))
}

#[derive(Debug, Serialize)]
struct BoundOutput {
    instance: InstanceEcho,
    #[serde(flatten)]
    report: BoundReport,
    violated: bool,
    passed: bool,
}

fn bound(instance: &Instance, mode: ModeArg, tol: f64) -> Outcome {
    let mode = match mode {
        ModeArg::General => BoundMode::General,
        ModeArg::Improved => BoundMode::Improved,
    };
    let r = check_bound(&instance.zeta, mode, tol).map_err(|e| e.to_string())?;
    let out = BoundOutput {
        instance: InstanceEcho::of(instance, None),
        violated: r.violated(),
        passed: r.holds(),
        report: r,
    };
    Ok(CommandOutput::verdict(out.passed, report::to_json(&out)))
}

fn require(name: &str, value: Option<f64>, family: Family) -> std::result::Result<f64, String> {
    value.ok_or_else(|| format!("--{name} is required for family {}", family.name()))
}

fn family_params(
    name: &str,
    n: usize,
    lambda: Option<f64>,
    mu: Option<f64>,
    theta: Option<f64>,
    h0: Option<Vec<f64>>,
    bundle: Option<usize>,
) -> std::result::Result<FamilyParams, String> {
    let family = Family::from_name(name).ok_or_else(|| {
        let known: Vec<_> = Family::ALL.iter().map(|f| f.name()).collect();
        format!("unknown family {name:?}; expected one of {}", known.join(", "))
    })?;
    let theta = theta.unwrap_or(FRAC_PI_2);
    Ok(match family {
        Family::HUmbilical => FamilyParams::HUmbilical {
            n,
            lambda: require("lambda", lambda, family)?,
            mu: require("mu", mu, family)?,
        },
        Family::Slumbilical => FamilyParams::Slumbilical {
            n,
            lambda: require("lambda", lambda, family)?,
            theta,
        },
        Family::HSlumbilical => FamilyParams::HSlumbilical {
            n,
            lambda: require("lambda", lambda, family)?,
            mu: require("mu", mu, family)?,
            theta,
        },
        Family::HUmbilicalCTotallyReal => FamilyParams::HUmbilicalCTotallyReal {
            n,
            lambda: require("lambda", lambda, family)?,
            mu: require("mu", mu, family)?,
        },
        Family::TotallyUmbilical => FamilyParams::TotallyUmbilical {
            n,
            h0: h0.ok_or_else(|| "--h0 is required for family totally-umbilical".to_string())?,
        },
        Family::TotallyGeodesic => FamilyParams::TotallyGeodesic {
            n,
            bundle_dim: bundle.unwrap_or(n),
        },
    })
}

/// Instance for a family, with the structure marker its frame implies.
pub fn family_instance(params: &FamilyParams, ambient: Option<AmbientModel>) -> crate::Result<Instance> {
    let zeta = construct_family(params)?;
    let structure = match params {
        FamilyParams::Slumbilical { theta, .. } | FamilyParams::HSlumbilical { theta, .. } => {
            Some(StructureModel::Slant { theta: *theta })
        }
        FamilyParams::HUmbilicalCTotallyReal { .. } => Some(StructureModel::CTotallyReal),
        _ => None,
    };
    if let Some(model) = &ambient {
        model.validate()?;
        model.ricci_offset(params.n())?;
    }
    Ok(Instance {
        zeta,
        ambient,
        structure,
    })
}

#[derive(Debug, Serialize)]
struct ConstructOutput {
    written: String,
    family: &'static str,
    sha256: String,
}

fn construct(params: &FamilyParams, ambient: Option<AmbientModel>, output: Option<PathBuf>) -> Outcome {
    let instance = family_instance(params, ambient).map_err(|e| e.to_string())?;
    // re-validate through the file layer so written files always load
    let instance = Instance::from_file(&instance.to_file()).map_err(|e| e.to_string())?;
    match output {
        Some(path) => {
            save_instance(&instance, &path).map_err(|e| e.to_string())?;
            let out = ConstructOutput {
                written: path.display().to_string(),
                family: params.family().name(),
                sha256: instance.sha256(),
            };
            Ok(CommandOutput::ok(report::to_json(&out)))
        }
        None => Ok(CommandOutput::ok(instance.to_json())),
    }
}

#[derive(Debug, Serialize)]
struct ValuesCheck {
    values: Vec<f64>,
    value: f64,
    constraint_residual: f64,
    feasible: bool,
    below_max: bool,
}

#[derive(Debug, Serialize)]
struct LemmaOutput {
    which: LemmaKind,
    n: usize,
    sum: f64,
    closed_form: LemmaMaximum,
    oracle: OracleMaximum,
    oracle_difference: f64,
    values: Option<ValuesCheck>,
    passed: bool,
    provenance: Provenance,
}

fn lemma(which: LemmaArg, n: usize, sum: f64, values: Option<Vec<f64>>, tol: f64) -> Outcome {
    let kind = match which {
        LemmaArg::F1 => LemmaKind::F1,
        LemmaArg::F2 => LemmaKind::F2,
    };
    let q = ConstrainedQuadratic::new(kind, n, sum).map_err(|e| e.to_string())?;
    let closed = q.closed_form();
    let values = match values {
        Some(values) => {
            let value = q.value(&values).map_err(|e| e.to_string())?;
            let scale = sum.abs().max(1.0);
            let constraint_residual = q.constraint_residual(&values);
            let feasible = constraint_residual <= tol * scale;
            let below_max = value <= closed.max + tol * (scale * scale);
            Some(ValuesCheck {
                values,
                value,
                constraint_residual,
                feasible,
                below_max,
            })
        }
        None => None,
    };
    let (oracle, passed) = match brute_force_max(&q) {
        Ok(oracle) => {
            let agree = (oracle.max - closed.max).abs() <= LEMMA_ORACLE_TOL * sum.abs().max(1.0).powi(2);
            let values_ok = values.as_ref().is_none_or(|v| !v.feasible || v.below_max);
            (oracle, agree && values_ok)
        }
        Err(e) => {
            return Ok(CommandOutput {
                code: EXIT_FAILED,
                stdout: String::new(),
                stderr: format!("{e}\n"),
            })
        }
    };
    let out = LemmaOutput {
        which: kind,
        n,
        sum,
        oracle_difference: oracle.max - closed.max,
        closed_form: closed,
        oracle,
        values,
        passed,
        provenance: Provenance::new(tol),
    };
    Ok(CommandOutput::verdict(passed, report::to_json(&out)))
}

struct SampleConfig {
    n: usize,
    bundle: usize,
    count: usize,
    seed: u64,
    family: SampleFamily,
    ambient: Option<AmbientModel>,
}

#[derive(Debug, Serialize)]
struct SampleRow {
    index: usize,
    sha256: String,
    ricci_max: f64,
    general_gap: f64,
    improved_gap: f64,
    totally_symmetric: bool,
    corollary_verified: bool,
    ambient_gap: Option<f64>,
}

#[derive(Debug, Serialize)]
struct SampleSummary {
    general_violations: usize,
    totally_symmetric: usize,
    symmetric_fraction: f64,
    improved_violations: usize,
    ambient_uncertified: usize,
    ambient_violations: usize,
    corollary_failures: usize,
    min_general_gap: f64,
    min_improved_gap_certified: Option<f64>,
}

#[derive(Debug, Serialize)]
struct SampleOutput {
    generator: &'static str,
    seed: u64,
    n: usize,
    bundle_dim: usize,
    count: usize,
    family: SampleFamily,
    ambient: Option<AmbientModel>,
    summary: SampleSummary,
    instances: Vec<SampleRow>,
    passed: bool,
    provenance: Provenance,
}

/// Stream description recorded in `sample` output.
pub const GENERATOR: &str = "chacha8 seed_from_u64(seed), stream = instance index";

fn sample_row(cfg: &SampleConfig, dims: Dimensions, index: usize, tol: f64) -> crate::Result<SampleRow> {
    let mut s = Sampler::for_instance(cfg.seed, index as u64);
    let zeta = match cfg.family {
        SampleFamily::General => s.random_general(dims),
        SampleFamily::Symmetric => s.random_symmetric(dims),
    };
    let ricci = gauss_tensor(&zeta).ricci_form()?;
    let (ricci_max, dir) = crate::optim::max_ricci(&ricci)?;
    let totally_symmetric = dims.bundle() >= dims.n() && is_totally_symmetric(&zeta, tol)?.holds;
    let corollary_verified = corollary_triple(&zeta, &dir, tol).verified
        && (0..dims.n()).all(|i| corollary_triple(&zeta, &UnitVector::basis(dims.n(), i), tol).verified);
    let ambient_gap = match &cfg.ambient {
        Some(model) => Some(model.application_bound(&zeta)? - ricci_max - model.ricci_offset(dims.n())?),
        None => None,
    };
    let instance = Instance {
        zeta: zeta.clone(),
        ambient: cfg.ambient,
        structure: None,
    };
    Ok(SampleRow {
        index,
        sha256: instance.sha256(),
        ricci_max,
        general_gap: gauss::chen_ricci_bound(&zeta) - ricci_max,
        improved_gap: gauss::improved_bound(&zeta) - ricci_max,
        totally_symmetric,
        corollary_verified,
        ambient_gap,
    })
}

fn sample(cfg: SampleConfig, tol: f64) -> Outcome {
    let dims = Dimensions::new(cfg.n, cfg.bundle).map_err(|e| e.to_string())?;
    if cfg.count == 0 || cfg.count > MAX_SAMPLE_COUNT {
        return Err(format!("--count must be in 1..={MAX_SAMPLE_COUNT}"));
    }
    if cfg.family == SampleFamily::Symmetric && cfg.bundle < cfg.n {
        return Err(format!(
            "symmetric sampling needs --bundle >= --n ({} < {})",
            cfg.bundle, cfg.n
        ));
    }
    if let Some(model) = &cfg.ambient {
        model.ricci_offset(cfg.n).map_err(|e| e.to_string())?;
        if let AmbientModel::ComplexSlant { theta, .. } = model {
            SlantStructure::build(cfg.n, *theta).map_err(|e| e.to_string())?;
        }
    }
    let rows = (0..cfg.count)
        .into_par_iter()
        .map(|i| sample_row(&cfg, dims, i, tol))
        .collect::<crate::Result<Vec<_>>>()
        .map_err(|e| e.to_string())?;

    let scale = |gap: f64, r: &SampleRow| tol * r.ricci_max.abs().max((gap + r.ricci_max).abs()).max(1.0);
    let general_violations = rows.iter().filter(|r| r.general_gap < -scale(r.general_gap, r)).count();
    let certified: Vec<&SampleRow> = rows.iter().filter(|r| r.totally_symmetric).collect();
    let improved_violations = certified
        .iter()
        .filter(|r| r.improved_gap < -scale(r.improved_gap, r))
        .count();
    let needs_symmetry = cfg.ambient.is_some_and(|m| m.uses_improved_bound());
    let ambient_uncertified = if needs_symmetry {
        rows.len() - certified.len()
    } else {
        0
    };
    let ambient_violations = rows
        .iter()
        .filter(|r| !needs_symmetry || r.totally_symmetric)
        .filter(|r| r.ambient_gap.is_some_and(|g| g < -scale(g, r)))
        .count();
    let corollary_failures = rows.iter().filter(|r| !r.corollary_verified).count();
    let summary = SampleSummary {
        general_violations,
        totally_symmetric: certified.len(),
        symmetric_fraction: certified.len() as f64 / rows.len() as f64,
        improved_violations,
        ambient_uncertified,
        ambient_violations,
        corollary_failures,
        min_general_gap: rows.iter().map(|r| r.general_gap).fold(f64::INFINITY, f64::min),
        min_improved_gap_certified: certified.iter().map(|r| r.improved_gap).reduce(f64::min),
    };
    let passed =
        general_violations == 0 && improved_violations == 0 && ambient_violations == 0 && corollary_failures == 0;
    let out = SampleOutput {
        generator: GENERATOR,
        seed: cfg.seed,
        n: cfg.n,
        bundle_dim: cfg.bundle,
        count: cfg.count,
        family: cfg.family,
        ambient: cfg.ambient,
        summary,
        instances: rows,
        passed,
        provenance: Provenance::new(tol),
    };
    Ok(CommandOutput::verdict(passed, report::to_json(&out)))
}

#[derive(Debug, Serialize)]
struct NullspaceOutput {
    instance: InstanceEcho,
    dimension: usize,
    basis: Vec<UnitVector>,
    /// Largest `‖ζ(v, e_j)‖` over basis vectors `v` and coordinate directions.
    max_residual: f64,
    rank_tolerance: f64,
}

fn nullspace(instance: &Instance, tol: f64) -> Outcome {
    let zeta = &instance.zeta;
    let n = zeta.n();
    let basis = zeta.null_space(tol);
    let max_residual = basis
        .iter()
        .flat_map(|v| (0..n).map(move |j| (v, j)))
        .map(|(v, j)| crate::linalg::norm(&zeta.apply(v.as_slice(), UnitVector::basis(n, j).as_slice())))
        .fold(0.0, f64::max);
    let out = NullspaceOutput {
        instance: InstanceEcho::of(instance, None),
        dimension: basis.len(),
        basis,
        max_residual,
        rank_tolerance: tol,
    };
    Ok(CommandOutput::ok(report::to_json(&out)))
}
