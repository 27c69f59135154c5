//! Deterministic reports for a single instance, as JSON or as an indented
//! text rendering that lists the same fields in the same order.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::ambient::AmbientModel;
use crate::error::Result;
use crate::gauss::{self, corollary_triple, equality_directions, gauss_tensor, verify_gauss, BoundMode, BoundReport};
use crate::instance::{Instance, StructureModel};
use crate::structures::SlantStructure;
use crate::tensor::{SymmetryReport, UnitVector};

pub const TOOL_NAME: &str = "curvlike";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
/// Tolerance for the curvature identities of a built tensor, relative to `max(1, ‖ζ‖²)`.
pub const BUILT_SYMMETRY_TOL: f64 = 1e-12;
/// Tolerance for the slant structure identities.
pub const SLANT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub tolerance: f64,
    pub built_symmetry_tolerance: f64,
    pub rank_tolerance: f64,
}

impl Provenance {
    pub fn new(tolerance: f64) -> Self {
        Self {
            tool: TOOL_NAME.into(),
            version: TOOL_VERSION.into(),
            tolerance,
            built_symmetry_tolerance: BUILT_SYMMETRY_TOL,
            rank_tolerance: tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceEcho {
    pub sha256: String,
    pub n: usize,
    pub bundle_dim: usize,
    pub seed: Option<u64>,
}

impl InstanceEcho {
    pub fn of(instance: &Instance, seed: Option<u64>) -> Self {
        Self {
            sha256: instance.sha256(),
            n: instance.zeta.n(),
            bundle_dim: instance.zeta.bundle_dim(),
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Invariants {
    pub norm_sq: f64,
    pub trace: Vec<f64>,
    pub trace_norm_sq: f64,
    pub mean_curvature: Vec<f64>,
    pub scalar: f64,
    /// `τ_T − ½‖trace ζ‖² + ½‖ζ‖²`
    pub tau_identity_residual: f64,
    pub gauss_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorollaryRow {
    pub direction: UnitVector,
    pub equality: bool,
    pub trace_zero: bool,
    pub in_null_space: bool,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmbientSection {
    pub model: AmbientModel,
    pub ricci_offset: f64,
    pub application_bound: f64,
    pub intrinsic_ricci_max: f64,
    pub gap: f64,
    /// False when the model needs a totally symmetric ζ and it is not.
    pub hypothesis_certified: bool,
    pub identity_residual: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureSection {
    pub structure: StructureModel,
    pub residual: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub passed: bool,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub instance: InstanceEcho,
    pub symmetry: SymmetryReport,
    pub invariants: Invariants,
    pub general: BoundReport,
    pub improved: BoundReport,
    pub equality_directions: Vec<UnitVector>,
    pub null_space: Vec<UnitVector>,
    pub corollary: Vec<CorollaryRow>,
    pub ambient: Option<AmbientSection>,
    pub structure: Option<StructureSection>,
    pub verdict: Verdict,
    pub provenance: Provenance,
}

fn relative_violation(gap: f64, a: f64, b: f64, tol: f64) -> bool {
    gap < -tol * a.abs().max(b.abs()).max(1.0)
}

pub fn build_report(instance: &Instance, tol: f64, seed: Option<u64>) -> Result<Report> {
    let zeta = &instance.zeta;
    let n = zeta.n();
    let t = gauss_tensor(zeta);
    let symmetry = t.validate_symmetries(BUILT_SYMMETRY_TOL * gauss::tensor_scale(zeta));
    let scalar = t.scalar()?;
    let invariants = Invariants {
        norm_sq: zeta.norm_sq(),
        trace: zeta.trace(),
        trace_norm_sq: zeta.trace_norm_sq(),
        mean_curvature: zeta.mean_curvature(),
        scalar,
        tau_identity_residual: scalar - 0.5 * zeta.trace_norm_sq() + 0.5 * zeta.norm_sq(),
        gauss_residual: verify_gauss(&t, zeta)?,
    };
    let general = gauss::check_bound(zeta, BoundMode::General, tol)?;
    let improved = gauss::check_bound(zeta, BoundMode::Improved, tol)?;

    let mut directions: Vec<UnitVector> = (0..n).map(|i| UnitVector::basis(n, i)).collect();
    if !directions.contains(&general.argmax_direction) {
        directions.push(general.argmax_direction.clone());
    }
    let corollary = directions
        .into_iter()
        .map(|x| {
            let c = corollary_triple(zeta, &x, tol);
            CorollaryRow {
                direction: x,
                equality: c.equality,
                trace_zero: c.trace_zero,
                in_null_space: c.in_null_space,
                verified: c.verified,
            }
        })
        .collect::<Vec<_>>();

    let mut failures = Vec::new();
    if !symmetry.passed {
        failures.push(format!(
            "curvature symmetries fail (max residual {})",
            symmetry.max_residual()
        ));
    }
    if general.violated() {
        failures.push(format!("general bound violated (gap {})", general.gap));
    }
    if improved.symmetry_certified && improved.violated() {
        failures.push(format!(
            "improved bound violated under certified symmetry (gap {})",
            improved.gap
        ));
    }
    for (k, row) in corollary.iter().enumerate() {
        if !row.verified {
            failures.push(format!("corollary truth table fails at direction {k}"));
        }
    }

    let ambient = match instance.ambient {
        Some(model) => {
            let (intrinsic_ricci_max, _) = model.intrinsic_ricci_max(zeta)?;
            let application_bound = model.application_bound(zeta)?;
            let hypothesis_certified = !model.uses_improved_bound() || improved.symmetry_certified;
            let gap = application_bound - intrinsic_ricci_max;
            let holds = hypothesis_certified && !relative_violation(gap, application_bound, intrinsic_ricci_max, tol);
            if !hypothesis_certified {
                failures.push(format!(
                    "{} needs a totally symmetric form, which is not certified",
                    model.name()
                ));
            } else if !holds {
                failures.push(format!("{} bound violated (gap {gap})", model.name()));
            }
            Some(AmbientSection {
                model,
                ricci_offset: model.ricci_offset(n)?,
                application_bound,
                intrinsic_ricci_max,
                gap,
                hypothesis_certified,
                identity_residual: model.bound_identity_residual(zeta)?,
                holds,
            })
        }
        None => None,
    };

    let structure = match instance.structure {
        Some(structure) => {
            let residual = match structure {
                StructureModel::Slant { theta } => SlantStructure::build(n, theta)?.residuals().max(),
                // the characteristic direction occupies the last bundle slot
                StructureModel::CTotallyReal => {
                    let last = zeta.bundle_dim() - 1;
                    (0..n)
                        .flat_map(|i| (i..n).map(move |j| (i, j)))
                        .fold(0.0_f64, |m, (i, j)| m.max(zeta.get(last, i, j).abs()))
                }
            };
            let limit = match structure {
                StructureModel::Slant { .. } => SLANT_TOL,
                StructureModel::CTotallyReal => tol * gauss::form_scale(zeta),
            };
            let passed = residual <= limit;
            if !passed {
                failures.push(format!("structure identities fail (residual {residual})"));
            }
            Some(StructureSection {
                structure,
                residual,
                passed,
            })
        }
        None => None,
    };

    Ok(Report {
        instance: InstanceEcho::of(instance, seed),
        symmetry,
        invariants,
        equality_directions: equality_directions(zeta, tol)?,
        null_space: zeta.null_space(tol),
        general,
        improved,
        corollary,
        ambient,
        structure,
        verdict: Verdict {
            passed: failures.is_empty(),
            failures,
        },
        provenance: Provenance::new(tol),
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

/// Indented `key: value` rendering of the JSON form of `value`.
pub fn to_text<T: Serialize>(value: &T) -> String {
    let json = serde_json::to_value(value).expect("report serializes");
    let mut out = String::new();
    render(&json, 0, &mut out);
    out
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Array(items) if items.iter().all(is_scalar) => Some(format!(
            "[{}]",
            items.iter().map(Value::to_string).collect::<Vec<_>>().join(", ")
        )),
        Value::Array(items) if items.is_empty() => Some("[]".into()),
        Value::Array(items)
            if items
                .iter()
                .all(|x| inline(x).is_some() && matches!(x, Value::Array(_))) =>
        {
            Some(format!(
                "[{}]",
                items.iter().filter_map(inline).collect::<Vec<_>>().join(", ")
            ))
        }
        Value::Object(map) if map.is_empty() => Some("{}".into()),
        v if is_scalar(v) => match v {
            Value::String(s) => Some(s.clone()),
            other => Some(other.to_string()),
        },
        _ => None,
    }
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (key, value) in map {
                match inline(value) {
                    Some(s) => out.push_str(&format!("{pad}{key}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        render(value, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match inline(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render(item, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other).unwrap_or_default())),
    }
}

/// Every number in the JSON form of `value` is finite. Non-finite floats
/// serialize as `null`, so callers also compare [`null_paths`] against the
/// optional fields they expect.
pub fn all_finite<T: Serialize>(value: &T) -> bool {
    fn walk(v: &Value) -> bool {
        match v {
            Value::Number(n) => n.as_f64().is_some_and(f64::is_finite),
            Value::Array(items) => items.iter().all(walk),
            Value::Object(map) => map.values().all(walk),
            _ => true,
        }
    }
    walk(&serde_json::to_value(value).expect("report serializes"))
}

/// JSON paths holding `null`.
pub fn null_paths<T: Serialize>(value: &T) -> Vec<String> {
    fn walk(v: &Value, path: String, out: &mut Vec<String>) {
        match v {
            Value::Null => out.push(path),
            Value::Array(items) => {
                for (k, item) in items.iter().enumerate() {
                    walk(item, format!("{path}[{k}]"), out);
                }
            }
            Value::Object(map) => {
                for (key, item) in map {
                    walk(
                        item,
                        if path.is_empty() {
                            key.clone()
                        } else {
                            format!("{path}.{key}")
                        },
                        out,
                    );
                }
            }
            _ => {}
        }
    }
    let mut out = Vec::new();
    walk(
        &serde_json::to_value(value).expect("report serializes"),
        String::new(),
        &mut out,
    );
    out
}
