//! Batch front end: a JSON problem description in, deterministic text or
//! JSON out.
//!
//! Exit codes: 0 when the command succeeds (identity holds, cone pointed),
//! 1 when an identity is violated or the cone is not pointed, 2 on any input
//! error.

use std::fmt;
use std::str::FromStr;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::cone::certify_pointed;
use crate::enumeration::{generalized_vp, vector_partition};
use crate::error::Error;
use crate::identities::{
    verify_basic_recurrence, verify_cb_1d, verify_cb_multidim, verify_prop1, verify_prop2,
    verify_prop3, verify_theorem1, Prop1Window, VerificationReport,
};
use crate::series::{geometric_inverse, substitute_monomial, weight_series, TruncatedSeries};
use crate::types::{
    render_fraction, LatticeVector, Scalar, StepMatrix, WeightFunction, WeightTable,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Input error with the JSON path (or line/column) it refers to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecError {
    pub at: String,
    pub message: String,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.at, self.message)
    }
}

impl std::error::Error for SpecError {}

fn spec_err(at: impl Into<String>, message: impl Into<String>) -> SpecError {
    SpecError {
        at: at.into(),
        message: message.into(),
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RationalLiteral {
    Int(i64),
    Text(String),
    Decimal(f64),
}

#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum RawWeight {
    ConstantOne,
    Geometric {
        q: Vec<RationalLiteral>,
    },
    MultinomialMonomial {
        c: Vec<RationalLiteral>,
        j: usize,
    },
    LatticePathCount,
    Table {
        shape: Vec<usize>,
        values: Vec<RationalLiteral>,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    matrix: Option<Vec<Vec<i64>>>,
    weight: Option<RawWeight>,
    c: Option<Vec<RationalLiteral>>,
    bound: Option<i64>,
    target: Option<Vec<i64>>,
    nvars: Option<usize>,
    window: Option<String>,
}

/// A validated problem description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSpec {
    pub matrix: Option<StepMatrix>,
    pub weight: Option<WeightFunction>,
    pub c: Option<Vec<Scalar>>,
    pub bound: Option<i64>,
    pub target: Option<LatticeVector>,
    pub nvars: Option<usize>,
    pub window: Prop1Window,
}

/// Parses an exact rational literal: an integer or `p/q`. Decimals are
/// rejected.
pub fn parse_rational(text: &str) -> Result<Scalar, String> {
    let trimmed = text.trim();
    if trimmed.contains('/') {
        let (_, den) = trimmed.split_once('/').expect("contains '/'");
        if den
            .trim()
            .trim_start_matches(['+', '-'])
            .chars()
            .all(|ch| ch == '0')
        {
            return Err(format!("zero denominator in {text:?}"));
        }
    }
    Scalar::from_str(trimmed).map_err(|_| format!("invalid rational literal {text:?}"))
}

fn rationals(at: &str, raw: Vec<RationalLiteral>) -> Result<Vec<Scalar>, SpecError> {
    raw.into_iter()
        .enumerate()
        .map(|(i, lit)| match lit {
            RationalLiteral::Int(n) => Ok(Scalar::from_integer(n.into())),
            RationalLiteral::Text(s) => {
                parse_rational(&s).map_err(|m| spec_err(format!("{at}[{i}]"), m))
            }
            RationalLiteral::Decimal(x) => Err(spec_err(
                format!("{at}[{i}]"),
                format!("decimal {x} is not exact; write it as an integer or \"p/q\""),
            )),
        })
        .collect()
}

impl ProblemSpec {
    pub fn from_json(text: &str) -> Result<Self, SpecError> {
        let raw: RawSpec = serde_json::from_str(text).map_err(|e| {
            let at = format!("line {} column {}", e.line(), e.column());
            let full = e.to_string();
            let message = full
                .strip_suffix(&format!(" at {at}"))
                .unwrap_or(&full)
                .to_string();
            spec_err(at, message)
        })?;

        let matrix = raw
            .matrix
            .map(|rows| StepMatrix::from_rows(&rows).map_err(|e| spec_err("matrix", e.to_string())))
            .transpose()?;

        let weight = raw
            .weight
            .map(|w| -> Result<WeightFunction, SpecError> {
                Ok(match w {
                    RawWeight::ConstantOne => WeightFunction::ConstantOne,
                    RawWeight::LatticePathCount => WeightFunction::LatticePathCount,
                    RawWeight::Geometric { q } => {
                        WeightFunction::GeometricWeights(rationals("weight.q", q)?)
                    }
                    RawWeight::MultinomialMonomial { c, j } => {
                        WeightFunction::multinomial_monomial(rationals("weight.c", c)?, j)
                            .map_err(|e| spec_err("weight.j", e.to_string()))?
                    }
                    RawWeight::Table { shape, values } => {
                        let values = rationals("weight.values", values)?;
                        WeightFunction::Table(
                            WeightTable::new(shape, values)
                                .map_err(|e| spec_err("weight.values", e.to_string()))?,
                        )
                    }
                })
            })
            .transpose()?;

        let c = raw.c.map(|c| rationals("c", c)).transpose()?;

        if let Some(b) = raw.bound {
            if b < 0 {
                return Err(spec_err("bound", "must be nonnegative"));
            }
        }

        let window = match raw.window.as_deref() {
            None | Some("shifted") => Prop1Window::ShiftedCone,
            Some("punctured") => Prop1Window::PuncturedCone,
            Some(other) => {
                return Err(spec_err(
                    "window",
                    format!("expected \"shifted\" or \"punctured\", got {other:?}"),
                ))
            }
        };

        Ok(ProblemSpec {
            matrix,
            weight,
            c,
            bound: raw.bound,
            target: raw.target.map(LatticeVector::new),
            nvars: raw.nvars,
            window,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    Theorem1,
    Recurrence,
    Prop1,
    Prop2,
    Prop3,
    ChaundyBullard,
    ChaundyBullard1d,
}

impl FromStr for Identity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "thm1" => Identity::Theorem1,
            "rec" => Identity::Recurrence,
            "prop1" => Identity::Prop1,
            "prop2" => Identity::Prop2,
            "prop3" => Identity::Prop3,
            "cb" => Identity::ChaundyBullard,
            "cb1d" => Identity::ChaundyBullard1d,
            other => return Err(format!("unknown identity {other:?}")),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Pointed,
    Count,
    Series,
    Paths,
    Verify(Identity),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Pointed => "pointed",
            Command::Count => "count",
            Command::Series => "series",
            Command::Paths => "paths",
            Command::Verify(_) => "verify",
        }
    }
}

/// What a command wants printed, and its exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: impl fmt::Display) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

enum Failure {
    Usage(String),
    Library(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

fn require<'a, T>(field: &'a Option<T>, name: &str, command: Command) -> Result<&'a T, Failure> {
    field.as_ref().ok_or_else(|| {
        Failure::Usage(format!(
            "missing field `{name}` (required by `{}`)",
            command.name()
        ))
    })
}

/// Parses `input` and runs `command` on it.
pub fn run_json(command: Command, input: &str, json_output: bool) -> Outcome {
    match ProblemSpec::from_json(input) {
        Ok(spec) => run(command, &spec, json_output),
        Err(e) => Outcome::usage(e),
    }
}

pub fn run(command: Command, spec: &ProblemSpec, json_output: bool) -> Outcome {
    match execute(command, spec, json_output) {
        Ok(outcome) => outcome,
        Err(Failure::Usage(m)) => Outcome::usage(m),
        Err(Failure::Library(e)) => Outcome::usage(e),
    }
}

fn render_json(value: Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("json renders");
    s.push('\n');
    s
}

fn series_json(s: &TruncatedSeries) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .into_iter()
        .map(|(e, c)| json!({ "exponent": e, "coeff": render_fraction(c) }))
        .collect();
    json!({ "grading": s.grading(), "bound": s.bound(), "terms": terms })
}

fn execute(command: Command, spec: &ProblemSpec, json_output: bool) -> Result<Outcome, Failure> {
    match command {
        Command::Pointed => {
            let a = require(&spec.matrix, "matrix", command)?;
            match certify_pointed(a) {
                Ok(cert) => Ok(Outcome::ok(if json_output {
                    render_json(json!({
                        "pointed": true,
                        "ell": cert.ell(),
                        "step_degrees": cert.step_degrees(),
                    }))
                } else {
                    format!("ell = {}\n", cert.ell())
                })),
                Err(Error::NotPointed { certificate }) => Ok(Outcome {
                    code: EXIT_FAILED,
                    stdout: if json_output {
                        render_json(json!({ "pointed": false, "certificate": certificate }))
                    } else {
                        format!("not pointed: certificate x = {certificate} has A x = 0\n")
                    },
                    stderr: String::new(),
                }),
                Err(e) => Err(e.into()),
            }
        }
        Command::Count => {
            let a = require(&spec.matrix, "matrix", command)?;
            let target = require(&spec.target, "target", command)?;
            let cert = certify_pointed(a)?;
            let value = match &spec.weight {
                Some(phi) => generalized_vp(a, &cert, target, phi)?,
                None => vector_partition(a, &cert, target)?,
            };
            Ok(Outcome::ok(if json_output {
                render_json(json!({ "target": target, "value": value.to_string() }))
            } else {
                format!("{value}\n")
            }))
        }
        Command::Series => {
            let a = require(&spec.matrix, "matrix", command)?;
            let bound = *require(&spec.bound, "bound", command)?;
            let cert = certify_pointed(a)?;
            let phi = spec.weight.clone().unwrap_or(WeightFunction::ConstantOne);
            let xi = weight_series(&phi, a.ncols(), bound)?;
            let z = substitute_monomial(&xi, a, &cert, bound)?;
            Ok(Outcome::ok(if json_output {
                render_json(series_json(&z))
            } else {
                z.render()
            }))
        }
        Command::Paths => {
            let a = require(&spec.matrix, "matrix", command)?;
            let bound = *require(&spec.bound, "bound", command)?;
            let cert = certify_pointed(a)?;
            let g = geometric_inverse(a, &cert, bound)?;
            Ok(Outcome::ok(if json_output {
                render_json(series_json(&g))
            } else {
                g.render()
            }))
        }
        Command::Verify(which) => {
            let report = verify(which, command, spec)?;
            let stdout = if json_output {
                render_json(report.to_json())
            } else {
                report.render()
            };
            Ok(Outcome {
                code: if report.holds { EXIT_OK } else { EXIT_FAILED },
                stdout,
                stderr: String::new(),
            })
        }
    }
}

fn verify(
    which: Identity,
    command: Command,
    spec: &ProblemSpec,
) -> Result<VerificationReport, Failure> {
    let report = match which {
        Identity::Theorem1 => {
            let a = require(&spec.matrix, "matrix", command)?;
            let c = require(&spec.c, "c", command)?;
            let bound = *require(&spec.bound, "bound", command)?;
            let cert = certify_pointed(a)?;
            let phi = spec.weight.clone().unwrap_or(WeightFunction::ConstantOne);
            verify_theorem1(a, &cert, &phi, c, bound)?
        }
        Identity::Recurrence => {
            let phi = require(&spec.weight, "weight", command)?;
            let bound = *require(&spec.bound, "bound", command)?;
            let nvars = spec
                .nvars
                .or_else(|| spec.matrix.as_ref().map(StepMatrix::ncols))
                .or_else(|| phi.arity())
                .ok_or_else(|| {
                    Failure::Usage("cannot infer the number of variables; set `nvars`".into())
                })?;
            verify_basic_recurrence(phi, nvars, bound)?
        }
        Identity::Prop1 => {
            let a = require(&spec.matrix, "matrix", command)?;
            let bound = *require(&spec.bound, "bound", command)?;
            let cert = certify_pointed(a)?;
            let phi = spec
                .weight
                .clone()
                .unwrap_or(WeightFunction::LatticePathCount);
            verify_prop1(a, &cert, &phi, bound, spec.window)?
        }
        Identity::Prop2 => {
            let a = require(&spec.matrix, "matrix", command)?;
            let bound = *require(&spec.bound, "bound", command)?;
            let cert = certify_pointed(a)?;
            verify_prop2(a, &cert, bound)?
        }
        Identity::Prop3 => {
            let a = require(&spec.matrix, "matrix", command)?;
            let c = require(&spec.c, "c", command)?;
            let mu = require(&spec.target, "target", command)?;
            let cert = certify_pointed(a)?;
            verify_prop3(a, &cert, c, mu)?
        }
        Identity::ChaundyBullard => {
            let c = require(&spec.c, "c", command)?;
            let mu = require(&spec.target, "target", command)?;
            verify_cb_multidim(c, mu)?
        }
        Identity::ChaundyBullard1d => {
            let c = require(&spec.c, "c", command)?;
            let mu = require(&spec.target, "target", command)?;
            if c.len() != 2 || mu.dim() != 2 {
                return Err(Failure::Usage(
                    "`cb1d` needs two coefficients and a two-entry target".into(),
                ));
            }
            verify_cb_1d(&c[0], &c[1], mu.coords()[0], mu.coords()[1])?
        }
    };
    Ok(report)
}
