//! Problem files and reports shared by the command-line tool and the C
//! bindings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cdiff::{GreenDecomposition, PeelStrategy};
use crate::checks::{run_checks, CheckOptions, CheckOutcome};
use crate::error::JetError;
use crate::expr::Expr;
use crate::jet::JetSpace;
use crate::variational::RelativeEulerResult;

/// Failures caused by the input rather than by a check.
#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
    #[error("invalid problem file: {0}")]
    Json(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Jet(#[from] JetError),
}

fn default_probes() -> usize {
    5
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemOptions {
    #[serde(default)]
    pub strategy: Option<String>,
    #[serde(default = "default_probes")]
    pub probes: usize,
    #[serde(default)]
    pub seed: u64,
}

impl Default for ProblemOptions {
    fn default() -> Self {
        ProblemOptions {
            strategy: None,
            probes: default_probes(),
            seed: 0,
        }
    }
}

/// The JSON problem file. `normal_axis` may be omitted; when present it
/// must equal `n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub n: usize,
    pub m: usize,
    pub lagrangian: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal_axis: Option<usize>,
    #[serde(default)]
    pub options: ProblemOptions,
}

impl ProblemSpec {
    pub fn from_json(text: &str) -> Result<Self, InputError> {
        serde_json::from_str(text).map_err(|e| InputError::Json(e.to_string()))
    }
}

/// A validated problem.
#[derive(Clone, Debug)]
pub struct Problem {
    pub space: JetSpace,
    pub lagrangian: Expr,
    pub options: CheckOptions,
}

impl Problem {
    pub fn from_spec(spec: &ProblemSpec) -> Result<Self, InputError> {
        let space = JetSpace::new(spec.n, spec.m)?;
        if let Some(axis) = spec.normal_axis {
            if axis != spec.n {
                return Err(InputError::Invalid(format!(
                    "normal_axis must equal n = {} (got {axis})",
                    spec.n
                )));
            }
        }
        let strategy = match &spec.options.strategy {
            Some(s) => s.parse().map_err(InputError::Invalid)?,
            None => PeelStrategy::default(),
        };
        let lagrangian = space.parse(&spec.lagrangian)?;
        Ok(Problem {
            space,
            lagrangian,
            options: CheckOptions {
                strategy,
                probes: spec.options.probes,
                seed: spec.options.seed,
            },
        })
    }

    pub fn from_json(text: &str) -> Result<Self, InputError> {
        Problem::from_spec(&ProblemSpec::from_json(text)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    El,
    RelEuler,
    Green,
    Check,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::El => "el",
            Command::RelEuler => "rel-euler",
            Command::Green => "green",
            Command::Check => "check",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThetaEntry {
    pub k: usize,
    pub i: u32,
    pub expr: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorTerm {
    pub k: usize,
    pub sigma: Vec<u32>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurrentEntry {
    pub axis: usize,
    pub terms: Vec<OperatorTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GreenReport {
    pub h: Vec<String>,
    pub current: Vec<CurrentEntry>,
}

impl GreenReport {
    pub fn new(green: &GreenDecomposition) -> Self {
        GreenReport {
            h: green.adjoint_value.iter().map(Expr::to_string).collect(),
            current: green
                .current
                .iter()
                .enumerate()
                .map(|(idx, eta)| CurrentEntry {
                    axis: idx + 1,
                    terms: eta
                        .terms()
                        .map(|(k, s, c)| OperatorTerm {
                            k,
                            sigma: s.entries().to_vec(),
                            coeff: c.to_string(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

/// Machine-readable result of a command; expressions are canonical strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub el: Vec<String>,
    pub theta: Vec<ThetaEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub green: Option<GreenReport>,
    pub checks: Vec<CheckOutcome>,
}

impl Report {
    fn from_result(r: &RelativeEulerResult) -> Self {
        Report {
            el: r.el.iter().map(Expr::to_string).collect(),
            theta: r
                .theta
                .iter()
                .map(|(&(k, i), e)| ThetaEntry {
                    k,
                    i,
                    expr: e.to_string(),
                })
                .collect(),
            green: None,
            checks: Vec::new(),
        }
    }

    /// All checks passed (vacuously true for commands without checks).
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self, command: Command, space: &JetSpace) -> String {
        let mut out = String::new();
        if command == Command::Green {
            if let Some(g) = &self.green {
                out.push_str("adjoint value h:\n");
                for (k, h) in g.h.iter().enumerate() {
                    let _ = writeln!(out, "  h{} = {}", k + 1, h);
                }
                for c in &g.current {
                    let _ = writeln!(out, "current eta_{}:", c.axis);
                    if c.terms.is_empty() {
                        out.push_str("  0\n");
                    }
                    for t in &c.terms {
                        let sigma: Vec<String> = t.sigma.iter().map(u32::to_string).collect();
                        let _ = writeln!(
                            out,
                            "  k={} sigma={{{}}}: {}",
                            t.k,
                            sigma.join(","),
                            t.coeff
                        );
                    }
                }
            }
            return out;
        }
        out.push_str("Euler-Lagrange equations:\n");
        for (k, e) in self.el.iter().enumerate() {
            let _ = write!(out, "  E{}: {} = 0", k + 1, e);
            if e != "0" && !e.contains(|c: char| c.is_ascii_alphabetic()) {
                out.push_str("  (inconsistent: no extremals)");
            }
            out.push('\n');
        }
        if command == Command::El {
            return out;
        }
        let _ = writeln!(
            out,
            "natural boundary conditions on x_n = 0 (x{} = 0):",
            space.n()
        );
        if self.theta.is_empty() {
            out.push_str("  none\n");
        }
        for t in &self.theta {
            let _ = writeln!(out, "  (k={}, i={}): {} = 0", t.k, t.i, t.expr);
        }
        if command == Command::Check {
            out.push_str("checks:\n");
            for c in &self.checks {
                let _ = write!(
                    out,
                    "  {} {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name
                );
                if let Some(r) = c.residual {
                    let _ = write!(out, " residual={r:e}");
                }
                out.push('\n');
            }
        }
        out
    }
}

/// Run one derivation command on a validated problem.
pub fn run(command: Command, problem: &Problem) -> Result<Report, InputError> {
    let space = &problem.space;
    let f = &problem.lagrangian;
    let strategy = problem.options.strategy;
    Ok(match command {
        Command::El => Report {
            el: space.euler(f)?.iter().map(Expr::to_string).collect(),
            theta: Vec::new(),
            green: None,
            checks: Vec::new(),
        },
        Command::RelEuler => Report::from_result(&space.relative_euler_with(f, strategy)?),
        Command::Green => {
            let green = space.green_decompose(&space.linearization(f)?, strategy)?;
            Report {
                el: green.adjoint_value.iter().map(Expr::to_string).collect(),
                theta: Vec::new(),
                green: Some(GreenReport::new(&green)),
                checks: Vec::new(),
            }
        }
        Command::Check => {
            let result = space.relative_euler_with(f, strategy)?;
            let mut report = Report::from_result(&result);
            report.checks = run_checks(space, f, &result, problem.options)?;
            report
        }
    })
}

/// Result of `pullback <expr>`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PullbackReport {
    pub input: String,
    pub pullback: String,
}

pub fn run_pullback(space: &JetSpace, text: &str) -> Result<PullbackReport, InputError> {
    let f = space.parse(text)?;
    Ok(PullbackReport {
        input: f.to_string(),
        pullback: space.pullback(&f)?.to_string(),
    })
}
