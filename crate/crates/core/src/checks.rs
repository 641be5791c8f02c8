//! The invariant suite run by `jetbound check` for a single Lagrangian.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cdiff::PeelStrategy;
use crate::error::Result;
use crate::expr::{Expr, World};
use crate::form::HorizontalForm;
use crate::jet::JetSpace;
use crate::random::{random_assignment, random_section};
use crate::variational::RelativeEulerResult;

/// Probe values are drawn from this range so that `log` and `sqrt` of
/// typical arguments stay in their domain.
pub const PROBE_RANGE: (f64, f64) = (0.1, 1.0);

/// One line of the check table. `residual` is the relative numeric residual
/// for probe-based checks and `None` for exact symbolic comparisons.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub residual: Option<f64>,
}

impl CheckOutcome {
    fn exact(name: &str, passed: bool) -> Self {
        CheckOutcome {
            name: name.to_string(),
            passed,
            residual: None,
        }
    }
}

/// Settings for [`run_checks`].
#[derive(Clone, Copy, Debug)]
pub struct CheckOptions {
    pub strategy: PeelStrategy,
    pub probes: usize,
    pub seed: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            strategy: PeelStrategy::default(),
            probes: 5,
            seed: 0,
        }
    }
}

/// Run every invariant relevant to `f` against a previously computed
/// `result`, which is compared rather than trusted.
pub fn run_checks(
    space: &JetSpace,
    f: &Expr,
    result: &RelativeEulerResult,
    options: CheckOptions,
) -> Result<Vec<CheckOutcome>> {
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut out = Vec::new();

    let chi = random_section(space, &mut rng, false);
    let atoms = space.first_variation_atoms(f, &chi, options.strategy)?;
    let points: Vec<_> = (0..options.probes)
        .map(|_| random_assignment(&atoms, &mut rng, PROBE_RANGE.0, PROBE_RANGE.1))
        .collect();
    let fv = space.check_first_variation(f, &chi, options.strategy, &points)?;
    out.push(CheckOutcome {
        name: "first_variation".into(),
        passed: fv.passed,
        residual: Some(fv.max_rel_residual),
    });

    out.push(CheckOutcome::exact(
        "euler_agreement",
        space.euler(f)? == result.el,
    ));

    let own = space.relative_euler_with(f, options.strategy)?;
    let other = space.relative_euler_with(f, options.strategy.alternate())?;
    out.push(CheckOutcome::exact(
        "strategy_invariance",
        own == *result && other == *result,
    ));

    let symbolic_chi = random_section(space, &mut rng, true);
    let lin = space.linearization(f)?;
    let green = space.green_decompose(&lin, options.strategy)?;
    out.push(CheckOutcome::exact(
        "green_identity",
        space.apply(&lin, &symbolic_chi)? == space.green_rhs(&green, &symbolic_chi)?,
    ));

    let g = space.pullback(f)?;
    let mut tangent = true;
    for j in 1..space.n() {
        let lhs = space.pullback(&space.total_derivative(f, j)?)?;
        tangent &= lhs == space.boundary_total_derivative(&g, j)?;
    }
    out.push(CheckOutcome::exact("tangency", tangent));

    out.push(CheckOutcome::exact(
        "alpha_homomorphism",
        space.restrict_operator(&lin)? == space.boundary_linearization(&g)?,
    ));

    let mut null = true;
    for i in 1..=space.n() {
        null &= space
            .euler(&space.total_derivative(f, i)?)?
            .iter()
            .all(Expr::is_zero);
    }
    out.push(CheckOutcome::exact("null_lagrangian", null));

    let omega = HorizontalForm::function(World::Interior, space.n(), f.clone())?;
    let dd = space.horizontal_differential(&space.horizontal_differential(&omega)?)?;
    out.push(CheckOutcome::exact(
        "horizontal_differential_squared",
        dd.is_zero(),
    ));

    let ef = space.evolutionary(&symbolic_chi, f)?;
    let mut commute = true;
    for i in 1..=space.n() {
        let lhs = space.evolutionary(&symbolic_chi, &space.total_derivative(f, i)?)?;
        commute &= lhs == space.total_derivative(&ef, i)?;
    }
    out.push(CheckOutcome::exact("evolutionary_commutation", commute));

    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dirichlet() -> (JetSpace, Expr) {
        let s = JetSpace::new(2, 1).unwrap();
        let f = s.parse("1/2*u1_{1,0}^2 + 1/2*u1_{0,1}^2").unwrap();
        (s, f)
    }

    #[test]
    fn dirichlet_passes() {
        let (s, f) = dirichlet();
        let r = s.relative_euler(&f).unwrap();
        let checks = run_checks(&s, &f, &r, CheckOptions::default()).unwrap();
        assert_eq!(checks.len(), 9);
        assert!(checks.iter().all(|c| c.passed), "{checks:?}");
    }

    #[test]
    fn zero_lagrangian_passes() {
        let s = JetSpace::new(2, 1).unwrap();
        let f = Expr::zero();
        let r = s.relative_euler(&f).unwrap();
        let checks = run_checks(&s, &f, &r, CheckOptions::default()).unwrap();
        assert!(checks.iter().all(|c| c.passed));
        assert_eq!(checks[0].residual, Some(0.0));
    }

    #[test]
    fn corrupted_theta_fails() {
        let (s, f) = dirichlet();
        let mut r = s.relative_euler(&f).unwrap();
        r.theta
            .insert((1, 0), s.parse_boundary("2*ub1_1_{0}").unwrap());
        let checks = run_checks(&s, &f, &r, CheckOptions::default()).unwrap();
        let inv = checks
            .iter()
            .find(|c| c.name == "strategy_invariance")
            .unwrap();
        assert!(!inv.passed);
    }
}
