//! The Euler operator and the relative Euler operator.
//!
//! For a Lagrangian density `f` (the n-form `f dx_1∧…∧dx_n`) the relative
//! Euler operator returns the pair `(ℓ_f*(1), θ′)`: the Euler–Lagrange
//! expressions and the transversality conditions on `x_n = 0`. The boundary
//! part is obtained from the Green decomposition of `ℓ_f`: the normal
//! component `η_n` of the current is restricted to the boundary and reduced
//! modulo tangential divergences.

use std::collections::{BTreeMap, BTreeSet};

use crate::cdiff::{GreenDecomposition, PeelStrategy};
use crate::error::{JetError, Result};
use crate::expr::{Assignment, Atom, Expr};
use crate::jet::{GeneratingSection, JetSpace};

/// `el[k − 1]` is the k-th Euler–Lagrange expression; `theta[(k, i)]` is the
/// transversality coefficient paired with the `i`-th normal derivative of
/// the variation of `u^k`. Zero entries of `theta` are omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeEulerResult {
    pub el: Vec<Expr>,
    pub theta: BTreeMap<(usize, u32), Expr>,
}

impl RelativeEulerResult {
    /// The extremality condition `E_rel(L) = 0` holds identically.
    pub fn is_trivial(&self) -> bool {
        self.el.iter().all(Expr::is_zero) && self.theta.is_empty()
    }
}

/// Outcome of [`JetSpace::check_first_variation`].
#[derive(Clone, Debug, PartialEq)]
pub struct FirstVariationReport {
    /// Largest `|Э_χ(f) − Σ el_k χ^k − Σ D_i(η_i(χ))|` over the points.
    pub max_abs_residual: f64,
    /// Largest residual divided by `max(1, |Э_χ(f)|, Σ |terms|)`.
    pub max_rel_residual: f64,
    pub points: usize,
    pub passed: bool,
}

struct FirstVariationTerms {
    lhs: Expr,
    pieces: Vec<(Expr, Expr)>,
    divergences: Vec<Expr>,
}

/// Relative tolerance for the numeric first-variation witness.
pub const FIRST_VARIATION_TOLERANCE: f64 = 1e-9;

impl JetSpace {
    /// `E(f) = ℓ_f*(1)`.
    pub fn euler(&self, f: &Expr) -> Result<Vec<Expr>> {
        self.adjoint_value(&self.linearization(f)?)
    }

    /// `E_rel(f) = (ℓ_f*(1), θ′)` using the default peel strategy.
    pub fn relative_euler(&self, f: &Expr) -> Result<RelativeEulerResult> {
        self.relative_euler_with(f, PeelStrategy::default())
    }

    pub fn relative_euler_with(
        &self,
        f: &Expr,
        strategy: PeelStrategy,
    ) -> Result<RelativeEulerResult> {
        let green = self.green_decompose(&self.linearization(f)?, strategy)?;
        self.relative_euler_from_green(&green)
    }

    /// Split a Green decomposition into `(h, θ′)` with
    /// `θ′ = boundary_adjoint_value(α(η_n))`.
    pub fn relative_euler_from_green(
        &self,
        green: &GreenDecomposition,
    ) -> Result<RelativeEulerResult> {
        let beta = self.restrict_operator(green.eta(self.n()))?;
        let theta = self.boundary_adjoint_value(&beta)?;
        Ok(RelativeEulerResult {
            el: green.adjoint_value.clone(),
            theta,
        })
    }

    fn first_variation_terms(
        &self,
        f: &Expr,
        chi: &GeneratingSection,
        strategy: PeelStrategy,
    ) -> Result<FirstVariationTerms> {
        let green = self.green_decompose(&self.linearization(f)?, strategy)?;
        let lhs = self.evolutionary(chi, f)?;
        let pieces = green
            .adjoint_value
            .iter()
            .cloned()
            .zip(chi.components().iter().cloned())
            .collect();
        let mut divergences = Vec::with_capacity(self.n());
        for (idx, eta) in green.current.iter().enumerate() {
            divergences.push(self.total_derivative(&self.apply(eta, chi)?, idx + 1)?);
        }
        Ok(FirstVariationTerms {
            lhs,
            pieces,
            divergences,
        })
    }

    /// Every atom an assignment must cover for
    /// [`JetSpace::check_first_variation`].
    pub fn first_variation_atoms(
        &self,
        f: &Expr,
        chi: &GeneratingSection,
        strategy: PeelStrategy,
    ) -> Result<BTreeSet<Atom>> {
        let t = self.first_variation_terms(f, chi, strategy)?;
        let mut out = t.lhs.leaf_atoms();
        for (h, c) in &t.pieces {
            out.extend(h.leaf_atoms());
            out.extend(c.leaf_atoms());
        }
        for d in &t.divergences {
            out.extend(d.leaf_atoms());
        }
        Ok(out)
    }

    /// Numerically witness `Э_χ(f) = Σ_k el_k χ^k + Σ_i D_i(η_i(χ))` at each
    /// assignment. Each side is evaluated from its own pieces.
    pub fn check_first_variation(
        &self,
        f: &Expr,
        chi: &GeneratingSection,
        strategy: PeelStrategy,
        points: &[Assignment],
    ) -> Result<FirstVariationReport> {
        let FirstVariationTerms {
            lhs,
            pieces,
            divergences,
        } = self.first_variation_terms(f, chi, strategy)?;

        let mut max_abs: f64 = 0.0;
        let mut max_rel: f64 = 0.0;
        for (index, point) in points.iter().enumerate() {
            let at = |e: &Expr| {
                e.eval(point).map_err(|source| JetError::AtPoint {
                    index,
                    source: Box::new(source),
                })
            };
            let l = at(&lhs)?;
            let mut rhs = 0.0;
            let mut scale = l.abs().max(1.0);
            for (h, c) in &pieces {
                let t = at(h)? * at(c)?;
                rhs += t;
                scale += t.abs();
            }
            for d in &divergences {
                let t = at(d)?;
                rhs += t;
                scale += t.abs();
            }
            let r = (l - rhs).abs();
            max_abs = max_abs.max(r);
            max_rel = max_rel.max(r / scale);
        }
        let passed = max_rel <= FIRST_VARIATION_TOLERANCE && max_abs.is_finite();
        Ok(FirstVariationReport {
            max_abs_residual: max_abs,
            max_rel_residual: max_rel,
            points: points.len(),
            passed,
        })
    }
}
