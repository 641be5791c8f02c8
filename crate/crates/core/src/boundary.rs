//! The boundary `∂B = {x_n = 0}` in normal jet coordinates `(u^k_i)_τ`:
//! the pullback `ι*`, boundary total derivatives and linearization, the
//! restriction `α` of C-differential operators, and relative forms.

use std::collections::BTreeMap;

use crate::cdiff::CDiffOp;
use crate::error::{JetError, Result};
use crate::expr::{Atom, Expr, World};
use crate::form::HorizontalForm;
use crate::jet::{check_width, JetSpace};
use crate::multi_index::MultiIndex;

/// Key `(k, i, τ)` of a boundary operator term `D_τ∘Π^(k,i)`.
pub type BoundaryKey = (usize, u32, MultiIndex);

/// C_∂B-differential operator `Σ b_{k,i,τ} D_τ∘Π^(k,i)` with boundary
/// coefficients and finite support.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoundaryCDiffOp {
    terms: BTreeMap<BoundaryKey, Expr>,
}

impl BoundaryCDiffOp {
    pub fn zero() -> Self {
        BoundaryCDiffOp::default()
    }

    pub fn add_term(&mut self, k: usize, i: u32, tau: MultiIndex, c: Expr) {
        if c.is_zero() {
            return;
        }
        let key = (k, i, tau);
        let merged = match self.terms.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert(key, merged);
        }
    }

    pub fn coefficient(&self, k: usize, i: u32, tau: &MultiIndex) -> Expr {
        self.terms
            .get(&(k, i, tau.clone()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, u32, &MultiIndex, &Expr)> {
        self.terms.iter().map(|((k, i, t), c)| (*k, *i, t, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Generating function `ψ = (…, ψ^k_i, …)` of a boundary evolutionary
/// derivation. Missing components are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoundaryGeneratingSection {
    components: BTreeMap<(usize, u32), Expr>,
}

impl BoundaryGeneratingSection {
    pub fn new() -> Self {
        BoundaryGeneratingSection::default()
    }

    pub fn with(mut self, k: usize, i: u32, c: Expr) -> Self {
        self.set(k, i, c);
        self
    }

    pub fn set(&mut self, k: usize, i: u32, c: Expr) {
        if c.is_zero() {
            self.components.remove(&(k, i));
        } else {
            self.components.insert((k, i), c);
        }
    }

    pub fn component(&self, k: usize, i: u32) -> Expr {
        self.components.get(&(k, i)).cloned().unwrap_or_default()
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, u32, &Expr)> {
        self.components.iter().map(|((k, i), c)| (*k, *i, c))
    }
}

impl JetSpace {
    pub fn check_boundary(&self, g: &Expr) -> Result<()> {
        self.check_atoms(g, World::Boundary)
    }

    /// `ι*`: `x_i ↦ x_i` (i < n), `x_n ↦ 0`, `u^k_σ ↦ (u^k_{σ_n})_{σ − σ_n 1_n}`.
    /// Fails only when a denominator vanishes identically on the boundary.
    pub fn pullback(&self, f: &Expr) -> Result<Expr> {
        self.check_interior(f)?;
        let n = self.n();
        f.substitute(&mut |a: &Atom| match a {
            Atom::Coord(i) if *i == n => Ok(Expr::zero()),
            Atom::Coord(i) => Ok(Expr::coord(*i)),
            Atom::Jet { k, sigma } => {
                let (tau, i) = sigma.split_last();
                Ok(Expr::boundary_jet(*k, i, tau))
            }
            _ => Err(JetError::WorldMismatch {
                expected: World::Interior,
                found: World::Boundary,
            }),
        })
    }

    /// Right inverse of [`JetSpace::pullback`] on boundary atoms:
    /// `(u^k_i)_τ ↦ u^k_{(τ, i)}`, `x_j ↦ x_j`.
    pub fn lift(&self, g: &Expr) -> Result<Expr> {
        self.check_boundary(g)?;
        g.substitute(&mut |a: &Atom| match a {
            Atom::Coord(j) => Ok(Expr::coord(*j)),
            Atom::BoundaryJet { k, tau, i } => Ok(Expr::jet(*k, tau.with_last(*i))),
            _ => Err(JetError::WorldMismatch {
                expected: World::Boundary,
                found: World::Interior,
            }),
        })
    }

    /// `ι*` on horizontal forms: basis subsets containing `n` are dropped and
    /// the remaining coefficients pulled back. A degree-`n` form maps to the
    /// zero form of degree `n − 1`.
    pub fn pullback_form(&self, omega: &HorizontalForm) -> Result<HorizontalForm> {
        if omega.world() != World::Interior || omega.dim() != self.n() {
            return Err(JetError::InvalidForm(format!(
                "pullback expects an interior form of dimension {}",
                self.n()
            )));
        }
        let dim = self.boundary_dim();
        if omega.degree() > dim {
            return HorizontalForm::zero(World::Boundary, dim, dim);
        }
        let mut out = HorizontalForm::zero(World::Boundary, dim, omega.degree())?;
        for (subset, c) in omega.terms() {
            if subset.contains(&self.n()) {
                continue;
            }
            out.add(subset, self.pullback(c)?)?;
        }
        Ok(out)
    }

    /// `D_j` on the boundary, `j < n`:
    /// `∂g/∂x_j + Σ (u^k_i)_{τ+1_j} ∂g/∂(u^k_i)_τ`.
    pub fn boundary_total_derivative(&self, g: &Expr, j: usize) -> Result<Expr> {
        let dim = self.boundary_dim();
        if j == 0 || j > dim {
            return Err(JetError::AxisOutOfRange { axis: j, dim });
        }
        self.check_boundary(g)?;
        self.boundary_total_derivative_unchecked(g, j)
    }

    fn boundary_total_derivative_unchecked(&self, g: &Expr, j: usize) -> Result<Expr> {
        g.derive(&mut |a: &Atom| match a {
            Atom::Coord(c) => Ok(if *c == j { Expr::one() } else { Expr::zero() }),
            Atom::BoundaryJet { k, tau, i } => Ok(Expr::boundary_jet(*k, *i, tau.plus_unit(j)?)),
            _ => Err(JetError::WorldMismatch {
                expected: World::Boundary,
                found: World::Interior,
            }),
        })
    }

    /// `D_τ g` on the boundary.
    pub fn boundary_total_derivative_multi(&self, g: &Expr, tau: &MultiIndex) -> Result<Expr> {
        check_width(tau, self.boundary_dim())?;
        self.check_boundary(g)?;
        let mut out = g.clone();
        for j in tau.axes() {
            out = self.boundary_total_derivative_unchecked(&out, j)?;
        }
        Ok(out)
    }

    pub fn check_boundary_operator(&self, op: &BoundaryCDiffOp) -> Result<()> {
        for (k, _, tau, c) in op.terms() {
            self.check_component(k)?;
            check_width(tau, self.boundary_dim())?;
            self.check_boundary(c)?;
        }
        Ok(())
    }

    /// `Σ b_{k,i,τ} D_τ(ψ^k_i)`.
    pub fn boundary_apply(
        &self,
        op: &BoundaryCDiffOp,
        psi: &BoundaryGeneratingSection,
    ) -> Result<Expr> {
        self.check_boundary_operator(op)?;
        let mut out = Expr::zero();
        for (k, i, tau, c) in op.terms() {
            let comp = psi.component(k, i);
            if comp.is_zero() {
                continue;
            }
            out = out + c * self.boundary_total_derivative_multi(&comp, tau)?;
        }
        Ok(out)
    }

    /// `ℓ^∂B_g = Σ ∂g/∂(u^k_i)_τ D_τ∘Π^(k,i)`.
    pub fn boundary_linearization(&self, g: &Expr) -> Result<BoundaryCDiffOp> {
        self.check_boundary(g)?;
        let mut op = BoundaryCDiffOp::zero();
        for a in g.jet_atoms() {
            if let Atom::BoundaryJet { k, tau, i } = &a {
                op.add_term(*k, *i, tau.clone(), g.partial(&a)?);
            }
        }
        Ok(op)
    }

    /// `Э^∂B_ψ(g) = Σ D_τ(ψ^k_i) ∂g/∂(u^k_i)_τ`.
    pub fn boundary_evolutionary(&self, psi: &BoundaryGeneratingSection, g: &Expr) -> Result<Expr> {
        self.boundary_apply(&self.boundary_linearization(g)?, psi)
    }

    /// The restriction `α`: `a_{k,σ} D_σ ↦ ι*(a_{k,σ}) D_τ∘Π^(k,σ_n)` with
    /// `τ = (σ_1, …, σ_{n−1})`.
    pub fn restrict_operator(&self, op: &CDiffOp) -> Result<BoundaryCDiffOp> {
        self.check_operator(op)?;
        let mut out = BoundaryCDiffOp::zero();
        for (k, sigma, c) in op.terms() {
            let (tau, i) = sigma.split_last();
            out.add_term(k, i, tau, self.pullback(c)?);
        }
        Ok(out)
    }

    /// Preimage of a boundary operator under [`JetSpace::restrict_operator`]:
    /// `D_τ∘Π^(k,i) ↦ D_{(τ,i)}∘Π^(k)` with lifted coefficients.
    pub fn lift_operator(&self, op: &BoundaryCDiffOp) -> Result<CDiffOp> {
        self.check_boundary_operator(op)?;
        let mut out = CDiffOp::zero();
        for (k, i, tau, c) in op.terms() {
            out.add_term(k, tau.with_last(i), self.lift(c)?);
        }
        Ok(out)
    }

    /// Value at `(k, i)` is `Σ_τ (−1)^{|τ|} D_τ(b_{k,i,τ})`; zero values
    /// are omitted.
    pub fn boundary_adjoint_value(
        &self,
        op: &BoundaryCDiffOp,
    ) -> Result<BTreeMap<(usize, u32), Expr>> {
        self.check_boundary_operator(op)?;
        let mut out: BTreeMap<(usize, u32), Expr> = BTreeMap::new();
        for (k, i, tau, c) in op.terms() {
            let d = self.boundary_total_derivative_multi(c, tau)?;
            let d = if tau.order() % 2 == 1 { -d } else { d };
            let entry = out.entry((k, i)).or_default();
            *entry = &*entry + &d;
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    /// Membership in the relative forms `Λ̄(B, ∂B)`, decided as
    /// `ι*(ω) = 0`. For `φ = x_n` this is the ideal `φΛ̄ + d̄φ∧Λ̄`.
    pub fn is_relative(&self, omega: &HorizontalForm) -> Result<bool> {
        Ok(self.pullback_form(omega)?.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(s: &[u32]) -> MultiIndex {
        MultiIndex::new(s.iter().copied())
    }

    fn s2() -> JetSpace {
        JetSpace::new(2, 1).unwrap()
    }

    fn ub(i: u32, tau: &[u32]) -> Expr {
        Expr::boundary_jet(1, i, idx(tau))
    }

    #[test]
    fn pullback_table() {
        let s = s2();
        assert!(s.pullback(&Expr::coord(2)).unwrap().is_zero());
        assert_eq!(s.pullback(&s.u(1, &[2, 3])).unwrap(), ub(3, &[2]));
        assert_eq!(
            s.pullback(&(Expr::coord(1) + s.u(1, &[0, 0]))).unwrap(),
            Expr::coord(1) + ub(0, &[0])
        );
        let pole = Expr::one().checked_div(&Expr::coord(2)).unwrap();
        assert_eq!(s.pullback(&pole), Err(JetError::DivisionByZero));
    }

    #[test]
    fn pullback_form_examples() {
        let s = s2();
        let mut w = HorizontalForm::zero(World::Interior, 2, 1).unwrap();
        w.add(&[2], s.u(1, &[1, 1])).unwrap();
        assert!(s.pullback_form(&w).unwrap().is_zero());

        let mut w = HorizontalForm::zero(World::Interior, 2, 1).unwrap();
        w.add(&[1], s.u(1, &[1, 0])).unwrap();
        let p = s.pullback_form(&w).unwrap();
        assert_eq!(p.coefficient(&[1]), ub(0, &[1]));

        let mut vol = HorizontalForm::zero(World::Interior, 2, 2).unwrap();
        vol.add(&[1, 2], Expr::one()).unwrap();
        let p = s.pullback_form(&vol).unwrap();
        assert!(p.is_zero());
        assert_eq!(p.degree(), 1);
    }

    #[test]
    fn boundary_total_derivative_examples() {
        let s = s2();
        assert_eq!(
            s.boundary_total_derivative(&Expr::coord(1), 1).unwrap(),
            Expr::one()
        );
        assert_eq!(
            s.boundary_total_derivative(&ub(0, &[0]), 1).unwrap(),
            ub(0, &[1])
        );
        assert_eq!(
            s.boundary_total_derivative(&ub(1, &[0]).pow(2), 1).unwrap(),
            Expr::int(2) * ub(1, &[0]) * ub(1, &[1])
        );
        assert!(s.boundary_total_derivative(&ub(0, &[0]), 2).is_err());
        let s1 = JetSpace::new(1, 1).unwrap();
        assert!(s1.boundary_total_derivative(&Expr::one(), 1).is_err());
    }

    #[test]
    fn boundary_linearization_examples() {
        let s = s2();
        let id = s.boundary_linearization(&ub(0, &[0])).unwrap();
        assert_eq!(id.coefficient(1, 0, &idx(&[0])), Expr::one());
        assert_eq!(id.len(), 1);

        let g = ub(1, &[0]) * ub(0, &[1]);
        let l = s.boundary_linearization(&g).unwrap();
        assert_eq!(l.coefficient(1, 1, &idx(&[0])), ub(0, &[1]));
        assert_eq!(l.coefficient(1, 0, &idx(&[1])), ub(1, &[0]));
        assert_eq!(l.len(), 2);

        assert!(s.boundary_linearization(&Expr::coord(1)).unwrap().is_zero());
    }

    #[test]
    fn boundary_evolutionary_examples() {
        let s = s2();
        let one = BoundaryGeneratingSection::new().with(1, 0, Expr::one());
        assert_eq!(
            s.boundary_evolutionary(&one, &ub(0, &[0])).unwrap(),
            Expr::one()
        );
        let psi = BoundaryGeneratingSection::new().with(1, 0, ub(0, &[0]));
        assert_eq!(
            s.boundary_evolutionary(&psi, &ub(0, &[1])).unwrap(),
            ub(0, &[1])
        );
        assert!(s
            .boundary_evolutionary(&psi, &Expr::coord(1))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn restrict_operator_examples() {
        let s = s2();
        let op = CDiffOp::derivative(1, idx(&[0, 2]));
        let r = s.restrict_operator(&op).unwrap();
        assert_eq!(r.coefficient(1, 2, &idx(&[0])), Expr::one());
        assert_eq!(r.len(), 1);

        let f = s.u(1, &[0, 1]).pow(2);
        assert_eq!(
            s.restrict_operator(&s.linearization(&f).unwrap()).unwrap(),
            s.boundary_linearization(&s.pullback(&f).unwrap()).unwrap()
        );
        assert!(s.restrict_operator(&CDiffOp::zero()).unwrap().is_zero());
    }

    #[test]
    fn boundary_adjoint_value_examples() {
        let s = s2();
        let g = ub(0, &[2]) * Expr::coord(1);
        let mut op = BoundaryCDiffOp::zero();
        op.add_term(1, 0, idx(&[0]), g.clone());
        let v = s.boundary_adjoint_value(&op).unwrap();
        assert_eq!(v.get(&(1, 0)), Some(&g));

        let mut op = BoundaryCDiffOp::zero();
        op.add_term(1, 1, idx(&[1]), Expr::coord(1));
        let v = s.boundary_adjoint_value(&op).unwrap();
        assert_eq!(v.get(&(1, 1)), Some(&Expr::int(-1)));

        assert!(s
            .boundary_adjoint_value(&BoundaryCDiffOp::zero())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn relative_form_examples() {
        let s = s2();
        let mut w = HorizontalForm::zero(World::Interior, 2, 1).unwrap();
        w.add(&[1], Expr::coord(2) * s.u(1, &[0, 0])).unwrap();
        assert!(s.is_relative(&w).unwrap());

        let mut w = HorizontalForm::zero(World::Interior, 2, 1).unwrap();
        w.add(&[2], s.u(1, &[3, 1]) + Expr::coord(1)).unwrap();
        assert!(s.is_relative(&w).unwrap());

        let mut w = HorizontalForm::zero(World::Interior, 2, 1).unwrap();
        w.add(&[1], s.u(1, &[0, 0])).unwrap();
        assert!(!s.is_relative(&w).unwrap());

        // not a polynomial multiple of x_n, still in ker ι*
        let mut w = HorizontalForm::zero(World::Interior, 2, 1).unwrap();
        w.add(&[1], Expr::call(crate::expr::Func::Sin, Expr::coord(2)))
            .unwrap();
        assert!(s.is_relative(&w).unwrap());
    }

    #[test]
    fn lift_is_a_section_of_pullback() {
        let s = JetSpace::new(3, 2).unwrap();
        let g = Expr::boundary_jet(2, 3, idx(&[1, 0])) * Expr::coord(2)
            + Expr::boundary_jet(1, 0, idx(&[0, 0]));
        assert_eq!(s.pullback(&s.lift(&g).unwrap()).unwrap(), g);
    }
}
