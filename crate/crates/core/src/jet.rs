//! Interior jet calculus on `J^∞(π)`: total derivatives, the horizontal
//! differential, universal linearization and evolutionary derivations.

use crate::cdiff::CDiffOp;
use crate::error::{JetError, Result};
use crate::expr::{parse, Atom, Expr, ParseContext, World};
use crate::form::{insert_axis, HorizontalForm};
use crate::multi_index::MultiIndex;

/// Dimensions of the jet bundle: `n` base coordinates `x_1..x_n` (the
/// boundary is `x_n = 0`) and `m` dependent variables `u^1..u^m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JetSpace {
    n: usize,
    m: usize,
}

impl JetSpace {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(JetError::InvalidDimension(format!(
                "n = {n}, m = {m}; both must be at least 1"
            )));
        }
        Ok(JetSpace { n, m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of tangential coordinates on the boundary.
    pub fn boundary_dim(&self) -> usize {
        self.n - 1
    }

    pub fn parse(&self, text: &str) -> Result<Expr> {
        parse(text, ParseContext::interior(self.n, self.m))
    }

    pub fn parse_boundary(&self, text: &str) -> Result<Expr> {
        parse(text, ParseContext::boundary(self.n, self.m))
    }

    pub fn u(&self, k: usize, sigma: &[u32]) -> Expr {
        Expr::jet(k, MultiIndex::new(sigma.iter().copied()))
    }

    /// Validate that `f` is an interior expression of this space.
    pub fn check_interior(&self, f: &Expr) -> Result<()> {
        self.check_atoms(f, World::Interior)
    }

    pub(crate) fn check_atoms(&self, f: &Expr, world: World) -> Result<()> {
        let dim = match world {
            World::Interior => self.n,
            World::Boundary => self.n - 1,
        };
        for a in f.leaf_atoms() {
            match &a {
                Atom::Coord(i) if *i == 0 || *i > dim => {
                    return Err(JetError::CoordOutOfRange { i: *i, dim, world })
                }
                Atom::Jet { k, sigma } => {
                    if world != World::Interior {
                        return Err(JetError::WorldMismatch {
                            expected: world,
                            found: World::Interior,
                        });
                    }
                    self.check_component(*k)?;
                    check_width(sigma, self.n)?;
                }
                Atom::BoundaryJet { k, tau, .. } => {
                    if world != World::Boundary {
                        return Err(JetError::WorldMismatch {
                            expected: world,
                            found: World::Boundary,
                        });
                    }
                    self.check_component(*k)?;
                    check_width(tau, self.n - 1)?;
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub(crate) fn check_component(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.m {
            return Err(JetError::ComponentOutOfRange { k, m: self.m });
        }
        Ok(())
    }

    fn check_axis(&self, i: usize, dim: usize) -> Result<()> {
        if i == 0 || i > dim {
            return Err(JetError::AxisOutOfRange { axis: i, dim });
        }
        Ok(())
    }

    /// `D_i f = ∂f/∂x_i + Σ u^k_{σ+1_i} ∂f/∂u^k_σ`, summed over the jet atoms
    /// that actually occur in `f`.
    pub fn total_derivative(&self, f: &Expr, i: usize) -> Result<Expr> {
        self.check_axis(i, self.n)?;
        self.check_interior(f)?;
        self.total_derivative_unchecked(f, i)
    }

    pub(crate) fn total_derivative_unchecked(&self, f: &Expr, i: usize) -> Result<Expr> {
        f.derive(&mut |a: &Atom| match a {
            Atom::Coord(j) => Ok(if *j == i { Expr::one() } else { Expr::zero() }),
            Atom::Jet { k, sigma } => Ok(Expr::jet(*k, sigma.plus_unit(i)?)),
            _ => Err(JetError::WorldMismatch {
                expected: World::Interior,
                found: World::Boundary,
            }),
        })
    }

    /// `D_σ f`, applied axis by axis.
    pub fn total_derivative_multi(&self, f: &Expr, sigma: &MultiIndex) -> Result<Expr> {
        check_width(sigma, self.n)?;
        self.check_interior(f)?;
        let mut out = f.clone();
        for i in sigma.axes() {
            out = self.total_derivative_unchecked(&out, i)?;
        }
        Ok(out)
    }

    /// The universal linearization `ℓ_f = Σ (∂f/∂u^k_σ) D_σ∘Π^(k)`.
    pub fn linearization(&self, f: &Expr) -> Result<CDiffOp> {
        self.check_interior(f)?;
        let mut op = CDiffOp::zero();
        for a in f.jet_atoms() {
            if let Atom::Jet { k, sigma } = &a {
                op.add_term(*k, sigma.clone(), f.partial(&a)?);
            }
        }
        Ok(op)
    }

    /// `Э_ψ(f) = Σ D_σ(ψ^k) ∂f/∂u^k_σ`.
    pub fn evolutionary(&self, psi: &GeneratingSection, f: &Expr) -> Result<Expr> {
        self.apply(&self.linearization(f)?, psi)
    }

    /// `d̄ω`. The coefficient on `J` is `Σ_{i∈J} (−1)^{pos(i,J)} D_i(ω_{J∖i})`.
    /// A top-degree form maps to the zero form of the same degree. Boundary
    /// forms use the boundary total derivatives.
    pub fn horizontal_differential(&self, omega: &HorizontalForm) -> Result<HorizontalForm> {
        let dim = match omega.world() {
            World::Interior => self.n,
            World::Boundary => self.n - 1,
        };
        if omega.dim() != dim {
            return Err(JetError::InvalidForm(format!(
                "{} form of dimension {} does not belong to a space with n = {}",
                omega.world(),
                omega.dim(),
                self.n
            )));
        }
        if omega.degree() == dim {
            return HorizontalForm::zero(omega.world(), dim, dim);
        }
        let mut out = HorizontalForm::zero(omega.world(), dim, omega.degree() + 1)?;
        for (subset, c) in omega.terms() {
            for i in 1..=dim {
                let Some((j, negative)) = insert_axis(subset, i) else {
                    continue;
                };
                let d = match omega.world() {
                    World::Interior => self.total_derivative(c, i)?,
                    World::Boundary => self.boundary_total_derivative(c, i)?,
                };
                out.add(&j, if negative { -d } else { d })?;
            }
        }
        Ok(out)
    }
}

pub(crate) fn check_width(index: &MultiIndex, expected: usize) -> Result<()> {
    if index.width() != expected {
        return Err(JetError::WrongWidth {
            index: index.clone(),
            got: index.width(),
            expected,
        });
    }
    Ok(())
}

/// A section `(χ^1, …, χ^m)` of `π`, used as generating function of an
/// evolutionary derivation or as test argument of a C-differential operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingSection(Vec<Expr>);

impl GeneratingSection {
    pub fn new(space: &JetSpace, components: Vec<Expr>) -> Result<Self> {
        if components.len() != space.m() {
            return Err(JetError::LengthMismatch {
                got: components.len(),
                expected: space.m(),
            });
        }
        for c in &components {
            space.check_interior(c)?;
        }
        Ok(GeneratingSection(components))
    }

    pub fn components(&self) -> &[Expr] {
        &self.0
    }

    /// `χ^k`, 1-based.
    pub fn component(&self, k: usize) -> &Expr {
        &self.0[k - 1]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space() -> JetSpace {
        JetSpace::new(2, 1).unwrap()
    }

    #[test]
    fn total_derivative_examples() {
        let s = space();
        assert_eq!(s.total_derivative(&Expr::coord(1), 1).unwrap(), Expr::one());
        assert_eq!(
            s.total_derivative(&s.u(1, &[0, 0]), 2).unwrap(),
            s.u(1, &[0, 1])
        );
        // D_1(x1·u_{1,0}) = u_{1,0} + x1·u_{2,0}
        let f = Expr::coord(1) * s.u(1, &[1, 0]);
        assert_eq!(
            s.total_derivative(&f, 1).unwrap(),
            s.u(1, &[1, 0]) + Expr::coord(1) * s.u(1, &[2, 0])
        );
        assert!(matches!(
            s.total_derivative(&f, 3),
            Err(JetError::AxisOutOfRange { axis: 3, dim: 2 })
        ));
        let b = Expr::boundary_jet(1, 0, MultiIndex::zero(1));
        assert!(s.total_derivative(&b, 1).is_err());
    }

    #[test]
    fn multi_total_derivative_examples() {
        let s = space();
        let u = s.u(1, &[0, 0]);
        assert_eq!(
            s.total_derivative_multi(&u, &MultiIndex::zero(2)).unwrap(),
            u
        );
        assert_eq!(
            s.total_derivative_multi(&u, &MultiIndex::new([1, 1]))
                .unwrap(),
            s.u(1, &[1, 1])
        );
        // D_1²(u²) = 2 u_{1,0}² + 2 u u_{2,0}
        assert_eq!(
            s.total_derivative_multi(&u.pow(2), &MultiIndex::new([2, 0]))
                .unwrap(),
            Expr::int(2) * s.u(1, &[1, 0]).pow(2) + Expr::int(2) * u * s.u(1, &[2, 0])
        );
    }

    #[test]
    fn linearization_examples() {
        let s = space();
        let id = s.linearization(&s.u(1, &[0, 0])).unwrap();
        assert_eq!(id.coefficient(1, &MultiIndex::zero(2)), Expr::one());
        assert_eq!(id.len(), 1);
        let f = Expr::rational(1, 2) * s.u(1, &[1, 0]).pow(2);
        let l = s.linearization(&f).unwrap();
        assert_eq!(l.coefficient(1, &MultiIndex::new([1, 0])), s.u(1, &[1, 0]));
        assert_eq!(l.len(), 1);
        assert!(s.linearization(&Expr::coord(1)).unwrap().is_zero());
    }

    #[test]
    fn evolutionary_examples() {
        let s = space();
        let one = GeneratingSection::new(&s, vec![Expr::one()]).unwrap();
        assert_eq!(s.evolutionary(&one, &s.u(1, &[0, 0])).unwrap(), Expr::one());
        let psi = GeneratingSection::new(&s, vec![s.u(1, &[0, 0])]).unwrap();
        assert_eq!(
            s.evolutionary(&psi, &s.u(1, &[1, 0])).unwrap(),
            s.u(1, &[1, 0])
        );
        assert!(s.evolutionary(&psi, &Expr::coord(2)).unwrap().is_zero());
        assert!(matches!(
            GeneratingSection::new(&s, vec![]),
            Err(JetError::LengthMismatch {
                got: 0,
                expected: 1
            })
        ));
    }

    #[test]
    fn horizontal_differential_examples() {
        let s = space();
        let u = s.u(1, &[0, 0]);
        let f = HorizontalForm::function(World::Interior, 2, u.clone()).unwrap();
        let df = s.horizontal_differential(&f).unwrap();
        assert_eq!(df.degree(), 1);
        assert_eq!(df.coefficient(&[1]), s.u(1, &[1, 0]));
        assert_eq!(df.coefficient(&[2]), s.u(1, &[0, 1]));
        assert!(s.horizontal_differential(&df).unwrap().is_zero());

        // d̄(u dx1) = D_2 u dx2∧dx1 = −u_{0,1} dx1∧dx2
        let mut w = HorizontalForm::zero(World::Interior, 2, 1).unwrap();
        w.add(&[1], u).unwrap();
        let dw = s.horizontal_differential(&w).unwrap();
        assert_eq!(dw.coefficient(&[1, 2]), -s.u(1, &[0, 1]));

        let top = s.horizontal_differential(&dw).unwrap();
        assert_eq!(top.degree(), 2);
        assert!(top.is_zero());
    }
}
