use std::fmt;
use std::sync::Arc;

use crate::error::{JetError, Result};
use crate::expr::Expr;
use crate::multi_index::MultiIndex;

/// Which jet space an atom (and hence an expression) lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum World {
    /// `J^∞(π)` over the domain.
    Interior,
    /// The boundary diffiety `{x_n = 0}` in normal jet coordinates.
    Boundary,
}

impl fmt::Display for World {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            World::Interior => f.write_str("interior"),
            World::Boundary => f.write_str("boundary"),
        }
    }
}

/// The whitelisted transcendental functions. Variants are in name order so
/// the derived `Ord` sorts calls by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Func {
    Cos,
    Exp,
    Log,
    Sin,
    Sqrt,
    Tan,
}

impl Func {
    pub const ALL: [Func; 6] = [
        Func::Cos,
        Func::Exp,
        Func::Log,
        Func::Sin,
        Func::Sqrt,
        Func::Tan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sin => "sin",
            Func::Sqrt => "sqrt",
            Func::Tan => "tan",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }

    pub(crate) fn apply_f64(self, x: f64) -> Result<f64> {
        let domain = |ok: bool| {
            if ok {
                Ok(())
            } else {
                Err(JetError::Domain {
                    func: self.name(),
                    value: x,
                })
            }
        };
        Ok(match self {
            Func::Cos => x.cos(),
            Func::Exp => x.exp(),
            Func::Log => {
                domain(x > 0.0)?;
                x.ln()
            }
            Func::Sin => x.sin(),
            Func::Sqrt => {
                domain(x >= 0.0)?;
                x.sqrt()
            }
            Func::Tan => {
                domain(x.cos() != 0.0)?;
                x.tan()
            }
        })
    }

    /// `f'(arg)` from the fixed derivative table.
    pub(crate) fn derivative_at(self, arg: &Expr) -> Expr {
        match self {
            Func::Sin => Expr::call(Func::Cos, arg.clone()),
            Func::Cos => -Expr::call(Func::Sin, arg.clone()),
            Func::Tan => Expr::one() + Expr::call(Func::Tan, arg.clone()).pow(2),
            Func::Exp => Expr::call(Func::Exp, arg.clone()),
            // arg is never the zero polynomial here: log(0) is not folded,
            // but a derivative is only taken when arg has atoms.
            Func::Log => Expr::one()
                .checked_div(arg)
                .expect("log argument with atoms is non-zero"),
            Func::Sqrt => {
                let two_root = Expr::int(2) * Expr::call(Func::Sqrt, arg.clone());
                Expr::one()
                    .checked_div(&two_root)
                    .expect("sqrt argument with atoms is non-zero")
            }
        }
    }
}

/// An indeterminate of the canonical form.
///
/// Variant order gives the atom total order: base coordinates, then interior
/// jet variables by `(k, σ)`, then boundary jet variables by `(k, τ, i)`,
/// then function calls by `(name, argument)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Atom {
    /// Base coordinate `x_i` (1-based). Shared by both worlds: `ι*(x_i) = x_i`.
    Coord(usize),
    /// Interior jet variable `u^k_σ`.
    Jet { k: usize, sigma: MultiIndex },
    /// Boundary normal jet variable `(u^k_i)_τ`.
    BoundaryJet { k: usize, tau: MultiIndex, i: u32 },
    /// Opaque transcendental call keyed by its canonical argument.
    Call { func: Func, arg: Arc<Expr> },
}

impl Atom {
    pub fn jet(k: usize, sigma: MultiIndex) -> Atom {
        Atom::Jet { k, sigma }
    }

    pub fn boundary_jet(k: usize, i: u32, tau: MultiIndex) -> Atom {
        Atom::BoundaryJet { k, tau, i }
    }

    /// World of this atom; `None` for world-neutral atoms (coordinates and
    /// calls whose argument has no jet atoms).
    pub fn world(&self) -> Result<Option<World>> {
        match self {
            Atom::Coord(_) => Ok(None),
            Atom::Jet { .. } => Ok(Some(World::Interior)),
            Atom::BoundaryJet { .. } => Ok(Some(World::Boundary)),
            Atom::Call { arg, .. } => arg.world(),
        }
    }

    pub fn is_jet_variable(&self) -> bool {
        matches!(self, Atom::Jet { .. } | Atom::BoundaryJet { .. })
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Coord(i) => write!(f, "x{i}"),
            Atom::Jet { k, sigma } => write!(f, "u{k}_{sigma}"),
            Atom::BoundaryJet { k, tau, i } => {
                if tau.width() == 0 {
                    write!(f, "ub{k}_{i}")
                } else {
                    write!(f, "ub{k}_{i}_{tau}")
                }
            }
            Atom::Call { func, arg } => write!(f, "{}({})", func.name(), arg),
        }
    }
}
