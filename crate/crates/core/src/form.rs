//! Horizontal forms `Σ_J c_J dx_J` with jet-expression coefficients.

use std::collections::BTreeMap;

use crate::error::{JetError, Result};
use crate::expr::{Expr, World};

/// A horizontal `q`-form on the interior (`dim = n`) or on the boundary
/// (`dim = n − 1`). Basis subsets are strictly increasing and 1-based;
/// absent subsets have coefficient zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HorizontalForm {
    world: World,
    dim: usize,
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, Expr>,
}

impl HorizontalForm {
    pub fn zero(world: World, dim: usize, degree: usize) -> Result<Self> {
        if degree > dim {
            return Err(JetError::InvalidForm(format!(
                "degree {degree} exceeds dimension {dim}"
            )));
        }
        Ok(HorizontalForm {
            world,
            dim,
            degree,
            coeffs: BTreeMap::new(),
        })
    }

    /// The 0-form `f`.
    pub fn function(world: World, dim: usize, f: Expr) -> Result<Self> {
        let mut out = HorizontalForm::zero(world, dim, 0)?;
        out.add(&[], f)?;
        Ok(out)
    }

    pub fn world(&self) -> World {
        self.world
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, subset: &[usize]) -> Expr {
        self.coeffs.get(subset).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &Expr)> {
        self.coeffs.iter().map(|(k, v)| (k.as_slice(), v))
    }

    /// Add `c · dx_subset`. The subset must be strictly increasing, of the
    /// form's degree, within `1..=dim`, and `c` must share the form's world.
    pub fn add(&mut self, subset: &[usize], c: Expr) -> Result<()> {
        if subset.len() != self.degree {
            return Err(JetError::InvalidForm(format!(
                "basis subset {subset:?} has size {}, expected {}",
                subset.len(),
                self.degree
            )));
        }
        if subset.windows(2).any(|w| w[0] >= w[1]) || subset.iter().any(|&i| i == 0 || i > self.dim)
        {
            return Err(JetError::InvalidForm(format!(
                "basis subset {subset:?} is not strictly increasing within 1..={}",
                self.dim
            )));
        }
        c.require_world(self.world)?;
        let entry = self.coeffs.entry(subset.to_vec()).or_default();
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.coeffs.remove(subset);
        }
        Ok(())
    }
}

/// `(−1)^p` where `p` is the 0-based position of `i` in the increasing
/// subset `J ∪ {i}`, together with that subset.
pub(crate) fn insert_axis(subset: &[usize], i: usize) -> Option<(Vec<usize>, bool)> {
    match subset.binary_search(&i) {
        Ok(_) => None,
        Err(pos) => {
            let mut j = subset.to_vec();
            j.insert(pos, i);
            Some((j, pos % 2 == 1))
        }
    }
}
