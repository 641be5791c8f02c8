//! Multi-indices in `N_0^w`.

use std::fmt;

use smallvec::SmallVec;

use crate::error::JetError;

/// An element of `N_0^w` with a width fixed at construction.
///
/// Ordering is lexicographic on the entries, which is what the atom order
/// and the canonical printer rely on.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(SmallVec<[u32; 4]>);

impl MultiIndex {
    pub fn zero(width: usize) -> Self {
        MultiIndex(SmallVec::from_elem(0, width))
    }

    pub fn new(entries: impl IntoIterator<Item = u32>) -> Self {
        MultiIndex(entries.into_iter().collect())
    }

    /// The basis element `1_i` (1-based `i`).
    pub fn unit(width: usize, i: usize) -> Result<Self, JetError> {
        MultiIndex::zero(width).plus_unit(i)
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }

    /// `|σ|`, the sum of the entries.
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// Entry `i`, 1-based.
    pub fn get(&self, i: usize) -> u32 {
        self.0[i - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn check_axis(&self, i: usize) -> Result<(), JetError> {
        if i == 0 || i > self.width() {
            return Err(JetError::AxisOutOfRange {
                axis: i,
                dim: self.width(),
            });
        }
        Ok(())
    }

    /// `σ + 1_i`.
    pub fn plus_unit(&self, i: usize) -> Result<Self, JetError> {
        self.check_axis(i)?;
        let mut out = self.clone();
        out.0[i - 1] += 1;
        Ok(out)
    }

    /// `σ − 1_i`; fails if entry `i` is already zero.
    pub fn minus_unit(&self, i: usize) -> Result<Self, JetError> {
        self.check_axis(i)?;
        if self.0[i - 1] == 0 {
            return Err(JetError::NegativeMultiIndex {
                index: self.clone(),
                axis: i,
            });
        }
        let mut out = self.clone();
        out.0[i - 1] -= 1;
        Ok(out)
    }

    /// Split `σ = (τ, σ_n)` into the tangential part and the last entry.
    /// Width must be at least one.
    pub fn split_last(&self) -> (MultiIndex, u32) {
        let (last, rest) = self.0.split_last().expect("multi-index of width zero");
        (MultiIndex(SmallVec::from_slice(rest)), *last)
    }

    /// `(τ, i)`, the inverse of [`MultiIndex::split_last`].
    pub fn with_last(&self, last: u32) -> MultiIndex {
        let mut out = self.clone();
        out.0.push(last);
        out
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &MultiIndex) -> bool {
        self.width() == other.width() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// All `ρ ≤ self`, in lexicographic order.
    pub fn lower_set(&self) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex(SmallVec::new())];
        for &e in &self.0 {
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for prefix in &out {
                for v in 0..=e {
                    let mut p = prefix.clone();
                    p.0.push(v);
                    next.push(p);
                }
            }
            out = next;
        }
        out
    }

    /// Componentwise difference; caller guarantees `other ≤ self`.
    pub fn sub(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Largest axis (1-based) with a non-zero entry.
    pub fn last_nonzero_axis(&self) -> Option<usize> {
        self.0.iter().rposition(|&e| e > 0).map(|p| p + 1)
    }

    /// Smallest axis (1-based) with a non-zero entry.
    pub fn first_nonzero_axis(&self) -> Option<usize> {
        self.0.iter().position(|&e| e > 0).map(|p| p + 1)
    }

    /// Expand `σ` into a sequence of axes, e.g. `(2,1)` ↦ `[1,1,2]`.
    pub fn axes(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(p, &e)| std::iter::repeat_n(p + 1, e as usize))
            .collect()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (p, e) in self.0.iter().enumerate() {
            if p > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}
