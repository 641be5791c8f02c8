//! Scalar-valued C-differential operators `Σ a_{k,σ} D_σ∘Π^(k)`, their
//! formal adjoints, and the Green-formula decomposition
//!
//! ```text
//! □(χ) = Σ_k h_k χ^k + Σ_i D_i(η_i(χ)),   h = □*(1).
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{JetError, Result};
use crate::expr::{Expr, Q};
use crate::jet::{check_width, GeneratingSection, JetSpace};
use crate::multi_index::MultiIndex;

/// Finite-support operator with interior coefficients keyed by `(k, σ)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CDiffOp {
    terms: BTreeMap<(usize, MultiIndex), Expr>,
}

impl CDiffOp {
    pub fn zero() -> Self {
        CDiffOp::default()
    }

    /// `D_σ∘Π^(k)` with unit coefficient.
    pub fn derivative(k: usize, sigma: MultiIndex) -> Self {
        let mut op = CDiffOp::zero();
        op.add_term(k, sigma, Expr::one());
        op
    }

    /// Add `c · D_σ∘Π^(k)`, merging with an existing term.
    pub fn add_term(&mut self, k: usize, sigma: MultiIndex, c: Expr) {
        if c.is_zero() {
            return;
        }
        let key = (k, sigma);
        let merged = match self.terms.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert(key, merged);
        }
    }

    pub fn coefficient(&self, k: usize, sigma: &MultiIndex) -> Expr {
        self.terms
            .get(&(k, sigma.clone()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &MultiIndex, &Expr)> {
        self.terms.iter().map(|((k, s), c)| (*k, s, c))
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

    /// Highest `|σ|` in the support, `None` for the zero operator.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|(_, s)| s.order()).max()
    }

    pub fn plus(&self, other: &CDiffOp) -> CDiffOp {
        let mut out = self.clone();
        for (k, s, c) in other.terms() {
            out.add_term(k, s.clone(), c.clone());
        }
        out
    }

    /// Left multiplication by a function: `(f·□)(χ) = f·□(χ)`.
    pub fn times(&self, f: &Expr) -> CDiffOp {
        let mut out = CDiffOp::zero();
        for (k, s, c) in self.terms() {
            out.add_term(k, s.clone(), c * f);
        }
        out
    }
}

/// Which axis to integrate by parts along when a coefficient has several
/// non-zero derivative directions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum PeelStrategy {
    /// Largest `i` with `σ_i > 0`; keeps `x_n` content in `η_n`.
    #[default]
    LargestAxis,
    /// Smallest `i` with `σ_i > 0`.
    SmallestAxis,
}

impl PeelStrategy {
    fn axis(self, sigma: &MultiIndex) -> Option<usize> {
        match self {
            PeelStrategy::LargestAxis => sigma.last_nonzero_axis(),
            PeelStrategy::SmallestAxis => sigma.first_nonzero_axis(),
        }
    }

    /// The other strategy.
    pub fn alternate(self) -> Self {
        match self {
            PeelStrategy::LargestAxis => PeelStrategy::SmallestAxis,
            PeelStrategy::SmallestAxis => PeelStrategy::LargestAxis,
        }
    }
}

impl fmt::Display for PeelStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PeelStrategy::LargestAxis => "default",
            PeelStrategy::SmallestAxis => "alternate",
        })
    }
}

impl FromStr for PeelStrategy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "default" => Ok(PeelStrategy::LargestAxis),
            "alternate" => Ok(PeelStrategy::SmallestAxis),
            other => Err(format!(
                "unknown strategy '{other}' (expected default|alternate)"
            )),
        }
    }
}

/// The pair `(□*(1), η)` of the Green formula. `current[i − 1]` is `η_i`;
/// the current stands for the (n−1)-form `Σ_i η_i(χ) ω_i` with `ω_i` the
/// basis form omitting `dx_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreenDecomposition {
    pub adjoint_value: Vec<Expr>,
    pub current: Vec<CDiffOp>,
}

impl GreenDecomposition {
    /// `η_i`, 1-based.
    pub fn eta(&self, i: usize) -> &CDiffOp {
        &self.current[i - 1]
    }
}

fn binomial(sigma: &MultiIndex, rho: &MultiIndex) -> Q {
    let mut out = BigInt::from(1);
    for (&s, &r) in sigma.entries().iter().zip(rho.entries()) {
        let mut c = BigInt::from(1);
        for j in 0..r {
            c = c * BigInt::from(s - j) / BigInt::from(j + 1);
        }
        out *= c;
    }
    Q::from_integer(out)
}

fn parity_sign(order: u32, e: Expr) -> Expr {
    if order % 2 == 1 {
        -e
    } else {
        e
    }
}

impl JetSpace {
    pub fn check_operator(&self, op: &CDiffOp) -> Result<()> {
        for (k, s, c) in op.terms() {
            self.check_component(k)?;
            check_width(s, self.n())?;
            self.check_interior(c)?;
        }
        Ok(())
    }

    /// `□(χ) = Σ a_{k,σ} D_σ(χ^k)`.
    pub fn apply(&self, op: &CDiffOp, chi: &GeneratingSection) -> Result<Expr> {
        if chi.len() != self.m() {
            return Err(JetError::LengthMismatch {
                got: chi.len(),
                expected: self.m(),
            });
        }
        self.check_operator(op)?;
        let mut cache: BTreeMap<(usize, &MultiIndex), Expr> = BTreeMap::new();
        let mut out = Expr::zero();
        for (k, s, c) in op.terms() {
            let d = match cache.get(&(k, s)) {
                Some(d) => d.clone(),
                None => {
                    let d = self.total_derivative_multi(chi.component(k), s)?;
                    cache.insert((k, s), d.clone());
                    d
                }
            };
            out = out + c * d;
        }
        Ok(out)
    }

    /// `□*(1)`: `h_k = Σ_σ (−1)^{|σ|} D_σ(a_{k,σ})`.
    pub fn adjoint_value(&self, op: &CDiffOp) -> Result<Vec<Expr>> {
        self.check_operator(op)?;
        let mut h = vec![Expr::zero(); self.m()];
        for (k, s, c) in op.terms() {
            let d = self.total_derivative_multi(c, s)?;
            h[k - 1] = &h[k - 1] + &parity_sign(s.order(), d);
        }
        Ok(h)
    }

    /// Componentwise formal adjoint `Σ_σ (−1)^{|σ|} D_σ∘a_{k,σ}`, expanded
    /// by Leibniz back into `Σ b_{k,ρ} D_ρ`. For `m = 1` this is the
    /// ordinary formal adjoint of a scalar operator.
    pub fn adjoint(&self, op: &CDiffOp) -> Result<CDiffOp> {
        self.check_operator(op)?;
        let mut out = CDiffOp::zero();
        for (k, s, c) in op.terms() {
            for rho in s.lower_set() {
                let d = self.total_derivative_multi(c, &s.sub(&rho))?;
                let term = parity_sign(s.order(), d).scale(&binomial(s, &rho));
                out.add_term(k, rho, term);
            }
        }
        Ok(out)
    }

    /// Integrate `□` by parts until only zero-order terms remain. Each step
    /// rewrites `a D_σ = D_i∘(a D_{σ−1_i}) − (D_i a) D_{σ−1_i}` and moves the
    /// first term into `η_i`; the axis `i` is chosen by `strategy`.
    pub fn green_decompose(
        &self,
        op: &CDiffOp,
        strategy: PeelStrategy,
    ) -> Result<GreenDecomposition> {
        self.check_operator(op)?;
        let mut rest = op.clone();
        let mut current = vec![CDiffOp::zero(); self.n()];
        loop {
            let next = rest
                .terms
                .iter()
                .filter(|((_, s), _)| s.order() > 0)
                .max_by(|((ka, sa), _), ((kb, sb), _)| {
                    sa.order()
                        .cmp(&sb.order())
                        .then_with(|| (kb, sb).cmp(&(ka, sa)))
                })
                .map(|(key, _)| key.clone());
            let Some(key) = next else { break };
            let a = rest.terms.remove(&key).expect("key present");
            let (k, sigma) = key;
            let i = strategy.axis(&sigma).expect("positive order");
            let lower = sigma.minus_unit(i)?;
            let da = self.total_derivative_unchecked(&a, i)?;
            current[i - 1].add_term(k, lower.clone(), a);
            rest.add_term(k, lower, -da);
        }
        let zero = MultiIndex::zero(self.n());
        let adjoint_value = (1..=self.m()).map(|k| rest.coefficient(k, &zero)).collect();
        Ok(GreenDecomposition {
            adjoint_value,
            current,
        })
    }

    /// Right-hand side of the Green identity for the test section `χ`:
    /// `Σ_k h_k χ^k + Σ_i D_i(η_i(χ))`.
    pub fn green_rhs(&self, green: &GreenDecomposition, chi: &GeneratingSection) -> Result<Expr> {
        let mut out = Expr::zero();
        for (h, c) in green.adjoint_value.iter().zip(chi.components()) {
            out = out + h * c;
        }
        for (idx, eta) in green.current.iter().enumerate() {
            let v = self.apply(eta, chi)?;
            out = out + self.total_derivative(&v, idx + 1)?;
        }
        Ok(out)
    }
}
