//! Seeded random generators for expressions, operators, sections and probe
//! points, shared by the `check` command and the property suites.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cdiff::CDiffOp;
use crate::expr::{Assignment, Atom, Expr, Func, RawExpr};
use crate::jet::{GeneratingSection, JetSpace};
use crate::multi_index::MultiIndex;

/// Shape of generated expressions.
#[derive(Clone, Copy, Debug)]
pub struct ExprShape {
    /// Largest `|σ|` of jet atoms.
    pub max_order: u32,
    /// Number of monomials.
    pub terms: usize,
    /// Largest number of factors per monomial.
    pub factors: usize,
    /// Chance that a factor is a transcendental call.
    pub call_chance: f64,
    /// Chance that the whole expression is divided by `1 + a²`.
    pub quotient_chance: f64,
}

impl Default for ExprShape {
    fn default() -> Self {
        ExprShape {
            max_order: 2,
            terms: 3,
            factors: 3,
            call_chance: 0.1,
            quotient_chance: 0.05,
        }
    }
}

impl ExprShape {
    pub fn polynomial(max_order: u32) -> Self {
        ExprShape {
            max_order,
            call_chance: 0.0,
            quotient_chance: 0.0,
            ..ExprShape::default()
        }
    }
}

/// All multi-indices of width `n` with `|σ| ≤ max_order`.
pub fn multi_indices(n: usize, max_order: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if pos == cur.len() {
            out.push(MultiIndex::new(cur.iter().copied()));
            return;
        }
        for v in 0..=left {
            cur[pos] = v;
            rec(pos + 1, left - v, cur, out);
        }
        cur[pos] = 0;
    }
    rec(0, max_order, &mut cur, &mut out);
    out
}

fn random_leaf<R: Rng>(space: &JetSpace, rng: &mut R, max_order: u32) -> Expr {
    if rng.gen_bool(0.25) {
        return Expr::coord(rng.gen_range(1..=space.n()));
    }
    let k = rng.gen_range(1..=space.m());
    let sigmas = multi_indices(space.n(), max_order);
    Expr::jet(k, sigmas.choose(rng).expect("non-empty").clone())
}

fn random_coefficient<R: Rng>(rng: &mut R) -> Expr {
    let mut num = rng.gen_range(1..=4);
    if rng.gen_bool(0.5) {
        num = -num;
    }
    let den = if rng.gen_bool(0.2) { 2 } else { 1 };
    Expr::rational(num, den)
}

fn random_call<R: Rng>(space: &JetSpace, rng: &mut R, max_order: u32) -> Expr {
    let a = random_leaf(space, rng, max_order);
    match rng.gen_range(0..4) {
        0 => Expr::call(Func::Sin, a),
        1 => Expr::call(Func::Exp, Expr::rational(1, 2) * a),
        2 => Expr::call(Func::Sqrt, Expr::one() + a.pow(2)),
        _ => Expr::call(Func::Log, Expr::one() + a.pow(2)),
    }
}

/// A random interior expression of the given shape.
pub fn random_expr<R: Rng>(space: &JetSpace, rng: &mut R, shape: ExprShape) -> Expr {
    let mut out = Expr::zero();
    for _ in 0..shape.terms {
        let mut t = random_coefficient(rng);
        for _ in 0..rng.gen_range(1..=shape.factors.max(1)) {
            let factor = if rng.gen_bool(shape.call_chance) {
                random_call(space, rng, shape.max_order)
            } else {
                random_leaf(space, rng, shape.max_order)
            };
            t = t * factor;
        }
        out = out + t;
    }
    if rng.gen_bool(shape.quotient_chance) {
        let d = Expr::one() + random_leaf(space, rng, shape.max_order).pow(2);
        out = out.checked_div(&d).expect("1 + a² is non-zero");
    }
    out
}

/// A random expression whose jet atoms all have `σ_n = 0`.
pub fn random_tangential_expr<R: Rng>(space: &JetSpace, rng: &mut R, shape: ExprShape) -> Expr {
    random_expr(space, rng, shape)
        .substitute(&mut |a: &Atom| {
            Ok(match a {
                Atom::Jet { k, sigma } => Expr::jet(*k, sigma.split_last().0.with_last(0)),
                a => Expr::atom(a.clone()),
            })
        })
        .expect("substitution of atoms cannot fail")
}

/// A random unnormalized tree (for normalization properties).
pub fn random_raw<R: Rng>(space: &JetSpace, rng: &mut R, depth: u32) -> RawExpr {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..3) {
            0 => RawExpr::int(rng.gen_range(-3..=3)),
            _ => match random_leaf(space, rng, 2).atoms().into_iter().next() {
                Some(a) => RawExpr::Atom(a),
                None => RawExpr::int(1),
            },
        };
    }
    let sub = |rng: &mut R| random_raw(space, rng, depth - 1);
    match rng.gen_range(0..8) {
        0 => RawExpr::Neg(Box::new(sub(rng))),
        1 | 2 => sub(rng) + sub(rng),
        3 => sub(rng) - sub(rng),
        4 | 5 => sub(rng) * sub(rng),
        6 => {
            // 1 + t² never vanishes identically
            let den = RawExpr::int(1) + RawExpr::pow(sub(rng), 2);
            sub(rng) / den
        }
        _ => {
            let f = [Func::Sin, Func::Cos, Func::Exp];
            RawExpr::call(*f.choose(rng).unwrap(), sub(rng))
        }
    }
}

/// A random operator `Σ a_{k,σ} D_σ` with `|σ| ≤ max_order`.
pub fn random_operator<R: Rng>(
    space: &JetSpace,
    rng: &mut R,
    max_order: u32,
    terms: usize,
    coeff_shape: ExprShape,
) -> CDiffOp {
    let sigmas = multi_indices(space.n(), max_order);
    let mut op = CDiffOp::zero();
    for _ in 0..terms {
        let k = rng.gen_range(1..=space.m());
        let sigma = sigmas.choose(rng).unwrap().clone();
        op.add_term(k, sigma, random_expr(space, rng, coeff_shape));
    }
    op
}

/// A random polynomial section; with `symbolic` the components also involve
/// low-order jet atoms, otherwise only base coordinates (degree ≤ 3).
pub fn random_section<R: Rng>(space: &JetSpace, rng: &mut R, symbolic: bool) -> GeneratingSection {
    let comps = (0..space.m())
        .map(|_| {
            let mut c = Expr::zero();
            for _ in 0..rng.gen_range(1..=3) {
                let mut t = random_coefficient(rng);
                for _ in 0..rng.gen_range(0..=3) {
                    let f = if symbolic && rng.gen_bool(0.5) {
                        random_leaf(space, rng, 1)
                    } else {
                        Expr::coord(rng.gen_range(1..=space.n()))
                    };
                    t = t * f;
                }
                c = c + t;
            }
            c
        })
        .collect();
    GeneratingSection::new(space, comps).expect("section has m interior components")
}

/// Uniform values in `[lo, hi)` for each atom.
pub fn random_assignment<R: Rng>(
    atoms: &BTreeSet<Atom>,
    rng: &mut R,
    lo: f64,
    hi: f64,
) -> Assignment {
    atoms
        .iter()
        .map(|a| (a.clone(), rng.gen_range(lo..hi)))
        .collect()
}
