//! Unnormalized expression trees, as produced by the parser or by test
//! generators, and their reduction to canonical [`Expr`]s.

use std::ops::{Add, Div, Mul, Sub};

use super::{Atom, Expr, Func, Q};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq)]
pub enum RawExpr {
    Num(Q),
    Atom(Atom),
    Call(Func, Box<RawExpr>),
    Neg(Box<RawExpr>),
    Add(Box<RawExpr>, Box<RawExpr>),
    Sub(Box<RawExpr>, Box<RawExpr>),
    Mul(Box<RawExpr>, Box<RawExpr>),
    Div(Box<RawExpr>, Box<RawExpr>),
    Pow(Box<RawExpr>, u32),
}

macro_rules! raw_binop {
    ($tr:ident, $method:ident, $variant:ident) => {
        impl $tr for RawExpr {
            type Output = RawExpr;
            fn $method(self, rhs: RawExpr) -> RawExpr {
                RawExpr::$variant(Box::new(self), Box::new(rhs))
            }
        }
    };
}

raw_binop!(Add, add, Add);
raw_binop!(Sub, sub, Sub);
raw_binop!(Mul, mul, Mul);
raw_binop!(Div, div, Div);

impl RawExpr {
    pub fn int(v: i64) -> RawExpr {
        RawExpr::Num(Q::from_integer(v.into()))
    }

    pub fn pow(a: RawExpr, e: u32) -> RawExpr {
        RawExpr::Pow(Box::new(a), e)
    }

    pub fn call(f: Func, a: RawExpr) -> RawExpr {
        RawExpr::Call(f, Box::new(a))
    }

    /// Reduce to canonical form. Fails on division by the zero polynomial
    /// or when interior and boundary atoms are mixed.
    pub fn normalize(&self) -> Result<Expr> {
        let e = self.reduce()?;
        e.world()?;
        Ok(e)
    }

    fn reduce(&self) -> Result<Expr> {
        Ok(match self {
            RawExpr::Num(c) => Expr::constant(c.clone()),
            RawExpr::Atom(a) => Expr::atom(a.clone()),
            RawExpr::Call(f, a) => {
                let arg = a.reduce()?;
                arg.world()?;
                Expr::call(*f, arg)
            }
            RawExpr::Neg(a) => -a.reduce()?,
            RawExpr::Add(a, b) => a.reduce()? + b.reduce()?,
            RawExpr::Sub(a, b) => a.reduce()? - b.reduce()?,
            RawExpr::Mul(a, b) => a.reduce()? * b.reduce()?,
            RawExpr::Div(a, b) => a.reduce()?.checked_div(&b.reduce()?)?,
            RawExpr::Pow(a, e) => a.reduce()?.pow(*e),
        })
    }
}

fn poly_tree(p: &super::Poly) -> RawExpr {
    let mut acc: Option<RawExpr> = None;
    for (m, c) in p.terms().rev() {
        let mut t = RawExpr::Num(c.clone());
        for (a, e) in m.factors() {
            let leaf = match a {
                Atom::Call { func, arg } => RawExpr::call(*func, from_expr(arg)),
                a => RawExpr::Atom(a.clone()),
            };
            t = t * RawExpr::pow(leaf, *e);
        }
        acc = Some(match acc {
            None => t,
            Some(s) => s + t,
        });
    }
    acc.unwrap_or_else(|| RawExpr::int(0))
}

pub(super) fn from_expr(e: &Expr) -> RawExpr {
    poly_tree(&e.num) / poly_tree(&e.den)
}
