//! Exact symbolic expressions over jet coordinates.
//!
//! An [`Expr`] is a single quotient `P / Q` of polynomials in [`Atom`]s with
//! rational coefficients. The quotient is always reduced (`gcd(P, Q) = 1`)
//! and `Q` has leading coefficient one, so two expressions denote the same
//! rational function exactly when they are structurally equal.

mod atom;
mod eval;
mod parse;
pub mod poly;
mod print;
mod raw;

use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use atom::{Atom, Func, World};
pub use eval::Assignment;
pub use parse::{parse, parse_raw, ParseContext};
pub use poly::{Monomial, Poly, Q};
pub use raw::RawExpr;

use crate::error::{JetError, Result};
use crate::multi_index::MultiIndex;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Expr {
    num: Poly,
    den: Poly,
}

impl Default for Expr {
    fn default() -> Self {
        Expr::zero()
    }
}

impl Expr {
    pub fn zero() -> Expr {
        Expr {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Expr {
        Expr::constant(Q::one())
    }

    pub fn int(v: i64) -> Expr {
        Expr::constant(Q::from_integer(v.into()))
    }

    pub fn rational(n: i64, d: i64) -> Expr {
        Expr::constant(Q::new(n.into(), d.into()))
    }

    pub fn constant(c: Q) -> Expr {
        Expr::from_poly(Poly::constant(c))
    }

    pub fn from_poly(num: Poly) -> Expr {
        Expr {
            num,
            den: Poly::one(),
        }
    }

    /// A non-call atom as an expression. Calls go through [`Expr::call`].
    pub fn atom(a: Atom) -> Expr {
        match a {
            Atom::Call { func, arg } => Expr::call(func, (*arg).clone()),
            a => Expr::from_poly(Poly::atom(a)),
        }
    }

    pub fn coord(i: usize) -> Expr {
        Expr::atom(Atom::Coord(i))
    }

    pub fn jet(k: usize, sigma: MultiIndex) -> Expr {
        Expr::atom(Atom::jet(k, sigma))
    }

    pub fn boundary_jet(k: usize, i: u32, tau: MultiIndex) -> Expr {
        Expr::atom(Atom::boundary_jet(k, i, tau))
    }

    /// `func(arg)`. Arguments with an exact rational value are folded
    /// (`sin(0) = 0`, `exp(0) = 1`, `log(1) = 0`, `sqrt(9/4) = 3/2`, ...);
    /// everything else becomes an opaque atom.
    pub fn call(func: Func, arg: Expr) -> Expr {
        if let Some(c) = arg.as_constant() {
            if let Some(v) = fold_constant_call(func, &c) {
                return Expr::constant(v);
            }
        }
        Expr::from_poly(Poly::atom(Atom::Call {
            func,
            arg: Arc::new(arg),
        }))
    }

    /// Build `num / den` in canonical form.
    pub fn quotient(num: Poly, den: Poly) -> Result<Expr> {
        if den.is_zero() {
            return Err(JetError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Expr::zero());
        }
        if let Some(c) = den.as_constant() {
            return Ok(Expr::from_poly(num.scale(&c.recip())));
        }
        let g = poly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Ok(Expr::normalized_lc(num, den))
    }

    /// Make a coprime pair canonical by scaling the denominator monic.
    fn normalized_lc(num: Poly, den: Poly) -> Expr {
        let lc = den.leading().expect("non-zero denominator").1.clone();
        if lc.is_one() {
            Expr { num, den }
        } else {
            let inv = lc.recip();
            Expr {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Q> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn checked_div(&self, other: &Expr) -> Result<Expr> {
        if other.is_zero() {
            return Err(JetError::DivisionByZero);
        }
        if other.is_polynomial() && self.is_polynomial() {
            return Expr::quotient(self.num.clone(), other.num.clone());
        }
        Expr::quotient(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn pow(&self, e: u32) -> Expr {
        Expr {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn scale(&self, c: &Q) -> Expr {
        if c.is_zero() {
            return Expr::zero();
        }
        Expr {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Atoms occurring at the top level (calls count as single atoms).
    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = self.num.atoms();
        out.extend(self.den.atoms());
        out
    }

    /// Non-call atoms at any depth, looking through call arguments.
    pub fn leaf_atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut BTreeSet<Atom>) {
        for a in self.atoms() {
            match a {
                Atom::Call { arg, .. } => arg.collect_leaves(out),
                a => {
                    out.insert(a);
                }
            }
        }
    }

    /// Jet variables (interior or boundary) at any depth.
    pub fn jet_atoms(&self) -> BTreeSet<Atom> {
        self.leaf_atoms()
            .into_iter()
            .filter(Atom::is_jet_variable)
            .collect()
    }

    /// The world of this expression, or `None` when it has no jet atoms.
    pub fn world(&self) -> Result<Option<World>> {
        let mut world = None;
        for a in self.atoms() {
            match (world, a.world()?) {
                (_, None) => {}
                (None, w) => world = w,
                (Some(w0), Some(w1)) if w0 != w1 => return Err(JetError::MixedWorld),
                _ => {}
            }
        }
        Ok(world)
    }

    /// Fails unless every jet atom belongs to `world`.
    pub fn require_world(&self, world: World) -> Result<()> {
        match self.world()? {
            Some(found) if found != world => Err(JetError::WorldMismatch {
                expected: world,
                found,
            }),
            _ => Ok(()),
        }
    }

    /// Apply the derivation determined by its values on non-call atoms.
    /// Calls are differentiated by the chain rule through the derivative table.
    pub fn derive<F>(&self, image: &mut F) -> Result<Expr>
    where
        F: FnMut(&Atom) -> Result<Expr>,
    {
        let mut images: BTreeMap<Atom, Expr> = BTreeMap::new();
        for a in self.atoms() {
            let img = match &a {
                Atom::Call { func, arg } => {
                    let inner = arg.derive(image)?;
                    if inner.is_zero() {
                        continue;
                    }
                    func.derivative_at(arg) * inner
                }
                a => image(a)?,
            };
            if !img.is_zero() {
                images.insert(a, img);
            }
        }
        let apply = |p: &Poly| -> Expr {
            images
                .iter()
                .map(|(a, img)| Expr::from_poly(p.partial(a)) * img)
                .fold(Expr::zero(), |acc, t| acc + t)
        };
        let dnum = apply(&self.num);
        if self.den.is_one() {
            return Ok(dnum);
        }
        let dden = apply(&self.den);
        let den = Expr::from_poly(self.den.clone());
        Ok(dnum.checked_div(&den)? - self * &dden.checked_div(&den)?)
    }

    /// Formal partial derivative `∂e/∂v`, every distinct atom independent.
    pub fn partial(&self, v: &Atom) -> Result<Expr> {
        if let Some(w) = v.world()? {
            self.require_world(w)?;
        }
        self.derive(&mut |a: &Atom| Ok(if a == v { Expr::one() } else { Expr::zero() }))
    }

    /// Replace every non-call atom by its image and renormalize. Calls are
    /// rebuilt on their substituted arguments.
    pub fn substitute<F>(&self, image: &mut F) -> Result<Expr>
    where
        F: FnMut(&Atom) -> Result<Expr>,
    {
        let mut images: BTreeMap<Atom, Expr> = BTreeMap::new();
        for a in self.atoms() {
            let img = match &a {
                Atom::Call { func, arg } => Expr::call(*func, arg.substitute(image)?),
                a => image(a)?,
            };
            images.insert(a, img);
        }
        let eval_poly = |p: &Poly| -> Expr {
            let mut acc = Expr::zero();
            for (m, c) in p.terms() {
                let mut t = Expr::constant(c.clone());
                for (a, e) in m.factors() {
                    t = t * images[a].pow(*e);
                }
                acc = acc + t;
            }
            acc
        };
        let num = eval_poly(&self.num);
        if self.den.is_one() {
            return Ok(num);
        }
        num.checked_div(&eval_poly(&self.den))
    }

    pub fn to_raw(&self) -> RawExpr {
        raw::from_expr(self)
    }
}

fn fold_constant_call(func: Func, c: &Q) -> Option<Q> {
    match func {
        Func::Sin | Func::Tan if c.is_zero() => Some(Q::zero()),
        Func::Cos | Func::Exp if c.is_zero() => Some(Q::one()),
        Func::Log if c.is_one() => Some(Q::zero()),
        Func::Sqrt if !c.is_negative() => {
            let root = |v: &BigInt| {
                let r = v.sqrt();
                (&r * &r == *v).then_some(r)
            };
            Some(Q::new(root(c.numer())?, root(c.denom())?))
        }
        _ => None,
    }
}

impl Add<&Expr> for &Expr {
    type Output = Expr;

    fn add(self, rhs: &Expr) -> Expr {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = self.num.add(&rhs.num);
            if self.den.is_one() {
                return Expr::from_poly(num);
            }
            return Expr::quotient(num, self.den.clone()).expect("non-zero denominator");
        }
        // with g = gcd(d1, d2) the sum can only cancel against g
        let g = poly::gcd(&self.den, &rhs.den);
        let a = rhs.den.div_exact(&g).expect("gcd divides");
        let b = self.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&a).add(&rhs.num.mul(&b));
        if num.is_zero() {
            return Expr::zero();
        }
        let h = poly::gcd(&num, &g);
        let (num, den) = if h.is_one() {
            (num, self.den.mul(&a))
        } else {
            (
                num.div_exact(&h).expect("gcd divides"),
                g.div_exact(&h).expect("gcd divides").mul(&a).mul(&b),
            )
        };
        Expr::normalized_lc(num, den)
    }
}

impl Mul<&Expr> for &Expr {
    type Output = Expr;

    fn mul(self, rhs: &Expr) -> Expr {
        if self.is_zero() || rhs.is_zero() {
            return Expr::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Expr::from_poly(self.num.mul(&rhs.num));
        }
        // both factors are reduced, so only cross cancellation remains
        let g1 = poly::gcd(&self.num, &rhs.den);
        let g2 = poly::gcd(&rhs.num, &self.den);
        let div = |p: &Poly, g: &Poly| {
            if g.is_one() {
                p.clone()
            } else {
                p.div_exact(g).expect("gcd divides")
            }
        };
        let num = div(&self.num, &g1).mul(&div(&rhs.num, &g2));
        let den = div(&self.den, &g2).mul(&div(&rhs.den, &g1));
        Expr::normalized_lc(num, den)
    }
}

impl Neg for &Expr {
    type Output = Expr;

    fn neg(self) -> Expr {
        Expr {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Sub<&Expr> for &Expr {
    type Output = Expr;

    fn sub(self, rhs: &Expr) -> Expr {
        self + &(-rhs)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Expr> for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Expr> for Expr {
            type Output = Expr;
            fn $method(self, rhs: &Expr) -> Expr {
                (&self).$method(rhs)
            }
        }
        impl $tr<Expr> for &Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Expr {
    type Output = Expr;

    fn neg(self) -> Expr {
        -&self
    }
}

impl std::iter::Sum for Expr {
    fn sum<I: Iterator<Item = Expr>>(iter: I) -> Expr {
        iter.fold(Expr::zero(), |a, b| a + b)
    }
}

impl From<i64> for Expr {
    fn from(v: i64) -> Expr {
        Expr::int(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u() -> Expr {
        Expr::jet(1, MultiIndex::zero(2))
    }

    fn p() -> Expr {
        Expr::jet(1, MultiIndex::new([1, 0]))
    }

    #[test]
    fn like_terms_merge() {
        assert_eq!(u() + u(), Expr::int(2) * u());
        assert_eq!(Expr::coord(1) * p() - p() * Expr::coord(1), Expr::zero());
    }

    #[test]
    fn gcd_cancels_in_quotient() {
        let num = u().pow(2) - Expr::one();
        let den = u() - Expr::one();
        assert_eq!(num.checked_div(&den).unwrap(), u() + Expr::one());
        assert_eq!(
            Expr::one().checked_div(&Expr::zero()),
            Err(JetError::DivisionByZero)
        );
    }

    #[test]
    fn denominator_is_monic() {
        let e = u()
            .checked_div(&(Expr::int(2) * p() + Expr::int(4)))
            .unwrap();
        assert!(e.denominator().leading().unwrap().1.is_one());
        let f = (Expr::rational(1, 2) * u())
            .checked_div(&(p() + Expr::int(2)))
            .unwrap();
        assert_eq!(e, f);
    }

    #[test]
    fn partial_derivative_table() {
        let pp = Atom::jet(1, MultiIndex::new([1, 0]));
        assert_eq!(p().pow(2).partial(&pp).unwrap(), Expr::int(2) * p());
        let uu = Atom::jet(1, MultiIndex::zero(2));
        let s = Expr::call(Func::Sin, u());
        assert_eq!(s.partial(&uu).unwrap(), Expr::call(Func::Cos, u()));
        let c = Expr::call(Func::Cos, u());
        assert_eq!(c.partial(&uu).unwrap(), -Expr::call(Func::Sin, u()));
        let t = Expr::call(Func::Tan, u());
        assert_eq!(t.partial(&uu).unwrap(), Expr::one() + t.pow(2));
        let e = Expr::call(Func::Exp, u());
        assert_eq!(e.partial(&uu).unwrap(), e);
        let l = Expr::call(Func::Log, u());
        assert_eq!(
            l.partial(&uu).unwrap(),
            Expr::one().checked_div(&u()).unwrap()
        );
        let r = Expr::call(Func::Sqrt, u());
        assert_eq!(
            r.partial(&uu).unwrap(),
            Expr::one()
                .checked_div(&(Expr::int(2) * r.clone()))
                .unwrap()
        );
        let z = Expr::coord(1) * Expr::jet(1, MultiIndex::new([2, 0]));
        assert!(z.partial(&uu).unwrap().is_zero());
    }

    #[test]
    fn partial_rejects_other_world() {
        let b = Atom::boundary_jet(1, 0, MultiIndex::zero(1));
        assert!(matches!(
            u().partial(&b),
            Err(JetError::WorldMismatch { .. })
        ));
    }

    #[test]
    fn constant_calls_fold() {
        assert!(Expr::call(Func::Sin, Expr::zero()).is_zero());
        assert!(Expr::call(Func::Exp, Expr::zero()).is_one());
        assert!(Expr::call(Func::Log, Expr::one()).is_zero());
        assert_eq!(
            Expr::call(Func::Sqrt, Expr::rational(9, 4)),
            Expr::rational(3, 2)
        );
        assert!(Expr::call(Func::Sqrt, Expr::int(2)).as_constant().is_none());
    }

    #[test]
    fn mixed_world_detected() {
        let e = u() + Expr::boundary_jet(1, 0, MultiIndex::zero(1));
        assert_eq!(e.world(), Err(JetError::MixedWorld));
        assert_eq!(Expr::coord(1).world(), Ok(None));
    }
}
