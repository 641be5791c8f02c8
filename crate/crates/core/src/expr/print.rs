//! Canonical printing. The output is accepted by [`super::parse`] and
//! re-parses to the same expression.

use std::fmt::{self, Write};

use num_traits::{One, Signed};

use super::{Expr, Monomial, Poly, Q};

fn write_rational(out: &mut String, c: &Q) {
    if c.denom().is_one() {
        write!(out, "{}", c.numer()).unwrap();
    } else {
        write!(out, "{}/{}", c.numer(), c.denom()).unwrap();
    }
}

fn write_monomial(out: &mut String, m: &Monomial) {
    for (p, (a, e)) in m.factors().iter().enumerate() {
        if p > 0 {
            out.push('*');
        }
        write!(out, "{a}").unwrap();
        if *e > 1 {
            write!(out, "^{e}").unwrap();
        }
    }
}

/// Terms from the leading monomial down.
pub(crate) fn poly_to_string(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        match (idx, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let abs = c.abs();
        if m.is_one() {
            write_rational(&mut out, &abs);
        } else {
            if !abs.is_one() {
                write_rational(&mut out, &abs);
                out.push('*');
            }
            write_monomial(&mut out, m);
        }
    }
    out
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = poly_to_string(&self.num);
        if self.den.is_one() {
            return f.write_str(&num);
        }
        let den = poly_to_string(&self.den);
        let wrap_num = self.num.len() > 1;
        let wrap_den = self.den.len() > 1
            || self
                .den
                .leading()
                .is_some_and(|(m, _)| m.factors().len() > 1);
        match (wrap_num, wrap_den) {
            (true, true) => write!(f, "({num})/({den})"),
            (true, false) => write!(f, "({num})/{den}"),
            (false, true) => write!(f, "{num}/({den})"),
            (false, false) => write!(f, "{num}/{den}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::expr::{Expr, Func};
    use crate::multi_index::MultiIndex;

    #[test]
    fn prints_leading_term_first() {
        let e = -Expr::jet(1, MultiIndex::new([2, 0])) - Expr::jet(1, MultiIndex::new([0, 2]));
        assert_eq!(e.to_string(), "-u1_{2,0} - u1_{0,2}");
    }

    #[test]
    fn prints_coefficients_and_powers() {
        let p = Expr::jet(1, MultiIndex::new([1, 0]));
        let e = Expr::rational(1, 2) * p.pow(2) + Expr::coord(1) * p.clone() - Expr::int(3);
        assert_eq!(e.to_string(), "1/2*u1_{1,0}^2 + x1*u1_{1,0} - 3");
    }

    #[test]
    fn prints_quotients_with_parentheses() {
        let b = Expr::boundary_jet(1, 1, MultiIndex::new([0]));
        let w = Expr::one() + b.pow(2);
        let e = b.checked_div(&Expr::call(Func::Sqrt, w)).unwrap();
        assert_eq!(e.to_string(), "ub1_1_{0}/sqrt(ub1_1_{0}^2 + 1)");
        let x = Expr::coord(1);
        let y = Expr::coord(2);
        let q = (x.clone() + Expr::one())
            .checked_div(&(x * y.pow(2)))
            .unwrap();
        assert_eq!(q.to_string(), "(x1 + 1)/(x1*x2^2)");
        assert_eq!(
            Expr::boundary_jet(1, 3, MultiIndex::zero(0)).to_string(),
            "ub1_3"
        );
    }
}
