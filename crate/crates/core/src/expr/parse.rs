//! Recursive-descent parser for the expression grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := ('-' | '+') factor | base ('^' int)?
//! base   := number | atom | fn '(' expr ')' | '(' expr ')'
//! atom   := 'x' int | 'u' int ('_' index)? | 'ub' int '_' int ('_' index)?
//! index  := '{' int (',' int)* '}'
//! ```
//!
//! An omitted index means the zero multi-index.

use num_bigint::BigInt;

use super::{Atom, Expr, Func, RawExpr, World, Q};
use crate::error::{JetError, Result};
use crate::multi_index::MultiIndex;

/// Dimensions and world an expression is parsed against. `n` is always the
/// interior base dimension; boundary expressions have `n − 1` tangential
/// coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParseContext {
    pub n: usize,
    pub m: usize,
    pub world: World,
}

impl ParseContext {
    pub fn interior(n: usize, m: usize) -> Self {
        ParseContext {
            n,
            m,
            world: World::Interior,
        }
    }

    pub fn boundary(n: usize, m: usize) -> Self {
        ParseContext {
            n,
            m,
            world: World::Boundary,
        }
    }

    fn dim(&self) -> usize {
        match self.world {
            World::Interior => self.n,
            World::Boundary => self.n - 1,
        }
    }
}

/// Parse `text` into a canonical expression.
pub fn parse(text: &str, ctx: ParseContext) -> Result<Expr> {
    parse_raw(text, ctx)?.normalize()
}

/// Parse without normalizing.
pub fn parse_raw(text: &str, ctx: ParseContext) -> Result<RawExpr> {
    if ctx.n == 0 || ctx.m == 0 {
        return Err(JetError::InvalidDimension(format!(
            "n = {}, m = {}; both must be at least 1",
            ctx.n, ctx.m
        )));
    }
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ctx,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected '{}'", p.src[p.pos] as char)));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: ParseContext,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> JetError {
        JetError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<RawExpr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = lhs + self.term()?;
            } else if self.eat(b'-') {
                lhs = lhs - self.term()?;
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<RawExpr> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat(b'*') {
                lhs = lhs * self.factor()?;
            } else if self.eat(b'/') {
                lhs = lhs / self.factor()?;
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<RawExpr> {
        if self.eat(b'-') {
            return Ok(RawExpr::Neg(Box::new(self.factor()?)));
        }
        if self.eat(b'+') {
            return self.factor();
        }
        let base = self.base()?;
        if self.eat(b'^') {
            self.skip_ws();
            let e = self.uint()?;
            let e = u32::try_from(e).map_err(|_| self.error("exponent too large"))?;
            return Ok(RawExpr::pow(base, e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<RawExpr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => self.identifier(),
            Some(c) => Err(self.error(format!("unexpected '{}'", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits")
    }

    fn uint(&mut self) -> Result<usize> {
        let start = self.pos;
        let d = self.digits();
        if d.is_empty() {
            self.pos = start;
            return Err(self.error("expected an integer"));
        }
        d.parse().map_err(|_| JetError::Syntax {
            pos: start,
            msg: "integer too large".into(),
        })
    }

    fn number(&mut self) -> Result<RawExpr> {
        let start = self.pos;
        let int_part = self.digits().to_string();
        let mut frac_part = String::new();
        if self.pos < self.src.len() && self.src[self.pos] == b'.' {
            self.pos += 1;
            frac_part = self.digits().to_string();
        }
        if int_part.is_empty() && frac_part.is_empty() {
            self.pos = start;
            return Err(self.error("malformed number"));
        }
        let digits = format!("{int_part}{frac_part}");
        let numer: BigInt = digits.parse().expect("validated digits");
        let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
        Ok(RawExpr::Num(Q::new(numer, denom)))
    }

    fn identifier(&mut self) -> Result<RawExpr> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        if let Some(func) = Func::from_name(name) {
            self.expect(b'(')?;
            let arg = self.expr()?;
            self.expect(b')')?;
            return Ok(RawExpr::call(func, arg));
        }
        let atom = match name {
            "x" => {
                let i = self.uint()?;
                let dim = self.ctx.dim();
                if i == 0 || i > dim {
                    return Err(JetError::CoordOutOfRange {
                        i,
                        dim,
                        world: self.ctx.world,
                    });
                }
                Atom::Coord(i)
            }
            "u" => {
                self.require_world(World::Interior)?;
                let k = self.component()?;
                let sigma = self.optional_index(self.ctx.n)?;
                Atom::jet(k, sigma)
            }
            "ub" => {
                self.require_world(World::Boundary)?;
                let k = self.component()?;
                if !(self.pos < self.src.len() && self.src[self.pos] == b'_') {
                    return Err(self.error("expected '_' and a normal order after ub<k>"));
                }
                self.pos += 1;
                let i = self.uint()?;
                let i = u32::try_from(i).map_err(|_| self.error("normal order too large"))?;
                let tau = self.optional_index(self.ctx.n - 1)?;
                Atom::boundary_jet(k, i, tau)
            }
            _ => {
                self.pos = start;
                return Err(self.error(format!("unknown identifier '{name}'")));
            }
        };
        Ok(RawExpr::Atom(atom))
    }

    fn require_world(&self, found: World) -> Result<()> {
        if self.ctx.world != found {
            return Err(JetError::WorldMismatch {
                expected: self.ctx.world,
                found,
            });
        }
        Ok(())
    }

    fn component(&mut self) -> Result<usize> {
        let k = self.uint()?;
        if k == 0 || k > self.ctx.m {
            return Err(JetError::ComponentOutOfRange { k, m: self.ctx.m });
        }
        Ok(k)
    }

    fn optional_index(&mut self, width: usize) -> Result<MultiIndex> {
        let has_index =
            self.src.get(self.pos) == Some(&b'_') && self.src.get(self.pos + 1) == Some(&b'{');
        if !has_index {
            return Ok(MultiIndex::zero(width));
        }
        self.pos += 2;
        let mut entries = Vec::new();
        loop {
            self.skip_ws();
            let e = self.uint()?;
            entries.push(u32::try_from(e).map_err(|_| self.error("index entry too large"))?);
            if self.eat(b',') {
                continue;
            }
            self.expect(b'}')?;
            break;
        }
        let index = MultiIndex::new(entries);
        if index.width() != width {
            return Err(JetError::WrongWidth {
                got: index.width(),
                expected: width,
                index,
            });
        }
        Ok(index)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx2() -> ParseContext {
        ParseContext::interior(2, 1)
    }

    #[test]
    fn atomic_inputs() {
        assert_eq!(parse("x1", ctx2()).unwrap(), Expr::coord(1));
        assert_eq!(
            parse("u1_{2,3}", ctx2()).unwrap(),
            Expr::jet(1, MultiIndex::new([2, 3]))
        );
        assert_eq!(
            parse("u1", ctx2()).unwrap(),
            Expr::jet(1, MultiIndex::zero(2))
        );
        let b = ParseContext::boundary(2, 1);
        assert_eq!(
            parse("ub1_3_{2}", b).unwrap(),
            Expr::boundary_jet(1, 3, MultiIndex::new([2]))
        );
        assert_eq!(
            parse("ub1_3", ParseContext::boundary(1, 1)).unwrap(),
            Expr::boundary_jet(1, 3, MultiIndex::zero(0))
        );
    }

    #[test]
    fn decimals_are_exact() {
        assert_eq!(
            parse("0.25*x1", ctx2()).unwrap(),
            Expr::rational(1, 4) * Expr::coord(1)
        );
    }

    #[test]
    fn precedence_and_unary_minus() {
        let e = parse("-x1^2 + 2*x2/4", ctx2()).unwrap();
        let want = -Expr::coord(1).pow(2) + Expr::rational(1, 2) * Expr::coord(2);
        assert_eq!(e, want);
        let e = parse("1/2*u1_{1,0}^2 + u1_{0,1}^2/2", ctx2()).unwrap();
        let p = Expr::jet(1, MultiIndex::new([1, 0]));
        let q = Expr::jet(1, MultiIndex::new([0, 1]));
        assert_eq!(e, Expr::rational(1, 2) * (p.pow(2) + q.pow(2)));
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse("x1 + * x2", ctx2()) {
            Err(JetError::Syntax { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse("(x1", ctx2()), Err(JetError::Syntax { .. })));
        assert!(matches!(
            parse("x1 x2", ctx2()),
            Err(JetError::Syntax { .. })
        ));
        assert!(matches!(
            parse("foo(x1)", ctx2()),
            Err(JetError::Syntax { .. })
        ));
        assert!(matches!(parse("", ctx2()), Err(JetError::Syntax { .. })));
    }

    #[test]
    fn context_violations() {
        assert!(matches!(
            parse("u2", ctx2()),
            Err(JetError::ComponentOutOfRange { k: 2, m: 1 })
        ));
        assert!(matches!(
            parse("u1_{1,2,3}", ctx2()),
            Err(JetError::WrongWidth {
                got: 3,
                expected: 2,
                ..
            })
        ));
        assert!(matches!(
            parse("x3", ctx2()),
            Err(JetError::CoordOutOfRange { i: 3, .. })
        ));
        assert!(matches!(
            parse("ub1_0_{0}", ctx2()),
            Err(JetError::WorldMismatch { .. })
        ));
        assert!(matches!(
            parse("x2", ParseContext::boundary(2, 1)),
            Err(JetError::CoordOutOfRange { i: 2, .. })
        ));
        assert!(matches!(
            parse("1/(x1-x1)", ctx2()),
            Err(JetError::DivisionByZero)
        ));
    }

    #[test]
    fn printed_dirichlet_density_is_a_fixpoint() {
        let e = parse("u1_{1,0}^2/2 + u1_{0,1}^2/2", ctx2()).unwrap();
        let printed = e.to_string();
        assert_eq!(printed, "1/2*u1_{1,0}^2 + 1/2*u1_{0,1}^2");
        let again = parse(&printed, ctx2()).unwrap();
        assert_eq!(again, e);
        assert_eq!(again.to_string(), printed);
    }
}
