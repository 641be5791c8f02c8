use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use super::{Atom, Expr, Poly};
use crate::error::{JetError, Result};

/// Numeric values for non-call atoms. Calls are evaluated from their
/// arguments.
pub type Assignment = BTreeMap<Atom, f64>;

impl Expr {
    /// Floating-point value of the expression under `assignment`.
    pub fn eval(&self, assignment: &Assignment) -> Result<f64> {
        let num = eval_poly(&self.num, assignment)?;
        if self.den.is_one() {
            return Ok(num);
        }
        let den = eval_poly(&self.den, assignment)?;
        if den == 0.0 {
            return Err(JetError::Pole);
        }
        Ok(num / den)
    }
}

fn eval_atom(a: &Atom, assignment: &Assignment) -> Result<f64> {
    match a {
        Atom::Call { func, arg } => func.apply_f64(arg.eval(assignment)?),
        a => assignment
            .get(a)
            .copied()
            .ok_or_else(|| JetError::MissingAtom(a.to_string())),
    }
}

fn eval_poly(p: &Poly, assignment: &Assignment) -> Result<f64> {
    let mut cache: BTreeMap<&Atom, f64> = BTreeMap::new();
    let mut total = 0.0;
    for (m, c) in p.terms() {
        let mut t = c.to_f64().unwrap_or(f64::NAN);
        for (a, e) in m.factors() {
            let v = match cache.get(a) {
                Some(v) => *v,
                None => {
                    let v = eval_atom(a, assignment)?;
                    cache.insert(a, v);
                    v
                }
            };
            t *= v.powi(*e as i32);
        }
        total += t;
    }
    Ok(total)
}
