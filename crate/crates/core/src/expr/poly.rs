//! Sparse multivariate polynomials over `Q` in [`Atom`] indeterminates, with
//! exact division and gcd.
//!
//! Terms are keyed by [`Monomial`] under graded lex order (degree first, then
//! the exponent of the largest atom, and so on downward). The gcd is the
//! classical recursive one: split off the content with respect to the largest
//! atom and run a primitive pseudo-remainder sequence on the primitive parts.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Atom;

pub type Q = BigRational;

/// A power product of atoms. Stored ascending by atom, exponents positive.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Monomial(Vec<(Atom, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn atom(a: Atom) -> Self {
        Monomial(vec![(a, 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn factors(&self) -> &[(Atom, u32)] {
        &self.0
    }

    pub fn exponent(&self, a: &Atom) -> u32 {
        self.0
            .binary_search_by(|(b, _)| b.cmp(a))
            .map(|p| self.0[p].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for (a, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 == *a {
                let f = other.0[j].1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((a.clone(), e - f)),
                }
                j += 1;
            } else if j < other.0.len() && other.0[j].0 < *a {
                return None;
            } else {
                out.push((a.clone(), *e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Componentwise minimum of exponents.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .filter_map(|(a, e)| {
                    let f = other.exponent(a);
                    (f > 0).then(|| (a.clone(), (*e).min(f)))
                })
                .collect(),
        )
    }

    /// Split off the power of `a`: returns `(exponent, rest)`.
    fn split(&self, a: &Atom) -> (u32, Monomial) {
        match self.0.binary_search_by(|(b, _)| b.cmp(a)) {
            Ok(p) => {
                let mut rest = self.0.clone();
                let (_, e) = rest.remove(p);
                (e, Monomial(rest))
            }
            Err(_) => (0, self.clone()),
        }
    }

    fn with_power(&self, a: &Atom, e: u32) -> Monomial {
        if e == 0 {
            self.clone()
        } else {
            self.mul(&Monomial(vec![(a.clone(), e)]))
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let mut a = self.0.iter().rev();
            let mut b = other.0.iter().rev();
            loop {
                match (a.next(), b.next()) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                        Ordering::Equal => match ea.cmp(eb) {
                            Ordering::Equal => continue,
                            ord => return ord,
                        },
                        ord => return ord,
                    },
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Poly {
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Poly::term(Monomial::one(), c)
    }

    pub fn atom(a: Atom) -> Self {
        Poly::term(Monomial::atom(a), Q::one())
    }

    pub fn term(m: Monomial, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value if this polynomial is constant (zero included).
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(a, _)| a.clone()))
            .collect()
    }

    fn max_atom(&self) -> Option<Atom> {
        self.terms
            .keys()
            .filter_map(|m| m.0.last().map(|(a, _)| a))
            .max()
            .cloned()
    }

    pub fn contains(&self, a: &Atom) -> bool {
        self.terms.keys().any(|m| m.exponent(a) > 0)
    }

    fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (mut out, small) = if self.len() >= other.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn scale(&self, s: &Q) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_term(&self, m: &Monomial, c: &Q) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Structural partial derivative with respect to `a`, treating every
    /// other atom (including calls) as independent.
    pub fn partial(&self, a: &Atom) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(a);
            if e > 0 {
                out.add_term(
                    rest.with_power(a, e - 1),
                    c * Q::from_integer(BigInt::from(e)),
                );
            }
        }
        out
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some((_, lc)) if lc.is_one() => self.clone(),
            Some((_, lc)) => self.scale(&lc.recip()),
        }
    }

    /// Exact quotient `self / other`, or `None` if `other` does not divide.
    pub fn div_exact(&self, other: &Poly) -> Option<Poly> {
        if other.is_zero() {
            return None;
        }
        if let Some(c) = other.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lc) = other.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(&lm)?;
            let qc = rc / &lc;
            rem = rem.sub(&other.mul_term(&qm, &qc));
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    fn degree_in(&self, a: &Atom) -> u32 {
        self.terms.keys().map(|m| m.exponent(a)).max().unwrap_or(0)
    }

    /// View as a univariate polynomial in `a` with polynomial coefficients.
    fn coeffs_in(&self, a: &Atom) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(a);
            out.entry(e).or_default().add_term(rest, c.clone());
        }
        out
    }

    fn lc_in(&self, a: &Atom) -> Poly {
        let d = self.degree_in(a);
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(a);
            if e == d {
                out.add_term(rest, c.clone());
            }
        }
        out
    }

    /// gcd of the coefficients with respect to `a`.
    fn content_in(&self, a: &Atom) -> Poly {
        let mut g = Poly::zero();
        for c in self.coeffs_in(a).into_values() {
            g = gcd(&g, &c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn pseudo_rem(&self, divisor: &Poly, a: &Atom) -> Poly {
        let db = divisor.degree_in(a);
        let lc = divisor.lc_in(a);
        let mut r = self.clone();
        while !r.is_zero() {
            let dr = r.degree_in(a);
            if dr < db {
                break;
            }
            let t = r
                .lc_in(a)
                .mul_term(&Monomial::one().with_power(a, dr - db), &Q::one());
            r = r.mul(&lc).sub(&t.mul(divisor));
        }
        r
    }
}

fn monomial_content(p: &Poly) -> Monomial {
    let mut it = p.terms.keys();
    let first = it.next().cloned().unwrap_or_default();
    it.fold(first, |g, m| g.gcd(m))
}

/// Monic gcd of two polynomials; `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return Poly::one();
    }
    if a.is_monomial() || b.is_monomial() {
        let (mono, other) = if a.is_monomial() { (a, b) } else { (b, a) };
        let m = mono.terms.keys().next().unwrap();
        let g = m.gcd(&monomial_content(other));
        return Poly::term(g, Q::one());
    }
    // gcd(a, b) only involves atoms common to both: split each side into
    // coefficients over the remaining atoms and take the gcd of those
    let aa = a.atoms();
    let ba = b.atoms();
    let shared: BTreeSet<Atom> = aa.intersection(&ba).cloned().collect();
    if shared.is_empty() {
        return Poly::one();
    }
    if aa.len() > shared.len() || ba.len() > shared.len() {
        let mut parts = coefficients_over(a, &shared);
        parts.extend(coefficients_over(b, &shared));
        parts.sort_by_key(Poly::len);
        let mut g = parts[0].monic();
        for p in &parts[1..] {
            if g.as_constant().is_some() {
                return Poly::one();
            }
            g = gcd(&g, p);
        }
        return g;
    }
    let v = a.max_atom().max(b.max_atom()).expect("non-constant");
    if !a.contains(&v) {
        return gcd(a, &b.content_in(&v));
    }
    if !b.contains(&v) {
        return gcd(&a.content_in(&v), b);
    }
    let ca = a.content_in(&v);
    let cb = b.content_in(&v);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let c = gcd(&ca, &cb);
    let g = primitive_prs(pa, pb, &v);
    c.mul(&g).monic()
}

/// `p = Σ_m c_m·m` with `m` ranging over monomials in atoms outside `keep`;
/// returns the coefficients `c_m`, which only involve atoms of `keep`.
fn coefficients_over(p: &Poly, keep: &BTreeSet<Atom>) -> Vec<Poly> {
    let mut groups: BTreeMap<Monomial, Poly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let (inner, outer): (Vec<_>, Vec<_>) = m
            .factors()
            .iter()
            .cloned()
            .partition(|(a, _)| keep.contains(a));
        groups
            .entry(Monomial(outer))
            .or_default()
            .add_term(Monomial(inner), c.clone());
    }
    groups.into_values().collect()
}

/// gcd of two polynomials primitive with respect to `v`.
fn primitive_prs(mut a: Poly, mut b: Poly, v: &Atom) -> Poly {
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = a.pseudo_rem(&b, v);
        if r.is_zero() {
            return b.monic();
        }
        if r.degree_in(v) == 0 {
            return Poly::one();
        }
        let cr = r.content_in(v);
        a = b;
        b = r.div_exact(&cr).expect("content divides");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multi_index::MultiIndex;

    fn x(i: usize) -> Poly {
        Poly::atom(Atom::Coord(i))
    }

    fn u(s: &[u32]) -> Poly {
        Poly::atom(Atom::jet(1, MultiIndex::new(s.iter().copied())))
    }

    fn c(v: i64) -> Poly {
        Poly::constant(Q::from_integer(v.into()))
    }

    #[test]
    fn grlex_orders_by_degree_then_largest_atom() {
        let a = Monomial::atom(Atom::Coord(1)).mul(&Monomial::atom(Atom::Coord(1)));
        let b = Monomial::atom(Atom::Coord(2));
        assert!(a > b);
        let p = Monomial::atom(Atom::jet(1, MultiIndex::new([2, 0])));
        let q = Monomial::atom(Atom::jet(1, MultiIndex::new([0, 2])));
        assert!(p > q);
    }

    #[test]
    fn exact_division_round_trips() {
        let a = x(1).add(&u(&[1, 0])).add(&c(3));
        let b = x(2).sub(&u(&[0, 1]).mul(&x(1)));
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert!(a.div_exact(&b).is_none());
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let g = x(1).add(&u(&[0, 0])).add(&c(1));
        let a = g.mul(&x(2).add(&c(2)));
        let b = g.mul(&x(2).sub(&u(&[1, 0])));
        assert_eq!(gcd(&a, &b), g.monic());
        let uu = u(&[0, 0]);
        let num = uu.mul(&uu).sub(&c(1));
        let den = uu.sub(&c(1));
        assert_eq!(gcd(&num, &den), den.monic());
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let a = x(1).mul(&x(1)).add(&c(1));
        let b = x(1).add(&x(2));
        assert!(gcd(&a, &b).is_one());
        assert!(gcd(&c(4), &a).is_one());
    }

    #[test]
    fn gcd_with_monomial() {
        let a = x(1).mul(&x(1)).mul(&x(2));
        let b = x(1).mul(&x(2)).add(&x(1).mul(&x(1)));
        assert_eq!(gcd(&a, &b), x(1));
    }

    #[test]
    fn partial_is_structural() {
        let p = x(1).mul(&u(&[1, 0])).mul(&u(&[1, 0]));
        let d = p.partial(&Atom::jet(1, MultiIndex::new([1, 0])));
        assert_eq!(d, x(1).mul(&u(&[1, 0])).scale(&Q::from_integer(2.into())));
        assert!(p.partial(&Atom::Coord(2)).is_zero());
    }
}
