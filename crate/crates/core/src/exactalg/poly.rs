//! Sparse multivariate Laurent polynomials.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::monomial::Monomial;
use super::scalar::Scalar;
use super::var::Var;
use crate::error::{Error, Result};

/// A Laurent polynomial with coefficients in `C`.
///
/// Terms are kept in a `BTreeMap` keyed by [`Monomial`], so the largest key
/// is the lexicographic leading term. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<C: Scalar> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Scalar> Default for Polynomial<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Scalar> Polynomial<C> {
    pub fn zero() -> Self {
        Polynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(c, Monomial::one())
    }

    /// The single term `c·m`.
    pub fn term(c: C, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    /// The variable `v`.
    pub fn var(v: Var) -> Self {
        Self::term(C::one(), Monomial::var_pow(v, 1))
    }

    /// Builds a polynomial from terms, merging repeated monomials.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x = x.clone() + c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    /// Coefficient of `m`.
    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// The constant value when the polynomial has no nonconstant term.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().expect("one term");
                if m.is_one() {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// The single term when the polynomial is a nonzero monomial multiple.
    pub fn as_term(&self) -> Option<(Monomial, C)> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().expect("one term");
            Some((m.clone(), c.clone()))
        } else {
            None
        }
    }

    /// Lexicographic leading term.
    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    /// Leading term in the name-based order used for printing.
    pub fn canonical_leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().max_by(|a, b| a.0.canonical_cmp(b.0))
    }

    /// All variables occurring in the polynomial.
    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self
            .terms
            .keys()
            .flat_map(|m| m.pairs().iter().map(|p| p.0))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }

    /// Multiplies by the term `c·m`.
    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        self.mul_term(&Monomial::one(), c)
    }

    /// `self^e` for `e ≥ 0`.
    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Largest monomial dividing every term (componentwise minimum exponent).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(m) => m.clone(),
            None => return Monomial::one(),
        };
        it.fold(first, |acc, m| acc.gcd_laurent(m))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`
    /// in the Laurent polynomial ring.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some((m, c)) = d.as_term() {
            return Some(self.mul_term(&m.inv(), &(C::one() / c)));
        }
        let ma = self.monomial_content();
        let md = d.monomial_content();
        let mut r = self.mul_term(&ma.inv(), &C::one());
        let dd = d.mul_term(&md.inv(), &C::one());
        let (lm, lc) = {
            let (m, c) = dd.leading_term().expect("nonzero divisor");
            (m.clone(), c.clone())
        };
        let mut q = Self::zero();
        while let Some((rm, rc)) = r.leading_term() {
            if !rm.divisible_by(&lm) {
                return None;
            }
            let tm = rm.div(&lm);
            let tc = rc.clone() / lc.clone();
            r = r.sub(&dd.mul_term(&tm, &tc));
            q.add_term(tm, tc);
        }
        Some(q.mul_term(&ma.div(&md), &C::one()))
    }

    /// Partial derivative with respect to `v`.
    pub fn differentiate(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e != 0 {
                let k = C::from_i32(e).expect("integer embedding");
                out.add_term(m.mul(&Monomial::var_pow(v, -1)), c.clone() * k);
            }
        }
        out
    }

    /// Value at a point; every occurring variable must be assigned.
    pub fn eval(&self, point: &HashMap<Var, C>) -> Result<C> {
        let mut total = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.pairs() {
                let x = point
                    .get(&v)
                    .ok_or_else(|| Error::UnknownVariable(v.name().to_string()))?;
                t = t * scalar_pow(x, e)?;
            }
            total = total + t;
        }
        Ok(total)
    }

    /// Maps every coefficient through `f`.
    pub fn map_coefficients<D: Scalar, F: Fn(&C) -> D>(&self, f: F) -> Polynomial<D> {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Terms in printing order (name-based, largest first).
    pub fn canonical_terms(&self) -> Vec<(&Monomial, &C)> {
        let mut t: Vec<(&Monomial, &C)> = self.terms.iter().collect();
        t.sort_by(|a, b| b.0.canonical_cmp(a.0));
        t
    }
}

/// `x^e` for a scalar and a signed exponent.
pub fn scalar_pow<C: Scalar>(x: &C, e: i32) -> Result<C> {
    if e < 0 && x.is_zero() {
        return Err(Error::PoleAtPoint);
    }
    let mut r = C::one();
    for _ in 0..e.unsigned_abs() {
        r = r * x.clone();
    }
    if e < 0 {
        r = C::one() / r;
    }
    Ok(r)
}

impl<C: Scalar> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.canonical_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<C: Scalar> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
