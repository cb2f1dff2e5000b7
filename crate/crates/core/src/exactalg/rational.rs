//! Exact rational functions over Laurent polynomials.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::poly::Polynomial;
use super::scalar::{Field, Scalar};
use super::var::Var;
use crate::error::{Error, Result};

/// Denominator factors with their exponents.
type Factors<C> = Vec<(Polynomial<C>, u32)>;

/// A rational function `numerator / ∏ pᵢ^{eᵢ}`.
///
/// The numerator is a Laurent polynomial, so monomial denominators never
/// appear explicitly. Each denominator factor `pᵢ` is a genuine polynomial
/// with no monomial content, at least two terms, and leading coefficient 1
/// in the printing order. Factors are not required to be irreducible or
/// coprime to the numerator; equality is decided exactly by
/// cross-multiplication.
#[derive(Clone)]
pub struct RationalFunction<C: Scalar> {
    num: Polynomial<C>,
    den: Vec<(Polynomial<C>, u32)>,
}

impl<C: Scalar> RationalFunction<C> {
    pub fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn constant(c: C) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    /// The integer `n`.
    pub fn int(n: i64) -> Self {
        Self::constant(C::from_i64(n).expect("integer embedding"))
    }

    /// The variable `v`.
    pub fn var(v: Var) -> Self {
        Self::from_poly(Polynomial::var(v))
    }

    /// The monomial `v^e`.
    pub fn var_pow(v: Var, e: i32) -> Self {
        Self::from_poly(Polynomial::term(C::one(), Monomial::var_pow(v, e)))
    }

    /// The term `c·m`.
    pub fn monomial(c: C, m: Monomial) -> Self {
        Self::from_poly(Polynomial::term(c, m))
    }

    pub fn from_poly(p: Polynomial<C>) -> Self {
        RationalFunction {
            num: p,
            den: Vec::new(),
        }
    }

    /// `num / den`.
    pub fn from_fraction(num: Polynomial<C>, den: Polynomial<C>) -> Result<Self> {
        Ok(Self::from_poly(num).mul(&Self::from_poly(den).inv()?))
    }

    /// Numerator with respect to the stored factored denominator.
    pub fn numerator(&self) -> &Polynomial<C> {
        &self.num
    }

    /// Stored denominator factors with multiplicities.
    pub fn denominator_factors(&self) -> &[(Polynomial<C>, u32)] {
        &self.den
    }

    /// Expanded denominator polynomial.
    pub fn denominator(&self) -> Polynomial<C> {
        self.den
            .iter()
            .fold(Polynomial::one(), |acc, (p, e)| acc.mul(&p.pow(*e)))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.as_constant().is_some_and(|c| c.is_one())
    }

    /// True when the function is a Laurent polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    /// The Laurent polynomial, if the denominator is trivial.
    pub fn as_polynomial(&self) -> Option<&Polynomial<C>> {
        if self.den.is_empty() {
            Some(&self.num)
        } else {
            None
        }
    }

    /// Constant value, if the function is constant.
    pub fn as_constant(&self) -> Option<C> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// Variables occurring in numerator or denominator.
    pub fn variables(&self) -> Vec<Var> {
        let mut vs = self.num.variables();
        for (p, _) in &self.den {
            vs.extend(p.variables());
        }
        vs.sort();
        vs.dedup();
        vs
    }

    /// Splits an arbitrary nonzero polynomial into (unit term, normalized
    /// factor) with `p = unit · factor`; `factor` is `None` for a single term.
    fn split_factor(p: &Polynomial<C>) -> (Polynomial<C>, Option<Polynomial<C>>) {
        if let Some((m, c)) = p.as_term() {
            return (Polynomial::term(c, m), None);
        }
        let m = p.monomial_content();
        let shifted = p.mul_term(&m.inv(), &C::one());
        let lc = shifted
            .canonical_leading_term()
            .map(|t| t.1.clone())
            .expect("nonzero polynomial");
        let factor = shifted.scale(&(C::one() / lc.clone()));
        (Polynomial::term(lc, m), Some(factor))
    }

    fn push_factor(den: &mut Vec<(Polynomial<C>, u32)>, p: Polynomial<C>, e: u32) {
        if e == 0 {
            return;
        }
        for f in den.iter_mut() {
            if f.0 == p {
                f.1 += e;
                return;
            }
        }
        den.push((p, e));
    }

    /// Cancels denominator factors that divide the numerator.
    fn cancel(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        for f in self.den.iter_mut() {
            while f.1 > 0 {
                match self.num.div_exact(&f.0) {
                    Some(q) => {
                        self.num = q;
                        f.1 -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|f| f.1 > 0);
        self
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    /// Common multiple of two factored denominators and the cofactors
    /// `L / a` and `L / b`.
    fn lcm(
        a: &[(Polynomial<C>, u32)],
        b: &[(Polynomial<C>, u32)],
    ) -> (Factors<C>, Polynomial<C>, Polynomial<C>) {
        let mut l: Vec<(Polynomial<C>, u32)> = a.to_vec();
        for (p, e) in b {
            match l.iter_mut().find(|f| f.0 == *p) {
                Some(f) => f.1 = f.1.max(*e),
                None => l.push((p.clone(), *e)),
            }
        }
        let exp_in = |d: &[(Polynomial<C>, u32)], p: &Polynomial<C>| {
            d.iter().find(|f| f.0 == *p).map(|f| f.1).unwrap_or(0)
        };
        let mut ca = Polynomial::one();
        let mut cb = Polynomial::one();
        for (p, e) in &l {
            let ea = e - exp_in(a, p);
            let eb = e - exp_in(b, p);
            if ea > 0 {
                ca = ca.mul(&p.pow(ea));
            }
            if eb > 0 {
                cb = cb.mul(&p.pow(eb));
            }
        }
        (l, ca, cb)
    }

    fn add_signed(&self, other: &Self, negate: bool) -> Self {
        let rhs = if negate {
            other.num.neg()
        } else {
            other.num.clone()
        };
        if self.den.is_empty() && other.den.is_empty() {
            return Self::from_poly(self.num.add(&rhs));
        }
        if self.den == other.den {
            return RationalFunction {
                num: self.num.add(&rhs),
                den: self.den.clone(),
            }
            .cancel();
        }
        let (l, ca, cb) = Self::lcm(&self.den, &other.den);
        RationalFunction {
            num: self.num.mul(&ca).add(&rhs.mul(&cb)),
            den: l,
        }
        .cancel()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_signed(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_signed(other, true)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let num = self.num.mul(&other.num);
        if self.den.is_empty() && other.den.is_empty() {
            return Self::from_poly(num);
        }
        let mut den = self.den.clone();
        for (p, e) in &other.den {
            Self::push_factor(&mut den, p.clone(), *e);
        }
        RationalFunction { num, den }.cancel()
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (unit, factor) = Self::split_factor(&self.num);
        let (um, uc) = unit.as_term().expect("unit term");
        let num = self.denominator().mul_term(&um.inv(), &(C::one() / uc));
        let mut den = Vec::new();
        if let Some(f) = factor {
            den.push((f, 1));
        }
        Ok(RationalFunction { num, den }.cancel())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// `self^e`; negative exponents require a nonzero base.
    pub fn pow(&self, e: i32) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        if e == 0 {
            return Ok(Self::one());
        }
        let e = e as u32;
        if let Some((m, c)) = self.num.as_term() {
            if self.den.is_empty() {
                let mut cc = C::one();
                for _ in 0..e {
                    cc = cc * c.clone();
                }
                return Ok(Self::monomial(cc, m.pow(e as i32)));
            }
        }
        Ok(RationalFunction {
            num: self.num.pow(e),
            den: self.den.iter().map(|(p, k)| (p.clone(), k * e)).collect(),
        })
    }

    /// Multiplies by a scalar.
    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Exact equality by cross-multiplication.
    pub fn rf_equal(&self, other: &Self) -> bool {
        if self.den.is_empty() && other.den.is_empty() {
            return self.num == other.num;
        }
        self.sub(other).is_zero()
    }

    /// Partial derivative by the quotient rule.
    pub fn differentiate(&self, v: Var) -> Self {
        let dn = self.num.differentiate(v);
        if self.den.is_empty() {
            return Self::from_poly(dn);
        }
        let involved: Vec<bool> = self
            .den
            .iter()
            .map(|(p, _)| p.variables().contains(&v))
            .collect();
        if !involved.iter().any(|&b| b) {
            return RationalFunction {
                num: dn,
                den: self.den.clone(),
            }
            .cancel();
        }
        let mut num = dn;
        let mut prod_all = Polynomial::one();
        for (k, (p, _)) in self.den.iter().enumerate() {
            if involved[k] {
                prod_all = prod_all.mul(p);
            }
        }
        num = num.mul(&prod_all);
        for (k, (p, e)) in self.den.iter().enumerate() {
            if !involved[k] {
                continue;
            }
            let mut others = Polynomial::one();
            for (j, (q, _)) in self.den.iter().enumerate() {
                if j != k && involved[j] {
                    others = others.mul(q);
                }
            }
            let ee = C::from_u32(*e).expect("integer embedding");
            let term = self.num.mul(&p.differentiate(v)).mul(&others).scale(&ee);
            num = num.sub(&term);
        }
        let den = self
            .den
            .iter()
            .enumerate()
            .map(|(k, (p, e))| (p.clone(), if involved[k] { e + 1 } else { *e }))
            .collect();
        RationalFunction { num, den }.cancel()
    }

    /// Simultaneous substitution of variables by rational functions.
    pub fn substitute(&self, sigma: &HashMap<Var, RationalFunction<C>>) -> Result<Self> {
        let mut cache: HashMap<(Var, i32), RationalFunction<C>> = HashMap::new();
        let mut subst_poly = |p: &Polynomial<C>| -> Result<RationalFunction<C>> {
            let mut total = RationalFunction::zero();
            for (m, c) in p.terms() {
                let mut t = RationalFunction::constant(c.clone());
                for &(v, e) in m.pairs() {
                    match sigma.get(&v) {
                        None => t = t.mul(&RationalFunction::var_pow(v, e)),
                        Some(img) => {
                            if e < 0 && img.is_zero() {
                                return Err(Error::SubstitutionSingular(v.name().to_string()));
                            }
                            let pw = match cache.get(&(v, e)) {
                                Some(x) => x.clone(),
                                None => {
                                    let x = img.pow(e)?;
                                    cache.insert((v, e), x.clone());
                                    x
                                }
                            };
                            t = t.mul(&pw);
                        }
                    }
                }
                total = total.add(&t);
            }
            Ok(total)
        };
        let mut out = subst_poly(&self.num)?;
        for (p, e) in &self.den {
            let img = subst_poly(p)?;
            if img.is_zero() {
                return Err(Error::SubstitutionSingular(format!("denominator {p}")));
            }
            out = out.div(&img.pow(*e as i32)?)?;
        }
        Ok(out)
    }

    /// Exact value at a point.
    pub fn eval_at(&self, point: &HashMap<Var, C>) -> Result<C> {
        let mut d = C::one();
        for (p, e) in &self.den {
            let x = p.eval(point)?;
            if x.is_zero() {
                return Err(Error::PoleAtPoint);
            }
            for _ in 0..*e {
                d = d * x.clone();
            }
        }
        Ok(self.num.eval(point)? / d)
    }

    /// Maps coefficients into another scalar type.
    pub fn map_coefficients<D: Scalar, F: Fn(&C) -> D + Copy>(&self, f: F) -> RationalFunction<D> {
        RationalFunction {
            num: self.num.map_coefficients(f),
            den: self
                .den
                .iter()
                .map(|(p, e)| (p.map_coefficients(f), *e))
                .collect(),
        }
    }
}

impl<C: Scalar> PartialEq for RationalFunction<C> {
    fn eq(&self, other: &Self) -> bool {
        self.rf_equal(other)
    }
}

impl<C: Scalar> Default for RationalFunction<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Scalar> From<Polynomial<C>> for RationalFunction<C> {
    fn from(p: Polynomial<C>) -> Self {
        Self::from_poly(p)
    }
}

impl<C: Scalar> fmt::Display for RationalFunction<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        let mut factors: Vec<String> = self
            .den
            .iter()
            .map(|(p, e)| {
                if *e == 1 {
                    format!("({p})")
                } else {
                    format!("({p})^{e}")
                }
            })
            .collect();
        factors.sort();
        write!(f, "({})/({})", self.num, factors.join("*"))
    }
}

impl<C: Scalar> fmt::Debug for RationalFunction<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! rf_binop {
    ($tr:path, $m:ident, $body:expr) => {
        impl<C: Scalar> $tr for RationalFunction<C> {
            type Output = RationalFunction<C>;
            fn $m(self, rhs: Self) -> Self {
                let f: fn(&Self, &Self) -> Self = $body;
                f(&self, &rhs)
            }
        }
        impl<'a, C: Scalar> $tr for &'a RationalFunction<C> {
            type Output = RationalFunction<C>;
            fn $m(self, rhs: Self) -> RationalFunction<C> {
                let f: fn(&RationalFunction<C>, &RationalFunction<C>) -> RationalFunction<C> =
                    $body;
                f(self, rhs)
            }
        }
    };
}

rf_binop!(std::ops::Add, add, |a, b| a.add(b));
rf_binop!(std::ops::Sub, sub, |a, b| a.sub(b));
rf_binop!(std::ops::Mul, mul, |a, b| a.mul(b));
rf_binop!(std::ops::Div, div, |a, b| a
    .div(b)
    .expect("division by the zero rational function"));

impl<C: Scalar> std::ops::Neg for RationalFunction<C> {
    type Output = RationalFunction<C>;
    fn neg(self) -> Self {
        RationalFunction::neg(&self)
    }
}

impl<C: Scalar> std::ops::Neg for &RationalFunction<C> {
    type Output = RationalFunction<C>;
    fn neg(self) -> RationalFunction<C> {
        RationalFunction::neg(self)
    }
}

impl<C: Scalar> Field for RationalFunction<C> {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn try_inv(&self) -> Result<Self> {
        self.inv()
    }
    fn from_int(n: i64) -> Self {
        RationalFunction::int(n)
    }
    fn is_one(&self) -> bool {
        RationalFunction::is_one(self)
    }
    fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }
}

impl<C: Scalar> Zero for RationalFunction<C> {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
}

impl<C: Scalar> One for RationalFunction<C> {
    fn one() -> Self {
        RationalFunction::one()
    }
}
