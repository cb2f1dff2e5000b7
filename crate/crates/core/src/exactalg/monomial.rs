//! Laurent monomials.

use std::cmp::Ordering;
use std::fmt;

use super::var::Var;

/// A Laurent monomial `∏ v^e`, stored as `(variable, exponent)` pairs sorted
/// by variable with no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<(Var, i32)>,
}

impl Monomial {
    /// The empty monomial `1`.
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    /// The monomial `v^e`.
    pub fn var_pow(v: Var, e: i32) -> Self {
        if e == 0 {
            Self::one()
        } else {
            Monomial { exps: vec![(v, e)] }
        }
    }

    /// Builds a monomial from arbitrary pairs; repeated variables are merged.
    pub fn from_pairs<I: IntoIterator<Item = (Var, i32)>>(pairs: I) -> Self {
        let mut exps: Vec<(Var, i32)> = pairs.into_iter().collect();
        exps.sort_by_key(|p| p.0);
        let mut out: Vec<(Var, i32)> = Vec::with_capacity(exps.len());
        for (v, e) in exps {
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => out.push((v, e)),
            }
        }
        out.retain(|p| p.1 != 0);
        Monomial { exps: out }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// The stored `(variable, exponent)` pairs.
    pub fn pairs(&self) -> &[(Var, i32)] {
        &self.exps
    }

    /// Exponent of `v` (zero when absent).
    pub fn exponent(&self, v: Var) -> i32 {
        match self.exps.binary_search_by_key(&v, |p| p.0) {
            Ok(i) => self.exps[i].1,
            Err(_) => 0,
        }
    }

    /// True when every exponent is nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.exps.iter().all(|p| p.1 > 0)
    }

    /// Total degree.
    pub fn degree(&self) -> i64 {
        self.exps.iter().map(|p| p.1 as i64).sum()
    }

    fn combine(&self, other: &Monomial, sign: i32) -> Monomial {
        let (a, b) = (&self.exps, &other.exps);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i >= a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, sign * b[j].1));
                j += 1;
            } else {
                let e = a[i].1 + sign * b[j].1;
                if e != 0 {
                    out.push((a[i].0, e));
                }
                i += 1;
                j += 1;
            }
        }
        Monomial { exps: out }
    }

    /// Product of monomials.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.combine(other, 1)
    }

    /// Quotient of monomials (always defined for Laurent monomials).
    pub fn div(&self, other: &Monomial) -> Monomial {
        self.combine(other, -1)
    }

    /// `self^e`.
    pub fn pow(&self, e: i32) -> Monomial {
        if e == 0 {
            return Monomial::one();
        }
        Monomial {
            exps: self.exps.iter().map(|&(v, x)| (v, x * e)).collect(),
        }
    }

    /// Inverse monomial.
    pub fn inv(&self) -> Monomial {
        self.pow(-1)
    }

    /// True when `other` divides `self` in the polynomial (nonnegative) sense,
    /// assuming both are polynomial monomials.
    pub fn divisible_by(&self, other: &Monomial) -> bool {
        other.exps.iter().all(|&(v, e)| self.exponent(v) >= e)
    }

    /// Componentwise minimum of exponents, treating absent variables as 0.
    pub fn gcd_laurent(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::new();
        let (a, b) = (&self.exps, &other.exps);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                if a[i].1 < 0 {
                    out.push(a[i]);
                }
                i += 1;
            } else if i >= a.len() || b[j].0 < a[i].0 {
                if b[j].1 < 0 {
                    out.push(b[j]);
                }
                j += 1;
            } else {
                let e = a[i].1.min(b[j].1);
                if e != 0 {
                    out.push((a[i].0, e));
                }
                i += 1;
                j += 1;
            }
        }
        Monomial { exps: out }
    }

    /// Pairs ordered by variable name, as used for printing.
    pub fn canonical_pairs(&self) -> Vec<(Var, i32)> {
        let mut p = self.exps.clone();
        p.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        p
    }

    /// Name-based lexicographic order: the first variable (by name) whose
    /// exponents differ decides, larger exponent first.
    pub fn canonical_cmp(&self, other: &Monomial) -> Ordering {
        let a = self.canonical_pairs();
        let b = other.canonical_pairs();
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, ea)), None) => return ea.cmp(&0),
                (None, Some(&(_, eb))) => return 0.cmp(&eb),
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.canonical_cmp(&vb) {
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                    Ordering::Less => return ea.cmp(&0),
                    Ordering::Greater => return 0.cmp(&eb),
                },
            }
        }
    }
}

impl Ord for Monomial {
    /// Lexicographic order with respect to the registry order of variables.
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.exps, &other.exps);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, ea)), None) => return ea.cmp(&0),
                (None, Some(&(_, eb))) => return 0.cmp(&eb),
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                    Ordering::Less => return ea.cmp(&0),
                    Ordering::Greater => return 0.cmp(&eb),
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.canonical_pairs().into_iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
