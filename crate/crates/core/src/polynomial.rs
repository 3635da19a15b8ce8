//! Sparse multivariate Laurent polynomials with exact rational coefficients.
//!
//! Exponent vectors are stored with trailing zeros trimmed, so a polynomial
//! does not carry its variable count; the owning superdomain does.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, rat, Coefficient, Rational};

/// Exponent vector with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<i32>);

impl Monomial {
    pub fn new(mut exps: Vec<i32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponent(&self, i: usize) -> i32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    /// Number of leading variables this monomial can involve.
    pub fn span(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn has_negative(&self) -> bool {
        self.0.iter().any(|&e| e < 0)
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        Monomial::new((0..n).map(|i| self.exponent(i) + other.exponent(i)).collect())
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|e| -e).collect())
    }

    /// Sends variable `i` to variable `map[i]`.
    pub fn relabel(&self, map: &[usize]) -> Monomial {
        let n = self.0.iter().enumerate().filter(|(_, e)| **e != 0).map(|(i, _)| map[i] + 1).max().unwrap_or(0);
        let mut e = vec![0; n];
        for (i, &x) in self.0.iter().enumerate() {
            if x != 0 {
                e[map[i]] += x;
            }
        }
        Monomial::new(e)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn constant(c: Rational) -> Self {
        Polynomial::monomial(Monomial::one(), c)
    }

    pub fn from_int(c: i64) -> Self {
        Polynomial::constant(rat(c))
    }

    pub fn var(i: usize) -> Self {
        Polynomial::monomial(Monomial::var(i), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = Polynomial::default();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Polynomial::default();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Number of leading variables involved.
    pub fn span(&self) -> usize {
        self.terms.keys().map(Monomial::span).max().unwrap_or(0)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        self.is_constant().then(|| self.constant_term())
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(Monomial::has_negative)
    }

    /// The single term, if this polynomial is `c · x^k` with `c ≠ 0`.
    pub fn as_single_term(&self) -> Option<(&Monomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn scale(&self, r: &Rational) -> Polynomial {
        if r.is_zero() {
            return Polynomial::default();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(k, c)| (k.times(m), c.clone())).collect(),
        }
    }

    pub fn derive(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::default();
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            if e != 0 {
                let mut exps = m.0.clone();
                exps[i] -= 1;
                out.add_term(Monomial::new(exps), c * rat(e as i64));
            }
        }
        out
    }

    /// `self^k` for any integer `k`; negative powers need a unit.
    pub fn pow(&self, k: i32) -> Result<Polynomial> {
        let base = if k < 0 {
            self.try_inverse().ok_or_else(|| {
                Error::NonInvertible(format!("negative power of non-monomial {self}"))
            })?
        } else {
            self.clone()
        };
        let mut acc = Polynomial::one();
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let x = point.get(i).ok_or(Error::IndexOutOfRange {
                    index: i,
                    size: point.len(),
                })?;
                if e < 0 && x.is_zero() {
                    return Err(Error::Domain("negative power evaluated at zero".into()));
                }
                v *= num_traits::pow::Pow::pow(x, e);
            }
            total += v;
        }
        Ok(total)
    }

    /// Substitutes `values[i]` for variable `i`. Variables with negative
    /// exponents must be replaced by units (monomials).
    pub fn substitute(&self, values: &[Polynomial]) -> Result<Polynomial> {
        let mut cache: BTreeMap<(usize, i32), Polynomial> = BTreeMap::new();
        let mut out = Polynomial::default();
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = values.get(i).ok_or(Error::IndexOutOfRange {
                    index: i,
                    size: values.len(),
                })?;
                let p = match cache.get(&(i, e)) {
                    Some(p) => p.clone(),
                    None => {
                        let p = v.pow(e)?;
                        cache.insert((i, e), p.clone());
                        p
                    }
                };
                term = &term * &p;
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Sends variable `i` to variable `map[i]`.
    pub fn relabel(&self, map: &[usize]) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (m.relabel(map), c.clone())))
    }

    /// Shifts every variable index up by `offset`.
    pub fn shift(&self, offset: usize) -> Polynomial {
        let map: Vec<usize> = (0..self.span()).map(|i| i + offset).collect();
        self.relabel(&map)
    }

    /// Splits off the part involving only variables `< split` as coefficients
    /// of monomials in the variables `>= split`:
    /// `p = Σ_k low_k(x_{<split}) · high_k(x_{>=split})`.
    pub fn split_variables(&self, split: usize) -> Vec<(Polynomial, Monomial)> {
        let mut groups: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let low = Monomial::new(m.0.iter().take(split).copied().collect());
            let mut high = vec![0; m.0.len()];
            if split < m.0.len() {
                high[split..].copy_from_slice(&m.0[split..]);
            }
            groups
                .entry(Monomial::new(high))
                .or_default()
                .add_term(low, c.clone());
        }
        groups.into_iter().map(|(h, l)| (l, h)).collect()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.times(mb), ca * cb);
            }
        }
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Zero for Polynomial {
    fn zero() -> Self {
        Polynomial::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Polynomial {
    fn one() -> Self {
        Polynomial::constant(Rational::one())
    }
}

impl Coefficient for Polynomial {
    fn from_rational(r: &Rational) -> Self {
        Polynomial::constant(r.clone())
    }

    fn scale(&self, r: &Rational) -> Self {
        Polynomial::scale(self, r)
    }

    fn try_inverse(&self) -> Option<Self> {
        let (m, c) = self.as_single_term()?;
        Some(Polynomial::monomial(m.inverse(), c.recip()))
    }
}

impl Polynomial {
    /// Renders with the given variable names (`x1`, `x2`, ... by default).
    pub fn format_with(&self, names: &dyn Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        // Highest total degree first reads more naturally.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.total_degree().cmp(&a.0.total_degree()).then(a.0.cmp(b.0)));
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let negative = c < &Rational::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (v, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names(v)),
                    _ => factors.push(format!("{}^{}", names(v), e)),
                }
            }
            if factors.is_empty() || !abs.is_one() {
                factors.insert(0, format_rational(&abs));
            }
            out.push_str(&factors.join(" "));
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_with(&|i| format!("x{}", i + 1)))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn x(i: usize) -> Polynomial {
        Polynomial::var(i)
    }

    #[test]
    fn trailing_zero_normalization() {
        assert_eq!(Monomial::new(vec![1, 0, 0]), Monomial::var(0));
        assert_eq!(&x(1) * &x(1).pow(-1).unwrap(), Polynomial::one());
    }

    #[test]
    fn derivative_and_eval() {
        let p = &(&x(0) * &x(0)) * &x(1); // x1^2 x2
        assert_eq!(p.derive(0), (&x(0) * &x(1)).scale(&rat(2)));
        assert_eq!(p.eval(&[rat(3), rat(2)]).unwrap(), rat(18));
        let inv = x(0).pow(-2).unwrap();
        assert_eq!(inv.derive(0), x(0).pow(-3).unwrap().scale(&rat(-2)));
        assert!(inv.eval(&[rat(0)]).is_err());
    }

    #[test]
    fn substitution_composes() {
        // (x1+1)^2 at x1 -> 2 x1
        let p = (&x(0) + &Polynomial::one()).pow(2).unwrap();
        let q = p.substitute(&[x(0).scale(&rat(2))]).unwrap();
        let expected = (&x(0).scale(&rat(2)) + &Polynomial::one()).pow(2).unwrap();
        assert_eq!(q, expected);
        // Laurent term needs a monomial substitute.
        let r = x(0).pow(-1).unwrap();
        assert_eq!(
            r.substitute(&[x(0).scale(&rat(2))]).unwrap(),
            x(0).pow(-1).unwrap().scale(&ratio(1, 2))
        );
        assert!(r.substitute(&[&x(0) + &Polynomial::one()]).is_err());
    }

    #[test]
    fn split_variables_reassembles() {
        let p = &(&x(0) * &x(1)) + &(&x(2) + &x(0));
        let parts = p.split_variables(1);
        let mut back = Polynomial::zero();
        for (low, high) in parts {
            back = &back + &low.mul_monomial(&high);
        }
        assert_eq!(back, p);
    }

    #[test]
    fn display() {
        let p = &(&x(0) * &x(0)).scale(&ratio(3, 2)) - &Polynomial::from_int(1);
        assert_eq!(p.to_string(), "3/2 x1^2 - 1");
    }
}
