//! Supercommutative algebra over finitely many odd generators.
//!
//! [`Grassmann<C>`] is generic over the coefficient ring so that the same
//! Koszul-sign product serves plain Grassmann numbers (`C = Rational`) and
//! superfunctions (`C = Polynomial`).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Coefficient, Parity, Rational};

/// Maximum number of odd generators supported by the bitmask representation.
pub const MAX_GENERATORS: usize = 64;

/// A set of odd generator indices, stored as a bitmask in canonical
/// (strictly increasing) order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct OddIndex(u64);

impl OddIndex {
    pub const EMPTY: OddIndex = OddIndex(0);

    pub fn from_bits(bits: u64) -> Self {
        OddIndex(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn single(i: usize) -> Self {
        OddIndex(1u64 << i)
    }

    /// All generators `0..n`.
    pub fn full(n: usize) -> Self {
        if n == 64 {
            OddIndex(u64::MAX)
        } else {
            OddIndex((1u64 << n) - 1)
        }
    }

    /// Builds the index of the ordered product `ξ_{i1} ξ_{i2} ...`, returning
    /// the sign picked up by sorting, or `None` if a generator repeats.
    pub fn from_product(indices: &[usize]) -> Option<(OddIndex, i32)> {
        let mut acc = OddIndex::EMPTY;
        let mut sign = 1;
        for &i in indices {
            let (next, s) = acc.times(OddIndex::single(i))?;
            acc = next;
            sign *= s;
        }
        Some((acc, sign))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn parity(self) -> Parity {
        Parity::from_bit(self.len())
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 & (1u64 << i) != 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..64).filter(move |i| bits & (1u64 << i) != 0)
    }

    /// Highest generator index plus one.
    pub fn span(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// Number of set generators with index strictly below `i`.
    pub fn count_below(self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            (self.0 & ((1u64 << i) - 1)).count_ones() as usize
        }
    }

    /// Product of two monomials: merged index and reordering sign, or `None`
    /// when they share a generator.
    pub fn times(self, other: OddIndex) -> Option<(OddIndex, i32)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // Each generator of `other` must pass every larger generator of `self`.
        let mut swaps = 0u32;
        let mut rest = other.0;
        while rest != 0 {
            let j = rest.trailing_zeros();
            let above = if j == 63 { 0 } else { self.0 >> (j + 1) };
            swaps += above.count_ones();
            rest &= rest - 1;
        }
        let sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
        Some((OddIndex(self.0 | other.0), sign))
    }

    pub fn without(self, i: usize) -> OddIndex {
        OddIndex(self.0 & !(1u64 << i))
    }

    pub fn is_subset(self, other: OddIndex) -> bool {
        self.0 & !other.0 == 0
    }

    /// Order used for display: by degree, then lexicographic in indices.
    pub fn display_key(self) -> (usize, Vec<usize>) {
        (self.len(), self.indices().collect())
    }
}

/// Element of the Grassmann algebra `Λ_N ⊗ C`.
#[derive(Clone, PartialEq)]
pub struct Grassmann<C> {
    generators: usize,
    terms: BTreeMap<OddIndex, C>,
}

/// Grassmann number with exact rational coefficients.
pub type GrassmannElement = Grassmann<Rational>;

impl<C: Coefficient> Grassmann<C> {
    pub fn zero(generators: usize) -> Self {
        assert!(generators <= MAX_GENERATORS, "too many odd generators");
        Grassmann {
            generators,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(generators: usize) -> Self {
        Self::constant(generators, C::one())
    }

    pub fn constant(generators: usize, c: C) -> Self {
        let mut g = Self::zero(generators);
        g.add_term(OddIndex::EMPTY, c);
        g
    }

    /// The generator `ξ_i` (0-based).
    pub fn generator(generators: usize, i: usize) -> Result<Self> {
        if i >= generators {
            return Err(Error::IndexOutOfRange {
                index: i,
                size: generators,
            });
        }
        let mut g = Self::zero(generators);
        g.add_term(OddIndex::single(i), C::one());
        Ok(g)
    }

    pub fn monomial(generators: usize, index: OddIndex, c: C) -> Self {
        assert!(index.span() <= generators, "monomial outside algebra");
        let mut g = Self::zero(generators);
        g.add_term(index, c);
        g
    }

    pub fn from_terms(generators: usize, terms: impl IntoIterator<Item = (OddIndex, C)>) -> Self {
        let mut g = Self::zero(generators);
        for (k, c) in terms {
            assert!(k.span() <= generators, "monomial outside algebra");
            g.add_term(k, c);
        }
        g
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OddIndex, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, index: OddIndex) -> C {
        self.terms.get(&index).cloned().unwrap_or_else(C::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c · ξ^index` in place, dropping zero coefficients.
    pub fn add_term(&mut self, index: OddIndex, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&index) {
            Some(existing) => {
                let sum = existing.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&index);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(index, c);
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.generators != other.generators {
            return Err(Error::Dimension(format!(
                "Grassmann algebras with {} and {} generators",
                self.generators, other.generators
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.negated())
    }

    /// Koszul-sign product.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(self.generators);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                if let Some((k, sign)) = ka.times(*kb) {
                    let c = ca.clone() * cb.clone();
                    out.add_term(k, if sign < 0 { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn negated(&self) -> Self {
        self.map_coefficients(|c| -c.clone())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map_coefficients(|c| c.scale(r))
    }

    /// Multiplies every coefficient by a ring element (which is even).
    pub fn mul_coefficient(&self, c: &C) -> Self {
        self.map_coefficients(|x| x.clone() * c.clone())
    }

    pub fn map_coefficients(&self, f: impl Fn(&C) -> C) -> Self {
        let mut out = Self::zero(self.generators);
        for (k, c) in &self.terms {
            out.add_term(*k, f(c));
        }
        out
    }

    pub fn try_pow(&self, k: usize) -> Result<Self> {
        let mut acc = Self::one(self.generators);
        for _ in 0..k {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    /// Coefficient of the empty monomial.
    pub fn body(&self) -> C {
        self.coefficient(OddIndex::EMPTY)
    }

    pub fn soul(&self) -> Self {
        let mut s = self.clone();
        s.terms.remove(&OddIndex::EMPTY);
        s
    }

    pub fn even_part(&self) -> Self {
        self.filter(|k| !k.parity().is_odd())
    }

    pub fn odd_part(&self) -> Self {
        self.filter(|k| k.parity().is_odd())
    }

    pub fn filter(&self, keep: impl Fn(OddIndex) -> bool) -> Self {
        Grassmann {
            generators: self.generators,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(**k))
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    /// Parity when homogeneous; zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut parities = self.terms.keys().map(|k| k.parity());
        match parities.next() {
            None => Some(Parity::Even),
            Some(p) => parities.all(|q| q == p).then_some(p),
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Some(Parity::Even)
    }

    pub fn is_odd(&self) -> bool {
        self.is_zero() || self.parity() == Some(Parity::Odd)
    }

    /// Inverse of an even element whose body is a unit, by the finite
    /// Neumann series `b⁻¹ Σ_k (-b⁻¹ n)^k`.
    pub fn inv_even(&self) -> Result<Self> {
        if !self.is_even() {
            return Err(Error::Parity(
                "inverse requested for an element with odd component".into(),
            ));
        }
        let body = self.body();
        let body_inv = body.try_inverse().ok_or_else(|| {
            Error::NonInvertible(format!("body {body:?} is not a unit"))
        })?;
        let step = self.soul().mul_coefficient(&(-body_inv.clone()));
        let mut term = Self::constant(self.generators, body_inv.clone());
        let mut acc = term.clone();
        // Products of more than N/2 even nilpotents vanish.
        for _ in 0..=self.generators / 2 {
            term = term.try_mul(&step)?;
            if term.is_zero() {
                break;
            }
            acc = acc.try_add(&term)?;
        }
        Ok(acc)
    }

    /// Re-embeds into an algebra with at least as many generators.
    pub fn embed(&self, generators: usize) -> Result<Self> {
        if generators < self.generators {
            return Err(Error::Dimension(format!(
                "cannot embed Λ_{} into Λ_{}",
                self.generators, generators
            )));
        }
        Ok(Grassmann {
            generators,
            terms: self.terms.clone(),
        })
    }

    /// Moves generator `i` to `map[i]`; `map` must be injective.
    pub fn relabel(&self, generators: usize, map: &[usize]) -> Result<Self> {
        let mut out = Self::zero(generators);
        for (k, c) in &self.terms {
            let images: Vec<usize> = k.indices().map(|i| map[i]).collect();
            if images.iter().any(|&j| j >= generators) {
                return Err(Error::IndexOutOfRange {
                    index: *images.iter().max().unwrap(),
                    size: generators,
                });
            }
            let (idx, sign) = OddIndex::from_product(&images)
                .ok_or_else(|| Error::Structural("relabel map is not injective".into()))?;
            let c = c.clone();
            out.add_term(idx, if sign < 0 { -c } else { c });
        }
        Ok(out)
    }

    /// Left derivative `∂/∂ξ_j`: removes `ξ_j` with the sign of moving the
    /// derivative past the generators before it.
    pub fn derive(&self, j: usize) -> Result<Self> {
        if j >= self.generators {
            return Err(Error::IndexOutOfRange {
                index: j,
                size: self.generators,
            });
        }
        let mut out = Self::zero(self.generators);
        for (k, c) in &self.terms {
            if k.contains(j) {
                let c = c.clone();
                let c = if k.count_below(j) % 2 == 1 { -c } else { c };
                out.add_term(k.without(j), c);
            }
        }
        Ok(out)
    }
}

impl<C: Coefficient> Add for &Grassmann<C> {
    type Output = Grassmann<C>;
    fn add(self, rhs: &Grassmann<C>) -> Grassmann<C> {
        self.try_add(rhs).expect("Grassmann addition")
    }
}

impl<C: Coefficient> Sub for &Grassmann<C> {
    type Output = Grassmann<C>;
    fn sub(self, rhs: &Grassmann<C>) -> Grassmann<C> {
        self.try_sub(rhs).expect("Grassmann subtraction")
    }
}

impl<C: Coefficient> Mul for &Grassmann<C> {
    type Output = Grassmann<C>;
    fn mul(self, rhs: &Grassmann<C>) -> Grassmann<C> {
        self.try_mul(rhs).expect("Grassmann product")
    }
}

impl<C: Coefficient> Neg for &Grassmann<C> {
    type Output = Grassmann<C>;
    fn neg(self) -> Grassmann<C> {
        self.negated()
    }
}

impl<C: fmt::Debug> fmt::Debug for Grassmann<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Λ{}[", self.generators)?;
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}·{:?}", c, k.indices().collect::<Vec<_>>())?;
        }
        write!(f, "]")
    }
}

impl Grassmann<Rational> {
    pub fn from_rational(generators: usize, r: Rational) -> Self {
        Self::constant(generators, r)
    }
}
