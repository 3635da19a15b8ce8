//! Coordinate superdomains `U^{m|n}` with polynomial superfunctions,
//! morphisms between them, pullback, and Jacobians.
//!
//! Variable layout on a shape with `m` even coordinates, `n` odd coordinates,
//! `params` even parameters and `aux` odd parameters:
//! polynomial variables `0..m` are the coordinates `x_i`, `m..m+params` the
//! even parameters; odd generators `0..n` are the coordinates `ξ_j`, and
//! `n..n+aux` the odd parameters. Parameters are spectators: they model the
//! even and odd coordinates of a generalized point.

mod function;
mod morphism;

pub use function::SuperFunction;
pub use morphism::SuperMorphism;

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::{rat, Rational};

/// A closed interval with optional endpoints (`None` means unbounded).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Option<Rational>,
    pub hi: Option<Rational>,
}

impl Interval {
    pub fn real_line() -> Self {
        Interval { lo: None, hi: None }
    }

    pub fn closed(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::Domain(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(Interval {
            lo: Some(lo),
            hi: Some(hi),
        })
    }

    /// `(lo, ∞)`, treated as closed at `lo` for sampling.
    pub fn from(lo: Rational) -> Self {
        Interval { lo: Some(lo), hi: None }
    }

    pub fn is_real_line(&self) -> bool {
        self.lo.is_none() && self.hi.is_none()
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_some() && self.hi.is_some()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.lo.as_ref().is_none_or(|lo| lo <= x) && self.hi.as_ref().is_none_or(|hi| x <= hi)
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&rat(0))
    }

    /// Three sample points: endpoints and midpoint when bounded.
    pub fn samples(&self) -> Vec<Rational> {
        let one = Rational::one();
        match (&self.lo, &self.hi) {
            (Some(lo), Some(hi)) => {
                let mid = (lo + hi) / rat(2);
                let mut s = vec![lo.clone(), mid, hi.clone()];
                s.dedup();
                s
            }
            (Some(lo), None) => {
                // Open at `lo` when `lo = 0` so Laurent terms stay defined.
                let start = if lo == &rat(0) { one.clone() } else { lo.clone() };
                vec![start.clone(), &start + &one, &start + rat(2)]
            }
            (None, Some(hi)) => vec![hi - rat(2), hi - &one, hi.clone()],
            (None, None) => vec![rat(-1), rat(0), one],
        }
    }

    /// Image under `x ↦ a·x + b`.
    pub fn affine_image(&self, a: &Rational, b: &Rational) -> Self {
        let map = |x: &Option<Rational>| x.as_ref().map(|v| a * v + b);
        if *a > rat(0) {
            Interval {
                lo: map(&self.lo),
                hi: map(&self.hi),
            }
        } else {
            Interval {
                lo: map(&self.hi),
                hi: map(&self.lo),
            }
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::scalar::format_rational as r;
        match (&self.lo, &self.hi) {
            (None, None) => write!(f, "R"),
            (Some(a), Some(b)) => write!(f, "[{},{}]", r(a), r(b)),
            (Some(a), None) => write!(f, "[{},inf)", r(a)),
            (None, Some(b)) => write!(f, "(-inf,{}]", r(b)),
        }
    }
}

/// Dimensions and even-coordinate ranges of a coordinate superdomain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SuperDomainShape {
    boxes: Vec<Interval>,
    n: usize,
    params: usize,
    aux: usize,
}

impl SuperDomainShape {
    pub fn new(boxes: Vec<Interval>, n: usize) -> Self {
        SuperDomainShape {
            boxes,
            n,
            params: 0,
            aux: 0,
        }
    }

    /// `ℝ^{m|n}`.
    pub fn euclidean(m: usize, n: usize) -> Self {
        Self::new(vec![Interval::real_line(); m], n)
    }

    pub fn with_params(mut self, params: usize, aux: usize) -> Self {
        self.params = params;
        self.aux = aux;
        self
    }

    pub fn m(&self) -> usize {
        self.boxes.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn params(&self) -> usize {
        self.params
    }

    pub fn aux(&self) -> usize {
        self.aux
    }

    pub fn boxes(&self) -> &[Interval] {
        &self.boxes
    }

    pub fn interval(&self, i: usize) -> &Interval {
        &self.boxes[i]
    }

    pub fn with_boxes(&self, boxes: Vec<Interval>) -> Result<Self> {
        if boxes.len() != self.m() {
            return Err(Error::Dimension(format!(
                "{} intervals for {} even coordinates",
                boxes.len(),
                self.m()
            )));
        }
        Ok(SuperDomainShape {
            boxes,
            ..self.clone()
        })
    }

    /// Number of odd generators of the function algebra (coordinates plus
    /// odd parameters).
    pub fn generators(&self) -> usize {
        self.n + self.aux
    }

    /// Number of polynomial variables (coordinates plus even parameters).
    pub fn variables(&self) -> usize {
        self.m() + self.params
    }

    /// `self × other`; parameters are shared and must agree.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_same_params(other)?;
        let mut boxes = self.boxes.clone();
        boxes.extend(other.boxes.iter().cloned());
        Ok(SuperDomainShape {
            boxes,
            n: self.n + other.n,
            params: self.params,
            aux: self.aux,
        })
    }

    pub(crate) fn check_same_params(&self, other: &Self) -> Result<()> {
        if self.params != other.params || self.aux != other.aux {
            return Err(Error::Dimension(format!(
                "parameter counts differ: ({}|{}) vs ({}|{})",
                self.params, self.aux, other.params, other.aux
            )));
        }
        Ok(())
    }

    /// Same dimensions and parameters, ignoring the boxes.
    pub fn same_dimensions(&self, other: &Self) -> bool {
        self.m() == other.m() && self.n == other.n && self.params == other.params && self.aux == other.aux
    }

    /// Sample grid over the coordinates, with even parameters set to 1.
    pub fn sample_points(&self) -> Vec<Vec<Rational>> {
        let mut points = vec![Vec::new()];
        for interval in &self.boxes {
            let mut next = Vec::new();
            for p in &points {
                for s in interval.samples() {
                    let mut q: Vec<Rational> = p.clone();
                    q.push(s);
                    next.push(q);
                }
            }
            points = next;
        }
        for p in &mut points {
            p.extend(std::iter::repeat_n(Rational::one(), self.params));
        }
        points
    }

    /// Polynomial-variable map embedding the first factor of `self × other`.
    pub(crate) fn left_variable_map(&self, other: &Self) -> Vec<usize> {
        let m = self.m();
        (0..m).chain((0..self.params).map(|i| m + other.m() + i)).collect()
    }

    pub(crate) fn right_variable_map(&self, other: &Self) -> Vec<usize> {
        let (m, mo) = (self.m(), other.m());
        (0..mo).map(|i| m + i).chain((0..self.params).map(|i| m + mo + i)).collect()
    }

    pub(crate) fn left_generator_map(&self, other: &Self) -> Vec<usize> {
        let n = self.n;
        (0..n).chain((0..self.aux).map(|i| n + other.n + i)).collect()
    }

    pub(crate) fn right_generator_map(&self, other: &Self) -> Vec<usize> {
        let (n, no) = (self.n, other.n);
        (0..no).map(|i| n + i).chain((0..self.aux).map(|i| n + no + i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_cover_corners() {
        let s = SuperDomainShape::new(
            vec![Interval::closed(rat(0), rat(2)).unwrap(), Interval::real_line()],
            1,
        );
        let pts = s.sample_points();
        assert_eq!(pts.len(), 9);
        assert!(pts.contains(&vec![rat(0), rat(-1)]));
        assert!(pts.contains(&vec![rat(2), rat(1)]));
    }

    #[test]
    fn product_maps() {
        let a = SuperDomainShape::euclidean(1, 2).with_params(1, 1);
        let b = SuperDomainShape::euclidean(2, 1).with_params(1, 1);
        let ab = a.product(&b).unwrap();
        assert_eq!((ab.m(), ab.n(), ab.params(), ab.aux()), (3, 3, 1, 1));
        assert_eq!(a.left_variable_map(&b), vec![0, 3]);
        assert_eq!(a.right_variable_map(&b), vec![1, 2, 3]);
        assert_eq!(a.left_generator_map(&b), vec![0, 1, 3]);
        assert_eq!(a.right_generator_map(&b), vec![2, 3]);
    }
}
