use std::fmt;

use crate::error::{Error, Result};
use crate::grassmann::{Grassmann, OddIndex};
use num_traits::One;

use crate::polynomial::Polynomial;
use crate::scalar::{format_rational, Parity, Rational};

use super::SuperDomainShape;

/// `Σ_α f_α(x) ξ^α` on a superdomain, with polynomial coefficients `f_α`.
#[derive(Clone, PartialEq)]
pub struct SuperFunction {
    shape: SuperDomainShape,
    value: Grassmann<Polynomial>,
}

impl SuperFunction {
    pub fn from_value(shape: &SuperDomainShape, value: Grassmann<Polynomial>) -> Result<Self> {
        if value.generators() != shape.generators() {
            return Err(Error::Dimension(format!(
                "value has {} odd generators, shape needs {}",
                value.generators(),
                shape.generators()
            )));
        }
        let vars = shape.variables();
        if value.terms().any(|(_, p)| p.span() > vars) {
            return Err(Error::Dimension(format!(
                "coefficient uses more than {vars} even variables"
            )));
        }
        Ok(SuperFunction {
            shape: shape.clone(),
            value,
        })
    }

    pub fn zero(shape: &SuperDomainShape) -> Self {
        SuperFunction {
            shape: shape.clone(),
            value: Grassmann::zero(shape.generators()),
        }
    }

    pub fn one(shape: &SuperDomainShape) -> Self {
        Self::polynomial(shape, Polynomial::from_int(1))
    }

    pub fn constant(shape: &SuperDomainShape, c: Rational) -> Self {
        Self::polynomial(shape, Polynomial::constant(c))
    }

    /// A purely even function; the polynomial must fit the shape.
    pub fn polynomial(shape: &SuperDomainShape, p: Polynomial) -> Self {
        assert!(p.span() <= shape.variables(), "polynomial outside the shape's variables");
        SuperFunction {
            shape: shape.clone(),
            value: Grassmann::constant(shape.generators(), p),
        }
    }

    /// `p(x) · ξ^index` (the index ranges over coordinates and odd parameters).
    pub fn term(shape: &SuperDomainShape, p: Polynomial, index: OddIndex) -> Self {
        assert!(p.span() <= shape.variables(), "polynomial outside the shape's variables");
        SuperFunction {
            shape: shape.clone(),
            value: Grassmann::monomial(shape.generators(), index, p),
        }
    }

    /// Even coordinate `x_i`.
    pub fn even_coordinate(shape: &SuperDomainShape, i: usize) -> Result<Self> {
        check_index(i, shape.m())?;
        Ok(Self::polynomial(shape, Polynomial::var(i)))
    }

    /// Odd coordinate `ξ_j`.
    pub fn odd_coordinate(shape: &SuperDomainShape, j: usize) -> Result<Self> {
        check_index(j, shape.n())?;
        Ok(Self::term(shape, Polynomial::from_int(1), OddIndex::single(j)))
    }

    /// Even parameter `i` (polynomial variable `m + i`).
    pub fn even_param(shape: &SuperDomainShape, i: usize) -> Result<Self> {
        check_index(i, shape.params())?;
        Ok(Self::polynomial(shape, Polynomial::var(shape.m() + i)))
    }

    /// Odd parameter `k` (generator `n + k`).
    pub fn odd_param(shape: &SuperDomainShape, k: usize) -> Result<Self> {
        check_index(k, shape.aux())?;
        Ok(Self::term(shape, Polynomial::from_int(1), OddIndex::single(shape.n() + k)))
    }

    pub fn shape(&self) -> &SuperDomainShape {
        &self.shape
    }

    pub fn value(&self) -> &Grassmann<Polynomial> {
        &self.value
    }

    pub fn into_value(self) -> Grassmann<Polynomial> {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn parity(&self) -> Option<Parity> {
        self.value.parity()
    }

    /// Coefficient `f_α` of `ξ^α`.
    pub fn coefficient(&self, index: OddIndex) -> Polynomial {
        self.value.coefficient(index)
    }

    /// Coefficient of `ξ_1⋯ξ_n` as a function of the odd parameters: the
    /// Grassmann element over the `aux` generators whose terms are the
    /// coefficients of `ξ_1⋯ξ_n ·(aux monomial)`.
    pub fn top_component(&self) -> Grassmann<Polynomial> {
        let n = self.shape.n();
        let top = OddIndex::full(n);
        let mut out = Grassmann::zero(self.shape.aux());
        for (k, c) in self.value.terms() {
            if k.bits() & top.bits() == top.bits() {
                // ξ^top · η^β with top before every aux generator.
                out.add_term(OddIndex::from_bits(k.bits() >> n), c.clone());
            }
        }
        out
    }

    /// Terms `(α, f_α)` over coordinates and odd parameters.
    pub fn terms(&self) -> impl Iterator<Item = (&OddIndex, &Polynomial)> {
        self.value.terms()
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if !self.shape.same_dimensions(&other.shape) {
            return Err(Error::Dimension(format!(
                "superfunctions on different shapes: {:?} vs {:?}",
                self.shape, other.shape
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(SuperFunction {
            shape: self.shape.clone(),
            value: self.value.try_add(&other.value)?,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(SuperFunction {
            shape: self.shape.clone(),
            value: self.value.try_sub(&other.value)?,
        })
    }

    /// Supercommutative product.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(SuperFunction {
            shape: self.shape.clone(),
            value: self.value.try_mul(&other.value)?,
        })
    }

    pub fn negated(&self) -> Self {
        SuperFunction {
            shape: self.shape.clone(),
            value: self.value.negated(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        SuperFunction {
            shape: self.shape.clone(),
            value: self.value.scale(r),
        }
    }

    pub fn mul_polynomial(&self, p: &Polynomial) -> Self {
        SuperFunction {
            shape: self.shape.clone(),
            value: self.value.mul_coefficient(p),
        }
    }

    /// `∂/∂x_i`.
    pub fn derive_even(&self, i: usize) -> Result<Self> {
        check_index(i, self.shape.m())?;
        Ok(self.derive_variable(i))
    }

    /// Derivative in polynomial variable `i` (coordinate or even parameter).
    pub(crate) fn derive_variable(&self, i: usize) -> Self {
        SuperFunction {
            shape: self.shape.clone(),
            value: self.value.map_coefficients(|p| p.derive(i)),
        }
    }

    /// Left derivative `∂/∂ξ_j`.
    pub fn derive_odd(&self, j: usize) -> Result<Self> {
        check_index(j, self.shape.n())?;
        self.derive_generator(j)
    }

    pub(crate) fn derive_generator(&self, j: usize) -> Result<Self> {
        Ok(SuperFunction {
            shape: self.shape.clone(),
            value: self.value.derive(j)?,
        })
    }

    /// Same value viewed on another shape of identical dimensions.
    pub fn with_shape(&self, shape: &SuperDomainShape) -> Result<Self> {
        if !self.shape.same_dimensions(shape) {
            return Err(Error::Dimension("reshaping to different dimensions".into()));
        }
        Ok(SuperFunction {
            shape: shape.clone(),
            value: self.value.clone(),
        })
    }

    /// Moves polynomial variables by `var_map` and odd generators by
    /// `gen_map` into functions on `shape`.
    pub(crate) fn relabel(&self, shape: &SuperDomainShape, var_map: &[usize], gen_map: &[usize]) -> Result<Self> {
        let moved = self.value.relabel(shape.generators(), gen_map)?;
        Self::from_value(shape, moved.map_coefficients(|p| p.relabel(var_map)))
    }

    /// Pulls back along the projection `self.shape × other → self.shape`.
    pub fn extend_left(&self, other: &SuperDomainShape) -> Result<Self> {
        let product = self.shape.product(other)?;
        self.relabel(
            &product,
            &self.shape.left_variable_map(other),
            &self.shape.left_generator_map(other),
        )
    }

    /// Pulls back along the projection `other × self.shape → self.shape`.
    pub fn extend_right(&self, other: &SuperDomainShape) -> Result<Self> {
        let product = other.product(&self.shape)?;
        self.relabel(
            &product,
            &other.right_variable_map(&self.shape),
            &other.right_generator_map(&self.shape),
        )
    }

    /// Value at a point of the even coordinates and parameters, as a
    /// Grassmann number.
    pub fn eval_body_point(&self, point: &[Rational]) -> Result<Grassmann<Rational>> {
        let mut out = Grassmann::zero(self.shape.generators());
        for (k, p) in self.value.terms() {
            out.add_term(*k, p.eval(point)?);
        }
        Ok(out)
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.value.terms().any(|(_, p)| p.has_negative_exponents())
    }

    /// Human-readable form with `x1.. xi1..`, parameters `g1..`, `eta1..`.
    pub fn format(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let m = self.shape.m();
        let n = self.shape.n();
        let var_name = move |i: usize| if i < m { format!("x{}", i + 1) } else { format!("g{}", i - m + 1) };
        let gen_name = move |j: usize| if j < n { format!("xi{}", j + 1) } else { format!("eta{}", j - n + 1) };
        let mut parts = Vec::new();
        for (k, p) in self.value.terms() {
            let odd: Vec<String> = k.indices().map(gen_name).collect();
            let coeff = p.format_with(&var_name);
            if odd.is_empty() {
                parts.push(coeff);
            } else if let Some((_, c)) = p.as_single_term().filter(|(m, _)| m.is_one()) {
                let odd = odd.join(" ");
                parts.push(if c.is_one() {
                    odd
                } else {
                    format!("{} {odd}", format_rational(c))
                });
            } else {
                parts.push(format!("({coeff}) {}", odd.join(" ")));
            }
        }
        parts.join(" + ")
    }
}

fn check_index(i: usize, size: usize) -> Result<()> {
    if i >= size {
        return Err(Error::IndexOutOfRange { index: i, size });
    }
    Ok(())
}

impl fmt::Display for SuperFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format())
    }
}

impl fmt::Debug for SuperFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuperFunction({})", self.format())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn shape() -> SuperDomainShape {
        SuperDomainShape::euclidean(1, 2)
    }

    fn x() -> SuperFunction {
        SuperFunction::even_coordinate(&shape(), 0).unwrap()
    }

    fn xi(j: usize) -> SuperFunction {
        SuperFunction::odd_coordinate(&shape(), j).unwrap()
    }

    #[test]
    fn products() {
        let x_xi = x().try_mul(&xi(0)).unwrap();
        assert_eq!(x_xi, SuperFunction::term(&shape(), Polynomial::var(0), OddIndex::single(0)));
        assert!(xi(0).try_mul(&xi(0)).unwrap().is_zero());
        let n = xi(0).try_mul(&xi(1)).unwrap();
        let lhs = x().try_add(&n).unwrap().try_mul(&x().try_sub(&n).unwrap()).unwrap();
        assert_eq!(lhs, x().try_mul(&x()).unwrap());
    }

    #[test]
    fn derivatives() {
        let f = SuperFunction::term(&shape(), Polynomial::var(0).pow(2).unwrap(), OddIndex::single(0));
        assert_eq!(
            f.derive_even(0).unwrap(),
            SuperFunction::term(&shape(), Polynomial::var(0).scale(&rat(2)), OddIndex::single(0))
        );
        let f = xi(0).try_mul(&xi(1)).unwrap();
        assert_eq!(f.derive_odd(0).unwrap(), xi(1));
        assert_eq!(f.derive_odd(1).unwrap(), xi(0).negated());
    }

    #[test]
    fn top_component_keeps_aux() {
        let s = SuperDomainShape::euclidean(0, 1).with_params(0, 1);
        let f = SuperFunction::odd_coordinate(&s, 0)
            .unwrap()
            .try_mul(&SuperFunction::odd_param(&s, 0).unwrap())
            .unwrap();
        let top = f.top_component();
        assert_eq!(top.coefficient(OddIndex::single(0)), Polynomial::from_int(1));
    }
}
