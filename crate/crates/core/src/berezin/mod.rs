//! Berezinian densities `ω = D(x,ξ)·ρ` on coordinate superdomains and
//! their exact integration.
//!
//! `∫ D(x,ξ)·g = (-1)^{mn} ∫ g_{1…1}(x) dx`, where `g_{1…1}` is the
//! coefficient of `ξ_1⋯ξ_n`. Odd parameters ride along as spectators to the
//! right of `ξ_1⋯ξ_n`. Each Gaussian axis integrates against `e^{-x²/2}` and
//! contributes one factor of `s = √(2π)`, which is tracked as an exponent.

mod fibre;

pub use fibre::{decompose, fibre_integrate, fibre_integrate_tensor, product_section, TensorTerm};

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::grassmann::{Grassmann, GrassmannElement, OddIndex};
use crate::polynomial::{Monomial, Polynomial};
use crate::scalar::{format_rational, rat, sign_pow, Parity, Rational, Scalar};
use crate::superdomain::{Interval, SuperDomainShape, SuperFunction, SuperMorphism};

/// `s^gauss_exponent · D(x,ξ)·density`.
#[derive(Debug, Clone, PartialEq)]
pub struct BerezinSection {
    density: SuperFunction,
    gauss_exponent: i32,
}

impl BerezinSection {
    pub fn new(density: SuperFunction) -> Self {
        BerezinSection {
            density,
            gauss_exponent: 0,
        }
    }

    pub fn with_gauss_exponent(density: SuperFunction, gauss_exponent: i32) -> Self {
        let gauss_exponent = if density.is_zero() { 0 } else { gauss_exponent };
        BerezinSection {
            density,
            gauss_exponent,
        }
    }

    /// `D(x,ξ)` itself.
    pub fn standard(shape: &SuperDomainShape) -> Self {
        Self::new(SuperFunction::one(shape))
    }

    pub fn shape(&self) -> &SuperDomainShape {
        self.density.shape()
    }

    pub fn density(&self) -> &SuperFunction {
        &self.density
    }

    pub fn gauss_exponent(&self) -> i32 {
        self.gauss_exponent
    }

    pub fn is_zero(&self) -> bool {
        self.density.is_zero()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(BerezinSection {
                density: other.density.with_shape(self.shape())?,
                gauss_exponent: other.gauss_exponent,
            });
        }
        if self.gauss_exponent != other.gauss_exponent {
            return Err(Error::GaussExponentMismatch {
                left: self.gauss_exponent,
                right: other.gauss_exponent,
            });
        }
        Ok(Self::with_gauss_exponent(
            self.density.try_add(&other.density)?,
            self.gauss_exponent,
        ))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::with_gauss_exponent(
            self.density.scale(c.value()),
            self.gauss_exponent + c.gauss_exponent(),
        )
    }

    /// `f · ω` for the left module structure: since `D(x,ξ)` has parity `n`,
    /// `f·(D ρ) = (-1)^{|f|n} D (f ρ)` for homogeneous `f`.
    pub fn left_mul(&self, f: &SuperFunction) -> Result<Self> {
        let n = self.shape().n();
        let mut density = SuperFunction::zero(self.shape());
        for part in homogeneous_parts(f) {
            let sign = match part.parity() {
                Some(Parity::Odd) => sign_pow(n),
                _ => 1,
            };
            let term = part.try_mul(&self.density)?;
            density = density.try_add(&if sign < 0 { term.negated() } else { term })?;
        }
        Ok(Self::with_gauss_exponent(density, self.gauss_exponent))
    }

    /// The same density on a shape with the same dimensions but other boxes.
    pub fn with_shape(&self, shape: &SuperDomainShape) -> Result<Self> {
        Ok(BerezinSection {
            density: self.density.with_shape(shape)?,
            gauss_exponent: self.gauss_exponent,
        })
    }
}

impl fmt::Display for BerezinSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gauss_exponent != 0 {
            write!(f, "s^{} * ", self.gauss_exponent)?;
        }
        write!(f, "D * ({})", self.density)
    }
}

/// Even and odd parts of a superfunction.
pub(crate) fn homogeneous_parts(f: &SuperFunction) -> Vec<SuperFunction> {
    let v = f.value();
    [v.even_part(), v.odd_part()]
        .into_iter()
        .filter(|p| !p.is_zero())
        .map(|p| SuperFunction::from_value(f.shape(), p).expect("same shape"))
        .collect()
}

/// How one even axis is integrated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxisMeasure {
    /// `∫_ℝ x^k e^{-x²/2} dx`, an exact multiple of `s = √(2π)`.
    Gaussian,
    /// `∫_a^b x^k dx` over a rational interval.
    Interval(Rational, Rational),
}

impl AxisMeasure {
    /// `∫ x^k` under this measure; the Gaussian case omits the factor `s`.
    pub fn moment(&self, k: i32) -> Result<Rational> {
        match self {
            AxisMeasure::Gaussian => {
                if k < 0 {
                    return Err(Error::Backend("Gaussian moments of negative powers diverge".into()));
                }
                if k % 2 == 1 {
                    return Ok(Rational::zero());
                }
                // (k-1)!!
                let mut acc = Rational::one();
                let mut j = k - 1;
                while j > 1 {
                    acc *= rat(j as i64);
                    j -= 2;
                }
                Ok(acc)
            }
            AxisMeasure::Interval(a, b) => {
                if a == b {
                    return Ok(Rational::zero());
                }
                if k < 0 && a <= &rat(0) && &rat(0) <= b {
                    return Err(Error::Backend(format!(
                        "x^{k} is not integrable over [{}, {}]",
                        format_rational(a),
                        format_rational(b)
                    )));
                }
                if k == -1 {
                    return Err(Error::NonRational("integral of 1/x is a logarithm".into()));
                }
                let e = k + 1;
                let p = |x: &Rational| num_traits::pow::Pow::pow(x, e);
                Ok((p(b) - p(a)) / rat(e as i64))
            }
        }
    }

    pub fn gauss_exponent(&self) -> i32 {
        match self {
            AxisMeasure::Gaussian => 1,
            AxisMeasure::Interval(..) => 0,
        }
    }
}

impl fmt::Display for AxisMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxisMeasure::Gaussian => write!(f, "gaussian"),
            AxisMeasure::Interval(a, b) => write!(f, "[{},{}]", format_rational(a), format_rational(b)),
        }
    }
}

/// One measure per even coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegrationBackend {
    axes: Vec<AxisMeasure>,
}

impl IntegrationBackend {
    pub fn new(axes: Vec<AxisMeasure>) -> Self {
        IntegrationBackend { axes }
    }

    pub fn gaussian(m: usize) -> Self {
        Self::new(vec![AxisMeasure::Gaussian; m])
    }

    pub fn boxed(bounds: &[(Rational, Rational)]) -> Result<Self> {
        let axes = bounds
            .iter()
            .map(|(a, b)| {
                if a > b {
                    Err(Error::Backend(format!("empty box side [{a}, {b}]")))
                } else {
                    Ok(AxisMeasure::Interval(a.clone(), b.clone()))
                }
            })
            .collect::<Result<_>>()?;
        Ok(Self::new(axes))
    }

    /// Gaussian on unbounded axes, the box itself on bounded ones.
    pub fn for_shape(shape: &SuperDomainShape) -> Result<Self> {
        let axes = shape
            .boxes()
            .iter()
            .map(|i| match (&i.lo, &i.hi) {
                (None, None) => Ok(AxisMeasure::Gaussian),
                (Some(a), Some(b)) => Ok(AxisMeasure::Interval(a.clone(), b.clone())),
                _ => Err(Error::Backend(format!("half-infinite axis {i} has no exact backend"))),
            })
            .collect::<Result<_>>()?;
        Ok(Self::new(axes))
    }

    pub fn axes(&self) -> &[AxisMeasure] {
        &self.axes
    }

    pub fn gauss_exponent(&self) -> i32 {
        self.axes.iter().map(AxisMeasure::gauss_exponent).sum()
    }

    /// Reorders axes: axis `i` of the result is axis `order[i]` of `self`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        Self::new(order.iter().map(|&i| self.axes[i].clone()).collect())
    }

    pub fn split_at(&self, m: usize) -> (Self, Self) {
        (Self::new(self.axes[..m].to_vec()), Self::new(self.axes[m..].to_vec()))
    }

    fn check_shape(&self, shape: &SuperDomainShape) -> Result<()> {
        if self.axes.len() != shape.m() {
            return Err(Error::Backend(format!(
                "{} backend axes for {} even coordinates",
                self.axes.len(),
                shape.m()
            )));
        }
        for (axis, interval) in self.axes.iter().zip(shape.boxes()) {
            match axis {
                AxisMeasure::Gaussian if !interval.is_real_line() => {
                    return Err(Error::Backend(format!("Gaussian axis over bounded range {interval}")));
                }
                AxisMeasure::Interval(a, b) if !(interval.contains(a) && interval.contains(b)) => {
                    return Err(Error::Backend(format!(
                        "box side [{}, {}] leaves the domain {interval}",
                        format_rational(a),
                        format_rational(b)
                    )));
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Integral of a polynomial in the even coordinates (no parameters).
    pub fn integrate_polynomial(&self, p: &Polynomial) -> Result<Rational> {
        let mut total = Rational::zero();
        for (mono, c) in p.terms() {
            if mono.span() > self.axes.len() {
                return Err(Error::Dimension("polynomial involves non-integrated variables".into()));
            }
            let mut v = c.clone();
            for (axis, measure) in self.axes.iter().enumerate() {
                v *= measure.moment(mono.exponent(axis))?;
                if v.is_zero() {
                    break;
                }
            }
            total += v;
        }
        Ok(total)
    }
}

impl fmt::Display for IntegrationBackend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.axes.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Value of a Berezin integral: a Grassmann number in the odd parameters
/// times `s^gauss_exponent`.
#[derive(Debug, Clone, PartialEq)]
pub struct Integral {
    value: GrassmannElement,
    gauss_exponent: i32,
}

impl Integral {
    pub fn new(value: GrassmannElement, gauss_exponent: i32) -> Self {
        let gauss_exponent = if value.is_zero() { 0 } else { gauss_exponent };
        Integral { value, gauss_exponent }
    }

    pub fn value(&self) -> &GrassmannElement {
        &self.value
    }

    pub fn gauss_exponent(&self) -> i32 {
        self.gauss_exponent
    }

    /// The integral as a scalar; fails if odd parameters survive.
    pub fn scalar(&self) -> Result<Scalar> {
        if !self.value.soul().is_zero() {
            return Err(Error::Structural("integral depends on odd parameters".into()));
        }
        Ok(Scalar::new(self.value.body(), self.gauss_exponent))
    }
}

impl fmt::Display for Integral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.scalar() {
            Ok(s) => write!(f, "{s}"),
            Err(_) => write!(f, "{}", crate::text::format_integral(self)),
        }
    }
}

/// `∫ ω` under the backend.
pub fn integrate(omega: &BerezinSection, backend: &IntegrationBackend) -> Result<Integral> {
    let shape = omega.shape();
    if shape.params() != 0 {
        return Err(Error::Dimension("cannot integrate with free even parameters".into()));
    }
    backend.check_shape(shape)?;
    let sign = sign_pow(shape.m() * shape.n());
    let top = omega.density().top_component();
    let mut value = Grassmann::zero(shape.aux());
    for (k, p) in top.terms() {
        let v = backend.integrate_polynomial(p)?;
        value.add_term(*k, if sign < 0 { -v } else { v });
    }
    Ok(Integral::new(
        value,
        omega.gauss_exponent() + backend.gauss_exponent(),
    ))
}

/// `integrate` for sections without odd parameters.
pub fn integrate_scalar(omega: &BerezinSection, backend: &IntegrationBackend) -> Result<Scalar> {
    integrate(omega, backend)?.scalar()
}

/// `φ^* ω = Ber(J φ) · φ^*(ρ) · D(x,ξ)` on the source of `φ`.
pub fn pullback_section(phi: &SuperMorphism, omega: &BerezinSection) -> Result<BerezinSection> {
    if !phi.target().same_dimensions(omega.shape()) {
        return Err(Error::Dimension("section and morphism target differ".into()));
    }
    let ber = phi.berezinian()?;
    let density = ber.try_mul(&phi.pullback(omega.density())?)?;
    Ok(BerezinSection::with_gauss_exponent(density, omega.gauss_exponent()))
}

/// `Σ_α c_α x^{a_α} ξ^α` as a density, for tests and examples.
pub fn monomial_density(shape: &SuperDomainShape, terms: &[(i64, &[i32], &[usize])]) -> BerezinSection {
    let mut f = SuperFunction::zero(shape);
    for (c, exps, odd) in terms {
        let (idx, sign) = OddIndex::from_product(odd).expect("distinct odd indices");
        let p = Polynomial::monomial(Monomial::new(exps.to_vec()), rat(c * sign as i64));
        f = f.try_add(&SuperFunction::term(shape, p, idx)).expect("same shape");
    }
    BerezinSection::new(f)
}

/// Whether an interval lies inside another.
pub(crate) fn interval_within(inner: &Interval, outer: &Interval) -> bool {
    let lo_ok = match (&outer.lo, &inner.lo) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(o), Some(i)) => o <= i,
    };
    let hi_ok = match (&outer.hi, &inner.hi) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(o), Some(i)) => i <= o,
    };
    lo_ok && hi_ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn pure_berezin_integral() {
        let s = SuperDomainShape::euclidean(0, 1);
        let omega = monomial_density(&s, &[(5, &[], &[]), (7, &[], &[0])]);
        assert_eq!(
            integrate_scalar(&omega, &IntegrationBackend::gaussian(0)).unwrap(),
            Scalar::from_int(7)
        );
    }

    #[test]
    fn gaussian_sign_and_moment() {
        let s = SuperDomainShape::euclidean(1, 1);
        let omega = monomial_density(&s, &[(1, &[2], &[0])]);
        assert_eq!(
            integrate_scalar(&omega, &IntegrationBackend::gaussian(1)).unwrap(),
            Scalar::new(rat(-1), 1)
        );
    }

    #[test]
    fn gaussian_moments() {
        let g = AxisMeasure::Gaussian;
        assert_eq!(g.moment(0).unwrap(), rat(1));
        assert_eq!(g.moment(3).unwrap(), rat(0));
        assert_eq!(g.moment(4).unwrap(), rat(3));
        assert_eq!(g.moment(6).unwrap(), rat(15));
    }

    #[test]
    fn box_integral() {
        let s = SuperDomainShape::new(vec![Interval::closed(rat(0), rat(1)).unwrap()], 0);
        let omega = monomial_density(&s, &[(1, &[1], &[])]);
        let backend = IntegrationBackend::for_shape(&s).unwrap();
        assert_eq!(integrate_scalar(&omega, &backend).unwrap(), Scalar::rational(ratio(1, 2)));
    }

    #[test]
    fn backend_mismatch() {
        let s = SuperDomainShape::new(vec![Interval::closed(rat(0), rat(1)).unwrap()], 0);
        let omega = BerezinSection::standard(&s);
        assert!(matches!(
            integrate(&omega, &IntegrationBackend::gaussian(1)),
            Err(Error::Backend(_))
        ));
        let s = SuperDomainShape::new(vec![Interval::closed(rat(1), rat(2)).unwrap()], 0);
        let omega = monomial_density(&s, &[(1, &[-1], &[])]);
        assert!(matches!(
            integrate(&omega, &IntegrationBackend::for_shape(&s).unwrap()),
            Err(Error::NonRational(_))
        ));
    }

    #[test]
    fn classical_substitution() {
        let s1 = SuperDomainShape::new(vec![Interval::closed(rat(0), rat(1)).unwrap()], 0);
        let s2 = SuperDomainShape::new(vec![Interval::closed(rat(0), rat(2)).unwrap()], 0);
        let x = SuperFunction::even_coordinate(&s1, 0).unwrap();
        let phi = SuperMorphism::new(&s1, &s2, vec![x.scale(&rat(2))], vec![]).unwrap();
        let pulled = pullback_section(&phi, &BerezinSection::standard(&s2)).unwrap();
        assert_eq!(pulled.density(), &SuperFunction::constant(&s1, rat(2)));
    }

    #[test]
    fn shear_preserves_integral() {
        let b = Interval::closed(rat(0), rat(1)).unwrap();
        let s = SuperDomainShape::new(vec![b], 2);
        let x = SuperFunction::even_coordinate(&s, 0).unwrap();
        let xi0 = SuperFunction::odd_coordinate(&s, 0).unwrap();
        let xi1 = SuperFunction::odd_coordinate(&s, 1).unwrap();
        // density x²(1-x)² + x(1-x) ξ1ξ2 with a nilpotent shear in x
        let omega = monomial_density(
            &s,
            &[(1, &[2], &[]), (-2, &[3], &[]), (1, &[4], &[]), (1, &[1], &[0, 1]), (-1, &[2], &[0, 1])],
        );
        let n = xi0.try_mul(&xi1).unwrap();
        let phi = SuperMorphism::unchecked(&s, &s, vec![x.try_add(&n).unwrap()], vec![xi0, xi1]).unwrap();
        let backend = IntegrationBackend::for_shape(&s).unwrap();
        let lhs = integrate_scalar(&pullback_section(&phi, &omega).unwrap(), &backend).unwrap();
        let rhs = integrate_scalar(&omega, &backend).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn mixed_block_change_of_variables() {
        // y = x + 3ξ1ξ2, η1 = x ξ1, η2 = 2ξ2 on [1,2]^{1|2}: B·D⁻¹·C = 3ξ1ξ2/x.
        let s = SuperDomainShape::new(vec![Interval::closed(rat(1), rat(2)).unwrap()], 2);
        let x = SuperFunction::even_coordinate(&s, 0).unwrap();
        let xi0 = SuperFunction::odd_coordinate(&s, 0).unwrap();
        let xi1 = SuperFunction::odd_coordinate(&s, 1).unwrap();
        let n = xi0.try_mul(&xi1).unwrap();
        let y = x.try_add(&n.scale(&rat(3))).unwrap();
        let phi = SuperMorphism::new(&s, &s, vec![y], vec![x.try_mul(&xi0).unwrap(), xi1.scale(&rat(2))]).unwrap();
        // (x-1)³(2-x)³ (1 + 2x ξ1 + ξ2 + 5ξ1ξ2)
        let t = Polynomial::var(0);
        let bump = (&(&t - &Polynomial::from_int(1)) * &(&Polynomial::from_int(2) - &t)).pow(3).unwrap();
        let shape_part = SuperFunction::one(&s)
            .try_add(&x.scale(&rat(2)).try_mul(&xi0).unwrap())
            .unwrap()
            .try_add(&xi1)
            .unwrap()
            .try_add(&n.scale(&rat(5)))
            .unwrap();
        let omega = BerezinSection::new(shape_part.mul_polynomial(&bump));
        let backend = IntegrationBackend::for_shape(&s).unwrap();
        let rhs = integrate_scalar(&omega, &backend).unwrap();
        let lhs = integrate_scalar(&pullback_section(&phi, &omega).unwrap(), &backend).unwrap();
        assert!(!rhs.is_zero());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn left_mul_koszul_sign() {
        let s = SuperDomainShape::euclidean(0, 1);
        let xi = SuperFunction::odd_coordinate(&s, 0).unwrap();
        let omega = BerezinSection::standard(&s);
        assert_eq!(omega.left_mul(&xi).unwrap().density(), &xi.negated());
    }
}
