use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::grassmann::Grassmann;
use crate::polynomial::Polynomial;
use crate::scalar::{Parity, Rational};
use crate::supermatrix::{even_determinant, SuperMatrix};

use super::{SuperDomainShape, SuperFunction};

/// A morphism of superdomains, given by the pullbacks of the target
/// coordinates. Parameters of the source and target are identified.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperMorphism {
    source: SuperDomainShape,
    target: SuperDomainShape,
    even: Vec<SuperFunction>,
    odd: Vec<SuperFunction>,
}

impl SuperMorphism {
    /// Validates component counts, parities, and that the body map sends
    /// the sampled source box into the target box.
    pub fn new(
        source: &SuperDomainShape,
        target: &SuperDomainShape,
        even: Vec<SuperFunction>,
        odd: Vec<SuperFunction>,
    ) -> Result<Self> {
        let phi = Self::unchecked(source, target, even, odd)?;
        phi.check_box()?;
        Ok(phi)
    }

    /// Validates everything except box containment.
    pub fn unchecked(
        source: &SuperDomainShape,
        target: &SuperDomainShape,
        even: Vec<SuperFunction>,
        odd: Vec<SuperFunction>,
    ) -> Result<Self> {
        source.check_same_params(target)?;
        if even.len() != target.m() || odd.len() != target.n() {
            return Err(Error::Dimension(format!(
                "({}|{}) components for a target of dimension ({}|{})",
                even.len(),
                odd.len(),
                target.m(),
                target.n()
            )));
        }
        for (k, f) in even.iter().chain(&odd).enumerate() {
            if !f.shape().same_dimensions(source) {
                return Err(Error::Dimension(format!("component {k} lives on another shape")));
            }
            let expected = if k < even.len() { Parity::Even } else { Parity::Odd };
            if !f.is_zero() && f.parity() != Some(expected) {
                return Err(Error::Parity(format!("component {k} must be {expected}")));
            }
        }
        let reshape = |fs: Vec<SuperFunction>| fs.iter().map(|f| f.with_shape(source)).collect::<Result<Vec<_>>>();
        Ok(SuperMorphism {
            source: source.clone(),
            target: target.clone(),
            even: reshape(even)?,
            odd: reshape(odd)?,
        })
    }

    pub fn identity(shape: &SuperDomainShape) -> Self {
        let even = (0..shape.m()).map(|i| SuperFunction::even_coordinate(shape, i).unwrap()).collect();
        let odd = (0..shape.n()).map(|j| SuperFunction::odd_coordinate(shape, j).unwrap()).collect();
        SuperMorphism {
            source: shape.clone(),
            target: shape.clone(),
            even,
            odd,
        }
    }

    /// Constant morphism onto the point with even coordinates `point` and
    /// zero odd coordinates.
    pub fn constant(source: &SuperDomainShape, target: &SuperDomainShape, point: &[Rational]) -> Result<Self> {
        if point.len() != target.m() {
            return Err(Error::Dimension("point has the wrong number of even coordinates".into()));
        }
        let even = point.iter().map(|c| SuperFunction::constant(source, c.clone())).collect();
        let odd = (0..target.n()).map(|_| SuperFunction::zero(source)).collect();
        Self::unchecked(source, target, even, odd)
    }

    /// The same morphism between the shapes extended by `params` even and
    /// `aux` odd parameters, acting as the identity on them.
    pub fn with_parameters(&self, params: usize, aux: usize) -> Result<Self> {
        if self.source.params() + self.source.aux() + self.target.params() + self.target.aux() != 0 {
            return Err(Error::Dimension("morphism already has parameters".into()));
        }
        let source = self.source.clone().with_params(params, aux);
        let target = self.target.clone().with_params(params, aux);
        let lift = |f: &SuperFunction| SuperFunction::from_value(&source, f.value().embed(source.generators())?);
        let even = self.even.iter().map(lift).collect::<Result<_>>()?;
        let odd = self.odd.iter().map(lift).collect::<Result<_>>()?;
        Self::unchecked(&source, &target, even, odd)
    }

    /// The generalized point of `target` (a parameter-free shape) whose
    /// even coordinates are the first even parameters of `source` and whose
    /// odd coordinates are its first odd parameters. The target is extended
    /// by the parameters of `source`.
    pub fn generalized_point(source: &SuperDomainShape, target: &SuperDomainShape) -> Result<Self> {
        if source.params() < target.m() || source.aux() < target.n() {
            return Err(Error::Dimension("not enough parameters for a generalized point".into()));
        }
        let lifted = target.clone().with_params(source.params(), source.aux());
        let even = (0..target.m()).map(|i| SuperFunction::even_param(source, i)).collect::<Result<_>>()?;
        let odd = (0..target.n()).map(|j| SuperFunction::odd_param(source, j)).collect::<Result<_>>()?;
        Self::unchecked(source, &lifted, even, odd)
    }

    /// Projection `a × b → a`.
    pub fn project_left(a: &SuperDomainShape, b: &SuperDomainShape) -> Result<Self> {
        let id = Self::identity(a);
        let product = a.product(b)?;
        let even = id.even.iter().map(|f| f.extend_left(b)).collect::<Result<_>>()?;
        let odd = id.odd.iter().map(|f| f.extend_left(b)).collect::<Result<_>>()?;
        Self::unchecked(&product, a, even, odd)
    }

    /// Projection `a × b → b`.
    pub fn project_right(a: &SuperDomainShape, b: &SuperDomainShape) -> Result<Self> {
        let id = Self::identity(b);
        let product = a.product(b)?;
        let even = id.even.iter().map(|f| f.extend_right(a)).collect::<Result<_>>()?;
        let odd = id.odd.iter().map(|f| f.extend_right(a)).collect::<Result<_>>()?;
        Self::unchecked(&product, b, even, odd)
    }

    /// `(φ, ψ): X → Y × Z`.
    pub fn pair(phi: &Self, psi: &Self) -> Result<Self> {
        if phi.source != psi.source {
            return Err(Error::Dimension("paired morphisms need a common source".into()));
        }
        let target = phi.target.product(&psi.target)?;
        let even = phi.even.iter().chain(&psi.even).cloned().collect();
        let odd = phi.odd.iter().chain(&psi.odd).cloned().collect();
        Self::unchecked(&phi.source, &target, even, odd)
    }

    /// `φ × ψ: X × Z → Y × W`.
    pub fn product(phi: &Self, psi: &Self) -> Result<Self> {
        let left = Self::project_left(&phi.source, &psi.source)?.then(phi)?;
        let right = Self::project_right(&phi.source, &psi.source)?.then(psi)?;
        Self::pair(&left, &right)
    }

    pub fn source(&self) -> &SuperDomainShape {
        &self.source
    }

    pub fn target(&self) -> &SuperDomainShape {
        &self.target
    }

    pub fn even_components(&self) -> &[SuperFunction] {
        &self.even
    }

    pub fn odd_components(&self) -> &[SuperFunction] {
        &self.odd
    }

    /// Same components, viewed between shapes with other boxes.
    pub fn with_shapes(&self, source: &SuperDomainShape, target: &SuperDomainShape) -> Result<Self> {
        if !self.source.same_dimensions(source) || !self.target.same_dimensions(target) {
            return Err(Error::Dimension("reshaping a morphism to other dimensions".into()));
        }
        Self::unchecked(source, target, self.even.clone(), self.odd.clone())
    }

    /// Checks on the sample grid that body values of the even components
    /// stay inside the target box.
    pub fn check_box(&self) -> Result<()> {
        if self.target.boxes().iter().all(|i| i.is_real_line()) {
            return Ok(());
        }
        for point in self.source.sample_points() {
            for (k, f) in self.even.iter().enumerate() {
                let interval = self.target.interval(k);
                if interval.is_real_line() {
                    continue;
                }
                let v = f.coefficient(crate::grassmann::OddIndex::EMPTY).eval(&point)?;
                if !interval.contains(&v) {
                    return Err(Error::Domain(format!(
                        "body of component {} takes value {} outside {interval} at sample {:?}",
                        k + 1,
                        crate::scalar::format_rational(&v),
                        point.iter().map(crate::scalar::format_rational).collect::<Vec<_>>()
                    )));
                }
            }
        }
        Ok(())
    }

    /// `φ^* f` for a superfunction `f` on the target, by substituting the
    /// components into the coefficients (the nilpotent part of each even
    /// component expands as a finite Taylor series through ring powers).
    pub fn pullback(&self, f: &SuperFunction) -> Result<SuperFunction> {
        if !f.shape().same_dimensions(&self.target) {
            return Err(Error::Dimension("pullback of a function on another shape".into()));
        }
        let gens = self.source.generators();
        let evens: Vec<Grassmann<Polynomial>> = self
            .even
            .iter()
            .map(|c| c.value().clone())
            .chain((0..self.source.params()).map(|i| {
                Grassmann::constant(gens, Polynomial::var(self.source.m() + i))
            }))
            .collect();
        let odds: Vec<Grassmann<Polynomial>> = self
            .odd
            .iter()
            .map(|c| c.value().clone())
            .chain((0..self.source.aux()).map(|k| Grassmann::generator(gens, self.source.n() + k).unwrap()))
            .collect();
        let mut powers = PowerCache::new(&evens, gens);
        let mut out = Grassmann::zero(gens);
        for (alpha, coeff) in f.terms() {
            let mut odd_part = Grassmann::one(gens);
            for j in alpha.indices() {
                odd_part = odd_part.try_mul(&odds[j])?;
                if odd_part.is_zero() {
                    break;
                }
            }
            if odd_part.is_zero() {
                continue;
            }
            let even_part = powers.substitute(coeff)?;
            out = out.try_add(&even_part.try_mul(&odd_part)?)?;
        }
        SuperFunction::from_value(&self.source, out)
    }

    /// `self` followed by `next`: components are `self^*` of those of `next`.
    pub fn then(&self, next: &Self) -> Result<Self> {
        if !self.target.same_dimensions(&next.source) {
            return Err(Error::Dimension(format!(
                "cannot compose: target {:?} vs source {:?}",
                self.target, next.source
            )));
        }
        let even = next.even.iter().map(|c| self.pullback(c)).collect::<Result<_>>()?;
        let odd = next.odd.iter().map(|c| self.pullback(c)).collect::<Result<_>>()?;
        Self::unchecked(&self.source, &next.target, even, odd)
    }

    /// Jacobian supermatrix `J[b][a] = ∂_{x_b} y_a` (left derivatives), rows
    /// indexed by source coordinates and columns by target coordinates,
    /// even before odd. Chain rule: `J(ψ∘φ) = J(φ)·φ^*(J(ψ))`.
    pub fn jacobian(&self) -> Result<SuperMatrix<Polynomial>> {
        let (m, n) = (self.source.m(), self.source.n());
        if self.target.m() != m || self.target.n() != n {
            return Err(Error::Dimension(format!(
                "Jacobian of a ({m}|{n}) → ({}|{}) morphism is not square",
                self.target.m(),
                self.target.n()
            )));
        }
        let components: Vec<&SuperFunction> = self.even.iter().chain(&self.odd).collect();
        let mut entries = Vec::with_capacity((m + n) * (m + n));
        for b in 0..m + n {
            for y in &components {
                let d = if b < m { y.derive_variable(b) } else { y.derive_generator(b - m)? };
                entries.push(d.into_value());
            }
        }
        SuperMatrix::new(m, n, self.source.generators(), entries)
    }

    /// `Ber` of the Jacobian, as a superfunction on the source.
    pub fn berezinian(&self) -> Result<SuperFunction> {
        SuperFunction::from_value(&self.source, self.jacobian()?.berezinian()?)
    }

    /// Whether the body Jacobian determinant is positive at every sample
    /// point of the source box.
    pub fn is_orientation_preserving(&self) -> Result<bool> {
        let m = self.source.m();
        if self.target.m() != m {
            return Err(Error::Dimension("orientation needs equal even dimensions".into()));
        }
        let body = |f: &SuperFunction| f.coefficient(crate::grassmann::OddIndex::EMPTY);
        let rows: Vec<Vec<Grassmann<Polynomial>>> = (0..m)
            .map(|b| self.even.iter().map(|y| Grassmann::constant(0, body(y).derive(b))).collect())
            .collect();
        let det = even_determinant(&rows, 0)?.body();
        for point in self.source.sample_points() {
            if det.eval(&point)? <= Rational::zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Cached integer powers of the even substitutes.
struct PowerCache<'a> {
    base: &'a [Grassmann<Polynomial>],
    generators: usize,
    cache: HashMap<(usize, i32), Grassmann<Polynomial>>,
}

impl<'a> PowerCache<'a> {
    fn new(base: &'a [Grassmann<Polynomial>], generators: usize) -> Self {
        PowerCache {
            base,
            generators,
            cache: HashMap::new(),
        }
    }

    fn power(&mut self, i: usize, e: i32) -> Result<Grassmann<Polynomial>> {
        if let Some(p) = self.cache.get(&(i, e)) {
            return Ok(p.clone());
        }
        let base = self.base.get(i).ok_or(Error::IndexOutOfRange {
            index: i,
            size: self.base.len(),
        })?;
        let p = if e == 0 {
            Grassmann::one(base.generators())
        } else if e < 0 {
            let inv = match self.cache.get(&(i, -1)) {
                Some(p) => p.clone(),
                None => base.inv_even()?,
            };
            self.cache.insert((i, -1), inv.clone());
            if e == -1 {
                inv
            } else {
                self.power(i, e + 1)?.try_mul(&inv)?
            }
        } else if e == 1 {
            base.clone()
        } else {
            self.power(i, e - 1)?.try_mul(base)?
        };
        self.cache.insert((i, e), p.clone());
        Ok(p)
    }

    fn substitute(&mut self, poly: &Polynomial) -> Result<Grassmann<Polynomial>> {
        let gens = self.generators;
        // Fast path when every substitute is soul-free.
        if self.base.iter().all(|b| b.soul().is_zero()) {
            let bodies: Vec<Polynomial> = self.base.iter().map(Grassmann::body).collect();
            return Ok(Grassmann::constant(gens, poly.substitute(&bodies)?));
        }
        let mut out = Grassmann::zero(gens);
        for (mono, c) in poly.terms() {
            let mut term = Grassmann::constant(gens, Polynomial::constant(c.clone()));
            for (i, &e) in mono.exponents().iter().enumerate() {
                if e != 0 {
                    term = term.try_mul(&self.power(i, e)?)?;
                }
            }
            out = out.try_add(&term)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::OddIndex;
    use crate::scalar::rat;
    use crate::superdomain::Interval;

    fn shape12() -> SuperDomainShape {
        SuperDomainShape::euclidean(1, 2)
    }

    fn x(s: &SuperDomainShape) -> SuperFunction {
        SuperFunction::even_coordinate(s, 0).unwrap()
    }

    fn xi(s: &SuperDomainShape, j: usize) -> SuperFunction {
        SuperFunction::odd_coordinate(s, j).unwrap()
    }

    fn shear() -> SuperMorphism {
        let s = shape12();
        let n = xi(&s, 0).try_mul(&xi(&s, 1)).unwrap();
        SuperMorphism::new(&s, &s, vec![x(&s).try_add(&n).unwrap()], vec![xi(&s, 0), xi(&s, 1)]).unwrap()
    }

    #[test]
    fn shear_pullback_expands_taylor() {
        let s = shape12();
        let f = x(&s).try_mul(&x(&s)).unwrap();
        let n = xi(&s, 0).try_mul(&xi(&s, 1)).unwrap();
        let expected = f.try_add(&n.mul_polynomial(&Polynomial::var(0).scale(&rat(2)))).unwrap();
        assert_eq!(shear().pullback(&f).unwrap(), expected);
    }

    #[test]
    fn identity_and_swap() {
        let s = shape12();
        let f = xi(&s, 0).try_mul(&xi(&s, 1)).unwrap().try_add(&x(&s)).unwrap();
        assert_eq!(SuperMorphism::identity(&s).pullback(&f).unwrap(), f);
        let swap = SuperMorphism::new(&s, &s, vec![x(&s)], vec![xi(&s, 1), xi(&s, 0)]).unwrap();
        let g = xi(&s, 0).try_mul(&xi(&s, 1)).unwrap();
        assert_eq!(swap.pullback(&g).unwrap(), g.negated());
    }

    #[test]
    fn compose_affine() {
        let s = SuperDomainShape::euclidean(1, 0);
        let shift = SuperMorphism::new(&s, &s, vec![x(&s).try_add(&SuperFunction::one(&s)).unwrap()], vec![]).unwrap();
        let double = SuperMorphism::new(&s, &s, vec![x(&s).scale(&rat(2))], vec![]).unwrap();
        let composite = shift.then(&double).unwrap();
        let expected = x(&s).scale(&rat(2)).try_add(&SuperFunction::constant(&s, rat(2))).unwrap();
        assert_eq!(composite.even_components()[0], expected);
    }

    #[test]
    fn jacobian_examples() {
        let s = shape12();
        assert_eq!(
            SuperMorphism::identity(&s).jacobian().unwrap(),
            SuperMatrix::identity(1, 2, 2)
        );
        assert_eq!(shear().berezinian().unwrap(), SuperFunction::one(&s));
        let s11 = SuperDomainShape::euclidean(1, 1);
        let scale = SuperMorphism::new(&s11, &s11, vec![x(&s11).scale(&rat(3))], vec![xi(&s11, 0)]).unwrap();
        assert_eq!(scale.berezinian().unwrap(), SuperFunction::constant(&s11, rat(3)));
    }

    #[test]
    fn box_escape_is_rejected() {
        let s = SuperDomainShape::new(vec![Interval::closed(rat(0), rat(1)).unwrap()], 0);
        let err = SuperMorphism::new(&s, &s, vec![x(&s).scale(&rat(2))], vec![]);
        assert!(matches!(err, Err(Error::Domain(_))));
    }

    #[test]
    fn laurent_pullback_uses_unit_inverse() {
        // a ↦ a·(1 + ξ1ξ2); pull back a⁻¹.
        let s = SuperDomainShape::new(vec![Interval::from(rat(0))], 2);
        let n = xi(&s, 0).try_mul(&xi(&s, 1)).unwrap();
        let phi = SuperMorphism::new(&s, &s, vec![x(&s).try_add(&x(&s).try_mul(&n).unwrap()).unwrap()], vec![xi(&s, 0), xi(&s, 1)])
            .unwrap();
        let inv = SuperFunction::polynomial(&s, Polynomial::var(0).pow(-1).unwrap());
        let pulled = phi.pullback(&inv).unwrap();
        let expected = inv.try_sub(&inv.try_mul(&n).unwrap()).unwrap();
        assert_eq!(pulled, expected);
        assert_eq!(pulled.coefficient(OddIndex::EMPTY), Polynomial::var(0).pow(-1).unwrap());
    }
}
