//! Lie supergroups given on one coordinate chart by exact multiplication
//! and inversion morphisms, with their subgroups.

mod builtin;
mod checks;
mod density;

pub use checks::{fubini_check, product_formula_check, FubiniReport, ProductFormulaReport, QuotientChart};
pub use density::{
    modular_berezinian, solve_action_density, solve_invariant_density, DensityAnsatz, ModularRatio, Side,
};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::grassmann::OddIndex;
use crate::lie_super::LieSuperAlgebra;
use crate::scalar::{sign_pow, Parity, Rational};
use crate::superdomain::{SuperDomainShape, SuperFunction, SuperMorphism};
use crate::Monomial;

/// A supergroup chart: multiplication `G × G → G`, inversion `G → G` and the
/// unit, with the names of the corresponding Lie superalgebra basis.
#[derive(Debug, Clone)]
pub struct SuperGroupChart {
    name: String,
    shape: SuperDomainShape,
    mul: SuperMorphism,
    inv: SuperMorphism,
    unit: Vec<Rational>,
    basis_names: Vec<String>,
    density_prefactor: Option<Monomial>,
}

impl SuperGroupChart {
    /// Builds the chart and checks associativity, the unit and the inverse
    /// as exact identities of morphisms.
    pub fn new(
        name: &str,
        shape: &SuperDomainShape,
        mul: SuperMorphism,
        inv: SuperMorphism,
        unit: Vec<Rational>,
        basis_names: Vec<String>,
    ) -> Result<Self> {
        if shape.params() != 0 || shape.aux() != 0 {
            return Err(Error::Dimension("group charts carry no parameters".into()));
        }
        let square = shape.product(shape)?;
        if !mul.source().same_dimensions(&square) || !mul.target().same_dimensions(shape) {
            return Err(Error::Dimension("multiplication must map G × G to G".into()));
        }
        if !inv.source().same_dimensions(shape) || !inv.target().same_dimensions(shape) {
            return Err(Error::Dimension("inversion must map G to G".into()));
        }
        if unit.len() != shape.m() || !unit.iter().zip(shape.boxes()).all(|(u, i)| i.contains(u)) {
            return Err(Error::Domain("unit outside the chart".into()));
        }
        if basis_names.len() != shape.m() + shape.n() {
            return Err(Error::Dimension("one basis name per coordinate".into()));
        }
        let chart = SuperGroupChart {
            name: name.to_string(),
            shape: shape.clone(),
            mul: mul.with_shapes(&square, shape)?,
            inv: inv.with_shapes(shape, shape)?,
            unit,
            basis_names,
            density_prefactor: None,
        };
        chart.mul.check_box()?;
        chart.inv.check_box()?;
        chart.check_laws()?;
        Ok(chart)
    }

    /// Declares a Laurent monomial prefactor allowed in invariant densities.
    pub fn with_density_prefactor(mut self, prefactor: Monomial) -> Self {
        self.density_prefactor = Some(prefactor);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn shape(&self) -> &SuperDomainShape {
        &self.shape
    }

    pub fn mul(&self) -> &SuperMorphism {
        &self.mul
    }

    pub fn inv(&self) -> &SuperMorphism {
        &self.inv
    }

    pub fn unit(&self) -> &[Rational] {
        &self.unit
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn density_prefactor(&self) -> Option<&Monomial> {
        self.density_prefactor.as_ref()
    }

    fn check_laws(&self) -> Result<()> {
        let g = &self.shape;
        let id = SuperMorphism::identity(g);
        let e = SuperMorphism::constant(g, g, &self.unit)?;
        let assoc_left = SuperMorphism::product(&self.mul, &id)?.then(&self.mul)?;
        let assoc_right = SuperMorphism::product(&id, &self.mul)?.then(&self.mul)?;
        same_components(&assoc_left, &assoc_right, "associativity")?;
        same_components(&SuperMorphism::pair(&e, &id)?.then(&self.mul)?, &id, "left unit")?;
        same_components(&SuperMorphism::pair(&id, &e)?.then(&self.mul)?, &id, "right unit")?;
        same_components(&SuperMorphism::pair(&self.inv, &id)?.then(&self.mul)?, &e, "left inverse")?;
        same_components(&SuperMorphism::pair(&id, &self.inv)?.then(&self.mul)?, &e, "right inverse")?;
        Ok(())
    }

    /// Left translation `x ↦ g·x` by the generalized point `g` whose
    /// coordinates are the parameters of `G` extended by `(m|n)` parameters.
    pub fn left_translation(&self) -> Result<SuperMorphism> {
        self.translation(Side::Left)
    }

    /// Right translation `x ↦ x·g`.
    pub fn right_translation(&self) -> Result<SuperMorphism> {
        self.translation(Side::Right)
    }

    pub(crate) fn translation(&self, side: Side) -> Result<SuperMorphism> {
        let (m, n) = (self.shape.m(), self.shape.n());
        let s = self.shape.clone().with_params(m, n);
        let point = SuperMorphism::generalized_point(&s, &self.shape)?;
        let id = SuperMorphism::identity(&s);
        let paired = match side {
            Side::Left => SuperMorphism::pair(&point, &id)?,
            Side::Right => SuperMorphism::pair(&id, &point)?,
        };
        paired.then(&self.mul.with_parameters(m, n)?)
    }

    /// Lie superalgebra of left-invariant vector fields. The field of basis
    /// vector `a` is `X_a = Σ_c (∂_{y_a} μ_c)(x, e) ∂_c`, and the structure
    /// constants are `[e_a, e_b]^c = (-1)^{|a||b|} ([X_a, X_b] x^c)(e)`.
    pub fn lie_algebra(&self) -> Result<LieSuperAlgebra> {
        let g = &self.shape;
        let (m, n) = (g.m(), g.n());
        let d = m + n;
        let parity = |a: usize| if a < m { Parity::Even } else { Parity::Odd };
        let at_unit = SuperMorphism::pair(&SuperMorphism::identity(g), &SuperMorphism::constant(g, g, &self.unit)?)?;
        let components: Vec<&SuperFunction> =
            self.mul.even_components().iter().chain(self.mul.odd_components()).collect();
        let mut fields: Vec<Vec<SuperFunction>> = Vec::with_capacity(d);
        for a in 0..d {
            let row = components
                .iter()
                .map(|mu| {
                    let dmu = if a < m { mu.derive_variable(m + a) } else { mu.derive_generator(n + a - m)? };
                    at_unit.pullback(&dmu)
                })
                .collect::<Result<Vec<_>>>()?;
            fields.push(row);
        }
        let derive = |f: &SuperFunction, k: usize| if k < m { Ok(f.derive_variable(k)) } else { f.derive_generator(k - m) };
        let apply = |x: &[SuperFunction], f: &SuperFunction| -> Result<SuperFunction> {
            let mut acc = SuperFunction::zero(g);
            for (k, v) in x.iter().enumerate() {
                acc = acc.try_add(&v.try_mul(&derive(f, k)?)?)?;
            }
            Ok(acc)
        };
        let mut table = vec![vec![vec![Rational::zero(); d]; d]; d];
        for a in 0..d {
            for b in 0..d {
                let sign = sign_pow(parity(a).bit() * parity(b).bit());
                for c in 0..d {
                    let ab = apply(&fields[a], &fields[b][c])?;
                    let ba = apply(&fields[b], &fields[a][c])?;
                    let commutator = if sign < 0 { ab.try_add(&ba)? } else { ab.try_sub(&ba)? };
                    let value = commutator.coefficient(OddIndex::EMPTY).eval(&self.unit)?;
                    table[a][b][c] = if sign < 0 { -value } else { value };
                }
            }
        }
        let algebra =
            LieSuperAlgebra::from_table(self.basis_names.clone(), (0..d).map(parity).collect(), table)?;
        if let crate::lie_super::Validation::Invalid(msg) = algebra.validate() {
            return Err(Error::GroupLaw(format!("extracted bracket is not a Lie superbracket: {msg}")));
        }
        Ok(algebra)
    }
}

fn same_components(left: &SuperMorphism, right: &SuperMorphism, law: &str) -> Result<()> {
    let pairs = left
        .even_components()
        .iter()
        .zip(right.even_components())
        .chain(left.odd_components().iter().zip(right.odd_components()));
    for (k, (a, b)) in pairs.enumerate() {
        if a.value() != b.value() {
            return Err(Error::GroupLaw(format!(
                "{law} fails in component {}: {} vs {}",
                k + 1,
                a.format(),
                b.format()
            )));
        }
    }
    Ok(())
}

/// A subgroup `H` of `G` given by its own chart and an embedding morphism
/// that is a homomorphism and a coordinate embedding at the unit.
#[derive(Debug, Clone)]
pub struct Subgroup {
    group: SuperGroupChart,
    embedding: SuperMorphism,
    coordinates: Vec<usize>,
}

impl Subgroup {
    pub fn new(ambient: &SuperGroupChart, group: SuperGroupChart, embedding: SuperMorphism) -> Result<Self> {
        let (h, g) = (group.shape(), ambient.shape());
        if !embedding.source().same_dimensions(h) || !embedding.target().same_dimensions(g) {
            return Err(Error::Dimension("embedding must map H to G".into()));
        }
        let embedding = embedding.with_shapes(h, g)?;
        embedding.check_box()?;
        let image_unit: Vec<Rational> = embedding
            .even_components()
            .iter()
            .map(|c| c.coefficient(OddIndex::EMPTY).eval(group.unit()))
            .collect::<Result<_>>()?;
        if image_unit != ambient.unit() {
            return Err(Error::GroupLaw("embedding does not send the unit to the unit".into()));
        }
        let via_h = group.mul().then(&embedding)?;
        let via_g = SuperMorphism::product(&embedding, &embedding)?.then(ambient.mul())?;
        same_components(&via_h, &via_g, "homomorphism property of the embedding")?;
        let coordinates = coordinate_embedding(&embedding, group.unit())?;
        Ok(Subgroup {
            group,
            embedding,
            coordinates,
        })
    }

    pub fn group(&self) -> &SuperGroupChart {
        &self.group
    }

    pub fn embedding(&self) -> &SuperMorphism {
        &self.embedding
    }

    /// Coordinates of `G` (even first) spanned by the tangent image of `H`.
    pub fn coordinates(&self) -> &[usize] {
        &self.coordinates
    }
}

/// Indices `k` with `dι(e_b) = e_k`; fails unless the tangent map at the
/// unit selects coordinates.
fn coordinate_embedding(embedding: &SuperMorphism, unit: &[Rational]) -> Result<Vec<usize>> {
    let (hm, hn) = (embedding.source().m(), embedding.source().n());
    let components: Vec<&SuperFunction> =
        embedding.even_components().iter().chain(embedding.odd_components()).collect();
    let mut out = Vec::new();
    for b in 0..hm + hn {
        let mut row = Vec::new();
        for c in &components {
            let d = if b < hm { c.derive_variable(b) } else { c.derive_generator(b - hm)? };
            row.push(d.coefficient(OddIndex::EMPTY).eval(unit)?);
        }
        let nonzero: Vec<usize> = row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(k, _)| k).collect();
        match nonzero.as_slice() {
            [k] if row[*k].is_one() => out.push(*k),
            _ => return Err(Error::Structural("embedding is not a coordinate embedding at the unit".into())),
        }
    }
    Ok(out)
}

pub use builtin::{
    ax_plus_b, ax_plus_b_even_quotient, ax_plus_b_even_subgroup, ax_plus_b_odd_quotient, ax_plus_b_odd_subgroup, gl11, heisenberg,
    heisenberg_center, heisenberg_center_quotient, multiplicative, translation, translation_odd_quotient,
    translation_odd_subgroup,
};

#[cfg(test)]
mod tests;
