//! Invariant Berezin densities by exact linear solving, and the ratio of
//! Berezinians of the adjoint action on a subgroup.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::berezin::BerezinSection;
use crate::error::{Error, Result};
use crate::grassmann::OddIndex;
use crate::linalg::Matrix;
use crate::polynomial::{Monomial, Polynomial};
use crate::scalar::Rational;
use crate::superdomain::{SuperDomainShape, SuperFunction, SuperMorphism};

use super::{SuperGroupChart, Subgroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Candidate densities: every odd monomial times a Laurent monomial of
/// degree at most `max_degree`, or such a monomial times `prefactor`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityAnsatz {
    pub max_degree: i32,
    pub prefactor: Option<Monomial>,
}

impl DensityAnsatz {
    pub fn polynomial(max_degree: i32) -> Self {
        DensityAnsatz {
            max_degree,
            prefactor: None,
        }
    }

    pub fn with_prefactor(mut self, prefactor: Option<Monomial>) -> Self {
        self.prefactor = prefactor;
        self
    }

    fn monomials(&self, m: usize) -> Vec<Monomial> {
        let mut plain = Vec::new();
        let mut exps = vec![0; m];
        enumerate(&mut exps, 0, self.max_degree, &mut plain);
        let mut out = plain.clone();
        if let Some(pre) = &self.prefactor {
            out.extend(plain.iter().map(|mono| mono.times(pre)));
        }
        out.sort();
        out.dedup();
        out
    }
}

impl Default for DensityAnsatz {
    fn default() -> Self {
        Self::polynomial(4)
    }
}

fn enumerate(exps: &mut Vec<i32>, i: usize, budget: i32, out: &mut Vec<Monomial>) {
    if i == exps.len() {
        out.push(Monomial::new(exps.clone()));
        return;
    }
    for e in 0..=budget {
        exps[i] = e;
        enumerate(exps, i + 1, budget - e, out);
    }
    exps[i] = 0;
}

/// Basis of the densities `ρ D(x,ξ)` on `space` invariant under the action
/// `G × space → space`: `Ber(J T_g) · T_g^*ρ = ρ` for the generalized point
/// `g`. Each basis element is scaled to body 1 at `base_point` when that
/// body is nonzero.
pub fn solve_action_density(
    group: &SuperGroupChart,
    space: &SuperDomainShape,
    action: &SuperMorphism,
    ansatz: &DensityAnsatz,
    base_point: &[Rational],
) -> Result<Vec<BerezinSection>> {
    let g = group.shape();
    if !action.source().same_dimensions(&g.product(space)?) || !action.target().same_dimensions(space) {
        return Err(Error::Dimension("action must map G × X to X".into()));
    }
    let s = space.clone().with_params(g.m(), g.n());
    let point = SuperMorphism::generalized_point(&s, g)?;
    let lifted = action.with_shapes(&g.product(space)?, space)?.with_parameters(g.m(), g.n())?;
    let moved = SuperMorphism::pair(&point, &SuperMorphism::identity(&s))?.then(&lifted)?;
    let ber = moved.berezinian()?;

    let monomials = ansatz.monomials(space.m());
    let mut candidates = Vec::new();
    for bits in 0..(1u64 << space.n()) {
        for mono in &monomials {
            candidates.push((mono.clone(), OddIndex::from_bits(bits)));
        }
    }
    let mut rows: BTreeMap<(OddIndex, Monomial), Vec<(usize, Rational)>> = BTreeMap::new();
    for (col, (mono, odd)) in candidates.iter().enumerate() {
        let phi = SuperFunction::term(&s, Polynomial::monomial(mono.clone(), Rational::one()), *odd);
        let defect = ber.try_mul(&moved.pullback(&phi)?)?.try_sub(&phi)?;
        for (idx, p) in defect.terms() {
            for (mono, c) in p.terms() {
                rows.entry((*idx, mono.clone())).or_default().push((col, c.clone()));
            }
        }
    }
    let mut system = Matrix::zeros(rows.len(), candidates.len());
    for (r, entries) in rows.values().enumerate() {
        for (col, c) in entries {
            system[(r, *col)] += c.clone();
        }
    }
    let mut out = Vec::new();
    for vector in system.nullspace() {
        let mut rho = SuperFunction::zero(space);
        for ((mono, odd), c) in candidates.iter().zip(&vector) {
            if !c.is_zero() {
                rho = rho.try_add(&SuperFunction::term(space, Polynomial::monomial(mono.clone(), c.clone()), *odd))?;
            }
        }
        let body = rho.coefficient(OddIndex::EMPTY).eval(base_point)?;
        if !body.is_zero() {
            rho = rho.scale(&body.recip());
        }
        out.push(BerezinSection::new(rho));
    }
    Ok(out)
}

/// The left or right invariant density of `group`, normalized to body 1
/// at the unit. Fails with `Inconclusive` unless the ansatz (degree 4 plus
/// the chart's declared prefactor) yields exactly one solution.
pub fn solve_invariant_density(group: &SuperGroupChart, side: Side) -> Result<BerezinSection> {
    let g = group.shape();
    let action = match side {
        Side::Left => group.mul().clone(),
        Side::Right => SuperMorphism::pair(
            &SuperMorphism::project_right(g, g)?,
            &SuperMorphism::project_left(g, g)?,
        )?
        .then(group.mul())?,
    };
    let ansatz = DensityAnsatz::default().with_prefactor(group.density_prefactor().cloned());
    let mut solutions = solve_action_density(group, g, &action, &ansatz, group.unit())?;
    match solutions.len() {
        1 => Ok(solutions.remove(0)),
        0 => Err(Error::Inconclusive(format!(
            "no {side:?}-invariant density of {} within the ansatz",
            group.name()
        ))),
        k => Err(Error::Inconclusive(format!(
            "{k} independent {side:?}-invariant densities of {} within the ansatz",
            group.name()
        ))),
    }
}

/// `Ber(Ad_h|_h)`, `Ber(Ad_h|_g)` and their ratio, as functions on `H`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModularRatio {
    pub ad_subgroup: SuperFunction,
    pub ad_group: SuperFunction,
    pub ratio: SuperFunction,
}

/// Berezinians of the adjoint action of `H` on its own Lie superalgebra and
/// on that of `G`, from the Jacobian at the unit of `y ↦ ι(h) y ι(h)⁻¹`.
pub fn modular_berezinian(group: &SuperGroupChart, sub: &Subgroup) -> Result<ModularRatio> {
    let g = group.shape();
    let h = sub.group().shape();
    let s = g.clone().with_params(h.m(), h.n());
    let mul = group.mul().with_parameters(h.m(), h.n())?;
    let inv = group.inv().with_parameters(h.m(), h.n())?;
    let at_h = SuperMorphism::generalized_point(&s, h)?.then(&sub.embedding().with_parameters(h.m(), h.n())?)?;
    let left = SuperMorphism::pair(&at_h, &SuperMorphism::identity(&s))?.then(&mul)?;
    let conjugation = SuperMorphism::pair(&left, &at_h.then(&inv)?)?.then(&mul)?;
    let at_unit = SuperMorphism::constant(&s, &s, group.unit())?;
    let adjoint = conjugation.jacobian()?.map_entries(|e| {
        Ok(at_unit.pullback(&SuperFunction::from_value(&s, e.clone())?)?.into_value())
    })?;
    let ad_group = adjoint.berezinian()?;
    let mut span = sub.coordinates().to_vec();
    span.sort_unstable();
    let ad_subgroup = adjoint.principal_submatrix(&span)?.berezinian()?;
    let ratio = ad_subgroup.try_mul(&ad_group.inv_even()?)?;

    let var_map: Vec<usize> = (0..g.m()).map(|_| 0).chain(0..h.m()).collect();
    let gen_map: Vec<usize> = (0..g.n()).map(|_| 0).chain(0..h.n()).collect();
    let back = |value: crate::grassmann::Grassmann<Polynomial>| {
        SuperFunction::from_value(&s, value)?.relabel(h, &var_map, &gen_map)
    };
    Ok(ModularRatio {
        ad_subgroup: back(ad_subgroup)?,
        ad_group: back(ad_group)?,
        ratio: back(ratio)?,
    })
}

impl std::fmt::Display for ModularRatio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Ber(Ad_h)={} Ber(Ad_g)={} ratio={}",
            self.ad_subgroup.format(),
            self.ad_group.format(),
            self.ratio.format()
        )
    }
}
