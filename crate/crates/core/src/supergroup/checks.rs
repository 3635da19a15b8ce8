//! Integration over `G` against integration over a quotient chart and a
//! subgroup, and the product formula for `U = M·H`.

use std::fmt;

use num_traits::{One, Zero};

use crate::berezin::{integrate_scalar, pullback_section, product_section, AxisMeasure, BerezinSection, IntegrationBackend};
use crate::error::{Error, Result};
use crate::grassmann::OddIndex;
use crate::polynomial::{Monomial, Polynomial};
use crate::scalar::{format_rational, sign_pow, Rational, Scalar};
use crate::superdomain::{SuperDomainShape, SuperFunction, SuperMorphism};

use super::density::{modular_berezinian, solve_action_density, solve_invariant_density, DensityAnsatz, ModularRatio, Side};
use super::{same_components, SuperGroupChart, Subgroup};

/// A chart `U` of `G/H` with a section `t: U → G` and the projection
/// `π: G → U`, `π ∘ t = id`.
#[derive(Debug, Clone)]
pub struct QuotientChart {
    base: SuperDomainShape,
    section: SuperMorphism,
    projection: SuperMorphism,
    base_point: Vec<Rational>,
    density_prefactor: Option<Monomial>,
}

impl QuotientChart {
    pub fn new(
        group: &SuperGroupChart,
        base: &SuperDomainShape,
        section: SuperMorphism,
        projection: SuperMorphism,
        base_point: Vec<Rational>,
    ) -> Result<Self> {
        let section = section.with_shapes(base, group.shape())?;
        let projection = projection.with_shapes(group.shape(), base)?;
        section.check_box()?;
        projection.check_box()?;
        same_components(&section.then(&projection)?, &SuperMorphism::identity(base), "projection after section")
            .map_err(|e| Error::Structural(e.to_string()))?;
        if base_point.len() != base.m() {
            return Err(Error::Dimension("base point has the wrong dimension".into()));
        }
        Ok(QuotientChart {
            base: base.clone(),
            section,
            projection,
            base_point,
            density_prefactor: None,
        })
    }

    pub fn with_density_prefactor(mut self, prefactor: Monomial) -> Self {
        self.density_prefactor = Some(prefactor);
        self
    }

    pub fn base(&self) -> &SuperDomainShape {
        &self.base
    }

    pub fn section(&self) -> &SuperMorphism {
        &self.section
    }

    pub fn projection(&self) -> &SuperMorphism {
        &self.projection
    }

    /// `G × U → U`, `(g, u) ↦ π(g · t(u))`.
    pub fn action(&self, group: &SuperGroupChart) -> Result<SuperMorphism> {
        let g = group.shape();
        let moved = SuperMorphism::project_right(g, &self.base)?.then(&self.section)?;
        SuperMorphism::pair(&SuperMorphism::project_left(g, &self.base)?, &moved)?
            .then(group.mul())?
            .then(&self.projection)
    }

    /// The `G`-invariant density on `U`, body 1 at the base point.
    pub fn invariant_density(&self, group: &SuperGroupChart) -> Result<BerezinSection> {
        let ansatz = DensityAnsatz::default().with_prefactor(self.density_prefactor.clone());
        let mut found = solve_action_density(group, &self.base, &self.action(group)?, &ansatz, &self.base_point)?;
        match found.len() {
            1 => Ok(found.remove(0)),
            k => Err(Error::Inconclusive(format!("{k} invariant densities on the quotient chart"))),
        }
    }
}

/// For each even target coordinate `k`, the source coordinate whose body
/// it equals. Gaussian axes also require the component to have no soul.
fn axis_permutation(phi: &SuperMorphism, target_axes: &[AxisMeasure]) -> Result<Vec<usize>> {
    let m = phi.source().m();
    if phi.target().m() != m {
        return Err(Error::Dimension("axis mapping needs equal even dimensions".into()));
    }
    let mut sigma = Vec::with_capacity(m);
    for (k, comp) in phi.even_components().iter().enumerate() {
        let body = comp.coefficient(OddIndex::EMPTY);
        let source = (0..m).find(|&i| body == Polynomial::var(i)).ok_or_else(|| {
            Error::Structural(format!("even component {} is not a coordinate of the source", k + 1))
        })?;
        if sigma.contains(&source) {
            return Err(Error::Structural("even components repeat a source coordinate".into()));
        }
        if matches!(target_axes[k], AxisMeasure::Gaussian) && !comp.value().soul().is_zero() {
            return Err(Error::Structural(format!(
                "even component {} shifts a Gaussian axis by a nilpotent term",
                k + 1
            )));
        }
        sigma.push(source);
    }
    Ok(sigma)
}

fn inverse_permutation(sigma: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; sigma.len()];
    for (k, &s) in sigma.iter().enumerate() {
        inv[s] = k;
    }
    inv
}

fn mismatch(found: &BerezinSection, expected: &BerezinSection) -> Error {
    let factor = expected
        .density()
        .value()
        .inv_even()
        .and_then(|inv| found.density().value().try_mul(&inv))
        .ok();
    let constant = factor
        .as_ref()
        .filter(|f| f.soul().is_zero())
        .and_then(|f| f.body().as_constant());
    let factor = match factor {
        Some(f) => SuperFunction::from_value(found.shape(), f).map(|f| f.format()).unwrap_or_default(),
        None => format!("({}) / ({})", found.density().format(), expected.density().format()),
    };
    Error::Normalization { factor, constant }
}

/// Both sides of `∫_G f ω_G = (-1)^{dim h₁ · dim g/h} ∫_{G/H} f_H ω_{G/H}`,
/// `h₁` the odd part of `h`.
#[derive(Debug, Clone, PartialEq)]
pub struct FubiniReport {
    pub lhs: Scalar,
    pub rhs: Scalar,
    pub sign: i32,
    pub omega_group: BerezinSection,
    pub omega_subgroup: BerezinSection,
    pub omega_quotient: BerezinSection,
    /// `f_H` on the quotient chart, without its power of `√(2π)`.
    pub averaged: SuperFunction,
    pub averaged_gauss_exponent: i32,
}

impl FubiniReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Integrates `f ω_G` over `G` directly and through the quotient chart:
/// `f_H = p_!(τ⁻¹^* f · (1 ⊗ ω_H))` with `τ⁻¹(u, h) = t(u)·h`, then
/// `(-1)^{dim h₁ · dim g/h} ∫_U f_H ω_{G/H}`. The densities are the solved
/// invariant ones; `τ⁻¹^* ω_G` must equal `ω_{G/H} ⊗ ω_H` exactly.
pub fn fubini_check(
    group: &SuperGroupChart,
    sub: &Subgroup,
    chart: &QuotientChart,
    f: &SuperFunction,
    backend: &IntegrationBackend,
) -> Result<FubiniReport> {
    let (g, h, u) = (group.shape(), sub.group().shape(), chart.base());
    if !f.shape().same_dimensions(g) {
        return Err(Error::Dimension("test function must live on G".into()));
    }
    if u.m() + u.n() + h.m() + h.n() != g.m() + g.n() {
        return Err(Error::Dimension("dim G/H + dim H differs from dim G".into()));
    }
    let omega_group = solve_invariant_density(group, Side::Left)?;
    let omega_subgroup = solve_invariant_density(sub.group(), Side::Left)?;
    let omega_quotient = chart.invariant_density(group)?;

    let untwist = SuperMorphism::pair(
        &SuperMorphism::project_left(u, h)?.then(chart.section())?,
        &SuperMorphism::project_right(u, h)?.then(sub.embedding())?,
    )?
    .then(group.mul())?;
    let pulled = pullback_section(&untwist, &omega_group)?;
    let split = product_section(&omega_quotient, &omega_subgroup)?;
    if pulled.density() != split.density() {
        return Err(mismatch(&pulled, &split));
    }

    let sigma = axis_permutation(&untwist, backend.axes())?;
    let (base_backend, fibre_backend) = backend.permuted(&inverse_permutation(&sigma)).split_at(u.m());

    let lifted = untwist.pullback(f)?;
    let base_mask = (1u64 << u.n()) - 1;
    let mut averaged = SuperFunction::zero(u);
    let mut gauss = 0;
    for (alpha, coeff) in lifted.terms() {
        let base_odd = OddIndex::from_bits(alpha.bits() & base_mask);
        let fibre_odd = OddIndex::from_bits(alpha.bits() >> u.n());
        for (low, high) in coeff.split_variables(u.m()) {
            let mono = Monomial::new(high.exponents().iter().skip(u.m()).copied().collect());
            let fibre_fn = SuperFunction::term(h, Polynomial::monomial(mono, Rational::one()), fibre_odd);
            let value = integrate_scalar(&omega_subgroup.left_mul(&fibre_fn)?, &fibre_backend)?;
            if value.is_zero() {
                continue;
            }
            gauss = value.gauss_exponent();
            averaged = averaged.try_add(&SuperFunction::term(u, low.scale(value.value()), base_odd))?;
        }
    }

    let quotient_section = BerezinSection::with_gauss_exponent(
        omega_quotient.left_mul(&averaged)?.density().clone(),
        gauss + omega_quotient.gauss_exponent(),
    );
    let sign = sign_pow(h.n() * (u.m() + u.n()));
    let rhs = integrate_scalar(&quotient_section, &base_backend)?.scaled(&Rational::from_integer(sign.into()));
    let lhs = integrate_scalar(&omega_group.left_mul(f)?, backend)?;
    Ok(FubiniReport {
        lhs,
        rhs,
        sign,
        omega_group,
        omega_subgroup,
        omega_quotient,
        averaged,
        averaged_gauss_exponent: gauss,
    })
}

impl fmt::Display for FubiniReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "lhs={} rhs={} sign={} omega_G={} omega_H={} omega_G/H={}",
            self.lhs, self.rhs, self.sign, self.omega_group, self.omega_subgroup, self.omega_quotient
        )
    }
}

/// Both sides of
/// `∫_U f ω_U = c ∫_{M×H} m^*f · (Ber Ad_h|_h / Ber Ad_h|_u)(h) ω_M ⊗ ω_H`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductFormulaReport {
    pub lhs: Scalar,
    pub rhs: Scalar,
    /// Base-point constant `c` with `m^*ω_U = c · ratio · ω_M ⊗ ω_H`.
    pub constant: Rational,
    pub modular: ModularRatio,
}

impl ProductFormulaReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Checks the product formula for `m: M × H → U`, `(a, b) ↦ ι_M(a)·ι_H(b)`,
/// with `backend` given on `M × H`. The constant `c` is fixed by comparing
/// both densities at the unit; the identity of densities must then hold
/// exactly.
pub fn product_formula_check(
    group: &SuperGroupChart,
    left: &Subgroup,
    right: &Subgroup,
    f: &SuperFunction,
    backend: &IntegrationBackend,
) -> Result<ProductFormulaReport> {
    let (ms, hs) = (left.group().shape(), right.group().shape());
    let multiply = SuperMorphism::pair(
        &SuperMorphism::project_left(ms, hs)?.then(left.embedding())?,
        &SuperMorphism::project_right(ms, hs)?.then(right.embedding())?,
    )?
    .then(group.mul())?;
    if !multiply.source().same_dimensions(group.shape()) {
        return Err(Error::Dimension("dim M + dim H differs from dim U".into()));
    }
    let omega_u = solve_invariant_density(group, Side::Left)?;
    let omega_m = solve_invariant_density(left.group(), Side::Left)?;
    let omega_h = solve_invariant_density(right.group(), Side::Left)?;
    let modular = modular_berezinian(group, right)?;

    let pulled = pullback_section(&multiply, &omega_u)?;
    let weighted = product_section(&omega_m, &omega_h)?.left_mul(&modular.ratio.extend_right(ms)?)?;
    let unit: Vec<Rational> = left.group().unit().iter().chain(right.group().unit()).cloned().collect();
    let at_unit = |w: &BerezinSection| w.density().coefficient(OddIndex::EMPTY).eval(&unit);
    let reference = at_unit(&weighted)?;
    if reference.is_zero() {
        return Err(mismatch(&pulled, &weighted));
    }
    let constant = at_unit(&pulled)? / reference;
    let scaled = BerezinSection::with_gauss_exponent(weighted.density().scale(&constant), weighted.gauss_exponent());
    if pulled.density() != scaled.density() {
        return Err(mismatch(&pulled, &scaled));
    }

    let sigma = axis_permutation(&multiply, &vec![AxisMeasure::Interval(Rational::zero(), Rational::zero()); ms.m() + hs.m()])?;
    let target_backend = backend.permuted(&sigma);
    if let Some(k) = (0..sigma.len()).find(|&k| {
        matches!(target_backend.axes()[k], AxisMeasure::Gaussian) && !multiply.even_components()[k].value().soul().is_zero()
    }) {
        return Err(Error::Structural(format!(
            "even component {} shifts a Gaussian axis by a nilpotent term",
            k + 1
        )));
    }
    let lhs = integrate_scalar(&omega_u.left_mul(f)?, &target_backend)?;
    let rhs = integrate_scalar(&scaled.left_mul(&multiply.pullback(f)?)?, backend)?;
    Ok(ProductFormulaReport {
        lhs,
        rhs,
        constant,
        modular,
    })
}

impl fmt::Display for ProductFormulaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "lhs={} rhs={} c={} {}",
            self.lhs,
            self.rhs,
            format_rational(&self.constant),
            self.modular
        )
    }
}
