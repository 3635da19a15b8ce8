//! Built-in groups: `ℝ^{p|q}`, the Heisenberg supergroup, the `ax+b`
//! supergroup and `GL(1|1)`, with some subgroups and quotient charts.

use crate::berezin::monomial_density;
use crate::error::Result;
use crate::scalar::rat;
use crate::superdomain::{Interval, SuperDomainShape, SuperFunction, SuperMorphism};
use crate::Monomial;

use super::{QuotientChart, SuperGroupChart, Subgroup};

type Terms<'a> = &'a [(i64, &'a [i32], &'a [usize])];

fn expr(shape: &SuperDomainShape, terms: Terms) -> SuperFunction {
    monomial_density(shape, terms).density().clone()
}

fn morphism(source: &SuperDomainShape, target: &SuperDomainShape, even: &[Terms], odd: &[Terms]) -> Result<SuperMorphism> {
    SuperMorphism::unchecked(
        source,
        target,
        even.iter().map(|t| expr(source, t)).collect(),
        odd.iter().map(|t| expr(source, t)).collect(),
    )
}

fn names(prefix: &str, k: usize) -> Vec<String> {
    if k == 1 {
        vec![prefix.to_string()]
    } else {
        (1..=k).map(|i| format!("{prefix}{i}")).collect()
    }
}

fn positive_half_line() -> Interval {
    Interval::from(rat(0))
}

/// `ℝ^{p|q}` under addition.
pub fn translation(p: usize, q: usize) -> Result<SuperGroupChart> {
    let g = SuperDomainShape::euclidean(p, q);
    let gg = g.product(&g)?;
    let sum = |shape: &SuperDomainShape, i: usize, j: usize, odd: bool| {
        let (a, b) = if odd {
            (SuperFunction::odd_coordinate(shape, i), SuperFunction::odd_coordinate(shape, j))
        } else {
            (SuperFunction::even_coordinate(shape, i), SuperFunction::even_coordinate(shape, j))
        };
        a?.try_add(&b?)
    };
    let even = (0..p).map(|i| sum(&gg, i, p + i, false)).collect::<Result<_>>()?;
    let odd = (0..q).map(|j| sum(&gg, j, q + j, true)).collect::<Result<_>>()?;
    let mul = SuperMorphism::unchecked(&gg, &g, even, odd)?;
    let id = SuperMorphism::identity(&g);
    let inv = SuperMorphism::unchecked(
        &g,
        &g,
        id.even_components().iter().map(SuperFunction::negated).collect(),
        id.odd_components().iter().map(SuperFunction::negated).collect(),
    )?;
    let mut basis = names("X", p);
    basis.extend(names("Q", q));
    SuperGroupChart::new(&format!("R^{p}|{q}"), &g, mul, inv, vec![rat(0); p], basis)
}

/// Heisenberg supergroup `(z | θ₁, θ₂)` with
/// `(z, θ)(z', θ') = (z + z' + θ₁θ₁' + θ₂θ₂', θ + θ')`.
pub fn heisenberg() -> Result<SuperGroupChart> {
    let g = SuperDomainShape::euclidean(1, 2);
    let gg = g.product(&g)?;
    let mul = morphism(
        &gg,
        &g,
        &[&[(1, &[1, 0], &[]), (1, &[0, 1], &[]), (1, &[], &[0, 2]), (1, &[], &[1, 3])]],
        &[&[(1, &[], &[0]), (1, &[], &[2])], &[(1, &[], &[1]), (1, &[], &[3])]],
    )?;
    let inv = morphism(&g, &g, &[&[(-1, &[1], &[])]], &[&[(-1, &[], &[0])], &[(-1, &[], &[1])]])?;
    SuperGroupChart::new("heisenberg", &g, mul, inv, vec![rat(0)], vec!["Z".into(), "Q1".into(), "Q2".into()])
}

/// `ax+b` supergroup `(a | β)`, `a > 0`, with `(a, β)(a', β') = (aa', β + aβ')`.
pub fn ax_plus_b() -> Result<SuperGroupChart> {
    let g = SuperDomainShape::new(vec![positive_half_line()], 1);
    let gg = g.product(&g)?;
    let mul = morphism(&gg, &g, &[&[(1, &[1, 1], &[])]], &[&[(1, &[], &[0]), (1, &[1], &[1])]])?;
    let inv = morphism(&g, &g, &[&[(1, &[-1], &[])]], &[&[(-1, &[-1], &[0])]])?;
    SuperGroupChart::new("ax+b", &g, mul, inv, vec![rat(1)], vec!["X".into(), "Q".into()])
}

/// `GL(1|1)` near the unit: `[[a, β], [γ, d]]` with `a, d > 0`, coordinates
/// `(a, d | β, γ)` and matrix multiplication.
pub fn gl11() -> Result<SuperGroupChart> {
    let g = SuperDomainShape::new(vec![positive_half_line(), positive_half_line()], 2);
    let gg = g.product(&g)?;
    let mul = morphism(
        &gg,
        &g,
        &[
            &[(1, &[1, 0, 1], &[]), (1, &[], &[0, 3])],
            &[(1, &[0, 1, 0, 1], &[]), (1, &[], &[1, 2])],
        ],
        &[
            &[(1, &[1], &[2]), (1, &[0, 0, 0, 1], &[0])],
            &[(1, &[0, 0, 1], &[1]), (1, &[0, 1], &[3])],
        ],
    )?;
    let inv = morphism(
        &g,
        &g,
        &[
            &[(1, &[-1], &[]), (1, &[-2, -1], &[0, 1])],
            &[(1, &[0, -1], &[]), (-1, &[-1, -2], &[0, 1])],
        ],
        &[&[(-1, &[-1, -1], &[0])], &[(-1, &[-1, -1], &[1])]],
    )?;
    SuperGroupChart::new(
        "GL(1|1)",
        &g,
        mul,
        inv,
        vec![rat(1), rat(1)],
        vec!["E11".into(), "E22".into(), "E12".into(), "E21".into()],
    )
}

/// Positive reals under multiplication, with invariant densities allowed
/// the prefactor `a⁻¹`.
pub fn multiplicative() -> Result<SuperGroupChart> {
    let g = SuperDomainShape::new(vec![positive_half_line()], 0);
    let gg = g.product(&g)?;
    let mul = morphism(&gg, &g, &[&[(1, &[1, 1], &[])]], &[])?;
    let inv = morphism(&g, &g, &[&[(1, &[-1], &[])]], &[])?;
    Ok(SuperGroupChart::new("R>0", &g, mul, inv, vec![rat(1)], vec!["X".into()])?
        .with_density_prefactor(Monomial::new(vec![-1])))
}

fn subgroup(ambient: &SuperGroupChart, group: SuperGroupChart, even: &[Terms], odd: &[Terms]) -> Result<Subgroup> {
    let embedding = morphism(group.shape(), ambient.shape(), even, odd)?;
    Subgroup::new(ambient, group, embedding)
}

/// `{(a, 0)} ⊂ ax+b`.
pub fn ax_plus_b_even_subgroup(g: &SuperGroupChart) -> Result<Subgroup> {
    subgroup(g, multiplicative()?, &[&[(1, &[1], &[])]], &[&[]])
}

/// `{(1, β)} ⊂ ax+b`.
pub fn ax_plus_b_odd_subgroup(g: &SuperGroupChart) -> Result<Subgroup> {
    subgroup(g, translation(0, 1)?, &[&[(1, &[], &[])]], &[&[(1, &[], &[0])]])
}

/// The centre `{(z, 0, 0)}` of the Heisenberg supergroup.
pub fn heisenberg_center(g: &SuperGroupChart) -> Result<Subgroup> {
    subgroup(g, translation(1, 0)?, &[&[(1, &[1], &[])]], &[&[], &[]])
}

/// `{(0, ξ)} ⊂ ℝ^{1|1}`.
pub fn translation_odd_subgroup(g: &SuperGroupChart) -> Result<Subgroup> {
    subgroup(g, translation(0, 1)?, &[&[]], &[&[(1, &[], &[0])]])
}

/// `ℝ^{1|1}/ℝ^{0|1}` on the chart `u ↦ (u, 0)`.
pub fn translation_odd_quotient(g: &SuperGroupChart) -> Result<QuotientChart> {
    let u = SuperDomainShape::euclidean(1, 0);
    let section = morphism(&u, g.shape(), &[&[(1, &[1], &[])]], &[&[]])?;
    let projection = morphism(g.shape(), &u, &[&[(1, &[1], &[])]], &[])?;
    QuotientChart::new(g, &u, section, projection, vec![rat(0)])
}

/// Heisenberg modulo its centre on the chart `θ ↦ (0, θ)`.
pub fn heisenberg_center_quotient(g: &SuperGroupChart) -> Result<QuotientChart> {
    let u = SuperDomainShape::euclidean(0, 2);
    let section = morphism(&u, g.shape(), &[&[]], &[&[(1, &[], &[0])], &[(1, &[], &[1])]])?;
    let projection = morphism(g.shape(), &u, &[], &[&[(1, &[], &[0])], &[(1, &[], &[1])]])?;
    QuotientChart::new(g, &u, section, projection, vec![])
}

/// `ax+b` modulo `{(1, β)}` on the chart `u ↦ (u, 0)`, `u > 0`.
pub fn ax_plus_b_odd_quotient(g: &SuperGroupChart) -> Result<QuotientChart> {
    let u = SuperDomainShape::new(vec![positive_half_line()], 0);
    let section = morphism(&u, g.shape(), &[&[(1, &[1], &[])]], &[&[]])?;
    let projection = morphism(g.shape(), &u, &[&[(1, &[1], &[])]], &[])?;
    Ok(QuotientChart::new(g, &u, section, projection, vec![rat(1)])?.with_density_prefactor(Monomial::new(vec![-1])))
}


/// `ax+b` modulo `{(a, 0)}` on the chart `β ↦ (1, β)`; it carries no
/// invariant density.
pub fn ax_plus_b_even_quotient(g: &SuperGroupChart) -> Result<QuotientChart> {
    let u = SuperDomainShape::euclidean(0, 1);
    let section = morphism(&u, g.shape(), &[&[(1, &[], &[])]], &[&[(1, &[], &[0])]])?;
    let projection = morphism(g.shape(), &u, &[], &[&[(1, &[], &[0])]])?;
    QuotientChart::new(g, &u, section, projection, vec![])
}
