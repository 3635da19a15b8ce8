use super::*;
use crate::berezin::{monomial_density, IntegrationBackend};
use crate::lie_super::LieSuperAlgebra;
use crate::polynomial::Polynomial;
use crate::scalar::{rat, Scalar};

fn density_of(g: &SuperGroupChart, side: Side) -> SuperFunction {
    solve_invariant_density(g, side).unwrap().density().clone()
}

#[test]
fn builtins_satisfy_group_laws() {
    translation(2, 2).unwrap();
    heisenberg().unwrap();
    ax_plus_b().unwrap();
    gl11().unwrap();
    multiplicative().unwrap();
}

#[test]
fn broken_inverse_is_rejected() {
    let g = ax_plus_b().unwrap();
    let wrong_inv = SuperMorphism::identity(g.shape());
    let err = SuperGroupChart::new("bad", g.shape(), g.mul().clone(), wrong_inv, vec![rat(1)], g.basis_names().to_vec());
    assert!(matches!(err, Err(Error::GroupLaw(_))));
}

#[test]
fn gl11_lie_algebra_is_gl11() {
    assert_eq!(gl11().unwrap().lie_algebra().unwrap(), LieSuperAlgebra::gl11());
}

#[test]
fn ax_plus_b_bracket() {
    let alg = ax_plus_b().unwrap().lie_algebra().unwrap();
    assert_eq!(alg.structure_constant(0, 1), &vec![rat(0), rat(1)]);
    assert_eq!(alg.structure_constant(1, 1), &vec![rat(0), rat(0)]);
}

#[test]
fn heisenberg_bracket() {
    let alg = heisenberg().unwrap().lie_algebra().unwrap();
    assert_eq!(alg.structure_constant(1, 1), &vec![rat(2), rat(0), rat(0)]);
    assert_eq!(alg.structure_constant(1, 2), &vec![rat(0), rat(0), rat(0)]);
    assert_eq!(alg.structure_constant(0, 1), &vec![rat(0), rat(0), rat(0)]);
}

#[test]
fn invariant_densities() {
    for g in [translation(1, 1).unwrap(), heisenberg().unwrap(), ax_plus_b().unwrap(), gl11().unwrap()] {
        assert_eq!(density_of(&g, Side::Left), SuperFunction::one(g.shape()), "{}", g.name());
    }
    let g = ax_plus_b().unwrap().with_density_prefactor(Monomial::new(vec![-1]));
    assert_eq!(density_of(&g, Side::Left), SuperFunction::one(g.shape()));
    let expected = SuperFunction::polynomial(g.shape(), Polynomial::monomial(Monomial::new(vec![-1]), rat(1)));
    assert_eq!(density_of(&g, Side::Right), expected);
    let h = multiplicative().unwrap();
    assert_eq!(density_of(&h, Side::Left), SuperFunction::polynomial(h.shape(), Polynomial::monomial(Monomial::new(vec![-1]), rat(1))));
}

#[test]
fn right_density_of_ax_plus_b_needs_prefactor() {
    let g = ax_plus_b().unwrap();
    assert!(matches!(solve_invariant_density(&g, Side::Right), Err(Error::Inconclusive(_))));
}

#[test]
fn modular_ratio_ax_plus_b() {
    let g = ax_plus_b().unwrap();
    let even = modular_berezinian(&g, &ax_plus_b_even_subgroup(&g).unwrap()).unwrap();
    let a = |k: i32| Polynomial::monomial(Monomial::new(vec![k]), rat(1));
    let h = multiplicative().unwrap();
    assert_eq!(even.ad_subgroup, SuperFunction::one(h.shape()));
    assert_eq!(even.ad_group, SuperFunction::polynomial(h.shape(), a(-1)));
    assert_eq!(even.ratio, SuperFunction::polynomial(h.shape(), a(1)));
    let odd = modular_berezinian(&g, &ax_plus_b_odd_subgroup(&g).unwrap()).unwrap();
    assert_eq!(odd.ratio, SuperFunction::one(&SuperDomainShape::euclidean(0, 1)));
}

#[test]
fn non_homomorphic_embedding_is_rejected() {
    let g = ax_plus_b().unwrap();
    let h = translation(1, 0).unwrap();
    let shape = h.shape().clone();
    let x = SuperFunction::even_coordinate(&shape, 0).unwrap();
    let emb = SuperMorphism::unchecked(&shape, g.shape(), vec![x.try_add(&SuperFunction::one(&shape)).unwrap()], vec![SuperFunction::zero(&shape)]).unwrap();
    assert!(Subgroup::new(&g, h, emb).is_err());
}

fn bump(shape: &SuperDomainShape, odd: &[usize]) -> SuperFunction {
    // (a-1)^2 (2-a)^2 times an odd monomial, plus a constant-in-odd part
    let a = Polynomial::var(0);
    let one = Polynomial::from_int(1);
    let two = Polynomial::from_int(2);
    let base = (&a - &one).pow(2).unwrap() * (&two - &a).pow(2).unwrap();
    let (idx, _) = OddIndex::from_product(odd).unwrap();
    SuperFunction::term(shape, base.clone(), idx).try_add(&SuperFunction::polynomial(shape, base * a)).unwrap()
}

#[test]
fn fubini_ax_plus_b() {
    let g = ax_plus_b().unwrap();
    let sub = ax_plus_b_odd_subgroup(&g).unwrap();
    let chart = ax_plus_b_odd_quotient(&g).unwrap();
    let f = bump(g.shape(), &[0]);
    let backend = IntegrationBackend::boxed(&[(rat(1), rat(2))]).unwrap();
    let report = fubini_check(&g, &sub, &chart, &f, &backend).unwrap();
    assert!(report.holds(), "{report}");
    assert!(!report.lhs.is_zero());
}

#[test]
fn fubini_translation_and_heisenberg() {
    let g = translation(1, 1).unwrap();
    let sub = translation_odd_subgroup(&g).unwrap();
    let chart = translation_odd_quotient(&g).unwrap();
    let f = monomial_density(g.shape(), &[(3, &[2], &[0]), (1, &[1], &[])]).density().clone();
    let report = fubini_check(&g, &sub, &chart, &f, &IntegrationBackend::gaussian(1)).unwrap();
    assert_eq!(report.sign, -1);
    assert!(report.holds(), "{report}");
    // f·D = D·(-3x²ξ + x) by the module rule, so the integral is +3s
    assert_eq!(report.lhs, Scalar::new(rat(3), 1));

    let g = heisenberg().unwrap();
    let sub = heisenberg_center(&g).unwrap();
    let chart = heisenberg_center_quotient(&g).unwrap();
    let f = monomial_density(g.shape(), &[(5, &[2], &[0, 1]), (1, &[0], &[0])]).density().clone();
    let report = fubini_check(&g, &sub, &chart, &f, &IntegrationBackend::gaussian(1)).unwrap();
    assert!(report.holds(), "{report}");
    assert!(!report.lhs.is_zero());
}

#[test]
fn product_formula_ax_plus_b() {
    let g = ax_plus_b().unwrap();
    let even = ax_plus_b_even_subgroup(&g).unwrap();
    let odd = ax_plus_b_odd_subgroup(&g).unwrap();
    let backend = IntegrationBackend::boxed(&[(rat(1), rat(2))]).unwrap();

    let report = product_formula_check(&g, &odd, &even, &bump(g.shape(), &[0]), &backend).unwrap();
    assert!(report.holds(), "{report}");
    assert_eq!(report.constant, rat(-1));
    assert_eq!(report.modular.ratio.format(), "x1");

    let report = product_formula_check(&g, &even, &odd, &bump(g.shape(), &[0]), &backend).unwrap();
    assert!(report.holds(), "{report}");
    assert_eq!(report.constant, rat(1));
    assert_eq!(report.modular.ratio, SuperFunction::one(&SuperDomainShape::euclidean(0, 1)));
    assert!(!report.lhs.is_zero());
}

