//! Products of sections and integration along the fibres of a trivial
//! bundle `B × F → B`.
//!
//! With `dim B = (m|n)` and `dim F = (p|q)`,
//! `D(x,y,ξ,η) = (-1)^{np} D(x,ξ) ⊗ D(y,η)`, and moving a base density `g`
//! past `D(y,η)` costs `(-1)^{q|g|}`.

use crate::error::{Error, Result};
use crate::grassmann::OddIndex;
use crate::polynomial::{Monomial, Polynomial};
use crate::scalar::{sign_pow, Parity};
use crate::superdomain::{SuperDomainShape, SuperFunction};

use super::{homogeneous_parts, integrate, interval_within, BerezinSection, IntegrationBackend};

/// `ω₁ ⊗ ω₂` with `ω₁` on the base and `ω₂` on the fibre.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorTerm {
    pub base: BerezinSection,
    pub fibre: BerezinSection,
}

fn check_plain(shape: &SuperDomainShape) -> Result<()> {
    if shape.params() != 0 || shape.aux() != 0 {
        return Err(Error::Dimension("products and fibre integrals need parameter-free shapes".into()));
    }
    Ok(())
}

/// Sign relating `(D₁ g) ⊗ (D₂ h)` to `D(x,y,ξ,η)·g h` for homogeneous `g`.
fn tensor_sign(n: usize, p: usize, q: usize, g_parity: Parity) -> i32 {
    sign_pow(n * p) * sign_pow(q * g_parity.bit())
}

/// `ω₁ ⊗ ω₂` as a section on `B × F`.
pub fn product_section(omega1: &BerezinSection, omega2: &BerezinSection) -> Result<BerezinSection> {
    let (b, f) = (omega1.shape(), omega2.shape());
    check_plain(b)?;
    check_plain(f)?;
    let total = b.product(f)?;
    let h = omega2.density().extend_right(b)?;
    let mut density = SuperFunction::zero(&total);
    for g in homogeneous_parts(omega1.density()) {
        let sign = tensor_sign(b.n(), f.m(), f.n(), g.parity().unwrap_or(Parity::Even));
        let term = g.extend_left(f)?.try_mul(&h)?;
        density = density.try_add(&if sign < 0 { term.negated() } else { term })?;
    }
    Ok(BerezinSection::with_gauss_exponent(
        density,
        omega1.gauss_exponent() + omega2.gauss_exponent(),
    ))
}

/// Writes a section on `B × F` as `Σ (D₁ g_i) ⊗ (D₂ h_i)` with `g_i` on the
/// base and `h_i` a monomial on the fibre. The base boxes of the terms are
/// those of `base`; the fibre boxes those of `fibre`.
pub fn decompose(
    omega: &BerezinSection,
    base: &SuperDomainShape,
    fibre: &SuperDomainShape,
) -> Result<Vec<TensorTerm>> {
    check_plain(base)?;
    check_plain(fibre)?;
    let total = base.product(fibre)?;
    if !total.same_dimensions(omega.shape()) {
        return Err(Error::Dimension("section does not live on base × fibre".into()));
    }
    let (m, n, p, q) = (base.m(), base.n(), fibre.m(), fibre.n());
    let base_mask = (1u64 << n) - 1;
    let mut out = Vec::new();
    for (alpha, coeff) in omega.density().terms() {
        let base_odd = OddIndex::from_bits(alpha.bits() & base_mask);
        let fibre_odd = OddIndex::from_bits(alpha.bits() >> n);
        for (low, high) in coeff.split_variables(m) {
            let fibre_mono = Monomial::new(high.exponents().iter().skip(m).copied().collect());
            let sign = tensor_sign(n, p, q, base_odd.parity());
            let g = SuperFunction::term(base, if sign < 0 { -low } else { low }, base_odd);
            let h = SuperFunction::term(fibre, Polynomial::monomial(fibre_mono, crate::scalar::rat(1)), fibre_odd);
            out.push(TensorTerm {
                base: BerezinSection::with_gauss_exponent(g, omega.gauss_exponent()),
                fibre: BerezinSection::new(h),
            });
        }
    }
    Ok(out)
}

/// `p_!(Σ ω₁ᵢ ⊗ ω₂ᵢ) = Σ ω₁ᵢ · ∫_F ω₂ᵢ`.
pub fn fibre_integrate_tensor(
    terms: &[TensorTerm],
    base: &SuperDomainShape,
    fibre_backend: &IntegrationBackend,
) -> Result<BerezinSection> {
    let mut acc = BerezinSection::new(SuperFunction::zero(base));
    for term in terms {
        let c = integrate(&term.fibre, fibre_backend)?.scalar()?;
        let contribution = term.base.with_shape(base)?.scale(&c);
        acc = acc.try_add(&contribution)?;
    }
    Ok(acc)
}

/// Integration along the fibre of `base × fibre → base`. The result lives
/// on `base`, whose boxes must lie within the projection of the section's
/// boxes (support containment).
pub fn fibre_integrate(
    omega: &BerezinSection,
    base: &SuperDomainShape,
    fibre: &SuperDomainShape,
    fibre_backend: &IntegrationBackend,
) -> Result<BerezinSection> {
    let terms = decompose(omega, base, fibre)?;
    let projected = &omega.shape().boxes()[..base.m()];
    if !base.boxes().iter().zip(projected).all(|(b, t)| interval_within(b, t) && interval_within(t, b)) {
        return Err(Error::Domain("base boxes differ from the projection of the total space".into()));
    }
    fibre_integrate_tensor(&terms, base, fibre_backend)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::berezin::{integrate_scalar, monomial_density};
    use crate::scalar::{rat, Scalar};

    #[test]
    fn product_sign_np() {
        let b = SuperDomainShape::euclidean(0, 1);
        let f = SuperDomainShape::euclidean(1, 0);
        let w = product_section(&BerezinSection::standard(&b), &BerezinSection::standard(&f)).unwrap();
        assert_eq!(w.density(), &SuperFunction::constant(&b.product(&f).unwrap(), rat(-1)));
        let b = SuperDomainShape::euclidean(1, 0);
        let w = product_section(&BerezinSection::standard(&b), &BerezinSection::standard(&f)).unwrap();
        assert_eq!(w.density(), &SuperFunction::one(&b.product(&f).unwrap()));
    }

    #[test]
    fn unit_fibre_integral() {
        let b = SuperDomainShape::euclidean(1, 0);
        let f = SuperDomainShape::euclidean(0, 1);
        let w2 = monomial_density(&f, &[(1, &[], &[0])]);
        let w = product_section(&BerezinSection::standard(&b), &w2).unwrap();
        let out = fibre_integrate(&w, &b, &f, &IntegrationBackend::gaussian(0)).unwrap();
        assert_eq!(out, BerezinSection::standard(&b));
    }

    #[test]
    fn product_integral_sign_all_ones() {
        let b = SuperDomainShape::euclidean(1, 1);
        let f = SuperDomainShape::euclidean(1, 1);
        let w1 = monomial_density(&b, &[(1, &[2], &[0]), (3, &[], &[])]);
        let w2 = monomial_density(&f, &[(2, &[0], &[0]), (1, &[1], &[])]);
        let total = product_section(&w1, &w2).unwrap();
        let lhs = integrate_scalar(&total, &IntegrationBackend::gaussian(2)).unwrap();
        let i1 = integrate_scalar(&w1, &IntegrationBackend::gaussian(1)).unwrap();
        let i2 = integrate_scalar(&w2, &IntegrationBackend::gaussian(1)).unwrap();
        // (-1)^{(m+n)q} = (-1)^{2} = 1
        assert_eq!(lhs, &i1 * &i2);
        assert_eq!(lhs, Scalar::new(rat(2), 2));
    }
}
