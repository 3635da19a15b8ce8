//! Coordinates on `Ber(V)` and `Ber(V*)` relative to a reference basis
//! `x_1..x_n` of `V` and its dual basis `ξ_1..ξ_n`.

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

use super::SuperMatrix;

/// `coefficient · D(v_1, …, v_n)` where `v_j = Σ_i x_i F_{ij}` for the even
/// rational frame `F`. Equals `coefficient · Ber(F) · D(x_1, …, x_n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BerElement {
    pub coefficient: Rational,
    pub frame: SuperMatrix<Rational>,
}

/// `coefficient · D(ω_n, …, ω_1)` where `ω_j = Σ_i ξ_i G_{ij}`.
/// Equals `coefficient · Ber(G) · D(ξ_n, …, ξ_1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BerDualElement {
    pub coefficient: Rational,
    pub frame: SuperMatrix<Rational>,
}

impl BerElement {
    pub fn reference(p: usize, q: usize, coefficient: Rational) -> Self {
        BerElement {
            coefficient,
            frame: SuperMatrix::identity(p, q, 0),
        }
    }
}

impl BerDualElement {
    pub fn reference(p: usize, q: usize, coefficient: Rational) -> Self {
        BerDualElement {
            coefficient,
            frame: SuperMatrix::identity(p, q, 0),
        }
    }
}

/// Bilinear extension of `⟨D(ξ_n, …, ξ_1), D(x_1, …, x_n)⟩ = 1`.
pub fn canonical_pairing(w1: &BerDualElement, w2: &BerElement) -> Result<Scalar> {
    let (f1, f2) = (&w1.frame, &w2.frame);
    if f1.p() != f2.p() || f1.q() != f2.q() {
        return Err(Error::Dimension(format!(
            "Ber of a ({}|{}) dual paired with Ber of a ({}|{}) space",
            f1.p(),
            f1.q(),
            f2.p(),
            f2.q()
        )));
    }
    if f1.generators() != 0 || f2.generators() != 0 {
        return Err(Error::Dimension("frames must have rational entries".into()));
    }
    let b1 = f1.berezinian()?.body();
    let b2 = f2.berezinian()?.body();
    Ok(Scalar::rational(&w1.coefficient * &w2.coefficient * b1 * b2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::GrassmannElement;
    use crate::scalar::rat;

    fn frame(p: usize, q: usize, rows: &[&[i64]]) -> SuperMatrix<Rational> {
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| GrassmannElement::constant(0, rat(v))))
            .collect();
        SuperMatrix::new(p, q, 0, entries).unwrap()
    }

    #[test]
    fn reference_bases_pair_to_one_and_bilinearly() {
        let dual = BerDualElement::reference(2, 1, rat(1));
        let ber = BerElement::reference(2, 1, rat(1));
        assert_eq!(canonical_pairing(&dual, &ber).unwrap(), Scalar::from_int(1));
        let dual = BerDualElement::reference(2, 1, rat(2));
        let ber = BerElement::reference(2, 1, rat(3));
        assert_eq!(canonical_pairing(&dual, &ber).unwrap(), Scalar::from_int(6));
    }

    #[test]
    fn dimension_mismatch() {
        let dual = BerDualElement::reference(1, 1, rat(1));
        let ber = BerElement::reference(2, 1, rat(1));
        assert!(matches!(canonical_pairing(&dual, &ber), Err(Error::Dimension(_))));
    }

    #[test]
    fn dual_frames_pair_to_one() {
        // v = x·T, ω = ξ·(T⁻¹)ᵗ is the dual basis of v.
        let t = frame(2, 1, &[&[2, 1, 0], &[1, 1, 0], &[0, 0, 5]]);
        let t_inv_transpose = frame(2, 1, &[&[1, -1, 0], &[-1, 2, 0], &[0, 0, 1]]);
        let mut dual = BerDualElement::reference(2, 1, rat(1));
        dual.frame = SuperMatrix::new(
            2,
            1,
            0,
            t_inv_transpose
                .entries()
                .iter()
                .enumerate()
                .map(|(k, e)| if k == 8 { e.scale(&crate::scalar::ratio(1, 5)) } else { e.clone() })
                .collect(),
        )
        .unwrap();
        let ber = BerElement {
            coefficient: rat(1),
            frame: t,
        };
        assert_eq!(canonical_pairing(&dual, &ber).unwrap(), Scalar::from_int(1));
    }
}
