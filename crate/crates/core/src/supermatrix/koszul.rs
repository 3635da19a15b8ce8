//! Degree-truncated homology of multiplication by the canonical odd element
//! `Π ∈ ΠV ⊗ V*` on `S(ΠV ⊕ V*)`, for `V` of dimension `(p|q)`.
//!
//! Generators: `θ_i` (odd, from `ΠV_0`), `x_i` (even, `V_0*`), `u_j` (even,
//! `ΠV_1`), `ψ_j` (odd, `V_1*`), and `Π = Σ θ_i x_i + Σ u_j ψ_j`. Every
//! generator has polynomial degree 1, so `Π` raises degree by 2.

use crate::error::{Error, Result};
use crate::grassmann::{Grassmann, OddIndex};
use crate::linalg::Matrix;
use crate::polynomial::{Monomial, Polynomial};
use crate::scalar::{rat, Parity};

type Element = Grassmann<Polynomial>;

/// Homology of one degree and parity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulDegree {
    pub degree: usize,
    pub parity: Parity,
    pub dim: usize,
}

/// The complex truncated at `degree_cap`, with bases and the differential
/// `degree d → d+2` for every retained degree.
#[derive(Debug, Clone)]
pub struct KoszulComplexSlice {
    p: usize,
    q: usize,
    degree_cap: usize,
    bases: Vec<Vec<(Monomial, OddIndex)>>,
    differentials: Vec<Matrix>,
}

impl KoszulComplexSlice {
    pub fn new(p: usize, q: usize, degree_cap: usize) -> Result<Self> {
        if p + q == 0 {
            return Err(Error::Dimension("V must be nonzero".into()));
        }
        let bases: Vec<_> = (0..=degree_cap).map(|d| basis(p, q, d)).collect();
        let pi = canonical_element(p, q);
        let mut differentials = Vec::new();
        for d in 0..=degree_cap.saturating_sub(2) {
            let target = &bases[d + 2];
            let mut m = Matrix::zeros(target.len(), bases[d].len());
            for (col, (mono, odd)) in bases[d].iter().enumerate() {
                let v = Element::monomial(p + q, *odd, Polynomial::monomial(mono.clone(), rat(1)));
                let image = pi.try_mul(&v)?;
                for (odd_img, poly) in image.terms() {
                    for (mono_img, c) in poly.terms() {
                        let row = target
                            .iter()
                            .position(|(m2, o2)| m2 == mono_img && o2 == odd_img)
                            .expect("image stays in the graded basis");
                        m[(row, col)] = c.clone();
                    }
                }
            }
            differentials.push(m);
        }
        Ok(KoszulComplexSlice {
            p,
            q,
            degree_cap,
            bases,
            differentials,
        })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    pub fn basis_len(&self, degree: usize) -> usize {
        self.bases[degree].len()
    }

    /// `d_{d+2} ∘ d_d = 0` for every degree where both maps are retained.
    pub fn squares_to_zero(&self) -> bool {
        let n = self.differentials.len();
        (0..n).all(|d| {
            d + 2 >= n
                || self.differentials[d + 2]
                    .mul(&self.differentials[d])
                    .map(|m| m == Matrix::zeros(m.rows(), m.cols()))
                    .unwrap_or(false)
        })
    }

    /// Homology in every degree whose outgoing differential is retained.
    pub fn homology(&self) -> Vec<KoszulDegree> {
        let mut out = Vec::new();
        for d in 0..self.differentials.len() {
            for parity in [Parity::Even, Parity::Odd] {
                let cols: Vec<usize> = (0..self.bases[d].len())
                    .filter(|&i| self.bases[d][i].1.parity() == parity)
                    .collect();
                let kernel = cols.len() - restrict_cols(&self.differentials[d], &cols).rank();
                // Incoming map from degree d-2 lands in parity `parity` from
                // elements of the opposite parity.
                let image = if d >= 2 {
                    let src: Vec<usize> = (0..self.bases[d - 2].len())
                        .filter(|&i| self.bases[d - 2][i].1.parity() != parity)
                        .collect();
                    restrict_cols(&self.differentials[d - 2], &src).rank()
                } else {
                    0
                };
                let dim = kernel - image;
                if dim > 0 {
                    out.push(KoszulDegree { degree: d, parity, dim });
                }
            }
        }
        out
    }
}

fn restrict_cols(m: &Matrix, cols: &[usize]) -> Matrix {
    let rows = (0..m.rows())
        .map(|i| cols.iter().map(|&j| m[(i, j)].clone()).collect())
        .collect();
    let mut r = Matrix::from_rows(rows);
    if m.rows() == 0 {
        r = Matrix::zeros(0, cols.len());
    }
    r
}

/// Even variables: `x_1..x_p, u_1..u_q`; odd: `θ_1..θ_p, ψ_1..ψ_q`.
fn canonical_element(p: usize, q: usize) -> Element {
    let one = rat(1);
    let mut pi = Element::zero(p + q);
    for i in 0..p {
        pi.add_term(OddIndex::single(i), Polynomial::monomial(Monomial::var(i), one.clone()));
    }
    for j in 0..q {
        // u_j ψ_j: the even factor commutes, so the term is just u_j·ψ_j.
        pi.add_term(OddIndex::single(p + j), Polynomial::monomial(Monomial::var(p + j), one.clone()));
    }
    pi
}

fn basis(p: usize, q: usize, degree: usize) -> Vec<(Monomial, OddIndex)> {
    let mut out = Vec::new();
    for bits in 0u64..(1 << (p + q)) {
        let odd = OddIndex::from_bits(bits);
        if odd.len() > degree {
            continue;
        }
        for exps in compositions(degree - odd.len(), p + q) {
            out.push((Monomial::new(exps), odd));
        }
    }
    out
}

/// All ways to write `total` as an ordered sum of `parts` non-negative ints.
fn compositions(total: usize, parts: usize) -> Vec<Vec<i32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first as i32);
            out.push(rest);
        }
    }
    out
}

fn summarize(slice: &KoszulComplexSlice) -> Result<(usize, Parity)> {
    let homology = slice.homology();
    let total: usize = homology.iter().map(|h| h.dim).sum();
    let parities: Vec<Parity> = homology.iter().map(|h| h.parity).collect();
    let Some(&first) = parities.first() else {
        return Ok((0, Parity::Even));
    };
    if parities.iter().any(|&par| par != first) {
        return Err(Error::Inconclusive("homology is not purely even or odd".into()));
    }
    // Homology of the truncated complex is Π^p Ber(V): shift parity back by p.
    Ok((total, first + Parity::from_bit(slice.p)))
}

/// Total dimension and parity of `Ber(V)` for `V` of dimension `(p|q)`,
/// computed from homology up to `degree_cap` and checked for stability
/// against `degree_cap + 1`.
pub fn homological_berezinian(p: usize, q: usize, degree_cap: usize) -> Result<(usize, Parity)> {
    if p + q == 0 {
        return Err(Error::Dimension("V must be nonzero".into()));
    }
    if degree_cap < p + q + 2 {
        return Err(Error::Inconclusive(format!(
            "degree cap {degree_cap} below p+q+2 = {}",
            p + q + 2
        )));
    }
    let a = KoszulComplexSlice::new(p, q, degree_cap)?;
    let b = KoszulComplexSlice::new(p, q, degree_cap + 1)?;
    if !a.squares_to_zero() || !b.squares_to_zero() {
        return Err(Error::Structural("multiplication by Π does not square to zero".into()));
    }
    let (ra, rb) = (summarize(&a)?, summarize(&b)?);
    if ra != rb {
        return Err(Error::Inconclusive(format!(
            "homology not stable: {ra:?} at cap {degree_cap}, {rb:?} at cap {}",
            degree_cap + 1
        )));
    }
    Ok(ra)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_dimensions() {
        assert_eq!(homological_berezinian(1, 0, 3).unwrap(), (1, Parity::Even));
        assert_eq!(homological_berezinian(0, 1, 3).unwrap(), (1, Parity::Odd));
        assert_eq!(homological_berezinian(1, 1, 4).unwrap(), (1, Parity::Odd));
    }

    #[test]
    fn generator_sits_in_degree_p_plus_q() {
        let slice = KoszulComplexSlice::new(2, 1, 5).unwrap();
        let h = slice.homology();
        assert_eq!(h, vec![KoszulDegree { degree: 3, parity: Parity::Odd, dim: 1 }]);
        assert!(slice.squares_to_zero());
    }

    #[test]
    fn small_cap_is_inconclusive() {
        assert!(matches!(homological_berezinian(2, 1, 3), Err(Error::Inconclusive(_))));
    }
}
