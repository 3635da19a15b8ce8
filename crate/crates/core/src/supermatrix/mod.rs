//! Square block supermatrices over a Grassmann algebra: products,
//! supertrace, and the Berezinian.
//!
//! Rows and columns are ordered even-first: indices `0..p` are even, `p..p+q`
//! are odd. For an even matrix the diagonal blocks `A` (p×p) and `D` (q×q)
//! hold even entries and the off-diagonal blocks `B`, `C` hold odd ones; an
//! odd matrix swaps the roles.

mod koszul;
mod pairing;

pub use koszul::{homological_berezinian, KoszulComplexSlice, KoszulDegree};
pub use pairing::{canonical_pairing, BerDualElement, BerElement};

use std::fmt;

use crate::error::{Error, Result};
use crate::grassmann::Grassmann;
use crate::scalar::{Coefficient, Parity, Rational};

#[derive(Clone, PartialEq)]
pub struct SuperMatrix<C> {
    p: usize,
    q: usize,
    generators: usize,
    parity: Parity,
    entries: Vec<Grassmann<C>>,
}

impl<C: Coefficient> SuperMatrix<C> {
    /// Even supermatrix from row-major entries.
    pub fn new(p: usize, q: usize, generators: usize, entries: Vec<Grassmann<C>>) -> Result<Self> {
        Self::with_parity(p, q, generators, Parity::Even, entries)
    }

    pub fn with_parity(
        p: usize,
        q: usize,
        generators: usize,
        parity: Parity,
        entries: Vec<Grassmann<C>>,
    ) -> Result<Self> {
        let n = p + q;
        if entries.len() != n * n {
            return Err(Error::Dimension(format!(
                "({p}|{q}) supermatrix needs {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        for (k, e) in entries.iter().enumerate() {
            if e.generators() != generators {
                return Err(Error::Dimension(format!(
                    "entry {k} lives in Λ_{} instead of Λ_{generators}",
                    e.generators()
                )));
            }
            let (i, j) = (k / n, k % n);
            let expected = block_parity(p, i, j) + parity;
            if !e.is_zero() && e.parity() != Some(expected) {
                return Err(Error::Parity(format!(
                    "entry ({i},{j}) must be {expected} in a {parity} supermatrix"
                )));
            }
        }
        Ok(SuperMatrix {
            p,
            q,
            generators,
            parity,
            entries,
        })
    }

    pub fn zero(p: usize, q: usize, generators: usize) -> Self {
        let n = p + q;
        SuperMatrix {
            p,
            q,
            generators,
            parity: Parity::Even,
            entries: vec![Grassmann::zero(generators); n * n],
        }
    }

    pub fn identity(p: usize, q: usize, generators: usize) -> Self {
        let mut m = Self::zero(p, q, generators);
        for i in 0..p + q {
            m.entries[i * (p + q) + i] = Grassmann::one(generators);
        }
        m
    }

    /// Block-diagonal matrix with the given even diagonal entries.
    pub fn diagonal(p: usize, q: usize, generators: usize, diag: Vec<Grassmann<C>>) -> Result<Self> {
        if diag.len() != p + q {
            return Err(Error::Dimension("diagonal length must be p+q".into()));
        }
        let n = p + q;
        let mut entries = vec![Grassmann::zero(generators); n * n];
        for (i, d) in diag.into_iter().enumerate() {
            entries[i * n + i] = d;
        }
        Self::new(p, q, generators, entries)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn size(&self) -> usize {
        self.p + self.q
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn entry(&self, i: usize, j: usize) -> &Grassmann<C> {
        &self.entries[i * self.size() + j]
    }

    pub fn entries(&self) -> &[Grassmann<C>] {
        &self.entries
    }

    /// Row/column parity of index `i`.
    pub fn index_parity(&self, i: usize) -> Parity {
        if i < self.p {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    fn block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Vec<Vec<Grassmann<C>>> {
        rows.map(|i| cols.clone().map(|j| self.entry(i, j).clone()).collect())
            .collect()
    }

    /// Restriction to the rows and columns in `indices` (which must be
    /// listed even-first).
    pub fn principal_submatrix(&self, indices: &[usize]) -> Result<Self> {
        let p = indices.iter().filter(|&&i| i < self.p).count();
        if indices[..p].iter().any(|&i| i >= self.p) {
            return Err(Error::Structural("submatrix indices must be even-first".into()));
        }
        let entries = indices
            .iter()
            .flat_map(|&i| indices.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.entry(i, j).clone())
            .collect();
        Self::with_parity(p, indices.len() - p, self.generators, self.parity, entries)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.p != other.p || self.q != other.q || self.generators != other.generators {
            return Err(Error::Dimension(format!(
                "({}|{}) over Λ_{} vs ({}|{}) over Λ_{}",
                self.p, self.q, self.generators, other.p, other.q, other.generators
            )));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.size();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Grassmann::zero(self.generators);
                for k in 0..n {
                    let a = self.entry(i, k);
                    let b = other.entry(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.try_add(&a.try_mul(b)?)?;
                }
                entries.push(acc);
            }
        }
        Self::with_parity(self.p, self.q, self.generators, self.parity + other.parity, entries)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if self.parity != other.parity {
            return Err(Error::Parity("sum of supermatrices of different parity".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(SuperMatrix {
            entries,
            ..self.clone()
        })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        SuperMatrix {
            entries: self.entries.iter().map(|e| e.scale(r)).collect(),
            ..self.clone()
        }
    }

    pub fn map_entries(&self, f: impl Fn(&Grassmann<C>) -> Result<Grassmann<C>>) -> Result<Self> {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>>>()?;
        Self::with_parity(self.p, self.q, self.generators, self.parity, entries)
    }

    /// Supertrace `tr(A) - (-1)^{|X|} tr(D)`: `tr(A) - tr(D)` for even `X`,
    /// `tr(A) + tr(D)` for odd `X`.
    pub fn supertrace(&self) -> Grassmann<C> {
        let mut acc = Grassmann::zero(self.generators);
        for i in 0..self.size() {
            let d = self.entry(i, i);
            acc = if i < self.p || self.parity.is_odd() { &acc + d } else { &acc - d };
        }
        acc
    }

    /// Berezinian `det(A - B D⁻¹ C) · det(D)⁻¹`.
    pub fn berezinian(&self) -> Result<Grassmann<C>> {
        if self.parity != Parity::Even {
            return Err(Error::Parity("Berezinian of an odd supermatrix".into()));
        }
        let (p, n) = (self.p, self.size());
        let a = self.block(0..p, 0..p);
        let b = self.block(0..p, p..n);
        let c = self.block(p..n, 0..p);
        let d = self.block(p..n, p..n);

        let det_d = even_determinant(&d, self.generators)?;
        if det_d.body().is_zero() {
            return Err(Error::Singular("D block has singular body".into()));
        }
        let det_d_inv = det_d
            .inv_even()
            .map_err(|e| Error::Singular(format!("D block determinant not invertible: {e}")))?;
        if p == 0 {
            return Ok(det_d_inv);
        }
        let body_a: Vec<Vec<Grassmann<C>>> = a
            .iter()
            .map(|row| row.iter().map(|e| Grassmann::constant(self.generators, e.body())).collect())
            .collect();
        if even_determinant(&body_a, self.generators)?.is_zero() {
            return Err(Error::Singular("A block has singular body".into()));
        }

        // A - B · adj(D) · C · det(D)⁻¹
        let adj_d = adjugate(&d, self.generators)?;
        let mut schur = a;
        for i in 0..p {
            for j in 0..p {
                let mut corr = Grassmann::zero(self.generators);
                for k in 0..self.q {
                    if b[i][k].is_zero() {
                        continue;
                    }
                    for l in 0..self.q {
                        if adj_d[k][l].is_zero() || c[l][j].is_zero() {
                            continue;
                        }
                        let t = b[i][k].try_mul(&adj_d[k][l])?.try_mul(&c[l][j])?;
                        corr = corr.try_add(&t)?;
                    }
                }
                if !corr.is_zero() {
                    schur[i][j] = schur[i][j].try_sub(&corr.try_mul(&det_d_inv)?)?;
                }
            }
        }
        even_determinant(&schur, self.generators)?.try_mul(&det_d_inv)
    }

    /// Transpose-free supertranspose is not needed here; this is the plain
    /// entrywise body (all souls dropped).
    pub fn body(&self) -> Self {
        SuperMatrix {
            entries: self
                .entries
                .iter()
                .map(|e| Grassmann::constant(self.generators, e.body()))
                .collect(),
            ..self.clone()
        }
    }
}

fn block_parity(p: usize, i: usize, j: usize) -> Parity {
    Parity::from_bit(usize::from(i >= p) + usize::from(j >= p))
}

/// Determinant of a square matrix of pairwise commuting (even) entries,
/// by Laplace expansion memoized over column subsets. Fraction-free.
pub fn even_determinant<C: Coefficient>(m: &[Vec<Grassmann<C>>], generators: usize) -> Result<Grassmann<C>> {
    let n = m.len();
    if n == 0 {
        return Ok(Grassmann::one(generators));
    }
    if m.iter().flatten().any(|e| !e.is_even()) {
        return Err(Error::Parity("determinant needs even entries".into()));
    }
    // minors[S] = det of rows 0..|S| restricted to columns S.
    let mut minors: Vec<Option<Grassmann<C>>> = vec![None; 1 << n];
    minors[0] = Some(Grassmann::one(generators));
    for set in 1usize..(1 << n) {
        let row = set.count_ones() as usize - 1;
        let mut acc = Grassmann::zero(generators);
        let mut position = 0;
        for j in 0..n {
            if set & (1 << j) == 0 {
                continue;
            }
            let entry = &m[row][j];
            if !entry.is_zero() {
                if let Some(minor) = &minors[set & !(1 << j)] {
                    if !minor.is_zero() {
                        // Sign of column j among the columns of `set`, for
                        // expansion along the last row of the block.
                        let sign_exp = row + position;
                        let t = minor.try_mul(entry)?;
                        acc = if sign_exp.is_multiple_of(2) { acc.try_add(&t)? } else { acc.try_sub(&t)? };
                    }
                }
            }
            position += 1;
        }
        minors[set] = Some(acc);
    }
    Ok(minors[(1 << n) - 1].take().unwrap())
}

/// Adjugate of a matrix of commuting entries.
fn adjugate<C: Coefficient>(m: &[Vec<Grassmann<C>>], generators: usize) -> Result<Vec<Vec<Grassmann<C>>>> {
    let n = m.len();
    let mut adj = vec![vec![Grassmann::zero(generators); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<Grassmann<C>>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c].clone()).collect())
                .collect();
            let d = even_determinant(&minor, generators)?;
            adj[i][j] = if (i + j) % 2 == 0 { d } else { d.negated() };
        }
    }
    Ok(adj)
}

impl<C: Coefficient> fmt::Debug for SuperMatrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SuperMatrix({}|{}, {}) [", self.p, self.q, self.parity)?;
        for i in 0..self.size() {
            let row: Vec<String> = (0..self.size()).map(|j| format!("{:?}", self.entry(i, j))).collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::GrassmannElement;
    use crate::scalar::rat;

    fn c(n: usize, v: i64) -> GrassmannElement {
        GrassmannElement::constant(n, rat(v))
    }

    fn xi(n: usize, i: usize) -> GrassmannElement {
        GrassmannElement::generator(n, i).unwrap()
    }

    #[test]
    fn identity_is_neutral_and_diagonals_multiply() {
        let x = SuperMatrix::diagonal(1, 1, 0, vec![c(0, 2), c(0, 3)]).unwrap();
        let y = SuperMatrix::diagonal(1, 1, 0, vec![c(0, 5), c(0, 7)]).unwrap();
        let id = SuperMatrix::identity(1, 1, 0);
        assert_eq!(id.try_mul(&x).unwrap(), x);
        assert_eq!(
            x.try_mul(&y).unwrap(),
            SuperMatrix::diagonal(1, 1, 0, vec![c(0, 10), c(0, 21)]).unwrap()
        );
    }

    #[test]
    fn odd_off_diagonal_product() {
        // [[1,ξ1],[ξ2,1]]·[[1,-ξ1],[-ξ2,1]] = [[1-ξ1ξ2,0],[0,1+ξ1ξ2]]
        let n = 2;
        let x = SuperMatrix::new(1, 1, n, vec![c(n, 1), xi(n, 0), xi(n, 1), c(n, 1)]).unwrap();
        let y = SuperMatrix::new(1, 1, n, vec![c(n, 1), xi(n, 0).negated(), xi(n, 1).negated(), c(n, 1)])
            .unwrap();
        let x12 = &xi(n, 0) * &xi(n, 1);
        let expected = SuperMatrix::diagonal(1, 1, n, vec![&c(n, 1) - &x12, &c(n, 1) + &x12]).unwrap();
        assert_eq!(x.try_mul(&y).unwrap(), expected);
    }

    #[test]
    fn parity_layout_is_enforced() {
        let err = SuperMatrix::new(1, 1, 1, vec![xi(1, 0), c(1, 0), c(1, 0), c(1, 1)]);
        assert!(matches!(err, Err(Error::Parity(_))));
    }

    #[test]
    fn supertrace_examples() {
        assert!(SuperMatrix::<Rational>::identity(1, 1, 0).supertrace().is_zero());
        let x = SuperMatrix::diagonal(1, 1, 0, vec![c(0, 3), c(0, 5)]).unwrap();
        assert_eq!(x.supertrace(), c(0, -2));
    }

    #[test]
    fn berezinian_block_diagonal() {
        let x = SuperMatrix::diagonal(1, 1, 0, vec![c(0, 6), c(0, 3)]).unwrap();
        assert_eq!(x.berezinian().unwrap(), c(0, 2));
    }

    #[test]
    fn berezinian_two_by_two_closed_form() {
        // [[a,β],[γ,d]] -> a/d - βγ/d²  with a = 2 + ξ3ξ4, d = 3, β = ξ1, γ = ξ2
        let n = 4;
        let a = &c(n, 2) + &(&xi(n, 2) * &xi(n, 3));
        let d = c(n, 3);
        let (beta, gamma) = (xi(n, 0), xi(n, 1));
        let x = SuperMatrix::new(1, 1, n, vec![a.clone(), beta.clone(), gamma.clone(), d.clone()]).unwrap();
        let d_inv = d.inv_even().unwrap();
        let expected = &(&a * &d_inv) - &(&(&beta * &gamma) * &(&d_inv * &d_inv));
        assert_eq!(x.berezinian().unwrap(), expected);
    }

    #[test]
    fn berezinian_singular_d() {
        let x = SuperMatrix::diagonal(1, 1, 0, vec![c(0, 1), c(0, 0)]).unwrap();
        assert!(matches!(x.berezinian(), Err(Error::Singular(_))));
    }

    #[test]
    fn determinant_matches_rational_elimination() {
        let rows = [[2, -1, 0], [1, 3, 4], [0, 5, -2]];
        let m: Vec<Vec<GrassmannElement>> =
            rows.iter().map(|r| r.iter().map(|&v| c(0, v)).collect()).collect();
        let lin = crate::linalg::Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect(),
        );
        assert_eq!(even_determinant(&m, 0).unwrap().body(), lin.determinant().unwrap());
    }
}
