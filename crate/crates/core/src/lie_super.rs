//! Finite-dimensional Lie superalgebras over the rationals, given by
//! structure constants in a homogeneous basis.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::grassmann::GrassmannElement;
use crate::linalg::Matrix;
use crate::scalar::{format_rational, rat, Parity, Rational};
use crate::supermatrix::SuperMatrix;

/// Coordinates of an element in the algebra's basis.
pub type Element = Vec<Rational>;

#[derive(Debug, Clone, PartialEq)]
pub struct LieSuperAlgebra {
    names: Vec<String>,
    parities: Vec<Parity>,
    /// `brackets[i][j]` = coordinates of `[e_i, e_j]`.
    brackets: Vec<Vec<Element>>,
}

/// Outcome of [`LieSuperAlgebra::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validation {
    Valid,
    Invalid(String),
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        *self == Validation::Valid
    }
}

impl LieSuperAlgebra {
    /// Full table of structure constants; no checks beyond shapes.
    pub fn from_table(names: Vec<String>, parities: Vec<Parity>, brackets: Vec<Vec<Element>>) -> Result<Self> {
        let n = names.len();
        if parities.len() != n || brackets.len() != n || brackets.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(Error::Dimension(format!("structure constants do not match {n} generators")));
        }
        Ok(LieSuperAlgebra {
            names,
            parities,
            brackets,
        })
    }

    /// Builds the table from the listed brackets; a missing `[e_j, e_i]` is
    /// filled in as `-(-1)^{|i||j|}[e_i, e_j]`, and other pairs are zero.
    pub fn from_brackets(names: Vec<String>, parities: Vec<Parity>, given: &[(usize, usize, Element)]) -> Result<Self> {
        let n = names.len();
        let zero = vec![Rational::zero(); n];
        let mut table: Vec<Vec<Option<Element>>> = vec![vec![None; n]; n];
        for (i, j, v) in given {
            if *i >= n || *j >= n {
                return Err(Error::IndexOutOfRange { index: (*i).max(*j), size: n });
            }
            if v.len() != n {
                return Err(Error::Dimension(format!("bracket [{i},{j}] has {} coefficients, expected {n}", v.len())));
            }
            table[*i][*j] = Some(v.clone());
        }
        let mut brackets = vec![vec![zero.clone(); n]; n];
        for i in 0..n {
            for j in 0..n {
                brackets[i][j] = match (&table[i][j], &table[j][i]) {
                    (Some(v), _) => v.clone(),
                    (None, Some(w)) => {
                        let sign = -rat(parities[i].koszul(parities[j]) as i64);
                        w.iter().map(|c| c * &sign).collect()
                    }
                    (None, None) => zero.clone(),
                };
            }
        }
        Self::from_table(names, parities, brackets)
    }

    pub fn abelian(p: usize, q: usize) -> Self {
        let names = (0..p).map(|i| format!("X{}", i + 1)).chain((0..q).map(|j| format!("Q{}", j + 1))).collect();
        let parities = std::iter::repeat_n(Parity::Even, p).chain(std::iter::repeat_n(Parity::Odd, q)).collect();
        Self::from_brackets(names, parities, &[]).expect("abelian algebra")
    }

    /// `gl(1|1)` with basis `E11, E22` (even), `E12, E21` (odd) and the
    /// supercommutators of elementary matrices.
    pub fn gl11() -> Self {
        let v = |c: [i64; 4]| c.iter().map(|&x| rat(x)).collect::<Element>();
        let names = ["E11", "E22", "E12", "E21"].map(String::from).to_vec();
        let parities = vec![Parity::Even, Parity::Even, Parity::Odd, Parity::Odd];
        let given = vec![
            (0, 2, v([0, 0, 1, 0])),
            (0, 3, v([0, 0, 0, -1])),
            (1, 2, v([0, 0, -1, 0])),
            (1, 3, v([0, 0, 0, 1])),
            (2, 3, v([1, 1, 0, 0])),
        ];
        Self::from_brackets(names, parities, &given).expect("gl(1|1)")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parities[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn basis_vector(&self, i: usize) -> Element {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::one();
        v
    }

    pub fn structure_constant(&self, i: usize, j: usize) -> &Element {
        &self.brackets[i][j]
    }

    /// Bilinear bracket of arbitrary elements.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Element {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for i in (0..n).filter(|&i| !x[i].is_zero()) {
            for j in (0..n).filter(|&j| !y[j].is_zero()) {
                let c = &x[i] * &y[j];
                for (o, b) in out.iter_mut().zip(&self.brackets[i][j]) {
                    if !b.is_zero() {
                        *o += &c * b;
                    }
                }
            }
        }
        out
    }

    /// Parity of a homogeneous element (zero counts as even).
    pub fn element_parity(&self, x: &[Rational]) -> Option<Parity> {
        let mut ps = (0..self.dim()).filter(|&i| !x[i].is_zero()).map(|i| self.parities[i]);
        match ps.next() {
            None => Some(Parity::Even),
            Some(p) => ps.all(|q| q == p).then_some(p),
        }
    }

    fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    /// Checks graded antisymmetry, parity additivity, and the graded Jacobi
    /// identity on all basis pairs and triples; reports the first failure.
    pub fn validate(&self) -> Validation {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let sign = -rat(self.parities[i].koszul(self.parities[j]) as i64);
                let expected: Element = self.brackets[j][i].iter().map(|c| c * &sign).collect();
                if self.brackets[i][j] != expected {
                    return Validation::Invalid(format!(
                        "antisymmetry fails for [{}, {}]",
                        self.name(i),
                        self.name(j)
                    ));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let p = self.parities[i] + self.parities[j];
                if let Some(k) = (0..n).find(|&k| !self.brackets[i][j][k].is_zero() && self.parities[k] != p) {
                    return Validation::Invalid(format!(
                        "[{}, {}] has a {} component along {}",
                        self.name(i),
                        self.name(j),
                        self.parities[k],
                        self.name(k)
                    ));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) = (self.basis_vector(i), self.basis_vector(j), self.basis_vector(k));
                    let lhs = self.bracket(&x, &self.bracket(&y, &z));
                    let a = self.bracket(&self.bracket(&x, &y), &z);
                    let b = self.bracket(&y, &self.bracket(&x, &z));
                    let sign = rat(self.parities[i].koszul(self.parities[j]) as i64);
                    let rhs: Element = a.iter().zip(&b).map(|(u, v)| u + &sign * v).collect();
                    if lhs != rhs {
                        return Validation::Invalid(format!(
                            "Jacobi fails for ({}, {}, {})",
                            self.name(i),
                            self.name(j),
                            self.name(k)
                        ));
                    }
                }
            }
        }
        Validation::Valid
    }

    /// Basis indices, even first, in original order within each parity.
    pub fn even_first_order(&self) -> Vec<usize> {
        let n = self.dim();
        (0..n)
            .filter(|&i| self.parities[i] == Parity::Even)
            .chain((0..n).filter(|&i| self.parities[i] == Parity::Odd))
            .collect()
    }

    /// Matrix of `y ↦ [x, y]` on the span of `indices` (listed even-first),
    /// dropping components outside it.
    fn restricted_ad(&self, x: &[Rational], indices: &[usize]) -> Result<SuperMatrix<Rational>> {
        let parity = self
            .element_parity(x)
            .ok_or_else(|| Error::Parity("ad of an inhomogeneous element".into()))?;
        let p = indices.iter().filter(|&&i| self.parities[i] == Parity::Even).count();
        let q = indices.len() - p;
        let mut entries = vec![GrassmannElement::zero(0); indices.len() * indices.len()];
        for (c, &j) in indices.iter().enumerate() {
            let image = self.bracket(x, &self.basis_vector(j));
            for (r, &i) in indices.iter().enumerate() {
                entries[r * indices.len() + c] = GrassmannElement::constant(0, image[i].clone());
            }
        }
        SuperMatrix::with_parity(p, q, 0, parity, entries)
    }

    /// `ad(x)` in the even-first basis.
    pub fn ad(&self, x: &[Rational]) -> Result<SuperMatrix<Rational>> {
        self.restricted_ad(x, &self.even_first_order())
    }

    /// New algebra in the basis `e'_i = Σ_j t[(j, i)] e_j`; `t` must be
    /// invertible and parity-preserving.
    pub fn change_basis(&self, t: &Matrix, names: Option<Vec<String>>) -> Result<Self> {
        let n = self.dim();
        if t.rows() != n || t.cols() != n {
            return Err(Error::Dimension("basis change has the wrong size".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if !t[(j, i)].is_zero() && self.parities[j] != self.parities[i] {
                    return Err(Error::Parity("basis change mixes parities".into()));
                }
            }
        }
        let t_inv = t.inverse()?;
        let columns: Vec<Element> = (0..n).map(|i| t.column(i)).collect();
        let mut brackets = vec![vec![Vec::new(); n]; n];
        for a in 0..n {
            for b in 0..n {
                let old = self.bracket(&columns[a], &columns[b]);
                brackets[a][b] = t_inv.mul_vec(&old);
            }
        }
        let names = names.unwrap_or_else(|| self.names.iter().map(|s| format!("{s}'")).collect());
        Self::from_table(names, self.parities.clone(), brackets)
    }

    /// The same algebra with old basis element `order[k]` at position `k`.
    pub fn reorder(&self, order: &[usize]) -> Result<Self> {
        let n = self.dim();
        let mut t = Matrix::zeros(n, n);
        for (new, &old) in order.iter().enumerate() {
            t[(old, new)] = Rational::one();
        }
        let names = order.iter().map(|&i| self.names[i].clone()).collect();
        self.change_basis(&t, Some(names))
    }
}

impl fmt::Display for LieSuperAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                let v = &self.brackets[i][j];
                if v.iter().all(Zero::is_zero) {
                    continue;
                }
                let terms: Vec<String> = (0..n)
                    .filter(|&k| !v[k].is_zero())
                    .map(|k| format!("{} {}", format_rational(&v[k]), self.names[k]))
                    .collect();
                writeln!(f, "[{}, {}] = {}", self.names[i], self.names[j], terms.join(" + "))?;
            }
        }
        Ok(())
    }
}

/// A subalgebra spanned by a subset of basis vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct SubalgebraSpec {
    span: Vec<usize>,
}

impl SubalgebraSpec {
    pub fn new(g: &LieSuperAlgebra, mut span: Vec<usize>) -> Result<Self> {
        span.sort_unstable();
        span.dedup();
        if let Some(&i) = span.iter().find(|&&i| i >= g.dim()) {
            return Err(Error::IndexOutOfRange { index: i, size: g.dim() });
        }
        for &i in &span {
            for &j in &span {
                let b = g.structure_constant(i, j);
                if let Some(k) = (0..g.dim()).find(|k| !span.contains(k) && !b[*k].is_zero()) {
                    return Err(Error::Structural(format!(
                        "[{}, {}] has a component along {} outside the subalgebra",
                        g.names[i], g.names[j], g.names[k]
                    )));
                }
            }
        }
        Ok(SubalgebraSpec { span })
    }

    pub fn span(&self) -> &[usize] {
        &self.span
    }

    /// Basis indices of the complement `g/h`, even first.
    pub fn complement(&self, g: &LieSuperAlgebra) -> Vec<usize> {
        g.even_first_order().into_iter().filter(|i| !self.span.contains(i)).collect()
    }
}

/// Matrix of `ad(x)` on `g/h` in the complement basis (even first).
pub fn quotient_action(g: &LieSuperAlgebra, h: &SubalgebraSpec, x: &[Rational]) -> Result<SuperMatrix<Rational>> {
    if (0..g.dim()).any(|i| !x[i].is_zero() && !h.span.contains(&i)) {
        return Err(Error::Structural("quotient action of an element outside h".into()));
    }
    g.restricted_ad(x, &h.complement(g))
}

/// Result of the infinitesimal unimodularity test.
#[derive(Debug, Clone, PartialEq)]
pub struct UnimodularityVerdict {
    pub unimodular: bool,
    /// First basis element of `h` with nonzero supertrace on `g/h`.
    pub witness: Option<(String, Rational)>,
    /// Supertraces `str(ad_{g/h} X)` for every basis element `X` of `h`.
    pub supertraces: Vec<(String, Rational)>,
}

impl UnimodularityVerdict {
    pub const SCOPE: &'static str = "infinitesimal criterion, valid for connected H";
}

impl fmt::Display for UnimodularityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => write!(f, "UNIMODULAR ({})", Self::SCOPE),
            Some((name, s)) => write!(
                f,
                "NOT_UNIMODULAR witness={name} str={} ({})",
                format_rational(s),
                Self::SCOPE
            ),
        }
    }
}

/// `str(ad_{g/h} X) = 0` for every basis element `X` of `h`.
pub fn unimodularity_check(g: &LieSuperAlgebra, h: &SubalgebraSpec) -> Result<UnimodularityVerdict> {
    let mut supertraces = Vec::new();
    for &i in &h.span {
        let m = quotient_action(g, h, &g.basis_vector(i))?;
        supertraces.push((g.names[i].clone(), m.supertrace().body()));
    }
    let witness = supertraces.iter().find(|(_, s)| !s.is_zero()).cloned();
    Ok(UnimodularityVerdict {
        unimodular: witness.is_none(),
        witness,
        supertraces,
    })
}

/// Chooses a basis adapted to the subalgebra spanned by the homogeneous
/// `vectors`: returns the algebra in the new basis (subalgebra first) and
/// the subalgebra spec.
pub fn adapt_basis(g: &LieSuperAlgebra, vectors: &[Element]) -> Result<(LieSuperAlgebra, SubalgebraSpec)> {
    let n = g.dim();
    if vectors.iter().any(|v| g.element_parity(v).is_none()) {
        return Err(Error::Parity("subalgebra generators must be homogeneous".into()));
    }
    let mut columns: Vec<Element> = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        let part: Vec<&Element> = vectors
            .iter()
            .filter(|v| g.element_parity(v) == Some(parity) && v.iter().any(|c| !c.is_zero()))
            .collect();
        for v in part {
            let mut candidate = columns.clone();
            candidate.push(v.clone());
            if rank_of(&candidate, n) == candidate.len() {
                columns = candidate;
            }
        }
    }
    let k = columns.len();
    for i in 0..n {
        let mut candidate = columns.clone();
        candidate.push(g.basis_vector(i));
        if rank_of(&candidate, n) == candidate.len() {
            columns = candidate;
        }
    }
    let mut t = Matrix::zeros(n, n);
    for (c, v) in columns.iter().enumerate() {
        for r in 0..n {
            t[(r, c)] = v[r].clone();
        }
    }
    let names = (0..n).map(|i| if i < k { format!("h{}", i + 1) } else { format!("c{}", i - k + 1) }).collect();
    let adapted = g.change_basis(&t, Some(names))?;
    let spec = SubalgebraSpec::new(&adapted, (0..k).collect())?;
    Ok((adapted, spec))
}

fn rank_of(columns: &[Element], n: usize) -> usize {
    let rows = (0..n).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
    Matrix::from_rows(rows).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(g: &LieSuperAlgebra, name: &str) -> Element {
        g.basis_vector(g.index_of(name).unwrap())
    }

    #[test]
    fn builtins_validate() {
        assert!(LieSuperAlgebra::abelian(2, 1).validate().is_valid());
        assert!(LieSuperAlgebra::gl11().validate().is_valid());
    }

    #[test]
    fn corrupted_constant_fails_antisymmetry() {
        let g = LieSuperAlgebra::gl11();
        let mut brackets = g.brackets.clone();
        brackets[0][2] = vec![rat(0), rat(0), rat(2), rat(0)];
        let bad = LieSuperAlgebra::from_table(g.names.clone(), g.parities.clone(), brackets).unwrap();
        match bad.validate() {
            Validation::Invalid(msg) => assert!(msg.contains("antisymmetry"), "{msg}"),
            Validation::Valid => panic!("corruption not detected"),
        }
    }

    #[test]
    fn ad_e11_on_gl11() {
        let g = LieSuperAlgebra::gl11();
        let m = g.ad(&e(&g, "E11")).unwrap();
        let diag: Vec<Rational> = (0..4).map(|i| m.entry(i, i).body()).collect();
        assert_eq!(diag, vec![rat(0), rat(0), rat(1), rat(-1)]);
        assert!(m.entries().iter().enumerate().all(|(k, v)| k % 5 == 0 || v.is_zero()));
    }

    #[test]
    fn unimodularity_examples() {
        let g = LieSuperAlgebra::gl11();
        let trivial = SubalgebraSpec::new(&g, vec![]).unwrap();
        assert!(unimodularity_check(&g, &trivial).unwrap().unimodular);
        let borel = SubalgebraSpec::new(&g, vec![0, 1, 2]).unwrap();
        let v = unimodularity_check(&g, &borel).unwrap();
        assert_eq!(v.witness, Some(("E11".to_string(), rat(1))));
        let q = quotient_action(&g, &borel, &e(&g, "E11")).unwrap();
        assert_eq!((q.p(), q.q()), (0, 1));
        assert_eq!(q.entry(0, 0).body(), rat(-1));
        let abelian = LieSuperAlgebra::abelian(1, 2);
        let h = SubalgebraSpec::new(&abelian, vec![0, 2]).unwrap();
        assert!(unimodularity_check(&abelian, &h).unwrap().unimodular);
    }

    #[test]
    fn quotient_extremes() {
        let g = LieSuperAlgebra::gl11();
        let all = SubalgebraSpec::new(&g, vec![0, 1, 2, 3]).unwrap();
        assert_eq!(quotient_action(&g, &all, &e(&g, "E11")).unwrap().size(), 0);
    }

    #[test]
    fn non_subalgebra_is_structural() {
        let g = LieSuperAlgebra::gl11();
        assert!(matches!(SubalgebraSpec::new(&g, vec![2, 3]), Err(Error::Structural(_))));
    }

    #[test]
    fn adapt_basis_for_borel() {
        let g = LieSuperAlgebra::gl11();
        let sum = vec![rat(1), rat(1), rat(0), rat(0)];
        let (adapted, h) = adapt_basis(&g, &[sum, e(&g, "E11"), e(&g, "E12")]).unwrap();
        assert!(adapted.validate().is_valid());
        assert_eq!(h.span(), &[0, 1, 2]);
        assert!(!unimodularity_check(&adapted, &h).unwrap().unimodular);
    }
}
