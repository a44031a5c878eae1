//! Lie algebras given by rational structure constants, with the classical
//! lower and upper central series.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, Integer, One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{
    clear_denominators, is_zero_vector, kernel, unit_vector, zero_vector, LinalgError, Matrix, Subspace, Vector,
};
use crate::rational::{format_rational, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("bracket [e{0}, e{0}] cannot be assigned")]
    DiagonalBracket(usize),
    #[error("bracket [e{i}, e{j}] given more than once")]
    DuplicateBracket { i: usize, j: usize },
    #[error("coefficient vector has length {len}, expected {dim}")]
    CoefficientLength { len: usize, dim: usize },
    #[error("change of basis matrix is singular")]
    SingularBasisChange,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// First Jacobi failure among basis triples, with 0-based indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiViolation {
    pub triple: (usize, usize, usize),
    pub residual: Vector,
}

impl fmt::Display for JacobiViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, k) = self.triple;
        let residual: Vec<String> = self.residual.iter().map(format_rational).collect();
        write!(
            f,
            "Jacobi identity fails for (e{}, e{}, e{}): residual [{}]",
            i + 1,
            j + 1,
            k + 1,
            residual.join(", ")
        )
    }
}

impl std::error::Error for JacobiViolation {}

/// A finite-dimensional Lie algebra. Only brackets `[e_i, e_j]` with `i < j`
/// are stored; the rest follow from antisymmetry.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    brackets: BTreeMap<(usize, usize), Vector>,
    integral: IntegralTable,
}

/// The structure constants over a common denominator, nonzero entries only.
#[derive(Clone, PartialEq, Eq)]
struct IntegralTable {
    den: BigInt,
    entries: Vec<IntegralBracket>,
}

/// `(i, j, [(k, c), ...])`: the nonzero numerators of `[e_i, e_j]`.
type IntegralBracket = (usize, usize, Vec<(usize, BigInt)>);

/// Integer structure constants with 1-based indices.
pub type IntTable<'a> = &'a [(usize, usize, &'a [(usize, i64)])];

impl IntegralTable {
    fn of(brackets: &BTreeMap<(usize, usize), Vector>) -> Self {
        let den = brackets
            .values()
            .flatten()
            .filter(|x| !x.denom().is_one())
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let entries = brackets
            .iter()
            .map(|(&(i, j), v)| {
                let outs = v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k, c.numer() * (&den / c.denom())))
                    .collect();
                (i, j, outs)
            })
            .collect();
        Self { den, entries }
    }
}

impl LieAlgebra {
    pub fn abelian(dim: usize) -> Self {
        Self {
            dim,
            brackets: BTreeMap::new(),
            integral: IntegralTable::of(&BTreeMap::new()),
        }
    }

    /// Builds an algebra from `((i, j), [e_i, e_j])` entries with 0-based
    /// indices. Entries with `i > j` are stored negated; zero vectors are dropped.
    pub fn from_table<I>(dim: usize, table: I) -> Result<Self, LieError>
    where
        I: IntoIterator<Item = ((usize, usize), Vector)>,
    {
        let mut brackets = BTreeMap::new();
        for ((i, j), out) in table {
            for index in [i, j] {
                if index >= dim {
                    return Err(LieError::IndexOutOfRange { index, dim });
                }
            }
            if i == j {
                return Err(LieError::DiagonalBracket(i + 1));
            }
            if out.len() != dim {
                return Err(LieError::CoefficientLength {
                    len: out.len(),
                    dim,
                });
            }
            let (key, value) = if i < j {
                ((i, j), out)
            } else {
                ((j, i), out.into_iter().map(|x| -x).collect())
            };
            if brackets.contains_key(&key) {
                return Err(LieError::DuplicateBracket {
                    i: key.0 + 1,
                    j: key.1 + 1,
                });
            }
            if !is_zero_vector(&value) {
                brackets.insert(key, value);
            }
        }
        let integral = IntegralTable::of(&brackets);
        Ok(Self {
            dim,
            brackets,
            integral,
        })
    }

    /// Integer structure constants with 1-based indices:
    /// `(i, j, &[(k, c), ...])` means `[e_i, e_j] = Σ c e_k`.
    pub fn from_int_table(
        dim: usize,
        table: IntTable<'_>,
    ) -> Result<Self, LieError> {
        let mut entries = Vec::with_capacity(table.len());
        for &(i, j, terms) in table {
            let mut out = zero_vector(dim);
            for &(k, c) in terms {
                if k == 0 || k > dim {
                    return Err(LieError::IndexOutOfRange { index: k, dim });
                }
                out[k - 1] += int(c);
            }
            if i == 0 || j == 0 {
                return Err(LieError::IndexOutOfRange { index: 0, dim });
            }
            entries.push(((i - 1, j - 1), out));
        }
        Self::from_table(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    /// Nonzero stored brackets, `i < j`, 0-based.
    pub fn structure_constants(&self) -> impl Iterator<Item = ((usize, usize), &Vector)> + '_ {
        self.brackets.iter().map(|(&k, v)| (k, v))
    }

    /// `[e_i, e_j]` for any pair of basis indices.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vector {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => zero_vector(self.dim),
            std::cmp::Ordering::Less => self
                .brackets
                .get(&(i, j))
                .cloned()
                .unwrap_or_else(|| zero_vector(self.dim)),
            std::cmp::Ordering::Greater => self
                .brackets
                .get(&(j, i))
                .map(|v| v.iter().map(|x| -x).collect())
                .unwrap_or_else(|| zero_vector(self.dim)),
        }
    }

    fn check_len(&self, v: &[Rational]) -> Result<(), LieError> {
        if v.len() != self.dim {
            return Err(LieError::CoefficientLength {
                len: v.len(),
                dim: self.dim,
            });
        }
        Ok(())
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vector, LieError> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[Rational], y: &[Rational]) -> Vector {
        if self.brackets.is_empty() {
            return zero_vector(self.dim);
        }
        let (xs, dx) = clear_denominators(x);
        let (ys, dy) = clear_denominators(y);
        let mut acc = vec![BigInt::zero(); self.dim];
        for (i, j, outs) in &self.integral.entries {
            let coeff = &xs[*i] * &ys[*j] - &xs[*j] * &ys[*i];
            if coeff.is_zero() {
                continue;
            }
            for (k, c) in outs {
                acc[*k] += &coeff * c;
            }
        }
        let den = dx * dy * &self.integral.den;
        acc.into_iter()
            .map(|a| {
                if a.is_zero() {
                    Rational::zero()
                } else {
                    Rational::new(a, den.clone())
                }
            })
            .collect()
    }

    /// Matrix of `X ↦ [X, e_i]`.
    pub fn right_adjoint(&self, i: usize) -> Matrix {
        let columns: Vec<Vector> = (0..self.dim).map(|a| self.basis_bracket(a, i)).collect();
        Matrix::from_columns(self.dim, &columns).expect("square adjoint")
    }

    /// Span of `[u, v]` over basis vectors `u` of `a` and `v` of `b`.
    pub fn bracket_subspaces(&self, a: &Subspace, b: &Subspace) -> Result<Subspace, LieError> {
        for s in [a, b] {
            if s.ambient_dim() != self.dim {
                return Err(LinalgError::DimensionMismatch {
                    left: s.ambient_dim(),
                    right: self.dim,
                }
                .into());
            }
        }
        let rows: Vec<Vector> = a
            .basis_vectors()
            .flat_map(|u| b.basis_vectors().map(move |v| (u, v)))
            .map(|(u, v)| self.bracket_unchecked(u, v))
            .filter(|w| !is_zero_vector(w))
            .collect();
        Ok(Subspace::row_space(&Matrix::from_rows(self.dim, rows)?))
    }

    /// `[self_space, n]`, the bracket of a subspace with the whole algebra.
    pub fn bracket_with_full(&self, a: &Subspace) -> Subspace {
        self.bracket_subspaces(a, &Subspace::full(self.dim))
            .expect("ambient checked by caller")
    }

    pub fn is_ideal(&self, a: &Subspace) -> bool {
        a.contains(&self.bracket_with_full(a)).unwrap_or(false)
    }

    /// Checks the Jacobi identity on every basis triple `i < j < k`.
    pub fn validate(&self) -> Result<(), JacobiViolation> {
        let n = self.dim;
        let e: Vec<Vector> = (0..n).map(|i| unit_vector(n, i)).collect();
        for i in 0..n {
            for j in i + 1..n {
                let ij = self.basis_bracket(i, j);
                for k in j + 1..n {
                    let jk = self.basis_bracket(j, k);
                    let ki = self.basis_bracket(k, i);
                    let mut residual = self.bracket_unchecked(&ij, &e[k]);
                    for (r, x) in residual
                        .iter_mut()
                        .zip(self.bracket_unchecked(&jk, &e[i]))
                    {
                        *r += x;
                    }
                    for (r, x) in residual
                        .iter_mut()
                        .zip(self.bracket_unchecked(&ki, &e[j]))
                    {
                        *r += x;
                    }
                    if !is_zero_vector(&residual) {
                        return Err(JacobiViolation {
                            triple: (i, j, k),
                            residual,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// `c_0 = n`, `c_j = [n, c_{j-1}]`.
    pub fn descending_central_series(&self) -> CentralSeries {
        let full = Subspace::full(self.dim);
        CentralSeries::iterate(SeriesKind::LowerCentral, full, self.dim, |prev| {
            self.bracket_with_full(prev)
        })
    }

    /// `c^0 = {0}`, `c^j = {X : [X, n] ⊆ c^{j-1}}`.
    pub fn ascending_central_series(&self) -> CentralSeries {
        CentralSeries::iterate(
            SeriesKind::UpperCentral,
            Subspace::zero(self.dim),
            self.dim,
            |prev| self.preimage_of_central(prev, None),
        )
    }

    /// `{X : [X, n] ⊆ target}`, or with `extra = Some(m)` additionally
    /// `[mX, n] ⊆ target`.
    pub(crate) fn preimage_of_central(&self, target: &Subspace, extra: Option<&Matrix>) -> Subspace {
        let ann = Matrix::from_rows(self.dim, target.annihilator_rows()).expect("annihilator");
        let mut conditions: Vec<Vector> = Vec::new();
        for i in 0..self.dim {
            let ad = self.right_adjoint(i);
            let mut maps = vec![ann.mul(&ad).expect("square")];
            if let Some(m) = extra {
                maps.push(maps[0].mul(m).expect("square"));
            }
            for m in maps {
                conditions.extend(m.to_rows().into_iter().filter(|r| !is_zero_vector(r)));
            }
        }
        kernel(&Matrix::from_rows(self.dim, conditions).expect("conditions"))
    }

    pub fn center(&self) -> Subspace {
        self.preimage_of_central(&Subspace::zero(self.dim), None)
    }

    /// Least `k` with `c_k = {0}`, or `None` when the lower central series
    /// stabilizes at a nonzero term.
    pub fn nilpotency_step(&self) -> Option<usize> {
        self.descending_central_series().first_index_where(Subspace::is_zero)
    }

    /// The same bracket written in the basis given by the columns of `p`.
    pub fn change_of_basis(&self, p: &Matrix) -> Result<LieAlgebra, LieError> {
        if p.rows() != self.dim || p.cols() != self.dim {
            return Err(LinalgError::NotSquare {
                rows: p.rows(),
                cols: p.cols(),
                expected: self.dim,
            }
            .into());
        }
        let p_inv = p.inverse().map_err(|_| LieError::SingularBasisChange)?;
        let columns: Vec<Vector> = (0..self.dim).map(|a| p.column(a)).collect();
        let mut table = Vec::new();
        for a in 0..self.dim {
            for b in a + 1..self.dim {
                let old = self.bracket_unchecked(&columns[a], &columns[b]);
                if is_zero_vector(&old) {
                    continue;
                }
                table.push(((a, b), p_inv.mul_vec(&old)?));
            }
        }
        Self::from_table(self.dim, table)
    }
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra(dim={}", self.dim)?;
        for (&(i, j), v) in &self.brackets {
            let terms: Vec<String> = v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| format!("{}*e{}", format_rational(c), k + 1))
                .collect();
            write!(f, ", [e{},e{}]={}", i + 1, j + 1, terms.join("+"))?;
        }
        write!(f, ")")
    }
}

/// Coordinates of a subspace after the basis change whose new basis is the
/// columns of `p`: `v ↦ p⁻¹ v`.
pub fn transport(s: &Subspace, p_inv: &Matrix) -> Subspace {
    s.image(p_inv).expect("square basis change")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    /// `c_j`
    LowerCentral,
    /// `c^j`
    UpperCentral,
    /// `d^j`
    JAscending,
    /// `d_j`
    JDescending,
    /// `p_j`
    P,
}

impl SeriesKind {
    pub fn symbol(self) -> &'static str {
        match self {
            SeriesKind::LowerCentral => "c_j",
            SeriesKind::UpperCentral => "c^j",
            SeriesKind::JAscending => "d^j",
            SeriesKind::JDescending => "d_j",
            SeriesKind::P => "p_j",
        }
    }

    pub fn is_ascending(self) -> bool {
        matches!(self, SeriesKind::UpperCentral | SeriesKind::JAscending)
    }
}

/// A monotone chain of subspaces computed until two consecutive terms agree.
///
/// `terms[stabilized_at]` is the last stored term; every later index has the
/// same value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralSeries {
    pub kind: SeriesKind,
    pub terms: Vec<Subspace>,
    pub stabilized_at: usize,
}

impl CentralSeries {
    /// Iterates `step` from `start` until a term repeats. Monotone chains in
    /// dimension `dim` stabilize within `dim + 1` steps; exceeding that is a bug.
    pub(crate) fn iterate<F>(kind: SeriesKind, start: Subspace, dim: usize, mut step: F) -> Self
    where
        F: FnMut(&Subspace) -> Subspace,
    {
        let mut terms = vec![start];
        for _ in 0..=dim + 1 {
            let next = step(terms.last().expect("nonempty"));
            if next == *terms.last().expect("nonempty") {
                let stabilized_at = terms.len() - 1;
                return Self {
                    kind,
                    terms,
                    stabilized_at,
                };
            }
            terms.push(next);
        }
        panic!("{} series failed to stabilize within {} steps", kind.symbol(), dim + 1);
    }

    /// Term `j`, extended constantly past stabilization.
    pub fn term(&self, j: usize) -> &Subspace {
        &self.terms[j.min(self.stabilized_at)]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }

    pub fn last(&self) -> &Subspace {
        &self.terms[self.stabilized_at]
    }

    pub fn first_index_where<P>(&self, pred: P) -> Option<usize>
    where
        P: Fn(&Subspace) -> bool,
    {
        self.terms.iter().position(pred)
    }

    pub fn is_monotone(&self) -> bool {
        self.terms.windows(2).all(|w| {
            if self.kind.is_ascending() {
                w[1].contains(&w[0]).unwrap_or(false)
            } else {
                w[0].contains(&w[1]).unwrap_or(false)
            }
        })
    }
}
