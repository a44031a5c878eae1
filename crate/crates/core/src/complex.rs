//! Almost complex structures on a Lie algebra and the Nijenhuis
//! integrability condition
//! `[JX, JY] - [X, Y] - J([JX, Y] + [X, JY]) = 0`.

use std::fmt;

use num::{BigInt, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lie::LieAlgebra;
use crate::linalg::{clear_denominators, is_zero_vector, unit_vector, LinalgError, Matrix, Subspace, Vector};
use crate::rational::{format_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("odd dimension {0}: no almost complex structure exists")]
    OddDimension(usize),
    #[error("J is {rows}x{cols}, expected {dim}x{dim}")]
    WrongSize { rows: usize, cols: usize, dim: usize },
    #[error("J^2 != -I: entry ({row}, {col}) of J^2 + I is {value}")]
    NotAlmostComplex {
        row: usize,
        col: usize,
        value: String,
    },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A rational matrix `J` with `J² = -I` on a Lie algebra of matching dimension.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ComplexStructure {
    j: Matrix,
    /// rows of `j` over their common denominators
    integral_rows: Vec<(Vec<BigInt>, BigInt)>,
}

impl fmt::Debug for ComplexStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexStructure({:?})", self.j)
    }
}

impl ComplexStructure {
    fn new(j: Matrix) -> Self {
        let integral_rows = j.row_vectors().map(clear_denominators).collect();
        Self { j, integral_rows }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.j
    }

    pub fn dim(&self) -> usize {
        self.j.rows()
    }

    pub fn apply(&self, v: &[Rational]) -> Vector {
        assert_eq!(v.len(), self.dim(), "vector length");
        let (w, dw) = clear_denominators(v);
        self.integral_rows
            .iter()
            .map(|(row, d)| {
                let mut acc = BigInt::zero();
                for (a, b) in row.iter().zip(&w) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                if acc.is_zero() {
                    Rational::zero()
                } else {
                    Rational::new(acc, d * &dw)
                }
            })
            .collect()
    }

    pub fn image(&self, s: &Subspace) -> Subspace {
        Subspace::span(s.ambient_dim(), s.basis_vectors().map(|v| self.apply(v)))
            .expect("dimension checked at construction")
    }

    pub fn preserves(&self, s: &Subspace) -> bool {
        // J is invertible, so J(s) ⊆ s already forces equality
        s.basis_vectors()
            .all(|v| s.contains_vector(&self.apply(v)).unwrap_or(false))
    }

    /// `p⁻¹ J p`: the same endomorphism in the basis given by the columns of `p`.
    pub fn conjugate(&self, p: &Matrix, p_inv: &Matrix) -> ComplexStructure {
        let j = p_inv
            .mul(&self.j)
            .and_then(|m| m.mul(p))
            .expect("square basis change");
        ComplexStructure::new(j)
    }

    /// The block-diagonal structure `e_{2i-1} ↦ e_{2i}`, `e_{2i} ↦ -e_{2i-1}`.
    pub fn standard(dim: usize) -> Result<ComplexStructure, ComplexError> {
        if dim % 2 == 1 {
            return Err(ComplexError::OddDimension(dim));
        }
        let mut j = Matrix::zeros(dim, dim);
        for b in (0..dim).step_by(2) {
            j[(b + 1, b)] = crate::rational::int(1);
            j[(b, b + 1)] = crate::rational::int(-1);
        }
        Ok(ComplexStructure::new(j))
    }
}

/// Checks `J² = -I` and binds `j` to `alg`.
pub fn validate_almost_complex(
    alg: &LieAlgebra,
    j: &Matrix,
) -> Result<ComplexStructure, ComplexError> {
    let n = alg.dim();
    if n % 2 == 1 {
        return Err(ComplexError::OddDimension(n));
    }
    if j.rows() != n || j.cols() != n {
        return Err(ComplexError::WrongSize {
            rows: j.rows(),
            cols: j.cols(),
            dim: n,
        });
    }
    let square = j.mul(j)?;
    for r in 0..n {
        for c in 0..n {
            let mut value = square[(r, c)].clone();
            if r == c {
                value += crate::rational::int(1);
            }
            if !value.is_zero() {
                return Err(ComplexError::NotAlmostComplex {
                    row: r,
                    col: c,
                    value: format_rational(&value),
                });
            }
        }
    }
    Ok(ComplexStructure::new(j.clone()))
}

/// `N_J(x, y) = [Jx, Jy] - [x, y] - J([Jx, y] + [x, Jy])`.
pub fn nijenhuis(
    alg: &LieAlgebra,
    j: &ComplexStructure,
    x: &[Rational],
    y: &[Rational],
) -> Result<Vector, ComplexError> {
    if x.len() != alg.dim() || y.len() != alg.dim() {
        return Err(LinalgError::DimensionMismatch {
            left: x.len().max(y.len()),
            right: alg.dim(),
        }
        .into());
    }
    let jx = j.apply(x);
    let jy = j.apply(y);
    let mut inner = alg.bracket_unchecked(&jx, y);
    for (a, b) in inner.iter_mut().zip(alg.bracket_unchecked(x, &jy)) {
        *a += b;
    }
    let j_inner = j.apply(&inner);
    let mut out = alg.bracket_unchecked(&jx, &jy);
    for ((o, b), c) in out
        .iter_mut()
        .zip(alg.bracket_unchecked(x, y))
        .zip(j_inner)
    {
        *o -= b;
        *o -= c;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NijenhuisWitness {
    /// 1-based basis indices `(i, j)` with `i < j`.
    pub pair: (usize, usize),
    pub value: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegrabilityReport {
    pub integrable: bool,
    pub witnesses: Vec<NijenhuisWitness>,
}

/// Evaluates the Nijenhuis tensor on all basis pairs `i < j`; bilinearity
/// makes this sufficient.
pub fn is_integrable(alg: &LieAlgebra, j: &ComplexStructure) -> IntegrabilityReport {
    let n = alg.dim();
    let mut witnesses = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let value = nijenhuis(alg, j, &unit_vector(n, a), &unit_vector(n, b))
                .expect("basis vectors have the right length");
            if !is_zero_vector(&value) {
                witnesses.push(NijenhuisWitness {
                    pair: (a + 1, b + 1),
                    value: value.iter().map(format_rational).collect(),
                });
            }
        }
    }
    IntegrabilityReport {
        integrable: witnesses.is_empty(),
        witnesses,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialFlags {
    /// `[JX, JY] = [X, Y]`
    pub abelian: bool,
    /// `J[X, Y] = [JX, Y]`
    pub bi_invariant: bool,
}

pub fn classify_special(alg: &LieAlgebra, j: &ComplexStructure) -> SpecialFlags {
    let n = alg.dim();
    let e: Vec<Vector> = (0..n).map(|i| unit_vector(n, i)).collect();
    let je: Vec<Vector> = e.iter().map(|v| j.apply(v)).collect();
    let mut abelian = true;
    let mut bi_invariant = true;
    for a in 0..n {
        // the bi-invariance condition is not antisymmetric, so all ordered pairs
        for b in 0..n {
            let xy = alg.basis_bracket(a, b);
            if a < b && alg.bracket_unchecked(&je[a], &je[b]) != xy {
                abelian = false;
            }
            if j.apply(&xy) != alg.bracket_unchecked(&je[a], &e[b]) {
                bi_invariant = false;
            }
        }
    }
    SpecialFlags {
        abelian,
        bi_invariant,
    }
}

/// `ψ = φ + Jᵀ φ J`, a `J`-invariant inner product.
pub fn j_invariant_inner_product(
    j: &ComplexStructure,
    phi: &Matrix,
) -> Result<Matrix, ComplexError> {
    if phi.rows() != j.dim() || phi.cols() != j.dim() {
        return Err(LinalgError::NotSquare {
            rows: phi.rows(),
            cols: phi.cols(),
            expected: j.dim(),
        }
        .into());
    }
    phi.check_spd()?;
    let jt_phi_j = j.matrix().transpose().mul(phi)?.mul(j.matrix())?;
    Ok(phi.add(&jt_phi_j)?)
}

/// `w ∩ Jw`, the largest `J`-invariant subspace of `w`.
pub fn largest_j_invariant_subspace(j: &ComplexStructure, w: &Subspace) -> Subspace {
    w.intersection(&j.image(w))
        .expect("dimension checked at construction")
}
