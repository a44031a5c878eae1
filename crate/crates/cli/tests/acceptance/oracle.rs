//! Brute-force references built straight from the structure constants.
//! Nothing here calls the series, complex or stratification modules.

#![allow(clippy::needless_range_loop)]

use num::Zero;
use stratalg::rational::int;
use stratalg::{kernel, LieAlgebra, Matrix, Rational, Subspace};

/// Dense structure constants: `c[i][j][k]` is the `e_k` coefficient of `[e_i, e_j]`.
pub struct Constants {
    pub n: usize,
    pub c: Vec<Vec<Vec<Rational>>>,
}

impl Constants {
    pub fn of(alg: &LieAlgebra) -> Self {
        let n = alg.dim();
        let mut c = vec![vec![vec![int(0); n]; n]; n];
        for ((i, j), v) in alg.structure_constants() {
            for k in 0..n {
                c[i][j][k] = v[k].clone();
                c[j][i][k] = -v[k].clone();
            }
        }
        Self { n, c }
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![int(0); self.n];
        for i in 0..self.n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.n {
                if y[j].is_zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for k in 0..self.n {
                    out[k] += &xy * &self.c[i][j][k];
                }
            }
        }
        out
    }

    /// Matrix of `X ↦ [X, e_i]`.
    fn ad_right(&self, i: usize) -> Matrix {
        let mut m = Matrix::zeros(self.n, self.n);
        for a in 0..self.n {
            for k in 0..self.n {
                m[(k, a)] = self.c[a][i][k].clone();
            }
        }
        m
    }
}

/// First basis triple `i < j < k` (0-based) where the cyclic sum
/// `Σ_l c_ij^l c_lk^m + c_jk^l c_li^m + c_ki^l c_lj^m` is nonzero.
pub fn first_jacobi_failure(alg: &LieAlgebra) -> Option<(usize, usize, usize)> {
    let k = Constants::of(alg);
    let n = k.n;
    let c = &k.c;
    for a in 0..n {
        for b in a + 1..n {
            for d in b + 1..n {
                for m in 0..n {
                    let mut s = int(0);
                    for l in 0..n {
                        s += &c[a][b][l] * &c[l][d][m];
                        s += &c[b][d][l] * &c[l][a][m];
                        s += &c[d][a][l] * &c[l][b][m];
                    }
                    if !s.is_zero() {
                        return Some((a, b, d));
                    }
                }
            }
        }
    }
    None
}

pub fn is_antisymmetric(alg: &LieAlgebra) -> bool {
    let n = alg.dim();
    (0..n).all(|i| {
        alg.basis_bracket(i, i).iter().all(Zero::is_zero)
            && (0..n).all(|j| {
                let ij = alg.basis_bracket(i, j);
                let ji = alg.basis_bracket(j, i);
                ij.iter().zip(&ji).all(|(a, b)| (a + b).is_zero())
            })
    })
}

fn apply(j: &Matrix, v: &[Rational]) -> Vec<Rational> {
    (0..j.rows())
        .map(|r| (0..j.cols()).map(|c| &j[(r, c)] * &v[c]).sum())
        .collect()
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![int(0); n];
    v[i] = int(1);
    v
}

/// Basis pairs `(i, j)`, 1-based with `i < j`, where
/// `[JX, JY] - J[JX, Y] - J[X, JY] - [X, Y]` is nonzero.
pub fn nijenhuis_failures(alg: &LieAlgebra, j: &Matrix) -> Vec<(usize, usize)> {
    let k = Constants::of(alg);
    let n = k.n;
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let x = unit(n, a);
            let y = unit(n, b);
            let jx = apply(j, &x);
            let jy = apply(j, &y);
            let t1 = k.bracket(&jx, &jy);
            let t2 = apply(j, &k.bracket(&jx, &y));
            let t3 = apply(j, &k.bracket(&x, &jy));
            let t4 = k.bracket(&x, &y);
            let zero = (0..n).all(|m| (&t1[m] - &t2[m] - &t3[m] - &t4[m]).is_zero());
            if !zero {
                out.push((a + 1, b + 1));
            }
        }
    }
    out
}

pub fn squares_to_minus_identity(j: &Matrix) -> bool {
    let n = j.rows();
    (0..n).all(|r| {
        (0..n).all(|c| {
            let s: Rational = (0..n).map(|m| &j[(r, m)] * &j[(m, c)]).sum();
            s == if r == c { int(-1) } else { int(0) }
        })
    })
}

/// `{X : [X, e_i] ∈ t and [JX, e_i] ∈ t for all i}`; pass `j = None` for the
/// plain condition `[X, n] ⊆ t`.
fn pullback(k: &Constants, t: &Subspace, j: Option<&Matrix>) -> Subspace {
    let ann = t.annihilator_rows();
    let mut rows = Vec::new();
    for i in 0..k.n {
        let ad = k.ad_right(i);
        let mut maps = vec![ad.clone()];
        if let Some(j) = j {
            maps.push(ad.mul(j).unwrap());
        }
        for m in maps {
            for a in &ann {
                rows.push((0..k.n).map(|c| (0..k.n).map(|r| &a[r] * &m[(r, c)]).sum()).collect());
            }
        }
    }
    kernel(&Matrix::from_rows(k.n, rows).unwrap())
}

pub fn center(alg: &LieAlgebra) -> Subspace {
    let k = Constants::of(alg);
    pullback(&k, &Subspace::zero(k.n), None)
}

/// `c_0 = n`, `c_j = span{[e_i, v] : v ∈ c_{j-1}}`, until it stabilizes.
pub fn lower_central(alg: &LieAlgebra) -> Vec<Subspace> {
    let k = Constants::of(alg);
    let mut out = vec![Subspace::full(k.n)];
    loop {
        let prev = out.last().unwrap();
        let mut vs = Vec::new();
        for i in 0..k.n {
            for v in prev.basis_vectors() {
                vs.push(k.bracket(&unit(k.n, i), v));
            }
        }
        let next = Subspace::span(k.n, vs).unwrap();
        if &next == prev {
            return out;
        }
        out.push(next);
    }
}

/// The least `j` with `c_j = 0`.
pub fn nilpotency_step(alg: &LieAlgebra) -> Option<usize> {
    let c = lower_central(alg);
    c.last().unwrap().is_zero().then(|| c.len() - 1)
}

/// `d^0 = 0`, `d^j = {X : [X, n], [JX, n] ⊆ d^{j-1}}`, until it stabilizes.
pub fn j_ascending(alg: &LieAlgebra, j: &Matrix) -> Vec<Subspace> {
    let k = Constants::of(alg);
    let mut out = vec![Subspace::zero(k.n)];
    loop {
        let next = pullback(&k, out.last().unwrap(), Some(j));
        if &next == out.last().unwrap() {
            return out;
        }
        out.push(next);
    }
}

/// The least `j` with `d^j = n`.
pub fn j0(alg: &LieAlgebra, j: &Matrix) -> Option<usize> {
    let d = j_ascending(alg, j);
    d.last().unwrap().is_full().then(|| d.len() - 1)
}

pub fn image(j: &Matrix, s: &Subspace) -> Subspace {
    Subspace::span(s.ambient_dim(), s.basis_vectors().map(|v| apply(j, v))).unwrap()
}
