#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stratalg::catalog::all_builtins;
use stratalg::rational::{frac, int};
use stratalg::{
    transport, ComplexStructure, LieAlgebra, Matrix, Rational, Stratification, Subspace,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut impl Rng) -> Rational {
    frac(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            // sparse entries keep ranks varied
            if rng.gen_bool(0.6) {
                m[(r, c)] = small_rational(rng);
            }
        }
    }
    m
}

/// A random invertible rational matrix with its inverse.
pub fn random_invertible(rng: &mut impl Rng, n: usize) -> (Matrix, Matrix) {
    loop {
        let mut p = random_matrix(rng, n, n);
        for i in 0..n {
            if rng.gen_bool(0.5) {
                p[(i, i)] += int(1);
            }
        }
        if let Ok(inv) = p.inverse() {
            return (p, inv);
        }
    }
}

/// `AᵀA + I` for a random integer `A`.
pub fn random_spd(rng: &mut impl Rng, n: usize) -> Matrix {
    let mut a = Matrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            a[(r, c)] = int(rng.gen_range(-3..=3));
        }
    }
    a.transpose()
        .mul(&a)
        .unwrap()
        .add(&Matrix::identity(n))
        .unwrap()
}

pub fn random_vector(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| small_rational(rng)).collect()
}

pub fn random_subspace(rng: &mut impl Rng, n: usize) -> Subspace {
    let k = rng.gen_range(0..=n);
    let m = random_matrix(rng, k, n);
    Subspace::row_space(&m)
}

#[derive(Clone)]
pub struct Instance {
    pub name: String,
    pub algebra: LieAlgebra,
    pub j: ComplexStructure,
    pub stratification: Option<Stratification>,
}

/// Every catalog algebra paired with each listed `J`.
pub fn instances() -> Vec<Instance> {
    let mut out = Vec::new();
    for e in all_builtins() {
        for (jname, j) in &e.complex_structures {
            out.push(Instance {
                name: format!("{}/{}", e.name, jname),
                algebra: e.algebra.clone(),
                j: j.clone(),
                stratification: e.stratification().cloned(),
            });
        }
    }
    out
}

pub fn integrable_instances() -> Vec<Instance> {
    instances()
        .into_iter()
        .filter(|i| stratalg::is_integrable(&i.algebra, &i.j).integrable)
        .collect()
}

/// The same instance written in the basis given by the columns of `p`.
pub fn conjugate(inst: &Instance, p: &Matrix, p_inv: &Matrix) -> Instance {
    Instance {
        name: format!("{} (conjugated)", inst.name),
        algebra: inst.algebra.change_of_basis(p).unwrap(),
        j: inst.j.conjugate(p, p_inv),
        stratification: inst.stratification.as_ref().map(|s| {
            Stratification::new(s.layers.iter().map(|l| transport(l, p_inv)).collect())
        }),
    }
}
