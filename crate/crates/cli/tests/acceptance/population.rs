//! Every catalog `(algebra, J)` pair together with random rational
//! conjugates of it, computed once and shared by the criteria.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stratalg::catalog::all_builtins;
use stratalg::rational::{frac, int};
use stratalg::{
    classify_step2, nilpotent_step, transport, ComplexStructure, LieAlgebra, Matrix,
    SeriesReport, Step2Classification, Stratification,
};

use crate::oracle;

pub const CONJUGATIONS: usize = 50;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random invertible matrix with small rational entries, and its inverse.
pub fn random_invertible(rng: &mut impl Rng, n: usize) -> (Matrix, Matrix) {
    loop {
        let mut p = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                if rng.gen_bool(0.5) {
                    p[(r, c)] = frac(rng.gen_range(-3..=3), rng.gen_range(1..=3));
                }
            }
            if rng.gen_bool(0.5) {
                p[(r, r)] += int(1);
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

pub struct Sample {
    pub algebra: LieAlgebra,
    pub j: ComplexStructure,
    pub stratification: Option<Stratification>,
    /// carries catalog-basis subspaces into this basis
    pub p_inv: Matrix,
    pub report: SeriesReport,
    pub classification: Option<Step2Classification>,
}

pub struct Family {
    /// `entry/structure`
    pub name: String,
    pub entry: String,
    pub integrable: bool,
    pub step: Option<usize>,
    pub base: Sample,
    pub conjugates: Vec<Sample>,
}

impl Family {
    pub fn samples(&self) -> impl Iterator<Item = &Sample> {
        std::iter::once(&self.base).chain(&self.conjugates)
    }
}

fn sample(
    algebra: LieAlgebra,
    j: ComplexStructure,
    stratification: Option<Stratification>,
    p_inv: Matrix,
    integrable: bool,
    step: Option<usize>,
) -> Sample {
    let report = nilpotent_step(&algebra, &j).unwrap();
    let classification = (integrable && step == Some(2))
        .then(|| classify_step2(&algebra, &j, None).unwrap());
    Sample {
        algebra,
        j,
        stratification,
        p_inv,
        report,
        classification,
    }
}

pub fn families() -> &'static [Family] {
    static CELL: OnceLock<Vec<Family>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut out = Vec::new();
        for entry in all_builtins() {
            for (index, (jname, j)) in entry.complex_structures.iter().enumerate() {
                let g = &entry.algebra;
                let n = g.dim();
                let integrable = oracle::nijenhuis_failures(g, j.matrix()).is_empty();
                let step = oracle::nilpotency_step(g);
                let s = entry.stratification().cloned();
                let base = sample(g.clone(), j.clone(), s.clone(), Matrix::identity(n), integrable, step);
                let mut r = rng(0x5eed ^ ((out.len() as u64) << 8) ^ index as u64);
                let conjugates = (0..CONJUGATIONS)
                    .map(|_| {
                        let (p, p_inv) = random_invertible(&mut r, n);
                        let moved = s.as_ref().map(|s| {
                            Stratification::new(s.layers.iter().map(|l| transport(l, &p_inv)).collect())
                        });
                        sample(
                            g.change_of_basis(&p).unwrap(),
                            j.conjugate(&p, &p_inv),
                            moved,
                            p_inv,
                            integrable,
                            step,
                        )
                    })
                    .collect();
                out.push(Family {
                    name: format!("{}/{}", entry.name, jname),
                    entry: entry.name.clone(),
                    integrable,
                    step,
                    base,
                    conjugates,
                });
            }
        }
        out
    })
}
