//! Randomized search for an integrable complex structure.
//!
//! Candidates are `J = P J₀ P⁻¹` for the standard `J₀`, so `J² = -I` holds by
//! construction; Levenberg–Marquardt drives the Nijenhuis tensor of `J` to
//! zero over the entries of `P`. A float candidate is only ever returned after
//! it has been turned into an exact rational matrix and re-verified exactly.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{is_integrable, validate_almost_complex, ComplexError, ComplexStructure};
use crate::lie::LieAlgebra;
use crate::linalg::Matrix;
use crate::rational::{approximate, to_f64, Rational};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub seed: u64,
    pub restarts: usize,
    /// Float residual norm below which a candidate is promoted.
    pub threshold: f64,
    /// Largest denominator tried when reconstructing `J` entry by entry.
    pub den_cap: u64,
    /// Largest denominator used when rounding entries of `P`.
    pub snap_den_cap: u64,
    pub max_iterations: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            restarts: 100,
            threshold: 1e-10,
            den_cap: 1_000_000,
            snap_den_cap: 2,
            max_iterations: 200,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PromotionMethod {
    /// Continued-fraction reconstruction of the float `J`.
    Reconstructed,
    /// `P` rounded entry by entry with re-optimization in between.
    Snapped,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SearchOutcome {
    Found {
        j: ComplexStructure,
        /// 0-based restart that succeeded
        restart: usize,
        method: PromotionMethod,
    },
    Exhausted {
        restarts: usize,
        best_residual: f64,
    },
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&ComplexStructure> {
        match self {
            SearchOutcome::Found { j, .. } => Some(j),
            SearchOutcome::Exhausted { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("odd dimension {0}: no almost complex structure exists")]
    OddDimension(usize),
    #[error("invalid search configuration: {0}")]
    InvalidConfig(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PromotionError {
    #[error("candidate has {rows}x{cols} entries, expected {dim}x{dim}")]
    WrongSize { rows: usize, cols: usize, dim: usize },
    #[error("entry ({row}, {col}) has no rational approximation")]
    NotFinite { row: usize, col: usize },
    #[error(transparent)]
    NotAlmostComplex(#[from] ComplexError),
    #[error("rounded candidate is not integrable: N(e{}, e{}) != 0", pair.0, pair.1)]
    NotIntegrable { pair: (usize, usize) },
}

/// Rounds a float matrix to rationals with denominators at most `den_cap` and
/// accepts it only if the exact result is an integrable complex structure.
pub fn promote_candidate(
    alg: &LieAlgebra,
    candidate: &[Vec<f64>],
    den_cap: u64,
) -> Result<ComplexStructure, PromotionError> {
    let n = alg.dim();
    let cols = candidate.first().map_or(0, Vec::len);
    if candidate.len() != n || candidate.iter().any(|r| r.len() != n) {
        return Err(PromotionError::WrongSize {
            rows: candidate.len(),
            cols,
            dim: n,
        });
    }
    let mut exact = Matrix::zeros(n, n);
    for (r, row) in candidate.iter().enumerate() {
        for (c, &x) in row.iter().enumerate() {
            exact[(r, c)] =
                approximate(x, den_cap).ok_or(PromotionError::NotFinite { row: r, col: c })?;
        }
    }
    verify_exact(alg, &exact)
}

fn verify_exact(alg: &LieAlgebra, j: &Matrix) -> Result<ComplexStructure, PromotionError> {
    let structure = validate_almost_complex(alg, j)?;
    let report = is_integrable(alg, &structure);
    match report.witnesses.first() {
        None => Ok(structure),
        Some(w) => Err(PromotionError::NotIntegrable { pair: w.pair }),
    }
}

pub fn search_integrable_j(
    alg: &LieAlgebra,
    config: &SearchConfig,
) -> Result<SearchOutcome, SearchError> {
    let n = alg.dim();
    if n % 2 == 1 {
        return Err(SearchError::OddDimension(n));
    }
    if config.threshold.is_nan() || config.threshold <= 0.0 {
        return Err(SearchError::InvalidConfig("threshold must be positive"));
    }
    if config.den_cap == 0 || config.snap_den_cap == 0 {
        return Err(SearchError::InvalidConfig("denominator caps must be positive"));
    }
    let problem = Problem::new(alg);
    let mut best_residual = f64::INFINITY;
    for restart in 0..config.restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(restart as u64);
        let start: Vec<f64> = (0..n * n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mut frozen = vec![None; n * n];
        let (p, residual) = problem.minimize(start, &frozen, config);
        best_residual = best_residual.min(residual);
        if residual >= config.threshold {
            continue;
        }
        if let Some(j) = problem.j_of(&p) {
            if let Ok(j) = promote_candidate(alg, &to_rows(&j), config.den_cap) {
                return Ok(SearchOutcome::Found {
                    j,
                    restart,
                    method: PromotionMethod::Reconstructed,
                });
            }
        }
        if let Some(j) = problem.snap(p, &mut frozen, config) {
            if let Ok(j) = verify_exact(alg, &j) {
                return Ok(SearchOutcome::Found {
                    j,
                    restart,
                    method: PromotionMethod::Snapped,
                });
            }
        }
    }
    Ok(SearchOutcome::Exhausted {
        restarts: config.restarts,
        best_residual,
    })
}

/// Seeded search with `budget` restarts and default tolerances; `None` when
/// no exactly verified structure was found.
pub fn find_complex_structure(
    alg: &LieAlgebra,
    seed: u64,
    budget: usize,
) -> Result<Option<ComplexStructure>, SearchError> {
    let config = SearchConfig {
        seed,
        restarts: budget,
        ..SearchConfig::default()
    };
    Ok(search_integrable_j(alg, &config)?.found().cloned())
}

fn to_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| m[(r, c)]).collect())
        .collect()
}

struct Problem {
    n: usize,
    /// `consts[(i * n + j) * n + k]` is the `e_k` coefficient of `[e_i, e_j]`
    consts: Vec<f64>,
    j0: DMatrix<f64>,
}

impl Problem {
    fn new(alg: &LieAlgebra) -> Self {
        let n = alg.dim();
        let mut consts = vec![0.0; n * n * n];
        for ((i, j), v) in alg.structure_constants() {
            for (k, c) in v.iter().enumerate() {
                let c = to_f64(c);
                consts[(i * n + j) * n + k] = c;
                consts[(j * n + i) * n + k] = -c;
            }
        }
        let mut j0 = DMatrix::zeros(n, n);
        for b in (0..n).step_by(2) {
            j0[(b + 1, b)] = 1.0;
            j0[(b, b + 1)] = -1.0;
        }
        Self { n, consts, j0 }
    }

    fn bracket(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        let n = self.n;
        let mut out = DVector::zeros(n);
        for i in 0..n {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                let s = x[i] * y[j];
                if s == 0.0 {
                    continue;
                }
                let base = (i * n + j) * n;
                for k in 0..n {
                    out[k] += s * self.consts[base + k];
                }
            }
        }
        out
    }

    fn j_of(&self, p: &[f64]) -> Option<DMatrix<f64>> {
        let p = DMatrix::from_row_slice(self.n, self.n, p);
        let inv = p.clone().try_inverse()?;
        let j = &p * &self.j0 * inv;
        j.iter().all(|x| x.is_finite()).then_some(j)
    }

    fn residual(&self, p: &[f64]) -> DVector<f64> {
        let n = self.n;
        let m = n * (n - 1) / 2 * n;
        let Some(j) = self.j_of(p) else {
            return DVector::from_element(m, 1e6);
        };
        let mut out = DVector::zeros(m);
        let mut row = 0;
        for a in 0..n {
            for b in a + 1..n {
                let ea = DVector::from_fn(n, |i, _| if i == a { 1.0 } else { 0.0 });
                let eb = DVector::from_fn(n, |i, _| if i == b { 1.0 } else { 0.0 });
                let ja = j.column(a).into_owned();
                let jb = j.column(b).into_owned();
                let inner = self.bracket(&ja, &eb) + self.bracket(&ea, &jb);
                let value = self.bracket(&ja, &jb) - self.bracket(&ea, &eb) - &j * inner;
                out.rows_mut(row, n).copy_from(&value);
                row += n;
            }
        }
        out
    }

    /// Levenberg–Marquardt over the entries of `p` that are not frozen.
    /// Returns the final point and its residual norm.
    fn minimize(
        &self,
        mut p: Vec<f64>,
        frozen: &[Option<f64>],
        config: &SearchConfig,
    ) -> (Vec<f64>, f64) {
        for (x, f) in p.iter_mut().zip(frozen) {
            if let Some(v) = f {
                *x = *v;
            }
        }
        let free: Vec<usize> = (0..p.len()).filter(|&i| frozen[i].is_none()).collect();
        let mut r = self.residual(&p);
        let mut cost = r.norm();
        if free.is_empty() {
            return (p, cost);
        }
        let mut lambda = 1e-3;
        for _ in 0..config.max_iterations {
            if cost < config.threshold || !cost.is_finite() {
                break;
            }
            let mut jac = DMatrix::zeros(r.len(), free.len());
            for (col, &idx) in free.iter().enumerate() {
                let h = 1e-7 * p[idx].abs().max(1.0);
                let mut q = p.clone();
                q[idx] += h;
                let dr = (self.residual(&q) - &r) / h;
                jac.set_column(col, &dr);
            }
            let jt = jac.transpose();
            let normal = &jt * &jac;
            let gradient = &jt * &r;
            let mut improved = false;
            while lambda < 1e12 {
                let mut damped = normal.clone();
                for d in 0..free.len() {
                    damped[(d, d)] += lambda * (1.0 + normal[(d, d)]);
                }
                let Some(step) = damped.cholesky().map(|c| c.solve(&(-&gradient))) else {
                    lambda *= 4.0;
                    continue;
                };
                let mut q = p.clone();
                for (col, &idx) in free.iter().enumerate() {
                    q[idx] += step[col];
                }
                let rq = self.residual(&q);
                let cq = rq.norm();
                if cq < cost {
                    p = q;
                    r = rq;
                    cost = cq;
                    lambda = (lambda / 3.0).max(1e-12);
                    improved = true;
                    break;
                }
                lambda *= 4.0;
            }
            if !improved {
                break;
            }
        }
        (p, cost)
    }

    /// Rounds the entries of `p` one at a time, re-optimizing the rest after
    /// each, and returns the exact `P J₀ P⁻¹` once every entry is rational.
    fn snap(
        &self,
        mut p: Vec<f64>,
        frozen: &mut [Option<f64>],
        config: &SearchConfig,
    ) -> Option<Matrix> {
        let n = self.n;
        let mut exact: Vec<Option<Rational>> = vec![None; n * n];
        'outer: loop {
            let free: Vec<usize> = (0..p.len()).filter(|&i| frozen[i].is_none()).collect();
            if free.is_empty() {
                break;
            }
            let settled: Option<Vec<Rational>> = free
                .iter()
                .map(|&i| approximate(p[i], SETTLED_DEN).filter(|q| (to_f64(q) - p[i]).abs() < SETTLED_GAP))
                .collect();
            if let Some(values) = settled {
                for (&i, q) in free.iter().zip(values) {
                    frozen[i] = Some(to_f64(&q));
                    exact[i] = Some(q);
                }
                break;
            }
            let mut order: Vec<(usize, f64)> = free
                .iter()
                .map(|&i| (i, nearby_rationals(p[i], config.snap_den_cap)[0].1))
                .collect();
            order.sort_by(|a, b| a.1.total_cmp(&b.1));
            for &(idx, _) in order.iter().take(SNAP_ENTRY_TRIES) {
                for (q, _) in nearby_rationals(p[idx], config.snap_den_cap)
                    .into_iter()
                    .take(SNAP_VALUE_TRIES)
                {
                    frozen[idx] = Some(to_f64(&q));
                    let (next, residual) = self.minimize(p.clone(), frozen, config);
                    if residual < config.threshold {
                        exact[idx] = Some(q);
                        p = next;
                        continue 'outer;
                    }
                }
                frozen[idx] = None;
            }
            return None;
        }
        let rows = (0..n)
            .map(|r| (0..n).map(|c| exact[r * n + c].clone().expect("all frozen")).collect())
            .collect();
        let p = Matrix::from_rows(n, rows).ok()?;
        let p_inv = p.inverse().ok()?;
        let j0 = ComplexStructure::standard(n).ok()?;
        // P J₀ P⁻¹ is the conjugate by P⁻¹
        Some(j0.conjugate(&p_inv, &p).matrix().clone())
    }
}

const SETTLED_DEN: u64 = 1000;
const SETTLED_GAP: f64 = 1e-9;
const SNAP_ENTRY_TRIES: usize = 6;
const SNAP_VALUE_TRIES: usize = 4;

/// Rationals `m/d` with `d ≤ cap` near `x`, nearest first, with their distances.
fn nearby_rationals(x: f64, cap: u64) -> Vec<(Rational, f64)> {
    let mut out: Vec<(Rational, f64)> = Vec::new();
    for d in 1..=cap.max(1) {
        let base = (x * d as f64).floor() as i64;
        for m in [base, base + 1] {
            let q = Rational::new(m.into(), (d as i64).into());
            if out.iter().all(|(r, _)| *r != q) {
                out.push((q, (m as f64 / d as f64 - x).abs()));
            }
        }
    }
    out.sort_by(|a, b| a.1.total_cmp(&b.1));
    out
}
