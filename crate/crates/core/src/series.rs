//! The `J`-invariant series of a Lie algebra with an almost complex
//! structure, the nilpotent step of `J`, and the containments relating them
//! to the classical central series.
//!
//! * `d^0 = {0}`, `d^j = {X : [X, n] ⊆ d^{j-1}, [JX, n] ⊆ d^{j-1}}`
//! * `d_0 = n`, `d_j = [d_{j-1}, n] + J[d_{j-1}, n]`
//! * `p_0 = n`, `p_j = [p_{j-1}, n] + [J p_{j-1}, n]`
//!
//! `J` is nilpotent of step `j0` when `d^{j0} = n` and `d^{j0-1} ≠ n`;
//! equivalently `p_{j0} = {0} ≠ p_{j0-1}`, or `d_{j0} = {0} ≠ d_{j0-1}`. All
//! three are computed independently and must agree.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{largest_j_invariant_subspace, ComplexStructure};
use crate::lie::{CentralSeries, LieAlgebra, SeriesKind};
use crate::linalg::Subspace;
use crate::verdict::{Outcome, Verdict};

pub fn j_ascending_series(alg: &LieAlgebra, j: &ComplexStructure) -> CentralSeries {
    CentralSeries::iterate(
        SeriesKind::JAscending,
        Subspace::zero(alg.dim()),
        alg.dim(),
        |prev| alg.preimage_of_central(prev, Some(j.matrix())),
    )
}

pub fn j_descending_series(alg: &LieAlgebra, j: &ComplexStructure) -> CentralSeries {
    CentralSeries::iterate(
        SeriesKind::JDescending,
        Subspace::full(alg.dim()),
        alg.dim(),
        |prev| {
            let b = alg.bracket_with_full(prev);
            b.sum(&j.image(&b)).expect("same ambient")
        },
    )
}

pub fn p_series(alg: &LieAlgebra, j: &ComplexStructure) -> CentralSeries {
    CentralSeries::iterate(
        SeriesKind::P,
        Subspace::full(alg.dim()),
        alg.dim(),
        |prev| {
            alg.bracket_with_full(prev)
                .sum(&alg.bracket_with_full(&j.image(prev)))
                .expect("same ambient")
        },
    )
}

/// The nilpotent step of `J` as read off each of the three series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Routes {
    /// least `j` with `d^j = n`
    pub ascending: Option<usize>,
    /// least `j` with `p_j = {0}`
    pub p: Option<usize>,
    /// least `j` with `d_j = {0}`
    pub descending: Option<usize>,
}

impl Routes {
    pub fn agree(&self) -> bool {
        self.ascending == self.p && self.p == self.descending
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("nilpotent-step routes disagree: d^j gives {:?}, p_j gives {:?}, d_j gives {:?}", .0.ascending, .0.p, .0.descending)]
    RouteDisagreement(Routes),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesReport {
    pub c_desc: CentralSeries,
    pub c_asc: CentralSeries,
    pub d_asc: CentralSeries,
    pub d_desc: CentralSeries,
    pub p_desc: CentralSeries,
    /// nilpotency step `k` of the algebra
    pub step: Option<usize>,
    /// nilpotent step `j0` of `J`
    pub j0: Option<usize>,
    pub routes: Routes,
    pub route_agreement: bool,
}

impl SeriesReport {
    pub fn dim(&self) -> usize {
        self.c_desc.terms[0].ambient_dim()
    }

    pub fn center(&self) -> &Subspace {
        self.c_asc.term(1)
    }

    pub fn series(&self) -> [&CentralSeries; 5] {
        [
            &self.c_desc,
            &self.c_asc,
            &self.d_asc,
            &self.d_desc,
            &self.p_desc,
        ]
    }

    /// An index past which every series is constant.
    pub fn horizon(&self) -> usize {
        self.series()
            .iter()
            .map(|s| s.stabilized_at)
            .max()
            .unwrap_or(0)
            + 1
    }
}

/// Computes all five series and the nilpotent step of `J` by the three
/// independent routes. Disagreement between routes is an error.
pub fn nilpotent_step(alg: &LieAlgebra, j: &ComplexStructure) -> Result<SeriesReport, SeriesError> {
    let c_desc = alg.descending_central_series();
    let c_asc = alg.ascending_central_series();
    let d_asc = j_ascending_series(alg, j);
    let d_desc = j_descending_series(alg, j);
    let p_desc = p_series(alg, j);
    let routes = Routes {
        ascending: d_asc.first_index_where(Subspace::is_full),
        p: p_desc.first_index_where(Subspace::is_zero),
        descending: d_desc.first_index_where(Subspace::is_zero),
    };
    if !routes.agree() {
        return Err(SeriesError::RouteDisagreement(routes));
    }
    let step = c_desc.first_index_where(Subspace::is_zero);
    Ok(SeriesReport {
        c_desc,
        c_asc,
        d_asc,
        d_desc,
        p_desc,
        step,
        j0: routes.ascending,
        routes,
        route_agreement: true,
    })
}

fn sub(a: &Subspace, b: &Subspace) -> bool {
    b.contains(a).expect("same ambient")
}

fn plus_j(j: &ComplexStructure, s: &Subspace) -> Subspace {
    s.sum(&j.image(s)).expect("same ambient")
}

/// Collects the first index where a per-index check fails.
fn indexed_check<F>(name: &str, range: std::ops::RangeInclusive<usize>, what: &str, mut ok: F) -> Verdict
where
    F: FnMut(usize) -> bool,
{
    if range.is_empty() {
        return Verdict::new(name, Outcome::VacuousPass, "empty index range");
    }
    let (lo, hi) = (*range.start(), *range.end());
    match range.into_iter().find(|&i| !ok(i)) {
        None => Verdict::pass(name, format!("{what} for j in {lo}..={hi}")),
        Some(i) => Verdict::fail(name, format!("{what} fails at j = {i}")),
    }
}

/// Containments among the five series, checked exactly term by term.
pub fn containment_audit(
    alg: &LieAlgebra,
    j: &ComplexStructure,
    report: &SeriesReport,
) -> Vec<Verdict> {
    let horizon = report.horizon();
    let c = |i: usize| report.c_desc.term(i);
    let p = |i: usize| report.p_desc.term(i);
    let dd = |i: usize| report.d_desc.term(i);
    let da = |i: usize| report.d_asc.term(i);
    let z = report.center();
    let mut out = vec![indexed_check(
        "lower_central_within_p",
        0..=horizon,
        "c_j ⊆ p_j",
        |i| sub(c(i), p(i)),
    )];
    out.push(indexed_check(
        "p_and_j_p_within_d_descending",
        0..=horizon,
        "p_j ⊆ d_j and J p_j ⊆ d_j",
        |i| sub(p(i), dd(i)) && sub(&j.image(p(i)), dd(i)),
    ));
    out.push(indexed_check(
        "lower_central_plus_j_within_d_descending",
        0..=horizon,
        "c_j + J c_j ⊆ d_j",
        |i| sub(&plus_j(j, c(i)), dd(i)),
    ));
    out.push(indexed_check(
        "p_bracket_descends",
        0..=horizon,
        "[p_j, n] ⊆ p_{j+1}",
        |i| sub(&alg.bracket_with_full(p(i)), p(i + 1)),
    ));
    out.push(indexed_check(
        "p_plus_j_p_is_ideal",
        0..=horizon,
        "p_j + J p_j is an ideal",
        |i| alg.is_ideal(&plus_j(j, p(i))),
    ));
    out.push(indexed_check(
        "j_series_are_ideals",
        0..=horizon,
        "d^j, d_j, p_j are ideals",
        |i| alg.is_ideal(da(i)) && alg.is_ideal(dd(i)) && alg.is_ideal(p(i)),
    ));
    out.push(indexed_check(
        "d_series_are_j_invariant",
        0..=horizon,
        "J d^j = d^j and J d_j = d_j",
        |i| j.preserves(da(i)) && j.preserves(dd(i)),
    ));
    out.push(indexed_check(
        "series_monotone",
        0..=horizon,
        "d^j ⊆ d^{j+1}, d_{j+1} ⊆ d_j, p_{j+1} ⊆ p_j",
        |i| sub(da(i), da(i + 1)) && sub(dd(i + 1), dd(i)) && sub(p(i + 1), p(i)),
    ));
    let d1_expected = largest_j_invariant_subspace(j, z);
    out.push(Verdict::check(
        "first_ascending_term_is_center_core",
        *da(1) == d1_expected,
        format!("d^1 = z ∩ Jz (dim {})", d1_expected.dim()),
    ));

    const NEEDS_J0: [&str; 7] = [
        "nilpotent_chain",
        "abelian_quotient_by_penultimate_ascending",
        "descending_within_ascending",
        "last_nonzero_descending_is_central_abelian",
        "descending_not_within_smaller_ascending",
        "ascending_strictly_increasing",
        "j0_bounds",
    ];
    let Some(j0) = report.j0 else {
        out.extend(
            NEEDS_J0
                .iter()
                .map(|name| Verdict::not_met(name, "J is not nilpotent")),
        );
        return out;
    };

    out.push(indexed_check(
        NEEDS_J0[0],
        0..=j0,
        "c_j + J c_j ⊆ p_j + J p_j ⊆ d_j ⊆ d^{j0-j}",
        |i| {
            let cj = plus_j(j, c(i));
            let pj = plus_j(j, p(i));
            sub(&cj, &pj) && sub(&pj, dd(i)) && sub(dd(i), da(j0 - i))
        },
    ));
    // n/d^{j0-1} abelian, and c_1 ⊆ d^{i-1} forces j0 ≤ i
    let c1 = c(1);
    let abelian_quotient = sub(c1, da(j0 - 1));
    let minimal = (1..j0).all(|i| !sub(c1, da(i - 1)));
    out.push(Verdict::check(
        NEEDS_J0[1],
        abelian_quotient && minimal,
        format!("c_1 ⊆ d^{} and c_1 ⊄ d^(i-1) for 1 ≤ i < {j0}", j0 - 1),
    ));
    out.push(indexed_check(NEEDS_J0[2], 0..=j0, "d_j ⊆ d^{j0-j}", |i| {
        sub(dd(i), da(j0 - i))
    }));
    let last = dd(j0 - 1);
    let central = sub(last, da(1)) && sub(da(1), z);
    let abelian = alg
        .bracket_subspaces(last, last)
        .expect("same ambient")
        .is_zero();
    out.push(Verdict::check(
        NEEDS_J0[3],
        central && abelian,
        format!("d_{} ⊆ d^1 ⊆ z and [d_{0}, d_{0}] = 0", j0 - 1),
    ));
    out.push(indexed_check(
        NEEDS_J0[4],
        1..=j0,
        "d_{j0-j} ⊄ d^{j-1}",
        |i| !sub(dd(j0 - i), da(i - 1)),
    ));
    out.push(indexed_check(
        NEEDS_J0[5],
        1..=j0,
        "d^{j-1} ⊊ d^j",
        |i| da(i - 1).dim() < da(i).dim(),
    ));
    let dim = report.dim();
    let k = report.step.unwrap_or(usize::MAX);
    let d1 = da(1);
    out.push(Verdict::check(
        NEEDS_J0[6],
        k <= j0 && 2 * j0 <= dim && !d1.is_zero() && d1.dim() % 2 == 0,
        format!("k = {k} ≤ j0 = {j0} ≤ dim/2 = {}, dim d^1 = {} even and nonzero", dim / 2, d1.dim()),
    ));
    out
}

/// Center dimension bounds for a nilpotent `J` on a non-abelian algebra:
/// `2 ≤ dim z ≤ dim - 2`, with `d^1` nonzero and even-dimensional, and
/// `k ≤ j0 ≤ dim/2`.
pub fn center_dim_bounds(alg: &LieAlgebra, report: &SeriesReport) -> Verdict {
    const NAME: &str = "center_dimension_bounds";
    let Some(j0) = report.j0 else {
        return Verdict::not_met(NAME, "J is not nilpotent");
    };
    if alg.is_abelian() {
        return Verdict::not_met(NAME, "algebra is abelian");
    }
    let dim = alg.dim();
    let z = report.center().dim();
    let d1 = report.d_asc.term(1).dim();
    let k = report.step.unwrap_or(usize::MAX);
    let ok = 2 <= z && z + 2 <= dim && d1 >= 2 && d1.is_multiple_of(2) && k <= j0 && 2 * j0 <= dim;
    Verdict::check(
        NAME,
        ok,
        format!(
            "dim z = {z} in [2, {}], dim d^1 = {d1}, k = {k} ≤ j0 = {j0} ≤ {}",
            dim - 2,
            dim / 2
        ),
    )
}
