//! Stratifications (Carnot gradings) `n = n_1 ⊕ … ⊕ n_k` with
//! `[n_1, n_{j-1}] = n_j` and `[n_1, n_k] = 0`, the construction of a
//! `J`-invariant stratification on a step-two algebra, the step-two
//! classification by `𝔨 = n_2 ∩ J n_2`, and a suite of checked statements
//! relating stratifications, central series and complex structures.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{
    classify_special, is_integrable, j_invariant_inner_product, largest_j_invariant_subspace,
    ComplexError, ComplexStructure, SpecialFlags,
};
use crate::lie::LieAlgebra;
use crate::linalg::{Matrix, Subspace};
use crate::series::{center_dim_bounds, containment_audit, nilpotent_step, SeriesError, SeriesReport};
use crate::verdict::Verdict;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Stratification {
    pub layers: Vec<Subspace>,
}

impl Stratification {
    pub fn new(layers: Vec<Subspace>) -> Self {
        Self { layers }
    }

    pub fn step(&self) -> usize {
        self.layers.len()
    }

    /// Layer `n_i`, 1-based.
    pub fn layer(&self, i: usize) -> &Subspace {
        &self.layers[i - 1]
    }
}

/// The first stratification property that fails. Layer indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StratificationViolation {
    #[error("stratification has no layers")]
    NoLayers,
    #[error("layer {layer} lives in dimension {found}, algebra has dimension {dim}")]
    AmbientMismatch { layer: usize, found: usize, dim: usize },
    #[error("top layer n_{0} is zero")]
    ZeroTopLayer(usize),
    #[error("layer {layer} meets the sum of the previous layers")]
    NotDirectSum { layer: usize },
    #[error("layers span a subspace of dimension {spanned}, not {dim}")]
    NotSpanning { spanned: usize, dim: usize },
    #[error("generation fails: [n_1, n_{prev}] != n_{layer}")]
    GenerationFails { layer: usize, prev: usize },
    #[error("[n_1, n_{0}] is not zero")]
    TopNotAnnihilated(usize),
    #[error("c_{index} differs from the sum of layers n_{} and above", index + 1)]
    LowerCentralMismatch { index: usize },
}

pub fn verify_stratification(
    alg: &LieAlgebra,
    s: &Stratification,
) -> Result<(), StratificationViolation> {
    let dim = alg.dim();
    let k = s.step();
    if k == 0 {
        return Err(StratificationViolation::NoLayers);
    }
    for (i, layer) in s.layers.iter().enumerate() {
        if layer.ambient_dim() != dim {
            return Err(StratificationViolation::AmbientMismatch {
                layer: i + 1,
                found: layer.ambient_dim(),
                dim,
            });
        }
    }
    if s.layer(k).is_zero() {
        return Err(StratificationViolation::ZeroTopLayer(k));
    }
    let mut partial = Subspace::zero(dim);
    for (i, layer) in s.layers.iter().enumerate() {
        let next = partial.sum(layer).expect("same ambient");
        if next.dim() != partial.dim() + layer.dim() {
            return Err(StratificationViolation::NotDirectSum { layer: i + 1 });
        }
        partial = next;
    }
    if !partial.is_full() {
        return Err(StratificationViolation::NotSpanning {
            spanned: partial.dim(),
            dim,
        });
    }
    let n1 = s.layer(1);
    for layer in 2..=k {
        let generated = alg
            .bracket_subspaces(n1, s.layer(layer - 1))
            .expect("same ambient");
        if generated != *s.layer(layer) {
            return Err(StratificationViolation::GenerationFails {
                layer,
                prev: layer - 1,
            });
        }
    }
    if !alg
        .bracket_subspaces(n1, s.layer(k))
        .expect("same ambient")
        .is_zero()
    {
        return Err(StratificationViolation::TopNotAnnihilated(k));
    }
    let lower = alg.descending_central_series();
    let mut tail = Subspace::zero(dim);
    for index in (0..=k).rev() {
        // c_index = ⊕_{l ≥ index+1} n_l
        if *lower.term(index) != tail {
            return Err(StratificationViolation::LowerCentralMismatch { index });
        }
        if index > 0 {
            tail = tail.sum(&s.layers[index - 1]).expect("same ambient");
        }
    }
    Ok(())
}

pub fn is_strata_preserving(j: &ComplexStructure, s: &Stratification) -> bool {
    s.layers.iter().all(|layer| j.preserves(layer))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StratError {
    #[error("algebra is not nilpotent of step 2 (step {0:?})")]
    NotStepTwo(Option<usize>),
    #[error("derived algebra [n, n] is not J-invariant")]
    DerivedNotInvariant,
    #[error("invalid stratification: {0}")]
    InvalidStratification(#[from] StratificationViolation),
    #[error("stratification has {0} layers, expected 2")]
    WrongStep(usize),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// For a step-two algebra whose derived algebra is `J`-invariant: `n_2 = [n, n]`
/// and `n_1` its orthogonal complement for `ψ = φ + Jᵀ φ J`.
pub fn build_step2_j_stratification(
    alg: &LieAlgebra,
    j: &ComplexStructure,
    phi: &Matrix,
) -> Result<Stratification, StratError> {
    let lower = alg.descending_central_series();
    let step = lower.first_index_where(Subspace::is_zero);
    if step != Some(2) {
        return Err(StratError::NotStepTwo(step));
    }
    invariant_layers(j, lower.term(1), phi)
}

fn invariant_layers(
    j: &ComplexStructure,
    derived: &Subspace,
    phi: &Matrix,
) -> Result<Stratification, StratError> {
    if !j.preserves(derived) {
        return Err(StratError::DerivedNotInvariant);
    }
    let psi = j_invariant_inner_product(j, phi)?;
    let first = derived
        .orthogonal_complement(&psi)
        .map_err(ComplexError::from)?;
    Ok(Stratification::new(vec![first, derived.clone()]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KCase {
    /// `𝔨 = {0}`
    KZero,
    /// `{0} ≠ 𝔨 ⊊ n_2`
    KProper,
    /// `𝔨 = n_2`
    KFull,
}

impl KCase {
    pub fn predicted_j0(self) -> usize {
        match self {
            KCase::KZero | KCase::KFull => 2,
            KCase::KProper => 3,
        }
    }
}

impl fmt::Display for KCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KCase::KZero => "k_zero",
            KCase::KProper => "k_proper",
            KCase::KFull => "k_full",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step2Classification {
    pub case: KCase,
    pub k_subspace: Subspace,
    pub predicted_j0: usize,
    pub computed_j0: Option<usize>,
    pub integrable: bool,
    /// `J` preserves both layers of the stratification used
    pub strata_preserving: bool,
    /// `J z = z`
    pub center_preserving: bool,
    pub stratification: Stratification,
}

impl Step2Classification {
    pub fn prediction_holds(&self) -> bool {
        self.computed_j0 == Some(self.predicted_j0)
    }
}

/// Classifies `J` on a step-two algebra by `𝔨 = n_2 ∩ J n_2`.
///
/// Without a supplied stratification, `n_1` is the complement of `n_2 = [n, n]`
/// for the `J`-invariant inner product built from the identity when `n_2` is
/// `J`-invariant, and for the identity Gram matrix otherwise.
pub fn classify_step2(
    alg: &LieAlgebra,
    j: &ComplexStructure,
    s: Option<&Stratification>,
) -> Result<Step2Classification, StratError> {
    let report = nilpotent_step(alg, j)?;
    classify_with(alg, j, s, &report, is_integrable(alg, j).integrable)
}

fn classify_with(
    alg: &LieAlgebra,
    j: &ComplexStructure,
    s: Option<&Stratification>,
    report: &SeriesReport,
    integrable: bool,
) -> Result<Step2Classification, StratError> {
    if report.step != Some(2) {
        return Err(StratError::NotStepTwo(report.step));
    }
    let derived = report.c_desc.term(1);
    let stratification = match s {
        Some(s) => {
            verify_stratification(alg, s)?;
            if s.step() != 2 {
                return Err(StratError::WrongStep(s.step()));
            }
            s.clone()
        }
        None => {
            let identity = Matrix::identity(alg.dim());
            match invariant_layers(j, derived, &identity) {
                Ok(s) => s,
                Err(StratError::DerivedNotInvariant) => {
                    let first = derived
                        .orthogonal_complement(&identity)
                        .map_err(ComplexError::from)?;
                    Stratification::new(vec![first, derived.clone()])
                }
                Err(e) => return Err(e),
            }
        }
    };
    let n2 = stratification.layer(2);
    let k_subspace = largest_j_invariant_subspace(j, n2);
    let case = if k_subspace.is_zero() {
        KCase::KZero
    } else if k_subspace == *n2 {
        KCase::KFull
    } else {
        KCase::KProper
    };
    Ok(Step2Classification {
        case,
        predicted_j0: case.predicted_j0(),
        computed_j0: report.j0,
        integrable,
        strata_preserving: is_strata_preserving(j, &stratification),
        center_preserving: j.preserves(report.center()),
        k_subspace,
        stratification,
    })
}

/// True when `dim = 2n` with `n ≥ 2`, the step is `n`, and
/// `dim c_j = 2n - 2j` for `1 ≤ j ≤ n`: such an algebra has no stratification.
///
/// `lower_dims[j]` is `dim c_j`.
pub fn profile_forbids_stratification(dim: usize, step: Option<usize>, lower_dims: &[usize]) -> bool {
    if dim % 2 == 1 || dim < 4 {
        return false;
    }
    let n = dim / 2;
    if step != Some(n) {
        return false;
    }
    (1..=n).all(|j| lower_dims.get(j).copied().unwrap_or(0) == dim - 2 * j)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Obstruction {
    /// The lower central dimension profile rules out any stratification.
    NoStratification,
    /// A stratification with two-dimensional first layer and step at least
    /// two admits no strata-preserving `J`.
    NoStrataPreservingJ,
}

pub fn stratification_obstructions(alg: &LieAlgebra, s: Option<&Stratification>) -> Vec<Obstruction> {
    let mut out = Vec::new();
    let lower = alg.descending_central_series();
    if profile_forbids_stratification(alg.dim(), alg.nilpotency_step(), &lower.dims()) {
        out.push(Obstruction::NoStratification);
    }
    if let Some(s) = s {
        if verify_stratification(alg, s).is_ok() && s.step() >= 2 && s.layer(1).dim() == 2 {
            out.push(Obstruction::NoStrataPreservingJ);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub report: SeriesReport,
    pub audit: Vec<Verdict>,
    pub statements: Vec<Verdict>,
}

impl SuiteReport {
    pub fn verdicts(&self) -> impl Iterator<Item = &Verdict> {
        self.audit.iter().chain(&self.statements)
    }

    pub fn passed(&self) -> bool {
        self.verdicts().all(|v| !v.is_failure())
    }
}

struct Context<'a> {
    alg: &'a LieAlgebra,
    j: &'a ComplexStructure,
    report: &'a SeriesReport,
    integrable: bool,
    flags: SpecialFlags,
    /// a supplied stratification known to be valid
    strat: Option<Stratification>,
    /// the `J`-invariant step-two construction with `φ = I`, when `J[n, n] = [n, n]`
    constructed: Option<Result<Stratification, StratError>>,
    /// step-two classification, for step-two algebras
    classification: Option<Result<Step2Classification, StratError>>,
}

impl Context<'_> {
    fn c(&self, i: usize) -> &Subspace {
        self.report.c_desc.term(i)
    }

    fn z(&self) -> &Subspace {
        self.report.center()
    }

    fn d1(&self) -> &Subspace {
        self.report.d_asc.term(1)
    }

    fn step(&self) -> Option<usize> {
        self.report.step
    }

    fn all_lower_invariant(&self) -> bool {
        self.report.c_desc.terms.iter().all(|t| self.j.preserves(t))
    }

    fn all_upper_invariant(&self) -> bool {
        self.report.c_asc.terms.iter().all(|t| self.j.preserves(t))
    }

    /// The algebra is known to be stratified of its nilpotency step.
    fn stratified(&self) -> bool {
        self.strat.is_some() || self.step() == Some(2)
    }
}

type Statement = fn(&Context<'_>) -> Verdict;

/// Evaluates each statement on `(alg, J, s)`. Statements whose hypotheses do
/// not hold report `HypothesisNotMet`; a held hypothesis with a failed
/// conclusion is a `Fail`.
pub fn theorem_suite(
    alg: &LieAlgebra,
    j: &ComplexStructure,
    s: Option<&Stratification>,
) -> Result<SuiteReport, StratError> {
    let report = nilpotent_step(alg, j)?;
    let audit = containment_audit(alg, j, &report);

    let mut statements = Vec::new();
    let strat = match s {
        Some(s) => match verify_stratification(alg, s) {
            Ok(()) => {
                statements.push(Verdict::pass("supplied_stratification_valid", "verified"));
                Some(s.clone())
            }
            Err(v) => {
                statements.push(Verdict::fail("supplied_stratification_valid", v.to_string()));
                None
            }
        },
        None => None,
    };
    let integrable = is_integrable(alg, j).integrable;
    let step_two = report.step == Some(2);
    let derived = report.c_desc.term(1);
    let constructed = (step_two && j.preserves(derived))
        .then(|| invariant_layers(j, derived, &Matrix::identity(alg.dim())));
    let classification = step_two.then(|| {
        let supplied = strat.as_ref().filter(|s| s.step() == 2);
        classify_with(alg, j, supplied, &report, integrable)
    });
    let ctx = Context {
        alg,
        j,
        report: &report,
        integrable,
        flags: classify_special(alg, j),
        strat,
        constructed,
        classification,
    };
    const STATEMENTS: [Statement; 21] = [
        bi_invariant_preserves_central_series,
        abelian_j_preserves_upper_central,
        invariant_central_series_match_d_series,
        invariant_lower_central_forces_p_equals_c,
        central_top_term_is_j_invariant,
        center_dimension_bounds,
        one_dimensional_center_forbids_nilpotent_j,
        dimension_profile_forbids_stratification,
        two_dimensional_first_layer_not_strata_preserving,
        step_three_strata_preserving_dimension,
        step_two_invariant_stratification,
        strata_preserving_j_has_algebra_step,
        step_two_k_classification,
        step_two_nilpotency_table,
        two_dimensional_derived_step_two,
        large_derived_forces_step_three,
        two_dimensional_top_layer_invariant,
        two_dimensional_derived_center_or_strata,
        six_dimensional_step_two_invariant_stratification,
        invariant_third_layer_gives_step_three,
        eight_dimensional_step_three_step_four,
    ];
    statements.extend(STATEMENTS.iter().map(|statement| statement(&ctx)));
    Ok(SuiteReport {
        report,
        audit,
        statements,
    })
}

fn require_integrable(name: &str, ctx: &Context<'_>) -> Option<Verdict> {
    (!ctx.integrable).then(|| Verdict::not_met(name, "J is not integrable"))
}

fn bi_invariant_preserves_central_series(ctx: &Context<'_>) -> Verdict {
    const NAME: &str = "bi_invariant_preserves_central_series";
    if let Some(v) = require_integrable(NAME, ctx) {
        return v;
    }
    if !ctx.flags.bi_invariant {
        return Verdict::not_met(NAME, "J is not bi-invariant");
    }
    Verdict::check(
        NAME,
        ctx.all_lower_invariant() && ctx.all_upper_invariant(),
        "J c_j = c_j and J c^j = c^j for all j",
    )
}

fn abelian_j_preserves_upper_central(ctx: &Context<'_>) -> Verdict {
    const NAME: &str = "abelian_j_preserves_upper_central";
    if let Some(v) = require_integrable(NAME, ctx) {
        return v;
    }
    if !ctx.flags.abelian {
        return Verdict::not_met(NAME, "J is not abelian");
    }
    Verdict::check(NAME, ctx.all_upper_invariant(), "J c^j = c^j for all j")
}

fn invariant_central_series_match_d_series(ctx: &Context<'_>) -> Verdict {
    const NAME: &str = "invariant_central_series_match_d_series";
    if let Some(v) = require_integrable(NAME, ctx) {
        return v;
    }
    let r = ctx.report;
    let horizon = r.horizon();
    let lower_equal = (0..=horizon).all(|i| r.d_desc.term(i) == r.c_desc.term(i));
    let upper_equal = (0..=horizon).all(|i| r.d_asc.term(i) == r.c_asc.term(i));
    Verdict::check(
        NAME,
        lower_equal == ctx.all_lower_invariant() && upper_equal == ctx.all_upper_invariant(),
        format!(
            "J preserves all c_j: {}, d_j = c_j: {lower_equal}; J preserves all c^j: {}, d^j = c^j: {upper_equal}",
            ctx.all_lower_invariant(),
            ctx.all_upper_invariant()
        ),
    )
}

fn invariant_lower_central_forces_p_equals_c(ctx: &Context<'_>) -> Verdict {
    const NAME: &str = "invariant_lower_central_forces_p_equals_c";
    if let Some(v) = require_integrable(NAME, ctx) {
        return v;
    }
    let Some(k) = ctx.step() else {
        return Verdict::not_met(NAME, "algebra is not nilpotent");
    };
    if !ctx.all_lower_invariant() {
        return Verdict::not_met(NAME, "some c_j is not J-invariant");
    }
    let r = ctx.report;
    let equal = (0..=r.horizon()).all(|i| r.p_desc.term(i) == r.c_desc.term(i));
    Verdict::check(
        NAME,
        equal && r.j0 == Some(k),
        format!("p_j = c_j for all j: {equal}; j0 = {:?}, k = {k}", r.j0),
    )
}

fn central_top_term_is_j_invariant(ctx: &Context<'_>) -> Verdict {
    const NAME: &str = "central_top_term_is_j_invariant";
    if let Some(v) = require_integrable(NAME, ctx) {
        return v;
    }
    let Some(k) = ctx.step().filter(|&k| k >= 1) else {
        return Verdict::not_met(NAME, "algebra is not nilpotent");
    };
    if ctx.report.j0 != Some(k) {
        return Verdict::not_met(NAME, format!("j0 = {:?} differs from k = {k}", ctx.report.j0));
    }
    if ctx.c(k - 1) != ctx.z() {
        return Verdict::not_met(NAME, format!("c_{} differs from the center", k - 1));
    }
    Verdict::check(NAME, ctx.j.preserves(ctx.z()), "J z = z")
}

fn center_dimension_bounds(ctx: &Context<'_>) -> Verdict {
    if let Some(v) = require_integrable("center_dimension_bounds", ctx) {
        return v;
    }
    center_dim_bounds(ctx.alg, ctx.report)
}

fn one_dimensional_center_forbids_nilpotent_j(ctx: &Context<'_>) -> Verdict {
    const NAME: &str = "one_dimensional_center_forbids_nilpotent_j";
    if let Some(v) = require_integrable(NAME, ctx) {
        return v;
    }
    if ctx.z().dim() != 1 {
        return Verdict::not_met(NAME, format!("dim z = {}", ctx.z().dim()));
    }
    Verdict::check(NAME, ctx.report.j0.is_none(), format!("j0 = {:?}", ctx.report.j0))
}

fn dimension_profile_forbids_stratification(ctx: &Context<'_>) -> Verdict {
    const NAME: &str = "dimension_profile_forbids_stratification";
    let dims = ctx.report.c_desc.dims();
    if !profile_forbids_stratification(ctx.alg.dim(), ctx.step(), &dims) {
        return Verdict::not_met(NAME, format!("lower central dimensions {dims:?}"));
    }
    Verdict::check(
        NAME,
        ctx.strat.is_none(),
        "no valid stratification may be supplied",
    )
}

fn two_dimensional_first_layer_not_strata_preserving(ctx: &Context<'_>) -> Verdict {
    const NAME: &str = "two_dimensional_first_layer_not_strata_preserving";
    let Some(s) = ctx.strat.as_ref() else {
        return Verdict::not_met(NAME, "no stratification supplied");
    };
    if s.step() < 2 || s.layer(1).dim() != 2 {
        return Verdict::not_met(NAME, format!("step {}, dim n_1 = {}", s.step(), s.layer(1).dim()));
    }
    Verdict::check(NAME, !is_strata_preserving(ctx.j, s), "J is not strata-preserving")
}

fn step_three_strata_preserving_dimension(ctx: &Context<'_>) -> Verdict {
    const NAME: &str = "step_three_strata_preserving_dimension";
    let Some(s) = ctx.strat.as_ref().filter(|s| s.step() == 3) else {
        return Verdict::not_met(NAME, "no step-3 stratification supplied");
    };
    if !is_strata_preserving(ctx.j, s) {
        return Verdict::not_met(NAME, "J is not strata-preserving");
    }
    let dim = ctx.alg.dim();
    Verdict::check(NAME, dim != 4 && dim != 6, format!("dim = {dim}"))
}

fn step_two_invariant_stratification(ctx: &Context<'_>) -> Verdict {
    const NAME: &str = "step_two_invariant_stratification";
    if let Some(v) = require_integrable(NAME, ctx) {
        return v;
    }
    if ctx.step() != Some(2) {
        return Verdict::not_met(NAME, "algebra is not of step 2");
    }
    if !ctx.j.preserves(ctx.c(1)) {
        return Verdict::not_met(NAME, "[n, n] is not J-invariant");
    }
    invariant_stratification_verdict(NAME, ctx)
}

fn invariant_stratification_verdict(name: &str, ctx: &Context<'_>) -> Verdict {
    match &ctx.constructed {
        None => Verdict::fail(name, StratError::DerivedNotInvariant.to_string()),
        Some(Err(e)) => Verdict::fail(name, e.to_string()),
        Some(Ok(s)) => {
            let valid = verify_stratification(ctx.alg, s);
            let preserving = is_strata_preserving(ctx.j, s);
            Verdict::check(
                name,
                valid.is_ok() && preserving,
                format!("constructed layers of dims {:?}: valid {:?}, strata-preserving {preserving}",
                    s.layers.iter().map(Subspace::dim).collect::<Vec<_>>(), valid.is_ok()),
            )
        }
    }
}

fn strata_preserving_j_has_algebra_step(ctx: &Context<'_>) -> Verdict {
    const NAME: &str = "strata_preserving_j_has_algebra_step";
    if let Some(v) = require_integrable(NAME, ctx) {
        return v;
    }
    let s = match ctx.strat.clone() {
        Some(s) => s,
        None => match &ctx.constructed {
            Some(Ok(s)) => s.clone(),
            Some(Err(e)) => return Verdict::fail(NAME, e.to_string()),
            None => return Verdict::not_met(NAME, "no stratification available"),
        },
    };
    if !is_strata_preserving(ctx.j, &s) {
        return Verdict::not_met(NAME, "J is not strata-preserving");
    }
    let k = s.step();
    Verdict::check(
        NAME,
        ctx.all_lower_invariant() && ctx.report.j0 == Some(k),
        format!("J c_j = c_j for all j: {}; j0 = {:?}, k = {k}", ctx.all_lower_invariant(), ctx.report.j0),
    )
}

fn step_two_k_classification(ctx: &Context<'_>) -> Verdict {
    const NAME: &str = "step_two_k_classification";
    if let Some(v) = require_integrable(NAME, ctx) {
        return v;
    }
    if ctx.step() != Some(2) {
        return Verdict::not_met(NAME, "algebra is not of step 2");
    }
    let class = match &ctx.classification {
        Some(Ok(c)) => c,
        Some(Err(e)) => return Verdict::fail(NAME, e.to_string()),
        None => return Verdict::not_met(NAME, "algebra is not of step 2"),
    };
    let in_range = matches!(class.computed_j0, Some(2) | Some(3));
    let case_extra = match class.case {
        KCase::KZero => {
            let d1 = ctx.report.d_desc.term(1);
            ctx.alg.bracket_subspaces(d1, d1).expect("same ambient").is_zero()
        }
        KCase::KFull => matches!(&ctx.constructed, Some(Ok(s)) if is_strata_preserving(ctx.j, s)),
        KCase::KProper => true,
    };
    Verdict::check(
        NAME,
        class.prediction_holds() && in_range && case_extra,
        format!(
            "case {}, predicted j0 = {}, computed j0 = {:?}",
            class.case, class.predicted_j0, class.computed_j0
        ),
    )
}

fn step_two_nilpotency_table(ctx: &Context<'_>) -> Verdict {
    const NAME: &str = "step_two_nilpotency_table";
    if let Some(v) = require_integrable(NAME, ctx) {
        return v;
    }
    if ctx.step() != Some(2) {
        return Verdict::not_met(NAME, "algebra is not of step 2");
    }
    let center = ctx.j.preserves(ctx.z());
    let strata = ctx.j.preserves(ctx.c(1));
    let expected = if !center && !strata { 3 } else { 2 };
    let j0 = ctx.report.j0;
    // step 2 forces 𝔨 = {0} or J n_2 = n_2
    let dichotomy = j0 != Some(2)
        || strata
        || largest_j_invariant_subspace(ctx.j, ctx.c(1)).is_zero();
    Verdict::check(
        NAME,
        j0 == Some(expected) && dichotomy,
        format!("center-preserving {center}, strata-preserving {strata}, j0 = {j0:?}, expected {expected}"),
    )
}

fn two_dimensional_derived_step_two(ctx: &Context<'_>) -> Verdict {
    const NAME: &str = "two_dimensional_derived_step_two";
    if let Some(v) = require_integrable(NAME, ctx) {
        return v;
    }
    if ctx.step() != Some(2) || ctx.c(1).dim() != 2 {
        return Verdict::not_met(NAME, "needs step 2 with dim n_2 = 2");
    }
    let j0_ok = ctx.report.j0 == Some(2);
    let invariant_ok = ctx.d1().dim() != 2 || ctx.j.preserves(ctx.c(1));
    Verdict::check(
        NAME,
        j0_ok && invariant_ok,
        format!("j0 = {:?}; dim d^1 = {}, J n_2 = n_2: {}", ctx.report.j0, ctx.d1().dim(), ctx.j.preserves(ctx.c(1))),
    )
}

fn large_derived_forces_step_three(ctx: &Context<'_>) -> Verdict {
    const NAME: &str = "large_derived_forces_step_three";
    if let Some(v) = require_integrable(NAME, ctx) {
        return v;
    }
    let n2 = ctx.c(1).dim();
    if ctx.step() != Some(2) || n2 % 2 == 1 || n2 < 4 {
        return Verdict::not_met(NAME, "needs step 2 with dim n_2 = 2l, l ≥ 2");
    }
    if ctx.d1().dim() > 2 * n2 - 2 || ctx.j.preserves(ctx.c(1)) {
        return Verdict::not_met(NAME, "needs dim d^1 ≤ 4l - 2 and J n_2 ≠ n_2");
    }
    Verdict::check(NAME, ctx.report.j0 == Some(3), format!("j0 = {:?}", ctx.report.j0))
}

fn two_dimensional_top_layer_invariant(ctx: &Context<'_>) -> Verdict {
    const NAME: &str = "two_dimensional_top_layer_invariant";
    if let Some(v) = require_integrable(NAME, ctx) {
        return v;
    }
    let Some(k) = ctx.step().filter(|_| ctx.stratified()) else {
        return Verdict::not_met(NAME, "algebra not known to be stratified");
    };
    let top = ctx.c(k - 1);
    if ctx.report.j0 != Some(k) || top.dim() != 2 || ctx.d1().dim() != 2 {
        return Verdict::not_met(NAME, "needs j0 = k, dim n_k = 2, dim d^1 = 2");
    }
    Verdict::check(NAME, ctx.j.preserves(top), "J n_k = n_k")
}

fn two_dimensional_derived_center_or_strata(ctx: &Context<'_>) -> Verdict {
    const NAME: &str = "two_dimensional_derived_center_or_strata";
    if let Some(v) = require_integrable(NAME, ctx) {
        return v;
    }
    if ctx.step() != Some(2) || ctx.c(1).dim() != 2 {
        return Verdict::not_met(NAME, "needs step 2 with dim n_2 = 2");
    }
    let center = ctx.j.preserves(ctx.z());
    let strata = ctx.j.preserves(ctx.c(1));
    let zdim = ctx.z().dim();
    let needs_invariant = (2..=3).contains(&zdim) || (zdim == 4 && !center);
    if !(center || strata) {
        return Verdict::fail(NAME, "J preserves neither the center nor n_2");
    }
    if needs_invariant {
        if !strata {
            return Verdict::fail(NAME, format!("dim z = {zdim} but J n_2 ≠ n_2"));
        }
        return invariant_stratification_verdict(NAME, ctx);
    }
    Verdict::pass(NAME, format!("center-preserving {center}, strata-preserving {strata}"))
}

fn six_dimensional_step_two_invariant_stratification(ctx: &Context<'_>) -> Verdict {
    const NAME: &str = "six_dimensional_step_two_invariant_stratification";
    if let Some(v) = require_integrable(NAME, ctx) {
        return v;
    }
    if ctx.alg.dim() != 6 || ctx.step() != Some(2) || ctx.c(1).dim() != 2 {
        return Verdict::not_met(NAME, "needs dim 6, step 2, dim [n, n] = 2");
    }
    if !ctx.j.preserves(ctx.c(1)) {
        return Verdict::fail(NAME, "[n, n] is not J-invariant");
    }
    invariant_stratification_verdict(NAME, ctx)
}

fn invariant_third_layer_gives_step_three(ctx: &Context<'_>) -> Verdict {
    const NAME: &str = "invariant_third_layer_gives_step_three";
    if let Some(v) = require_integrable(NAME, ctx) {
        return v;
    }
    let Some(s) = ctx.strat.as_ref().filter(|s| s.step() == 3) else {
        return Verdict::not_met(NAME, "no step-3 stratification supplied");
    };
    if !ctx.j.preserves(s.layer(3)) {
        return Verdict::not_met(NAME, "J n_3 ≠ n_3");
    }
    Verdict::check(NAME, ctx.report.j0 == Some(3), format!("j0 = {:?}", ctx.report.j0))
}

fn eight_dimensional_step_three_step_four(ctx: &Context<'_>) -> Verdict {
    const NAME: &str = "eight_dimensional_step_three_step_four";
    if let Some(v) = require_integrable(NAME, ctx) {
        return v;
    }
    let Some(s) = ctx.strat.as_ref().filter(|s| s.step() == 3) else {
        return Verdict::not_met(NAME, "no step-3 stratification supplied");
    };
    let n3 = s.layer(3);
    if ctx.alg.dim() != 8
        || 2 * n3.dim() != 4
        || ctx.c(1).dim() != 4
        || ctx.j.preserves(n3)
        || ctx.z().dim() > 3
    {
        return Verdict::not_met(
            NAME,
            "needs dim 8, 2 dim n_3 = dim c_1 = 4, J n_3 ≠ n_3, dim z ≤ 3",
        );
    }
    let jn3 = ctx.j.image(n3);
    let direct = n3.intersection(&jn3).expect("same ambient").is_zero();
    let sum = n3.sum(&jn3).expect("same ambient");
    let d2_ok = direct && *ctx.report.d_desc.term(2) == sum;
    Verdict::check(
        NAME,
        ctx.report.j0 == Some(4) && d2_ok,
        format!("j0 = {:?}; d_2 = n_3 ⊕ J n_3: {d2_ok}", ctx.report.j0),
    )
}
