//! Serializable analysis reports in JSON or Markdown.
//!
//! Output is deterministic: fields appear in declaration order and rationals
//! use their canonical `p/q` form.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::complex::{classify_special, is_integrable, ComplexStructure, IntegrabilityReport, SpecialFlags};
use crate::lie::{CentralSeries, LieAlgebra, SeriesKind};
use crate::linalg::{Matrix, Subspace};
use crate::rational::format_rational;
use crate::search::{PromotionMethod, SearchOutcome};
use crate::series::{nilpotent_step, Routes, SeriesError, SeriesReport};
use crate::stratification::{
    classify_step2, stratification_obstructions, verify_stratification, KCase, Obstruction,
    StratError, Stratification,
};
use crate::verdict::{Outcome, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Markdown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

type Rows = Vec<Vec<String>>;

fn rows_of(m: &Matrix) -> Rows {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(format_rational).collect())
        .collect()
}

fn basis_of(s: &Subspace) -> Rows {
    s.basis_vectors()
        .map(|v| v.iter().map(format_rational).collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationSection {
    pub checks: Vec<Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub integrability: Option<IntegrabilityReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub special: Option<SpecialFlags>,
}

pub fn validation_section(
    alg: &LieAlgebra,
    j: Option<&ComplexStructure>,
    s: Option<&Stratification>,
) -> ValidationSection {
    let mut checks = vec![match alg.validate() {
        Ok(()) => Verdict::pass("jacobi_identity", "holds on all basis triples"),
        Err(v) => Verdict::fail("jacobi_identity", v.to_string()),
    }];
    let (mut integrability, mut special) = (None, None);
    match j {
        Some(j) => {
            checks.push(
                match crate::complex::validate_almost_complex(alg, j.matrix()) {
                    Ok(_) => Verdict::pass("almost_complex", "J^2 = -I"),
                    Err(e) => Verdict::fail("almost_complex", e.to_string()),
                },
            );
            integrability = Some(is_integrable(alg, j));
            special = Some(classify_special(alg, j));
        }
        None => checks.push(Verdict::not_met("almost_complex", "no J supplied")),
    }
    if let Some(s) = s {
        checks.push(match verify_stratification(alg, s) {
            Ok(()) => Verdict::pass("stratification_valid", format!("{} layers", s.step())),
            Err(v) => Verdict::fail("stratification_valid", v.to_string()),
        });
    }
    ValidationSection {
        checks,
        integrability,
        special,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDump {
    pub kind: SeriesKind,
    pub symbol: String,
    pub dims: Vec<usize>,
    pub stabilized_at: usize,
    /// basis rows of each term
    pub terms: Vec<Rows>,
}

impl From<&CentralSeries> for SeriesDump {
    fn from(s: &CentralSeries) -> Self {
        Self {
            kind: s.kind,
            symbol: s.kind.symbol().to_string(),
            dims: s.dims(),
            stabilized_at: s.stabilized_at,
            terms: s.terms.iter().map(basis_of).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesSection {
    pub step: Option<usize>,
    pub center_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j0: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub routes: Option<Routes>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub route_agreement: Option<bool>,
    pub series: Vec<SeriesDump>,
}

impl From<&SeriesReport> for SeriesSection {
    fn from(r: &SeriesReport) -> Self {
        Self {
            step: r.step,
            center_dim: r.center().dim(),
            j0: r.j0,
            routes: Some(r.routes),
            route_agreement: Some(r.route_agreement),
            series: r.series().iter().map(|s| SeriesDump::from(*s)).collect(),
        }
    }
}

/// The classical series only, for algebras without `J`.
pub fn classical_series_section(alg: &LieAlgebra) -> SeriesSection {
    let lower = alg.descending_central_series();
    let upper = alg.ascending_central_series();
    SeriesSection {
        step: alg.nilpotency_step(),
        center_dim: upper.term(1).dim(),
        j0: None,
        routes: None,
        route_agreement: None,
        series: vec![SeriesDump::from(&lower), SeriesDump::from(&upper)],
    }
}

pub fn series_section(alg: &LieAlgebra, j: &ComplexStructure) -> Result<SeriesSection, SeriesError> {
    nilpotent_step(alg, j).map(|r| SeriesSection::from(&r))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<KCase>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub predicted_j0: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub computed_j0: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strata_preserving: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center_preserving: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stratification: Option<Vec<Rows>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub obstructions: Vec<Obstruction>,
}

/// Step-two classification when it applies, plus stratification obstructions.
/// A wrong prediction is returned as a failed verdict alongside the section.
pub fn classification_section(
    alg: &LieAlgebra,
    j: Option<&ComplexStructure>,
    s: Option<&Stratification>,
) -> Result<(ClassificationSection, Option<Verdict>), StratError> {
    let mut section = ClassificationSection {
        case: None,
        k_dim: None,
        predicted_j0: None,
        computed_j0: None,
        strata_preserving: None,
        center_preserving: None,
        stratification: None,
        note: None,
        obstructions: stratification_obstructions(alg, s),
    };
    let step2 = alg.nilpotency_step() == Some(2);
    let Some(j) = j.filter(|_| step2) else {
        section.note = Some(if step2 {
            "no J supplied".to_string()
        } else {
            format!("step-two classification needs step 2, algebra has step {:?}", alg.nilpotency_step())
        });
        return Ok((section, None));
    };
    let c = classify_step2(alg, j, s.filter(|s| s.step() == 2))?;
    section.case = Some(c.case);
    section.k_dim = Some(c.k_subspace.dim());
    section.predicted_j0 = Some(c.predicted_j0);
    section.computed_j0 = c.computed_j0;
    section.strata_preserving = Some(c.strata_preserving);
    section.center_preserving = Some(c.center_preserving);
    section.stratification = Some(c.stratification.layers.iter().map(basis_of).collect());
    let verdict = if c.integrable {
        Verdict::check(
            "k_case_predicts_j0",
            c.prediction_holds(),
            format!("case {}, predicted {}, computed {:?}", c.case, c.predicted_j0, c.computed_j0),
        )
    } else {
        Verdict::not_met("k_case_predicts_j0", "J is not integrable")
    };
    Ok((section, Some(verdict)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchSection {
    pub seed: u64,
    pub restarts: usize,
    pub found: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restart: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<PromotionMethod>,
    #[serde(rename = "J", default, skip_serializing_if = "Option::is_none")]
    pub j: Option<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub best_residual: Option<f64>,
}

pub fn search_section(outcome: &SearchOutcome, seed: u64, restarts: usize) -> SearchSection {
    match outcome {
        SearchOutcome::Found { j, restart, method } => SearchSection {
            seed,
            restarts,
            found: true,
            restart: Some(*restart),
            method: Some(*method),
            j: Some(rows_of(j.matrix())),
            best_residual: None,
        },
        SearchOutcome::Exhausted { best_residual, .. } => SearchSection {
            seed,
            restarts,
            found: false,
            restart: None,
            method: None,
            j: None,
            best_residual: best_residual.is_finite().then_some(*best_residual),
        },
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub name: String,
    pub command: String,
    pub dim: usize,
    pub status: Status,
    #[serde(default)]
    pub errors: Vec<String>,
    #[serde(rename = "J", default, skip_serializing_if = "Option::is_none")]
    pub j: Option<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<SeriesSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationSection>,
    #[serde(default)]
    pub verdicts: Vec<Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchSection>,
}

impl Report {
    pub fn new(name: &str, command: &str, dim: usize, j: Option<&ComplexStructure>) -> Self {
        Self {
            name: name.to_string(),
            command: command.to_string(),
            dim,
            status: Status::Pass,
            errors: Vec::new(),
            j: j.map(|j| rows_of(j.matrix())),
            validation: None,
            series: None,
            classification: None,
            verdicts: Vec::new(),
            search: None,
        }
    }

    /// Every verdict in the report, validation checks first.
    pub fn all_verdicts(&self) -> impl Iterator<Item = &Verdict> {
        self.validation
            .iter()
            .flat_map(|v| v.checks.iter())
            .chain(&self.verdicts)
    }

    /// Recomputes `status` from errors and verdicts.
    pub fn finalize(&mut self) {
        let failed = !self.errors.is_empty() || self.all_verdicts().any(Verdict::is_failure);
        self.status = if failed { Status::Fail } else { Status::Pass };
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

pub fn parse_report(text: &str) -> Result<Report, serde_json::Error> {
    serde_json::from_str(text)
}

pub fn serialize_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut text = serde_json::to_string_pretty(report).expect("reports serialize");
            text.push('\n');
            text
        }
        Format::Markdown => markdown(report),
    }
}

fn outcome_cell(o: Outcome) -> &'static str {
    o.label()
}

fn opt<T: std::fmt::Debug>(v: &Option<T>) -> String {
    match v {
        Some(v) => format!("{v:?}"),
        None => "none".to_string(),
    }
}

fn verdict_table(out: &mut String, verdicts: &[Verdict]) {
    out.push_str("| check | outcome | detail |\n|---|---|---|\n");
    for v in verdicts {
        let _ = writeln!(
            out,
            "| {} | {} | {} |",
            v.name,
            outcome_cell(v.outcome),
            v.detail.replace('|', "\\|")
        );
    }
    out.push('\n');
}

fn markdown(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {} `{}`\n", r.command, r.name);
    let _ = writeln!(
        out,
        "- dimension: {}\n- status: {}\n",
        r.dim,
        match r.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
        }
    );
    if !r.errors.is_empty() {
        out.push_str("## Errors\n\n");
        for e in &r.errors {
            let _ = writeln!(out, "- {e}");
        }
        out.push('\n');
    }
    if let Some(j) = &r.j {
        out.push_str("## J\n\n```\n");
        for row in j {
            let _ = writeln!(out, "{}", row.join("\t"));
        }
        out.push_str("```\n\n");
    }
    if let Some(v) = &r.validation {
        out.push_str("## Validation\n\n");
        verdict_table(&mut out, &v.checks);
        if let Some(i) = &v.integrability {
            let _ = writeln!(out, "- integrable: {}", i.integrable);
            for w in &i.witnesses {
                let _ = writeln!(
                    out,
                    "- N(e{}, e{}) = [{}]",
                    w.pair.0,
                    w.pair.1,
                    w.value.join(", ")
                );
            }
        }
        if let Some(s) = &v.special {
            let _ = writeln!(out, "- abelian J: {}\n- bi-invariant J: {}", s.abelian, s.bi_invariant);
        }
        out.push('\n');
    }
    if let Some(s) = &r.series {
        out.push_str("## Series\n\n");
        let _ = writeln!(
            out,
            "- step k: {}\n- nilpotent step j0: {}\n- dim z: {}",
            opt(&s.step),
            opt(&s.j0),
            s.center_dim
        );
        if let Some(routes) = &s.routes {
            let _ = writeln!(
                out,
                "- routes: d^j {}, p_j {}, d_j {} (agree: {})",
                opt(&routes.ascending),
                opt(&routes.p),
                opt(&routes.descending),
                s.route_agreement.unwrap_or(false)
            );
        }
        out.push('\n');
        for dump in &s.series {
            let _ = writeln!(out, "### {}\n\n| j | dim |\n|---|---|", dump.symbol);
            for (i, d) in dump.dims.iter().enumerate() {
                let _ = writeln!(out, "| {i} | {d} |");
            }
            out.push('\n');
        }
    }
    if let Some(c) = &r.classification {
        out.push_str("## Classification\n\n");
        if let Some(case) = c.case {
            let _ = writeln!(
                out,
                "- case: {case}\n- dim k: {}\n- predicted j0: {}\n- computed j0: {}\n- strata-preserving: {}\n- center-preserving: {}",
                opt(&c.k_dim),
                opt(&c.predicted_j0),
                opt(&c.computed_j0),
                opt(&c.strata_preserving),
                opt(&c.center_preserving)
            );
        }
        if let Some(note) = &c.note {
            let _ = writeln!(out, "- note: {note}");
        }
        let _ = writeln!(out, "- obstructions: {:?}\n", c.obstructions);
    }
    if !r.verdicts.is_empty() {
        out.push_str("## Verdicts\n\n");
        verdict_table(&mut out, &r.verdicts);
    }
    if let Some(s) = &r.search {
        out.push_str("## Search\n\n");
        let _ = writeln!(
            out,
            "- seed: {}\n- restarts: {}\n- found: {}",
            s.seed, s.restarts, s.found
        );
        if let (Some(restart), Some(method)) = (s.restart, s.method) {
            let _ = writeln!(out, "- restart: {restart}\n- method: {method:?}");
        }
        if let Some(j) = &s.j {
            out.push_str("\n```\n");
            for row in j {
                let _ = writeln!(out, "{}", row.join("\t"));
            }
            out.push_str("```\n");
        }
        if let Some(b) = s.best_residual {
            let _ = writeln!(out, "- best residual: {b:e}");
        }
        out.push('\n');
    }
    out
}
