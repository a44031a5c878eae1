//! Exact rational computations on real Lie algebras equipped with complex
//! structures: central series, the `J`-adapted ascending and descending
//! series, the nilpotent step of `J`, stratifications, and a checked
//! statement suite over a built-in catalog.
//!
//! ```
//! use stratalg::{catalog, nilpotent_step};
//!
//! let entry = catalog::builtin("kt4").unwrap();
//! let report = nilpotent_step(&entry.algebra, entry.j().unwrap()).unwrap();
//! assert_eq!(report.j0, Some(2));
//! ```

pub mod catalog;
pub mod complex;
pub mod lie;
pub mod linalg;
pub mod rational;
pub mod report;
pub mod search;
pub mod series;
pub mod stratification;
pub mod verdict;

pub use catalog::{
    builtin, parse_algebra_file, write_algebra_file, CatalogEntry, CatalogError, ExpectedFacts,
    ParsedAlgebra,
};
pub use complex::{
    classify_special, is_integrable, j_invariant_inner_product, largest_j_invariant_subspace,
    nijenhuis, validate_almost_complex, ComplexError, ComplexStructure, IntegrabilityReport,
    NijenhuisWitness, SpecialFlags,
};
pub use lie::{transport, CentralSeries, JacobiViolation, LieAlgebra, LieError, SeriesKind};
pub use linalg::{kernel, rref, LinalgError, Matrix, Subspace, Vector};
pub use rational::{format_rational, parse_rational, ParseRationalError, Rational};
pub use report::{serialize_report, Format, Report, Status};
pub use search::{
    find_complex_structure, promote_candidate, search_integrable_j, PromotionError,
    PromotionMethod, SearchConfig, SearchError, SearchOutcome,
};
pub use series::{
    center_dim_bounds, containment_audit, j_ascending_series, j_descending_series,
    nilpotent_step, p_series, Routes, SeriesError, SeriesReport,
};
pub use stratification::{
    build_step2_j_stratification, classify_step2, is_strata_preserving,
    profile_forbids_stratification, stratification_obstructions, theorem_suite,
    verify_stratification, KCase, Obstruction, Step2Classification, StratError,
    Stratification, StratificationViolation, SuiteReport,
};
pub use verdict::{any_failure, Outcome, Verdict};
