//! Built-in example algebras and the JSON algebra file format.
//!
//! ```json
//! {
//!   "dim": 4,
//!   "brackets": [{"i": 1, "j": 2, "out": {"3": "1"}}],
//!   "J": [["0", "-1", "0", "0"], ["1", "0", "0", "0"], ["0", "0", "0", "-1"], ["0", "0", "1", "0"]],
//!   "strata": [[["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "0", "1"]], [["0", "0", "1", "0"]]]
//! }
//! ```
//!
//! Indices are 1-based and every bracket needs `i < j`. `J` is optional and
//! given row by row; each stratum is a list of spanning vectors.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{validate_almost_complex, ComplexError, ComplexStructure};
use crate::lie::{IntTable, JacobiViolation, LieAlgebra, LieError};
use crate::linalg::{zero_vector, Matrix, Subspace, Vector};
use crate::rational::{format_rational, parse_rational, ParseRationalError};
use crate::stratification::{verify_stratification, KCase, Stratification, StratificationViolation};

/// Facts recorded for the first listed `J`. Tests re-derive every one.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedFacts {
    pub step: Option<usize>,
    /// `Some(None)` records that `J` is not nilpotent.
    pub j0: Option<Option<usize>>,
    pub integrable: Option<bool>,
    pub case: Option<KCase>,
    pub abelian_j: Option<bool>,
    pub bi_invariant: Option<bool>,
    pub center_preserving: Option<bool>,
    /// `J` preserves the first listed stratification.
    pub strata_preserving: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub algebra: LieAlgebra,
    pub complex_structures: Vec<(String, ComplexStructure)>,
    pub stratifications: Vec<(String, Stratification)>,
    pub expected: ExpectedFacts,
}

impl CatalogEntry {
    pub fn j(&self) -> Option<&ComplexStructure> {
        self.complex_structures.first().map(|(_, j)| j)
    }

    pub fn stratification(&self) -> Option<&Stratification> {
        self.stratifications.first().map(|(_, s)| s)
    }
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown builtin algebra {name:?}; known: {known}", name = .0, known = BUILTIN_NAMES.join(", "))]
    UnknownBuiltin(String),
    #[error("input is not UTF-8: {0}")]
    Utf8(#[from] std::str::Utf8Error),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Schema(String),
    #[error("bad rational at {location}: {source}")]
    Rational {
        location: String,
        source: ParseRationalError,
    },
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Jacobi(#[from] JacobiViolation),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("invalid stratification: {0}")]
    Stratification(#[from] StratificationViolation),
}

pub const BUILTIN_NAMES: [&str; 7] = ["a4", "kt4", "ch6", "hh6", "h7", "fil4", "nn3"];

pub fn builtin_names() -> &'static [&'static str] {
    &BUILTIN_NAMES
}

pub fn all_builtins() -> Vec<CatalogEntry> {
    BUILTIN_NAMES
        .iter()
        .map(|name| builtin(name).expect("listed builtin"))
        .collect()
}

fn entry(
    name: &str,
    dim: usize,
    table: IntTable<'_>,
    structures: Vec<(&str, ComplexStructure)>,
    strata: &[(&str, &[&[usize]])],
    expected: ExpectedFacts,
) -> CatalogEntry {
    CatalogEntry {
        name: name.to_string(),
        algebra: LieAlgebra::from_int_table(dim, table).expect("builtin table"),
        complex_structures: structures
            .into_iter()
            .map(|(n, j)| (n.to_string(), j))
            .collect(),
        stratifications: strata
            .iter()
            .map(|(n, layers)| {
                let layers = layers
                    .iter()
                    .map(|l| Subspace::coordinate(dim, &l.iter().map(|i| i - 1).collect::<Vec<_>>()))
                    .collect();
                (n.to_string(), Stratification::new(layers))
            })
            .collect(),
        expected,
    }
}

fn standard(dim: usize) -> ComplexStructure {
    ComplexStructure::standard(dim).expect("even dimension")
}

/// `J` from 1-based images `J e_i = Σ c e_k`.
fn structure(dim: usize, images: &[(usize, &[(usize, i64)])]) -> ComplexStructure {
    let mut m = Matrix::zeros(dim, dim);
    for &(i, terms) in images {
        for &(k, c) in terms {
            m[(k - 1, i - 1)] = crate::rational::int(c);
        }
    }
    let alg = LieAlgebra::abelian(dim);
    validate_almost_complex(&alg, &m).expect("builtin J squares to -I")
}

pub fn builtin(name: &str) -> Result<CatalogEntry, CatalogError> {
    let e = match name {
        "a4" => entry(
            "a4",
            4,
            &[],
            vec![("standard", standard(4))],
            &[("single_layer", &[&[1, 2, 3, 4]])],
            ExpectedFacts {
                step: Some(1),
                j0: Some(Some(1)),
                integrable: Some(true),
                abelian_j: Some(true),
                bi_invariant: Some(true),
                center_preserving: Some(true),
                strata_preserving: Some(true),
                ..Default::default()
            },
        ),
        "kt4" => entry(
            "kt4",
            4,
            &[(1, 2, &[(3, 1)])],
            vec![("standard", standard(4))],
            &[("heisenberg_plus_line", &[&[1, 2, 4], &[3]])],
            ExpectedFacts {
                step: Some(2),
                j0: Some(Some(2)),
                integrable: Some(true),
                case: Some(KCase::KZero),
                abelian_j: Some(true),
                bi_invariant: Some(false),
                center_preserving: Some(true),
                strata_preserving: Some(false),
            },
        ),
        "ch6" => entry(
            "ch6",
            6,
            &[
                (1, 3, &[(5, 1)]),
                (1, 4, &[(6, 1)]),
                (2, 3, &[(6, 1)]),
                (2, 4, &[(5, -1)]),
            ],
            vec![("standard", standard(6))],
            &[("degree", &[&[1, 2, 3, 4], &[5, 6]])],
            ExpectedFacts {
                step: Some(2),
                j0: Some(Some(2)),
                integrable: Some(true),
                case: Some(KCase::KFull),
                abelian_j: Some(false),
                bi_invariant: Some(true),
                center_preserving: Some(true),
                strata_preserving: Some(true),
            },
        ),
        "hh6" => entry(
            "hh6",
            6,
            &[(1, 2, &[(5, 1)]), (3, 4, &[(6, 1)])],
            vec![
                ("standard", standard(6)),
                (
                    "Je1=e3",
                    structure(
                        6,
                        &[
                            (1, &[(3, 1)]),
                            (3, &[(1, -1)]),
                            (2, &[(4, 1)]),
                            (4, &[(2, -1)]),
                            (5, &[(6, 1)]),
                            (6, &[(5, -1)]),
                        ],
                    ),
                ),
            ],
            &[("degree", &[&[1, 2, 3, 4], &[5, 6]])],
            ExpectedFacts {
                step: Some(2),
                j0: Some(Some(2)),
                integrable: Some(true),
                case: Some(KCase::KFull),
                abelian_j: Some(true),
                bi_invariant: Some(false),
                center_preserving: Some(true),
                strata_preserving: Some(true),
            },
        ),
        "h7" => entry(
            "h7",
            6,
            &[(1, 2, &[(4, 1)]), (1, 3, &[(5, 1)]), (2, 3, &[(6, 1)])],
            vec![("standard", standard(6))],
            &[("degree", &[&[1, 2, 3], &[4, 5, 6]])],
            ExpectedFacts {
                step: Some(2),
                j0: Some(Some(3)),
                integrable: Some(true),
                case: Some(KCase::KProper),
                abelian_j: Some(false),
                bi_invariant: Some(false),
                center_preserving: Some(false),
                strata_preserving: Some(false),
            },
        ),
        "fil4" => entry(
            "fil4",
            4,
            &[(1, 2, &[(3, 1)]), (1, 3, &[(4, 1)])],
            vec![("standard", standard(4))],
            &[("degree", &[&[1, 2], &[3], &[4]])],
            ExpectedFacts {
                step: Some(3),
                j0: Some(None),
                integrable: Some(false),
                strata_preserving: Some(false),
                ..Default::default()
            },
        ),
        "nn3" => entry(
            "nn3",
            3,
            &[(1, 2, &[(3, 1)]), (3, 1, &[(1, 2)]), (3, 2, &[(2, -2)])],
            vec![],
            &[],
            ExpectedFacts {
                step: None,
                ..Default::default()
            },
        ),
        other => return Err(CatalogError::UnknownBuiltin(other.to_string())),
    };
    Ok(e)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketRecord {
    pub i: usize,
    pub j: usize,
    /// 1-based output index → coefficient
    pub out: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    #[serde(default)]
    pub brackets: Vec<BracketRecord>,
    #[serde(rename = "J", default, skip_serializing_if = "Option::is_none")]
    pub j: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strata: Option<Vec<Vec<Vec<String>>>>,
}

/// A validated algebra read from a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedAlgebra {
    pub name: Option<String>,
    pub algebra: LieAlgebra,
    pub j: Option<ComplexStructure>,
    pub stratification: Option<Stratification>,
}

fn rational_at(text: &str, location: impl FnOnce() -> String) -> Result<crate::Rational, CatalogError> {
    parse_rational(text).map_err(|source| CatalogError::Rational {
        location: location(),
        source,
    })
}

fn vector_at(dim: usize, entries: &[String], location: &str) -> Result<Vector, CatalogError> {
    if entries.len() != dim {
        return Err(CatalogError::Schema(format!(
            "{location} has {} entries, expected {dim}",
            entries.len()
        )));
    }
    entries
        .iter()
        .enumerate()
        .map(|(c, t)| rational_at(t, || format!("{location}, entry {}", c + 1)))
        .collect()
}

/// Parses and validates an algebra file: Jacobi identity, `J² = -I`, and the
/// stratification axioms when present.
pub fn parse_algebra_file(bytes: &[u8]) -> Result<ParsedAlgebra, CatalogError> {
    let text = std::str::from_utf8(bytes)?;
    let file: AlgebraFile = serde_json::from_str(text).map_err(|e| CatalogError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let dim = file.dim;
    let mut table = Vec::with_capacity(file.brackets.len());
    for (n, b) in file.brackets.iter().enumerate() {
        let at = format!("bracket {} ([e{}, e{}])", n + 1, b.i, b.j);
        if b.i == 0 || b.j == 0 || b.i > dim || b.j > dim {
            return Err(CatalogError::Schema(format!("{at}: index out of range 1..={dim}")));
        }
        if b.i >= b.j {
            return Err(CatalogError::Schema(format!("{at}: indices must satisfy i < j")));
        }
        let mut out = zero_vector(dim);
        for (k, c) in &b.out {
            let k: usize = k
                .parse()
                .ok()
                .filter(|k| (1..=dim).contains(k))
                .ok_or_else(|| CatalogError::Schema(format!("{at}: output index {k:?} out of range 1..={dim}")))?;
            out[k - 1] = rational_at(c, || format!("{at}, output e{k}"))?;
        }
        table.push(((b.i - 1, b.j - 1), out));
    }
    let algebra = LieAlgebra::from_table(dim, table)?;
    algebra.validate()?;
    let j = match &file.j {
        None => None,
        Some(rows) => {
            if rows.len() != dim {
                return Err(CatalogError::Schema(format!("J has {} rows, expected {dim}", rows.len())));
            }
            let rows = rows
                .iter()
                .enumerate()
                .map(|(r, row)| vector_at(dim, row, &format!("J row {}", r + 1)))
                .collect::<Result<Vec<_>, _>>()?;
            let m = Matrix::from_rows(dim, rows).map_err(ComplexError::from)?;
            Some(validate_almost_complex(&algebra, &m)?)
        }
    };
    let stratification = match &file.strata {
        None => None,
        Some(layers) => {
            let layers = layers
                .iter()
                .enumerate()
                .map(|(l, vectors)| {
                    let vectors = vectors
                        .iter()
                        .enumerate()
                        .map(|(v, vec)| vector_at(dim, vec, &format!("stratum {} vector {}", l + 1, v + 1)))
                        .collect::<Result<Vec<_>, _>>()?;
                    Ok(Subspace::span(dim, vectors).expect("lengths checked"))
                })
                .collect::<Result<Vec<_>, CatalogError>>()?;
            let s = Stratification::new(layers);
            verify_stratification(&algebra, &s)?;
            Some(s)
        }
    };
    Ok(ParsedAlgebra {
        name: file.name,
        algebra,
        j,
        stratification,
    })
}

fn strings(v: &[crate::Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub fn to_algebra_file(
    name: Option<&str>,
    alg: &LieAlgebra,
    j: Option<&ComplexStructure>,
    s: Option<&Stratification>,
) -> AlgebraFile {
    AlgebraFile {
        name: name.map(str::to_string),
        dim: alg.dim(),
        brackets: alg
            .structure_constants()
            .map(|((i, j), v)| BracketRecord {
                i: i + 1,
                j: j + 1,
                out: v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !num::Zero::is_zero(*c))
                    .map(|(k, c)| ((k + 1).to_string(), format_rational(c)))
                    .collect(),
            })
            .collect(),
        j: j.map(|j| j.matrix().to_rows().iter().map(|r| strings(r)).collect()),
        strata: s.map(|s| {
            s.layers
                .iter()
                .map(|layer| layer.basis_vectors().map(strings).collect())
                .collect()
        }),
    }
}

/// Pretty JSON in the algebra file format.
pub fn write_algebra_file(
    name: Option<&str>,
    alg: &LieAlgebra,
    j: Option<&ComplexStructure>,
    s: Option<&Stratification>,
) -> String {
    let mut text = serde_json::to_string_pretty(&to_algebra_file(name, alg, j, s))
        .expect("file records serialize");
    text.push('\n');
    text
}
