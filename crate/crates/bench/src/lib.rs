//! Benchmark inputs shared by the criterion targets.

use stratalg::catalog::all_builtins;
use stratalg::{ComplexStructure, LieAlgebra, Stratification};

pub struct Fixture {
    pub name: String,
    pub algebra: LieAlgebra,
    pub j: ComplexStructure,
    pub stratification: Option<Stratification>,
}

/// Every builtin that ships a complex structure, paired with its first one.
pub fn fixtures() -> Vec<Fixture> {
    all_builtins()
        .into_iter()
        .filter_map(|e| {
            let j = e.j()?.clone();
            Some(Fixture {
                stratification: e.stratification().cloned(),
                name: e.name,
                algebra: e.algebra,
                j,
            })
        })
        .collect()
}
