use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    /// Hypotheses hold but the conclusion quantifies over nothing.
    VacuousPass,
    Fail,
    HypothesisNotMet,
}

impl Outcome {
    pub fn is_failure(self) -> bool {
        self == Outcome::Fail
    }

    pub fn label(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::VacuousPass => "vacuous pass",
            Outcome::Fail => "FAIL",
            Outcome::HypothesisNotMet => "hypothesis not met",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub outcome: Outcome,
    pub detail: String,
}

impl Verdict {
    pub fn new(name: &str, outcome: Outcome, detail: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            outcome,
            detail: detail.into(),
        }
    }

    pub fn pass(name: &str, detail: impl Into<String>) -> Self {
        Self::new(name, Outcome::Pass, detail)
    }

    pub fn fail(name: &str, detail: impl Into<String>) -> Self {
        Self::new(name, Outcome::Fail, detail)
    }

    pub fn not_met(name: &str, detail: impl Into<String>) -> Self {
        Self::new(name, Outcome::HypothesisNotMet, detail)
    }

    /// Pass when `ok`, otherwise fail with `detail`.
    pub fn check(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        let outcome = if ok { Outcome::Pass } else { Outcome::Fail };
        Self::new(name, outcome, detail)
    }

    pub fn is_failure(&self) -> bool {
        self.outcome.is_failure()
    }
}

pub fn any_failure(verdicts: &[Verdict]) -> bool {
    verdicts.iter().any(Verdict::is_failure)
}
