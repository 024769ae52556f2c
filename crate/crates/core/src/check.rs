//! Outcome records shared by every verification sweep.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::ParseScalarError;
use crate::fock::FockVector;
use crate::scalar::{parse_rational, Rational, Scalar};

/// How identities are compared: as polynomials in `r`, or at one value of `r`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum RMode {
    #[default]
    Symbolic,
    At(Rational),
}

impl RMode {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            RMode::Symbolic => None,
            RMode::At(v) => Some(v),
        }
    }

    pub fn scalar_vanishes(&self, s: &Scalar) -> bool {
        match self {
            RMode::Symbolic => s.is_zero(),
            RMode::At(v) => num::Zero::is_zero(&s.specialize(v)),
        }
    }

    pub fn vanishes(&self, v: &FockVector) -> bool {
        v.terms().all(|(_, c)| self.scalar_vanishes(c))
    }
}

impl fmt::Display for RMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RMode::Symbolic => f.write_str("symbolic"),
            RMode::At(v) => write!(f, "{v}"),
        }
    }
}

impl FromStr for RMode {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().eq_ignore_ascii_case("symbolic") {
            return Ok(RMode::Symbolic);
        }
        parse_rational(s).map(RMode::At)
    }
}

/// First counterexample found for an identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub context: String,
    pub vector: String,
    pub lhs: String,
    pub rhs: String,
}

/// One identity swept over many cases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub cases: u64,
    pub failures: u64,
    pub witness: Option<Witness>,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// Runs `eval` over all cases in parallel. `eval` reports how many
    /// elementary comparisons it made, how many failed, and optionally a
    /// witness. The reported witness is the first in case order, so the
    /// result does not depend on scheduling.
    pub fn sweep<C, F>(identity: impl Into<String>, cases: &[C], eval: F) -> Self
    where
        C: Sync,
        F: Fn(&C) -> CaseOutcome + Sync + Send,
    {
        let outcomes: Vec<CaseOutcome> = cases.par_iter().map(&eval).collect();
        let mut check = IdentityCheck {
            identity: identity.into(),
            cases: 0,
            failures: 0,
            witness: None,
        };
        for o in outcomes {
            check.cases += o.cases;
            check.failures += o.failures;
            if check.witness.is_none() {
                check.witness = o.witness;
            }
        }
        check
    }
}

#[derive(Clone, Debug, Default)]
pub struct CaseOutcome {
    pub cases: u64,
    pub failures: u64,
    pub witness: Option<Witness>,
}

impl CaseOutcome {
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }
}

/// A named group of identity sweeps.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<IdentityCheck>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(IdentityCheck::passed)
    }

    pub fn first_failure(&self) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| !c.passed())
    }

    pub fn total_cases(&self) -> u64 {
        self.checks.iter().map(|c| c.cases).sum()
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }
}
