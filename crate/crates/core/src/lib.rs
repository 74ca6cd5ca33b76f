//! Exact sizes of error balls for edit channels over a q-ary alphabet.
//!
//! The library covers the channels that show up in DNA storage models
//! where a strand suffers at most three edits:
//!
//! - single-deletion double-insertion, `B(0,1,2)`
//! - single-deletion double-substitution, `B(2,1,0)`
//! - single-insertion single-substitution, `B(1,0,1)`
//! - single-deletion single-insertion, `B(0,1,1)`
//!
//! Every closed form is paired with a brute-force enumerator in [`oracle`]
//! so that formula and enumeration can be compared sequence by sequence.
//!
//! ```
//! use errball::{ballsize, ChannelSpec, Sequence};
//!
//! let seq = Sequence::parse("01011010", 2).unwrap();
//! let report = ballsize::size_b012(&seq).unwrap();
//! assert_eq!(report.size, 165);
//! # let _ = ChannelSpec::new(0, 1, 2);
//! ```

pub mod ballsize;
pub mod cli;
pub mod combin;
pub mod confusability;
pub mod error;
pub mod intersect;
pub mod oracle;
pub mod seqcore;

pub use ballsize::{BallReport, Diagnostics, EvalMode, PairCounts};
pub use confusability::{PairKind, PairRelation};
pub use error::{Error, Result};
pub use oracle::{SequenceSet, DEFAULT_BUDGET};
pub use seqcore::{ChannelSpec, RunsDecomposition, SegmentsProfile, Sequence};

use serde::{Deserialize, Serialize};

/// How a reported size was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Closed form only.
    Formula,
    /// Exhaustive enumeration.
    Oracle,
    /// Closed form for the structured part, enumeration for a residual case.
    FormulaWithOracleFallback,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Formula => "formula",
            Method::Oracle => "oracle",
            Method::FormulaWithOracleFallback => "formula-with-oracle-fallback",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "formula" => Ok(Method::Formula),
            "oracle" => Ok(Method::Oracle),
            "formula-with-oracle-fallback" => Ok(Method::FormulaWithOracleFallback),
            other => Err(Error::Parse(format!("unknown method `{other}`"))),
        }
    }
}
