//! Exact algebra for preregular multilinear forms, their superpotential
//! algebras and the cogroupoid of quantum symmetry groups they define.

pub mod cogroupoid;
pub mod error;
pub mod forms;
pub mod io;
pub mod linalg;
pub mod ncalg;
pub mod random;
pub mod representations;
pub mod superpotential;

pub use error::{Error, Result};

/// Three-valued outcome of a check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Verified,
    Inconclusive,
    Falsified,
}

impl Verdict {
    /// Falsified dominates, then inconclusive; an empty family is verified.
    pub fn combine(items: impl IntoIterator<Item = Verdict>) -> Verdict {
        items.into_iter().max().unwrap_or(Verdict::Verified)
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Verified => 0,
            Verdict::Falsified => 1,
            Verdict::Inconclusive => 2,
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Verified => "verified",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Falsified => "falsified",
        })
    }
}
