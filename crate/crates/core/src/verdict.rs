use std::fmt;

/// Outcome of a single check.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail(String),
    NotApplicable,
}

impl Verdict {
    pub fn fail(reason: impl Into<String>) -> Self {
        Verdict::Fail(reason.into())
    }

    pub fn from_bool(ok: bool, reason: impl FnOnce() -> String) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail(reason())
        }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    /// Pass or not applicable.
    pub fn is_ok(&self) -> bool {
        !matches!(self, Verdict::Fail(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail(_) => "fail",
            Verdict::NotApplicable => "n/a",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// How strongly a reported condition is backed.
///
/// Mapping-class equality is only decided in the symplectic quotient, so a
/// pass can rest on construction, on a homological check that is necessary
/// but not sufficient, or on what the input declares.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Evidence {
    VerifiedByConstruction,
    HomologicallyConsistent,
    Declared,
}

impl Evidence {
    pub fn label(self) -> &'static str {
        match self {
            Evidence::VerifiedByConstruction => "verified-by-construction",
            Evidence::HomologicallyConsistent => "homologically-consistent",
            Evidence::Declared => "declared",
        }
    }
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}
