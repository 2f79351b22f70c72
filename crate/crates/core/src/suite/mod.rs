//! The reproduction suite: every check, grouped by tag, with verdicts and
//! evidence in a machine-readable report.

mod checks;

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};
use thiserror::Error;

use crate::fixtures;
use crate::pel::{search_conventions, select_conventions, ConventionCandidate, Conventions, PelError};

pub use checks::Pipeline;

pub const DEFAULT_PREC: u64 = 128;

/// Check groups, in criterion order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    Snf,
    Homology,
    Covers,
    Split,
    Riemann,
    Positivity,
    Automorphism,
    Hermitian,
    Defw,
    Matching,
    Family,
    Endomorphism,
    Errata,
}

impl Tag {
    pub const ALL: [Tag; 13] = [
        Tag::Snf,
        Tag::Homology,
        Tag::Covers,
        Tag::Split,
        Tag::Riemann,
        Tag::Positivity,
        Tag::Automorphism,
        Tag::Hermitian,
        Tag::Defw,
        Tag::Matching,
        Tag::Family,
        Tag::Endomorphism,
        Tag::Errata,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Tag::Snf => "snf",
            Tag::Homology => "homology",
            Tag::Covers => "covers",
            Tag::Split => "split",
            Tag::Riemann => "riemann",
            Tag::Positivity => "positivity",
            Tag::Automorphism => "automorphism",
            Tag::Hermitian => "hermitian",
            Tag::Defw => "defw",
            Tag::Matching => "match",
            Tag::Family => "family",
            Tag::Endomorphism => "endomorphism",
            Tag::Errata => "errata",
        }
    }

    /// Acceptance criterion number (1-based).
    pub fn criterion(self) -> usize {
        Tag::ALL.iter().position(|&t| t == self).expect("listed") + 1
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Tag {
    type Err = SuiteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Tag::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| SuiteError::UnknownTag(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
    /// Printed data disagree with the computation; non-fatal unless strict.
    DocumentedDivergence,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
            Verdict::DocumentedDivergence => "documented-divergence",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub id: String,
    pub tag: Tag,
    pub anchor: &'static str,
    pub verdict: Verdict,
    pub evidence: Value,
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "tag": self.tag.name(),
            "criterion": self.tag.criterion(),
            "anchor": self.anchor,
            "verdict": self.verdict.name(),
            "evidence": self.evidence,
        })
    }

    /// One human-readable line, `id: verdict`.
    pub fn line(&self) -> String {
        format!("{}: {}", self.id, self.verdict)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOptions {
    pub prec: u64,
    pub only: Option<Tag>,
    /// Turn documented divergences into failures.
    pub strict: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { prec: DEFAULT_PREC, only: None, strict: false }
    }
}

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown check tag {0:?}")]
    UnknownTag(String),
    #[error("conventions unresolved: {0}")]
    Conventions(PelError),
}

#[derive(Debug, Clone)]
pub struct SuiteRun {
    pub prec: u64,
    pub conventions: Conventions,
    pub candidates: Vec<ConventionCandidate>,
    pub reports: Vec<Report>,
}

impl SuiteRun {
    /// 0 when nothing failed or stayed inconclusive; 1 on a failure; 3 when
    /// the only problems are inconclusive checks.
    pub fn exit_code(&self) -> i32 {
        if self.reports.iter().any(|r| r.verdict == Verdict::Fail) {
            1
        } else if self.reports.iter().any(|r| r.verdict == Verdict::Inconclusive) {
            3
        } else {
            0
        }
    }

    pub fn by_tag(&self, tag: Tag) -> impl Iterator<Item = &Report> {
        self.reports.iter().filter(move |r| r.tag == tag)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "prec": self.prec,
            "checks": self.reports.iter().map(Report::to_json).collect::<Vec<_>>(),
            "conventions": self.conventions.to_json(),
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            out.push_str(&format!("[{:>2} {}] {}\n", r.tag.criterion(), r.tag, r.line()));
        }
        out.push_str(&format!("conventions: {} (prec {} bits)\n", self.conventions.label(), self.prec));
        out
    }
}

/// Runs the convention search on the fixed data and picks the unique best
/// candidate that reproduces the anchor.
pub fn resolve_conventions() -> Result<(Conventions, Vec<ConventionCandidate>), PelError> {
    let module = crate::pel::build_module(&fixtures::m3(), &fixtures::module_generators())?;
    let candidates = search_conventions(
        &fixtures::w_from_family_row(),
        module.l(),
        &fixtures::z_s_displayed(),
        &fixtures::z3_special(),
        &fixtures::j3(),
    );
    let chosen = select_conventions(&candidates)?;
    Ok((chosen, candidates))
}

pub fn run(opts: &SuiteOptions) -> Result<SuiteRun, SuiteError> {
    let (conventions, candidates) = resolve_conventions().map_err(SuiteError::Conventions)?;
    let ctx = checks::Context::new(opts.prec, opts.strict, conventions, &candidates);
    let tags: Vec<Tag> = match opts.only {
        Some(t) => vec![t],
        None => Tag::ALL.to_vec(),
    };
    let reports = tags.into_iter().flat_map(|t| ctx.run(t)).collect();
    Ok(SuiteRun { prec: opts.prec, conventions, candidates, reports })
}
