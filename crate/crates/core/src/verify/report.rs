//! Pass/fail records produced by the verification checks.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::StateIndex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ToleranceKind {
    /// `|measured - reference| <= tolerance`
    Absolute,
    /// `|measured - reference| <= tolerance * |reference|`
    Relative,
}

/// What a check was run on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Subject {
    State { n: usize, s: usize },
    Params { label: String },
}

impl Subject {
    pub fn params(label: impl Into<String>) -> Self {
        Subject::Params {
            label: label.into(),
        }
    }

    fn sort_key(&self) -> (usize, usize, &str) {
        match self {
            Subject::State { n, s } => (*n, *s, ""),
            Subject::Params { label } => (usize::MAX, usize::MAX, label.as_str()),
        }
    }
}

impl From<StateIndex> for Subject {
    fn from(st: StateIndex) -> Self {
        Subject::State { n: st.n, s: st.s }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub subject: Subject,
    pub measured: f64,
    pub reference: f64,
    pub tolerance: f64,
    pub tolerance_kind: ToleranceKind,
    pub pass: bool,
}

impl VerificationReport {
    /// Builds a record and decides `pass` from the declared tolerance.
    pub fn new(
        check: impl Into<String>,
        subject: impl Into<Subject>,
        measured: f64,
        reference: f64,
        tolerance: f64,
        tolerance_kind: ToleranceKind,
    ) -> Self {
        let diff = (measured - reference).abs();
        let bound = match tolerance_kind {
            ToleranceKind::Absolute => tolerance,
            ToleranceKind::Relative => tolerance * reference.abs(),
        };
        VerificationReport {
            check: check.into(),
            subject: subject.into(),
            measured,
            reference,
            tolerance,
            tolerance_kind,
            pass: diff <= bound,
        }
    }

    pub fn absolute(
        check: impl Into<String>,
        subject: impl Into<Subject>,
        measured: f64,
        reference: f64,
        tolerance: f64,
    ) -> Self {
        Self::new(check, subject, measured, reference, tolerance, ToleranceKind::Absolute)
    }

    pub fn relative(
        check: impl Into<String>,
        subject: impl Into<Subject>,
        measured: f64,
        reference: f64,
        tolerance: f64,
    ) -> Self {
        Self::new(check, subject, measured, reference, tolerance, ToleranceKind::Relative)
    }

    /// A check that could not be evaluated at all.
    pub fn failed(check: impl Into<String>, subject: impl Into<Subject>, tolerance: f64) -> Self {
        VerificationReport {
            check: check.into(),
            subject: subject.into(),
            measured: f64::NAN,
            reference: f64::NAN,
            tolerance,
            tolerance_kind: ToleranceKind::Absolute,
            pass: false,
        }
    }
}

/// Orders by check name, then `n`, then `S`, then parameter label.
pub fn report_order(a: &VerificationReport, b: &VerificationReport) -> Ordering {
    let (an, as_, al) = a.subject.sort_key();
    let (bn, bs, bl) = b.subject.sort_key();
    a.check
        .cmp(&b.check)
        .then(an.cmp(&bn))
        .then(as_.cmp(&bs))
        .then(al.cmp(bl))
}

pub fn sort_reports(reports: &mut [VerificationReport]) {
    reports.sort_by(report_order);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_flag_follows_tolerance() {
        let r = VerificationReport::relative("x", Subject::params("p"), 1.0 + 5e-9, 1.0, 1e-8);
        assert!(r.pass);
        let r = VerificationReport::relative("x", Subject::params("p"), 1.0 + 5e-8, 1.0, 1e-8);
        assert!(!r.pass);
        let r = VerificationReport::absolute("x", Subject::params("p"), 3e-11, 0.0, 1e-10);
        assert!(r.pass);
        let r = VerificationReport::absolute("x", Subject::params("p"), f64::NAN, 0.0, 1e-10);
        assert!(!r.pass);
        assert!(!VerificationReport::absolute("x", Subject::params("p"), 0.0, 0.0, -1.0).pass);
    }

    #[test]
    fn deterministic_order() {
        let st = |n, s| StateIndex::new(n, s).unwrap();
        let mut v = vec![
            VerificationReport::absolute("b", st(0, 1), 0.0, 0.0, 1.0),
            VerificationReport::absolute("a", Subject::params("z"), 0.0, 0.0, 1.0),
            VerificationReport::absolute("a", st(2, 0), 0.0, 0.0, 1.0),
            VerificationReport::absolute("a", st(1, 3), 0.0, 0.0, 1.0),
        ];
        sort_reports(&mut v);
        let keys: Vec<_> = v.iter().map(|r| (r.check.clone(), r.subject.clone())).collect();
        assert_eq!(keys[0], ("a".into(), Subject::State { n: 1, s: 3 }));
        assert_eq!(keys[1], ("a".into(), Subject::State { n: 2, s: 0 }));
        assert_eq!(keys[2], ("a".into(), Subject::params("z")));
        assert_eq!(keys[3].0, "b");
    }
}
