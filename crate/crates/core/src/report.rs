//! Verification report entries.

use serde::Serialize;

use crate::error::Error;
use crate::series::{LaurentSeries, MIN_WINDOW};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub case: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<[i64; 2]>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_mismatch_degree: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Report {
    /// Exact equality on the shared window, which must have length at least
    /// `MIN_WINDOW`.
    pub fn series(case: impl Into<String>, lhs: &LaurentSeries, rhs: &LaurentSeries) -> Self {
        let window = [lhs.lo().min(rhs.lo()), lhs.hi().min(rhs.hi())];
        let (pass, first, detail) = match lhs.compare(rhs, MIN_WINDOW) {
            Ok(None) => (true, None, None),
            Ok(Some(d)) => (false, Some(d), None),
            Err(len) => (false, None, Some(format!("window length {len} < {MIN_WINDOW}"))),
        };
        Report {
            case: case.into(),
            window: Some(window),
            pass,
            first_mismatch_degree: first,
            detail,
        }
    }

    /// The series vanishes on its window.
    pub fn vanishes(case: impl Into<String>, s: &LaurentSeries) -> Self {
        Self::series(case, s, &LaurentSeries::zero(s.lo(), s.hi()))
    }

    pub fn check(case: impl Into<String>, pass: bool) -> Self {
        Report {
            case: case.into(),
            window: None,
            pass,
            first_mismatch_degree: None,
            detail: None,
        }
    }

    pub fn with_detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }

    pub fn error(case: impl Into<String>, e: &Error) -> Self {
        Self::check(case, false).with_detail(e.to_string())
    }
}

/// True when every entry passed.
pub fn all_pass(reports: &[Report]) -> bool {
    reports.iter().all(|r| r.pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn json_shape() {
        let a = LaurentSeries::new(0, vec![int(1); 12]);
        let mut b = a.clone();
        b = b.add(&LaurentSeries::monomial(3, int(1), 11));
        let r = Report::series("demo", &a, &b);
        assert!(!r.pass);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["firstMismatchDegree"], 3);
        assert_eq!(v["window"], serde_json::json!([0, 11]));
        let ok = Report::vanishes("zero", &LaurentSeries::zero(-1, 10));
        assert!(ok.pass);
        assert!(serde_json::to_value(&ok).unwrap().get("firstMismatchDegree").is_none());
    }
}
