//! Verification reports: the outcome of comparing two exactly computed
//! series coefficientwise.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::series::{format_rational, QSeries};

/// Location and values of the first coefficient where two sides disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub exponent: usize,
    /// Left-side coefficient, lowest-terms string.
    pub lhs: String,
    /// Right-side coefficient, lowest-terms string.
    pub rhs: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Result of one identity check. The verdict is pass exactly when
/// `first_mismatch` is absent; the constructor enforces this.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity_id: String,
    pub params: BTreeMap<String, i64>,
    pub order: usize,
    pub verdict: Verdict,
    pub first_mismatch: Option<Mismatch>,
}

impl IdentityReport {
    /// Compares two equal-order series and records the first mismatch, if
    /// any. Panics on order mismatch: both sides of a check are always
    /// built at the same order.
    pub fn from_comparison(
        identity_id: impl Into<String>,
        params: &[(&str, i64)],
        lhs: &QSeries,
        rhs: &QSeries,
    ) -> Self {
        let first_mismatch = lhs
            .first_mismatch(rhs)
            .expect("both sides of a check share one order")
            .map(|(exponent, l, r)| Mismatch {
                exponent,
                lhs: format_rational(&l),
                rhs: format_rational(&r),
            });
        IdentityReport {
            identity_id: identity_id.into(),
            params: params
                .iter()
                .map(|(k, v)| ((*k).to_string(), *v))
                .collect(),
            order: lhs.order(),
            verdict: if first_mismatch.is_none() {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
            first_mismatch,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// `id[k=1,m=2]` - stable display key for logs and fault targeting.
    pub fn key(&self) -> String {
        format_key(&self.identity_id, &self.params)
    }
}

pub(crate) fn format_key(id: &str, params: &BTreeMap<String, i64>) -> String {
    if params.is_empty() {
        return id.to_string();
    }
    let inner: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("{}[{}]", id, inner.join(","))
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.verdict, &self.first_mismatch) {
            (Verdict::Pass, _) => write!(f, "PASS {} (order {})", self.key(), self.order),
            (Verdict::Fail, Some(m)) => write!(
                f,
                "FAIL {} (order {}): first mismatch at q^{}: lhs {} vs rhs {}",
                self.key(),
                self.order,
                m.exponent,
                m.lhs,
                m.rhs
            ),
            (Verdict::Fail, None) => write!(f, "FAIL {} (order {})", self.key(), self.order),
        }
    }
}
