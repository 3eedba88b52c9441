//! The JSON result record. Fields are only ever added, never renamed or
//! removed; rationals travel as decimal strings.

use num_traits::ToPrimitive;
use pptlab_core::verdict::{
    CriteriaReport, ExactPpt, InconclusiveReason, NuTable, PurityBasis, QfsHeight,
};
use pptlab_core::{PptValue, Rational, Verdict};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalRecord {
    pub num: String,
    pub den: String,
    /// Display only.
    pub approx: f64,
}

impl From<&Rational> for RationalRecord {
    fn from(r: &Rational) -> Self {
        RationalRecord {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
            approx: r.to_f64().unwrap_or(f64::NAN),
        }
    }
}

impl RationalRecord {
    /// `num/den`, or just `num` for integers.
    pub fn display(&self) -> String {
        if self.den == "1" {
            self.num.clone()
        } else {
            format!("{}/{}", self.num, self.den)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContextRecord {
    pub p: u32,
    pub vars: Vec<String>,
    pub f: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictRecord {
    /// PerfectoidPure, NotPerfectoidPure or Inconclusive.
    pub kind: String,
    pub certified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flagged_r1: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl From<&Verdict> for VerdictRecord {
    fn from(v: &Verdict) -> Self {
        let mut rec = VerdictRecord {
            kind: String::new(),
            certified: v.is_certified(),
            basis: None,
            depth: None,
            r: None,
            flagged_r1: None,
            reason: None,
        };
        match *v {
            Verdict::PerfectoidPure { basis, depth } => {
                rec.kind = "PerfectoidPure".into();
                rec.basis = Some(match basis {
                    PurityBasis::AllBounded => "AllBounded".into(),
                    PurityBasis::QuickCriterion(c) => format!("QuickCriterion({})", c.name()),
                    PurityBasis::FermatFamily => "FermatFamily".into(),
                    PurityBasis::Regular => "Regular".into(),
                });
                rec.depth = Some(depth);
            }
            Verdict::NotPerfectoidPure { r, flagged_r1 } => {
                rec.kind = "NotPerfectoidPure".into();
                rec.r = Some(r);
                rec.flagged_r1 = Some(flagged_r1);
            }
            Verdict::Inconclusive { reason } => {
                rec.kind = "Inconclusive".into();
                rec.reason = Some(
                    match reason {
                        InconclusiveReason::DepthExhausted => "DepthExhausted",
                        InconclusiveReason::UnclassifiedPattern => "UnclassifiedPattern",
                    }
                    .into(),
                );
            }
        }
        rec
    }
}

impl VerdictRecord {
    pub fn summary(&self) -> String {
        match self.kind.as_str() {
            "PerfectoidPure" => {
                let basis = self.basis.as_deref().unwrap_or("?");
                if self.certified {
                    format!("perfectoid pure (certified: {basis})")
                } else {
                    format!("perfectoid pure up to depth {}", self.depth.unwrap_or(0))
                }
            }
            "NotPerfectoidPure" => {
                let r = self.r.unwrap_or(0);
                if self.flagged_r1 == Some(true) {
                    format!("not perfectoid pure (r = {r}, flagged: r = 1)")
                } else {
                    format!("not perfectoid pure (r = {r})")
                }
            }
            _ => format!("inconclusive ({})", self.reason.as_deref().unwrap_or("?")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactRecord {
    pub value: RationalRecord,
    pub preperiod: usize,
    pub period: usize,
    pub conjectural: bool,
}

impl From<&ExactPpt> for ExactRecord {
    fn from(e: &ExactPpt) -> Self {
        ExactRecord {
            value: (&e.value).into(),
            preperiod: e.preperiod,
            period: e.period,
            conjectural: e.conjectural,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PptRecord {
    pub partial: RationalRecord,
    pub exact: Option<ExactRecord>,
}

impl From<&PptValue> for PptRecord {
    fn from(v: &PptValue) -> Self {
        PptRecord {
            partial: (&v.partial).into(),
            exact: v.exact.as_ref().map(Into::into),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QfsRecord {
    /// Finite, ExceedsDepth or NotQuasiFSplit.
    pub kind: String,
    /// The height when finite, the depth checked when it exceeds it.
    pub value: Option<usize>,
}

impl From<QfsHeight> for QfsRecord {
    fn from(h: QfsHeight) -> Self {
        let (kind, value) = match h {
            QfsHeight::Finite(h) => ("Finite", Some(h)),
            QfsHeight::ExceedsDepth(d) => ("ExceedsDepth", Some(d)),
            QfsHeight::NotQuasiFSplit => ("NotQuasiFSplit", None),
        };
        QfsRecord {
            kind: kind.into(),
            value,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NuRecord {
    pub e: u32,
    pub nu: String,
    pub ratio: RationalRecord,
}

pub fn nu_records(t: &NuTable) -> Vec<NuRecord> {
    (1..=t.entries.len() as u32)
        .map(|e| NuRecord {
            e,
            nu: t.nu(e).expect("in range").to_string(),
            ratio: (&t.ratio(e).expect("in range")).into(),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriteriaRecord {
    pub precondition: bool,
    pub satisfied: Vec<String>,
    pub note: Option<String>,
    pub regular: bool,
    /// N when f is x_1^N + ... + x_N^N with p > N.
    pub fermat_exponent: Option<u32>,
}

impl CriteriaRecord {
    pub fn new(r: &CriteriaReport, regular: bool, fermat_exponent: Option<u32>) -> Self {
        CriteriaRecord {
            precondition: r.precondition,
            satisfied: r.satisfied.iter().map(|c| c.name().to_string()).collect(),
            note: r.note.clone(),
            regular,
            fermat_exponent,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_ms: f64,
    /// Milliseconds spent on s_1, s_2, ...
    pub per_depth_ms: Vec<f64>,
    pub cached: bool,
}

impl Timings {
    pub fn zeroed() -> Self {
        Timings {
            total_ms: 0.0,
            per_depth_ms: Vec::new(),
            cached: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub schema_version: u32,
    pub tool_version: String,
    pub command: String,
    /// SHA-256 of the canonical request encoding; also the cache key.
    pub input_hash: String,
    pub context: ContextRecord,
    pub depth: Option<usize>,
    pub sequence: Option<Vec<u32>>,
    pub terminated_at_p: Option<usize>,
    pub verdict: Option<VerdictRecord>,
    pub ppt: Option<PptRecord>,
    pub qfs_height: Option<QfsRecord>,
    pub nu_table: Option<Vec<NuRecord>>,
    pub fpt_approx: Option<RationalRecord>,
    pub criteria: Option<CriteriaRecord>,
    /// Generators of I(s_1, ..., s_n) per step, with --trace.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<Vec<String>>>,
    pub timings: Timings,
}

impl ResultRecord {
    /// Serialization with the timings block zeroed, for comparisons.
    pub fn without_timings(&self) -> ResultRecord {
        ResultRecord {
            timings: Timings::zeroed(),
            ..self.clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub schema_version: u32,
    pub tool_version: String,
    pub error: ErrorBody,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
    pub exit_code: i32,
}
