//! Verdicts on perfectoid purity, exact thresholds, and the cross-checks
//! that certify them.

pub mod criteria;
pub mod nu;
pub mod ppt;

use num_bigint::BigInt;

use crate::delta::HypersurfaceInput;
use crate::error::{Error, Result};
use crate::ladder::SplitSequence;

pub use criteria::{
    check_quick_criteria, fermat_exponent, fermat_period, fermat_predict, regularity_test,
    CriteriaReport, Criterion,
};
pub use nu::{fpt_approx, nu, NuTable};
pub use ppt::{detect_period, ppt_closed_form, ppt_partial, ppt_partials, Period, Rational};

/// Why a sequence with every s_n ≤ p-1 counts as perfectoid pure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PurityBasis {
    /// Every computed entry is at most p-1; nothing is known past the
    /// computed depth.
    AllBounded,
    /// A quick criterion on f forces the whole sequence.
    QuickCriterion(Criterion),
    /// f is the Fermat hypersurface x_1^N + ... + x_N^N with p > N.
    FermatFamily,
    /// A/f is regular, so every s_n ≤ p-1.
    Regular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InconclusiveReason {
    /// No entries beyond s_0 were computed.
    DepthExhausted,
    /// The sequence reaches p outside the pattern (p-1, ..., p-1, p).
    UnclassifiedPattern,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    PerfectoidPure {
        basis: PurityBasis,
        /// Number of sequence entries the verdict rests on.
        depth: usize,
    },
    /// s_1 = ... = s_r = p-1 and s_{r+1} = p. `flagged_r1` marks r = 1,
    /// which lies outside the r ≥ 2 hypothesis of the general non-purity
    /// theorem but is the case the quick criterion C2 produces.
    NotPerfectoidPure { r: usize, flagged_r1: bool },
    Inconclusive { reason: InconclusiveReason },
}

impl Verdict {
    /// Whether the verdict holds for all n rather than up to the depth.
    pub fn is_certified(&self) -> bool {
        match self {
            Verdict::PerfectoidPure { basis, .. } => *basis != PurityBasis::AllBounded,
            Verdict::NotPerfectoidPure { .. } => true,
            Verdict::Inconclusive { .. } => false,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Report r = 1 runs as inconclusive instead of not perfectoid pure.
    pub strict_r1: bool,
}

/// Classifies a sequence on its values alone.
pub fn classify(seq: &SplitSequence) -> Verdict {
    classify_with(seq, ClassifyOptions::default())
}

pub fn classify_with(seq: &SplitSequence, opts: ClassifyOptions) -> Verdict {
    let p = seq.p;
    let tail = seq.tail();
    if tail.is_empty() {
        return Verdict::Inconclusive {
            reason: InconclusiveReason::DepthExhausted,
        };
    }
    let Some(hit) = tail.iter().position(|&s| s == p) else {
        return Verdict::PerfectoidPure {
            basis: PurityBasis::AllBounded,
            depth: tail.len(),
        };
    };
    let r = hit;
    let unclassified = Verdict::Inconclusive {
        reason: InconclusiveReason::UnclassifiedPattern,
    };
    if r == 0 || tail[..r].iter().any(|&s| s != p - 1) {
        return unclassified;
    }
    if r == 1 && opts.strict_r1 {
        return unclassified;
    }
    Verdict::NotPerfectoidPure {
        r,
        flagged_r1: r == 1,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactPpt {
    pub value: Rational,
    pub preperiod: usize,
    pub period: usize,
    /// True when the period was only observed in the computed window.
    pub conjectural: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PptValue {
    pub partial: Rational,
    pub exact: Option<ExactPpt>,
}

/// Quasi-F-split height read off the sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QfsHeight {
    Finite(usize),
    /// s_1 = ... = s_depth = 1; the height exceeds the depth.
    ExceedsDepth(usize),
    NotQuasiFSplit,
}

/// Smallest h with s_1 = ... = s_{h-1} = 1 and s_h = 0.
pub fn qfs_height(seq: &SplitSequence) -> QfsHeight {
    for (i, &s) in seq.tail().iter().enumerate() {
        match s {
            0 => {
                let h = i + 1;
                debug_assert!(seq.tail()[..i].iter().all(|&v| v == 1));
                return QfsHeight::Finite(h);
            }
            1 => {}
            _ => return QfsHeight::NotQuasiFSplit,
        }
    }
    QfsHeight::ExceedsDepth(seq.depth())
}

/// Everything known about one input: the sequence, the certificates that
/// apply, the verdict, and the threshold.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub verdict: Verdict,
    pub ppt: Option<PptValue>,
    pub criteria: CriteriaReport,
    pub regular: bool,
    pub fermat: Option<u32>,
}

/// Combines the ladder's sequence with the closed-form certificates. A
/// certificate whose prediction disagrees with the computed sequence is an
/// internal error.
pub fn analyze(h: &HypersurfaceInput, seq: &SplitSequence, opts: ClassifyOptions) -> Result<Analysis> {
    let p = h.p();
    let depth = seq.depth();
    let criteria = check_quick_criteria(h)?;
    let regular = regularity_test(h);
    let fermat = fermat_exponent(h).filter(|&n| p > n);

    let mismatch = |what: &str, predicted: Vec<u32>| Error::CrossCheckFailed {
        what: what.to_string(),
        predicted,
        computed: seq.values.clone(),
    };
    let mut basis = None;
    let mut exact = None;
    for &c in &criteria.satisfied {
        let predicted = c.predicted(p, depth);
        if predicted != seq.values {
            return Err(mismatch(c.name(), predicted));
        }
        match c {
            Criterion::C1 => {
                basis = Some(PurityBasis::QuickCriterion(c));
                exact = Some(ExactPpt {
                    value: Rational::new(BigInt::from(1), BigInt::from(p + 1)),
                    preperiod: 0,
                    period: 2,
                    conjectural: false,
                });
            }
            Criterion::C3 => {
                basis = Some(PurityBasis::QuickCriterion(c));
                exact = Some(ExactPpt {
                    value: Rational::from_integer(BigInt::from(0)),
                    preperiod: 0,
                    period: 1,
                    conjectural: false,
                });
            }
            Criterion::C2 => {}
        }
    }
    if let Some(n) = fermat {
        let predicted = fermat_predict(n as usize, p, depth)?;
        if predicted != seq.values {
            return Err(mismatch("Fermat prediction", predicted));
        }
        if basis.is_none() {
            basis = Some(PurityBasis::FermatFamily);
            let period = fermat_period(n as usize, p);
            let full = SplitSequence::from_values(p, fermat_predict(n as usize, p, period)?)?;
            let period = Period {
                preperiod: 0,
                period,
            };
            exact = Some(ExactPpt {
                value: ppt_closed_form(&full, period)?,
                preperiod: 0,
                period: period.period,
                conjectural: false,
            });
        }
    }
    if regular {
        if let Some(i) = seq.terminated_at_p {
            return Err(Error::CrossCheckFailed {
                what: format!("regular input reached p at index {i}"),
                predicted: Vec::new(),
                computed: seq.values.clone(),
            });
        }
        basis.get_or_insert(PurityBasis::Regular);
    }

    let verdict = match (classify_with(seq, opts), basis) {
        (Verdict::PerfectoidPure { depth, .. }, Some(basis)) => {
            Verdict::PerfectoidPure { basis, depth }
        }
        (v, _) => v,
    };

    let ppt = if seq.terminated_at_p.is_some() {
        None
    } else {
        let partial = ppt_partial(seq)?;
        let exact = match exact {
            Some(e) => Some(e),
            None => detect_period(seq)
                .map(|period| -> Result<ExactPpt> {
                    Ok(ExactPpt {
                        value: ppt_closed_form(seq, period)?,
                        preperiod: period.preperiod,
                        period: period.period,
                        conjectural: true,
                    })
                })
                .transpose()?,
        };
        Some(PptValue { partial, exact })
    };

    Ok(Analysis {
        verdict,
        ppt,
        criteria,
        regular,
        fermat,
    })
}
