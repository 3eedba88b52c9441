//! Exact threshold sums Σ (p-1-s_i)/p^i and periodic closed forms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ladder::SplitSequence;

pub type Rational = BigRational;

/// Preperiod a and period π: s_{a+j} = s_{a+π+j} for all j ≥ 1 in the window.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Period {
    pub preperiod: usize,
    pub period: usize,
}

fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
    Rational::new(num.into(), den.into())
}

fn digits(seq: &SplitSequence, upto: usize) -> Result<Vec<u32>> {
    let p = seq.p;
    seq.values[1..=upto]
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            if s >= p {
                Err(Error::SequenceHitP { index: i + 1 })
            } else {
                Ok(p - 1 - s)
            }
        })
        .collect()
}

/// Σ_{i=1}^{d} c_i / p^i with c_i = p-1-s_i.
fn digit_sum(p: u32, digits: &[u32]) -> Rational {
    let p = BigInt::from(p);
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for &c in digits {
        num = num * &p + c;
        den *= &p;
    }
    Rational::new(num, den)
}

/// Σ_{i=1}^{depth} (p-1-s_i)/p^i.
pub fn ppt_partial(seq: &SplitSequence) -> Result<Rational> {
    Ok(digit_sum(seq.p, &digits(seq, seq.depth())?))
}

/// Partial sums after 1, 2, ..., depth terms.
pub fn ppt_partials(seq: &SplitSequence) -> Result<Vec<Rational>> {
    let ds = digits(seq, seq.depth())?;
    Ok((1..=ds.len()).map(|n| digit_sum(seq.p, &ds[..n])).collect())
}

/// Smallest preperiod a, then smallest period π, such that a + 2π ≤ depth
/// and the whole window after a repeats with period π.
pub fn detect_period(seq: &SplitSequence) -> Option<Period> {
    let tail = seq.tail();
    let depth = tail.len();
    for a in 0..depth {
        for period in 1..=(depth - a) / 2 {
            if (a..depth - period).all(|i| tail[i] == tail[i + period]) {
                return Some(Period {
                    preperiod: a,
                    period,
                });
            }
        }
    }
    None
}

/// Value of the infinite sum when s is eventually periodic with the given
/// preperiod and period, using the first a + π entries of `seq`.
pub fn ppt_closed_form(seq: &SplitSequence, period: Period) -> Result<Rational> {
    let Period { preperiod: a, period: pi } = period;
    if pi == 0 || a + pi > seq.depth() {
        return Err(Error::InvalidArgument(format!(
            "period (a={a}, π={pi}) does not fit a sequence of depth {}",
            seq.depth()
        )));
    }
    let ds = digits(seq, a + pi)?;
    let p = seq.p;
    let head = digit_sum(p, &ds[..a]);
    let block = digit_sum(p, &ds[a..]);
    let p_pi = BigInt::from(p).pow(pi as u32);
    let scale = ratio(p_pi.clone(), p_pi - 1) / ratio(BigInt::from(p).pow(a as u32), 1);
    Ok(head + block * scale)
}
