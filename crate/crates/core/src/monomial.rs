use std::cmp::Ordering;

use crate::context::MAX_VARS;
use crate::error::{Error, Result};

/// Exponent bound: every exponent stays strictly below 2^31.
pub const MAX_EXPONENT: u32 = (1 << 31) - 1;

/// Exponent vector of length `MAX_VARS`; slots past the context's variable
/// count are always zero.
///
/// Ordered graded-lex: higher total degree first, ties broken by the
/// exponent of the first variable, then the second, and so on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u32; MAX_VARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        exps: [0; MAX_VARS],
    };

    pub fn new(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::InvalidArgument(format!(
                "exponent vector of length {} exceeds {MAX_VARS}",
                exps.len()
            )));
        }
        if exps.iter().any(|&e| e > MAX_EXPONENT) {
            return Err(Error::ExponentOverflow);
        }
        let mut m = Monomial::ONE;
        m.exps[..exps.len()].copy_from_slice(exps);
        Ok(m)
    }

    pub fn var(i: usize, e: u32) -> Self {
        let mut m = Monomial::ONE;
        m.exps[i] = e;
        m
    }

    pub fn exps(&self) -> &[u32; MAX_VARS] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut out = Monomial::ONE;
        for i in 0..MAX_VARS {
            let e = self.exps[i]
                .checked_add(other.exps[i])
                .filter(|&e| e <= MAX_EXPONENT)
                .ok_or(Error::ExponentOverflow)?;
            out.exps[i] = e;
        }
        Ok(out)
    }

    pub fn checked_scale(&self, k: u32) -> Result<Monomial> {
        let mut out = Monomial::ONE;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i]
                .checked_mul(k)
                .filter(|&e| e <= MAX_EXPONENT)
                .ok_or(Error::ExponentOverflow)?;
        }
        Ok(out)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// Split x^a into its residue class a mod q and quotient a div q.
    pub fn div_rem(&self, q: u32) -> (Monomial, Monomial) {
        let mut quot = Monomial::ONE;
        let mut rem = Monomial::ONE;
        for i in 0..MAX_VARS {
            quot.exps[i] = self.exps[i] / q;
            rem.exps[i] = self.exps[i] % q;
        }
        (quot, rem)
    }

    /// True when some exponent is at least `q`, i.e. x^a lies in the
    /// monomial ideal (x_1^q, ..., x_N^q).
    pub fn has_exponent_at_least(&self, q: u64) -> bool {
        self.exps.iter().any(|&e| e as u64 >= q)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
