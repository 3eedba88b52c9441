//! ν_f(p^e) = max { n : f̄^n ∉ 𝔪^{[p^e]} } and F-pure threshold
//! approximations ν_f(p^e)/p^e.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ideal::frobenius_bound;
use crate::poly::ResPoly;
use crate::verdict::ppt::Rational;

/// ν_f(p^e) for e = 1..=e_max.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuTable {
    pub p: u32,
    /// entries[e-1] = ν_f(p^e).
    pub entries: Vec<u64>,
}

impl NuTable {
    pub fn compute(f: &ResPoly, e_max: u32) -> Result<NuTable> {
        let p = f.ctx().p();
        if f.is_zero() || f.constant_term() != 0 {
            return Err(Error::InvalidArgument(
                "ν needs a nonzero f̄ in the maximal ideal".to_string(),
            ));
        }
        if e_max == 0 {
            return Err(Error::InvalidArgument("e must be at least 1".to_string()));
        }
        let mut entries = Vec::with_capacity(e_max as usize);
        // f̄^ν mod 𝔪^{[p^e]} for the current e, starting from f̄^0 at e = 0.
        let mut power = ResPoly::one(f.ctx());
        let mut nu = 0u64;
        for e in 1..=e_max {
            let q = frobenius_bound(p, e);
            if e > 1 {
                // (f̄^ν)^p ∉ 𝔪^{[p^e]} since Frobenius is flat; the p-th power
                // of a truncation is exact modulo 𝔪^{[p^e]}.
                power = power.frobenius()?.truncate_frobenius(q);
                nu *= p as u64;
            }
            debug_assert!(!power.is_zero());
            loop {
                let next = power.mul_truncated(f, q)?;
                if next.is_zero() {
                    break;
                }
                power = next;
                nu += 1;
            }
            if let Some(&prev) = entries.last() {
                assert!(nu >= p as u64 * prev, "ν(p^(e+1)) < p ν(p^e)");
            }
            entries.push(nu);
        }
        Ok(NuTable { p, entries })
    }

    pub fn nu(&self, e: u32) -> Option<u64> {
        self.entries.get((e as usize).checked_sub(1)?).copied()
    }

    /// ν_f(p^e)/p^e.
    pub fn ratio(&self, e: u32) -> Option<Rational> {
        let nu = self.nu(e)?;
        Some(Rational::new(BigInt::from(nu), BigInt::from(self.p).pow(e)))
    }
}

pub fn nu(f: &ResPoly, e: u32) -> Result<u64> {
    Ok(*NuTable::compute(f, e)?.entries.last().expect("e >= 1"))
}

/// ν_f(p^{e_max}) / p^{e_max}.
pub fn fpt_approx(f: &ResPoly, e_max: u32) -> Result<Rational> {
    Ok(NuTable::compute(f, e_max)?
        .ratio(e_max)
        .expect("table has e_max entries"))
}
