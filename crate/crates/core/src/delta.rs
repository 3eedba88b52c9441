//! The operator Δ(a) = (a^p - φ(a))/p reduced mod p, and validated
//! hypersurface inputs.

use std::sync::{Arc, OnceLock};

use crate::context::Context;
use crate::error::{Error, Result};
use crate::poly::{LiftPoly, ResPoly};

/// Δ(f) = (f^p - φ(f))/p mod p. Only f mod p^2 enters.
pub fn delta(f: &LiftPoly) -> ResPoly {
    let p = f.ctx().p() as u64;
    let numerator = f
        .pow(p)
        .and_then(|fp| Ok(&fp - &f.frobenius_substitute()?))
        .expect("exponent overflow while computing f^p");
    numerator
        .exact_div_p()
        .expect("f^p - φ(f) must be divisible by p")
}

/// A hypersurface element f with (p, f) regular and f in the maximal ideal.
pub struct HypersurfaceInput {
    f_lift: LiftPoly,
    f_res: ResPoly,
    delta_f: ResPoly,
    delta_powers: Vec<OnceLock<ResPoly>>,
    f_powers: Vec<OnceLock<ResPoly>>,
}

impl HypersurfaceInput {
    pub fn validate(ctx: &Arc<Context>, f_lift: LiftPoly) -> Result<Self> {
        Context::check(ctx, f_lift.ctx())?;
        let f_res = f_lift.project_mod_p();
        if f_res.is_zero() {
            return Err(Error::FDivisibleByP);
        }
        if f_res.constant_term() != 0 {
            return Err(Error::FIsUnit);
        }
        let p = ctx.p() as usize;
        let delta_f = delta(&f_lift);
        Ok(HypersurfaceInput {
            f_lift,
            f_res,
            delta_f,
            delta_powers: (0..p).map(|_| OnceLock::new()).collect(),
            f_powers: (0..=p).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn ctx(&self) -> &Arc<Context> {
        self.f_lift.ctx()
    }

    pub fn p(&self) -> u32 {
        self.ctx().p()
    }

    pub fn f_lift(&self) -> &LiftPoly {
        &self.f_lift
    }

    pub fn f_res(&self) -> &ResPoly {
        &self.f_res
    }

    pub fn delta_f(&self) -> &ResPoly {
        &self.delta_f
    }

    /// Δ(f)^l for 0 <= l <= p-1, memoized.
    pub fn delta_power(&self, l: u32) -> Result<&ResPoly> {
        let max = self.p() - 1;
        let slot = self
            .delta_powers
            .get(l as usize)
            .ok_or(Error::PowerOutOfRange { l, max })?;
        Ok(slot.get_or_init(|| {
            self.delta_f
                .pow(l as u64)
                .expect("exponent overflow while powering Δ(f)")
        }))
    }

    /// f̄^k for 0 <= k <= p, memoized.
    pub fn f_power(&self, k: u32) -> Result<&ResPoly> {
        let max = self.p();
        let slot = self
            .f_powers
            .get(k as usize)
            .ok_or(Error::PowerOutOfRange { l: k, max })?;
        Ok(slot.get_or_init(|| {
            self.f_res
                .pow(k as u64)
                .expect("exponent overflow while powering f")
        }))
    }
}

impl std::fmt::Debug for HypersurfaceInput {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HypersurfaceInput")
            .field("ctx", self.ctx())
            .field("f", &self.f_lift.to_string())
            .field("delta_f", &self.delta_f.to_string())
            .finish()
    }
}
