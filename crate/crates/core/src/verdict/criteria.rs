//! Closed-form checks on f that predict s(f) without running the ladder:
//! the three quick criteria for f̄ ∈ 𝔪^{[p]}, the regularity test, and the
//! Fermat hypersurface prediction for p > N.

use crate::delta::{delta, HypersurfaceInput};
use crate::error::{Error, Result};
use crate::ideal::{frobenius_bound, member_frobenius_power};
use crate::monomial::Monomial;
use crate::poly::LiftPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Criterion {
    /// f̄^{p-1} Δ(f)^{p-1} ≡ c (x_1⋯x_N)^{p²-1} mod 𝔪^{[p²]}, c ≠ 0:
    /// s = (0, p-1, 0, p-1, ...), ppt = 1/(p+1).
    C1,
    /// Δ(f)^{p-1} ∈ 𝔪^{[p²]}: s_1 = p-1, s_2 = p, not perfectoid pure.
    C2,
    /// Δ(f - p x_1⋯x_N) ∈ 𝔪^{[p²]}: s = (0, p-1, p-1, ...), ppt = 0.
    C3,
}

impl Criterion {
    pub fn name(self) -> &'static str {
        match self {
            Criterion::C1 => "C1",
            Criterion::C2 => "C2",
            Criterion::C3 => "C3",
        }
    }

    /// The sequence s_0..s_depth the criterion forces.
    pub fn predicted(self, p: u32, depth: usize) -> Vec<u32> {
        (0..=depth)
            .map(|i| match (self, i) {
                (_, 0) => 0,
                (Criterion::C1, i) if i % 2 == 1 => p - 1,
                (Criterion::C1, _) => 0,
                (Criterion::C2, 1) => p - 1,
                (Criterion::C2, _) => p,
                (Criterion::C3, _) => p - 1,
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriteriaReport {
    /// Whether f̄ ∈ 𝔪^{[p]}, the hypothesis shared by all three criteria.
    pub precondition: bool,
    pub satisfied: Vec<Criterion>,
    pub note: Option<String>,
}

pub fn check_quick_criteria(h: &HypersurfaceInput) -> Result<CriteriaReport> {
    let ctx = h.ctx();
    let p = h.p();
    if !member_frobenius_power(h.f_res(), 1) {
        return Ok(CriteriaReport {
            precondition: false,
            satisfied: Vec::new(),
            note: Some("f is not in m^[p]; the quick criteria do not apply".to_string()),
        });
    }
    let q2 = frobenius_bound(p, 2);
    let delta_top = h.delta_power(p - 1)?;
    let mut satisfied = Vec::new();

    let lhs = h.f_power(p - 1)?.mul_truncated(delta_top, q2)?;
    let socle = Monomial::new(&vec![p * p - 1; ctx.nvars()])?;
    if lhs.len() == 1 && lhs.terms()[0].0 == socle {
        satisfied.push(Criterion::C1);
    }

    if member_frobenius_power(delta_top, 2) {
        satisfied.push(Criterion::C2);
    }

    let all_vars = Monomial::new(&vec![1; ctx.nvars()])?;
    let shift = LiftPoly::monomial(ctx, all_vars, p as i64);
    let f_prime = h.f_lift() - &shift;
    if member_frobenius_power(&delta(&f_prime), 2) {
        satisfied.push(Criterion::C3);
    }

    Ok(CriteriaReport {
        precondition: true,
        satisfied,
        note: None,
    })
}

/// True iff A/f is regular, i.e. f ∉ (p, x_1, ..., x_N)^2: either some
/// x_i appears with a coefficient prime to p, or the constant term is p
/// times a unit.
pub fn regularity_test(h: &HypersurfaceInput) -> bool {
    let p = h.p();
    let linear = h
        .f_lift()
        .terms()
        .iter()
        .any(|(m, c)| m.degree() == 1 && c % p != 0);
    let constant = h.f_lift().constant_term();
    linear || (constant.is_multiple_of(p) && constant != 0)
}

/// Some(N) when f is exactly x_1^N + ... + x_N^N with N the number of
/// variables.
pub fn fermat_exponent(h: &HypersurfaceInput) -> Option<u32> {
    let ctx = h.ctx();
    let n = ctx.nvars() as u32;
    let fermat = (0..ctx.nvars()).fold(LiftPoly::zero(ctx), |acc, i| {
        &acc + &LiftPoly::monomial(ctx, Monomial::var(i, n), 1)
    });
    (n >= 2 && *h.f_lift() == fermat).then_some(n)
}

/// s_0 = 0 and s_e ∈ [0, N-2] with s_e + 1 ≡ p^e (mod N), for p > N ≥ 2.
pub fn fermat_predict(n: usize, p: u32, depth: usize) -> Result<Vec<u32>> {
    if n < 2 || p as usize <= n {
        return Err(Error::PNotGreaterThanN { p, n });
    }
    let n = n as u64;
    let mut values = vec![0u32];
    let mut pe = 1u64;
    for _ in 0..depth {
        pe = pe * p as u64 % n;
        // p is prime and larger than N, so p^e is a unit mod N.
        values.push((pe - 1) as u32);
    }
    Ok(values)
}

/// Multiplicative order of p modulo N: the period of the Fermat prediction.
pub fn fermat_period(n: usize, p: u32) -> usize {
    let n = n as u64;
    let mut pe = p as u64 % n;
    let mut k = 1;
    while pe % n != 1 % n {
        pe = pe * p as u64 % n;
        k += 1;
    }
    k
}
