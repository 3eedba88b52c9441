//! The ideals I(l_1, ..., l_n) and the splitting-order sequence they
//! determine through the Fedder-type containment I(s_1..s_{n-1}, s) ⊆ 𝔪^{[p]}.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::delta::HypersurfaceInput;
use crate::error::{Error, Result};
use crate::ideal::{frobenius_bound, ResIdeal};

/// (l_1, ..., l_n) with l_i ≤ p-1 for i < n and l_n ≤ p.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LadderIndex(Vec<u32>);

impl LadderIndex {
    pub fn new(p: u32, entries: Vec<u32>) -> Result<Self> {
        let invalid = |reason: &str| Error::InvalidIndex {
            entries: entries.clone(),
            reason: reason.to_string(),
        };
        let Some((&last, init)) = entries.split_last() else {
            return Err(invalid("index must be nonempty"));
        };
        if init.iter().any(|&l| l > p - 1) {
            return Err(invalid("all entries but the last must be at most p-1"));
        }
        if last > p {
            return Err(invalid("the last entry must be at most p"));
        }
        Ok(LadderIndex(entries))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// I(l_1, ..., l_n), built from the innermost slot outwards:
/// I(l_n) = (f^{p-l_n}) and
/// I(l_i, ...) = f^{p-l_i-1} u(F_*(Δ(f)^{l_i} I(l_{i+1}, ...))) + (f^{p-l_i}).
pub fn compute_ladder(h: &HypersurfaceInput, idx: &LadderIndex) -> Result<ResIdeal> {
    build_ladder(h, idx, false)
}

/// I(idx) modulo 𝔪^{[p]}: the chain is carried out with the ideal at nesting
/// level i (outermost = 1) reduced modulo 𝔪^{[p^i]}. Because
/// u(F_*(𝔪^{[p^{i+1}]})) = 𝔪^{[p^i]}, the final ideal is exact modulo
/// 𝔪^{[p]}, so it is zero exactly when I(idx) ⊆ 𝔪^{[p]}.
pub fn compute_ladder_mod_frobenius(h: &HypersurfaceInput, idx: &LadderIndex) -> Result<ResIdeal> {
    build_ladder(h, idx, true)
}

fn build_ladder(h: &HypersurfaceInput, idx: &LadderIndex, truncate: bool) -> Result<ResIdeal> {
    let p = h.p();
    let entries = idx.entries();
    let n = entries.len();
    let bound = |level: usize| frobenius_bound(p, level as u32);

    let last = entries[n - 1];
    let mut ideal = ResIdeal::principal(h.f_power(p - last)?);
    if truncate {
        ideal = ideal.truncate_frobenius(bound(n))?;
    }
    for level in (1..n).rev() {
        let l = entries[level - 1];
        let delta = h.delta_power(l)?;
        let inner = if truncate {
            // `ideal` is known modulo 𝔪^{[p^{level+1}]}.
            ideal.mul_poly_truncated(delta, bound(level + 1))?
        } else {
            ideal.mul_poly(delta)?
        };
        let rooted = inner.u_image()?;
        let f_outer = h.f_power(p - l - 1)?;
        let f_extra = h.f_power(p - l)?;
        ideal = if truncate {
            let q = bound(level);
            rooted
                .mul_poly_truncated(f_outer, q)?
                .add_principal(&f_extra.truncate_frobenius(q))?
        } else {
            rooted.mul_poly(f_outer)?.add_principal(f_extra)?
        };
    }
    Ok(ideal)
}

/// Whether I(prefix, s) ⊆ 𝔪^{[p]}.
pub fn ladder_contained(h: &HypersurfaceInput, prefix: &[u32], s: u32) -> Result<bool> {
    let mut entries = prefix.to_vec();
    entries.push(s);
    let idx = LadderIndex::new(h.p(), entries)?;
    Ok(compute_ladder_mod_frobenius(h, &idx)?.is_zero())
}

/// Containment flags for every candidate s = 0..=p.
pub fn containment_profile(h: &HypersurfaceInput, prefix: &[u32]) -> Result<Vec<bool>> {
    (0..=h.p())
        .into_par_iter()
        .map(|s| ladder_contained(h, prefix, s))
        .collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LadderOptions {
    /// Evaluate every candidate s and check downward closure even when
    /// p > 5 would otherwise use binary search.
    pub exhaustive: bool,
    /// Record the ideal I(s_1, ..., s_n) for each committed step.
    pub trace: bool,
}

/// s_n = max { s ≤ p : I(s_1, ..., s_{n-1}, s) ⊆ 𝔪^{[p]} }.
pub fn next_s(h: &HypersurfaceInput, prefix: &[u32]) -> Result<u32> {
    next_s_with(h, prefix, LadderOptions::default())
}

pub fn next_s_with(h: &HypersurfaceInput, prefix: &[u32], opts: LadderOptions) -> Result<u32> {
    let p = h.p();
    let step = prefix.len() + 1;
    if let Some(&bad) = prefix.iter().find(|&&s| s > p - 1) {
        return Err(Error::InvalidIndex {
            entries: prefix.to_vec(),
            reason: format!("prefix entry {bad} exceeds p-1"),
        });
    }
    if p <= 5 || opts.exhaustive {
        let profile = containment_profile(h, prefix)?;
        let count = profile.iter().take_while(|&&c| c).count();
        if count == 0 || profile[count..].iter().any(|&c| c) {
            return Err(Error::MonotonicityViolation {
                step,
                observed: profile,
            });
        }
        return Ok(count as u32 - 1);
    }

    // Binary search for the last contained candidate; observations are
    // kept so that any inconsistency with downward closure is reported.
    let mut observed: Vec<Option<bool>> = vec![None; p as usize + 1];
    let probe = |s: u32, observed: &mut Vec<Option<bool>>| -> Result<bool> {
        let c = ladder_contained(h, prefix, s)?;
        observed[s as usize] = Some(c);
        Ok(c)
    };
    let violation = |observed: &[Option<bool>]| Error::MonotonicityViolation {
        step,
        observed: observed.iter().map(|o| o.unwrap_or(false)).collect(),
    };
    if !probe(0, &mut observed)? {
        return Err(violation(&observed));
    }
    if probe(p, &mut observed)? {
        return Ok(p);
    }
    let (mut lo, mut hi) = (0u32, p);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if probe(mid, &mut observed)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let first_false = observed.iter().position(|o| *o == Some(false));
    let last_true = observed.iter().rposition(|o| *o == Some(true));
    if let (Some(f), Some(t)) = (first_false, last_true) {
        if t > f {
            return Err(violation(&observed));
        }
    }
    Ok(lo)
}

/// The splitting-order sequence s_0, s_1, ..., s_depth.
#[derive(Clone, Debug)]
pub struct SplitSequence {
    pub p: u32,
    /// s_0, ..., s_depth with s_0 = 0.
    pub values: Vec<u32>,
    /// The first index i with s_i = p, if any.
    pub terminated_at_p: Option<usize>,
    /// Wall-clock time spent on each computed step s_1, s_2, ...
    pub step_times: Vec<Duration>,
    /// I(s_1, ..., s_n) for every computed step, when tracing.
    pub per_step_ideals: Option<Vec<ResIdeal>>,
}

impl SplitSequence {
    pub fn depth(&self) -> usize {
        self.values.len() - 1
    }

    /// s_1, ..., s_depth.
    pub fn tail(&self) -> &[u32] {
        &self.values[1..]
    }

    /// Builds a sequence from literal values (s_0 first), filling the
    /// terminal index. Used for classification of known sequences.
    pub fn from_values(p: u32, values: Vec<u32>) -> Result<Self> {
        if values.first() != Some(&0) {
            return Err(Error::InvalidArgument("s_0 must be 0".to_string()));
        }
        if let Some(&bad) = values.iter().find(|&&s| s > p) {
            return Err(Error::InvalidArgument(format!(
                "sequence value {bad} exceeds p = {p}"
            )));
        }
        let terminated_at_p = values.iter().position(|&s| s == p);
        if let Some(i) = terminated_at_p {
            if values[i..].iter().any(|&s| s != p) {
                return Err(Error::InvalidArgument(
                    "entries after the first p must all equal p".to_string(),
                ));
            }
        }
        Ok(SplitSequence {
            p,
            values,
            terminated_at_p,
            step_times: Vec::new(),
            per_step_ideals: None,
        })
    }
}

pub fn splitting_sequence(h: &HypersurfaceInput, depth: usize) -> Result<SplitSequence> {
    splitting_sequence_with(h, depth, LadderOptions::default())
}

pub fn splitting_sequence_with(
    h: &HypersurfaceInput,
    depth: usize,
    opts: LadderOptions,
) -> Result<SplitSequence> {
    if depth == 0 {
        return Err(Error::InvalidArgument("depth must be at least 1".to_string()));
    }
    let p = h.p();
    let mut values = vec![0u32];
    let mut step_times = Vec::with_capacity(depth);
    let mut trace = opts.trace.then(Vec::new);
    let mut terminated_at_p = None;
    for n in 1..=depth {
        if terminated_at_p.is_some() {
            values.push(p);
            continue;
        }
        let start = Instant::now();
        let s = next_s_with(h, &values[1..], opts)?;
        if let Some(t) = trace.as_mut() {
            let idx = LadderIndex::new(p, values[1..].iter().copied().chain([s]).collect())?;
            t.push(compute_ladder(h, &idx)?);
        }
        step_times.push(start.elapsed());
        values.push(s);
        if s == p {
            terminated_at_p = Some(n);
        }
    }
    Ok(SplitSequence {
        p,
        values,
        terminated_at_p,
        step_times,
        per_step_ideals: trace,
    })
}
