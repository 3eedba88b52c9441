//! Incremental row echelon form over F_p, with monomials as coordinates and
//! pivots taken at the graded-lex leading monomial.

use std::collections::BTreeMap;
use std::sync::Arc;

use rustc_hash::FxHashSet;

use crate::context::{Context, Limits};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::ResPoly;

type Row = Vec<(Monomial, u32)>;

/// Accumulates polynomials into a monic echelon basis of their F_p-span.
///
/// Every stored row is fully reduced against the rows present when it was
/// inserted; [`EchelonBasis::finish`] back-substitutes to the reduced row
/// echelon form, which depends only on the span.
pub struct EchelonBasis {
    ctx: Arc<Context>,
    limits: Limits,
    rows: BTreeMap<Monomial, Row>,
    columns: FxHashSet<Monomial>,
}

impl EchelonBasis {
    pub fn new(ctx: &Arc<Context>) -> Self {
        EchelonBasis {
            ctx: ctx.clone(),
            limits: ctx.limits(),
            rows: BTreeMap::new(),
            columns: FxHashSet::default(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `g` modulo the current rows. Returns the remainder's terms.
    fn reduce(&self, terms: &[(Monomial, u32)]) -> Row {
        let p = self.ctx.p();
        if self.rows.is_empty() {
            return terms.to_vec();
        }
        // Terms still to be examined, largest first.
        let mut pending: BTreeMap<Monomial, u32> = terms.iter().copied().collect();
        let mut out = Vec::new();
        while let Some((m, c)) = pending.pop_last() {
            match self.rows.get(&m) {
                None => out.push((m, c)),
                Some(row) => {
                    // row is monic with leading monomial m: subtract c * row.
                    let k = p - c;
                    for &(t, rc) in &row[1..] {
                        let slot = pending.entry(t).or_insert(0);
                        *slot = (*slot + k * rc) % p;
                        if *slot == 0 {
                            pending.remove(&t);
                        }
                    }
                }
            }
        }
        out
    }

    /// Adds `g` to the basis. Returns whether the span grew.
    pub fn insert(&mut self, g: &ResPoly) -> Result<bool> {
        Context::check(&self.ctx, g.ctx())?;
        let mut row = self.reduce(g.terms());
        if row.is_empty() {
            return Ok(false);
        }
        let p = self.ctx.p();
        let inv = ResPoly::inv_mod_p(row[0].1, p);
        for t in row.iter_mut() {
            t.1 = t.1 * inv % p;
        }
        if self.rows.len() + 1 > self.limits.max_generators {
            return Err(Error::ResourceLimit {
                what: "echelon generators",
                count: self.rows.len() + 1,
                limit: self.limits.max_generators,
            });
        }
        self.columns.extend(row.iter().map(|t| t.0));
        if self.columns.len() > self.limits.max_monomials {
            return Err(Error::ResourceLimit {
                what: "echelon monomials",
                count: self.columns.len(),
                limit: self.limits.max_monomials,
            });
        }
        self.rows.insert(row[0].0, row);
        Ok(true)
    }

    /// True when `g` lies in the current span.
    pub fn contains(&self, g: &ResPoly) -> bool {
        self.reduce(g.terms()).is_empty()
    }

    /// Reduced row echelon basis, rows in descending pivot order.
    pub fn finish(self) -> Vec<ResPoly> {
        let p = self.ctx.p();
        let mut done: BTreeMap<Monomial, Row> = BTreeMap::new();
        for (pivot, row) in self.rows {
            // Rows with smaller pivots are already in reduced form.
            let mut pending: BTreeMap<Monomial, u32> = row[1..].iter().copied().collect();
            let mut tail = Vec::new();
            while let Some((m, c)) = pending.pop_last() {
                match done.get(&m) {
                    None => tail.push((m, c)),
                    Some(r) => {
                        let k = p - c;
                        for &(t, rc) in &r[1..] {
                            let slot = pending.entry(t).or_insert(0);
                            *slot = (*slot + k * rc) % p;
                            if *slot == 0 {
                                pending.remove(&t);
                            }
                        }
                    }
                }
            }
            let mut full = Vec::with_capacity(tail.len() + 1);
            full.push((pivot, 1));
            full.extend(tail);
            done.insert(pivot, full);
        }
        done.into_values()
            .rev()
            .map(|r| ResPoly::from_sorted_unchecked(&self.ctx, r))
            .collect()
    }
}

/// Reduced row echelon basis of the span of `gens`.
pub fn echelon_reduce<'a, I>(ctx: &Arc<Context>, gens: I) -> Result<Vec<ResPoly>>
where
    I: IntoIterator<Item = &'a ResPoly>,
{
    let mut basis = EchelonBasis::new(ctx);
    for g in gens {
        basis.insert(g)?;
    }
    Ok(basis.finish())
}
