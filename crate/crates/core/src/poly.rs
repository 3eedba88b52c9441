//! Sparse multivariate polynomials over Z/p^2 (lifts of elements of A) and
//! over F_p (elements of A/pA).

use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::context::Context;
use crate::error::{Error, Result};
use crate::monomial::Monomial;

/// Coefficient ring Z/p^k, selected at the type level.
pub trait CoeffRing: Copy + Send + Sync + fmt::Debug + 'static {
    const P_POWER: u32;
}

/// F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModP;

/// Z/p^2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModP2;

impl CoeffRing for ModP {
    const P_POWER: u32 = 1;
}

impl CoeffRing for ModP2 {
    const P_POWER: u32 = 2;
}

/// Sparse polynomial with terms stored in strictly descending graded-lex
/// order and every coefficient a nonzero least residue.
pub struct Poly<R: CoeffRing> {
    ctx: Arc<Context>,
    terms: Vec<(Monomial, u32)>,
    _ring: PhantomData<R>,
}

/// Element of A modulo p^2.
pub type LiftPoly = Poly<ModP2>;
/// Element of A/pA.
pub type ResPoly = Poly<ModP>;

impl<R: CoeffRing> Clone for Poly<R> {
    fn clone(&self) -> Self {
        Poly {
            ctx: self.ctx.clone(),
            terms: self.terms.clone(),
            _ring: PhantomData,
        }
    }
}

impl<R: CoeffRing> PartialEq for Poly<R> {
    fn eq(&self, other: &Self) -> bool {
        Context::same(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl<R: CoeffRing> Eq for Poly<R> {}

impl<R: CoeffRing> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[mod {}]({})", self.modulus(), self)
    }
}

impl<R: CoeffRing> Poly<R> {
    pub fn zero(ctx: &Arc<Context>) -> Self {
        Poly {
            ctx: ctx.clone(),
            terms: Vec::new(),
            _ring: PhantomData,
        }
    }

    pub fn one(ctx: &Arc<Context>) -> Self {
        Self::constant(ctx, 1)
    }

    /// The constant `c`, reduced into the coefficient ring.
    pub fn constant(ctx: &Arc<Context>, c: i64) -> Self {
        Self::monomial(ctx, Monomial::ONE, c)
    }

    pub fn monomial(ctx: &Arc<Context>, m: Monomial, c: i64) -> Self {
        let q = ctx.modulus(R::P_POWER) as i64;
        let c = c.rem_euclid(q) as u32;
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Poly {
            ctx: ctx.clone(),
            terms,
            _ring: PhantomData,
        }
    }

    /// The i-th variable.
    pub fn var(ctx: &Arc<Context>, i: usize) -> Self {
        assert!(i < ctx.nvars(), "variable index {i} out of range");
        Self::monomial(ctx, Monomial::var(i, 1), 1)
    }

    /// Builds a canonical polynomial from arbitrary terms: duplicates are
    /// summed, coefficients reduced, zero terms dropped.
    pub fn from_terms<I>(ctx: &Arc<Context>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, i64)>,
    {
        let q = ctx.modulus(R::P_POWER) as i64;
        let mut acc: FxHashMap<Monomial, i64> = FxHashMap::default();
        for (m, c) in terms {
            let slot = acc.entry(m).or_insert(0);
            *slot = (*slot + c.rem_euclid(q)) % q;
        }
        Self::from_map(ctx, acc.into_iter().map(|(m, c)| (m, c as u64)))
    }

    fn from_map<I: IntoIterator<Item = (Monomial, u64)>>(ctx: &Arc<Context>, it: I) -> Self {
        let q = ctx.modulus(R::P_POWER) as u64;
        let mut terms: Vec<(Monomial, u32)> = it
            .into_iter()
            .filter_map(|(m, c)| {
                let c = (c % q) as u32;
                (c != 0).then_some((m, c))
            })
            .collect();
        terms.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
        Poly {
            ctx: ctx.clone(),
            terms,
            _ring: PhantomData,
        }
    }

    /// Wraps terms already in canonical order with reduced nonzero
    /// coefficients.
    pub(crate) fn from_sorted_unchecked(ctx: &Arc<Context>, terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        Poly {
            ctx: ctx.clone(),
            terms,
            _ring: PhantomData,
        }
    }

    pub fn ctx(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn modulus(&self) -> u32 {
        self.ctx.modulus(R::P_POWER)
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial, u32)> {
        self.terms.first()
    }

    pub fn coeff(&self, m: &Monomial) -> u32 {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    pub fn constant_term(&self) -> u32 {
        self.coeff(&Monomial::ONE)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        Context::check(&self.ctx, &other.ctx)?;
        Ok(self.merge(other, 1))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        Context::check(&self.ctx, &other.ctx)?;
        Ok(self.merge(other, self.modulus() - 1))
    }

    /// self + k * other, by a sorted merge.
    fn merge(&self, other: &Self, k: u32) -> Self {
        let q = self.modulus();
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b[j].0, b[j].1 * k % q));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = (a[i].1 + b[j].1 * k) % q;
                    if c != 0 {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|&(m, c)| (m, c * k % q)));
        out.retain(|t| t.1 != 0);
        Self::from_sorted_unchecked(&self.ctx, out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        Context::check(&self.ctx, &other.ctx)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ctx));
        }
        let q = self.modulus() as u64;
        if other.terms.len() == 1 || self.terms.len() == 1 {
            let (single, many) = if other.terms.len() == 1 {
                (other.terms[0], &self.terms)
            } else {
                (self.terms[0], &other.terms)
            };
            // Multiplying by a monomial preserves the term order.
            let mut out = Vec::with_capacity(many.len());
            for &(m, c) in many {
                let prod = (c as u64 * single.1 as u64 % q) as u32;
                if prod != 0 {
                    out.push((m.checked_mul(&single.0)?, prod));
                }
            }
            return Ok(Self::from_sorted_unchecked(&self.ctx, out));
        }
        let mut acc: FxHashMap<Monomial, u64> =
            FxHashMap::with_capacity_and_hasher(self.len() + other.len(), Default::default());
        for &(ma, ca) in &self.terms {
            for &(mb, cb) in &other.terms {
                let m = ma.checked_mul(&mb)?;
                let slot = acc.entry(m).or_insert(0);
                *slot = (*slot + ca as u64 * cb as u64) % q;
            }
        }
        Ok(Self::from_map(&self.ctx, acc))
    }

    pub fn scale(&self, k: i64) -> Self {
        let q = self.modulus() as i64;
        let k = k.rem_euclid(q) as u64;
        let terms = self
            .terms
            .iter()
            .filter_map(|&(m, c)| {
                let c = (c as u64 * k % q as u64) as u32;
                (c != 0).then_some((m, c))
            })
            .collect();
        Self::from_sorted_unchecked(&self.ctx, terms)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Result<Self> {
        let terms = self
            .terms
            .iter()
            .map(|&(t, c)| Ok((t.checked_mul(m)?, c)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_sorted_unchecked(&self.ctx, terms))
    }

    /// self^k by binary powering; `self^0 = 1`.
    pub fn pow(&self, k: u64) -> Result<Self> {
        let mut result = Self::one(&self.ctx);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.checked_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Drops every term lying in (x_1^q, ..., x_N^q).
    pub fn truncate_frobenius(&self, q: u64) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| !m.has_exponent_at_least(q))
            .copied()
            .collect();
        Self::from_sorted_unchecked(&self.ctx, terms)
    }

    /// Product followed by truncation modulo (x_1^q, ..., x_N^q), skipping
    /// products that land in the truncated ideal.
    pub fn mul_truncated(&self, other: &Self, q: u64) -> Result<Self> {
        Context::check(&self.ctx, &other.ctx)?;
        let modulus = self.modulus() as u64;
        let mut acc: FxHashMap<Monomial, u64> = FxHashMap::default();
        for &(ma, ca) in &self.terms {
            for &(mb, cb) in &other.terms {
                let m = ma.checked_mul(&mb)?;
                if m.has_exponent_at_least(q) {
                    continue;
                }
                let slot = acc.entry(m).or_insert(0);
                *slot = (*slot + ca as u64 * cb as u64) % modulus;
            }
        }
        Ok(Self::from_map(&self.ctx, acc))
    }

    /// Applies x_i -> x_i^k to every variable, leaving coefficients alone.
    pub fn scale_exponents(&self, k: u32) -> Result<Self> {
        let terms = self
            .terms
            .iter()
            .map(|&(m, c)| Ok((m.checked_scale(k)?, c)))
            .collect::<Result<Vec<_>>>()?;
        // Scaling exponents by k > 0 preserves graded-lex order.
        Ok(Self::from_sorted_unchecked(&self.ctx, terms))
    }
}

impl LiftPoly {
    /// Frobenius lift x_i -> x_i^p. Coefficients in Z_p are fixed.
    pub fn frobenius_substitute(&self) -> Result<LiftPoly> {
        self.scale_exponents(self.ctx.p())
    }

    /// Reduction modulo p.
    pub fn project_mod_p(&self) -> ResPoly {
        let p = self.ctx.p() as u64;
        ResPoly::from_map(&self.ctx, self.terms.iter().map(|&(m, c)| (m, c as u64 % p)))
    }

    /// The unique b in F_p[x] with p * lift(b) = self, provided every
    /// coefficient is divisible by p.
    pub fn exact_div_p(&self) -> Result<ResPoly> {
        let p = self.ctx.p();
        let mut terms = Vec::with_capacity(self.terms.len());
        for &(m, c) in &self.terms {
            if c % p != 0 {
                return Err(Error::NotDivisible {
                    monomial: render_monomial(&m, self.ctx.names()),
                });
            }
            terms.push((m, c / p));
        }
        Ok(ResPoly::from_sorted_unchecked(&self.ctx, terms))
    }
}

impl ResPoly {
    /// Lift with coefficients taken as least non-negative residues mod p.
    pub fn lift(&self) -> LiftPoly {
        LiftPoly::from_sorted_unchecked(&self.ctx, self.terms.clone())
    }

    /// g^p, computed as x_i -> x_i^p (valid over F_p, where c^p = c).
    pub fn frobenius(&self) -> Result<ResPoly> {
        self.scale_exponents(self.ctx.p())
    }

    /// Multiplicative inverse of a nonzero element of F_p.
    pub fn inv_mod_p(c: u32, p: u32) -> u32 {
        debug_assert!(!c.is_multiple_of(p));
        let mut result = 1u64;
        let mut base = c as u64 % p as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        result as u32
    }
}

fn binop<R: CoeffRing>(a: &Poly<R>, b: &Poly<R>, f: fn(&Poly<R>, &Poly<R>) -> Result<Poly<R>>) -> Poly<R> {
    f(a, b).unwrap_or_else(|e| panic!("polynomial arithmetic failed: {e}"))
}

impl<R: CoeffRing> Add for &Poly<R> {
    type Output = Poly<R>;
    fn add(self, rhs: Self) -> Poly<R> {
        binop(self, rhs, Poly::checked_add)
    }
}

impl<R: CoeffRing> Sub for &Poly<R> {
    type Output = Poly<R>;
    fn sub(self, rhs: Self) -> Poly<R> {
        binop(self, rhs, Poly::checked_sub)
    }
}

impl<R: CoeffRing> Mul for &Poly<R> {
    type Output = Poly<R>;
    fn mul(self, rhs: Self) -> Poly<R> {
        binop(self, rhs, Poly::checked_mul)
    }
}

impl<R: CoeffRing> Neg for &Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        self.scale(-1)
    }
}

pub(crate) fn render_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, name) in names.iter().enumerate() {
        match m.exp(i) {
            0 => {}
            1 => parts.push(name.clone()),
            e => parts.push(format!("{name}^{e}")),
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Canonical rendering: descending graded-lex, least non-negative
/// residues, explicit `*` between factors, unit coefficients omitted.
impl<R: CoeffRing> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else if *c == 1 {
                write!(f, "{}", render_monomial(m, self.ctx.names()))?;
            } else {
                write!(f, "{c}*{}", render_monomial(m, self.ctx.names()))?;
            }
        }
        Ok(())
    }
}
