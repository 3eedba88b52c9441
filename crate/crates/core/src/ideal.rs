//! Ideals of A/pA = F_p[x_1..x_N] held as echelon-reduced generator lists,
//! the Frobenius root operator u, and membership in Frobenius powers of
//! the maximal ideal.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::context::{Context, MAX_VARS};
use crate::echelon::EchelonBasis;
use crate::error::Result;
use crate::monomial::Monomial;
use crate::poly::ResPoly;

/// u(F_* g): picks out the terms whose exponents are all ≡ p-1 (mod p) and
/// takes their p-th root. This is the dual basis element to
/// F_*(x_1^{p-1}...x_N^{p-1}).
pub fn u_single(g: &ResPoly) -> ResPoly {
    let ctx = g.ctx();
    let p = ctx.p();
    let n = ctx.nvars();
    let terms = g
        .terms()
        .iter()
        .filter_map(|&(m, c)| {
            let (quot, rem) = m.div_rem(p);
            (0..n).all(|i| rem.exp(i) == p - 1).then_some((quot, c))
        })
        .collect();
    // a -> (a - (p-1))/p is strictly monotone for graded-lex on the
    // selected class, so the order survives.
    ResPoly::from_sorted_unchecked(ctx, terms)
}

/// The decomposition g = Σ_b x^b g_b^p over residue classes b ∈ {0..p-1}^N,
/// returned as the nonzero g_b keyed by b.
///
/// Since u(F_*(x^e g)) = g_{(p-1)-e}, the set {u(F_*(x^e g))} over all
/// multipliers e in the box is exactly this list of components.
pub fn frobenius_components(g: &ResPoly) -> Vec<(Monomial, ResPoly)> {
    let ctx = g.ctx();
    let p = ctx.p();
    let mut classes: FxHashMap<Monomial, Vec<(Monomial, u32)>> = FxHashMap::default();
    for &(m, c) in g.terms() {
        let (quot, rem) = m.div_rem(p);
        classes.entry(rem).or_default().push((quot, c));
    }
    let mut out: Vec<(Monomial, ResPoly)> = classes
        .into_iter()
        .map(|(rem, terms)| (rem, ResPoly::from_sorted_unchecked(ctx, terms)))
        .collect();
    out.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
    out
}

/// Iterates over the box {0..p-1}^N in descending graded-lex order.
pub fn multiplier_box(ctx: &Context) -> Vec<Monomial> {
    let p = ctx.p();
    let n = ctx.nvars();
    let mut out = Vec::with_capacity((p as usize).pow(n as u32));
    let mut exps = [0u32; MAX_VARS];
    loop {
        out.push(Monomial::new(&exps[..n]).expect("box exponents are small"));
        let mut i = 0;
        loop {
            if i == n {
                out.sort_unstable_by(|a, b| b.cmp(a));
                return out;
            }
            exps[i] += 1;
            if exps[i] < p {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

/// True iff every term of `g` lies in (x_1^{p^e}, ..., x_N^{p^e}).
pub fn member_frobenius_power(g: &ResPoly, e: u32) -> bool {
    assert!(e >= 1, "Frobenius power exponent must be positive");
    let q = frobenius_bound(g.ctx().p(), e);
    g.terms().iter().all(|(m, _)| m.has_exponent_at_least(q))
}

/// p^e, saturating: once it exceeds every representable exponent the
/// ideal contains nothing we can build.
pub(crate) fn frobenius_bound(p: u32, e: u32) -> u64 {
    (p as u64).checked_pow(e).unwrap_or(u64::MAX)
}

/// Finitely generated ideal of F_p[x_1..x_N], stored as the reduced row
/// echelon basis of the F_p-span of its generators.
#[derive(Clone, PartialEq, Eq)]
pub struct ResIdeal {
    ctx: Arc<Context>,
    gens: Vec<ResPoly>,
    degree_bound: u64,
}

impl ResIdeal {
    pub fn new<'a, I>(ctx: &Arc<Context>, gens: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a ResPoly>,
    {
        let mut basis = EchelonBasis::new(ctx);
        for g in gens {
            basis.insert(g)?;
        }
        Ok(Self::from_basis(ctx, basis))
    }

    fn from_basis(ctx: &Arc<Context>, basis: EchelonBasis) -> Self {
        let gens = basis.finish();
        let degree_bound = gens
            .iter()
            .filter_map(|g| g.total_degree())
            .max()
            .unwrap_or(0);
        ResIdeal {
            ctx: ctx.clone(),
            gens,
            degree_bound,
        }
    }

    pub fn zero(ctx: &Arc<Context>) -> Self {
        ResIdeal {
            ctx: ctx.clone(),
            gens: Vec::new(),
            degree_bound: 0,
        }
    }

    pub fn unit(ctx: &Arc<Context>) -> Self {
        Self::principal(&ResPoly::one(ctx))
    }

    pub fn principal(g: &ResPoly) -> Self {
        Self::new(g.ctx(), [g]).expect("a single generator fits any limit")
    }

    pub fn ctx(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn gens(&self) -> &[ResPoly] {
        &self.gens
    }

    pub fn degree_bound(&self) -> u64 {
        self.degree_bound
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Image of the ideal under u: generated by u(F_*(x^e g)) over all
    /// generators g and multipliers e ∈ {0..p-1}^N.
    pub fn u_image(&self) -> Result<ResIdeal> {
        let components: Vec<Vec<(Monomial, ResPoly)>> =
            self.gens.par_iter().map(frobenius_components).collect();
        let mut basis = EchelonBasis::new(&self.ctx);
        for comps in &components {
            for (_, c) in comps {
                basis.insert(c)?;
            }
        }
        Ok(Self::from_basis(&self.ctx, basis))
    }

    pub fn mul_poly(&self, g: &ResPoly) -> Result<ResIdeal> {
        Context::check(&self.ctx, g.ctx())?;
        let products: Vec<ResPoly> = self
            .gens
            .par_iter()
            .map(|h| h.checked_mul(g))
            .collect::<Result<_>>()?;
        ResIdeal::new(&self.ctx, &products)
    }

    /// (J * g) modulo (x_1^q, ..., x_N^q).
    pub fn mul_poly_truncated(&self, g: &ResPoly, q: u64) -> Result<ResIdeal> {
        Context::check(&self.ctx, g.ctx())?;
        let products: Vec<ResPoly> = self
            .gens
            .par_iter()
            .map(|h| h.mul_truncated(g, q))
            .collect::<Result<_>>()?;
        ResIdeal::new(&self.ctx, &products)
    }

    pub fn add(&self, other: &ResIdeal) -> Result<ResIdeal> {
        Context::check(&self.ctx, &other.ctx)?;
        ResIdeal::new(&self.ctx, self.gens.iter().chain(&other.gens))
    }

    pub fn add_principal(&self, g: &ResPoly) -> Result<ResIdeal> {
        Context::check(&self.ctx, g.ctx())?;
        ResIdeal::new(&self.ctx, self.gens.iter().chain(std::iter::once(g)))
    }

    /// Drops every term in (x_1^q, ..., x_N^q) from every generator. The
    /// result generates the image of the ideal modulo that monomial ideal.
    pub fn truncate_frobenius(&self, q: u64) -> Result<ResIdeal> {
        let cut: Vec<ResPoly> = self.gens.iter().map(|g| g.truncate_frobenius(q)).collect();
        ResIdeal::new(&self.ctx, &cut)
    }

    /// J ⊆ 𝔪^{[p^e]}, tested generator by generator.
    pub fn in_frobenius_power(&self, e: u32) -> bool {
        self.gens.iter().all(|g| member_frobenius_power(g, e))
    }

    /// Whether `g` is an F_p-linear combination of the generators. This is a
    /// sufficient, not necessary, test for ideal membership.
    pub fn span_contains(&self, g: &ResPoly) -> bool {
        let mut basis = EchelonBasis::new(&self.ctx);
        for h in &self.gens {
            basis
                .insert(h)
                .expect("re-inserting a reduced basis stays within limits");
        }
        basis.contains(g)
    }
}

impl fmt::Debug for ResIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ResIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}
