//! Ambient data shared by every polynomial: the prime, the variables, and
//! the resource caps used by the ideal engine.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub const MAX_VARS: usize = 6;
pub const MAX_PRIME: u32 = 13;
/// Upper bound on p^N, the size of the Frobenius basis box.
pub const MAX_BOX_SIZE: u64 = 20_000;

/// Caps enforced by the echelon workspace.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Distinct monomials alive in one echelon workspace.
    pub max_monomials: usize,
    /// Generators accepted by one echelon workspace (its rank).
    pub max_generators: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_monomials: 500_000,
            max_generators: 10_000,
        }
    }
}

pub struct Context {
    p: u32,
    names: Vec<String>,
    limits: Limits,
}

impl Context {
    pub fn new<S: AsRef<str>>(p: u32, names: &[S]) -> Result<Arc<Context>> {
        Self::with_limits(p, names, Limits::default())
    }

    pub fn with_limits<S: AsRef<str>>(p: u32, names: &[S], limits: Limits) -> Result<Arc<Context>> {
        if !(2..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidContext(format!(
                "p = {p} must be a prime between 2 and {MAX_PRIME}"
            )));
        }
        if names.is_empty() || names.len() > MAX_VARS {
            return Err(Error::InvalidContext(format!(
                "between 1 and {MAX_VARS} variables are supported, got {}",
                names.len()
            )));
        }
        let box_size = (p as u64).pow(names.len() as u32);
        if box_size > MAX_BOX_SIZE {
            return Err(Error::InvalidContext(format!(
                "p^N = {box_size} exceeds the supported cap {MAX_BOX_SIZE}"
            )));
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::InvalidContext(format!(
                    "`{name}` is not a valid variable name"
                )));
            }
            if name == "p" {
                return Err(Error::InvalidContext(
                    "`p` is reserved for the prime".to_string(),
                ));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidContext(format!("duplicate variable `{name}`")));
            }
        }
        Ok(Arc::new(Context { p, names, limits }))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    /// Coefficient modulus p^k for k = 1 (residue ring) or 2 (lift ring).
    pub fn modulus(&self, k: u32) -> u32 {
        self.p.pow(k)
    }

    pub fn same(a: &Arc<Context>, b: &Arc<Context>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }

    pub fn check(a: &Arc<Context>, b: &Arc<Context>) -> Result<()> {
        if Self::same(a, b) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }
}

// Limits do not participate: they only bound work, never change values.
impl PartialEq for Context {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.names == other.names
    }
}

impl Eq for Context {}

impl fmt::Debug for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Context(p={}, vars={:?})", self.p, self.names)
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
