//! Splitting-order sequences of hypersurfaces over W(F_p)[[x_1, ..., x_N]],
//! perfectoid purity verdicts, and perfectoid pure thresholds.
//!
//! An input f is handled through its class modulo p^2 ([`LiftPoly`]).
//! [`ladder::splitting_sequence`] computes s(f) through the ideals
//! I(l_1, ..., l_n) of A/pA, and [`verdict`] turns a sequence into a
//! verdict and an exact rational threshold.

pub mod context;
pub mod delta;
pub mod echelon;
pub mod error;
pub mod ideal;
pub mod ladder;
pub mod monomial;
pub mod poly;
pub mod verdict;

pub use context::{Context, Limits};
pub use delta::{delta, HypersurfaceInput};
pub use error::{Error, Result};
pub use ideal::{member_frobenius_power, u_single, ResIdeal};
pub use ladder::{splitting_sequence, LadderIndex, LadderOptions, SplitSequence};
pub use monomial::Monomial;
pub use poly::{LiftPoly, ResPoly};
pub use verdict::{analyze, classify, Analysis, PptValue, Rational, Verdict};
