//! Reshetikhin–Turaev invariants of oriented Seifert fibered 3-manifolds.
//!
//! The crate is layered bottom-up:
//!
//! * [`sl2z`] – exact integer layer: continued fractions, convergent matrices,
//!   Dedekind sums, the Rademacher Φ function and linking-matrix signatures.
//! * [`modular`] – numeric modular data (S, T, dimensions, rank) and the
//!   unitary PSL(2,ℤ) representation attached to sl₂ at level r − 2.
//! * [`seifert`] – Seifert invariants, normalization, equivalence and lens spaces.
//! * [`invariants`] – the independent evaluation routes for τ_r.

pub mod error;
pub mod invariants;
pub mod modular;
pub mod phase;
pub mod seifert;
pub mod sl2z;

pub use error::{Error, Result};
pub use invariants::{InvariantResult, Method};
pub use modular::ModularDatum;
pub use seifert::{Base, Fiber, LensSpace, SeifertData};
pub use sl2z::{CfStyle, ContinuedFraction, Sl2z};
