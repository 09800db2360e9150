//! Exact computations around the Heisenberg covering of the Fermat curve.
//!
//! The crate is organised bottom-up:
//!
//! * [`words`]: reduced words in the free group `Γ̄(2) = ⟨A, B⟩`.
//! * [`nilpotent`]: collection into the free class-3 nilpotent quotient, the
//!   maps `φ₂`, `ψ`, `ψ̄` and membership in `Φ_N ⊃ Φ′_N ⊃ Φ″_N`.
//! * [`heisenberg`]: the finite groups `H_{M,N,L}`.
//! * [`perm`] and [`curves`]: permutation actions, Riemann–Hurwitz, closed-form
//!   genera, cusp widths and the level/index congruence test.
//! * [`zlinalg`]: Hermite and Smith normal forms over `ℤ`.
//! * [`homology`]: the modular-symbol presentation of `H₁(X′_N; ℤ)`.
//! * [`cuspidal`]: the cuspidal divisor class group of the Fermat curve.
//! * [`cyclotomic`]: exact arithmetic in `ℤ[μ_N]`.
//! * [`psl2`]: finite-level images in `PSL₂(ℤ/n)`.
//! * [`dessin`]: bipartite ribbon graphs attached to coset actions.

pub mod curves;
pub mod cuspidal;
pub mod cyclotomic;
pub mod dessin;
mod error;
mod json;
pub mod heisenberg;
pub mod homology;
pub mod nilpotent;
pub mod perm;
pub mod psl2;
pub mod words;
pub mod zlinalg;

pub use error::{Error, Result};
