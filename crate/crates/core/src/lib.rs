//! Quantum invariants of links and 3-manifolds from the unrolled quantum
//! group of sl(2) at the root of unity `q = exp(iπ/r)`.
//!
//! The crate is `no_std` (it needs `alloc`). Enable the `parallel` feature to
//! spread braid-closure columns over a rayon pool; reductions always happen
//! in a fixed order, so results do not depend on the thread count.
//!
//! Layout:
//! - [`qcore`]: root-of-unity arithmetic, modified dimension, Kirby colors,
//!   normalization constants.
//! - [`reps`]: matrix models of `S_n`, `V_α` and `τ`.
//! - [`ribbon`]: R-matrix, braiding, twist, duality and partial traces.
//! - [`links`]: braid words, closures, cabling, linking matrices.
//! - [`invariants`]: brackets, `F`, `F'`, colored Jones (two routes) and the
//!   3-manifold invariants.
//! - [`verify`]: executable identity checks returning [`verify::CheckReport`]s.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod error;
pub mod invariants;
pub mod linalg;
pub mod links;
pub mod qcore;
pub mod reps;
pub mod ribbon;
pub mod verify;

pub use error::{Error, Result};
pub use invariants::manifold::{ComponentRole, Triple};
pub use links::{BraidWord, Color, ColoredBraidClosure, LinkingData};
pub use qcore::{Degree, FormalColor, QParams};
pub use reps::{ModuleKind, WeightModule};
pub use ribbon::SparseOperator;

/// Every invariant value is a double-precision complex number.
pub type Scalar = num_complex::Complex64;

/// Default relative tolerance for scalar comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

/// `|a - b| / max(1, |a|, |b|)`.
pub fn rel_err(a: Scalar, b: Scalar) -> f64 {
    (a - b).norm() / 1f64.max(a.norm()).max(b.norm())
}
