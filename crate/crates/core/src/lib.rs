//! Exact computations for the compact-Cartan picture of `Sp6(R)`.
//!
//! The crate covers the `C3` root system and its Weyl group, explicit
//! `6 x 6` root vectors over the Gaussian rationals, the character ring of
//! `U(3)`, the wedge-tensor spaces `Λ^p p+ ⊗ Λ^q p-` with the adjoint action
//! of `k`, discrete-series packets, degree-8 Spin L-factors with archimedean
//! Γ-factors, and a numerical check of the one-variable Bochner-Martinelli
//! operator on the punctured disc.

pub mod bmquad;
pub mod error;
pub mod lfunc;
pub mod matlie;
pub mod packets;
pub mod rootsys;
pub mod uchar;
pub mod wedge;

pub use error::{Error, Result};
pub use rootsys::{Root, RootKind, SignedPermutation, Weight};
