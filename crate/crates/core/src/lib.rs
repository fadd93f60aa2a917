//! Exact evaluation of genus-zero integrals of Chiodo classes.
//!
//! The crate computes ψ/κ intersection numbers on genus-zero moduli of
//! stable curves, sums the local contributions of Chiodo classes over stable
//! trees, evaluates the vanishing relations they satisfy, compares them with
//! closed-form one-descendant formulas, and cross-checks double Hurwitz
//! numbers computed from a Fock-space operator algebra, the symmetric group
//! and an ELSV-type integral.
//!
//! All arithmetic is exact over arbitrary-precision rationals.

pub mod closed_forms;
pub mod error;
pub mod exact;
pub mod genus0;
pub mod hurwitz;
pub mod omega;
pub mod par;
pub mod tr;

pub use error::{Error, Result};
pub use exact::{Rational, UniPoly};
