//! Genus-zero integrals of Chiodo classes, summed over stable trees.

mod descendant;
mod engine;
pub mod local;
mod spec;
mod weights;

pub use descendant::{descendant_polynomial, descendant_polynomial_with, Denominator, DescendantPolynomial};
pub use engine::{omega_psi_integral, OmegaEngine, Strategy};
pub use local::omega_local_integrand;
pub use spec::{omega_degree_bound, OmegaSpec};
pub use weights::{edge_weights, side_weight, EdgeWeighting};
