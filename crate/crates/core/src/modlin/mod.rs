//! Exact integer linear algebra, lattices, and `GL_n(p)` arithmetic.

mod expanding;
mod fp;
mod lattice;
mod matrix;

pub use expanding::{
    characteristic_polynomial, eigenvalue_moduli, is_expanding, polynomial_roots, Expansion,
    DEFAULT_EXPANSION_TOL,
};
pub use fp::{euler_phi, gl_inverse_mod, is_prime, order_mod, FpMatrix};
pub(crate) use fp::require_prime;
pub use lattice::{smith_left, CosetTransversal, SmithLeft};
pub use matrix::{IntMatrix, IntVector, ScaledIntMatrix};
pub(crate) use matrix::{big_to_f64, rat_to_f64};

/// Transversal of `Z^n / M^* Z^n`.
pub fn coset_transversal(m: &IntMatrix) -> crate::Result<CosetTransversal> {
    CosetTransversal::new(&m.transpose())
}
