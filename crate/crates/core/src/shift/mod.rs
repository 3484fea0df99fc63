//! The `ℓ²(ℕ)` side: Chebyshev polynomials of the semicircle law, truncated
//! shifts, and the identities relating them to the cup block.

pub mod checks;
pub mod lemma;
pub mod matrix;
pub mod poly;
pub mod quadrature;
pub mod transport;

pub use checks::{check_psi_intertwining, telescoping_check, vi_identity_check, ShiftError};
pub use lemma::{lemma_ri, r_function_min};
pub use matrix::{Field, Mat, ShiftTruncation};
pub use poly::{chebyshev, inner_nu, orthonormality_check, semicircle_moment, IntPoly};
pub use quadrature::quadrature_crosscheck;
pub use transport::moment_crosscheck;
