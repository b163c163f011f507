//! Exact-arithmetic coherence checking for desirable gambles over polynomials.
//!
//! Gambles are polynomials in the coordinates `θ₁, …, θₙ` of the probability
//! simplex. "Nonnegative" means certified by a Krivine-Vasilescu product of
//! constraints; on the simplex this is the cone of Bernstein-nonnegative
//! polynomials of a fixed degree. Everything is computed over exact rationals.

pub mod bernstein;
pub mod coherence;
pub mod error;
pub mod grid;
pub mod json;
pub mod kv_cone;
pub mod lp;
pub mod moment;
pub mod polynomial;

pub use error::{Error, Result};
pub use polynomial::{MultiIndex, Polynomial, Rational};
