//! Arithmetic and factorization in `F_q[T]`.

mod factor;
mod poly;

pub use factor::{current_seed, factor, factor_with_seed, with_seed, is_irreducible, monic_irreducibles, Factorization, DEFAULT_SEED};
pub use poly::Poly;
