//! Genus fields of abelian extensions of the rational function field
//! `F_q(T)`.

pub mod chargroup;
pub mod error;
pub mod fq;
pub mod genus;
pub mod linalg;
pub mod par;
pub mod parse;
pub mod polyring;
pub mod ratfunc;
pub mod selftest;
pub mod witt;

pub use error::{Error, Result};
pub use fq::{Field, FieldSpec, FqElem};
pub use polyring::{factor, Factorization, Poly};
pub use ratfunc::{PartialFractionForm, RatFunc};
