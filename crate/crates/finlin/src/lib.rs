//! Exact computations with finite-dimensional algebras and their module
//! categories: intertwiner spaces, tensor products over algebras, functor
//! representations by bimodules, Nakayama functors, ends and coends,
//! Frobenius classification, and Hopf-algebra Radford checks. Everything is
//! exact linear algebra over Q or a prime field, and every positive answer
//! is backed by a witness matrix that re-verifies.

pub mod algebra;
pub mod error;
pub mod exact;
pub mod frobenius;
pub mod functor;
pub mod hopf;
pub mod io;
pub mod limits;
pub mod modrep;

pub use error::FinlinError;
