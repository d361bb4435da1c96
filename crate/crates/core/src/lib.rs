//! Exact computation in Cohn algebras, Leavitt path algebras, and wreath
//! products `A wr L(Γ)` of a coefficient algebra by a Leavitt path algebra.

pub mod coeff;
pub mod action;
pub mod affinization;
pub mod cohn;
pub mod error;
pub mod expr;
pub mod graph;
pub mod linalg;
pub mod leavitt;
pub mod lincomb;
pub mod report;
pub mod scalar;
pub mod wreath;

pub use error::{Error, Result};
