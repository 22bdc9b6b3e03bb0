//! Exact symbolic computation with the Jordanian quantum group `SL_h(2)` /
//! `GL_h(2)` and the representation functions ("D-functions") of its
//! finite-dimensional corepresentations.

pub mod error;
pub mod dfun;
pub mod exprio;
pub mod fock;
pub mod hopfcheck;
pub mod ncalg;
pub mod rep;
pub mod scalar;
pub mod suite;

pub use error::Error;
pub use ncalg::{Generator, Monomial, NCPoly, Ring};
pub use scalar::{DeformPoly, RadScalar, Rational};
