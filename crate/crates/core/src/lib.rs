//! Frobenius splitting invariants of graded quotients of polynomial rings
//! over prime fields, and their behavior under finite covers.

pub mod covers;
pub mod divisor;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod frobenius;
pub mod ideal;
pub mod matrix;
pub mod oracle;
pub mod pairing;
pub mod pairs;
pub mod parse;
pub mod poly;
pub mod quotient;
pub mod rational;
pub mod suite;

pub use error::{Error, Result};
pub use field::PrimeField;
pub use ideal::Ideal;
pub use matrix::FpMatrix;
pub use poly::{Monomial, MonomialOrder, Poly, PolyRing, Ring};
pub use quotient::QuotientPresentation;
pub use rational::Q;
