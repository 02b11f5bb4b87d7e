//! Exact algebra for locally nilpotent derivations on polynomial rings.

pub mod parse;
pub mod polycore;

pub use parse::{parse_laurent, parse_polynomial, print_canonical, ParseError};
pub use polycore::{LaurentElement, Monomial, Point, PolyError, Polynomial, Rational, Ring, RingMap};

pub mod derivation;
pub mod exec;

pub use derivation::Derivation;
pub use exec::Execution;
pub mod groebner;
pub mod kernel;
pub mod paperlab;
