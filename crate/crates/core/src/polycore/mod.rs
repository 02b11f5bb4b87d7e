//! Exact sparse multivariate polynomials over the rationals.
//!
//! Everything here is immutable once built. A [`Polynomial`] carries a shared
//! handle to its [`Ring`], and binary operations check that both operands live
//! in the same ring. The `try_*` methods report mismatches as [`PolyError`];
//! the operator impls (`&a * &b`, ...) panic instead and are meant for code
//! that already knows its operands agree.

mod laurent;
mod map;
mod monomial;
mod polynomial;
mod rational;
mod ring;

pub use laurent::LaurentElement;
pub use map::{Point, RingMap};
pub use monomial::Monomial;
pub use polynomial::{Homogeneity, Polynomial};
pub use rational::{factorial, rat, Rational};
pub use ring::{is_valid_var_name, Ring, DEFAULT_EXPONENT_CAP};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("ring mismatch: [{left}] vs [{right}]")]
    RingMismatch { left: String, right: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("invalid variable name `{0}`")]
    InvalidVariableName(String),
    #[error("weights must cover every variable ({vars} variables, {weights} weights)")]
    WeightCount { vars: usize, weights: usize },
    #[error("weights must be positive")]
    NonPositiveWeight,
    #[error("ring `{0}` carries no grading")]
    NoGrading(String),
    #[error("exponent {exponent} exceeds the cap {cap}")]
    ExponentOverflow { exponent: u64, cap: u32 },
    #[error("monomial has {got} exponents, ring has {expected} variables")]
    ArityMismatch { expected: usize, got: usize },
    #[error("not divisible by {var}^{power}: term `{witness}`")]
    NotDivisible { var: String, power: u32, witness: String },
    #[error("mixed denominator variables `{0}` and `{1}`")]
    MixedDenominators(String, String),
    #[error("division by zero")]
    DivisionByZero,
}

pub fn check_same_ring(a: &std::sync::Arc<Ring>, b: &std::sync::Arc<Ring>) -> Result<(), PolyError> {
    if std::sync::Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(PolyError::RingMismatch {
            left: a.vars().join(","),
            right: b.vars().join(","),
        })
    }
}
