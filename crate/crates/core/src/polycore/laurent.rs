use std::fmt;

use super::{check_same_ring, PolyError, Polynomial, Rational};

/// `numerator / var^power` in the localization at a single variable.
///
/// Always normalized: either `power == 0` or `var` fails to divide some term
/// of the numerator. Zero is stored as `0 / var^0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentElement {
    numerator: Polynomial,
    var: usize,
    power: u32,
}

impl LaurentElement {
    pub fn new(numerator: Polynomial, var: &str, power: u32) -> Result<Self, PolyError> {
        let index = numerator.ring().var_index(var)?;
        Ok(Self::normalized(numerator, index, power))
    }

    pub fn from_polynomial(p: Polynomial, var: usize) -> Self {
        LaurentElement {
            numerator: p,
            var,
            power: 0,
        }
    }

    pub(crate) fn normalized(numerator: Polynomial, var: usize, power: u32) -> Self {
        if numerator.is_zero() {
            return LaurentElement {
                numerator,
                var,
                power: 0,
            };
        }
        let cancel = numerator.var_valuation(var).min(power);
        let numerator = if cancel > 0 {
            numerator
                .exact_divide_by_power(var, cancel)
                .expect("valuation bounds the division")
        } else {
            numerator
        };
        LaurentElement {
            numerator,
            var,
            power: power - cancel,
        }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn var_index(&self) -> usize {
        self.var
    }

    pub fn var_name(&self) -> &str {
        self.numerator.ring().var_name(self.var)
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.power == 0 && self.numerator == Polynomial::one(self.numerator.ring())
    }

    /// The element as a polynomial, when the denominator has cancelled.
    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        (self.power == 0).then_some(&self.numerator)
    }

    /// Picks the shared denominator variable. An element with `power == 0`
    /// is a plain polynomial and adapts to the other side.
    fn common_var(&self, other: &Self) -> Result<usize, PolyError> {
        check_same_ring(self.numerator.ring(), other.numerator.ring())?;
        if self.var == other.var || other.power == 0 {
            Ok(self.var)
        } else if self.power == 0 {
            Ok(other.var)
        } else {
            Err(PolyError::MixedDenominators(
                self.var_name().into(),
                other.var_name().into(),
            ))
        }
    }

    fn lifted(&self, var: usize, power: u32) -> Polynomial {
        let shift = power - self.power;
        if shift == 0 {
            return self.numerator.clone();
        }
        let ring = self.numerator.ring();
        &self.numerator * &Polynomial::var(ring, var).pow(shift)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        let var = self.common_var(other)?;
        let power = self.power.max(other.power);
        let sum = self.lifted(var, power).try_add(&other.lifted(var, power))?;
        Ok(Self::normalized(sum, var, power))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        let var = self.common_var(other)?;
        let product = self.numerator.try_mul(&other.numerator)?;
        Ok(Self::normalized(product, var, self.power + other.power))
    }

    pub fn pow(&self, n: u32) -> Result<Self, PolyError> {
        Ok(Self::normalized(self.numerator.try_pow(n)?, self.var, self.power * n))
    }

    pub fn neg(&self) -> Self {
        LaurentElement {
            numerator: -&self.numerator,
            var: self.var,
            power: self.power,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::normalized(self.numerator.scale(c), self.var, self.power)
    }

    pub fn one_over_var(ring: &std::sync::Arc<super::Ring>, var: usize) -> Self {
        LaurentElement {
            numerator: Polynomial::one(ring),
            var,
            power: 1,
        }
    }

    /// `self * var^power`, which must be a polynomial when `power >= self.power`.
    pub fn clear_denominator(&self, power: u32) -> Option<Polynomial> {
        (power >= self.power).then(|| self.lifted(self.var, power))
    }
}

impl fmt::Display for LaurentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.power {
            0 => write!(f, "{}", self.numerator),
            1 => write!(f, "({})/{}", self.numerator, self.var_name()),
            k => write!(f, "({})/{}^{}", self.numerator, self.var_name(), k),
        }
    }
}
