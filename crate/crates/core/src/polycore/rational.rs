use num_bigint::BigInt;
use num_traits::One;

/// Arbitrary-precision fraction, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for `numer/denom` as a [`Rational`]. Panics on a zero denominator.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn factorial(n: u32) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    Rational::from_integer(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{Signed, Zero};

    #[test]
    fn canonical_form() {
        let q = rat(6, -4);
        assert_eq!(*q.numer(), BigInt::from(-3));
        assert_eq!(*q.denom(), BigInt::from(2));
        let z = rat(0, 7);
        assert!(z.is_zero());
        assert_eq!(*z.denom(), BigInt::one());
        assert!(rat(-5, -10).is_positive());
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), rat(1, 1));
        assert_eq!(factorial(3), rat(6, 1));
        assert_eq!(
            factorial(20),
            Rational::from_integer(BigInt::from(2_432_902_008_176_640_000i64))
        );
    }
}
