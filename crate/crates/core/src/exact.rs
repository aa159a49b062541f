//! Exact integer and rational arithmetic.
//!
//! Every value here is an arbitrary-precision integer or a reduced fraction of
//! two such integers. `num_rational::BigRational` normalizes after every
//! operation, so any `Rational` that leaves this module is in lowest terms
//! with a positive denominator.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

/// Lift an integer into the rationals.
pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// `num / den` as a reduced rational. Panics on a zero denominator.
pub fn frac(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
    Rational::new(num.into(), den.into())
}

/// `n!` by iterated product.
pub fn factorial(n: u64) -> Integer {
    (2..=n).fold(Integer::one(), |acc, i| acc * i)
}

/// Falling-factorial binomial, total on all integer pairs.
///
/// `b < 0` gives 0; otherwise `a (a-1) ... (a-b+1) / b!`, which vanishes for
/// `0 <= a < b` and follows the generalized definition for negative `a`.
pub fn binomial(a: i64, b: i64) -> Integer {
    if b < 0 {
        return Integer::zero();
    }
    if a >= 0 && b > a {
        return Integer::zero();
    }
    // symmetric shortcut only valid for the ordinary range
    let b = if a >= 0 && b > a - b { a - b } else { b };
    let mut acc = Integer::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// `(4k)! / k!^4`, the multinomial coefficient with four equal parts.
pub fn multinomial4(k: u64) -> Integer {
    let kf = factorial(k);
    let k2 = &kf * &kf;
    factorial(4 * k) / (&k2 * &k2)
}

/// Exact power with integer exponent; negative exponents invert.
pub fn pow_rational(base: &Rational, exponent: i64) -> Result<Rational> {
    if exponent < 0 && base.is_zero() {
        return Err(Error::ZeroToNegativePower);
    }
    let magnitude = num_traits::pow(base.clone(), exponent.unsigned_abs() as usize);
    Ok(if exponent < 0 {
        magnitude.recip()
    } else {
        magnitude
    })
}

/// `(-1)^e` for a signed exponent.
pub fn sign_pow(e: i64) -> Integer {
    if e.rem_euclid(2) == 0 {
        Integer::one()
    } else {
        -Integer::one()
    }
}

/// Exact `2^e`, possibly fractional.
pub fn pow2(e: i64) -> Rational {
    pow_rational(&int(2), e).expect("nonzero base")
}

/// Exact `4^e`, possibly fractional.
pub fn pow4(e: i64) -> Rational {
    pow_rational(&int(4), e).expect("nonzero base")
}

/// True when the rational is stored in lowest terms with a positive denominator.
pub fn is_reduced(r: &Rational) -> bool {
    r.denom().is_positive() && r.numer().abs().gcd(r.denom()).is_one()
}

/// `"num/den"`, or just `"num"` when the denominator is 1.
pub fn fraction_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn product_oracle(n: u64) -> u128 {
        (1..=n as u128).product()
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), Integer::from(1));
        assert_eq!(factorial(1), Integer::from(1));
        assert_eq!(factorial(5), Integer::from(120));
        for n in 0..30 {
            assert_eq!(factorial(n), Integer::from(product_oracle(n)));
        }
    }

    #[test]
    fn binomial_conventions() {
        assert_eq!(binomial(4, 2), Integer::from(6));
        assert_eq!(binomial(1, 2), Integer::from(0));
        assert_eq!(binomial(-1, 1), Integer::from(-1));
        assert_eq!(binomial(3, -1), Integer::from(0));
        // (-1 choose k) = (-1)^k, (-2 choose 3) = -4
        for k in 0..10 {
            assert_eq!(binomial(-1, k), sign_pow(k));
        }
        assert_eq!(binomial(-2, 3), Integer::from(-4));
        assert_eq!(binomial(-1, -1), Integer::from(0));
    }

    #[test]
    fn pascal_rule() {
        for a in 1..=60i64 {
            for b in 0..=a {
                assert_eq!(
                    binomial(a, b),
                    binomial(a - 1, b - 1) + binomial(a - 1, b),
                    "a={a} b={b}"
                );
            }
        }
    }

    #[test]
    fn multinomial4_values() {
        assert_eq!(multinomial4(0), Integer::from(1));
        assert_eq!(multinomial4(1), Integer::from(24));
        assert_eq!(multinomial4(2), Integer::from(2520));
        for k in 0..=30i64 {
            let expected = binomial(4 * k, 2 * k) * binomial(2 * k, k) * binomial(2 * k, k);
            assert_eq!(multinomial4(k as u64), expected);
        }
    }

    #[test]
    fn pow_rational_values() {
        assert_eq!(pow_rational(&int(4), -1).unwrap(), frac(1, 4));
        assert_eq!(pow_rational(&int(-64), 2).unwrap(), int(4096));
        assert_eq!(pow_rational(&frac(-3, 7), 0).unwrap(), int(1));
        assert_eq!(pow_rational(&frac(-2, 3), -3).unwrap(), frac(-27, 8));
        assert!(matches!(
            pow_rational(&int(0), -2),
            Err(Error::ZeroToNegativePower)
        ));
        assert_eq!(pow_rational(&int(0), 0).unwrap(), int(1));
    }

    #[test]
    fn fraction_strings() {
        assert_eq!(fraction_string(&frac(-54, 16)), "-27/8");
        assert_eq!(fraction_string(&int(7)), "7");
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-1000i64..1000, 1i64..1000).prop_map(|(n, d)| frac(n, d))
    }

    proptest! {
        #[test]
        fn field_laws(a in small_rational(), b in small_rational(), c in small_rational()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            prop_assert!(is_reduced(&(&a + &b)));
            prop_assert!(is_reduced(&(&a * &c)));
            prop_assert!(is_reduced(&(&a - &b)));
            if !b.is_zero() {
                prop_assert!(is_reduced(&(&a / &b)));
                prop_assert_eq!(&(&a / &b) * &b, a.clone());
            }
        }

        #[test]
        fn pow_reduced(a in small_rational(), e in -6i64..6) {
            if let Ok(r) = pow_rational(&a, e) {
                prop_assert!(is_reduced(&r));
            }
        }
    }
}
