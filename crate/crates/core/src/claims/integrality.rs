use num_bigint::BigInt;
use num_traits::Zero;

use crate::exact::{binomial, multinomial4, Integer, Rational};
use crate::sequences::is_power_of_three;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralityReport {
    pub n: u64,
    pub value: Rational,
    pub denominator: Integer,
    pub conjecture_consistent: bool,
}

/// `S(n) = sum_{k<n} (7k+1) binom(4k;k,k,k,k) 648^{n-1-k} / (2n (2n+1) binom(2n,n))`,
/// expected to be an integer unless `2n+1` is a power of 3, where the
/// denominator is exactly 3.
pub fn integrality_check(n: u64) -> IntegralityReport {
    assert!(n >= 2, "integrality_check needs n >= 2");
    let mut numerator = Integer::zero();
    // Horner in 648: sum_{k<n} a_k 648^{n-1-k}
    for k in 0..n {
        numerator = numerator * 648u32 + Integer::from(7 * k + 1) * multinomial4(k);
    }
    let denominator =
        Integer::from(2 * n) * Integer::from(2 * n + 1) * binomial(2 * n as i64, n as i64);
    let value = Rational::new(numerator, denominator);
    let den = value.denom().clone();
    let expected = if is_power_of_three(2 * n + 1) {
        BigInt::from(3)
    } else {
        BigInt::from(1)
    };
    IntegralityReport {
        n,
        conjecture_consistent: den == expected,
        denominator: den,
        value,
    }
}
