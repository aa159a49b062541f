//! Euler numbers, harmonic numbers, Fermat quotients, `(-1/p)` and primes.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{frac, Integer, Rational};
use crate::padic::Modulus;

/// `E_0, ..., E_{n_max}` from `E_0 = 1` and
/// `sum_{k even, 0 <= k <= n} binom(n, k) E_{n-k} = 0` for `n >= 1`.
pub fn euler_exact(n_max: usize) -> Vec<Integer> {
    let mut e: Vec<Integer> = Vec::with_capacity(n_max + 1);
    e.push(Integer::one());
    // row of Pascal's triangle for the current n
    let mut row: Vec<Integer> = vec![Integer::one()];
    for n in 1..=n_max {
        let mut next = Vec::with_capacity(n + 1);
        next.push(Integer::one());
        for k in 1..n {
            next.push(&row[k - 1] + &row[k]);
        }
        next.push(Integer::one());
        row = next;
        if n % 2 == 1 {
            e.push(Integer::zero());
            continue;
        }
        let mut s = Integer::zero();
        for k in (2..=n).step_by(2) {
            s += &row[k] * &e[n - k];
        }
        e.push(-s);
    }
    e
}

/// `E_0, ..., E_{n_max}` modulo `p`, by the same recurrence carried out mod `p`.
///
/// Binomials are stepped along each row with `binom(n, k) = binom(n, k-1) (n-k+1) / k`,
/// which needs `n < p` so every `k` is invertible.
pub fn euler_mod_p(p: u64, n_max: usize) -> Result<Vec<u64>> {
    let m = Modulus::new(p, 1)?;
    assert!((n_max as u64) < p, "euler_mod_p needs n_max < p");
    let inverses = inverse_table(m, n_max);
    let mut e = vec![0u64; n_max + 1];
    e[0] = 1;
    for n in (2..=n_max).step_by(2) {
        let mut binom = 1u64;
        let mut s = 0u64;
        for k in 1..=n {
            binom = m.mul(m.mul(binom, (n - k + 1) as u64), inverses[k]);
            if k % 2 == 0 {
                s = m.add(s, m.mul(binom, e[n - k]));
            }
        }
        e[n] = m.neg(s);
    }
    Ok(e)
}

/// `1/k mod p^j` for `k = 0..=n` (entry 0 unused), by the linear-time recurrence.
pub(crate) fn inverse_table(m: Modulus, n: usize) -> Vec<u64> {
    let mut inv = vec![0u64; n + 1];
    if n >= 1 {
        inv[1] = 1;
    }
    for k in 2..=n {
        inv[k] = if m.precision() == 1 {
            // inv[k] = -(p / k) * inv[p mod k]
            let p = m.p();
            m.neg(m.mul(p / k as u64, inv[(p % k as u64) as usize]))
        } else {
            m.inv(k as u64).expect("k < p")
        };
    }
    inv
}

/// `E_{p-3} mod p` for an odd prime `p >= 3`.
pub fn euler_p_minus_3(p: u64) -> Result<u64> {
    Ok(euler_mod_p(p, (p - 3) as usize)?[(p - 3) as usize])
}

/// `H_n = sum_{0 < k <= n} 1/k`.
pub fn harmonic(n: u64) -> Rational {
    (1..=n).fold(Rational::zero(), |acc, k| acc + frac(1, k))
}

/// Fermat quotient `(2^{p-1} - 1) / p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FermatQuotient {
    pub p: u64,
    pub q: Integer,
}

pub fn fermat_quotient2(p: u64) -> Result<FermatQuotient> {
    if p < 3 {
        return Err(Error::NonExactDivision { p });
    }
    let num = (BigInt::one() << (p - 1) as usize) - 1u32;
    let (q, r) = num.div_rem(&BigInt::from(p));
    if !r.is_zero() {
        return Err(Error::NonExactDivision { p });
    }
    Ok(FermatQuotient { p, q })
}

/// `(-1/p) = (-1)^{(p-1)/2}` for odd `p`.
pub fn legendre_minus_one(p: u64) -> i64 {
    if p % 4 == 1 {
        1
    } else {
        -1
    }
}

/// Ascending primes in `[lo, hi]` by a sieve of Eratosthenes.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 2 || lo > hi {
        return Vec::new();
    }
    let n = hi as usize;
    let mut composite = vec![false; n + 1];
    let mut i = 2;
    while i * i <= n {
        if !composite[i] {
            for j in (i * i..=n).step_by(i) {
                composite[j] = true;
            }
        }
        i += 1;
    }
    (lo.max(2)..=hi)
        .filter(|&k| !composite[k as usize])
        .collect()
}

/// Power of 3 test used by the integrality conjecture.
pub fn is_power_of_three(mut n: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n.is_multiple_of(3) {
        n /= 3;
    }
    n == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use crate::padic::residue_of_rational;

    #[test]
    fn euler_exact_values() {
        let e = euler_exact(10);
        let expected = [1i64, 0, -1, 0, 5, 0, -61, 0, 1385, 0, -50521];
        for (n, want) in expected.iter().enumerate() {
            assert_eq!(e[n], Integer::from(*want), "E_{n}");
        }
        assert_eq!(euler_exact(0), vec![Integer::one()]);
    }

    #[test]
    fn euler_exact_satisfies_recurrence() {
        let e = euler_exact(40);
        for n in 1..=40i64 {
            let s: Integer = (0..=n)
                .step_by(2)
                .map(|k| crate::exact::binomial(n, k) * &e[(n - k) as usize])
                .sum();
            assert!(s.is_zero(), "n={n}");
        }
        for n in (1..=40).step_by(2) {
            assert!(e[n].is_zero());
        }
    }

    #[test]
    fn euler_mod_examples() {
        assert_eq!(euler_mod_p(5, 2).unwrap()[2], 4);
        assert_eq!(euler_mod_p(7, 4).unwrap()[4], 5);
        for p in [5u64, 11, 13] {
            let e = euler_mod_p(p, (p - 1) as usize).unwrap();
            for n in (1..p as usize).step_by(2) {
                assert_eq!(e[n], 0);
            }
        }
    }

    #[test]
    fn euler_mod_matches_exact() {
        let exact = euler_exact(46);
        for p in primes_in(3, 50) {
            let n_max = 40.min(p as usize - 1);
            let e = euler_mod_p(p, n_max).unwrap();
            for n in 0..=n_max {
                let r =
                    residue_of_rational(&Rational::from_integer(exact[n].clone()), p, 1).unwrap();
                assert_eq!(e[n], r, "p={p} n={n}");
            }
        }
    }

    #[test]
    fn inverse_table_is_correct() {
        for p in [3u64, 7, 101] {
            for k in 1..=3 {
                let m = Modulus::new(p, k).unwrap();
                let inv = inverse_table(m, p as usize - 1);
                for (j, x) in inv.iter().enumerate().skip(1) {
                    assert_eq!(m.mul(*x, j as u64), 1);
                }
            }
        }
    }

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(0), int(0));
        assert_eq!(harmonic(2), frac(3, 2));
        assert_eq!(harmonic(3), frac(11, 6));
        let mut prev = harmonic(0);
        for n in 1..=200u64 {
            let h = harmonic(n);
            assert_eq!(&h - &prev, frac(1, n));
            prev = h;
        }
    }

    #[test]
    fn fermat_quotient_values() {
        assert_eq!(fermat_quotient2(3).unwrap().q, Integer::from(1));
        assert_eq!(fermat_quotient2(5).unwrap().q, Integer::from(3));
        assert_eq!(fermat_quotient2(7).unwrap().q, Integer::from(9));
        assert_eq!(fermat_quotient2(9), Err(Error::NonExactDivision { p: 9 }));
        for p in primes_in(3, 500) {
            let fq = fermat_quotient2(p).unwrap();
            assert_eq!(&fq.q * p + 1u32, BigInt::one() << (p - 1) as usize);
        }
    }

    #[test]
    fn legendre_values() {
        assert_eq!(legendre_minus_one(5), 1);
        assert_eq!(legendre_minus_one(3), -1);
        assert_eq!(legendre_minus_one(13), 1);
        assert_eq!(legendre_minus_one(7), -1);
    }

    #[test]
    fn prime_ranges() {
        assert_eq!(primes_in(3, 12), vec![3, 5, 7, 11]);
        assert!(primes_in(14, 16).is_empty());
        assert_eq!(primes_in(5, 5), vec![5]);
        assert_eq!(primes_in(0, 2), vec![2]);
        assert!(primes_in(10, 3).is_empty());
        assert_eq!(primes_in(5, 97).len(), 23);
        assert_eq!(primes_in(1, 1_000_000).len(), 78498);
    }

    #[test]
    fn powers_of_three() {
        assert!(is_power_of_three(1));
        assert!(is_power_of_three(243));
        assert!(!is_power_of_three(0));
        assert!(!is_power_of_three(15));
    }
}
