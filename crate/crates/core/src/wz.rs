//! The two Wilf–Zeilberger pairs, their certificate identity
//! `F(n,k-1) - F(n,k) = G(n+1,k) - G(n,k)`, and the finite identities obtained
//! by telescoping it. Everything here is exact over the rationals.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::exact::{binomial, factorial, int, pow2, pow4, sign_pow, Integer, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum WzPairId {
    /// The pair behind `sum (4k+1) binom(2k,k)^3 / (-64)^k`.
    #[serde(rename = "1")]
    PairOne,
    /// The pair behind `sum (20k+3) binom(4k; k,k,k,k) / (-2^10)^k`.
    #[serde(rename = "2")]
    PairTwo,
}

impl WzPairId {
    pub const ALL: [WzPairId; 2] = [WzPairId::PairOne, WzPairId::PairTwo];
}

impl fmt::Display for WzPairId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WzPairId::PairOne => f.write_str("1"),
            WzPairId::PairTwo => f.write_str("2"),
        }
    }
}

impl FromStr for WzPairId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "1" => Ok(WzPairId::PairOne),
            "2" => Ok(WzPairId::PairTwo),
            other => Err(format!("unknown WZ pair {other:?}; expected 1 or 2")),
        }
    }
}

fn b(a: i64, k: i64) -> Rational {
    Rational::from_integer(binomial(a, k))
}

fn signed(e: i64) -> Rational {
    Rational::from_integer(sign_pow(e))
}

/// `F(n, k)` of the given pair.
pub fn wz_f(pair: WzPairId, n: i64, k: i64) -> Rational {
    match pair {
        WzPairId::PairOne => {
            let c = b(2 * n, n);
            signed(n + k)
                * int(4 * n + 1)
                * pow4(k - 3 * n)
                * &c
                * &c
                * b(2 * n + 2 * k, n + k)
                * b(n + k, 2 * k)
                / b(2 * k, k)
        }
        WzPairId::PairTwo => {
            signed(n + k)
                * int(20 * n - 2 * k + 3)
                * pow4(k - 5 * n)
                * b(2 * n, n)
                * b(4 * n + 2 * k, 2 * n + k)
                * b(2 * n + k, 2 * k)
                * b(2 * n - k, n)
                / b(2 * k, k)
        }
    }
}

/// `binom(n-1+k, 2k) / (n-k)` with the `(n-k)` factor cancelled:
/// `prod_{i=n-k+1}^{n+k-1} i / (2k)!`. At `n = k` this is `1/(2k)`.
fn pair_one_cancelled_factor(n: i64, k: i64) -> Rational {
    let prod: Integer = (n - k + 1..n + k).map(Integer::from).product();
    Rational::new(prod, factorial(2 * k as u64))
}

/// `G(n, k)` of the given pair, for `k >= 1`.
pub fn wz_g(pair: WzPairId, n: i64, k: i64) -> Rational {
    match pair {
        WzPairId::PairOne => {
            if n < k {
                return Rational::zero();
            }
            let c = b(2 * n - 2, n - 1);
            signed(n + k) * int((2 * n - 1) * (2 * n - 1)) * &c * &c
                / (int(2) * pow4(3 * (n - 1) - k))
                * b(2 * (n - 1 + k), n - 1 + k)
                * pair_one_cancelled_factor(n, k)
                / b(2 * k, k)
        }
        WzPairId::PairTwo => {
            signed(n + k)
                * pow4(4 + k - 5 * n)
                * int(n)
                * b(2 * n - 1, n - 1)
                * b(4 * n + 2 * k - 2, 2 * n + k - 1)
                * b(2 * n + k - 1, 2 * k)
                * b(2 * n - k - 1, n - 1)
                / b(2 * k, k)
        }
    }
}

/// A cell where the certificate identity fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateFailure {
    pub n: i64,
    pub k: i64,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridCheckResult {
    pub pair: WzPairId,
    pub n_max: i64,
    pub k_max: i64,
    /// Ordered by `(n, k)`.
    pub failures: Vec<CertificateFailure>,
}

impl GridCheckResult {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

fn certificate_cell(pair: WzPairId, n: i64, k: i64) -> Option<CertificateFailure> {
    let lhs = wz_f(pair, n, k - 1) - wz_f(pair, n, k);
    let rhs = wz_g(pair, n + 1, k) - wz_g(pair, n, k);
    (lhs != rhs).then_some(CertificateFailure { n, k, lhs, rhs })
}

/// Checks the certificate on `0 <= n <= n_max`, `1 <= k <= k_max`.
pub fn check_certificate(pair: WzPairId, n_max: i64, k_max: i64) -> GridCheckResult {
    let cells: Vec<(i64, i64)> = (0..=n_max)
        .flat_map(|n| (1..=k_max).map(move |k| (n, k)))
        .collect();
    // par_iter preserves input order on collect
    let failures = cells
        .par_iter()
        .filter_map(|&(n, k)| certificate_cell(pair, n, k))
        .collect();
    GridCheckResult {
        pair,
        n_max,
        k_max,
        failures,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub lhs: Rational,
    pub rhs: Rational,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `sum_{n=0}^{N} F(n,0) - F(N,N)` against `sum_{k=1}^{N} G(N+1,k)`.
pub fn check_telescoping(pair: WzPairId, big_n: i64) -> IdentityCheck {
    let lhs = (0..=big_n)
        .map(|n| wz_f(pair, n, 0))
        .fold(Rational::zero(), |acc, x| acc + x)
        - wz_f(pair, big_n, big_n);
    let rhs = (1..=big_n)
        .map(|k| wz_g(pair, big_n + 1, k))
        .fold(Rational::zero(), |acc, x| acc + x);
    IdentityCheck { lhs, rhs }
}

fn pair_one_series(lo: i64, m: i64) -> Rational {
    (lo..=m)
        .map(|n| {
            let c = b(2 * n, n);
            int(4 * n + 1) * &c * &c * &c / Rational::from_integer(Integer::from(-64).pow(n as u32))
        })
        .fold(Rational::zero(), |acc, x| acc + x)
}

fn pair_one_identity(m: i64, lower: i64) -> IdentityCheck {
    let lhs =
        pair_one_series(lower, m) - int(4 * m + 1) * pow4(-2 * m) * b(4 * m, 2 * m) * b(2 * m, m);
    let c = b(2 * m, m);
    let rhs = (1..=m)
        .map(|k| {
            signed(m + k + 1) * int((2 * m + 1) * (2 * m + 1)) * &c * &c
                / (int(2 * (m + 1 - k)) * pow4(3 * m - k))
                * b(2 * m + 2 * k, m + k)
                * b(m + k, 2 * k)
                / b(2 * k, k)
        })
        .fold(Rational::zero(), |acc, x| acc + x);
    IdentityCheck { lhs, rhs }
}

/// The pair-one telescoped identity with the series started at `n = 0`.
pub fn check_pair_one_identity(m: i64) -> IdentityCheck {
    pair_one_identity(m, 0)
}

/// The same identity with the series started at `n = 1`. Differs from the
/// `n = 0` form by exactly `F(0,0) = 1`.
pub fn check_pair_one_identity_from_one(m: i64) -> IdentityCheck {
    pair_one_identity(m, 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairTwoIdentities {
    pub lhs: Rational,
    /// Right side written with `binom(4N+2k+2, 2N+k+1) binom(2N+k+1, 2k) binom(2N-k+1, N)`.
    pub rhs_direct: Rational,
    /// Right side after the binomial rearrangement.
    pub rhs_rearranged: Rational,
}

impl PairTwoIdentities {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs_direct && self.lhs == self.rhs_rearranged
    }
}

pub fn check_pair_two_identities(big_n: i64) -> PairTwoIdentities {
    let n = big_n;
    let lhs = (0..=n)
        .map(|j| {
            let c = b(2 * j, j);
            int(20 * j + 3) * &c * &c * b(4 * j, 2 * j) * pow2(-10 * j) * signed(j)
        })
        .fold(Rational::zero(), |acc, x| acc + x)
        - int(18 * n + 3) * pow2(-8 * n) * b(6 * n, 3 * n) * b(3 * n, n);
    let prefactor = int(n + 1) * b(2 * n + 1, n);
    let direct = (1..=n)
        .map(|k| {
            signed(n + k + 1)
                * b(4 * n + 2 * k + 2, 2 * n + k + 1)
                * b(2 * n + k + 1, 2 * k)
                * b(2 * n - k + 1, n)
                * pow4(k - (5 * (n + 1) - 4))
                / b(2 * k, k)
        })
        .fold(Rational::zero(), |acc, x| acc + x);
    let rearranged = (1..=n)
        .map(|k| {
            signed(n + k + 1)
                * b(4 * n + 2 * k + 2, 2 * k)
                * b(3 * n + 2, n - k + 1)
                * pow4(k - (5 * n + 1))
                / b(2 * k, k)
        })
        .fold(Rational::zero(), |acc, x| acc + x);
    PairTwoIdentities {
        lhs,
        rhs_direct: &prefactor * direct,
        rhs_rearranged: prefactor * b(4 * n + 2, n) * rearranged,
    }
}

/// The three forms of the binomial product in the pair-two rearrangement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RearrangementCheck {
    pub original: Integer,
    pub intermediate: Integer,
    pub rearranged: Integer,
}

impl RearrangementCheck {
    pub fn holds(&self) -> bool {
        self.original == self.intermediate && self.original == self.rearranged
    }
}

pub fn check_binom_rearrangement(big_n: i64, k: i64) -> RearrangementCheck {
    let n = big_n;
    RearrangementCheck {
        original: binomial(4 * n + 2 * k + 2, 2 * n + k + 1)
            * binomial(2 * n + k + 1, 2 * k)
            * binomial(2 * n - k + 1, n),
        intermediate: binomial(4 * n + 2 * k + 2, 2 * k)
            * binomial(4 * n + 2, 2 * n - k + 1)
            * binomial(2 * n - k + 1, n),
        rearranged: binomial(4 * n + 2 * k + 2, 2 * k)
            * binomial(4 * n + 2, n)
            * binomial(3 * n + 2, n - k + 1),
    }
}

/// The subtracted boundary term `(18N+3)/2^{8N} binom(6N,3N) binom(3N,N)`.
pub fn pair_two_boundary(big_n: i64) -> Rational {
    int(18 * big_n + 3) * pow2(-8 * big_n) * b(6 * big_n, 3 * big_n) * b(3 * big_n, big_n)
}

/// `(4n+1) binom(2n,n)^3 / (-64)^n` and `(20n+3) binom(4n;n,n,n,n) / (-2^10)^n`.
pub fn series_term(pair: WzPairId, n: i64) -> Rational {
    match pair {
        WzPairId::PairOne => pair_one_series(n, n),
        WzPairId::PairTwo => {
            int(20 * n + 3)
                * Rational::from_integer(crate::exact::multinomial4(n as u64))
                * signed(n)
                * pow2(-10 * n)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;
    use WzPairId::*;

    #[test]
    fn f_values() {
        assert_eq!(wz_f(PairOne, 0, 0), int(1));
        assert_eq!(wz_f(PairOne, 1, 0), frac(-5, 8));
        assert_eq!(wz_f(PairTwo, 1, 1), frac(315, 64));
        assert_eq!(wz_f(PairTwo, 1, 0), frac(-69, 128));
        assert_eq!(wz_f(PairOne, 1, 1), frac(15, 4));
    }

    #[test]
    fn g_values() {
        assert_eq!(wz_g(PairOne, 2, 1), frac(-27, 8));
        assert_eq!(wz_g(PairOne, 1, 1), int(1));
        assert_eq!(wz_g(PairTwo, 2, 1), frac(-315, 128));
        assert_eq!(wz_g(PairOne, 0, 3), int(0));
        assert_eq!(wz_g(PairTwo, 1, 1), int(3));
        assert_eq!(wz_g(PairTwo, 0, 2), int(0));
    }

    #[test]
    fn removable_singularity_matches_limit_form() {
        // binom(n-1+k, 2k)/(n-k) away from n = k
        for k in 1..8i64 {
            for n in k + 1..20 {
                assert_eq!(
                    pair_one_cancelled_factor(n, k),
                    b(n - 1 + k, 2 * k) / int(n - k)
                );
            }
            assert_eq!(pair_one_cancelled_factor(k, k), frac(1, 2 * k));
        }
    }

    #[test]
    fn certificate_first_cells() {
        let lhs = wz_f(PairOne, 1, 0) - wz_f(PairOne, 1, 1);
        let rhs = wz_g(PairOne, 2, 1) - wz_g(PairOne, 1, 1);
        assert_eq!(lhs, frac(-35, 8));
        assert_eq!(rhs, frac(-35, 8));
        let lhs = wz_f(PairTwo, 1, 0) - wz_f(PairTwo, 1, 1);
        let rhs = wz_g(PairTwo, 2, 1) - wz_g(PairTwo, 1, 1);
        assert_eq!(lhs, frac(-699, 128));
        assert_eq!(rhs, frac(-699, 128));
    }

    #[test]
    fn certificate_fails_with_zero_diagonal() {
        // setting G(1,1) = 0 would break the (1,1) cell
        let lhs = wz_f(PairOne, 1, 0) - wz_f(PairOne, 1, 1);
        let rhs_zero_diag = wz_g(PairOne, 2, 1);
        assert_ne!(lhs, rhs_zero_diag);
        assert_eq!(rhs_zero_diag, frac(-27, 8));
    }

    #[test]
    fn grid_is_clean() {
        for pair in WzPairId::ALL {
            let r = check_certificate(pair, 40, 40);
            assert!(r.holds(), "{pair}: {:?}", r.failures.first());
        }
    }

    #[test]
    fn vanishing_below_diagonal() {
        for pair in WzPairId::ALL {
            for n in 0..=40 {
                for k in n + 1..=40 {
                    assert!(wz_f(pair, n, k).is_zero(), "{pair} F({n},{k})");
                }
            }
        }
    }

    #[test]
    fn series_terms() {
        for n in 0..=40 {
            assert_eq!(wz_f(PairOne, n, 0), series_term(PairOne, n));
            assert_eq!(wz_f(PairTwo, n, 0), series_term(PairTwo, n));
        }
        for n in 1..=20 {
            assert_eq!(wz_f(PairTwo, n, n), pair_two_boundary(n));
        }
    }

    #[test]
    fn telescoping_small() {
        let t = check_telescoping(PairOne, 1);
        assert_eq!((t.lhs.clone(), t.rhs.clone()), (frac(-27, 8), frac(-27, 8)));
        let t = check_telescoping(PairTwo, 1);
        assert_eq!(
            (t.lhs.clone(), t.rhs.clone()),
            (frac(-315, 128), frac(-315, 128))
        );
        assert!(check_telescoping(PairOne, 25).holds());
    }

    #[test]
    fn telescoping_agrees_with_certificate_rows() {
        // sum over n of (F(n,k-1) - F(n,k)) telescopes in n to G(N+1,k) - G(0,k)
        for pair in WzPairId::ALL {
            for big_n in 1..=15 {
                let mut via_rows = Rational::zero();
                for k in 1..=big_n {
                    for n in 0..=big_n {
                        via_rows += wz_f(pair, n, k - 1) - wz_f(pair, n, k);
                    }
                }
                let t = check_telescoping(pair, big_n);
                assert_eq!(via_rows, t.lhs, "{pair} N={big_n}");
                assert!(t.holds());
            }
        }
    }

    #[test]
    fn pair_one_identity_values() {
        let c = check_pair_one_identity(1);
        assert_eq!(c.lhs, frac(-27, 8));
        assert_eq!(c.rhs, frac(-27, 8));
        let typo = check_pair_one_identity_from_one(1);
        assert_eq!(typo.lhs, frac(-35, 8));
        assert_eq!(&c.lhs - &typo.lhs, int(1));
        assert!(check_pair_one_identity(20).holds());
    }

    #[test]
    fn pair_two_identity_values() {
        let c = check_pair_two_identities(1);
        assert_eq!(c.lhs, frac(-315, 128));
        assert!(c.holds());
        assert_eq!(
            check_pair_two_identities(2).rhs_direct,
            check_pair_two_identities(2).rhs_rearranged
        );
        assert!(check_pair_two_identities(20).holds());
    }

    #[test]
    fn rearrangement_values() {
        let r = check_binom_rearrangement(1, 1);
        assert_eq!(r.original, Integer::from(840));
        assert!(r.holds());
        assert!(check_binom_rearrangement(2, 1).holds());
        assert!(check_binom_rearrangement(2, 2).holds());
    }

    #[test]
    fn pair_id_parsing() {
        assert_eq!("1".parse::<WzPairId>().unwrap(), PairOne);
        assert_eq!("2".parse::<WzPairId>().unwrap(), PairTwo);
        assert!("3".parse::<WzPairId>().is_err());
    }
}
