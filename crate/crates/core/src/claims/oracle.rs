//! Exact rational evaluation of both sides of every claim.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{ClaimId, PrimeContext};
use crate::error::{Error, Result};
use crate::exact::{binomial, frac, int, multinomial4, pow2, Rational};
use crate::sequences::{fermat_quotient2, harmonic, legendre_minus_one};

fn b(a: u64, k: u64) -> Rational {
    Rational::from_integer(binomial(a as i64, k as i64))
}

fn pow_int(base: i64, e: u64) -> Rational {
    Rational::from_integer(BigInt::from(base).pow(e as u32))
}

fn sum(it: impl Iterator<Item = Rational>) -> Rational {
    it.fold(Rational::zero(), |acc, x| acc + x)
}

fn pair_one_series(top: u64) -> Rational {
    sum((0..=top).map(|k| {
        let c = b(2 * k, k);
        int(4 * k + 1) * &c * &c * &c / pow_int(-64, k)
    }))
}

fn multinomial_series(top: u64, linear: (u64, u64), ratio: i64) -> Rational {
    sum((0..=top).map(|k| {
        int(linear.0 * k + linear.1) * Rational::from_integer(multinomial4(k)) / pow_int(ratio, k)
    }))
}

/// `(LHS, RHS)` pairs; one pair for every claim except `lemma31`, which has
/// one per `k = 0..=(p-1)/2`. No domain check.
pub(crate) fn sides_in(ctx: &PrimeContext, id: ClaimId) -> Vec<(Rational, Rational)> {
    let p = ctx.p();
    let m = p.saturating_sub(1) / 2;
    let pr = int(p);
    let leg = || int(legendre_minus_one(p));
    let cube = || &pr * &pr * &pr;
    let euler = || Rational::from_integer(ctx.euler_exact().clone());
    let q = || Rational::from_integer(fermat_quotient2(p).expect("odd prime").q);
    let single = |lhs: Rational, rhs: Rational| vec![(lhs, rhs)];
    match id {
        ClaimId::Thm11Half => single(pair_one_series(m), &pr * leg() + cube() * euler()),
        ClaimId::Thm11Full => single(pair_one_series(p - 1), &pr * leg() + cube() * euler()),
        ClaimId::Thm11FullEqHalf => single(pair_one_series(p - 1), pair_one_series(m)),
        ClaimId::Thm12 => {
            let two = pow2(p as i64 - 1);
            let t = &two - int(1);
            single(
                multinomial_series(m, (20, 3), -1024),
                &pr * leg() * (two + int(2) - &t * &t),
            )
        }
        ClaimId::Eq13 => single(
            multinomial_series(p - 1, (20, 3), -1024),
            int(3) * &pr * leg() + int(3) * cube() * euler(),
        ),
        ClaimId::Conj14 => single(
            multinomial_series(p - 1, (7, 1), 648),
            &pr * leg() - frac(5, 3) * cube() * euler(),
        ),
        ClaimId::Long => single(
            sum((0..=m).map(|k| {
                let c = b(2 * k, k);
                int(6 * k + 1) * &c * &c * &c / pow_int(256, k)
            })),
            &pr * leg(),
        ),
        ClaimId::WolstH1 => single(harmonic(p - 1), int(0)),
        ClaimId::WolstH2 => single(sum((1..p).map(|k| frac(1, k * k))), int(0)),
        ClaimId::WolstBinom => single(b(2 * p - 1, p - 1), int(1)),
        ClaimId::Morley => single(
            b(p - 1, m),
            Rational::from_integer(crate::exact::sign_pow(m as i64)) * pow_int(4, p - 1),
        ),
        ClaimId::Sun24 => single(
            sum((1..=m).map(|k| pow_int(4, k) / (int(2 * k - 1) * b(2 * k, k)))),
            euler() - int(1) + leg(),
        ),
        ClaimId::Sun25 => single(
            sum((1..=m).map(|k| pow_int(4, k) / (int(k * (2 * k - 1)) * b(2 * k, k)))),
            int(2) * euler(),
        ),
        ClaimId::Lemma31 => (0..=m)
            .map(|k| (b(m + k, 2 * k), b(2 * k, k) / pow_int(-16, k)))
            .collect(),
        ClaimId::Lehmer32 => {
            let q = q();
            single(harmonic(m), int(-2) * &q + &pr * &q * &q)
        }
        ClaimId::Lemma33 => {
            let q = q();
            single(
                sum((1..=m).map(|k| harmonic(k - 1) / int(k))),
                int(2) * &q * &q,
            )
        }
        ClaimId::Lemma34 => single(
            int(6 * m + 1) * pow2(-8 * m as i64) * b(6 * m, 3 * m) * b(3 * m, m),
            &pr * leg(),
        ),
        ClaimId::Eq35 => single(
            (m + 1..p).fold(Rational::one(), |acc, j| acc * (int(1) + frac(2 * p, j))),
            pow2(4 * (p as i64 - 1)),
        ),
        ClaimId::Remark21Identity => {
            let n = p;
            single(
                sum((1..=n).map(|k| pow_int(4, k) / (int(k) * b(2 * k, k)))) / int(2),
                pow_int(4, n) / b(2 * n, n) - int(1),
            )
        }
    }
}

/// Both sides of a claim at `p`, exactly.
pub fn evaluate_sides(id: ClaimId, p: u64) -> Result<Vec<(Rational, Rational)>> {
    if !id.spec().verified_domain.contains(p) {
        return Err(Error::NotApplicable {
            claim: id.as_str().to_string(),
            p,
        });
    }
    Ok(sides_in(&PrimeContext::new(p), id))
}

/// Left-hand side(s) of a claim at `p`.
pub fn evaluate_lhs(id: ClaimId, p: u64) -> Result<Vec<Rational>> {
    Ok(evaluate_sides(id, p)?.into_iter().map(|(l, _)| l).collect())
}

/// Right-hand side(s) of a claim at `p`.
pub fn evaluate_rhs(id: ClaimId, p: u64) -> Result<Vec<Rational>> {
    Ok(evaluate_sides(id, p)?.into_iter().map(|(_, r)| r).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;
    use crate::sequences::primes_in;
    use crate::wz::{wz_f, WzPairId};

    #[test]
    fn spot_values_at_five() {
        assert_eq!(
            evaluate_lhs(ClaimId::Thm11Half, 5).unwrap(),
            vec![frac(435, 512)]
        );
        assert_eq!(
            evaluate_rhs(ClaimId::Thm11Half, 5).unwrap(),
            vec![int(-120)]
        );
        assert_eq!(evaluate_rhs(ClaimId::Thm12, 5).unwrap(), vec![int(-1035)]);
        assert_eq!(
            evaluate_lhs(ClaimId::Thm12, 5).unwrap(),
            vec![frac(3, 1) - frac(69, 128) + frac(13545, 131072)]
        );
        assert_eq!(
            evaluate_lhs(ClaimId::Lemma34, 5).unwrap(),
            vec![frac(180180, 65536)]
        );
        assert_eq!(
            evaluate_lhs(ClaimId::Lehmer32, 5).unwrap(),
            vec![frac(3, 2)]
        );
        assert_eq!(
            evaluate_lhs(ClaimId::Sun24, 5).unwrap(),
            vec![int(2) + frac(8, 9)]
        );
    }

    #[test]
    fn out_of_domain() {
        assert!(matches!(
            evaluate_lhs(ClaimId::Thm12, 3),
            Err(Error::NotApplicable { .. })
        ));
        assert!(matches!(
            evaluate_lhs(ClaimId::Sun24, 9),
            Err(Error::NotApplicable { .. })
        ));
        assert!(evaluate_lhs(ClaimId::Sun24, 3).is_ok());
    }

    #[test]
    fn lemma31_has_one_side_per_k() {
        assert_eq!(evaluate_lhs(ClaimId::Lemma31, 11).unwrap().len(), 6);
    }

    #[test]
    fn series_match_wz_rows() {
        for p in primes_in(5, 50) {
            let full = (0..p as i64).fold(Rational::zero(), |acc, n| {
                acc + wz_f(WzPairId::PairOne, n, 0)
            });
            assert_eq!(evaluate_lhs(ClaimId::Thm11Full, p).unwrap(), vec![full]);
            let half = (0..=(p as i64 - 1) / 2).fold(Rational::zero(), |acc, n| {
                acc + wz_f(WzPairId::PairTwo, n, 0)
            });
            assert_eq!(evaluate_lhs(ClaimId::Thm12, p).unwrap(), vec![half]);
        }
    }

    #[test]
    fn remark21_is_exact() {
        for n in 1..=200 {
            let sides = evaluate_sides(ClaimId::Remark21Identity, n).unwrap();
            assert_eq!(sides[0].0, sides[0].1, "n={n}");
        }
    }
}
