//! Truncated p-adic evaluation of every congruence claim.
//!
//! Everything is computed modulo `p^4` from the shared factorial table and then
//! reduced to the claim's own modulus. Binomials come from factorial units and
//! valuations, never from term ratios, so indices divisible by `p` are safe.

use super::{ClaimId, PrimeContext};
use crate::error::Result;
use crate::padic::{Modulus, PadicResidue};
use crate::sequences::legendre_minus_one;

struct Ctx {
    m: Modulus,
    p: u64,
}

impl Ctx {
    fn int(&self, n: i64) -> PadicResidue {
        PadicResidue::from_i64(self.m, n)
    }

    fn leg(&self) -> u64 {
        self.m.from_i64(legendre_minus_one(self.p))
    }

    /// `p^e` as a residue.
    fn p_pow(&self, e: u64) -> u64 {
        self.m.pow(self.p, e)
    }

    /// Sum of `weight(k) * term(k) * ratio^{-k}` for `k = 0..=top` with
    /// `weight` linear in `k`.
    fn weighted_series(
        &self,
        top: u64,
        weight: (i64, i64),
        ratio: i64,
        term: impl Fn(u64) -> PadicResidue,
    ) -> Result<u64> {
        let step = self.m.inv(self.m.from_i64(ratio))?;
        let mut scale = 1u64;
        let mut acc = 0u64;
        for k in 0..=top {
            let t = self
                .int(weight.0 * k as i64 + weight.1)
                .mul(&term(k))
                .to_residue();
            acc = self.m.add(acc, self.m.mul(t, scale));
            scale = self.m.mul(scale, step);
        }
        Ok(acc)
    }

    /// `q_p(2) = (2^{p-1} - 1)/p`, known modulo `p^3`.
    fn fermat_quotient(&self) -> u64 {
        let r = self.m.pow(2, self.p - 1);
        self.m.sub(r, 1) / self.p
    }

    fn inverse(&self, k: u64) -> Result<u64> {
        self.m.inv(k)
    }
}

/// `(LHS, RHS)` residues modulo `p^exponent`, one pair per component.
pub(crate) fn residues_in(
    prime: &PrimeContext,
    id: ClaimId,
    exponent: u32,
) -> Result<Vec<(u64, u64)>> {
    let m = prime.modulus()?;
    let p = prime.p();
    let half = (p - 1) / 2;
    let ctx = Ctx { m, p };
    let table = prime.factorials()?;
    let central = |k: u64| table.binomial(2 * k, k);
    let central_cubed = |k: u64| central(k).pow(3);
    let euler = || prime.euler_mod_p();
    let p_leg = m.mul(p, ctx.leg());
    let p3 = ctx.p_pow(3);

    let pairs: Vec<(u64, u64)> = match id {
        ClaimId::Thm11Half => vec![(
            ctx.weighted_series(half, (4, 1), -64, central_cubed)?,
            m.add(p_leg, m.mul(p3, euler()?)),
        )],
        ClaimId::Thm11Full => vec![(
            ctx.weighted_series(p - 1, (4, 1), -64, central_cubed)?,
            m.add(p_leg, m.mul(p3, euler()?)),
        )],
        ClaimId::Thm11FullEqHalf => vec![(
            ctx.weighted_series(p - 1, (4, 1), -64, central_cubed)?,
            ctx.weighted_series(half, (4, 1), -64, central_cubed)?,
        )],
        ClaimId::Thm12 => {
            let two = m.pow(2, p - 1);
            let t = m.sub(two, 1);
            let bracket = m.sub(m.add(two, 2), m.mul(t, t));
            vec![(
                ctx.weighted_series(half, (20, 3), -1024, |k| table.multinomial4(k))?,
                m.mul(p_leg, bracket),
            )]
        }
        ClaimId::Eq13 => vec![(
            ctx.weighted_series(p - 1, (20, 3), -1024, |k| table.multinomial4(k))?,
            m.mul(3, m.add(p_leg, m.mul(p3, euler()?))),
        )],
        ClaimId::Conj14 => {
            let five_thirds = m.mul(5, ctx.inverse(3)?);
            vec![(
                ctx.weighted_series(p - 1, (7, 1), 648, |k| table.multinomial4(k))?,
                m.sub(p_leg, m.mul(five_thirds, m.mul(p3, euler()?))),
            )]
        }
        ClaimId::Long => vec![(
            ctx.weighted_series(half, (6, 1), 256, central_cubed)?,
            p_leg,
        )],
        ClaimId::WolstH1 => {
            let mut h = 0;
            for k in 1..p {
                h = m.add(h, ctx.inverse(k)?);
            }
            vec![(h, 0)]
        }
        ClaimId::WolstH2 => {
            let mut h = 0;
            for k in 1..p {
                let inv = ctx.inverse(k)?;
                h = m.add(h, m.mul(inv, inv));
            }
            vec![(h, 0)]
        }
        ClaimId::WolstBinom => vec![(table.binomial(2 * p - 1, p - 1).to_residue(), 1)],
        ClaimId::Morley => {
            let sign = if half.is_multiple_of(2) { 1 } else { m.neg(1) };
            vec![(
                table.binomial(p - 1, half).to_residue(),
                m.mul(sign, m.pow(4, p - 1)),
            )]
        }
        ClaimId::Sun24 | ClaimId::Sun25 => {
            let mut acc = 0u64;
            let mut four_k = 1u64;
            for k in 1..=half {
                four_k = m.mul(four_k, 4);
                let mut den = ctx.int(2 * k as i64 - 1).mul(&central(k));
                if id == ClaimId::Sun25 {
                    den = den.mul(&ctx.int(k as i64));
                }
                let term = PadicResidue::from_i64(m, 1).div(&den)?.to_residue();
                acc = m.add(acc, m.mul(four_k, term));
            }
            let e = euler()?;
            let rhs = if id == ClaimId::Sun24 {
                m.add(m.sub(e, 1), ctx.leg())
            } else {
                m.mul(2, e)
            };
            vec![(acc, rhs)]
        }
        ClaimId::Lemma31 => {
            let step = ctx.inverse(m.from_i64(-16))?;
            let mut scale = 1u64;
            let mut out = Vec::with_capacity(half as usize + 1);
            for k in 0..=half {
                out.push((
                    table.binomial(half + k, 2 * k).to_residue(),
                    m.mul(central(k).to_residue(), scale),
                ));
                scale = m.mul(scale, step);
            }
            out
        }
        ClaimId::Lehmer32 => {
            let mut h = 0;
            for k in 1..=half {
                h = m.add(h, ctx.inverse(k)?);
            }
            let q = ctx.fermat_quotient();
            vec![(h, m.add(m.neg(m.mul(2, q)), m.mul(p, m.mul(q, q))))]
        }
        ClaimId::Lemma33 => {
            let mut h_prev = 0u64;
            let mut acc = 0u64;
            for k in 1..=half {
                let inv = ctx.inverse(k)?;
                acc = m.add(acc, m.mul(h_prev, inv));
                h_prev = m.add(h_prev, inv);
            }
            let q = ctx.fermat_quotient();
            vec![(acc, m.mul(2, m.mul(q, q)))]
        }
        ClaimId::Lemma34 => {
            let inv2 = ctx.inverse(2)?;
            let lhs = ctx
                .int(6 * half as i64 + 1)
                .mul(&table.binomial(6 * half, 3 * half))
                .mul(&table.binomial(3 * half, half))
                .to_residue();
            vec![(m.mul(lhs, m.pow(inv2, 8 * half)), p_leg)]
        }
        ClaimId::Eq35 => {
            let mut prod = 1u64;
            for j in half + 1..p {
                prod = m.mul(prod, m.mul(j + 2 * p, ctx.inverse(j)?));
            }
            vec![(prod, m.pow(2, 4 * (p - 1)))]
        }
        ClaimId::Remark21Identity => {
            unreachable!("identities are evaluated exactly")
        }
    };
    let target = m.with_precision(exponent)?;
    Ok(pairs
        .into_iter()
        .map(|(l, r)| (target.reduce(l), target.reduce(r)))
        .collect())
}
