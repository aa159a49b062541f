//! Registry of every congruence and identity the engine checks, with an exact
//! evaluator and a truncated p-adic evaluator for each.

mod context;
mod fast;
mod integrality;
mod oracle;
mod verify;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;

pub use context::PrimeContext;
pub use integrality::{integrality_check, IntegralityReport};
pub use oracle::{evaluate_lhs, evaluate_rhs, evaluate_sides};
pub use verify::{
    boundary_anomalies, verify_batch, verify_claim, verify_claim_in, AnomalyReport, EvalPath,
    PathSelector, ResidualValuation, Status, VerificationReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClaimId {
    Thm11Half,
    Thm11Full,
    Thm11FullEqHalf,
    Thm12,
    Eq13,
    Conj14,
    Long,
    WolstH1,
    WolstH2,
    WolstBinom,
    Morley,
    Sun24,
    Sun25,
    Lemma31,
    Lehmer32,
    Lemma33,
    Lemma34,
    Eq35,
    Remark21Identity,
}

impl ClaimId {
    pub const ALL: [ClaimId; 19] = [
        ClaimId::Thm11Half,
        ClaimId::Thm11Full,
        ClaimId::Thm11FullEqHalf,
        ClaimId::Thm12,
        ClaimId::Eq13,
        ClaimId::Conj14,
        ClaimId::Long,
        ClaimId::WolstH1,
        ClaimId::WolstH2,
        ClaimId::WolstBinom,
        ClaimId::Morley,
        ClaimId::Sun24,
        ClaimId::Sun25,
        ClaimId::Lemma31,
        ClaimId::Lehmer32,
        ClaimId::Lemma33,
        ClaimId::Lemma34,
        ClaimId::Eq35,
        ClaimId::Remark21Identity,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimId::Thm11Half => "thm11_half",
            ClaimId::Thm11Full => "thm11_full",
            ClaimId::Thm11FullEqHalf => "thm11_full_eq_half",
            ClaimId::Thm12 => "thm12",
            ClaimId::Eq13 => "eq13",
            ClaimId::Conj14 => "conj14",
            ClaimId::Long => "long",
            ClaimId::WolstH1 => "wolst_h1",
            ClaimId::WolstH2 => "wolst_h2",
            ClaimId::WolstBinom => "wolst_binom",
            ClaimId::Morley => "morley",
            ClaimId::Sun24 => "sun24",
            ClaimId::Sun25 => "sun25",
            ClaimId::Lemma31 => "lemma31",
            ClaimId::Lehmer32 => "lehmer32",
            ClaimId::Lemma33 => "lemma33",
            ClaimId::Lemma34 => "lemma34",
            ClaimId::Eq35 => "eq35",
            ClaimId::Remark21Identity => "remark21_identity",
        }
    }

    pub fn spec(self) -> ClaimSpec {
        registry()
            .into_iter()
            .find(|c| c.id == self)
            .expect("every id is registered")
    }

    /// Whether the evaluators need `E_{p-3}`.
    pub(crate) fn uses_euler(self) -> bool {
        matches!(
            self,
            ClaimId::Thm11Half
                | ClaimId::Thm11Full
                | ClaimId::Eq13
                | ClaimId::Conj14
                | ClaimId::Sun24
                | ClaimId::Sun25
        )
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClaimId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ClaimId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::UnknownClaimId(s.to_string()))
    }
}

impl Serialize for ClaimId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// Set of indices a claim is asserted for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    /// Every odd prime.
    OddPrime,
    /// Primes `p >= 5`.
    PrimeAtLeast5,
    /// Every positive integer (identities indexed by `n`).
    PositiveInteger,
}

impl Domain {
    pub fn contains(self, p: u64) -> bool {
        match self {
            Domain::OddPrime => p >= 3 && p % 2 == 1 && is_prime(p),
            Domain::PrimeAtLeast5 => p >= 5 && is_prime(p),
            Domain::PositiveInteger => p >= 1,
        }
    }

    /// Domain A contained in domain B.
    pub fn is_within(self, other: Domain) -> bool {
        match (self, other) {
            (a, b) if a == b => true,
            (Domain::PrimeAtLeast5, Domain::OddPrime) => true,
            (_, Domain::PositiveInteger) => true,
            _ => false,
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimKind {
    /// `LHS = RHS (mod p^exponent)`.
    Congruence { exponent: u32 },
    /// `LHS = RHS` exactly, with the index playing the role of `p`.
    Identity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimSpec {
    pub id: ClaimId,
    /// The statement in plain notation.
    pub statement: &'static str,
    pub kind: ClaimKind,
    /// Domain as originally stated.
    pub stated_domain: Domain,
    /// Domain this engine asserts; narrower where `p = 3` is a known exception.
    pub verified_domain: Domain,
    /// Unproven; failures are reported but never fatal.
    pub conjecture: bool,
}

impl ClaimSpec {
    pub fn modulus_exponent(&self) -> Option<u32> {
        match self.kind {
            ClaimKind::Congruence { exponent } => Some(exponent),
            ClaimKind::Identity => None,
        }
    }
}

fn congruence(
    id: ClaimId,
    exponent: u32,
    stated_domain: Domain,
    verified_domain: Domain,
    statement: &'static str,
) -> ClaimSpec {
    ClaimSpec {
        id,
        statement,
        kind: ClaimKind::Congruence { exponent },
        stated_domain,
        verified_domain,
        conjecture: false,
    }
}

pub fn registry() -> Vec<ClaimSpec> {
    use ClaimId::*;
    use Domain::*;
    vec![
        congruence(Thm11Half, 4, OddPrime, PrimeAtLeast5,
            "sum_{k=0}^{(p-1)/2} (4k+1) binom(2k,k)^3/(-64)^k = p(-1/p) + p^3 E_{p-3} (mod p^4)"),
        congruence(Thm11Full, 4, OddPrime, PrimeAtLeast5,
            "sum_{k=0}^{p-1} (4k+1) binom(2k,k)^3/(-64)^k = p(-1/p) + p^3 E_{p-3} (mod p^4)"),
        congruence(Thm11FullEqHalf, 4, OddPrime, OddPrime,
            "sum_{k=0}^{p-1} (4k+1) binom(2k,k)^3/(-64)^k = sum_{k=0}^{(p-1)/2} (same) (mod p^4)"),
        congruence(Thm12, 4, PrimeAtLeast5, PrimeAtLeast5,
            "sum_{k=0}^{(p-1)/2} (20k+3)/(-2^10)^k binom(4k;k,k,k,k) = p(-1/p)(2^{p-1}+2-(2^{p-1}-1)^2) (mod p^4)"),
        congruence(Eq13, 4, OddPrime, PrimeAtLeast5,
            "sum_{k=0}^{p-1} (20k+3)/(-2^10)^k binom(4k;k,k,k,k) = 3p(-1/p) + 3p^3 E_{p-3} (mod p^4)"),
        ClaimSpec {
            conjecture: true,
            ..congruence(Conj14, 4, PrimeAtLeast5, PrimeAtLeast5,
                "sum_{k=0}^{p-1} (7k+1)/648^k binom(4k;k,k,k,k) = p(-1/p) - (5/3) p^3 E_{p-3} (mod p^4)")
        },
        congruence(Long, 4, PrimeAtLeast5, PrimeAtLeast5,
            "sum_{k=0}^{(p-1)/2} (6k+1) binom(2k,k)^3/256^k = p(-1/p) (mod p^4)"),
        congruence(WolstH1, 2, PrimeAtLeast5, PrimeAtLeast5,
            "sum_{k=1}^{p-1} 1/k = 0 (mod p^2)"),
        congruence(WolstH2, 1, PrimeAtLeast5, PrimeAtLeast5,
            "sum_{k=1}^{p-1} 1/k^2 = 0 (mod p)"),
        congruence(WolstBinom, 3, PrimeAtLeast5, PrimeAtLeast5,
            "binom(2p-1, p-1) = 1 (mod p^3)"),
        congruence(Morley, 3, PrimeAtLeast5, PrimeAtLeast5,
            "binom(p-1, (p-1)/2) = (-1)^{(p-1)/2} 4^{p-1} (mod p^3)"),
        congruence(Sun24, 1, OddPrime, OddPrime,
            "sum_{k=1}^{(p-1)/2} 4^k/((2k-1) binom(2k,k)) = E_{p-3} - 1 + (-1/p) (mod p)"),
        congruence(Sun25, 1, OddPrime, OddPrime,
            "sum_{k=1}^{(p-1)/2} 4^k/(k(2k-1) binom(2k,k)) = 2 E_{p-3} (mod p)"),
        congruence(Lemma31, 2, OddPrime, OddPrime,
            "binom((p-1)/2+k, 2k) = binom(2k,k)/(-16)^k (mod p^2) for k = 0..(p-1)/2"),
        congruence(Lehmer32, 2, OddPrime, OddPrime,
            "H_{(p-1)/2} = -2 q_p(2) + p q_p(2)^2 (mod p^2)"),
        congruence(Lemma33, 1, OddPrime, PrimeAtLeast5,
            "sum_{k=1}^{(p-1)/2} H_{k-1}/k = 2 q_p(2)^2 (mod p)"),
        congruence(Lemma34, 4, OddPrime, PrimeAtLeast5,
            "(6m+1)/2^{8m} binom(6m,3m) binom(3m,m) = p(-1/p) (mod p^4), m = (p-1)/2"),
        congruence(Eq35, 3, OddPrime, PrimeAtLeast5,
            "prod_{p/2<j<p} (1 + 2p/j) = 2^{4(p-1)} (mod p^3)"),
        ClaimSpec {
            id: Remark21Identity,
            statement: "(1/2) sum_{k=1}^n 4^k/(k binom(2k,k)) = 4^n/binom(2n,n) - 1",
            kind: ClaimKind::Identity,
            stated_domain: PositiveInteger,
            verified_domain: PositiveInteger,
            conjecture: false,
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn registry_shape() {
        let reg = registry();
        assert_eq!(reg.len(), 19);
        let ids: HashSet<_> = reg.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids.len(), 19);
        for c in &reg {
            match c.kind {
                ClaimKind::Congruence { exponent } => assert!((1..=4).contains(&exponent)),
                ClaimKind::Identity => assert_eq!(c.id, ClaimId::Remark21Identity),
            }
            assert!(c.verified_domain.is_within(c.stated_domain), "{}", c.id);
        }
        assert_eq!(reg.iter().filter(|c| c.conjecture).count(), 1);
        let order: Vec<_> = reg.iter().map(|c| c.id).collect();
        assert_eq!(order, ClaimId::ALL.to_vec());
    }

    #[test]
    fn id_roundtrip() {
        for id in ClaimId::ALL {
            assert_eq!(id.as_str().parse::<ClaimId>().unwrap(), id);
        }
        assert_eq!(
            "nosuch".parse::<ClaimId>(),
            Err(Error::UnknownClaimId("nosuch".into()))
        );
    }

    #[test]
    fn domains() {
        assert!(Domain::OddPrime.contains(3));
        assert!(!Domain::OddPrime.contains(9));
        assert!(!Domain::OddPrime.contains(2));
        assert!(!Domain::PrimeAtLeast5.contains(3));
        assert!(Domain::PrimeAtLeast5.contains(5));
        assert!(Domain::PositiveInteger.contains(4));
        assert!(!Domain::PositiveInteger.contains(0));
    }
}
