use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use super::{fast, oracle, ClaimId, ClaimKind, PrimeContext};
use crate::error::{Error, Result};
use crate::exact::{fraction_string, Integer, Rational};
use crate::padic::{residue_of_rational, valuation, Modulus, Valuation};
use crate::sequences::euler_exact;

/// Primes up to this bound are checked on both paths when the path is `Auto`.
pub const AUTO_ORACLE_LIMIT: u64 = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EvalPath {
    /// Exact rationals reduced modulo `p^k`.
    Oracle,
    /// Truncated p-adic arithmetic.
    Fast,
    /// Both, and the residues must agree.
    Both,
}

impl EvalPath {
    fn uses_oracle(self) -> bool {
        matches!(self, EvalPath::Oracle | EvalPath::Both)
    }

    fn uses_fast(self) -> bool {
        matches!(self, EvalPath::Fast | EvalPath::Both)
    }
}

impl FromStr for EvalPath {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "oracle" => Ok(EvalPath::Oracle),
            "fast" => Ok(EvalPath::Fast),
            "both" => Ok(EvalPath::Both),
            other => Err(format!("unknown path {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathSelector {
    Fixed(EvalPath),
    /// `Both` up to [`AUTO_ORACLE_LIMIT`], `Fast` above.
    Auto,
}

impl PathSelector {
    pub fn for_prime(self, p: u64) -> EvalPath {
        match self {
            PathSelector::Fixed(path) => path,
            PathSelector::Auto if p <= AUTO_ORACLE_LIMIT => EvalPath::Both,
            PathSelector::Auto => EvalPath::Fast,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotApplicable => "not_applicable",
        })
    }
}

/// `v_p(LHS - RHS)`. The fast path alone only sees the difference modulo
/// `p^k`, so a vanishing difference there is a lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidualValuation {
    Exact(Valuation),
    AtLeast(u32),
}

impl ResidualValuation {
    pub fn at_least(self, k: u32) -> bool {
        match self {
            ResidualValuation::Exact(v) => v.at_least(k as i64),
            ResidualValuation::AtLeast(v) => v >= k,
        }
    }
}

impl fmt::Display for ResidualValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResidualValuation::Exact(v) => write!(f, "{v}"),
            ResidualValuation::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}

/// A reported side: a residue for congruences, the exact value for identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReportValue {
    Residue(u64),
    Exact(Rational),
}

impl fmt::Display for ReportValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReportValue::Residue(r) => write!(f, "{r}"),
            ReportValue::Exact(q) => f.write_str(&fraction_string(q)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub claim_id: ClaimId,
    pub p: u64,
    /// `p^k`; zero for exact identities.
    pub modulus: Integer,
    pub lhs_residue: Option<ReportValue>,
    pub rhs_residue: Option<ReportValue>,
    pub residual_valuation: Option<ResidualValuation>,
    pub status: Status,
    pub conjecture: bool,
    pub elapsed: Duration,
}

impl VerificationReport {
    fn not_applicable(id: ClaimId, p: u64, modulus: Integer) -> Self {
        VerificationReport {
            claim_id: id,
            p,
            modulus,
            lhs_residue: None,
            rhs_residue: None,
            residual_valuation: None,
            status: Status::NotApplicable,
            conjecture: id.spec().conjecture,
            elapsed: Duration::ZERO,
        }
    }

    /// A failure that should fail the run (conjectures never do).
    pub fn is_fatal_failure(&self) -> bool {
        self.status == Status::Fail && !self.conjecture
    }
}

fn min_valuation(values: impl Iterator<Item = ResidualValuation>) -> (usize, ResidualValuation) {
    let rank = |v: &ResidualValuation| match v {
        ResidualValuation::Exact(v) => *v,
        ResidualValuation::AtLeast(v) => Valuation::Finite(*v as i64),
    };
    values
        .enumerate()
        .min_by(|a, b| rank(&a.1).cmp(&rank(&b.1)).then(a.0.cmp(&b.0)))
        .expect("at least one component")
}

/// Checks one claim at one prime using the given context's shared tables.
pub fn verify_claim_in(
    ctx: &PrimeContext,
    id: ClaimId,
    path: EvalPath,
) -> Result<VerificationReport> {
    let spec = id.spec();
    let p = ctx.p();
    let start = Instant::now();
    let exponent = match spec.kind {
        ClaimKind::Identity => {
            if !spec.verified_domain.contains(p) {
                return Ok(VerificationReport::not_applicable(id, p, Integer::from(0)));
            }
            let sides = oracle::sides_in(ctx, id);
            let (lhs, rhs) = sides.into_iter().next().expect("one side pair");
            let v = valuation(&(&lhs - &rhs), p);
            let status = if lhs == rhs {
                Status::Pass
            } else {
                Status::Fail
            };
            return Ok(VerificationReport {
                claim_id: id,
                p,
                modulus: Integer::from(0),
                lhs_residue: Some(ReportValue::Exact(lhs)),
                rhs_residue: Some(ReportValue::Exact(rhs)),
                residual_valuation: Some(ResidualValuation::Exact(v)),
                status,
                conjecture: spec.conjecture,
                elapsed: start.elapsed(),
            });
        }
        ClaimKind::Congruence { exponent } => exponent,
    };
    let modulus = BigInt::from(p).pow(exponent);
    if !spec.verified_domain.contains(p) {
        return Ok(VerificationReport::not_applicable(id, p, modulus));
    }

    let oracle_result = if path.uses_oracle() {
        let sides = oracle::sides_in(ctx, id);
        let mut residues = Vec::with_capacity(sides.len());
        let mut valuations = Vec::with_capacity(sides.len());
        for (lhs, rhs) in &sides {
            residues.push((
                residue_of_rational(lhs, p, exponent)?,
                residue_of_rational(rhs, p, exponent)?,
            ));
            valuations.push(ResidualValuation::Exact(valuation(&(lhs - rhs), p)));
        }
        Some((residues, valuations))
    } else {
        None
    };
    let fast_result = if path.uses_fast() {
        let residues = fast::residues_in(ctx, id, exponent)?;
        let target = Modulus::new(p, exponent)?;
        let valuations = residues
            .iter()
            .map(|&(l, r)| {
                let d = target.sub(l, r);
                if d == 0 {
                    ResidualValuation::AtLeast(exponent)
                } else {
                    ResidualValuation::Exact(Valuation::Finite(target.residue_valuation(d) as i64))
                }
            })
            .collect::<Vec<_>>();
        Some((residues, valuations))
    } else {
        None
    };

    if let (Some((o, _)), Some((f, _))) = (&oracle_result, &fast_result) {
        if o != f {
            let bad = o.iter().zip(f).position(|(a, b)| a != b).unwrap_or(0);
            return Err(Error::InternalPathMismatch {
                claim: id.as_str().to_string(),
                p,
                oracle_lhs: o[bad].0,
                oracle_rhs: o[bad].1,
                fast_lhs: f[bad].0,
                fast_rhs: f[bad].1,
            });
        }
    }

    let (residues, valuations) = oracle_result
        .or(fast_result)
        .expect("every path evaluates at least one route");
    let (worst, residual) = min_valuation(valuations.into_iter());
    let (lhs, rhs) = residues[worst];
    let all_equal = residues.iter().all(|(l, r)| l == r);
    let status = if all_equal {
        Status::Pass
    } else {
        Status::Fail
    };
    debug_assert_eq!(all_equal, residual.at_least(exponent));

    Ok(VerificationReport {
        claim_id: id,
        p,
        modulus,
        lhs_residue: Some(ReportValue::Residue(lhs)),
        rhs_residue: Some(ReportValue::Residue(rhs)),
        residual_valuation: Some(residual),
        status,
        conjecture: spec.conjecture,
        elapsed: start.elapsed(),
    })
}

/// Checks one claim at one prime. Out-of-domain primes give `NotApplicable`.
pub fn verify_claim(id: ClaimId, p: u64, path: EvalPath) -> Result<VerificationReport> {
    verify_claim_in(&PrimeContext::new(p), id, path)
}

/// Every `(claim, prime)` pair, ordered by `(claim_id, p)`.
///
/// Work is spread over `jobs` workers by prime, so each prime's factorial and
/// Euler tables are built once and shared by all its claims.
pub fn verify_batch(
    ids: &[ClaimId],
    primes: &[u64],
    path: PathSelector,
    jobs: usize,
) -> Result<Vec<VerificationReport>> {
    if ids.is_empty() || primes.is_empty() {
        return Ok(Vec::new());
    }
    let exact_euler = {
        let needs = ids.iter().any(|id| id.uses_euler());
        let top = primes
            .iter()
            .filter(|&&p| p >= 3 && path.for_prime(p).uses_oracle())
            .max();
        match (needs, top) {
            (true, Some(&p)) => Some(euler_exact((p - 3) as usize)),
            _ => None,
        }
    };

    let run_prime = |p: u64| -> Result<Vec<VerificationReport>> {
        let mut ctx = PrimeContext::new(p);
        if let Some(e) = exact_euler.as_ref().filter(|_| p >= 3) {
            if let Some(value) = e.get((p - 3) as usize) {
                ctx = ctx.with_exact_euler(value.clone());
            }
        }
        ids.iter()
            .map(|&id| verify_claim_in(&ctx, id, path.for_prime(p)))
            .collect()
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    let per_prime: Vec<Result<Vec<VerificationReport>>> =
        pool.install(|| primes.par_iter().map(|&p| run_prime(p)).collect());

    let mut reports = Vec::with_capacity(ids.len() * primes.len());
    for r in per_prime {
        reports.extend(r?);
    }
    reports.sort_by(|a, b| {
        a.claim_id
            .as_str()
            .cmp(b.claim_id.as_str())
            .then(a.p.cmp(&b.p))
    });
    Ok(reports)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnomalyReport {
    pub claim_id: ClaimId,
    pub p: u64,
    pub modulus_exponent: u32,
    pub residual_valuation: Valuation,
    pub status: Status,
    /// `None` when a side is not p-integral at this prime.
    pub lhs_residue: Option<u64>,
    pub rhs_residue: Option<u64>,
    pub in_stated_domain: bool,
    pub in_verified_domain: bool,
}

/// The prime at which stated domains and verified domains diverge.
pub const BOUNDARY_PRIME: u64 = 3;

/// Every congruence evaluated exactly at `p = 3`, ignoring domains.
pub fn boundary_anomalies() -> Vec<AnomalyReport> {
    let p = BOUNDARY_PRIME;
    let ctx = PrimeContext::new(p);
    ClaimId::ALL
        .into_iter()
        .filter_map(|id| {
            let spec = id.spec();
            let exponent = spec.modulus_exponent()?;
            let sides = oracle::sides_in(&ctx, id);
            let valuations: Vec<Valuation> =
                sides.iter().map(|(l, r)| valuation(&(l - r), p)).collect();
            let worst = valuations
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.cmp(b.1).then(a.0.cmp(&b.0)))
                .map(|(i, _)| i)
                .expect("nonempty");
            let residual = valuations[worst];
            let (lhs, rhs) = &sides[worst];
            Some(AnomalyReport {
                claim_id: id,
                p,
                modulus_exponent: exponent,
                residual_valuation: residual,
                status: if residual.at_least(exponent as i64) {
                    Status::Pass
                } else {
                    Status::Fail
                },
                lhs_residue: residue_of_rational(lhs, p, exponent).ok(),
                rhs_residue: residue_of_rational(rhs, p, exponent).ok(),
                in_stated_domain: spec.stated_domain.contains(p),
                in_verified_domain: spec.verified_domain.contains(p),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::primes_in;

    fn residue(r: &VerificationReport) -> (String, String) {
        (
            r.lhs_residue.as_ref().unwrap().to_string(),
            r.rhs_residue.as_ref().unwrap().to_string(),
        )
    }

    #[test]
    fn spot_reports_at_five() {
        let cases = [
            (ClaimId::Thm11Half, "505", "625"),
            (ClaimId::Thm12, "215", "625"),
            (ClaimId::Lemma34, "5", "625"),
            (ClaimId::Sun24, "4", "5"),
            (ClaimId::Lehmer32, "14", "25"),
        ];
        for (id, want, modulus) in cases {
            let r = verify_claim(id, 5, EvalPath::Both).unwrap();
            assert_eq!(r.status, Status::Pass, "{id}");
            assert_eq!(residue(&r), (want.to_string(), want.to_string()), "{id}");
            assert_eq!(r.modulus.to_string(), modulus);
        }
    }

    #[test]
    fn not_applicable_outside_domain() {
        let r = verify_claim(ClaimId::Thm12, 3, EvalPath::Both).unwrap();
        assert_eq!(r.status, Status::NotApplicable);
        assert!(r.residual_valuation.is_none());
        let r = verify_claim(ClaimId::Sun24, 15, EvalPath::Fast).unwrap();
        assert_eq!(r.status, Status::NotApplicable);
    }

    #[test]
    fn fast_only_reports_lower_bound() {
        let r = verify_claim(ClaimId::Thm11Half, 7, EvalPath::Fast).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.residual_valuation, Some(ResidualValuation::AtLeast(4)));
        let r = verify_claim(ClaimId::Thm11Half, 7, EvalPath::Oracle).unwrap();
        assert!(matches!(
            r.residual_valuation,
            Some(ResidualValuation::Exact(Valuation::Finite(v))) if v >= 4
        ));
    }

    #[test]
    fn identity_reports_exact_values() {
        let r = verify_claim(ClaimId::Remark21Identity, 3, EvalPath::Both).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.modulus, Integer::from(0));
        assert_eq!(
            r.residual_valuation,
            Some(ResidualValuation::Exact(Valuation::Infinite))
        );
        // 4^3 / binom(6,3) - 1 = 64/20 - 1
        assert_eq!(r.lhs_residue.unwrap().to_string(), "11/5");
    }

    #[test]
    fn status_matches_residual_valuation() {
        for p in primes_in(3, 50) {
            for id in ClaimId::ALL {
                let r = verify_claim(id, p, EvalPath::Both).unwrap();
                let Some(v) = r.residual_valuation else {
                    continue;
                };
                let Some(e) = id.spec().modulus_exponent() else {
                    continue;
                };
                assert_eq!(r.status == Status::Pass, v.at_least(e), "{id} p={p}");
                assert_eq!(
                    r.status == Status::Pass,
                    r.lhs_residue == r.rhs_residue,
                    "{id} p={p}"
                );
            }
        }
    }

    #[test]
    fn boundary_examples() {
        let anomalies = boundary_anomalies();
        let get = |id| anomalies.iter().find(|a| a.claim_id == id).unwrap();
        let a = get(ClaimId::Thm11Half);
        assert_eq!(a.residual_valuation, Valuation::Finite(3));
        assert_eq!((a.lhs_residue, a.rhs_residue), (Some(51), Some(24)));
        assert_eq!(a.status, Status::Fail);
        assert_eq!(get(ClaimId::Thm11FullEqHalf).status, Status::Pass);
        assert_eq!(
            get(ClaimId::Thm11FullEqHalf).residual_valuation,
            Valuation::Finite(5)
        );
        let a = get(ClaimId::Lemma33);
        assert_eq!(
            (a.status, a.lhs_residue, a.rhs_residue),
            (Status::Fail, Some(0), Some(2))
        );
        let a = get(ClaimId::Lemma34);
        assert_eq!(
            (a.status, a.lhs_residue, a.rhs_residue),
            (Status::Fail, Some(51), Some(78))
        );
        assert!(a.in_stated_domain && !a.in_verified_domain);
        // 648 = 2^3 3^4 is not 3-integral
        assert_eq!(get(ClaimId::Conj14).lhs_residue, None);
        assert!(anomalies
            .iter()
            .all(|a| a.claim_id != ClaimId::Remark21Identity));
    }

    #[test]
    fn batch_orders_and_handles_empty() {
        assert!(verify_batch(&[], &[5, 7], PathSelector::Auto, 2)
            .unwrap()
            .is_empty());
        assert!(verify_batch(&[ClaimId::Long], &[], PathSelector::Auto, 2)
            .unwrap()
            .is_empty());
        let r = verify_batch(&[ClaimId::Thm11Half], &[5], PathSelector::Auto, 1).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].status, Status::Pass);
        let ids = [ClaimId::Thm12, ClaimId::Eq13, ClaimId::Long];
        let r = verify_batch(&ids, &[11, 5, 7], PathSelector::Auto, 3).unwrap();
        let keys: Vec<_> = r.iter().map(|r| (r.claim_id.as_str(), r.p)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(keys[0], ("eq13", 5));
    }

    #[test]
    fn auto_path_switches_at_limit() {
        assert_eq!(PathSelector::Auto.for_prime(199), EvalPath::Both);
        assert_eq!(PathSelector::Auto.for_prime(211), EvalPath::Fast);
        assert_eq!(
            PathSelector::Fixed(EvalPath::Oracle).for_prime(997),
            EvalPath::Oracle
        );
    }
}
