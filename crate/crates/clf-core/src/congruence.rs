//! Congruence verification.
//!
//! Every check registers two exact rational expressions of an odd prime `p`
//! that must agree modulo `p^e`. Verification computes both sides exactly,
//! reduces them into `[0, p^e)`, and measures the p-adic valuation of the
//! exact difference, so a report says not just pass/fail but how much slack
//! the congruence has. Checks that quantify over an inner index (families)
//! yield one (lhs, rhs) pair per member; the check passes only if every
//! member does, and the reported residues belong to the tightest member.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::time::Duration;

use num_traits::Zero;

use crate::arith::{
    reduce, valuation_capped, ArithError, Integer, PrimePowerModulus, Rational,
};
use crate::sequences::{SequenceCache, SequenceError};

pub mod checks;

/// How far above the claimed exponent valuations are measured before being
/// capped: a report's valuation is `min(v_p(lhs - rhs), exponent + 3)`.
pub const VALUATION_HEADROOM: u64 = 3;

/// One (lhs, rhs) instance of a congruence at a fixed prime.
#[derive(Clone, Debug)]
pub struct CongruencePair {
    /// Family member tag such as `"k=3"`; `None` for single-instance checks.
    pub member: Option<String>,
    /// Modulus exponent this member is claimed at.
    pub exponent: u32,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl CongruencePair {
    /// The common single-instance case.
    pub fn single(exponent: u32, lhs: Rational, rhs: Rational) -> Vec<CongruencePair> {
        vec![CongruencePair {
            member: None,
            exponent,
            lhs,
            rhs,
        }]
    }
}

/// A registered congruence between exact expressions of a prime.
pub struct CongruenceCheck {
    pub id: &'static str,
    /// Self-contained statement of what is being verified.
    pub description: &'static str,
    /// Largest exponent any member is claimed at.
    pub exponent: u32,
    /// Which primes the statement covers.
    pub applicable: fn(u64) -> bool,
    /// Produce every (lhs, rhs) pair the check asserts at `p`.
    pub eval: fn(&SequenceCache, u64) -> Result<Vec<CongruencePair>, SequenceError>,
}

impl fmt::Debug for CongruenceCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CongruenceCheck")
            .field("id", &self.id)
            .field("exponent", &self.exponent)
            .finish()
    }
}

/// Optional tampering applied to every right-hand side before verification;
/// used to prove the harness can actually fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Perturbation {
    None,
    /// Add `p^(e-1)` to each member's rhs: must break a claim at exponent e.
    BelowClaim,
    /// Add `p^e` to each member's rhs: must leave every claim intact.
    AtClaim,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyError {
    /// The check does not cover this prime.
    NotApplicable { check: &'static str, prime: u64 },
    /// A sequence evaluation failed while building the two sides.
    Sequence {
        check: &'static str,
        prime: u64,
        source: SequenceError,
    },
    /// Reduction into the residue ring failed.
    Arith {
        check: &'static str,
        prime: u64,
        member: Option<String>,
        source: ArithError,
    },
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::NotApplicable { check, prime } => {
                write!(f, "{check} is not applicable at p={prime}")
            }
            VerifyError::Sequence {
                check,
                prime,
                source,
            } => write!(f, "{check} at p={prime}: {source}"),
            VerifyError::Arith {
                check,
                prime,
                member,
                source,
            } => match member {
                Some(m) => write!(f, "{check} at p={prime} ({m}): {source}"),
                None => write!(f, "{check} at p={prime}: {source}"),
            },
        }
    }
}

impl core::error::Error for VerifyError {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        match self {
            VerifyError::NotApplicable { .. } => None,
            VerifyError::Sequence { source, .. } => Some(source),
            VerifyError::Arith { source, .. } => Some(source),
        }
    }
}

/// Outcome of one check at one prime.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub check_id: &'static str,
    pub prime: u64,
    /// Exponent of the member the residues below belong to.
    pub exponent: u32,
    /// Canonical residues of the two sides modulo `p^exponent`.
    pub lhs_residue: Integer,
    pub rhs_residue: Integer,
    /// `v_p(lhs - rhs)`, capped at `exponent + 3`.
    pub valuation: u64,
    /// True iff every member agreed at its claimed exponent.
    pub pass: bool,
    /// Which member the residues describe (the one with the least slack).
    pub member: Option<String>,
    /// Number of (lhs, rhs) pairs checked.
    pub members: usize,
    /// Wall-clock cost when a driver chose to record it. Never included in
    /// rendered reports, so output stays byte-identical across runs.
    pub elapsed: Option<Duration>,
}

/// Verify one check at one prime.
pub fn verify(
    cache: &SequenceCache,
    check: &CongruenceCheck,
    p: u64,
) -> Result<VerificationReport, VerifyError> {
    verify_perturbed(cache, check, p, Perturbation::None)
}

/// Verify with an optional rhs perturbation (see [`Perturbation`]).
pub fn verify_perturbed(
    cache: &SequenceCache,
    check: &CongruenceCheck,
    p: u64,
    perturbation: Perturbation,
) -> Result<VerificationReport, VerifyError> {
    if !(check.applicable)(p) {
        return Err(VerifyError::NotApplicable {
            check: check.id,
            prime: p,
        });
    }
    let pairs = (check.eval)(cache, p).map_err(|source| VerifyError::Sequence {
        check: check.id,
        prime: p,
        source,
    })?;
    debug_assert!(!pairs.is_empty(), "{} produced no pairs", check.id);

    let prime = Integer::from(p);
    let total = pairs.len();
    let mut all_pass = true;
    let mut reported: Option<(i64, VerificationReport)> = None;

    for pair in pairs {
        let arith_err = |source, member: &Option<String>| VerifyError::Arith {
            check: check.id,
            prime: p,
            member: member.clone(),
            source,
        };
        let rhs = match perturbation {
            Perturbation::None => pair.rhs,
            Perturbation::BelowClaim => {
                &pair.rhs + Rational::from_integer(prime.pow(pair.exponent - 1))
            }
            Perturbation::AtClaim => &pair.rhs + Rational::from_integer(prime.pow(pair.exponent)),
        };
        let modulus = PrimePowerModulus::from_u64(p, pair.exponent)
            .map_err(|e| arith_err(e, &pair.member))?;
        let lhs_residue = reduce(&pair.lhs, &modulus).map_err(|e| arith_err(e, &pair.member))?;
        let rhs_residue = reduce(&rhs, &modulus).map_err(|e| arith_err(e, &pair.member))?;

        let cap = pair.exponent as u64 + VALUATION_HEADROOM;
        let diff = &pair.lhs - &rhs;
        // Both denominators reduced cleanly, so they are p-free and the
        // valuation lives entirely in the numerator.
        let valuation = if diff.is_zero() {
            cap
        } else {
            valuation_capped(diff.numer(), &prime, cap).capped(cap)
        };
        let member_pass = valuation >= pair.exponent as u64;
        debug_assert_eq!(member_pass, lhs_residue == rhs_residue);
        all_pass &= member_pass;

        let slack = valuation as i64 - pair.exponent as i64;
        let replace = match &reported {
            None => true,
            Some((best_slack, _)) => slack < *best_slack,
        };
        if replace {
            reported = Some((
                slack,
                VerificationReport {
                    check_id: check.id,
                    prime: p,
                    exponent: pair.exponent,
                    lhs_residue: lhs_residue.into_value(),
                    rhs_residue: rhs_residue.into_value(),
                    valuation,
                    pass: true, // patched below once all members are known
                    member: pair.member,
                    members: total,
                    elapsed: None,
                },
            ));
        }
    }

    let (_, mut report) = reported.expect("at least one pair");
    report.pass = all_pass;
    Ok(report)
}

/// Applicable (check, prime) pairs in canonical order: checks in the order
/// given, primes ascending within each check.
pub fn schedule<'a>(
    checks: &[&'a CongruenceCheck],
    primes: &[u64],
) -> Vec<(&'a CongruenceCheck, u64)> {
    let mut sorted = primes.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut out = Vec::new();
    for check in checks {
        for &p in &sorted {
            if (check.applicable)(p) {
                out.push((*check, p));
            }
        }
    }
    out
}

/// Outcome of verifying a set of checks over a set of primes, in canonical
/// order. Inapplicable pairs are skipped, not errors.
#[derive(Debug, Default)]
pub struct RangeOutcome {
    pub rows: Vec<Result<VerificationReport, VerifyError>>,
}

impl RangeOutcome {
    pub fn pairs(&self) -> usize {
        self.rows.len()
    }

    pub fn passed(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| matches!(r, Ok(rep) if rep.pass))
            .count()
    }

    pub fn failed(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| matches!(r, Ok(rep) if !rep.pass))
            .count()
    }

    pub fn errored(&self) -> usize {
        self.rows.iter().filter(|r| r.is_err()).count()
    }

    pub fn all_pass(&self) -> bool {
        self.failed() == 0 && self.errored() == 0
    }
}

/// Serially verify every applicable (check, prime) pair.
pub fn verify_range(
    cache: &SequenceCache,
    checks: &[&CongruenceCheck],
    primes: &[u64],
) -> RangeOutcome {
    let rows = schedule(checks, primes)
        .into_iter()
        .map(|(check, p)| verify(cache, check, p))
        .collect();
    RangeOutcome { rows }
}
