//! Exact rational identities, checked pointwise.
//!
//! Each identity is evaluated as two independent [`Rational`] expressions and
//! compared for exact equality — no congruences, no tolerance. These are
//! theorems, so a failure at any point means the evaluator (not the input)
//! is wrong; the sweep report carries the first counterexample to make that
//! diagnosable.

use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::arith::{Integer, Rational};
use crate::sequences::SequenceCache;

/// Both sides of one identity at one parameter point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityOutcome {
    pub id: &'static str,
    pub n: u64,
    /// Second parameter, used only by the two-parameter sums.
    pub m: Option<u64>,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl IdentityOutcome {
    pub fn pass(&self) -> bool {
        self.lhs == self.rhs
    }
}

impl fmt::Display for IdentityOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.m {
            Some(m) => write!(
                f,
                "{} at (N={}, m={}): {} vs {}",
                self.id, self.n, m, self.lhs, self.rhs
            ),
            None => write!(f, "{} at n={}: {} vs {}", self.id, self.n, self.lhs, self.rhs),
        }
    }
}

pub const ALT_HARMONIC: &str = "I-ALT-HARMONIC";
pub const CENTRAL_SUM: &str = "I-CENTRAL-SUM";
pub const BINOM_HALF: &str = "I-BINOM-HALF";
pub const HOCKEY_STICK: &str = "I-HOCKEY-STICK";
pub const H2K_SPLIT: &str = "I-H2K-SPLIT";

/// Ids of every identity the sweep runs, in canonical order.
pub const IDENTITY_IDS: [&str; 5] = [
    ALT_HARMONIC,
    CENTRAL_SUM,
    BINOM_HALF,
    HOCKEY_STICK,
    H2K_SPLIT,
];

fn rat(n: Integer) -> Rational {
    Rational::from_integer(n)
}

/// `sum_{k<n} C(n,k) C(n+k,k) (-1)^k H_k / (2k+1)`
/// `= -H_n C(2n,n) (-1)^n / (2n+1) + (2/(2n+1)) sum_{k=1}^{n} (-1)^k / k`.
pub fn identity_alternating_harmonic(cache: &SequenceCache, n: u64) -> IdentityOutcome {
    assert!(n >= 1);
    let ni = n as i64;
    let mut lhs = Rational::zero();
    for k in 0..ni {
        let coeff = cache.binomial(ni, k) * cache.binomial(ni + k, k);
        let coeff = if k % 2 == 0 { coeff } else { -coeff };
        lhs += cache.harmonic(k as u64) * Rational::new(coeff, Integer::from(2 * k + 1));
    }

    let central = cache.binomial(2 * ni, ni);
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let mut alt = Rational::zero();
    for k in 1..=ni {
        let term = Rational::new(Integer::from(if k % 2 == 0 { 1 } else { -1 }), Integer::from(k));
        alt += term;
    }
    let rhs = -cache.harmonic(n) * Rational::new(central * sign, Integer::from(2 * ni + 1))
        + Rational::new(Integer::from(2), Integer::from(2 * ni + 1)) * alt;

    IdentityOutcome {
        id: ALT_HARMONIC,
        n,
        m: None,
        lhs,
        rhs,
    }
}

/// `sum_{k<n} C(n,k) C(2k,k) / ((2k+1) (-4)^k)`
/// `= -C(2n,n) / ((2n+1) (-4)^n) + (4^n / ((2n+1) C(2n,n))) sum_{k=0}^{n} C(2k,k)^2 / 16^k`.
pub fn identity_central_binomial_transform(cache: &SequenceCache, n: u64) -> IdentityOutcome {
    assert!(n >= 1);
    let ni = n as i64;
    let mut lhs = Rational::zero();
    let mut pow_m4 = Integer::one();
    for k in 0..ni {
        let num = cache.binomial(ni, k) * cache.binomial(2 * k, k);
        lhs += Rational::new(num, Integer::from(2 * k + 1) * &pow_m4);
        pow_m4 *= -4;
    }

    let central = cache.binomial(2 * ni, ni);
    let m4_n = {
        let v = Integer::one() << (2 * n) as usize;
        if n % 2 == 0 {
            v
        } else {
            -v
        }
    };
    let first = -Rational::new(central.clone(), Integer::from(2 * ni + 1) * m4_n);
    let mut sixteenth = Rational::zero();
    let mut pow16 = Integer::one();
    for k in 0..=ni {
        let c = cache.binomial(2 * k, k);
        sixteenth += Rational::new(&c * &c, pow16.clone());
        pow16 <<= 4;
    }
    let scale = Rational::new(
        Integer::one() << (2 * n) as usize,
        Integer::from(2 * ni + 1) * central,
    );
    let rhs = first + scale * sixteenth;

    IdentityOutcome {
        id: CENTRAL_SUM,
        n,
        m: None,
        lhs,
        rhs,
    }
}

/// `sum_{k=0}^{n} C(n+k,k) / 2^k = 2^n`.
pub fn identity_binom_half(cache: &SequenceCache, n: u64) -> IdentityOutcome {
    let ni = n as i64;
    let mut lhs = Rational::zero();
    let mut pow2 = Integer::one();
    for k in 0..=ni {
        lhs += Rational::new(cache.binomial(ni + k, k), pow2.clone());
        pow2 <<= 1;
    }
    IdentityOutcome {
        id: BINOM_HALF,
        n,
        m: None,
        lhs,
        rhs: rat(Integer::one() << n as usize),
    }
}

/// `sum_{k=m}^{N} C(k,m) = C(N+1, m+1)`.
pub fn identity_hockey_stick(cache: &SequenceCache, big_n: u64, m: u64) -> IdentityOutcome {
    assert!(m <= big_n);
    let (ni, mi) = (big_n as i64, m as i64);
    let mut lhs = Integer::zero();
    for k in mi..=ni {
        lhs += cache.binomial(k, mi);
    }
    IdentityOutcome {
        id: HOCKEY_STICK,
        n: big_n,
        m: Some(m),
        lhs: rat(lhs),
        rhs: rat(cache.binomial(ni + 1, mi + 1)),
    }
}

/// `H_{2k} = H_k / 2 + sum_{j=1}^{k} 1/(2j-1)`.
pub fn identity_h2k_split(cache: &SequenceCache, k: u64) -> IdentityOutcome {
    let lhs = cache.harmonic(2 * k);
    let rhs = cache.harmonic(k) / Rational::from_integer(Integer::from(2)) + cache.odd_harmonic(k);
    IdentityOutcome {
        id: H2K_SPLIT,
        n: k,
        m: None,
        lhs,
        rhs,
    }
}

/// Tally for one identity across its swept domain.
#[derive(Clone, Debug)]
pub struct IdentityStats {
    pub id: &'static str,
    pub cases: u64,
    pub failures: u64,
    pub first_failure: Option<IdentityOutcome>,
}

impl IdentityStats {
    pub fn pass(&self) -> bool {
        self.failures == 0
    }

    fn record(&mut self, outcome: IdentityOutcome) {
        self.cases += 1;
        if !outcome.pass() {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(outcome);
            }
        }
    }
}

/// Result of sweeping every identity up to a bound.
#[derive(Clone, Debug)]
pub struct IdentitySweep {
    pub bound: u64,
    pub stats: Vec<IdentityStats>,
}

impl IdentitySweep {
    pub fn all_pass(&self) -> bool {
        self.stats.iter().all(IdentityStats::pass)
    }

    pub fn total_cases(&self) -> u64 {
        self.stats.iter().map(|s| s.cases).sum()
    }
}

/// Cap on the two-parameter hockey-stick domain, so the sweep's case count
/// stays within a constant factor of the single-parameter identities.
pub const HOCKEY_STICK_CAP: u64 = 100;

/// Run every identity for all parameters up to `bound` (the two-parameter
/// sum over all `0 <= m <= N <= min(bound, 100)`).
pub fn run_identities(cache: &SequenceCache, bound: u64) -> IdentitySweep {
    assert!(bound >= 1);
    let mut stats: Vec<IdentityStats> = IDENTITY_IDS
        .iter()
        .map(|id| IdentityStats {
            id,
            cases: 0,
            failures: 0,
            first_failure: None,
        })
        .collect();

    for n in 1..=bound {
        stats[0].record(identity_alternating_harmonic(cache, n));
        stats[1].record(identity_central_binomial_transform(cache, n));
    }
    for n in 0..=bound {
        stats[2].record(identity_binom_half(cache, n));
    }
    let cap = bound.min(HOCKEY_STICK_CAP);
    for big_n in 0..=cap {
        for m in 0..=big_n {
            stats[3].record(identity_hockey_stick(cache, big_n, m));
        }
    }
    for k in 0..=bound {
        stats[4].record(identity_h2k_split(cache, k));
    }

    IdentitySweep { bound, stats }
}
