//! The registered congruence checks.
//!
//! Each evaluator builds both sides of its congruence as exact rationals,
//! straight from the defining sums — no shortcuts that presuppose what is
//! being verified. Shared left-hand sides are factored into helpers so the
//! cross-check in [`consistency_chain_holds`] exercises the very same code
//! paths the individual checks use.
//!
//! Notation used in the descriptions: `q_p(2) = (2^(p-1) - 1)/p` is the
//! Fermat quotient, `eps = (-1)^((p-1)/2)`, `H_n` the harmonic number,
//! `O_k = 1 + 1/3 + ... + 1/(2k-1)`, `B_n`/`E_n` the Bernoulli and Euler
//! numbers, and `P_n` the Catalan-Larcombe-French sequence.

use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::arith::{is_prime, reduce, ArithError, Integer, PrimePowerModulus, Rational};
use crate::congruence::{CongruenceCheck, CongruencePair};
use crate::sequences::{
    fermat_quotient_two, legendre_minus_one, SequenceCache, SequenceError,
};

type EvalResult = Result<Vec<CongruencePair>, SequenceError>;

fn rat(n: Integer) -> Rational {
    Rational::from_integer(n)
}

fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(Integer::from(n), Integer::from(d))
}

/// `C(2k,k)^2`.
fn central_sq(cache: &SequenceCache, k: i64) -> Integer {
    let c = cache.binomial(2 * k, k);
    &c * &c
}

fn odd_prime(p: u64) -> bool {
    p >= 3 && is_prime(&Integer::from(p))
}

fn prime_above_three(p: u64) -> bool {
    p > 3 && is_prime(&Integer::from(p))
}

/// `sum_{k=0}^{(p-3)/2} C(2k,k)^2 / ((2k+1) 16^k)`.
fn sum_central_sq_odd16(cache: &SequenceCache, p: u64) -> Rational {
    let upper = (p as i64 - 3) / 2;
    let mut sum = Rational::zero();
    let mut pow16 = Integer::one();
    for k in 0..=upper {
        sum += Rational::new(central_sq(cache, k), Integer::from(2 * k + 1) * &pow16);
        pow16 <<= 4;
    }
    sum
}

/// `sum_{k=0}^{(p-3)/2} C(2k,k)^2 H_k / ((2k+1) 16^k)`.
fn sum_central_sq_odd16_hk(cache: &SequenceCache, p: u64) -> Rational {
    let upper = (p as i64 - 3) / 2;
    let mut sum = Rational::zero();
    let mut pow16 = Integer::one();
    for k in 0..=upper {
        sum += cache.harmonic(k as u64)
            * Rational::new(central_sq(cache, k), Integer::from(2 * k + 1) * &pow16);
        pow16 <<= 4;
    }
    sum
}

/// `sum_{k=0}^{(p-3)/2} C(2k,k)^2 H_{2k} / ((2k+1) 16^k)`.
fn sum_central_sq_odd16_h2k(cache: &SequenceCache, p: u64) -> Rational {
    let upper = (p as i64 - 3) / 2;
    let mut sum = Rational::zero();
    let mut pow16 = Integer::one();
    for k in 0..=upper {
        sum += cache.harmonic(2 * k as u64)
            * Rational::new(central_sq(cache, k), Integer::from(2 * k + 1) * &pow16);
        pow16 <<= 4;
    }
    sum
}

/// `sum_{k=0}^{(p-3)/2} C((p-1)/2,k) C(2k,k) / ((2k+1) (-4)^k)`.
fn sum_half_binom_alt(cache: &SequenceCache, p: u64) -> Rational {
    let n = (p as i64 - 1) / 2;
    let mut sum = Rational::zero();
    let mut pow_m4 = Integer::one();
    for k in 0..n {
        let num = cache.binomial(n, k) * cache.binomial(2 * k, k);
        sum += Rational::new(num, Integer::from(2 * k + 1) * &pow_m4);
        pow_m4 *= -4;
    }
    sum
}

fn eval_central_odd16(cache: &SequenceCache, p: u64) -> EvalResult {
    let q = fermat_quotient_two(p)?;
    let pp = Integer::from(p);
    let rhs = rat(Integer::from(-2) * &q - &pp * &q * &q)
        + ratio(5, 12) * rat(&pp * &pp) * cache.bernoulli(p - 3);
    Ok(CongruencePair::single(3, sum_central_sq_odd16(cache, p), rhs))
}

fn eval_central16_half(cache: &SequenceCache, p: u64) -> EvalResult {
    let n = (p as i64 - 1) / 2;
    let mut lhs = Rational::zero();
    let mut pow16 = Integer::one();
    for k in 0..=n {
        lhs += Rational::new(central_sq(cache, k), pow16.clone());
        pow16 <<= 4;
    }
    let pp = Integer::from(p);
    let eps = Integer::from(legendre_minus_one(p));
    let rhs = rat(eps + &pp * &pp * cache.euler(p - 3));
    Ok(CongruencePair::single(3, lhs, rhs))
}

fn eval_central_odd16_hk(cache: &SequenceCache, p: u64) -> EvalResult {
    let q = fermat_quotient_two(p)?;
    let pp = Integer::from(p);
    let eps = Integer::from(legendre_minus_one(p));
    let euler_gap = cache.euler(2 * p - 4) - Integer::from(2) * cache.euler(p - 3);
    let rhs = rat(Integer::from(4) * &q * &q + Integer::from(2) * eps * euler_gap)
        + ratio(7, 12) * rat(pp) * cache.bernoulli(p - 3);
    Ok(CongruencePair::single(
        2,
        sum_central_sq_odd16_hk(cache, p),
        rhs,
    ))
}

fn eval_central_odd16_h2k(cache: &SequenceCache, p: u64) -> EvalResult {
    let eps = Integer::from(legendre_minus_one(p));
    let rhs = rat(Integer::from(-2) * eps * cache.euler(p - 3));
    Ok(CongruencePair::single(
        1,
        sum_central_sq_odd16_h2k(cache, p),
        rhs,
    ))
}

fn eval_central16_h2k_over_k(cache: &SequenceCache, p: u64) -> EvalResult {
    let n = (p as i64 - 1) / 2;
    let mut lhs = Rational::zero();
    let mut pow16 = Integer::from(16);
    for k in 1..=n {
        lhs += cache.harmonic(2 * k as u64)
            * Rational::new(central_sq(cache, k), Integer::from(k) * &pow16);
        pow16 <<= 4;
    }
    let eps = Integer::from(legendre_minus_one(p));
    let rhs = rat(Integer::from(4) * eps * cache.euler(p - 3));
    Ok(CongruencePair::single(1, lhs, rhs))
}

fn eval_clf_eighth(cache: &SequenceCache, p: u64) -> EvalResult {
    let mut lhs = Rational::zero();
    let mut pow8 = Integer::one();
    for k in 0..p {
        lhs += Rational::new(cache.clf(k)?, pow8.clone());
        pow8 <<= 3;
    }
    let pp = Integer::from(p);
    let eps = Integer::from(legendre_minus_one(p));
    let rhs = rat(Integer::one() + Integer::from(2) * eps * &pp * &pp * cache.euler(p - 3));
    Ok(CongruencePair::single(3, lhs, rhs))
}

fn eval_clf_sixteenth(cache: &SequenceCache, p: u64) -> EvalResult {
    let mut lhs = Rational::zero();
    let mut pow16 = Integer::one();
    for k in 0..p {
        lhs += Rational::new(cache.clf(k)?, pow16.clone());
        pow16 <<= 4;
    }
    let pp = Integer::from(p);
    let eps = Integer::from(legendre_minus_one(p));
    let rhs = rat(eps - &pp * &pp * cache.euler(p - 3));
    Ok(CongruencePair::single(3, lhs, rhs))
}

fn eval_quarter_power_family(cache: &SequenceCache, p: u64) -> EvalResult {
    let n = (p as i64 - 1) / 2;
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut pow_m4 = Integer::one();
    for k in 0..=n {
        let lhs = Rational::new(cache.binomial(n, k) * &pow_m4, cache.binomial(2 * k, k));
        let rhs = Rational::one() - rat(Integer::from(p)) * cache.odd_harmonic(k as u64);
        out.push(CongruencePair {
            member: Some(format!("k={k}")),
            exponent: 2,
            lhs,
            rhs,
        });
        pow_m4 *= -4;
    }
    Ok(out)
}

fn eval_apery_like_family(cache: &SequenceCache, p: u64) -> EvalResult {
    let n = (p as i64 - 1) / 2;
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut pow16 = Integer::one();
    for k in 0..=n {
        let signed = cache.binomial(n, k) * cache.binomial(n + k, k);
        let lhs = rat(if k % 2 == 0 { signed } else { -signed });
        let rhs = Rational::new(central_sq(cache, k), pow16.clone());
        out.push(CongruencePair {
            member: Some(format!("k={k}")),
            exponent: 2,
            lhs,
            rhs,
        });
        pow16 <<= 4;
    }
    Ok(out)
}

fn eval_harmonic_quarter(cache: &SequenceCache, p: u64) -> EvalResult {
    let q = fermat_quotient_two(p)?;
    let pp = Integer::from(p);
    let eps = Integer::from(legendre_minus_one(p));
    let euler_gap = cache.euler(2 * p - 4) - Integer::from(2) * cache.euler(p - 3);
    let rhs = rat(Integer::from(-3) * &q)
        + rat(pp.clone()) * (ratio(3, 2) * rat(&q * &q) + rat(eps * euler_gap))
        - rat(&pp * &pp) * (rat(&q * &q * &q) + ratio(7, 12) * cache.bernoulli(p - 3));
    Ok(CongruencePair::single(3, cache.harmonic(p / 4), rhs))
}

fn eval_harmonic_quarter_to_half(cache: &SequenceCache, p: u64) -> EvalResult {
    let q = fermat_quotient_two(p)?;
    let pp = Integer::from(p);
    let eps = Integer::from(legendre_minus_one(p));
    let euler_gap = cache.euler(2 * p - 4) - Integer::from(2) * cache.euler(p - 3);
    let lhs = cache.harmonic((p - 1) / 2) - cache.harmonic(p / 4);
    let rhs = rat(q.clone())
        - rat(pp.clone()) * (ratio(1, 2) * rat(&q * &q) + rat(eps * euler_gap))
        + ratio(1, 3) * rat(&pp * &pp) * rat(&q * &q * &q);
    Ok(CongruencePair::single(3, lhs, rhs))
}

fn eval_central_quarter_power(cache: &SequenceCache, p: u64) -> EvalResult {
    let n = (p as i64 - 1) / 2;
    let lhs = rat(cache.binomial(p as i64 - 1, n));
    let four_pow = Integer::one() << (2 * (p - 1)) as usize;
    let eps = legendre_minus_one(p);
    let rhs = rat(if eps == 1 { four_pow } else { -four_pow });
    Ok(CongruencePair::single(3, lhs, rhs))
}

fn eval_half_binom_alt(cache: &SequenceCache, p: u64) -> EvalResult {
    let q = fermat_quotient_two(p)?;
    let pp = Integer::from(p);
    let eps = Integer::from(legendre_minus_one(p));
    let rhs = rat(Integer::from(-2) * &q + &pp * &q * &q + eps * &pp * cache.euler(p - 3));
    Ok(CongruencePair::single(2, sum_half_binom_alt(cache, p), rhs))
}

fn eval_euler_index_shift(cache: &SequenceCache, p: u64) -> EvalResult {
    let lhs = rat(cache.euler(2 * p - 4));
    let rhs = rat(cache.euler(p - 3));
    Ok(CongruencePair::single(1, lhs, rhs))
}

fn eval_row_p_minus_one_family(cache: &SequenceCache, p: u64) -> EvalResult {
    let mut out = Vec::new();
    for j in 0..=(p as i64 - 3) / 2 {
        let lhs = rat(cache.binomial(p as i64 - 1, 2 * j));
        let rhs = Rational::one() - rat(Integer::from(p)) * cache.harmonic(2 * j as u64);
        out.push(CongruencePair {
            member: Some(format!("j={j}")),
            exponent: 2,
            lhs,
            rhs,
        });
    }
    Ok(out)
}

fn eval_tail_range(cache: &SequenceCache, p: u64) -> EvalResult {
    let mut out = Vec::new();
    for k in (p + 1) / 2..p {
        out.push(CongruencePair {
            member: Some(format!("k={k} central-binomial")),
            exponent: 2,
            lhs: rat(central_sq(cache, k as i64)),
            rhs: Rational::zero(),
        });
        let mut partial = Rational::zero();
        for i in 0..=(p - 1 - k) {
            let c = cache.binomial(k as i64, i as i64);
            let term = Rational::new(
                if i % 2 == 0 { c } else { -c },
                Integer::one() << i as usize,
            );
            partial += term;
        }
        out.push(CongruencePair {
            member: Some(format!("k={k} tail-sum")),
            exponent: 1,
            lhs: partial,
            rhs: rat(Integer::one() << (p - 1 - k) as usize),
        });
    }
    Ok(out)
}

fn eval_central16_full(cache: &SequenceCache, p: u64) -> EvalResult {
    let mut lhs = Rational::zero();
    let mut pow16 = Integer::one();
    for k in 0..p as i64 {
        lhs += Rational::new(central_sq(cache, k), pow16.clone());
        pow16 <<= 4;
    }
    let pp = Integer::from(p);
    let eps = Integer::from(legendre_minus_one(p));
    let rhs = rat(eps - &pp * &pp * cache.euler(p - 3));
    Ok(CongruencePair::single(3, lhs, rhs))
}

fn eval_central16_hk_half(cache: &SequenceCache, p: u64) -> EvalResult {
    let n = (p as i64 - 1) / 2;
    let mut lhs = Rational::zero();
    let mut pow16 = Integer::one();
    for k in 0..=n {
        lhs += cache.harmonic(k as u64) * Rational::new(central_sq(cache, k), pow16.clone());
        pow16 <<= 4;
    }
    let eps = Integer::from(legendre_minus_one(p));
    let rhs = rat(Integer::from(2) * eps) * cache.harmonic((p - 1) / 2);
    Ok(CongruencePair::single(2, lhs, rhs))
}

fn eval_central16_h2k_half(cache: &SequenceCache, p: u64) -> EvalResult {
    let n = (p as i64 - 1) / 2;
    let mut lhs = Rational::zero();
    let mut pow16 = Integer::one();
    for k in 0..=n {
        lhs += cache.harmonic(2 * k as u64)
            * Rational::new(central_sq(cache, k), pow16.clone());
        pow16 <<= 4;
    }
    let eps = Integer::from(legendre_minus_one(p));
    let rhs = ratio(3, 2) * rat(eps) * cache.harmonic((p - 1) / 2)
        + rat(Integer::from(p) * cache.euler(p - 3));
    Ok(CongruencePair::single(2, lhs, rhs))
}

static REGISTRY: [CongruenceCheck; 19] = [
    CongruenceCheck {
        id: "C-1-1",
        description: "sum_{k=0}^{(p-3)/2} C(2k,k)^2/((2k+1)16^k) = -2q_p(2) - p q_p(2)^2 + (5/12) p^2 B_{p-3} (mod p^3)",
        exponent: 3,
        applicable: prime_above_three,
        eval: eval_central_odd16,
    },
    CongruenceCheck {
        id: "C-1-2",
        description: "sum_{k=0}^{(p-1)/2} C(2k,k)^2/16^k = eps + p^2 E_{p-3} (mod p^3)",
        exponent: 3,
        applicable: prime_above_three,
        eval: eval_central16_half,
    },
    CongruenceCheck {
        id: "C-1-3",
        description: "sum_{k=0}^{(p-3)/2} C(2k,k)^2 H_k/((2k+1)16^k) = 4q_p(2)^2 + 2 eps (E_{2p-4} - 2E_{p-3}) + (7/12) p B_{p-3} (mod p^2)",
        exponent: 2,
        applicable: prime_above_three,
        eval: eval_central_odd16_hk,
    },
    CongruenceCheck {
        id: "C-1-4",
        description: "sum_{k=0}^{(p-3)/2} C(2k,k)^2 H_{2k}/((2k+1)16^k) = -2 eps E_{p-3} (mod p)",
        exponent: 1,
        applicable: prime_above_three,
        eval: eval_central_odd16_h2k,
    },
    CongruenceCheck {
        id: "C-REMARK",
        description: "sum_{k=1}^{(p-1)/2} C(2k,k)^2 H_{2k}/(k 16^k) = 4 eps E_{p-3} (mod p)",
        exponent: 1,
        applicable: prime_above_three,
        eval: eval_central16_h2k_over_k,
    },
    CongruenceCheck {
        id: "C-1-5",
        description: "sum_{k=0}^{p-1} P_k/8^k = 1 + 2 eps p^2 E_{p-3} (mod p^3)",
        exponent: 3,
        applicable: odd_prime,
        eval: eval_clf_eighth,
    },
    CongruenceCheck {
        id: "C-1-6",
        description: "sum_{k=0}^{p-1} P_k/16^k = eps - p^2 E_{p-3} (mod p^3)",
        exponent: 3,
        applicable: odd_prime,
        eval: eval_clf_sixteenth,
    },
    CongruenceCheck {
        id: "C-2-1",
        description: "C((p-1)/2,k)(-4)^k/C(2k,k) = 1 - p O_k (mod p^2) for every 0 <= k <= (p-1)/2",
        exponent: 2,
        applicable: odd_prime,
        eval: eval_quarter_power_family,
    },
    CongruenceCheck {
        id: "C-2-2",
        description: "(-1)^k C((p-1)/2,k) C((p-1)/2+k,k) = C(2k,k)^2/16^k (mod p^2) for every 0 <= k <= (p-1)/2",
        exponent: 2,
        applicable: odd_prime,
        eval: eval_apery_like_family,
    },
    CongruenceCheck {
        id: "C-L22-A",
        description: "H_{floor(p/4)} = -3q_p(2) + p((3/2)q_p(2)^2 + eps(E_{2p-4} - 2E_{p-3})) - p^2(q_p(2)^3 + (7/12)B_{p-3}) (mod p^3)",
        exponent: 3,
        applicable: prime_above_three,
        eval: eval_harmonic_quarter,
    },
    CongruenceCheck {
        id: "C-L22-B",
        description: "H_{(p-1)/2} - H_{floor(p/4)} = q_p(2) - p((1/2)q_p(2)^2 + eps(E_{2p-4} - 2E_{p-3})) + (1/3) p^2 q_p(2)^3 (mod p^3)",
        exponent: 3,
        applicable: prime_above_three,
        eval: eval_harmonic_quarter_to_half,
    },
    CongruenceCheck {
        id: "C-MORLEY",
        description: "C(p-1,(p-1)/2) = eps 4^(p-1) (mod p^3)",
        exponent: 3,
        applicable: prime_above_three,
        eval: eval_central_quarter_power,
    },
    CongruenceCheck {
        id: "C-2-5",
        description: "sum_{k=0}^{(p-3)/2} C((p-1)/2,k)C(2k,k)/((2k+1)(-4)^k) = -2q_p(2) + p q_p(2)^2 + eps p E_{p-3} (mod p^2)",
        exponent: 2,
        applicable: prime_above_three,
        eval: eval_half_binom_alt,
    },
    CongruenceCheck {
        id: "C-EULER-SHIFT",
        description: "E_{2p-4} = E_{p-3} (mod p)",
        exponent: 1,
        applicable: prime_above_three,
        eval: eval_euler_index_shift,
    },
    CongruenceCheck {
        id: "C-BINOM-P1",
        description: "C(p-1,2j) = 1 - p H_{2j} (mod p^2) for every 0 <= j <= (p-3)/2",
        exponent: 2,
        applicable: prime_above_three,
        eval: eval_row_p_minus_one_family,
    },
    CongruenceCheck {
        id: "C-TAIL",
        description: "for every (p+1)/2 <= k <= p-1: C(2k,k)^2 = 0 (mod p^2) and sum_{i=0}^{p-1-k} C(k,i)(-1/2)^i = 2^(p-1-k) (mod p)",
        exponent: 2,
        applicable: odd_prime,
        eval: eval_tail_range,
    },
    CongruenceCheck {
        id: "C-16-FULL",
        description: "sum_{k=0}^{p-1} C(2k,k)^2/16^k = eps - p^2 E_{p-3} (mod p^3)",
        exponent: 3,
        applicable: prime_above_three,
        eval: eval_central16_full,
    },
    CongruenceCheck {
        id: "C-SU3-HK",
        description: "sum_{k=0}^{(p-1)/2} C(2k,k)^2 H_k/16^k = 2 eps H_{(p-1)/2} (mod p^2)",
        exponent: 2,
        applicable: prime_above_three,
        eval: eval_central16_hk_half,
    },
    CongruenceCheck {
        id: "C-SU3-H2K",
        description: "sum_{k=0}^{(p-1)/2} C(2k,k)^2 H_{2k}/16^k = (3/2) eps H_{(p-1)/2} + p E_{p-3} (mod p^2)",
        exponent: 2,
        applicable: prime_above_three,
        eval: eval_central16_h2k_half,
    },
];

/// Every registered check, in canonical report order.
pub fn registry() -> &'static [CongruenceCheck] {
    &REGISTRY
}

/// Look a check up by id.
pub fn find(id: &str) -> Option<&'static CongruenceCheck> {
    REGISTRY.iter().find(|c| c.id == id)
}

/// The least prime a check covers.
pub fn smallest_applicable_prime(check: &CongruenceCheck) -> u64 {
    let mut p = 2;
    loop {
        if (check.applicable)(p) {
            return p;
        }
        p += 1;
        assert!(p < 1000, "no applicable prime found for {}", check.id);
    }
}

/// Cross-check that ties four left-hand sides together modulo p^2:
///
/// `p * sum_{k} C(2k,k)^2 H_{2k}/((2k+1)16^k)` must agree with
/// `(p/2) * sum_k C(2k,k)^2 H_k/((2k+1)16^k)
///   + sum_k C(2k,k)^2/((2k+1)16^k)
///   - sum_k C((p-1)/2,k)C(2k,k)/((2k+1)(-4)^k)`,
///
/// all sums over `0 <= k <= (p-3)/2`. This is how the H_{2k}-weighted sum is
/// pinned down from the other three, and it holds at every prime p > 3
/// independently of the closed forms on the right-hand sides.
pub fn consistency_chain_holds(cache: &SequenceCache, p: u64) -> Result<bool, ArithError> {
    assert!(prime_above_three(p), "chain needs a prime above 3");
    let modulus = PrimePowerModulus::from_u64(p, 2)?;
    let pp = rat(Integer::from(p));
    let left = pp.clone() * sum_central_sq_odd16_h2k(cache, p);
    let right = pp * ratio(1, 2) * sum_central_sq_odd16_hk(cache, p)
        + sum_central_sq_odd16(cache, p)
        - sum_half_binom_alt(cache, p);
    Ok(reduce(&left, &modulus)? == reduce(&right, &modulus)?)
}
