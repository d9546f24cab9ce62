//! The named sequences: factorials and binomials, harmonic and odd-harmonic
//! sums, Bernoulli and Euler numbers, and the Catalan-Larcombe-French numbers
//! in their several equivalent forms.
//!
//! All sequence values flow through a [`SequenceCache`]. Tables only ever
//! grow, and an entry, once written, never changes, so interior mutability
//! through `RefCell` is sound: no borrow is held across a user callback.
//! The cache is deliberately not `Sync`; parallel drivers give each worker
//! its own cache.

use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use num_integer::Integer as IntegerOps;
use num_traits::{One, Zero};

use crate::arith::{is_prime, Integer, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SequenceError {
    /// A sum that must be an integer on mathematical grounds failed to be
    /// one; this indicates a defect in the evaluator, never in the input.
    NonIntegerSum { n: u64 },
    /// The three-term recurrence produced a numerator not divisible by the
    /// leading coefficient `(n+1)^2`.
    NonDivisible { n: u64 },
    /// The argument must be an odd prime.
    NotOddPrime(u64),
    /// An externally supplied table failed validation at the given index.
    TableRejected {
        table: &'static str,
        index: usize,
    },
}

impl fmt::Display for SequenceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceError::NonIntegerSum { n } => {
                write!(f, "sum at index {n} is not an integer")
            }
            SequenceError::NonDivisible { n } => {
                write!(f, "recurrence numerator at n={n} is not divisible by (n+1)^2")
            }
            SequenceError::NotOddPrime(p) => write!(f, "{p} is not an odd prime"),
            SequenceError::TableRejected { table, index } => {
                write!(f, "{table} table failed validation at index {index}")
            }
        }
    }
}

impl core::error::Error for SequenceError {}

/// Grow-only memo tables for every sequence the kernels consume.
pub struct SequenceCache {
    factorial: RefCell<Vec<Integer>>,
    harmonic: RefCell<Vec<Rational>>,
    odd_harmonic: RefCell<Vec<Rational>>,
    bernoulli: RefCell<Vec<Rational>>,
    euler: RefCell<Vec<Integer>>,
    clf: RefCell<Vec<Integer>>,
}

impl Default for SequenceCache {
    fn default() -> Self {
        Self::new()
    }
}

impl SequenceCache {
    pub fn new() -> Self {
        SequenceCache {
            factorial: RefCell::new(vec![Integer::one()]),
            harmonic: RefCell::new(vec![Rational::zero()]),
            odd_harmonic: RefCell::new(vec![Rational::zero()]),
            bernoulli: RefCell::new(Vec::new()),
            euler: RefCell::new(Vec::new()),
            clf: RefCell::new(Vec::new()),
        }
    }

    /// `n!`.
    pub fn factorial(&self, n: u64) -> Integer {
        let n = n as usize;
        loop {
            {
                let table = self.factorial.borrow();
                if let Some(v) = table.get(n) {
                    return v.clone();
                }
            }
            let next = {
                let table = self.factorial.borrow();
                let m = table.len();
                table[m - 1].clone() * m as u64
            };
            self.factorial.borrow_mut().push(next);
        }
    }

    /// Binomial coefficient with the full integer-argument convention:
    /// zero for `k < 0` or `0 <= n < k`, and for `n < 0` the reflection
    /// `(-1)^k * C(k-n-1, k)`.
    pub fn binomial(&self, n: i64, k: i64) -> Integer {
        if k < 0 {
            return Integer::zero();
        }
        if n >= 0 {
            if k > n {
                return Integer::zero();
            }
            let num = self.factorial(n as u64);
            let den = self.factorial(k as u64) * self.factorial((n - k) as u64);
            num / den
        } else {
            let reflected = self.binomial(k - n - 1, k);
            if k % 2 == 0 {
                reflected
            } else {
                -reflected
            }
        }
    }

    /// Harmonic number `H_n = 1 + 1/2 + ... + 1/n`, with `H_0 = 0`.
    pub fn harmonic(&self, n: u64) -> Rational {
        let n = n as usize;
        loop {
            {
                let table = self.harmonic.borrow();
                if let Some(v) = table.get(n) {
                    return v.clone();
                }
            }
            let next = {
                let table = self.harmonic.borrow();
                let m = table.len() as u64;
                &table[table.len() - 1] + Rational::new(Integer::one(), Integer::from(m))
            };
            self.harmonic.borrow_mut().push(next);
        }
    }

    /// Odd harmonic number `O_k = 1 + 1/3 + ... + 1/(2k-1)`, with `O_0 = 0`.
    pub fn odd_harmonic(&self, k: u64) -> Rational {
        let k = k as usize;
        loop {
            {
                let table = self.odd_harmonic.borrow();
                if let Some(v) = table.get(k) {
                    return v.clone();
                }
            }
            let next = {
                let table = self.odd_harmonic.borrow();
                let m = table.len() as u64;
                &table[table.len() - 1] + Rational::new(Integer::one(), Integer::from(2 * m - 1))
            };
            self.odd_harmonic.borrow_mut().push(next);
        }
    }

    /// Bernoulli number `B_n` (convention `B_1 = -1/2`), computed from the
    /// defining recurrence: for n >= 1, `sum_{k=0}^{n} C(n+1,k) B_k = 0`.
    pub fn bernoulli(&self, n: u64) -> Rational {
        let n = n as usize;
        loop {
            {
                let table = self.bernoulli.borrow();
                if let Some(v) = table.get(n) {
                    return v.clone();
                }
            }
            let next = {
                let table = self.bernoulli.borrow();
                let m = table.len();
                if m == 0 {
                    Rational::one()
                } else {
                    // B_m = -(sum_{k<m} C(m+1,k) B_k) / (m+1), with the
                    // binomial row built incrementally.
                    let mut sum = Rational::zero();
                    let mut c = Integer::one(); // C(m+1, 0)
                    for (k, b) in table.iter().enumerate() {
                        sum += b * Rational::from_integer(c.clone());
                        c = c * (m as u64 + 1 - k as u64) / (k as u64 + 1);
                    }
                    -sum / Rational::from_integer(Integer::from(m as u64 + 1))
                }
            };
            self.bernoulli.borrow_mut().push(next);
        }
    }

    /// Euler number `E_n` (integer convention: `E_0 = 1`, odd-index values
    /// vanish), from `E_n = -sum_{k=1}^{n/2} C(n,2k) E_{n-2k}` for n >= 1.
    pub fn euler(&self, n: u64) -> Integer {
        let n = n as usize;
        loop {
            {
                let table = self.euler.borrow();
                if let Some(v) = table.get(n) {
                    return v.clone();
                }
            }
            let next = {
                let table = self.euler.borrow();
                let m = table.len();
                if m == 0 {
                    Integer::one()
                } else {
                    let mut sum = Integer::zero();
                    // C(m, 2k), stepped by two columns at a time.
                    let mut c = Integer::one();
                    let mut j = 0u64;
                    while j + 2 <= m as u64 {
                        c = c * (m as u64 - j) * (m as u64 - j - 1)
                            / ((j + 1) * (j + 2));
                        j += 2;
                        sum += &c * &table[m - j as usize];
                    }
                    -sum
                }
            };
            self.euler.borrow_mut().push(next);
        }
    }

    /// `P_n`, from the defining sum
    /// `P_n = sum_k C(2k,k)^2 C(2(n-k),n-k)^2 / C(n,k)`.
    ///
    /// The sum is accumulated over the rationals and the result checked to be
    /// an integer, so a transcription slip here cannot silently round.
    pub fn clf(&self, n: u64) -> Result<Integer, SequenceError> {
        let n = n as usize;
        loop {
            {
                let table = self.clf.borrow();
                if let Some(v) = table.get(n) {
                    return Ok(v.clone());
                }
            }
            let next = {
                let m = self.clf.borrow().len() as i64;
                let mut sum = Rational::zero();
                for k in 0..=m {
                    let a = self.binomial(2 * k, k);
                    let b = self.binomial(2 * (m - k), m - k);
                    let num = &a * &a * &b * &b;
                    sum += Rational::new(num, self.binomial(m, k));
                }
                if !sum.is_integer() {
                    return Err(SequenceError::NonIntegerSum { n: m as u64 });
                }
                sum.to_integer()
            };
            self.clf.borrow_mut().push(next);
        }
    }

    /// Positions already materialized in the Bernoulli table.
    pub fn bernoulli_len(&self) -> usize {
        self.bernoulli.borrow().len()
    }

    pub fn euler_len(&self) -> usize {
        self.euler.borrow().len()
    }

    /// Clone out the first `len` Bernoulli numbers, extending the table as
    /// needed.
    pub fn bernoulli_prefix(&self, len: usize) -> Vec<Rational> {
        if len > 0 {
            self.bernoulli(len as u64 - 1);
        }
        self.bernoulli.borrow()[..len].to_vec()
    }

    pub fn euler_prefix(&self, len: usize) -> Vec<Integer> {
        if len > 0 {
            self.euler(len as u64 - 1);
        }
        self.euler.borrow()[..len].to_vec()
    }

    /// Adopt an externally supplied Bernoulli table (e.g. from a cache file).
    ///
    /// Structural checks run over the whole table (`B_0 = 1`, `B_1 = -1/2`,
    /// odd-index entries from 3 on vanish); the defining recurrence is then
    /// re-verified at each index in `spot_checks`. Any entries already
    /// materialized must agree with the incoming prefix.
    pub fn adopt_bernoulli(
        &self,
        table: &[Rational],
        spot_checks: &[usize],
    ) -> Result<(), SequenceError> {
        let reject = |index| SequenceError::TableRejected {
            table: "bernoulli",
            index,
        };
        for (i, b) in table.iter().enumerate() {
            let ok = match i {
                0 => b.is_one(),
                1 => *b == Rational::new(Integer::from(-1), Integer::from(2)),
                i if i % 2 == 1 => b.is_zero(),
                _ => true,
            };
            if !ok {
                return Err(reject(i));
            }
        }
        for &i in spot_checks {
            if i >= table.len() {
                return Err(reject(i));
            }
            // sum_{k=0}^{i} C(i+1,k) B_k = 0 for i >= 1.
            if i >= 1 {
                let mut sum = Rational::zero();
                let mut c = Integer::one();
                for (k, b) in table.iter().take(i + 1).enumerate() {
                    sum += b * Rational::from_integer(c.clone());
                    c = c * (i as u64 + 1 - k as u64) / (k as u64 + 1);
                }
                if !sum.is_zero() {
                    return Err(reject(i));
                }
            }
        }
        let mut own = self.bernoulli.borrow_mut();
        if table.len() > own.len() {
            if let Some(i) = (0..own.len()).find(|&i| own[i] != table[i]) {
                return Err(reject(i));
            }
            own.clear();
            own.extend_from_slice(table);
        }
        Ok(())
    }

    /// Adopt an externally supplied Euler table; same contract as
    /// [`SequenceCache::adopt_bernoulli`].
    pub fn adopt_euler(
        &self,
        table: &[Integer],
        spot_checks: &[usize],
    ) -> Result<(), SequenceError> {
        let reject = |index| SequenceError::TableRejected {
            table: "euler",
            index,
        };
        for (i, e) in table.iter().enumerate() {
            let ok = match i {
                0 => e.is_one(),
                i if i % 2 == 1 => e.is_zero(),
                _ => true,
            };
            if !ok {
                return Err(reject(i));
            }
        }
        for &i in spot_checks {
            if i >= table.len() {
                return Err(reject(i));
            }
            if i >= 1 {
                // E_i + sum_{k=1}^{i/2} C(i,2k) E_{i-2k} = 0.
                let mut sum = table[i].clone();
                let mut c = Integer::one();
                let mut j = 0u64;
                while j + 2 <= i as u64 {
                    c = c * (i as u64 - j) * (i as u64 - j - 1) / ((j + 1) * (j + 2));
                    j += 2;
                    sum += &c * &table[i - j as usize];
                }
                if !sum.is_zero() {
                    return Err(reject(i));
                }
            }
        }
        let mut own = self.euler.borrow_mut();
        if table.len() > own.len() {
            if let Some(i) = (0..own.len()).find(|&i| own[i] != table[i]) {
                return Err(reject(i));
            }
            own.clear();
            own.extend_from_slice(table);
        }
        Ok(())
    }
}

/// `P_n` by the even-index form `2^n * sum_k C(n,2k) C(2k,k)^2 4^(n-2k)`,
/// an all-integer evaluation independent of the defining sum.
pub fn clf_even_form(cache: &SequenceCache, n: u64) -> Integer {
    let n = n as i64;
    let mut sum = Integer::zero();
    for k in 0..=(n / 2) {
        let c = cache.binomial(2 * k, k);
        let term = cache.binomial(n, 2 * k) * &c * &c * (Integer::one() << (2 * (n - 2 * k)));
        sum += term;
    }
    sum << n
}

/// Step the three-term recurrence
/// `(n+1)^2 P_{n+1} = (24 n (n+1) + 8) P_n - 128 n^2 P_{n-1}` forward,
/// insisting that the division is exact.
pub fn clf_next_by_recurrence(
    n: u64,
    p_n: &Integer,
    p_prev: &Integer,
) -> Result<Integer, SequenceError> {
    assert!(n >= 1, "recurrence step needs two predecessors");
    let ni = Integer::from(n);
    let a = (Integer::from(24u32) * &ni * (&ni + 1u32) + 8u32) * p_n;
    let b = Integer::from(128u32) * &ni * &ni * p_prev;
    let num = a - b;
    let den = (&ni + 1u32) * (&ni + 1u32);
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(SequenceError::NonDivisible { n });
    }
    Ok(q)
}

/// `S_n = sum_k C(2k,k)^2 C(n,2k) 4^(n-2k)`, the integer sequence with
/// `2^n S_n = P_n`; that relation is asserted on every call.
pub fn zagier_s(cache: &SequenceCache, n: u64) -> Integer {
    let ni = n as i64;
    let mut sum = Integer::zero();
    for k in 0..=(ni / 2) {
        let c = cache.binomial(2 * k, k);
        sum += cache.binomial(ni, 2 * k) * &c * &c * (Integer::one() << (2 * (ni - 2 * k)));
    }
    let p_n = cache.clf(n).expect("defining sum is integral");
    assert_eq!(
        &sum << n as usize,
        p_n,
        "2^n S_n = P_n failed at n={n}"
    );
    sum
}

/// `S_n` again, by the alternating form
/// `sum_k C(2k,k)^2 C(k, n-k) (-4)^(n-k)`.
pub fn s_sun_form_a(cache: &SequenceCache, n: u64) -> Integer {
    let n = n as i64;
    let mut sum = Integer::zero();
    for k in 0..=n {
        let c = cache.binomial(2 * k, k);
        let mut term = &c * &c * cache.binomial(k, n - k);
        if term.is_zero() {
            continue;
        }
        term <<= 2 * (n - k) as usize;
        if (n - k) % 2 == 1 {
            term = -term;
        }
        sum += term;
    }
    sum
}

/// `S_n` a third time:
/// `sum_k C(2k,k) C(2(n-k),n-k) C(k,n-k) (-4)^k / (-2)^n`,
/// with exact integrality of the division checked.
pub fn s_sun_form_b(cache: &SequenceCache, n: u64) -> Result<Integer, SequenceError> {
    let ni = n as i64;
    let mut sum = Integer::zero();
    for k in 0..=ni {
        let mut term = cache.binomial(2 * k, k)
            * cache.binomial(2 * (ni - k), ni - k)
            * cache.binomial(k, ni - k);
        if term.is_zero() {
            continue;
        }
        term <<= 2 * k as usize;
        if k % 2 == 1 {
            term = -term;
        }
        sum += term;
    }
    // Divide by (-2)^n.
    let den = Integer::one() << n as usize;
    let (q, r) = sum.div_rem(&den);
    if !r.is_zero() {
        return Err(SequenceError::NonIntegerSum { n });
    }
    Ok(if n % 2 == 1 { -q } else { q })
}

/// Fermat quotient `q_p(2) = (2^(p-1) - 1) / p` for an odd prime `p`.
pub fn fermat_quotient_two(p: u64) -> Result<Integer, SequenceError> {
    if p < 3 || !is_prime(&Integer::from(p)) {
        return Err(SequenceError::NotOddPrime(p));
    }
    let num = (Integer::one() << (p - 1) as usize) - 1u32;
    let (q, r) = num.div_rem(&Integer::from(p));
    assert!(r.is_zero(), "2^(p-1) = 1 mod p for odd prime p");
    Ok(q)
}

/// `(-1)^((p-1)/2)`: 1 when p = 1 (mod 4), -1 when p = 3 (mod 4).
pub fn legendre_minus_one(p: u64) -> i32 {
    debug_assert!(p >= 3 && is_prime(&Integer::from(p)), "{p} must be an odd prime");
    if p % 4 == 1 {
        1
    } else {
        -1
    }
}

/// All primes up to and including `bound`, by a sieve of Eratosthenes.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}
