//! Property-based tests: the reduction homomorphism, valuation laws,
//! canonical forms, and randomized cross-form agreement of the sequences.

use std::sync::{Mutex, OnceLock};

use clf_core::arith::{
    is_prime, mod_inverse, padic_valuation, pow_mod, reduce, Integer, PrimePowerModulus,
    Rational, Residue, Valuation,
};
use clf_core::sequences::{
    clf_even_form, clf_next_by_recurrence, fermat_quotient_two, legendre_minus_one,
    primes_up_to, s_sun_form_a, s_sun_form_b, zagier_s, SequenceCache,
};
use proptest::prelude::*;

const SMALL_PRIMES: [u64; 10] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31];

fn int(n: i64) -> Integer {
    Integer::from(n)
}

/// One cache for all sequence properties; tables only grow, so sharing it
/// across cases just makes the later cases cheap.
fn shared_cache() -> &'static Mutex<SequenceCache> {
    static CACHE: OnceLock<Mutex<SequenceCache>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(SequenceCache::new()))
}

proptest! {
    #[test]
    fn reduce_is_a_ring_homomorphism(
        num_a in -1_000_000i64..1_000_000,
        den_a in 1i64..10_000,
        num_b in -1_000_000i64..1_000_000,
        den_b in 1i64..10_000,
        p_idx in 0usize..SMALL_PRIMES.len(),
        e in 1u32..=3,
    ) {
        let p = SMALL_PRIMES[p_idx];
        let a = Rational::new(int(num_a), int(den_a));
        let b = Rational::new(int(num_b), int(den_b));
        prop_assume!(a.denom() % int(p as i64) != int(0));
        prop_assume!(b.denom() % int(p as i64) != int(0));

        let m = PrimePowerModulus::from_u64(p, e).unwrap();
        let ra = reduce(&a, &m).unwrap();
        let rb = reduce(&b, &m).unwrap();
        prop_assert_eq!(reduce(&(&a + &b), &m).unwrap(), &ra + &rb);
        prop_assert_eq!(reduce(&(&a * &b), &m).unwrap(), &ra * &rb);
        prop_assert!(ra.value() >= &int(0) && ra.value() < m.modulus());
    }

    #[test]
    fn inverse_multiplies_to_one(
        a in 1i64..100_000,
        p_idx in 0usize..SMALL_PRIMES.len(),
        e in 1u32..=3,
    ) {
        let p = SMALL_PRIMES[p_idx];
        prop_assume!(a % p as i64 != 0);
        let m = PrimePowerModulus::from_u64(p, e).unwrap();
        let inv = mod_inverse(&int(a), &m).unwrap();
        prop_assert!(inv.value() >= &int(0) && inv.value() < m.modulus());
        prop_assert_eq!((int(a) * inv.value()) % m.modulus(), int(1));
    }

    #[test]
    fn valuation_is_additive(
        a in -100_000i64..100_000,
        b in -100_000i64..100_000,
        p_idx in 0usize..SMALL_PRIMES.len(),
    ) {
        prop_assume!(a != 0 && b != 0);
        let p = int(SMALL_PRIMES[p_idx] as i64);
        let va = padic_valuation(&int(a), &p).unwrap();
        let vb = padic_valuation(&int(b), &p).unwrap();
        let vab = padic_valuation(&(int(a) * int(b)), &p).unwrap();
        match (va, vb, vab) {
            (Valuation::Finite(x), Valuation::Finite(y), Valuation::Finite(z)) => {
                prop_assert_eq!(x + y, z)
            }
            _ => prop_assert!(false, "nonzero integers have finite valuation"),
        }
    }

    #[test]
    fn valuation_recovers_a_planted_power(
        m in 1i64..10_000,
        k in 0u32..8,
        p_idx in 0usize..SMALL_PRIMES.len(),
    ) {
        let p = SMALL_PRIMES[p_idx];
        prop_assume!(m % p as i64 != 0);
        let n = int(m) * int(p as i64).pow(k);
        prop_assert_eq!(
            padic_valuation(&n, &int(p as i64)).unwrap(),
            Valuation::Finite(k as u64)
        );
    }

    #[test]
    fn pow_mod_matches_naive_multiplication(
        base in -1000i64..1000,
        exp in 0u64..40,
        p_idx in 0usize..SMALL_PRIMES.len(),
        e in 1u32..=3,
    ) {
        let m = PrimePowerModulus::from_u64(SMALL_PRIMES[p_idx], e).unwrap();
        let mut acc = int(1);
        for _ in 0..exp {
            acc *= int(base);
        }
        prop_assert_eq!(pow_mod(&int(base), exp, &m), Residue::new(acc, m.clone()));
    }

    #[test]
    fn rationals_stay_in_lowest_terms(
        num in -10_000i64..10_000,
        den in -10_000i64..10_000,
    ) {
        prop_assume!(den != 0);
        let x = Rational::new(int(num), int(den));
        prop_assert!(x.denom() > &int(0));
        prop_assert_eq!(x.clone(), x.reduced());
    }

    #[test]
    fn clf_forms_agree(n in 0u64..=100) {
        let cache = shared_cache().lock().unwrap();
        let p_n = cache.clf(n).unwrap();
        prop_assert_eq!(clf_even_form(&cache, n), p_n.clone());
        let s_n = zagier_s(&cache, n); // asserts 2^n S_n = P_n internally
        prop_assert_eq!(s_sun_form_a(&cache, n), s_n.clone());
        prop_assert_eq!(s_sun_form_b(&cache, n).unwrap(), s_n);
        prop_assert_eq!(p_n % (int(1) << n as usize), int(0));
    }

    #[test]
    fn recurrence_reproduces_the_table(n in 1u64..=100) {
        let cache = shared_cache().lock().unwrap();
        let next = clf_next_by_recurrence(
            n,
            &cache.clf(n).unwrap(),
            &cache.clf(n - 1).unwrap(),
        )
        .unwrap();
        prop_assert_eq!(next, cache.clf(n + 1).unwrap());
    }

    #[test]
    fn odd_index_values_vanish(k in 1u64..=120) {
        let cache = shared_cache().lock().unwrap();
        prop_assert_eq!(cache.euler(2 * k - 1), int(0));
        if k >= 2 {
            prop_assert_eq!(cache.bernoulli(2 * k - 1), Rational::new(int(0), int(1)));
        }
    }

    #[test]
    fn harmonic_numbers_split(k in 0u64..=400) {
        let cache = shared_cache().lock().unwrap();
        let half = Rational::new(int(1), int(2));
        prop_assert_eq!(
            cache.harmonic(2 * k),
            cache.harmonic(k) * half + cache.odd_harmonic(k)
        );
    }

    #[test]
    fn fermat_quotient_inverts(idx in 0usize..300) {
        let primes = primes_up_to(2000);
        let p = primes[1 + idx % (primes.len() - 1)]; // skip 2
        let q = fermat_quotient_two(p).unwrap();
        prop_assert_eq!(int(p as i64) * q + 1, int(1) << (p - 1) as usize);
    }

    #[test]
    fn legendre_matches_minus_one_power(idx in 0usize..300) {
        let primes = primes_up_to(2000);
        let p = primes[1 + idx % (primes.len() - 1)];
        let m = PrimePowerModulus::from_u64(p, 1).unwrap();
        let by_power = pow_mod(&int(-1), (p - 1) / 2, &m);
        let by_class = Residue::new(int(legendre_minus_one(p) as i64), m.clone());
        prop_assert_eq!(by_power, by_class);
    }

    #[test]
    fn sieve_agrees_with_trial_division(bound in 2u64..500) {
        let primes = primes_up_to(bound);
        prop_assert!(primes.windows(2).all(|w| w[0] < w[1]));
        for &p in &primes {
            prop_assert!(is_prime(&Integer::from(p)));
        }
        let by_trial = (2..=bound).filter(|&n| is_prime(&Integer::from(n))).count();
        prop_assert_eq!(primes.len(), by_trial);
    }
}
