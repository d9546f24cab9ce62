//! Exact arbitrary-precision arithmetic and reduction into prime-power
//! residue rings.
//!
//! Rationals are the universal value carrier: every congruence side is first
//! computed exactly and only then reduced modulo `p^e`. Residues are kept in
//! canonical least non-negative form so reports are deterministic.

use alloc::string::String;
use core::fmt;
use core::ops::{Add, Mul, Sub};

use num_integer::Integer as IntegerOps;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Unbounded signed integer.
pub type Integer = num_bigint::BigInt;

/// Exact fraction, always in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// The p-adic valuation of an integer; zero has infinite valuation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(u64),
    Infinite,
}

impl Valuation {
    /// True if the valuation is at least `bound`.
    pub fn at_least(self, bound: u64) -> bool {
        match self {
            Valuation::Finite(v) => v >= bound,
            Valuation::Infinite => true,
        }
    }

    /// Collapse to a number, treating anything above `cap` (and infinity) as `cap`.
    pub fn capped(self, cap: u64) -> u64 {
        match self {
            Valuation::Finite(v) => v.min(cap),
            Valuation::Infinite => cap,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArithError {
    /// The claimed prime is not prime (or is < 2).
    NotPrime(Integer),
    /// The exponent of a prime-power modulus must be at least 1.
    ZeroExponent,
    /// Inversion of a value divisible by p.
    NotInvertible { value: Integer, prime: Integer },
    /// A rational with a p-divisible denominator cannot be reduced mod p^e.
    DenominatorDivisibleByP {
        denominator: Integer,
        prime: Integer,
        valuation: u64,
    },
}

impl fmt::Display for ArithError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithError::NotPrime(n) => write!(f, "{n} is not prime"),
            ArithError::ZeroExponent => write!(f, "prime-power exponent must be at least 1"),
            ArithError::NotInvertible { value, prime } => {
                write!(f, "{value} is divisible by {prime} and has no inverse")
            }
            ArithError::DenominatorDivisibleByP {
                denominator,
                prime,
                valuation,
            } => write!(
                f,
                "denominator {denominator} is divisible by {prime} (valuation {valuation})"
            ),
        }
    }
}

impl core::error::Error for ArithError {}

/// Deterministic trial-division primality test.
///
/// Intended for desk-scale moduli (the sweeps run over primes of a few
/// thousand at most), not for cryptographic sizes.
pub fn is_prime(n: &Integer) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    if n.is_negative() {
        return false;
    }
    // Beyond u64 we still answer correctly, just slowly.
    let two = Integer::from(2u32);
    let three = Integer::from(3u32);
    if n.is_multiple_of(&two) || n.is_multiple_of(&three) {
        return false;
    }
    let mut d = Integer::from(5u32);
    while (&d * &d) <= *n {
        if n.is_multiple_of(&d) || n.is_multiple_of(&(&d + 2u32)) {
            return false;
        }
        d += 6u32;
    }
    true
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let mut d = 5u64;
    while d * d <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// Largest `v` with `p^v | n`; [`Valuation::Infinite`] for `n = 0`.
pub fn padic_valuation(n: &Integer, p: &Integer) -> Result<Valuation, ArithError> {
    if !is_prime(p) {
        return Err(ArithError::NotPrime(p.clone()));
    }
    Ok(valuation_unchecked(n, p))
}

/// Valuation without re-checking primality of `p`.
pub(crate) fn valuation_unchecked(n: &Integer, p: &Integer) -> Valuation {
    if n.is_zero() {
        return Valuation::Infinite;
    }
    let mut v = 0u64;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return Valuation::Finite(v);
        }
        v += 1;
        m = q;
    }
}

/// Valuation of a nonzero integer, giving up once `cap` is reached.
pub(crate) fn valuation_capped(n: &Integer, p: &Integer, cap: u64) -> Valuation {
    if n.is_zero() {
        return Valuation::Infinite;
    }
    let mut v = 0u64;
    let mut m = n.clone();
    while v < cap {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return Valuation::Finite(v);
        }
        v += 1;
        m = q;
    }
    Valuation::Finite(cap)
}

/// A modulus `p^e` with `p` prime (checked) and `e >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimePowerModulus {
    prime: Integer,
    exponent: u32,
    modulus: Integer,
}

impl PrimePowerModulus {
    pub fn new(prime: Integer, exponent: u32) -> Result<Self, ArithError> {
        if exponent == 0 {
            return Err(ArithError::ZeroExponent);
        }
        if !is_prime(&prime) {
            return Err(ArithError::NotPrime(prime));
        }
        let modulus = prime.pow(exponent);
        Ok(PrimePowerModulus {
            prime,
            exponent,
            modulus,
        })
    }

    pub fn from_u64(prime: u64, exponent: u32) -> Result<Self, ArithError> {
        Self::new(Integer::from(prime), exponent)
    }

    pub fn prime(&self) -> &Integer {
        &self.prime
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn modulus(&self) -> &Integer {
        &self.modulus
    }
}

impl fmt::Display for PrimePowerModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 1 {
            write!(f, "{}", self.prime)
        } else {
            write!(f, "{}^{}", self.prime, self.exponent)
        }
    }
}

/// A canonical value in `[0, p^e)` tagged with its modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residue {
    value: Integer,
    modulus: PrimePowerModulus,
}

impl Residue {
    /// Canonicalize `value` into `[0, modulus)`.
    pub fn new(value: Integer, modulus: PrimePowerModulus) -> Self {
        let value = value.mod_floor(&modulus.modulus);
        Residue { value, modulus }
    }

    pub fn value(&self) -> &Integer {
        &self.value
    }

    pub fn modulus(&self) -> &PrimePowerModulus {
        &self.modulus
    }

    pub fn into_value(self) -> Integer {
        self.value
    }

    pub fn to_decimal_string(&self) -> String {
        use alloc::string::ToString;
        self.value.to_string()
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

macro_rules! residue_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &Residue {
            type Output = Residue;
            fn $method(self, rhs: &Residue) -> Residue {
                assert_eq!(
                    self.modulus, rhs.modulus,
                    "residue arithmetic requires a shared modulus"
                );
                Residue::new(&self.value $op &rhs.value, self.modulus.clone())
            }
        }
    };
}

residue_binop!(Add, add, +);
residue_binop!(Sub, sub, -);
residue_binop!(Mul, mul, *);

/// Inverse of `a` modulo `p^e`, by the extended Euclidean algorithm.
pub fn mod_inverse(a: &Integer, m: &PrimePowerModulus) -> Result<Residue, ArithError> {
    let a_red = a.mod_floor(m.modulus());
    let ext = a_red.extended_gcd(m.modulus());
    if !ext.gcd.is_one() {
        return Err(ArithError::NotInvertible {
            value: a.clone(),
            prime: m.prime().clone(),
        });
    }
    Ok(Residue::new(ext.x, m.clone()))
}

/// Reduce an exact rational into `[0, p^e)`: numerator times the inverse of
/// the denominator. A ring homomorphism on rationals with p-free denominators;
/// anything else is a typed error carrying the offending valuation.
pub fn reduce(x: &Rational, m: &PrimePowerModulus) -> Result<Residue, ArithError> {
    let den = x.denom();
    match valuation_unchecked(den, m.prime()) {
        Valuation::Finite(0) => {}
        Valuation::Finite(v) => {
            return Err(ArithError::DenominatorDivisibleByP {
                denominator: den.clone(),
                prime: m.prime().clone(),
                valuation: v,
            })
        }
        Valuation::Infinite => unreachable!("rational denominators are nonzero"),
    }
    let inv = mod_inverse(den, m)?;
    Ok(Residue::new(x.numer() * inv.value(), m.clone()))
}

/// `base^exp mod p^e` by square-and-multiply.
pub fn pow_mod(base: &Integer, exp: u64, m: &PrimePowerModulus) -> Residue {
    let b = base.mod_floor(m.modulus());
    let value = b.modpow(&Integer::from(exp), m.modulus());
    Residue::new(value, m.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> Integer {
        Integer::from(n)
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(int(n), int(d))
    }

    /// Repeated-division oracle, independent of `valuation_unchecked`.
    fn valuation_oracle(mut n: i64, p: i64) -> u64 {
        assert!(n != 0);
        let mut v = 0;
        while n % p == 0 {
            n /= p;
            v += 1;
        }
        v
    }

    #[test]
    fn padic_valuation_examples() {
        assert_eq!(
            padic_valuation(&int(250), &int(5)).unwrap(),
            Valuation::Finite(3)
        );
        assert_eq!(
            padic_valuation(&int(0), &int(7)).unwrap(),
            Valuation::Infinite
        );
        assert_eq!(
            padic_valuation(&int(448), &int(2)).unwrap(),
            Valuation::Finite(valuation_oracle(448, 2))
        );
        assert_eq!(valuation_oracle(448, 2), 6);
        assert_eq!(
            padic_valuation(&int(250), &int(10)),
            Err(ArithError::NotPrime(int(10)))
        );
    }

    #[test]
    fn valuation_cap_stops_early() {
        let big = int(2).pow(50);
        assert_eq!(valuation_capped(&big, &int(2), 6), Valuation::Finite(6));
        assert_eq!(valuation_capped(&int(0), &int(2), 6), Valuation::Infinite);
        assert_eq!(valuation_capped(&int(12), &int(2), 6), Valuation::Finite(2));
    }

    /// Exhaustive-search oracle for inverses over small moduli.
    fn inverse_oracle(a: i64, modulus: i64) -> Option<i64> {
        (0..modulus).find(|x| (a * x).rem_euclid(modulus) == 1)
    }

    #[test]
    fn mod_inverse_examples() {
        let m = PrimePowerModulus::from_u64(5, 3).unwrap();
        assert_eq!(m.modulus(), &int(125));
        assert_eq!(mod_inverse(&int(64), &m).unwrap().value(), &int(84));
        assert_eq!(inverse_oracle(64, 125), Some(84));
        assert_eq!(mod_inverse(&int(1), &m).unwrap().value(), &int(1));
        assert_eq!(mod_inverse(&int(12), &m).unwrap().value(), &int(73));
        assert_eq!(inverse_oracle(12, 125), Some(73));
        assert!(matches!(
            mod_inverse(&int(10), &m),
            Err(ArithError::NotInvertible { .. })
        ));
    }

    #[test]
    fn mod_inverse_exhaustive_small_prime_powers() {
        for p in [2u64, 3, 5, 7, 11, 13, 31, 97, 499, 997] {
            for e in 1..=3u32 {
                let modulus = (p as u128).pow(e);
                if modulus >= 1000 {
                    continue;
                }
                let m = PrimePowerModulus::from_u64(p, e).unwrap();
                for a in 1..modulus as i64 {
                    if a % p as i64 == 0 {
                        continue;
                    }
                    let inv = mod_inverse(&int(a), &m).unwrap();
                    let prod = (int(a) * inv.value()).mod_floor(m.modulus());
                    assert!(prod.is_one(), "a={a} mod {p}^{e}");
                }
            }
        }
    }

    #[test]
    fn reduce_examples() {
        let m53 = PrimePowerModulus::from_u64(5, 3).unwrap();
        assert_eq!(reduce(&rat(13, 12), &m53).unwrap().value(), &int(74));
        assert_eq!(reduce(&rat(-24, 1), &m53).unwrap().value(), &int(101));
        let m33 = PrimePowerModulus::from_u64(3, 3).unwrap();
        assert_eq!(reduce(&rat(13, 4), &m33).unwrap().value(), &int(10));
    }

    #[test]
    fn reduce_rejects_p_divisible_denominator() {
        let m = PrimePowerModulus::from_u64(5, 3).unwrap();
        match reduce(&rat(3, 50), &m) {
            Err(ArithError::DenominatorDivisibleByP { valuation, .. }) => {
                assert_eq!(valuation, 2)
            }
            other => panic!("expected denominator error, got {other:?}"),
        }
    }

    #[test]
    fn pow_mod_examples() {
        let m = PrimePowerModulus::from_u64(5, 3).unwrap();
        assert_eq!(pow_mod(&int(2), 4, &m).value(), &int(16));
        assert_eq!(pow_mod(&int(4), 4, &m).value(), &int(6));
        assert_eq!(pow_mod(&int(2), 0, &m).value(), &int(1));
        assert_eq!(pow_mod(&int(-2), 2, &m).value(), &int(4));
    }

    #[test]
    fn modulus_construction_errors() {
        assert!(matches!(
            PrimePowerModulus::from_u64(4, 2),
            Err(ArithError::NotPrime(_))
        ));
        assert!(matches!(
            PrimePowerModulus::from_u64(5, 0),
            Err(ArithError::ZeroExponent)
        ));
    }

    #[test]
    fn residue_arithmetic_shares_modulus() {
        let m = PrimePowerModulus::from_u64(7, 2).unwrap();
        let a = Residue::new(int(45), m.clone());
        let b = Residue::new(int(10), m.clone());
        assert_eq!((&a + &b).value(), &int(6));
        assert_eq!((&a - &b).value(), &int(35));
        assert_eq!((&a * &b).value(), &int(9));
    }

    #[test]
    #[should_panic(expected = "shared modulus")]
    fn residue_arithmetic_rejects_mixed_moduli() {
        let a = Residue::new(int(1), PrimePowerModulus::from_u64(7, 2).unwrap());
        let b = Residue::new(int(1), PrimePowerModulus::from_u64(7, 1).unwrap());
        let _ = &a + &b;
    }

    #[test]
    fn primality_spot_checks() {
        assert!(is_prime(&int(2)));
        assert!(is_prime(&int(1999)));
        assert!(!is_prime(&int(1)));
        assert!(!is_prime(&int(0)));
        assert!(!is_prime(&int(-7)));
        assert!(!is_prime(&int(1998)));
    }
}
