//! Exact integer arithmetic: valuations, primality testing, factorization,
//! and integers kept in factored form.
//!
//! The bound constants assembled by this crate routinely exceed any
//! fixed-width integer (the cohomology killer for a degree-one base field is
//! already a 60-digit number), so bounds travel as a [`FactoredInteger`] and
//! are expanded to decimal digits only on explicit request, behind a size cap.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Errors from the arithmetic layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArithError {
    /// A factored-integer constructor was handed a non-prime base.
    NotPrime(BigUint),
    /// Decimal expansion would exceed the requested digit cap.
    DecimalTooLarge { estimated_digits: u64, cap: u64 },
}

impl fmt::Display for ArithError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithError::NotPrime(n) => write!(f, "{n} is not prime"),
            ArithError::DecimalTooLarge {
                estimated_digits,
                cap,
            } => write!(
                f,
                "decimal expansion needs about {estimated_digits} digits, cap is {cap}"
            ),
        }
    }
}

impl core::error::Error for ArithError {}

/// The p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigUint, p: &BigUint) -> u64 {
    assert!(!n.is_zero(), "valuation of zero is undefined here");
    assert!(*p >= BigUint::from(2u32));
    let mut v = 0u64;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        v += 1;
        m = q;
    }
}

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Extra Miller-Rabin bases used above the deterministic u64 range.
const EXTRA_BASES: [u64; 8] = [41, 43, 47, 53, 59, 61, 67, 71];

/// Miller-Rabin primality test.
///
/// Deterministic for inputs below 3.3 * 10^24 (the first twelve prime bases
/// suffice there); for larger inputs the fixed twenty-base round set leaves a
/// false-positive probability below 4^-20.
pub fn is_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &p in SMALL_PRIMES.iter() {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    // n is odd and > 37 here
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;

    let witnesses = SMALL_PRIMES.iter().chain(EXTRA_BASES.iter());
    'witness: for &a in witnesses {
        let a = BigUint::from(a);
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Pollard-Brent rho with a fixed parameter schedule; returns a nontrivial
/// factor of an odd composite `n`.
fn pollard_brent(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    for c in 1u64.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = two.clone();
        let mut y = two.clone();
        let mut d = one.clone();
        while d == one {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x >= y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break; // cycle without factor; bump c
            }
            d = diff.gcd(n);
        }
        if d != one && d != *n {
            return d;
        }
    }
    unreachable!("parameter schedule is unbounded")
}

fn factor_into(n: BigUint, out: &mut BTreeMap<BigUint, u64>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    let d = pollard_brent(&n);
    let q = &n / &d;
    factor_into(d, out);
    factor_into(q, out);
}

/// Factor a positive integer into primes.
pub fn factor(n: &BigUint) -> FactoredInteger {
    assert!(!n.is_zero(), "cannot factor zero");
    let mut map = BTreeMap::new();
    let mut m = n.clone();
    // peel small primes first so rho only ever sees hard cofactors
    for p in 2u64..=100_000 {
        let p_big = BigUint::from(p);
        if &p_big * &p_big > m {
            break;
        }
        let mut e = 0u64;
        loop {
            let (q, r) = m.div_rem(&p_big);
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e > 0 {
            map.insert(p_big, e);
        }
    }
    factor_into(m, &mut map);
    FactoredInteger { factors: map }
}

/// A positive integer stored as a map prime -> exponent; the empty map is 1.
///
/// Multiplication, powers, gcd and divisibility act on exponent vectors and
/// never expand the underlying value.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct FactoredInteger {
    factors: BTreeMap<BigUint, u64>,
}

impl FactoredInteger {
    /// The unit, i.e. the empty factorization.
    pub fn one() -> Self {
        FactoredInteger {
            factors: BTreeMap::new(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Build `p^e`; rejects non-prime bases and drops `e = 0`.
    pub fn from_prime_power(p: BigUint, e: u64) -> Result<Self, ArithError> {
        if !is_prime(&p) {
            return Err(ArithError::NotPrime(p));
        }
        let mut factors = BTreeMap::new();
        if e > 0 {
            factors.insert(p, e);
        }
        Ok(FactoredInteger { factors })
    }

    /// Factor a positive integer.
    pub fn of(n: &BigUint) -> Self {
        factor(n)
    }

    pub fn factors(&self) -> impl Iterator<Item = (&BigUint, u64)> + '_ {
        self.factors.iter().map(|(p, e)| (p, *e))
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> + '_ {
        self.factors.keys()
    }

    pub fn valuation(&self, p: &BigUint) -> u64 {
        self.factors.get(p).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        for (p, e) in other.factors.iter() {
            *factors.entry(p.clone()).or_insert(0) += e;
        }
        FactoredInteger { factors }
    }

    pub fn pow(&self, e: u64) -> Self {
        if e == 0 {
            return FactoredInteger::one();
        }
        let factors = self
            .factors
            .iter()
            .map(|(p, k)| (p.clone(), k * e))
            .collect();
        FactoredInteger { factors }
    }

    /// Whether `self` divides `other`, decided on exponent vectors.
    pub fn divides(&self, other: &Self) -> bool {
        self.factors
            .iter()
            .all(|(p, e)| other.valuation(p) >= *e)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let factors = self
            .factors
            .iter()
            .filter_map(|(p, e)| {
                let m = (*e).min(other.valuation(p));
                (m > 0).then(|| (p.clone(), m))
            })
            .collect();
        FactoredInteger { factors }
    }

    /// Expand to the integer value.
    pub fn value(&self) -> BigUint {
        let mut acc = BigUint::one();
        for (p, e) in self.factors.iter() {
            let e = u32::try_from(*e).expect("exponent fits u32 for expansion");
            acc *= p.pow(e);
        }
        acc
    }

    /// Upper bound on the number of decimal digits of the value, computed
    /// without expanding it.
    pub fn decimal_digit_bound(&self) -> u64 {
        let bits: u64 = self
            .factors
            .iter()
            .map(|(p, e)| p.bits().saturating_mul(*e))
            .sum();
        // digits <= bits * log10(2) + 1; 30103/100000 > log10(2)
        bits.saturating_mul(30_103) / 100_000 + 1
    }

    /// Decimal expansion, refused when the estimated size exceeds the cap.
    pub fn to_decimal(&self, max_digits: u64) -> Result<String, ArithError> {
        let estimated_digits = self.decimal_digit_bound();
        if estimated_digits > max_digits {
            return Err(ArithError::DecimalTooLarge {
                estimated_digits,
                cap: max_digits,
            });
        }
        Ok(self.value().to_str_radix(10))
    }

    /// The factor list as `(prime, exponent)` pairs in increasing prime order.
    pub fn to_pairs(&self) -> Vec<(BigUint, u64)> {
        self.factors
            .iter()
            .map(|(p, e)| (p.clone(), *e))
            .collect()
    }
}

impl fmt::Display for FactoredInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (p, e) in self.factors.iter() {
            if !first {
                write!(f, " * ")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Least common multiple of two positive integers.
pub fn lcm(a: &BigUint, b: &BigUint) -> BigUint {
    if a.is_zero() || b.is_zero() {
        return BigUint::zero();
    }
    a / a.gcd(b) * b
}

/// Try to read a `BigUint` as `u64`.
pub fn to_u64(n: &BigUint) -> Option<u64> {
    n.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn b(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&b(48), &b(2)), 4);
        assert_eq!(valuation(&b(48), &b(3)), 1);
        assert_eq!(valuation(&b(480), &b(2)), 5);
        assert_eq!(valuation(&b(7), &b(2)), 0);
    }

    #[test]
    fn primality_small() {
        let primes = [2u64, 3, 5, 7, 11, 13, 97, 7919, 104_729];
        for p in primes {
            assert!(is_prime(&b(p)), "{p} should be prime");
        }
        let composites = [1u64, 4, 9, 15, 91, 561, 41041, 825_265];
        for c in composites {
            assert!(!is_prime(&b(c)), "{c} should be composite");
        }
    }

    #[test]
    fn primality_large() {
        // 2^61 - 1 is a Mersenne prime
        let m61 = (BigUint::one() << 61u32) - BigUint::one();
        assert!(is_prime(&m61));
        let sq = &m61 * &m61;
        assert!(!is_prime(&sq));
    }

    #[test]
    fn factor_round_trips() {
        for n in 1u64..=2000 {
            let f = factor(&b(n));
            assert_eq!(f.value(), b(n), "factorization of {n}");
            for (p, e) in f.factors() {
                assert!(is_prime(p));
                assert!(e >= 1);
            }
        }
    }

    #[test]
    fn factor_large_semiprime() {
        let p = b(1_000_000_007);
        let q = b(998_244_353);
        let n = &p * &q;
        let f = factor(&n);
        assert_eq!(f.to_pairs(), vec![(q.clone(), 1), (p.clone(), 1)]);
    }

    #[test]
    fn factored_arithmetic() {
        let a = factor(&b(12)); // 2^2 * 3
        let c = factor(&b(18)); // 2 * 3^2
        assert_eq!(a.mul(&c).value(), b(216));
        assert_eq!(a.gcd(&c).value(), b(6));
        assert!(factor(&b(6)).divides(&a));
        assert!(!factor(&b(8)).divides(&a));
        assert_eq!(a.pow(3).value(), b(1728));
        assert!(FactoredInteger::one().is_one());
    }

    #[test]
    fn decimal_cap() {
        let big = FactoredInteger::from_prime_power(b(2), 100_000).unwrap();
        assert!(big.to_decimal(100).is_err());
        assert_eq!(factor(&b(1000)).to_decimal(10).unwrap(), "1000");
    }

    #[test]
    fn display_form() {
        use alloc::string::ToString;
        assert_eq!(FactoredInteger::one().to_string(), "1");
        assert_eq!(factor(&b(12)).to_string(), "2^2 * 3");
    }

    #[test]
    fn prime_power_rejects_composite_base() {
        assert!(FactoredInteger::from_prime_power(b(6), 2).is_err());
    }
}
