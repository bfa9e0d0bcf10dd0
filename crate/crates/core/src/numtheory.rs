//! Integer factorization, primality and factorial valuations.
//!
//! Factorization is trial division by primes below [`TRIAL_DIVISION_BOUND`]
//! followed by Brent's variant of Pollard rho with seeded constants, so the
//! output for a given input and [`FactorConfig`] is always the same. When the rho
//! iteration budget runs out the unsplit part is returned in the error instead of
//! being guessed at.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub const TRIAL_DIVISION_BOUND: u32 = 1_000_000;
pub const DEFAULT_FACTORIAL_CAP: u64 = 10_000;
pub const DEFAULT_RHO_BUDGET: u64 = 1 << 24;
pub const DEFAULT_SEED: u64 = 0x004b_454e_4441_4c4c;

// Miller-Rabin with these bases is exact below 3.3e24.
const WITNESS_PRIMES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
const EXTRA_WITNESSES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumTheoryError {
    #[error("cannot factor zero")]
    Zero,
    #[error("factorization budget exhausted; unfactored cofactor {cofactor}")]
    BudgetExhausted { partial: Factorization, cofactor: BigUint },
    #[error("factorial of {n} exceeds the cap {cap}")]
    FactorialCap { n: u64, cap: u64 },
    #[error("empty factorization has no prime factor")]
    EmptyFactorization,
    #[error("cannot parse factorization {0:?}")]
    Parse(String),
}

/// Effort settings for [`factorize_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorConfig {
    /// Total rho iterations allowed per call.
    pub rho_budget: u64,
    pub seed: u64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        Self {
            rho_budget: DEFAULT_RHO_BUDGET,
            seed: DEFAULT_SEED,
        }
    }
}

/// Prime factorization with strictly increasing primes.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Factorization {
    factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    /// Collects `(prime, exponent)` pairs, merging repeats and sorting. Zero
    /// exponents are dropped. Primality is the caller's responsibility.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (BigUint, u32)>) -> Self {
        let mut factors: Vec<(BigUint, u32)> = pairs.into_iter().filter(|(_, e)| *e > 0).collect();
        factors.sort();
        let mut merged: Vec<(BigUint, u32)> = Vec::with_capacity(factors.len());
        for (p, e) in factors {
            match merged.last_mut() {
                Some((q, f)) if *q == p => *f += e,
                _ => merged.push((p, e)),
            }
        }
        Self { factors: merged }
    }

    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn product(&self) -> BigUint {
        self.factors.iter().fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e))
    }

    pub fn exponent_of(&self, p: &BigUint) -> u32 {
        self.factors
            .binary_search_by(|(q, _)| q.cmp(p))
            .map_or(0, |k| self.factors[k].1)
    }

    /// True when every listed prime passes [`is_prime`].
    pub fn all_prime(&self) -> bool {
        self.factors.iter().all(|(p, _)| is_prime(p))
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.factors.windows(2).all(|w| w[0].0 < w[1].0) && self.factors.iter().all(|(_, e)| *e > 0)
    }
}

/// `p1^e1 * p2^e2 * ...`; the empty factorization prints as `1`.
impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (k, (p, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                f.write_str(" * ")?;
            }
            write!(f, "{p}^{e}")?;
        }
        Ok(())
    }
}

impl FromStr for Factorization {
    type Err = NumTheoryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || NumTheoryError::Parse(s.to_string());
        if s.trim() == "1" {
            return Ok(Self::default());
        }
        let mut factors = Vec::new();
        for term in s.split('*') {
            let (p, e) = term.trim().split_once('^').ok_or_else(err)?;
            let p: BigUint = p.parse().map_err(|_| err())?;
            let e: u32 = e.parse().map_err(|_| err())?;
            factors.push((p, e));
        }
        let f = Self { factors };
        if !f.is_strictly_increasing() {
            return Err(err());
        }
        Ok(f)
    }
}

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = TRIAL_DIVISION_BOUND as usize;
        let mut composite = vec![false; limit + 1];
        let mut primes = Vec::new();
        for i in 2..=limit {
            if !composite[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j <= limit {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn miller_rabin_u64(n: u64, a: u64) -> bool {
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESS_PRIMES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    WITNESS_PRIMES.iter().all(|&a| miller_rabin_u64(n, a))
}

fn miller_rabin_big(n: &BigUint, a: &BigUint) -> bool {
    let n1 = n - 1u32;
    let s = n1.trailing_zeros().expect("n > 2");
    let d = &n1 >> s;
    let mut x = a.modpow(&d, n);
    if x.is_one() || x == n1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n1 {
            return true;
        }
    }
    false
}

/// Miller-Rabin primality. Exact below `3.3 * 10^24`; above that the fixed
/// prime bases are supplemented by bases from a fixed-seed generator, so the
/// answer is reproducible.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &WITNESS_PRIMES {
        if (n % p).is_zero() {
            return false;
        }
    }
    if !WITNESS_PRIMES.iter().all(|&a| miller_rabin_big(n, &BigUint::from(a))) {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let span = n - 4u32;
    (0..EXTRA_WITNESSES).all(|_| {
        let a = random_below(&mut rng, &span) + 2u32;
        miller_rabin_big(n, &a)
    })
}

fn random_below(rng: &mut ChaCha8Rng, bound: &BigUint) -> BigUint {
    let words = bound.to_u32_digits().len() + 1;
    let digits: Vec<u32> = (0..words).map(|_| rng.gen()).collect();
    BigUint::from_slice(&digits) % bound
}

/// Splits composite `n` (u64 path). Returns a proper factor and the number of
/// iterations spent.
fn brent_u64(n: u64, c: u64, x0: u64, budget: u64) -> (Option<u64>, u64) {
    if n.is_multiple_of(2) {
        return (Some(2), 0);
    }
    let f = |y: u64| ((y as u128 * y as u128 + c as u128) % n as u128) as u64;
    let m = 128u64;
    let (mut y, mut r, mut q, mut g) = (x0 % n, 1u64, 1u64, 1u64);
    let (mut x, mut ys) = (y, y);
    let mut used = 0u64;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        used += r;
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            let steps = m.min(r - k);
            for _ in 0..steps {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            used += steps;
            g = q.gcd(&n);
            k += m;
        }
        r *= 2;
        if used > budget {
            return (None, used);
        }
    }
    if g == n {
        loop {
            ys = f(ys);
            used += 1;
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    ((g != n).then_some(g), used)
}

fn brent_big(n: &BigUint, c: &BigUint, x0: &BigUint, budget: u64) -> (Option<BigUint>, u64) {
    let f = |y: &BigUint| (y * y + c) % n;
    let diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    let m = 128u64;
    let mut y = x0 % n;
    let (mut r, mut q, mut g) = (1u64, BigUint::one(), BigUint::one());
    let (mut x, mut ys) = (y.clone(), y.clone());
    let mut used = 0u64;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        used += r;
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            let steps = m.min(r - k);
            for _ in 0..steps {
                y = f(&y);
                q = (q * diff(&x, &y)) % n;
            }
            used += steps;
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
        if used > budget {
            return (None, used);
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            used += 1;
            g = diff(&x, &ys).gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    ((&g != n).then_some(g), used)
}

/// Finds a proper factor of composite `n` within `budget` rho iterations.
fn split(n: &BigUint, rng: &mut ChaCha8Rng, budget: &mut u64) -> Option<BigUint> {
    while *budget > 0 {
        let found = if let Some(small) = n.to_u64() {
            let c = rng.gen_range(1..small);
            let x0 = rng.gen_range(0..small);
            let (d, used) = brent_u64(small, c, x0, *budget);
            *budget = budget.saturating_sub(used.max(1));
            d.map(BigUint::from)
        } else {
            let c = random_below(rng, &(n - 1u32)) + 1u32;
            let x0 = random_below(rng, n);
            let (d, used) = brent_big(n, &c, &x0, *budget);
            *budget = budget.saturating_sub(used.max(1));
            d
        };
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Complete factorization with the default effort budget.
pub fn factorize(value: &BigUint) -> Result<Factorization, NumTheoryError> {
    factorize_with(value, &FactorConfig::default())
}

pub fn factorize_with(value: &BigUint, config: &FactorConfig) -> Result<Factorization, NumTheoryError> {
    if value.is_zero() {
        return Err(NumTheoryError::Zero);
    }
    let mut found: Vec<(BigUint, u32)> = Vec::new();
    let mut rest = value.clone();
    let mut last_tried = 1u64;
    for &p in small_primes() {
        let p64 = p as u64;
        if BigUint::from(p64 * p64) > rest {
            break;
        }
        last_tried = p64;
        let mut e = 0;
        while (&rest % p).is_zero() {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            found.push((BigUint::from(p), e));
        }
    }
    if rest.is_one() {
        return Ok(Factorization::from_pairs(found));
    }
    // No factor <= last_tried remains, so anything below its square is prime.
    if rest < BigUint::from(last_tried + 1).pow(2) {
        found.push((rest, 1));
        return Ok(Factorization::from_pairs(found));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut budget = config.rho_budget;
    let mut pending = vec![rest];
    let mut unfactored = BigUint::one();
    while let Some(c) = pending.pop() {
        if is_prime(&c) {
            found.push((c, 1));
            continue;
        }
        match split(&c, &mut rng, &mut budget) {
            Some(d) => {
                let other = &c / &d;
                pending.push(d);
                pending.push(other);
            }
            None => unfactored *= c,
        }
    }
    let partial = Factorization::from_pairs(found);
    if unfactored.is_one() {
        Ok(partial)
    } else {
        Err(NumTheoryError::BudgetExhausted {
            partial,
            cofactor: unfactored,
        })
    }
}

/// Largest prime in a nonempty factorization.
pub fn max_prime_factor(f: &Factorization) -> Result<&BigUint, NumTheoryError> {
    f.factors()
        .last()
        .map(|(p, _)| p)
        .ok_or(NumTheoryError::EmptyFactorization)
}

/// Exponent of prime `p` in `n!`: `sum_{k >= 1} floor(n / p^k)`.
pub fn legendre_valuation(n: u64, p: &BigUint) -> u64 {
    let Some(p) = p.to_u64().filter(|&p| p <= n && p >= 2) else {
        return 0;
    };
    let mut total = 0;
    let mut q = n;
    while q >= p {
        q /= p;
        total += q;
    }
    total
}

/// Exponent of `p` in `value` by repeated division (`value > 0`, `p >= 2`).
pub fn valuation(value: &BigUint, p: &BigUint) -> u32 {
    let mut v = value.clone();
    let mut e = 0;
    while !v.is_zero() {
        let (q, r) = v.div_rem(p);
        if !r.is_zero() {
            break;
        }
        v = q;
        e += 1;
    }
    e
}

/// First prime of `f` whose exponent exceeds its exponent in `n!`, with both
/// exponents.
pub fn first_excess_prime(f: &Factorization, n: u64) -> Option<(&BigUint, u32, u64)> {
    f.factors().iter().find_map(|(p, e)| {
        let in_factorial = legendre_valuation(n, p);
        (*e as u64 > in_factorial).then_some((p, *e, in_factorial))
    })
}

/// Whether the factored value divides `n!`, by Legendre's formula.
pub fn divides_factorial(f: &Factorization, n: u64) -> bool {
    first_excess_prime(f, n).is_none()
}

pub fn factorial(n: u64) -> Result<BigUint, NumTheoryError> {
    factorial_with_cap(n, DEFAULT_FACTORIAL_CAP)
}

pub fn factorial_with_cap(n: u64, cap: u64) -> Result<BigUint, NumTheoryError> {
    if n > cap {
        return Err(NumTheoryError::FactorialCap { n, cap });
    }
    Ok((2..=n).fold(BigUint::one(), |acc, k| acc * k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::{prop_assert, prop_assert_eq, proptest};

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn pairs(f: &Factorization) -> Vec<(u64, u32)> {
        f.factors().iter().map(|(p, e)| (p.to_u64().unwrap(), *e)).collect()
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(pairs(&factorize(&big(441)).unwrap()), vec![(3, 2), (7, 2)]);
        assert_eq!(pairs(&factorize(&big(3249)).unwrap()), vec![(3, 2), (19, 2)]);
        assert_eq!(pairs(&factorize(&big(1715)).unwrap()), vec![(5, 1), (7, 3)]);
        assert!(factorize(&big(1)).unwrap().is_empty());
        assert_eq!(factorize(&big(0)), Err(NumTheoryError::Zero));
    }

    #[test]
    fn factorize_needs_rho() {
        // two primes above the trial-division bound
        let p = big(1_000_003);
        let q = big(1_000_000_007);
        let r = BigUint::parse_bytes(b"18446744073709551557", 10).unwrap(); // 2^64 - 59
        let f = factorize(&(&p * &q)).unwrap();
        assert_eq!(f.factors(), &[(p.clone(), 1), (q.clone(), 1)]);
        let f = factorize(&(&p * &p * &r)).unwrap();
        assert_eq!(f.factors(), &[(p, 2), (r, 1)]);
    }

    #[test]
    fn factorize_is_deterministic() {
        let v = BigUint::parse_bytes(b"340282366920938463463374607431768211455", 10).unwrap(); // 2^128 - 1
        let a = factorize(&v).unwrap();
        let b = factorize(&v).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.product(), v);
        assert_eq!(
            a.to_string(),
            "3^1 * 5^1 * 17^1 * 257^1 * 641^1 * 65537^1 * 274177^1 * 6700417^1 * 67280421310721^1"
        );
    }

    #[test]
    fn budget_exhaustion_keeps_partial_product() {
        let p = BigUint::parse_bytes(b"1000000000039", 10).unwrap();
        let q = BigUint::parse_bytes(b"1000000000061", 10).unwrap();
        let v = &p * &q * 12u32;
        let cfg = FactorConfig {
            rho_budget: 10,
            ..FactorConfig::default()
        };
        match factorize_with(&v, &cfg) {
            Err(NumTheoryError::BudgetExhausted { partial, cofactor }) => {
                assert_eq!(pairs(&partial), vec![(2, 2), (3, 1)]);
                assert_eq!(cofactor, &p * &q);
            }
            other => panic!("expected exhaustion, got {other:?}"),
        }
        assert_eq!(factorize(&v).unwrap().factors().len(), 4);
    }

    #[test]
    fn primality() {
        let primes = [2u64, 3, 5, 7, 1_000_003, 2_147_483_647, 18_446_744_073_709_551_557];
        for p in primes {
            assert!(is_prime(&big(p)), "{p}");
        }
        // strong pseudoprimes to small bases
        for c in [1u64, 0, 4, 561, 3_215_031_751, 3_825_123_056_546_413_051] {
            assert!(!is_prime(&big(c)), "{c}");
        }
        let m127 = (BigUint::one() << 127u32) - 1u32;
        assert!(is_prime(&m127));
        assert!(!is_prime(&(&m127 * 3u32)));
        let m89 = (BigUint::one() << 89u32) - 1u32;
        assert!(!is_prime(&(&m89 * &m89)));
    }

    #[test]
    fn max_prime_examples() {
        assert_eq!(max_prime_factor(&factorize(&big(1715)).unwrap()).unwrap(), &big(7));
        assert_eq!(max_prime_factor(&factorize(&big(441)).unwrap()).unwrap(), &big(7));
        assert_eq!(max_prime_factor(&factorize(&big(2)).unwrap()).unwrap(), &big(2));
        assert_eq!(
            max_prime_factor(&Factorization::default()),
            Err(NumTheoryError::EmptyFactorization)
        );
    }

    #[test]
    fn divides_factorial_examples() {
        assert!(!divides_factorial(&factorize(&big(441)).unwrap(), 13));
        assert!(!divides_factorial(&factorize(&big(3249)).unwrap(), 26));
        assert!(!divides_factorial(&factorize(&big(1715)).unwrap(), 13));
        assert!(divides_factorial(&factorize(&big(24)).unwrap(), 4));
        assert!(divides_factorial(&Factorization::default(), 1));
        assert_eq!(legendre_valuation(13, &big(7)), 1);
        assert_eq!(legendre_valuation(13, &big(3)), 5);
        assert_eq!(legendre_valuation(26, &big(19)), 1);
        assert_eq!(legendre_valuation(100, &big(101)), 0);
    }

    #[test]
    fn factorial_examples() {
        assert_eq!(factorial(0).unwrap(), big(1));
        assert_eq!(factorial(4).unwrap(), big(24));
        assert_eq!(factorial(13).unwrap(), big(6_227_020_800));
        assert_eq!(factorial(13).unwrap(), factorial(12).unwrap() * 13u32);
        assert_eq!(
            factorial(10_001),
            Err(NumTheoryError::FactorialCap { n: 10_001, cap: 10_000 })
        );
    }

    #[test]
    fn legendre_matches_factorization_of_factorial() {
        for n in 0..=20u64 {
            let f = factorize(&factorial(n).unwrap()).unwrap();
            for p in small_primes().iter().take_while(|&&p| p as u64 <= n) {
                let p = big(*p as u64);
                assert_eq!(f.exponent_of(&p) as u64, legendre_valuation(n, &p), "n={n} p={p}");
            }
            assert!(f.factors().iter().all(|(p, _)| p <= &big(n)));
        }
    }

    #[test]
    fn divides_factorial_matches_remainder() {
        let facts: Vec<BigUint> = (0..=30).map(|n| factorial(n).unwrap()).collect();
        for v in (1..=1_000_000u64).step_by(7).chain(1..2000) {
            let f = factorize(&big(v)).unwrap();
            for n in [1u64, 5, 9, 13, 17, 22, 26, 30] {
                assert_eq!(
                    divides_factorial(&f, n),
                    (&facts[n as usize] % v).is_zero(),
                    "v={v} n={n}"
                );
            }
        }
    }

    #[test]
    fn refactor_roundtrip_random_u128() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cfg = FactorConfig {
            rho_budget: 1 << 12,
            ..FactorConfig::default()
        };
        let mut complete = 0;
        for _ in 0..10_000 {
            let bits = rng.gen_range(1..=128u32);
            let raw: u128 = rng.gen::<u128>() >> (128 - bits);
            let v = BigUint::from(raw.max(1));
            match factorize_with(&v, &cfg) {
                Ok(f) => {
                    assert_eq!(f.product(), v);
                    assert!(f.is_strictly_increasing());
                    complete += 1;
                }
                Err(NumTheoryError::BudgetExhausted { partial, cofactor }) => {
                    assert_eq!(partial.product() * &cofactor, v);
                    assert!(!is_prime(&cofactor));
                }
                Err(e) => panic!("{e}"),
            }
        }
        // most random values split within the small budget
        assert!(complete >= 5_000, "only {complete} complete factorizations");
    }

    #[test]
    fn text_form() {
        let f = factorize(&big(1715)).unwrap();
        assert_eq!(f.to_string(), "5^1 * 7^3");
        assert_eq!("5^1 * 7^3".parse::<Factorization>().unwrap(), f);
        assert_eq!(Factorization::default().to_string(), "1");
        assert!("7^1 * 5^1".parse::<Factorization>().is_err());
        assert!("5 * 7".parse::<Factorization>().is_err());
    }

    proptest! {
        #[test]
        fn factorization_roundtrip_u64(v in 1u64..u64::MAX) {
            let f = factorize(&big(v)).unwrap();
            prop_assert_eq!(f.product(), big(v));
            prop_assert!(f.all_prime());
            prop_assert!(f.is_strictly_increasing());
        }
    }
}
