//! Integer primitives: primality, integer roots, factorization, and the
//! prime-power values of the supported multiplicative functions.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// A positive integer carried together with its canonical factorization.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FactoredInteger {
    value: BigUint,
    factors: Vec<(BigUint, u32)>,
}

impl FactoredInteger {
    pub fn one() -> Self {
        FactoredInteger { value: BigUint::one(), factors: Vec::new() }
    }

    /// Builds from `(prime, exponent)` pairs in any order. Repeated primes
    /// are merged and zero exponents dropped; every base must be prime.
    pub fn from_prime_powers<I>(powers: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BigUint, u32)>,
    {
        let mut factors: Vec<(BigUint, u32)> = powers.into_iter().filter(|(_, e)| *e > 0).collect();
        for (p, _) in &factors {
            if !is_prime(p) {
                return Err(Error::InvalidInput(format!("{p} is not prime")));
            }
        }
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(BigUint, u32)> = Vec::with_capacity(factors.len());
        for (p, e) in factors {
            match merged.last_mut() {
                Some((q, f)) if *q == p => {
                    *f = f.checked_add(e).ok_or_else(|| {
                        Error::ResourceLimit("exponent overflows 32 bits".into())
                    })?
                }
                _ => merged.push((p, e)),
            }
        }
        Ok(Self::from_canonical(merged))
    }

    /// `factors` must already be sorted, merged and made of primes.
    pub(crate) fn from_canonical(factors: Vec<(BigUint, u32)>) -> Self {
        let mut value = BigUint::one();
        for (p, e) in &factors {
            value *= num_traits::pow(p.clone(), *e as usize);
        }
        FactoredInteger { value, factors }
    }

    pub fn from_u64(x: u64) -> Result<Self> {
        factorize(&BigUint::from(x))
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    /// Number of divisors, or `None` if it overflows `u64`.
    pub fn divisor_count(&self) -> Option<u64> {
        self.factors.iter().try_fold(1u64, |acc, (_, e)| acc.checked_mul(*e as u64 + 1))
    }

    pub fn multiply(&self, other: &FactoredInteger) -> FactoredInteger {
        let mut out: Vec<(BigUint, u32)> = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() || j < other.factors.len() {
            let take_left = match (self.factors.get(i), other.factors.get(j)) {
                (Some(a), Some(b)) if a.0 == b.0 => {
                    out.push((a.0.clone(), a.1 + b.1));
                    i += 1;
                    j += 1;
                    continue;
                }
                (Some(a), Some(b)) => a.0 < b.0,
                (Some(_), None) => true,
                _ => false,
            };
            if take_left {
                out.push(self.factors[i].clone());
                i += 1;
            } else {
                out.push(other.factors[j].clone());
                j += 1;
            }
        }
        FactoredInteger { value: &self.value * &other.value, factors: out }
    }

    pub fn pow(&self, e: u32) -> FactoredInteger {
        if e == 0 {
            return FactoredInteger::one();
        }
        let factors = self.factors.iter().map(|(p, f)| (p.clone(), f * e)).collect();
        FactoredInteger::from_canonical(factors)
    }
}

impl fmt::Display for FactoredInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FactoredInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.value, self)
    }
}

// ---------------------------------------------------------------------------
// Primality

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[inline]
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

/// Deterministic Miller–Rabin; the first twelve primes as witnesses are
/// sufficient for every `n < 2^64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &SMALL_PRIMES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn strong_probable_prime(n: &BigUint, a: &BigUint, d: &BigUint, s: u64) -> bool {
    let n_minus_1 = n - 1u32;
    let mut x = a.modpow(d, n);
    if x.is_one() || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = &x * &x % n;
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

/// Jacobi symbol `(a / n)` for odd `n`.
fn jacobi(a: &BigUint, n: &BigUint) -> i32 {
    let mut a = a % n;
    let mut n = n.clone();
    let mut result = 1;
    while !a.is_zero() {
        let tz = a.trailing_zeros().unwrap_or(0);
        if tz % 2 == 1 {
            let r = (&n % 8u32).to_u32().unwrap();
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        a >>= tz;
        if (&a % 4u32).to_u32() == Some(3) && (&n % 4u32).to_u32() == Some(3) {
            result = -result;
        }
        std::mem::swap(&mut a, &mut n);
        a %= &n;
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

fn half_mod(x: BigUint, n: &BigUint) -> BigUint {
    if x.is_odd() {
        (x + n) >> 1
    } else {
        x >> 1
    }
}

/// Strong Lucas probable-prime test with Selfridge parameters. `n` must be
/// odd, greater than the small-prime table, and not a perfect square.
fn strong_lucas_probable_prime(n: &BigUint) -> bool {
    // Find D in 5, -7, 9, -11, ... with (D/n) = -1.
    let mut abs_d: u64 = 5;
    let mut negative = false;
    let d_mod = loop {
        let abs = BigUint::from(abs_d);
        let d_mod = if negative { (n - (&abs % n)) % n } else { &abs % n };
        match jacobi(&d_mod, n) {
            -1 => break d_mod,
            0 if &abs % n != BigUint::zero() => return false,
            _ => {}
        }
        abs_d += 2;
        negative = !negative;
    };
    // P = 1, Q = (1 - D) / 4.
    let q_mod = if negative {
        // D = -abs_d, Q = (1 + abs_d) / 4
        BigUint::from((1 + abs_d) / 4) % n
    } else {
        // Q = -(abs_d - 1) / 4
        let q = BigUint::from((abs_d - 1) / 4) % n;
        (n - q) % n
    };

    let n_plus_1 = n + 1u32;
    let s = n_plus_1.trailing_zeros().unwrap_or(0);
    let d = &n_plus_1 >> s;

    let mut u = BigUint::one();
    let mut v = BigUint::one();
    let mut qk = q_mod.clone();
    let bits = d.bits();
    for i in (0..bits - 1).rev() {
        u = &u * &v % n;
        v = (&v * &v + n + n - ((&qk << 1) % n)) % n;
        qk = &qk * &qk % n;
        if d.bit(i) {
            let new_u = half_mod(&u + &v, n);
            let new_v = half_mod(&d_mod * &u + &v, n) % n;
            u = new_u % n;
            v = new_v;
            qk = &qk * &q_mod % n;
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v + n + n - ((&qk << 1) % n)) % n;
        if v.is_zero() {
            return true;
        }
        qk = &qk * &qk % n;
    }
    false
}

const RANDOM_MR_ROUNDS: usize = 64;

/// Primality test.
///
/// Exact below `2^64`. Above that: base-2 strong test, strong Lucas test,
/// then 64 Miller–Rabin rounds with pseudo-random bases.
pub fn is_prime(x: &BigUint) -> bool {
    if let Some(small) = x.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &SMALL_PRIMES {
        if (x % p).is_zero() {
            return false;
        }
    }
    let n_minus_1 = x - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    if !strong_probable_prime(x, &BigUint::from(2u32), &d, s) {
        return false;
    }
    let r = integer_root(x, 2);
    if &r * &r == *x {
        return false;
    }
    if !strong_lucas_probable_prime(x) {
        return false;
    }
    let seed = x.iter_u64_digits().fold(0x9e37_79b9_7f4a_7c15u64, |acc, w| acc.rotate_left(17) ^ w);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = x - 3u32;
    let limbs = x.iter_u64_digits().len();
    for _ in 0..RANDOM_MR_ROUNDS {
        let raw: Vec<u64> = (0..limbs + 1).map(|_| rng.gen()).collect();
        let a = biguint_from_u64_limbs(&raw) % &span + 2u32;
        if !strong_probable_prime(x, &a, &d, s) {
            return false;
        }
    }
    true
}

fn biguint_from_u64_limbs(limbs: &[u64]) -> BigUint {
    let digits: Vec<u32> = limbs.iter().flat_map(|w| [*w as u32, (*w >> 32) as u32]).collect();
    BigUint::new(digits)
}

// ---------------------------------------------------------------------------
// Roots

fn log2_approx(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return x.to_u64().unwrap() as f64;
    }
    let top = (x >> (bits - 64)).to_u64().unwrap() as f64;
    top.log2() + (bits - 64) as f64
}

/// `⌊x^(1/r)⌋`: the largest `t` with `t^r <= x`.
pub fn integer_root(x: &BigUint, r: u32) -> BigUint {
    assert!(r >= 1, "root degree must be positive");
    if r == 1 || x.is_zero() || x.is_one() {
        return x.clone();
    }
    if x.bits() <= r as u64 {
        return BigUint::one();
    }
    let pow = |t: &BigUint| num_traits::pow(t.clone(), r as usize);

    // Floating-point estimate, then make sure it sits above the root so
    // Newton descends monotonically.
    let log_root = if x.bits() <= 64 {
        (x.to_u64().unwrap() as f64).log2() / r as f64
    } else {
        log2_approx(x) / r as f64
    };
    let mut t = if log_root < 60.0 {
        BigUint::from_f64(log_root.exp2().ceil()).unwrap_or_else(BigUint::one) + 1u32
    } else {
        let whole = log_root.floor();
        let frac = log_root - whole;
        BigUint::from_f64((frac + 52.0).exp2().ceil()).unwrap() << (whole as u64 - 52) as usize
    } + 1u32;
    while pow(&t) <= *x {
        t <<= 1;
    }

    let r_big = BigUint::from(r);
    let r_minus_1 = r as usize - 1;
    loop {
        let next = (&t * (r - 1) + x / num_traits::pow(t.clone(), r_minus_1)) / &r_big;
        if next >= t {
            break;
        }
        t = next;
    }
    while pow(&t) > *x {
        t -= 1u32;
    }
    while pow(&(&t + 1u32)) <= *x {
        t += 1u32;
    }
    t
}

// ---------------------------------------------------------------------------
// Valuation and function values

/// Exponent of `p` in `x`.
pub fn valuation(p: &BigUint, x: &FactoredInteger) -> u32 {
    x.factors
        .binary_search_by(|(q, _)| q.cmp(p))
        .map(|i| x.factors[i].1)
        .unwrap_or(0)
}

/// `φ(p^e) = (p − 1)·p^(e−1)`.
pub fn eval_phi(p: &BigUint, e: u32) -> BigUint {
    assert!(e >= 1);
    (p - 1u32) * num_traits::pow(p.clone(), e as usize - 1)
}

/// `σ_k(p^e) = 1 + p^k + p^2k + … + p^ek`.
pub fn eval_sigma(p: &BigUint, e: u32, k: u32) -> BigUint {
    let pk = num_traits::pow(p.clone(), k as usize);
    let mut term = BigUint::one();
    let mut acc = BigUint::one();
    for _ in 0..e {
        term *= &pk;
        acc += &term;
    }
    acc
}

// ---------------------------------------------------------------------------
// Factorization

/// Primes `<= limit` by the sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

const TRIAL_LIMIT: u64 = 1_000_000;

fn trial_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(TRIAL_LIMIT))
}

#[derive(Debug, Clone, Copy)]
pub struct FactorizeConfig {
    /// Total Pollard–Brent iterations allowed across all cofactors.
    pub rho_budget: u64,
}

impl Default for FactorizeConfig {
    fn default() -> Self {
        FactorizeConfig { rho_budget: 2_000_000 }
    }
}

/// Factors `x` by trial division up to 10⁶, then Pollard's rho with Brent's
/// cycle detection.
pub fn factorize(x: &BigUint) -> Result<FactoredInteger> {
    factorize_with(x, FactorizeConfig::default())
}

pub fn factorize_with(x: &BigUint, config: FactorizeConfig) -> Result<FactoredInteger> {
    if x.is_zero() {
        return Err(Error::InvalidInput("cannot factor 0".into()));
    }
    let mut rest = x.clone();
    let mut found: Vec<(BigUint, u32)> = Vec::new();
    for &p in trial_primes() {
        if let Some(r) = rest.to_u64() {
            if p.saturating_mul(p) > r {
                break;
            }
        }
        let mut e = 0;
        while (&rest % p).is_zero() {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            found.push((BigUint::from(p), e));
        }
    }
    let mut budget = config.rho_budget;
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            found.push((m, 1));
            continue;
        }
        // Perfect powers defeat rho; peel them off directly.
        if let Some((root, k)) = perfect_power(&m) {
            for _ in 0..k {
                stack.push(root.clone());
            }
            continue;
        }
        let divisor = pollard_brent(&m, &mut budget).ok_or_else(|| {
            Error::ResourceLimit(format!(
                "could not factor {m} within the effort bound; supply an explicit factorization"
            ))
        })?;
        let other = &m / &divisor;
        stack.push(divisor);
        stack.push(other);
    }
    FactoredInteger::from_prime_powers(found)
}

fn perfect_power(m: &BigUint) -> Option<(BigUint, u32)> {
    let max_k = m.bits() as u32;
    for k in (2..=max_k).rev() {
        let r = integer_root(m, k);
        if r > BigUint::one() && num_traits::pow(r.clone(), k as usize) == *m {
            return Some((r, k));
        }
    }
    None
}

fn abs_diff(a: &BigUint, b: &BigUint) -> BigUint {
    if a >= b {
        a - b
    } else {
        b - a
    }
}

fn pollard_brent(n: &BigUint, budget: &mut u64) -> Option<BigUint> {
    const BATCH: u64 = 128;
    for c in 1u32.. {
        let c = BigUint::from(c);
        let step = |v: &BigUint| (v * v + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut r: u64 = 1;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = step(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let m = BATCH.min(r - k);
                for _ in 0..m {
                    y = step(&y);
                    q = q * abs_diff(&x, &y) % n;
                }
                *budget = budget.checked_sub(m)?;
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = step(&ys);
                g = abs_diff(&x, &ys).gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if g != *n {
            return Some(g);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn trial_division_is_prime(x: u64) -> bool {
        x >= 2 && (2..).take_while(|d| d * d <= x).all(|d| x % d != 0)
    }

    #[test]
    fn is_prime_examples() {
        assert!(!is_prime(&big(1)));
        assert!(is_prime(&big(2)));
        assert!(!is_prime(&big(561)));
    }

    #[test]
    fn is_prime_matches_trial_division() {
        for x in 1..=1_000_000u64 {
            assert_eq!(is_prime_u64(x), trial_division_is_prime(x), "x = {x}");
        }
    }

    #[test]
    fn is_prime_large() {
        // 2^89 - 1 and 2^127 - 1 are Mersenne primes.
        let m89 = (BigUint::one() << 89) - 1u32;
        let m127 = (BigUint::one() << 127) - 1u32;
        assert!(is_prime(&m89));
        assert!(is_prime(&m127));
        assert!(!is_prime(&(&m89 * &m127)));
        // 2^67 - 1 = 193707721 · 761838257287
        assert!(!is_prime(&((BigUint::one() << 67) - 1u32)));
        // a square of a prime above 2^64
        let p = big(18_446_744_073_709_551_557); // largest prime below 2^64
        assert!(is_prime(&p));
        assert!(!is_prime(&(&p * &p)));
        // next prime above 2^64 is 2^64 + 13
        assert!(is_prime(&((BigUint::one() << 64) + 13u32)));
        for k in 1..13u32 {
            assert!(!is_prime(&((BigUint::one() << 64) + k)), "2^64 + {k}");
        }
    }

    #[test]
    fn lucas_alone_rejects_composites_and_accepts_primes() {
        // Exercise the Lucas step directly on small odd non-squares.
        for n in (41u64..20_000).step_by(2) {
            let r = (n as f64).sqrt() as u64;
            if r * r == n || (r + 1) * (r + 1) == n {
                continue;
            }
            let lucas = strong_lucas_probable_prime(&big(n));
            if trial_division_is_prime(n) {
                assert!(lucas, "prime {n} rejected");
            }
        }
        // No strong Lucas pseudoprime below 5459.
        for n in (41u64..5459).step_by(2) {
            let r = (n as f64).sqrt() as u64;
            if r * r == n || (r + 1) * (r + 1) == n {
                continue;
            }
            assert_eq!(strong_lucas_probable_prime(&big(n)), trial_division_is_prime(n), "n = {n}");
        }
        // 5459 = 53 · 103 is the first strong Lucas pseudoprime.
        assert!(strong_lucas_probable_prime(&big(5459)));
    }

    #[test]
    fn integer_root_examples() {
        assert_eq!(integer_root(&big(8), 3), big(2));
        assert_eq!(integer_root(&big(63), 3), big(3));
        assert_eq!(integer_root(&big(1), 5), big(1));
        assert_eq!(integer_root(&big(u64::MAX), 2), big(4_294_967_295));
        let x = num_traits::pow(big(10), 300);
        assert_eq!(integer_root(&x, 3), num_traits::pow(big(10), 100));
        assert_eq!(integer_root(&(&x - 1u32), 3), num_traits::pow(big(10), 100) - 1u32);
    }

    #[test]
    fn integer_root_agrees_with_num_bigint() {
        let mut x = big(1);
        for i in 0..400u32 {
            x = x * 7u32 + i;
            for r in 1..12 {
                assert_eq!(integer_root(&x, r), x.nth_root(r), "x = {x}, r = {r}");
            }
        }
    }

    proptest! {
        #[test]
        fn integer_root_brackets(x in 1u128.., r in 1u32..20) {
            let x = BigUint::from(x);
            let t = integer_root(&x, r);
            prop_assert!(num_traits::pow(t.clone(), r as usize) <= x);
            prop_assert!(num_traits::pow(t + 1u32, r as usize) > x);
        }

        #[test]
        fn factorize_round_trips(x in 1u64..) {
            let f = factorize(&big(x)).unwrap();
            prop_assert_eq!(f.value(), &big(x));
            for w in f.factors().windows(2) {
                prop_assert!(w[0].0 < w[1].0);
            }
            for (p, e) in f.factors() {
                prop_assert!(is_prime(p));
                prop_assert!(*e >= 1);
            }
        }
    }

    #[test]
    fn valuation_examples() {
        let twelve = FactoredInteger::from_u64(12).unwrap();
        assert_eq!(valuation(&big(2), &twelve), 2);
        assert_eq!(valuation(&big(5), &twelve), 0);
        let p = FactoredInteger::from_prime_powers([(big(3), 7)]).unwrap();
        assert_eq!(valuation(&big(3), &p), 7);
    }

    #[test]
    fn factorize_examples() {
        let one = factorize(&big(1)).unwrap();
        assert_eq!(one.value(), &big(1));
        assert!(one.factors().is_empty());

        let f = factorize(&big(5040)).unwrap();
        assert_eq!(f.factors(), &[(big(2), 4), (big(3), 2), (big(5), 1), (big(7), 1)]);

        let f = factorize(&big(1_000_000)).unwrap();
        assert_eq!(f.factors(), &[(big(2), 6), (big(5), 6)]);
    }

    #[test]
    fn factorize_beyond_trial_division() {
        // product of two primes above 10^6
        let p = big(1_000_003);
        let q = big(998_244_353);
        let f = factorize(&(&p * &q)).unwrap();
        assert_eq!(f.factors(), &[(p.clone(), 1), (q.clone(), 1)]);
        // a square of a large prime
        let f = factorize(&(&q * &q * &p)).unwrap();
        assert_eq!(f.factors(), &[(p, 1), (q, 2)]);
        // 2^67 - 1
        let m = (BigUint::one() << 67) - 1u32;
        let f = factorize(&m).unwrap();
        assert_eq!(f.factors(), &[(big(193_707_721), 1), (big(761_838_257_287), 1)]);
    }

    #[test]
    fn factorize_respects_budget() {
        let p = (BigUint::one() << 89) - 1u32;
        let q = (BigUint::one() << 61) - 1u32;
        let err = factorize_with(&(&p * &q * &q), FactorizeConfig { rho_budget: 1000 }).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit(_)));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(eval_phi(&big(2), 1), big(1));
        assert_eq!(eval_phi(&big(3), 2), big(6));
        assert_eq!(eval_phi(&big(7), 1), big(6));
        assert_eq!(eval_sigma(&big(2), 2, 1), big(7));
        assert_eq!(eval_sigma(&big(3), 1, 2), big(10));
        assert_eq!(eval_sigma(&big(2), 1, 1), big(3));
    }

    #[test]
    fn sigma_matches_closed_form() {
        for p in primes_up_to(100) {
            let p = big(p);
            for e in 1..=10u32 {
                for k in 1..=5u32 {
                    let pk = num_traits::pow(p.clone(), k as usize);
                    let closed = (num_traits::pow(p.clone(), (k * (e + 1)) as usize) - 1u32) / (pk - 1u32);
                    assert_eq!(eval_sigma(&p, e, k), closed);
                }
            }
        }
    }

    #[test]
    fn from_prime_powers_rejects_composites_and_merges() {
        assert!(FactoredInteger::from_prime_powers([(big(4), 1)]).is_err());
        let f = FactoredInteger::from_prime_powers([(big(3), 1), (big(2), 2), (big(3), 2)]).unwrap();
        assert_eq!(f.factors(), &[(big(2), 2), (big(3), 3)]);
        assert_eq!(f.value(), &big(108));
        assert_eq!(f.to_string(), "2^2*3^3");
    }

    #[test]
    fn multiply_merges_factorizations() {
        let a = FactoredInteger::from_u64(360).unwrap();
        let b = FactoredInteger::from_u64(1001).unwrap();
        let c = a.multiply(&b).multiply(&a);
        assert_eq!(c, FactoredInteger::from_u64(360 * 1001 * 360).unwrap());
        assert_eq!(a.pow(3), FactoredInteger::from_u64(360 * 360 * 360).unwrap());
    }
}
