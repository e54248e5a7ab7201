//! Function-specific construction of the atomic series `L_p`.
//!
//! For each supported multiplicative function we enumerate every prime power
//! `p^e` whose image `f(p^e)` divides `n`, then group those prime powers by
//! `p`. Each group is one atomic series; its coefficient at divisor `d` is
//! `⊕ { C({p^e}) : f(p^e) = d }`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;

use crate::arith::{eval_phi, eval_sigma, integer_root, is_prime, valuation};
use crate::lattice::DivisorLattice;
use crate::semiring::{coeff_add, Aggregator};

/// One prime power `p^e` with `f(p^e) = value(divisor)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PrimePowerTerm {
    pub prime: BigUint,
    pub exponent: u32,
    pub divisor: usize,
}

/// A multiplicative function that can be inverted.
pub trait MultiplicativeFunction {
    fn name(&self) -> String;

    fn eval_prime_power(&self, p: &BigUint, e: u32) -> BigUint;

    /// Every `(p, e)` with `e >= 1` and `f(p^e)` a divisor of the lattice's base.
    fn enumerate_terms(&self, lattice: &DivisorLattice) -> Vec<PrimePowerTerm>;
}

/// Euler's totient.
#[derive(Debug, Clone, Copy, Default)]
pub struct Totient;

impl MultiplicativeFunction for Totient {
    fn name(&self) -> String {
        "phi".into()
    }

    fn eval_prime_power(&self, p: &BigUint, e: u32) -> BigUint {
        eval_phi(p, e)
    }

    fn enumerate_terms(&self, lattice: &DivisorLattice) -> Vec<PrimePowerTerm> {
        // φ(p^e) | n forces p − 1 ∈ D and p^(e−1) | n.
        let n = lattice.base();
        let mut terms = Vec::new();
        for d in lattice.values() {
            let p = d + 1u32;
            if !is_prime(&p) {
                continue;
            }
            let max_e = valuation(&p, n) + 1;
            for e in 1..=max_e {
                let image = eval_phi(&p, e);
                let divisor = lattice
                    .index_of(&image)
                    .expect("(p-1)·p^(e-1) divides n when p-1 | n and p^(e-1) | n");
                terms.push(PrimePowerTerm { prime: p.clone(), exponent: e, divisor });
            }
        }
        terms
    }
}

/// `σ_k`, the sum of `k`-th powers of divisors.
#[derive(Debug, Clone, Copy)]
pub struct DivisorPowerSum {
    k: u32,
}

impl DivisorPowerSum {
    pub fn new(k: u32) -> Self {
        assert!(k >= 1, "sigma_k needs k >= 1");
        DivisorPowerSum { k }
    }

    pub fn k(&self) -> u32 {
        self.k
    }
}

/// `2^m < d`.
fn pow2_below(m: u64, d: &BigUint) -> bool {
    let bits = d.bits();
    if bits == 0 {
        return false;
    }
    m + 1 < bits || (m + 1 == bits && d.trailing_zeros() != Some(m))
}

impl MultiplicativeFunction for DivisorPowerSum {
    fn name(&self) -> String {
        if self.k == 1 {
            "sigma".into()
        } else {
            format!("sigma_{}", self.k)
        }
    }

    fn eval_prime_power(&self, p: &BigUint, e: u32) -> BigUint {
        eval_sigma(p, e, self.k)
    }

    fn enumerate_terms(&self, lattice: &DivisorLattice) -> Vec<PrimePowerTerm> {
        // σ_k(p^e) = d implies p^(ek) < d and p^(ek) <= d − 1 < (p + 1)^(ek),
        // so p is the (ek)-th root of d − 1; ±1 guards the floor.
        let two = BigUint::from(2u32);
        let mut terms = Vec::new();
        for (divisor, d) in lattice.values().iter().enumerate().skip(1) {
            let below = d - 1u32;
            let mut e = 1u32;
            while pow2_below(e as u64 * self.k as u64, d) {
                let root = integer_root(&below, e * self.k);
                let lo = if root > two { &root - 1u32 } else { two.clone() };
                let mut p = lo;
                while p <= &root + 1u32 {
                    if eval_sigma(&p, e, self.k) == *d && is_prime(&p) {
                        terms.push(PrimePowerTerm { prime: p, exponent: e, divisor });
                        break;
                    }
                    p += 1u32;
                }
                e += 1;
            }
        }
        terms
    }
}

/// The two shipped functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Function {
    Phi,
    Sigma(u32),
}

impl Function {
    pub fn descriptor(&self) -> Box<dyn MultiplicativeFunction> {
        match *self {
            Function::Phi => Box::new(Totient),
            Function::Sigma(k) => Box::new(DivisorPowerSum::new(k)),
        }
    }
}

impl fmt::Display for Function {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl MultiplicativeFunction for Function {
    fn name(&self) -> String {
        match *self {
            Function::Phi => Totient.name(),
            Function::Sigma(k) => DivisorPowerSum::new(k).name(),
        }
    }

    fn eval_prime_power(&self, p: &BigUint, e: u32) -> BigUint {
        match *self {
            Function::Phi => eval_phi(p, e),
            Function::Sigma(k) => eval_sigma(p, e, k),
        }
    }

    fn enumerate_terms(&self, lattice: &DivisorLattice) -> Vec<PrimePowerTerm> {
        match *self {
            Function::Phi => Totient.enumerate_terms(lattice),
            Function::Sigma(k) => DivisorPowerSum::new(k).enumerate_terms(lattice),
        }
    }
}

/// The atomic series for one prime: explicit terms only. The identity term
/// `C({1})/1^s` is implicit. A stored term at divisor index 0 (only
/// `φ(2) = 1` produces one) is an additional contribution to `1^s`.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomicSeries<V> {
    pub prime: BigUint,
    /// `(divisor index, coefficient)`, sorted by index.
    pub terms: Vec<(usize, V)>,
}

/// Groups prime-power terms by prime, `⊕`-accumulating coefficients that
/// land on the same divisor. Series come out sorted by prime.
pub fn atomic_series_from_terms<A: Aggregator + ?Sized>(
    terms: impl IntoIterator<Item = PrimePowerTerm>,
    agg: &A,
) -> Vec<AtomicSeries<A::Value>> {
    let mut grouped: BTreeMap<BigUint, BTreeMap<usize, A::Value>> = BTreeMap::new();
    for term in terms {
        let lifted = agg.lift(&term.prime, term.exponent);
        let slot = grouped.entry(term.prime).or_default();
        let merged = coeff_add(slot.remove(&term.divisor), Some(lifted), agg);
        slot.insert(term.divisor, merged.expect("present after add"));
    }
    grouped
        .into_iter()
        .map(|(prime, terms)| AtomicSeries { prime, terms: terms.into_iter().collect() })
        .collect()
}

pub fn build_atomics<F, A>(lattice: &DivisorLattice, f: &F, agg: &A) -> Vec<AtomicSeries<A::Value>>
where
    F: MultiplicativeFunction + ?Sized,
    A: Aggregator + ?Sized,
{
    atomic_series_from_terms(f.enumerate_terms(lattice), agg)
}

pub fn build_phi_atomics<A: Aggregator + ?Sized>(
    lattice: &DivisorLattice,
    agg: &A,
) -> Vec<AtomicSeries<A::Value>> {
    build_atomics(lattice, &Totient, agg)
}

pub fn build_sigma_atomics<A: Aggregator + ?Sized>(
    lattice: &DivisorLattice,
    k: u32,
    agg: &A,
) -> Vec<AtomicSeries<A::Value>> {
    build_atomics(lattice, &DivisorPowerSum::new(k), agg)
}

impl<V> AtomicSeries<V> {
    pub fn contains_identity_divisor(&self) -> bool {
        self.terms.first().is_some_and(|(i, _)| *i == 0)
    }
}
