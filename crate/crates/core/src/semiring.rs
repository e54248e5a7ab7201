//! Aggregators: maps from finite sets of positive integers into a commutative
//! semiring that respect products of coprime sets and unions of disjoint
//! sets.
//!
//! Coefficients are `Option<V>`; `None` stands for the empty set, a formal
//! zero adjoined to every semiring here (`min`/`max` have no additive
//! identity of their own).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AggregateKind {
    Set,
    Count,
    Sum,
    SumPow(u32),
    Min,
    Max,
}

impl fmt::Display for AggregateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AggregateKind::Set => write!(f, "set"),
            AggregateKind::Count => write!(f, "count"),
            AggregateKind::Sum => write!(f, "sum"),
            AggregateKind::SumPow(q) => write!(f, "sumpow:{q}"),
            AggregateKind::Min => write!(f, "min"),
            AggregateKind::Max => write!(f, "max"),
        }
    }
}

impl FromStr for AggregateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim().to_ascii_lowercase();
        Ok(match s.as_str() {
            "set" => AggregateKind::Set,
            "count" => AggregateKind::Count,
            "sum" => AggregateKind::Sum,
            "min" => AggregateKind::Min,
            "max" => AggregateKind::Max,
            other => {
                let q = other
                    .strip_prefix("sumpow:")
                    .and_then(|q| q.parse().ok())
                    .ok_or_else(|| Error::InvalidInput(format!("unknown aggregate `{s}`")))?;
                AggregateKind::SumPow(q)
            }
        })
    }
}

pub trait Aggregator {
    type Value: Clone + fmt::Debug + PartialEq;

    fn kind(&self) -> AggregateKind;

    /// `C({1})`, the multiplicative identity.
    fn one(&self) -> Self::Value;

    /// `C({p^e})`.
    fn lift(&self, p: &BigUint, e: u32) -> Self::Value;

    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;

    fn add(&self, a: Self::Value, b: Self::Value) -> Self::Value;

    /// Whether `mul(a, b)` is a homomorphic image of a coprime product.
    /// Only the set aggregator can check this.
    fn coprime_operands(&self, _a: &Self::Value, _b: &Self::Value) -> bool {
        true
    }

    /// Whether `add(a, b)` is a homomorphic image of a disjoint union.
    fn disjoint_operands(&self, _a: &Self::Value, _b: &Self::Value) -> bool {
        true
    }
}

/// Absent-aware `⊕`.
pub fn coeff_add<A: Aggregator + ?Sized>(
    a: Option<A::Value>,
    b: Option<A::Value>,
    agg: &A,
) -> Option<A::Value> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => {
            debug_assert!(agg.disjoint_operands(&a, &b), "⊕ on overlapping sets: {a:?} and {b:?}");
            Some(agg.add(a, b))
        }
    }
}

/// Absent-absorbing `⊗`.
pub fn coeff_mul<A: Aggregator + ?Sized>(
    a: Option<&A::Value>,
    b: Option<&A::Value>,
    agg: &A,
) -> Option<A::Value> {
    let (a, b) = (a?, b?);
    debug_assert!(agg.coprime_operands(a, b), "⊗ on non-coprime sets: {a:?} and {b:?}");
    Some(agg.mul(a, b))
}

/// Identity map: the coefficient is the set itself, kept sorted.
#[derive(Debug, Clone, Copy, Default)]
pub struct SetAggregator;

impl Aggregator for SetAggregator {
    type Value = Vec<BigUint>;

    fn kind(&self) -> AggregateKind {
        AggregateKind::Set
    }

    fn one(&self) -> Vec<BigUint> {
        vec![BigUint::one()]
    }

    fn lift(&self, p: &BigUint, e: u32) -> Vec<BigUint> {
        vec![num_traits::pow(p.clone(), e as usize)]
    }

    fn mul(&self, a: &Vec<BigUint>, b: &Vec<BigUint>) -> Vec<BigUint> {
        let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        if let [single] = small.as_slice() {
            // Scaling preserves order.
            return large.iter().map(|x| x * single).collect();
        }
        let mut out: Vec<BigUint> =
            large.iter().flat_map(|x| small.iter().map(move |y| x * y)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn add(&self, a: Vec<BigUint>, b: Vec<BigUint>) -> Vec<BigUint> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut a = a.into_iter().peekable();
        let mut b = b.into_iter().peekable();
        loop {
            let next = match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match x.cmp(y) {
                    Ordering::Less => a.next(),
                    Ordering::Greater => b.next(),
                    Ordering::Equal => {
                        b.next();
                        a.next()
                    }
                },
                (Some(_), None) => a.next(),
                (None, Some(_)) => b.next(),
                (None, None) => break,
            };
            out.extend(next);
        }
        out
    }

    fn coprime_operands(&self, a: &Vec<BigUint>, b: &Vec<BigUint>) -> bool {
        a.iter().all(|x| b.iter().all(|y| x.gcd(y).is_one()))
    }

    fn disjoint_operands(&self, a: &Vec<BigUint>, b: &Vec<BigUint>) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => return false,
            }
        }
        true
    }
}

/// `C_q(U) = Σ_{u ∈ U} u^q` into `(ℕ, ·, +)`. `q = 0` counts, `q = 1` sums.
#[derive(Debug, Clone, Copy)]
pub struct PowerSumAggregator {
    pub q: u32,
}

impl PowerSumAggregator {
    pub const COUNT: PowerSumAggregator = PowerSumAggregator { q: 0 };
    pub const SUM: PowerSumAggregator = PowerSumAggregator { q: 1 };
}

impl Aggregator for PowerSumAggregator {
    type Value = BigUint;

    fn kind(&self) -> AggregateKind {
        match self.q {
            0 => AggregateKind::Count,
            1 => AggregateKind::Sum,
            q => AggregateKind::SumPow(q),
        }
    }

    fn one(&self) -> BigUint {
        BigUint::one()
    }

    fn lift(&self, p: &BigUint, e: u32) -> BigUint {
        num_traits::pow(p.clone(), e as usize * self.q as usize)
    }

    fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        a * b
    }

    fn add(&self, a: BigUint, b: BigUint) -> BigUint {
        a + b
    }
}

/// Smallest element, into `(ℤ>0, ·, min)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct MinAggregator;

impl Aggregator for MinAggregator {
    type Value = BigUint;

    fn kind(&self) -> AggregateKind {
        AggregateKind::Min
    }

    fn one(&self) -> BigUint {
        BigUint::one()
    }

    fn lift(&self, p: &BigUint, e: u32) -> BigUint {
        num_traits::pow(p.clone(), e as usize)
    }

    fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        a * b
    }

    fn add(&self, a: BigUint, b: BigUint) -> BigUint {
        a.min(b)
    }
}

/// Largest element, into `(ℤ>0, ·, max)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct MaxAggregator;

impl Aggregator for MaxAggregator {
    type Value = BigUint;

    fn kind(&self) -> AggregateKind {
        AggregateKind::Max
    }

    fn one(&self) -> BigUint {
        BigUint::one()
    }

    fn lift(&self, p: &BigUint, e: u32) -> BigUint {
        num_traits::pow(p.clone(), e as usize)
    }

    fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        a * b
    }

    fn add(&self, a: BigUint, b: BigUint) -> BigUint {
        a.max(b)
    }
}

/// A value of any of the shipped aggregators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AggregateValue {
    Set(Vec<BigUint>),
    Integer(BigUint),
}

impl AggregateValue {
    pub fn as_set(&self) -> Option<&[BigUint]> {
        match self {
            AggregateValue::Set(s) => Some(s),
            AggregateValue::Integer(_) => None,
        }
    }

    pub fn as_integer(&self) -> Option<&BigUint> {
        match self {
            AggregateValue::Integer(x) => Some(x),
            AggregateValue::Set(_) => None,
        }
    }
}

/// Runtime-selected aggregator.
#[derive(Debug, Clone, Copy)]
pub enum DynAggregator {
    Set(SetAggregator),
    PowerSum(PowerSumAggregator),
    Min(MinAggregator),
    Max(MaxAggregator),
}

pub fn make_aggregator(kind: AggregateKind) -> DynAggregator {
    match kind {
        AggregateKind::Set => DynAggregator::Set(SetAggregator),
        AggregateKind::Count => DynAggregator::PowerSum(PowerSumAggregator::COUNT),
        AggregateKind::Sum => DynAggregator::PowerSum(PowerSumAggregator::SUM),
        AggregateKind::SumPow(q) => DynAggregator::PowerSum(PowerSumAggregator { q }),
        AggregateKind::Min => DynAggregator::Min(MinAggregator),
        AggregateKind::Max => DynAggregator::Max(MaxAggregator),
    }
}

fn int(v: &AggregateValue) -> &BigUint {
    v.as_integer().expect("integer aggregate value")
}

fn set(v: &AggregateValue) -> &Vec<BigUint> {
    match v {
        AggregateValue::Set(s) => s,
        AggregateValue::Integer(_) => panic!("set aggregate value expected"),
    }
}

impl Aggregator for DynAggregator {
    type Value = AggregateValue;

    fn kind(&self) -> AggregateKind {
        match self {
            DynAggregator::Set(a) => a.kind(),
            DynAggregator::PowerSum(a) => a.kind(),
            DynAggregator::Min(a) => a.kind(),
            DynAggregator::Max(a) => a.kind(),
        }
    }

    fn one(&self) -> AggregateValue {
        match self {
            DynAggregator::Set(a) => AggregateValue::Set(a.one()),
            _ => AggregateValue::Integer(BigUint::one()),
        }
    }

    fn lift(&self, p: &BigUint, e: u32) -> AggregateValue {
        match self {
            DynAggregator::Set(a) => AggregateValue::Set(a.lift(p, e)),
            DynAggregator::PowerSum(a) => AggregateValue::Integer(a.lift(p, e)),
            DynAggregator::Min(a) => AggregateValue::Integer(a.lift(p, e)),
            DynAggregator::Max(a) => AggregateValue::Integer(a.lift(p, e)),
        }
    }

    fn mul(&self, a: &AggregateValue, b: &AggregateValue) -> AggregateValue {
        match self {
            DynAggregator::Set(s) => AggregateValue::Set(s.mul(set(a), set(b))),
            _ => AggregateValue::Integer(int(a) * int(b)),
        }
    }

    fn add(&self, a: AggregateValue, b: AggregateValue) -> AggregateValue {
        match (self, a, b) {
            (DynAggregator::Set(s), AggregateValue::Set(a), AggregateValue::Set(b)) => {
                AggregateValue::Set(s.add(a, b))
            }
            (DynAggregator::PowerSum(_), AggregateValue::Integer(a), AggregateValue::Integer(b)) => {
                AggregateValue::Integer(a + b)
            }
            (DynAggregator::Min(_), AggregateValue::Integer(a), AggregateValue::Integer(b)) => {
                AggregateValue::Integer(a.min(b))
            }
            (DynAggregator::Max(_), AggregateValue::Integer(a), AggregateValue::Integer(b)) => {
                AggregateValue::Integer(a.max(b))
            }
            (agg, a, b) => panic!("{agg:?} cannot add {a:?} and {b:?}"),
        }
    }

    fn coprime_operands(&self, a: &AggregateValue, b: &AggregateValue) -> bool {
        match self {
            DynAggregator::Set(s) => s.coprime_operands(set(a), set(b)),
            _ => true,
        }
    }

    fn disjoint_operands(&self, a: &AggregateValue, b: &AggregateValue) -> bool {
        match self {
            DynAggregator::Set(s) => s.disjoint_operands(set(a), set(b)),
            _ => true,
        }
    }
}

/// Reduces a finite set the way an aggregator of `kind` would.
pub fn reduce_set(kind: AggregateKind, s: &[BigUint]) -> Option<AggregateValue> {
    if s.is_empty() {
        return None;
    }
    Some(match kind {
        AggregateKind::Set => AggregateValue::Set(s.to_vec()),
        AggregateKind::Count => AggregateValue::Integer(BigUint::from(s.len())),
        AggregateKind::Sum => AggregateValue::Integer(s.iter().sum()),
        AggregateKind::SumPow(q) => {
            AggregateValue::Integer(s.iter().map(|x| num_traits::pow(x.clone(), q as usize)).sum())
        }
        AggregateKind::Min => AggregateValue::Integer(s.iter().min().unwrap().clone()),
        AggregateKind::Max => AggregateValue::Integer(s.iter().max().unwrap().clone()),
    })
}
