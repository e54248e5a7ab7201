//! The divisor set of `n`, indexed in increasing order.
//!
//! Each divisor carries its exponent vector (aligned with the prime factors
//! of `n`) and its value. Divisibility and quotients are answered on the
//! vectors; the mixed-radix code of a vector maps a difference of vectors
//! straight back to a position.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::arith::FactoredInteger;
use crate::error::{Error, Result};

pub const DEFAULT_DIVISOR_CAP: usize = 1 << 24;

#[derive(Debug, Clone)]
pub struct DivisorLattice {
    base: FactoredInteger,
    width: usize,
    /// Row-major exponent vectors, `width` entries per divisor.
    exponents: Vec<u32>,
    values: Vec<BigUint>,
    codes: Vec<usize>,
    by_code: Vec<usize>,
    index: HashMap<BigUint, usize>,
}

pub fn build_lattice(n: &FactoredInteger) -> Result<DivisorLattice> {
    DivisorLattice::with_cap(n, DEFAULT_DIVISOR_CAP)
}

impl DivisorLattice {
    pub fn with_cap(n: &FactoredInteger, cap: usize) -> Result<Self> {
        let tau = n
            .divisor_count()
            .filter(|&t| t <= cap as u64)
            .ok_or_else(|| {
                Error::ResourceLimit(format!("{n} has more than {cap} divisors"))
            })? as usize;
        let width = n.factors().len();

        // Mixed-radix enumeration: code = Σ digit_i · place_i.
        let mut values = vec![BigUint::one()];
        values.reserve(tau - 1);
        let mut place = 1usize;
        for (p, e) in n.factors() {
            let block = values.len();
            let mut pw = BigUint::one();
            for _ in 0..*e {
                pw *= p;
                for i in 0..block {
                    let v = &values[i] * &pw;
                    values.push(v);
                }
            }
            place *= *e as usize + 1;
        }
        debug_assert_eq!(place, tau);

        let mut order: Vec<usize> = (0..tau).collect();
        order.sort_unstable_by(|&a, &b| values[a].cmp(&values[b]));

        let mut by_code = vec![0usize; tau];
        let mut exponents = Vec::with_capacity(tau * width);
        let mut sorted_values = Vec::with_capacity(tau);
        for (pos, &code) in order.iter().enumerate() {
            by_code[code] = pos;
            let mut rest = code;
            for (_, e) in n.factors() {
                let radix = *e as usize + 1;
                exponents.push((rest % radix) as u32);
                rest /= radix;
            }
            sorted_values.push(std::mem::take(&mut values[code]));
        }
        let index = sorted_values.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();

        Ok(DivisorLattice {
            base: n.clone(),
            width,
            exponents,
            values: sorted_values,
            codes: order,
            by_code,
            index,
        })
    }

    pub fn base(&self) -> &FactoredInteger {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Index of `n` itself.
    pub fn top(&self) -> usize {
        self.values.len() - 1
    }

    pub fn value(&self, i: usize) -> &BigUint {
        &self.values[i]
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    pub fn exponents(&self, i: usize) -> &[u32] {
        &self.exponents[i * self.width..(i + 1) * self.width]
    }

    /// Position of `candidate` if it divides `n`.
    pub fn index_of(&self, candidate: &BigUint) -> Option<usize> {
        if candidate.is_one() {
            return Some(0);
        }
        if !self.base.value().is_multiple_of(candidate) {
            return None;
        }
        self.index.get(candidate).copied()
    }

    pub fn divides(&self, i: usize, j: usize) -> bool {
        self.exponents(i).iter().zip(self.exponents(j)).all(|(a, b)| a <= b)
    }

    /// Index of `value(j) / value(i)`, or `None` when `i` does not divide `j`.
    pub fn quotient(&self, j: usize, i: usize) -> Option<usize> {
        if self.divides(i, j) {
            Some(self.by_code[self.codes[j] - self.codes[i]])
        } else {
            None
        }
    }

    /// All divisors of `value(j)`, in decreasing order.
    pub fn divisors_of(&self, j: usize) -> Vec<usize> {
        let top = self.exponents(j).to_vec();
        let places = self.places();
        let mut codes = vec![0usize];
        for (k, &e) in top.iter().enumerate() {
            let block = codes.len();
            for digit in 1..=e as usize {
                for i in 0..block {
                    codes.push(codes[i] + digit * places[k]);
                }
            }
        }
        let mut out: Vec<usize> = codes.into_iter().map(|c| self.by_code[c]).collect();
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    fn places(&self) -> Vec<usize> {
        let mut place = 1;
        self.base
            .factors()
            .iter()
            .map(|(_, e)| {
                let here = place;
                place *= *e as usize + 1;
                here
            })
            .collect()
    }

    /// `Σ_{d | n} τ(d)`: the number of pairs `t | d` with `d | n`.
    pub fn divisor_pair_count(&self) -> u128 {
        self.base
            .factors()
            .iter()
            .map(|(_, e)| {
                let e = *e as u128;
                (e + 1) * (e + 2) / 2
            })
            .product()
    }
}
