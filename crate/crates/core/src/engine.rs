//! Restricted Dirichlet products over the divisor lattice.
//!
//! Starting from `P₀ = C({1})/1^s`, each atomic series is multiplied in with
//! the product truncated to denominators in `D`. The coefficient of `n^-s`
//! in the final product is `C(f⁻¹(n))`, and the coefficient of `d^-s` is
//! `C(f⁻¹(d))` for every `d | n`.

use std::time::Duration;

use num_bigint::BigUint;

use crate::arith::FactoredInteger;
use crate::error::Result;
use crate::functions::{build_atomics, AtomicSeries, MultiplicativeFunction};
use crate::lattice::{DivisorLattice, DEFAULT_DIVISOR_CAP};
use crate::semiring::{coeff_add, coeff_mul, make_aggregator, AggregateKind, AggregateValue, Aggregator};

/// Sparse series indexed by divisor position; `None` is the empty set.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseSeries<V> {
    coeffs: Vec<Option<V>>,
}

impl<V> SparseSeries<V> {
    pub fn empty(len: usize) -> Self {
        SparseSeries { coeffs: std::iter::repeat_with(|| None).take(len).collect() }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, divisor: usize) -> Option<&V> {
        self.coeffs[divisor].as_ref()
    }

    pub fn set(&mut self, divisor: usize, value: Option<V>) {
        self.coeffs[divisor] = value;
    }

    pub fn into_coefficients(self) -> Vec<Option<V>> {
        self.coeffs
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounter {
    pub mul_count: u64,
    pub add_count: u64,
}

pub fn initial_series<A: Aggregator + ?Sized>(lattice: &DivisorLattice, agg: &A) -> SparseSeries<A::Value> {
    let mut series = SparseSeries::empty(lattice.len());
    series.set(0, Some(agg.one()));
    series
}

/// `P ← P ⊗_D L_p`, in place.
///
/// Divisors are visited in decreasing order. The new coefficient at `d`
/// reads the old coefficients at `d / d'` for the explicit terms `d' | d`
/// of `L_p`; those are all at or below `d` and so still hold their old
/// values. The implicit identity term of `L_p` carries the old `B_d` over.
pub fn multiply_restricted<A: Aggregator + ?Sized>(
    series: &mut SparseSeries<A::Value>,
    atom: &AtomicSeries<A::Value>,
    lattice: &DivisorLattice,
    agg: &A,
    counter: &mut OpCounter,
) {
    debug_assert_eq!(series.len(), lattice.len());
    let terms = &atom.terms;
    let lowest = terms.first().map_or(usize::MAX, |(i, _)| *i);
    for d in (0..series.len()).rev() {
        if d < lowest {
            // No explicit term divides anything this small.
            break;
        }
        let mut acc: Option<A::Value> = None;
        for (t, a) in terms {
            if *t > d {
                break;
            }
            let Some(q) = lattice.quotient(d, *t) else { continue };
            let Some(b) = series.get(q) else { continue };
            counter.mul_count += 1;
            let product = coeff_mul(Some(b), Some(a), agg);
            if acc.is_some() {
                counter.add_count += 1;
            }
            acc = coeff_add(acc, product, agg);
        }
        if acc.is_some() {
            let old = series.coeffs[d].take();
            if old.is_some() {
                counter.add_count += 1;
            }
            series.coeffs[d] = coeff_add(old, acc, agg);
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct InvertOptions {
    /// Report the coefficient at every divisor, not just at `n`.
    pub all_divisors: bool,
    pub divisor_cap: usize,
}

impl Default for InvertOptions {
    fn default() -> Self {
        InvertOptions { all_divisors: false, divisor_cap: DEFAULT_DIVISOR_CAP }
    }
}

#[derive(Debug, Clone)]
pub struct InverseReport<V> {
    pub n: BigUint,
    pub function: String,
    pub aggregate: AggregateKind,
    /// `None` when `n` has no inverses.
    pub value: Option<V>,
    /// `(d, C(f⁻¹(d)))` for every `d | n`, ascending, when requested.
    pub divisors: Option<Vec<(BigUint, Option<V>)>>,
    pub counter: OpCounter,
    /// Number of atomic series multiplied in.
    pub atomic_count: usize,
    /// `τ(n)`.
    pub divisor_count: usize,
    /// `Σ_{d | n} τ(d)`.
    pub divisor_pairs: u128,
    pub elapsed: Duration,
}

impl<V> InverseReport<V> {
    /// Upper bound on `⊗` operations for this run: `ℓ · Σ_{d | n} τ(d)`.
    pub fn mul_bound(&self) -> u128 {
        self.atomic_count as u128 * self.divisor_pairs
    }

    pub fn map<W>(self, mut f: impl FnMut(V) -> W) -> InverseReport<W> {
        InverseReport {
            n: self.n,
            function: self.function,
            aggregate: self.aggregate,
            value: self.value.map(&mut f),
            divisors: self
                .divisors
                .map(|ds| ds.into_iter().map(|(d, v)| (d, v.map(&mut f))).collect()),
            counter: self.counter,
            atomic_count: self.atomic_count,
            divisor_count: self.divisor_count,
            divisor_pairs: self.divisor_pairs,
            elapsed: self.elapsed,
        }
    }
}

/// Runs the full pipeline and returns the final series alongside the lattice.
pub fn invert_series<F, A>(
    n: &FactoredInteger,
    f: &F,
    agg: &A,
    divisor_cap: usize,
) -> Result<(DivisorLattice, SparseSeries<A::Value>, OpCounter, usize)>
where
    F: MultiplicativeFunction + ?Sized,
    A: Aggregator + ?Sized,
{
    let lattice = DivisorLattice::with_cap(n, divisor_cap)?;
    let atoms = build_atomics(&lattice, f, agg);
    let mut series = initial_series(&lattice, agg);
    let mut counter = OpCounter::default();
    for atom in &atoms {
        multiply_restricted(&mut series, atom, &lattice, agg, &mut counter);
    }
    Ok((lattice, series, counter, atoms.len()))
}

/// `C(f⁻¹(n))`.
pub fn invert<F, A>(n: &FactoredInteger, f: &F, agg: &A, options: &InvertOptions) -> Result<InverseReport<A::Value>>
where
    F: MultiplicativeFunction + ?Sized,
    A: Aggregator + ?Sized,
{
    let started = web_time::now();
    let (lattice, series, counter, atomic_count) = invert_series(n, f, agg, options.divisor_cap)?;
    let top = lattice.top();
    let mut coeffs = series.into_coefficients();
    let (value, divisors) = if options.all_divisors {
        let value = coeffs[top].clone();
        let divisors = lattice.values().iter().cloned().zip(coeffs).collect();
        (value, Some(divisors))
    } else {
        (coeffs.swap_remove(top), None)
    };
    Ok(InverseReport {
        n: n.value().clone(),
        function: f.name(),
        aggregate: agg.kind(),
        value,
        divisors,
        counter,
        atomic_count,
        divisor_count: lattice.len(),
        divisor_pairs: lattice.divisor_pair_count(),
        elapsed: web_time::elapsed(started),
    })
}

/// [`invert`] with the aggregate chosen at runtime. Dispatches to the
/// concrete aggregator types so the inner loop is monomorphic.
pub fn invert_kind<F>(
    n: &FactoredInteger,
    f: &F,
    kind: AggregateKind,
    options: &InvertOptions,
) -> Result<InverseReport<AggregateValue>>
where
    F: MultiplicativeFunction + ?Sized,
{
    use crate::semiring::DynAggregator;
    Ok(match make_aggregator(kind) {
        DynAggregator::Set(a) => invert(n, f, &a, options)?.map(AggregateValue::Set),
        DynAggregator::PowerSum(a) => invert(n, f, &a, options)?.map(AggregateValue::Integer),
        DynAggregator::Min(a) => invert(n, f, &a, options)?.map(AggregateValue::Integer),
        DynAggregator::Max(a) => invert(n, f, &a, options)?.map(AggregateValue::Integer),
    })
}

/// `std::time::Instant` panics on `wasm32-unknown-unknown`.
mod web_time {
    use std::time::Duration;

    #[cfg(not(target_arch = "wasm32"))]
    pub type Stamp = std::time::Instant;
    #[cfg(target_arch = "wasm32")]
    pub type Stamp = ();

    #[cfg(not(target_arch = "wasm32"))]
    pub fn now() -> Stamp {
        std::time::Instant::now()
    }

    #[cfg(target_arch = "wasm32")]
    pub fn now() -> Stamp {}

    #[cfg(not(target_arch = "wasm32"))]
    pub fn elapsed(s: Stamp) -> Duration {
        s.elapsed()
    }

    #[cfg(target_arch = "wasm32")]
    pub fn elapsed(_: Stamp) -> Duration {
        Duration::ZERO
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{build_phi_atomics, Function};
    use crate::lattice::build_lattice;
    use crate::semiring::{MaxAggregator, MinAggregator, PowerSumAggregator, SetAggregator};

    fn b(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn fi(x: u64) -> FactoredInteger {
        FactoredInteger::from_u64(x).unwrap()
    }

    fn set_of(n: u64, f: Function) -> Vec<u64> {
        invert(&fi(n), &f, &SetAggregator, &InvertOptions::default())
            .unwrap()
            .value
            .unwrap_or_default()
            .iter()
            .map(|x| u64::try_from(x).unwrap())
            .collect()
    }

    /// Freshly allocated convolution over all `t | d`, independent of the
    /// in-place loop.
    fn multiply_out_of_place<A: Aggregator>(
        series: &SparseSeries<A::Value>,
        atom: &AtomicSeries<A::Value>,
        lattice: &DivisorLattice,
        agg: &A,
    ) -> SparseSeries<A::Value> {
        let mut dense: Vec<Option<A::Value>> = vec![None; lattice.len()];
        dense[0] = Some(agg.one());
        for (i, a) in &atom.terms {
            dense[*i] = coeff_add(dense[*i].take(), Some(a.clone()), agg);
        }
        let mut out = SparseSeries::empty(lattice.len());
        for d in 0..lattice.len() {
            let mut acc = None;
            for t in lattice.divisors_of(d) {
                let q = lattice.quotient(d, t).unwrap();
                acc = coeff_add(acc, coeff_mul(series.get(t), dense[q].as_ref(), agg), agg);
            }
            out.set(d, acc);
        }
        out
    }

    #[test]
    fn initial_series_examples() {
        let l = build_lattice(&fi(12)).unwrap();
        assert_eq!(initial_series(&l, &SetAggregator).get(0), Some(&vec![b(1)]));
        assert_eq!(initial_series(&l, &PowerSumAggregator::COUNT).get(0), Some(&b(1)));
        assert_eq!(initial_series(&l, &MinAggregator).get(0), Some(&b(1)));
        assert!((1..l.len()).all(|i| initial_series(&l, &SetAggregator).get(i).is_none()));
    }

    #[test]
    fn first_product_is_the_atom() {
        let l = build_lattice(&fi(36)).unwrap();
        for atom in build_phi_atomics(&l, &SetAggregator) {
            let mut p = initial_series(&l, &SetAggregator);
            multiply_restricted(&mut p, &atom, &l, &SetAggregator, &mut OpCounter::default());
            let mut expected = SparseSeries::empty(l.len());
            expected.set(0, Some(vec![b(1)]));
            for (i, v) in &atom.terms {
                expected.set(*i, coeff_add(expected.get(*i).cloned(), Some(v.clone()), &SetAggregator));
            }
            assert_eq!(p, expected, "p = {}", atom.prime);
        }
    }

    #[test]
    fn small_phi_sets() {
        assert_eq!(set_of(4, Function::Phi), [5, 8, 10, 12]);
        assert_eq!(set_of(2, Function::Phi), [3, 4, 6]);
        assert_eq!(set_of(1, Function::Phi), [1, 2]);
        assert_eq!(set_of(24, Function::Phi), [35, 39, 45, 52, 56, 70, 72, 78, 84, 90]);
        assert!(set_of(3, Function::Phi).is_empty());
        assert!(set_of(14, Function::Phi).is_empty());
        assert_eq!(set_of(12, Function::Sigma(1)), [6, 11]);
        assert_eq!(set_of(1, Function::Sigma(1)), [1]);
    }

    #[test]
    fn aggregates_for_24() {
        let n = fi(24);
        let o = InvertOptions::default();
        assert_eq!(invert(&n, &Function::Phi, &PowerSumAggregator::COUNT, &o).unwrap().value, Some(b(10)));
        assert_eq!(invert(&n, &Function::Phi, &MinAggregator, &o).unwrap().value, Some(b(35)));
        assert_eq!(invert(&n, &Function::Phi, &MaxAggregator, &o).unwrap().value, Some(b(90)));
        let count3 = invert(&fi(3), &Function::Phi, &PowerSumAggregator::COUNT, &o).unwrap();
        assert_eq!(count3.value, None);
    }

    #[test]
    fn in_place_matches_out_of_place() {
        for n in (1..=600u64).chain([5040, 720 * 7, 2 * 3 * 5 * 7 * 11 * 13]) {
            let l = build_lattice(&fi(n)).unwrap();
            for f in [Function::Phi, Function::Sigma(1), Function::Sigma(2)] {
                let atoms = build_atomics(&l, &f, &SetAggregator);
                let mut in_place = initial_series(&l, &SetAggregator);
                let mut fresh = in_place.clone();
                for atom in &atoms {
                    multiply_restricted(&mut in_place, atom, &l, &SetAggregator, &mut OpCounter::default());
                    fresh = multiply_out_of_place(&fresh, atom, &l, &SetAggregator);
                    assert_eq!(in_place, fresh, "n = {n}, {f}, p = {}", atom.prime);
                }
            }
        }
    }

    #[test]
    fn atom_order_does_not_matter() {
        for n in [24u64, 720, 5040, 1 << 10, 9 * 25 * 49] {
            let l = build_lattice(&fi(n)).unwrap();
            let mut atoms = build_atomics(&l, &Function::Phi, &SetAggregator);
            let run = |atoms: &[AtomicSeries<Vec<BigUint>>]| {
                let mut s = initial_series(&l, &SetAggregator);
                for a in atoms {
                    multiply_restricted(&mut s, a, &l, &SetAggregator, &mut OpCounter::default());
                }
                s
            };
            let ascending = run(&atoms);
            atoms.reverse();
            assert_eq!(run(&atoms), ascending);
            let half = atoms.len() / 2;
            atoms.rotate_left(half);
            assert_eq!(run(&atoms), ascending);
        }
    }

    #[test]
    fn all_divisors_reports_every_coefficient() {
        let o = InvertOptions { all_divisors: true, ..Default::default() };
        let r = invert(&fi(12), &Function::Phi, &PowerSumAggregator::COUNT, &o).unwrap();
        let ds = r.divisors.unwrap();
        let got: Vec<(u64, u64)> = ds
            .iter()
            .map(|(d, v)| (u64::try_from(d).unwrap(), v.as_ref().map_or(0, |v| u64::try_from(v).unwrap())))
            .collect();
        // |φ⁻¹(d)| for d = 1, 2, 3, 4, 6, 12
        assert_eq!(got, [(1, 2), (2, 3), (3, 0), (4, 4), (6, 4), (12, 6)]);
        assert_eq!(r.value, Some(b(6)));
    }

    #[test]
    fn counters_respect_the_pair_bound() {
        for n in 1..=2000u64 {
            let r = invert(&fi(n), &Function::Phi, &PowerSumAggregator::COUNT, &InvertOptions::default()).unwrap();
            assert!((r.counter.mul_count as u128) <= r.mul_bound(), "n = {n}");
        }
    }

    #[test]
    fn invert_kind_dispatches() {
        let o = InvertOptions::default();
        let r = invert_kind(&fi(24), &Function::Phi, AggregateKind::Sum, &o).unwrap();
        assert_eq!(r.value, Some(AggregateValue::Integer(b(35 + 39 + 45 + 52 + 56 + 70 + 72 + 78 + 84 + 90))));
        assert_eq!(r.aggregate, AggregateKind::Sum);
        let r = invert_kind(&fi(12), &Function::Sigma(1), AggregateKind::Set, &o).unwrap();
        assert_eq!(r.value, Some(AggregateValue::Set(vec![b(6), b(11)])));
    }

    #[test]
    fn lattice_cap_propagates() {
        let o = InvertOptions { divisor_cap: 10, ..Default::default() };
        assert!(invert(&fi(5040), &Function::Phi, &SetAggregator, &o).is_err());
    }
}
