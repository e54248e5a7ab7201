//! Brute-force reference values for cross-checking the engine.
//!
//! Nothing here touches the engine's arithmetic beyond machine integers:
//! totients come from sieves, divisor power sums from divisor-sum sieves.

use crate::error::{Error, Result};
use crate::functions::Function;

/// Largest `limit` accepted by [`sieve_phi`] and [`sieve_sigma`].
pub const SIEVE_BUDGET: u64 = 1 << 25;

/// Largest search bound accepted by [`oracle_preimages`] for `φ`; scanned
/// in segments, so this is a time budget rather than a memory one.
pub const SCAN_BUDGET: u64 = 200_000_000;

const SEGMENT: u64 = 1 << 18;

fn check_budget(limit: u64, budget: u64) -> Result<()> {
    if limit > budget {
        Err(Error::ResourceLimit(format!("oracle bound {limit} exceeds {budget}")))
    } else {
        Ok(())
    }
}

fn small_primes(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    let mut sieve = vec![true; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if sieve[i] {
            out.push(i as u64);
            for j in (i * i..=limit).step_by(i) {
                sieve[j] = false;
            }
        }
    }
    out
}

/// `φ(m)` for `m = 1..=limit`; element `i` holds `φ(i + 1)`.
pub fn sieve_phi(limit: u64) -> Result<Vec<u64>> {
    check_budget(limit, SIEVE_BUDGET)?;
    let mut phi: Vec<u64> = (0..=limit).collect();
    for p in 2..=limit as usize {
        if phi[p] == p as u64 {
            for m in (p..=limit as usize).step_by(p) {
                phi[m] -= phi[m] / p as u64;
            }
        }
    }
    phi.remove(0);
    Ok(phi)
}

/// `σ_k(m)` for `m = 1..=limit`; element `i` holds `σ_k(i + 1)`.
pub fn sieve_sigma(limit: u64, k: u32) -> Result<Vec<u128>> {
    check_budget(limit, SIEVE_BUDGET)?;
    let mut sigma = vec![0u128; limit as usize + 1];
    for d in 1..=limit {
        let dk = (d as u128)
            .checked_pow(k)
            .ok_or_else(|| Error::ResourceLimit("σ_k overflows 128 bits".into()))?;
        for m in (d..=limit).step_by(d as usize) {
            sigma[m as usize] = sigma[m as usize]
                .checked_add(dk)
                .ok_or_else(|| Error::ResourceLimit("σ_k overflows 128 bits".into()))?;
        }
    }
    sigma.remove(0);
    Ok(sigma)
}

/// Calls `visit(m, φ(m))` for every `m` in `1..=bound`, segment by segment.
fn scan_phi(bound: u64, mut visit: impl FnMut(u64, u64)) {
    let root = (bound as f64).sqrt() as u64 + 1;
    let primes = small_primes(root);
    let mut lo = 1;
    while lo <= bound {
        let hi = (lo + SEGMENT).min(bound + 1);
        let mut phi: Vec<u64> = (lo..hi).collect();
        let mut rest = phi.clone();
        for &p in &primes {
            if p * p >= hi {
                break;
            }
            let first = lo.div_ceil(p) * p;
            for m in (first..hi).step_by(p as usize) {
                let i = (m - lo) as usize;
                phi[i] -= phi[i] / p;
                while rest[i] % p == 0 {
                    rest[i] /= p;
                }
            }
        }
        for (i, r) in rest.iter().enumerate() {
            if *r > 1 {
                phi[i] -= phi[i] / r;
            }
            visit(lo + i as u64, phi[i]);
        }
        lo = hi;
    }
}

/// All `m <= bound` with `f(m) = n`, ascending.
///
/// Complete for `φ` when `bound >= 2n²` (since `φ(m) >= √(m/2)`) and for
/// `σ_k` when `bound >= n`.
pub fn oracle_preimages(f: Function, n: u64, bound: u64) -> Result<Vec<u64>> {
    Ok(oracle_preimage_table(f, n, bound)?.swap_remove(n as usize))
}

/// `table[v]` lists every `m <= bound` with `f(m) = v`, for `v <= max_value`.
/// One sieve serves all values at once.
pub fn oracle_preimage_table(f: Function, max_value: u64, bound: u64) -> Result<Vec<Vec<u64>>> {
    let mut table = vec![Vec::new(); max_value as usize + 1];
    match f {
        Function::Phi => {
            check_budget(bound, SCAN_BUDGET)?;
            scan_phi(bound, |m, v| {
                if v <= max_value {
                    table[v as usize].push(m);
                }
            });
        }
        Function::Sigma(k) => {
            for (i, v) in sieve_sigma(bound, k)?.into_iter().enumerate() {
                if v <= max_value as u128 {
                    table[v as usize].push(i as u64 + 1);
                }
            }
        }
    }
    Ok(table)
}
