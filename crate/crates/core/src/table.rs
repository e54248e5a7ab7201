//! Input families for batch tables: `m!`, `10^m` and the primorial of the
//! first `m` primes.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::arith::FactoredInteger;
use crate::engine::{invert_kind, InverseReport, InvertOptions};
use crate::error::{Error, Result};
use crate::functions::Function;
use crate::input::{factorial_factorization, nth_primorial_factorization};
use crate::semiring::{AggregateKind, AggregateValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Factorial,
    Power10,
    Primorial,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "factorial" => Ok(Family::Factorial),
            "power10" => Ok(Family::Power10),
            "primorial" => Ok(Family::Primorial),
            other => Err(Error::InvalidInput(format!("unknown family `{other}`"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Factorial => "factorial",
            Family::Power10 => "power10",
            Family::Primorial => "primorial",
        })
    }
}

impl Family {
    /// The `m`-th member: `m!`, `10^m`, or `p_m#`.
    pub fn member(&self, m: u64) -> FactoredInteger {
        match self {
            Family::Factorial => factorial_factorization(m),
            Family::Power10 => FactoredInteger::from_canonical(if m == 0 {
                Vec::new()
            } else {
                vec![(BigUint::from(2u32), m as u32), (BigUint::from(5u32), m as u32)]
            }),
            Family::Primorial => nth_primorial_factorization(m as usize),
        }
    }
}

#[derive(Debug, Clone)]
pub struct TableRow {
    pub index: u64,
    pub n: FactoredInteger,
    pub columns: Vec<InverseReport<AggregateValue>>,
}

pub fn table_row(
    family: Family,
    index: u64,
    f: Function,
    aggregates: &[AggregateKind],
    options: &InvertOptions,
) -> Result<TableRow> {
    let n = family.member(index);
    let columns = aggregates
        .iter()
        .map(|&kind| invert_kind(&n, &f, kind, options))
        .collect::<Result<_>>()?;
    Ok(TableRow { index, n, columns })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn members() {
        assert_eq!(Family::Factorial.member(4).value(), &BigUint::from(24u32));
        assert_eq!(Family::Factorial.member(0).value(), &BigUint::from(1u32));
        assert_eq!(Family::Power10.member(3).value(), &BigUint::from(1000u32));
        assert_eq!(Family::Power10.member(0).value(), &BigUint::from(1u32));
        assert_eq!(Family::Primorial.member(3).value(), &BigUint::from(30u32));
        assert_eq!("power10".parse::<Family>().unwrap(), Family::Power10);
        assert!("fib".parse::<Family>().is_err());
    }

    #[test]
    fn factorial_min_column() {
        let mins: Vec<BigUint> = (1..=4)
            .map(|m| {
                let row = table_row(Family::Factorial, m, Function::Phi, &[AggregateKind::Min], &InvertOptions::default())
                    .unwrap();
                row.columns[0].value.as_ref().unwrap().as_integer().unwrap().clone()
            })
            .collect();
        let expected: Vec<BigUint> = [1u32, 3, 7, 35].into_iter().map(BigUint::from).collect();
        assert_eq!(mins, expected);
    }
}
