//! Input expressions: integers, factorials, primorials, powers and products.
//!
//! ```text
//! expr := term ('*' term)*
//! term := INT | INT '!' | INT '#' | INT '^' INT
//! ```
//!
//! Factorizations of factorials, primorials and prime-power products are
//! composed symbolically, so `100!` never has to be factored.
//!
//! A product made only of plain integers and `INT^INT` terms, with at least
//! two terms, is read as an explicit factorization and every base must be
//! prime (`2^4*3^2*5*7`). A lone `INT^INT` is a power of an arbitrary base
//! (`10^6`).

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::arith::{factorize, is_prime, primes_up_to, FactoredInteger};
use crate::error::{Error, Result};

/// Factorial and primorial arguments above this are refused.
pub const MAX_SIEVE_ARGUMENT: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Form {
    Literal(BigUint),
    Factored(Vec<(BigUint, u32)>),
    Factorial(u64),
    Primorial(u64),
    Power(BigUint, u32),
    Product(Vec<Form>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputExpression {
    pub source: String,
    pub form: Form,
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Form::Literal(x) => write!(f, "{x}"),
            Form::Factored(terms) => {
                for (i, (p, e)) in terms.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    write!(f, "{p}^{e}")?;
                }
                Ok(())
            }
            Form::Factorial(m) => write!(f, "{m}!"),
            Form::Primorial(m) => write!(f, "{m}#"),
            Form::Power(b, e) => write!(f, "{b}^{e}"),
            Form::Product(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

enum Term {
    Int(BigUint, usize),
    Pow(BigUint, u32, usize),
    Factorial(u64),
    Primorial(u64),
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, position: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { position, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn int(&mut self) -> Result<(BigUint, usize)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return match self.text.get(start) {
                Some(&c) => self.err(start, format!("expected an integer, found `{}`", c as char)),
                None => self.err(start, "expected an integer, found end of input"),
            };
        }
        let digits = std::str::from_utf8(&self.text[start..self.pos]).unwrap();
        Ok((digits.parse().expect("ascii digits"), start))
    }

    fn small(&self, x: &BigUint, at: usize, what: &str, max: u64) -> Result<u64> {
        match u64::try_from(x) {
            Ok(v) if v <= max => Ok(v),
            _ => self.err(at, format!("{what} {x} is too large (limit {max})")),
        }
    }

    fn term(&mut self) -> Result<Term> {
        let (x, at) = self.int()?;
        match self.peek() {
            Some(b'!') => {
                self.pos += 1;
                Ok(Term::Factorial(self.small(&x, at, "factorial argument", MAX_SIEVE_ARGUMENT)?))
            }
            Some(b'#') => {
                self.pos += 1;
                Ok(Term::Primorial(self.small(&x, at, "primorial argument", MAX_SIEVE_ARGUMENT)?))
            }
            Some(b'^') => {
                self.pos += 1;
                let (e, e_at) = self.int()?;
                let e = self.small(&e, e_at, "exponent", u32::MAX as u64)? as u32;
                Ok(Term::Pow(x, e, at))
            }
            _ => Ok(Term::Int(x, at)),
        }
    }

    fn parse(&mut self) -> Result<Form> {
        let mut terms = vec![self.term()?];
        loop {
            match self.peek() {
                None => break,
                Some(b'*') => {
                    self.pos += 1;
                    terms.push(self.term()?);
                }
                Some(c) => return self.err(self.pos, format!("unexpected `{}`", c as char)),
            }
        }
        let explicit = terms.len() > 1 && terms.iter().all(|t| matches!(t, Term::Int(..) | Term::Pow(..)));
        if explicit {
            let mut factored = Vec::with_capacity(terms.len());
            for t in terms {
                let (p, e, at) = match t {
                    Term::Int(p, at) => (p, 1, at),
                    Term::Pow(p, e, at) => (p, e, at),
                    _ => unreachable!(),
                };
                if !is_prime(&p) {
                    return self.err(at, format!("{p} is not prime in an explicit factorization"));
                }
                factored.push((p, e));
            }
            return Ok(Form::Factored(factored));
        }
        let mut forms: Vec<Form> = terms
            .into_iter()
            .map(|t| match t {
                Term::Int(x, _) => Form::Literal(x),
                Term::Pow(b, e, _) => Form::Power(b, e),
                Term::Factorial(m) => Form::Factorial(m),
                Term::Primorial(m) => Form::Primorial(m),
            })
            .collect();
        Ok(if forms.len() == 1 { forms.pop().unwrap() } else { Form::Product(forms) })
    }
}

pub fn parse_input(text: &str) -> Result<InputExpression> {
    let form = Parser { text: text.as_bytes(), pos: 0 }.parse()?;
    if matches!(&form, Form::Literal(x) if *x == BigUint::from(0u32)) {
        return Err(Error::Parse { position: 0, message: "n must be positive".into() });
    }
    Ok(InputExpression { source: text.to_string(), form })
}

/// `ν_p(m!) = Σ_{i>=1} ⌊m / p^i⌋`.
pub fn factorial_factorization(m: u64) -> FactoredInteger {
    let factors = primes_up_to(m)
        .into_iter()
        .map(|p| {
            let mut e = 0u64;
            let mut q = m;
            while q > 0 {
                q /= p;
                e += q;
            }
            (BigUint::from(p), e as u32)
        })
        .collect();
    FactoredInteger::from_canonical(factors)
}

/// Product of all primes `<= m`.
pub fn primorial_factorization(m: u64) -> FactoredInteger {
    FactoredInteger::from_canonical(primes_up_to(m).into_iter().map(|p| (BigUint::from(p), 1)).collect())
}

/// Product of the first `count` primes.
pub fn nth_primorial_factorization(count: usize) -> FactoredInteger {
    let mut limit = 16u64;
    loop {
        let primes = primes_up_to(limit);
        if primes.len() >= count {
            return FactoredInteger::from_canonical(
                primes.into_iter().take(count).map(|p| (BigUint::from(p), 1)).collect(),
            );
        }
        limit *= 2;
    }
}

fn zero_error() -> Error {
    Error::InvalidInput("n must be positive".into())
}

impl Form {
    pub fn factorization(&self) -> Result<FactoredInteger> {
        match self {
            Form::Literal(x) => {
                if *x == BigUint::from(0u32) {
                    return Err(zero_error());
                }
                factorize(x)
            }
            Form::Factored(terms) => FactoredInteger::from_prime_powers(terms.iter().cloned()),
            Form::Factorial(m) => Ok(factorial_factorization(*m)),
            Form::Primorial(m) => Ok(primorial_factorization(*m)),
            Form::Power(b, e) => {
                if *b == BigUint::from(0u32) {
                    return Err(zero_error());
                }
                Ok(factorize(b)?.pow(*e))
            }
            Form::Product(parts) => parts
                .iter()
                .try_fold(FactoredInteger::one(), |acc, p| Ok(acc.multiply(&p.factorization()?))),
        }
    }

    /// The plain value, computed without any factorization.
    pub fn direct_value(&self) -> BigUint {
        match self {
            Form::Literal(x) => x.clone(),
            Form::Factored(terms) => terms.iter().map(|(p, e)| num_traits::pow(p.clone(), *e as usize)).product(),
            Form::Factorial(m) => (1..=*m).map(BigUint::from).product(),
            Form::Primorial(m) => (2..=*m)
                .filter(|&k| (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0))
                .map(BigUint::from)
                .product(),
            Form::Power(b, e) => num_traits::pow(b.clone(), *e as usize),
            Form::Product(parts) => parts.iter().map(Form::direct_value).fold(BigUint::one(), |a, b| a * b),
        }
    }
}

impl InputExpression {
    pub fn factorization(&self) -> Result<FactoredInteger> {
        self.form.factorization()
    }
}
