//! Generators for the cyclic-k and katsura-k benchmark families.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::input::{default_vars, ProblemFile};
use crate::poly::{Monomial, MonomialOrder, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Cyclic,
    Katsura,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Benchmark {
    pub family: Family,
    pub k: usize,
}

impl Benchmark {
    pub fn cyclic(k: usize) -> Self {
        Benchmark {
            family: Family::Cyclic,
            k,
        }
    }

    pub fn katsura(k: usize) -> Self {
        Benchmark {
            family: Family::Katsura,
            k,
        }
    }

    pub fn nvars(&self) -> usize {
        match self.family {
            Family::Cyclic => self.k,
            Family::Katsura => self.k + 1,
        }
    }
}

impl fmt::Display for Benchmark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.family {
            Family::Cyclic => "cyclic",
            Family::Katsura => "katsura",
        };
        write!(f, "{name}:{}", self.k)
    }
}

impl FromStr for Benchmark {
    type Err = Error;

    /// Accepts `cyclic:k`, `katsura:k` and the `-` separated forms.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidConfig(format!("unknown benchmark '{s}', expected cyclic:k or katsura:k"));
        let (name, k) = s.split_once([':', '-']).ok_or_else(bad)?;
        let k: usize = k.trim().parse().map_err(|_| bad())?;
        match name.trim().to_ascii_lowercase().as_str() {
            "cyclic" => Ok(Benchmark::cyclic(k)),
            "katsura" => Ok(Benchmark::katsura(k)),
            _ => Err(bad()),
        }
    }
}

/// The benchmark system over `x1 .. xn` in the given order.
pub fn gen_benchmark(bench: Benchmark, order: MonomialOrder) -> Result<ProblemFile> {
    if bench.k < 2 {
        return Err(Error::OutOfRange(format!("{bench}: k must be at least 2")));
    }
    let polys = match bench.family {
        Family::Cyclic => cyclic(bench.k, order)?,
        Family::Katsura => katsura(bench.k, order)?,
    };
    Ok(ProblemFile {
        vars: default_vars(bench.nvars()),
        order,
        division: None,
        polys,
    })
}

fn cyclic(k: usize, order: MonomialOrder) -> Result<Vec<Polynomial>> {
    let mut out = Vec::with_capacity(k);
    for len in 1..k {
        let terms = (0..k).map(|start| {
            let mut e = vec![0u32; k];
            for l in 0..len {
                e[(start + l) % k] += 1;
            }
            (BigInt::from(1), Monomial::new(e))
        });
        out.push(Polynomial::from_terms(k, order, terms)?.primitive());
    }
    let last = [
        (BigInt::from(1), Monomial::new(vec![1u32; k])),
        (BigInt::from(-1), Monomial::one(k)),
    ];
    out.push(Polynomial::from_terms(k, order, last)?);
    Ok(out)
}

/// Variables `u0 .. uk` with `u_i = u_{-i}` and `u_i = 0` for `i > k`.
fn katsura(k: usize, order: MonomialOrder) -> Result<Vec<Polynomial>> {
    let n = k + 1;
    let mut out = Vec::with_capacity(n);
    let mut linear: Vec<(BigInt, Monomial)> = (0..n)
        .map(|i| (BigInt::from(if i == 0 { 1 } else { 2 }), Monomial::var(n, i)))
        .collect();
    linear.push((BigInt::from(-1), Monomial::one(n)));
    out.push(Polynomial::from_terms(n, order, linear)?);
    for m in 0..k as i64 {
        let mut terms = Vec::new();
        for l in -(k as i64)..=k as i64 {
            let (a, b) = (l.unsigned_abs() as usize, (m - l).unsigned_abs() as usize);
            if a < n && b < n {
                terms.push((BigInt::from(1), Monomial::var(n, a).mul(&Monomial::var(n, b))));
            }
        }
        terms.push((BigInt::from(-1), Monomial::var(n, m as usize)));
        out.push(Polynomial::from_terms(n, order, terms)?.primitive());
    }
    Ok(out)
}
