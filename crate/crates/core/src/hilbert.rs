//! Affine Hilbert function and Hilbert polynomial of an ideal read off the
//! leading monomials of an involutive basis, plus a counting oracle.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::division::{compute_separation, Division};
use crate::error::{Error, Result};
use crate::monomial_completion::monomials_of_degree;
use crate::poly::Monomial;

/// Enumeration cap for [`hf_bruteforce`].
pub const BRUTEFORCE_BUDGET: u128 = 10_000_000;

/// Leading monomials of an involutive basis with their numbers of
/// multiplicative variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertInput {
    pub nvars: usize,
    pub entries: Vec<(Monomial, u32)>,
}

impl HilbertInput {
    pub fn new(nvars: usize, entries: Vec<(Monomial, u32)>) -> Result<Self> {
        for (u, mu) in &entries {
            if u.nvars() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    found: u.nvars(),
                });
            }
            if *mu as usize > nvars {
                return Err(Error::OutOfRange(format!("{mu} multiplicative variables for {u}")));
            }
        }
        Ok(HilbertInput { nvars, entries })
    }

    pub fn from_leading_monomials(nvars: usize, lms: &[Monomial], division: Division) -> Result<Self> {
        if lms.is_empty() {
            return Ok(HilbertInput {
                nvars,
                entries: Vec::new(),
            });
        }
        let sep = compute_separation(division, lms)?;
        let entries = lms
            .iter()
            .enumerate()
            .map(|(i, u)| (u.clone(), sep.multiplicative(i).len() as u32))
            .collect();
        HilbertInput::new(nvars, entries)
    }

    /// Smallest `s0 >= 0` with `HP(s) == HF(s)` for every `s >= s0`.
    pub fn stabilization_degree(&self) -> u64 {
        self.entries
            .iter()
            .map(|(u, mu)| (u.degree() as i64 - *mu as i64).max(0) as u64)
            .max()
            .unwrap_or(0)
    }
}

/// `C(a, b)` with `C(a, b) = 0` for `a < 0` or `a < b`.
fn binomial(a: i64, b: i64) -> BigInt {
    if b < 0 || a < 0 || a < b {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for k in 0..b {
        acc = acc * BigInt::from(a - k) / BigInt::from(k + 1);
    }
    acc
}

/// `a (a-1) ... (a-b+1) / b!`, defined for every integer `a`.
fn binomial_poly(a: i64, b: u32) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for k in 0..b as i64 {
        num *= BigInt::from(a - k);
        den *= BigInt::from(k + 1);
    }
    num / den
}

fn check_s(s: i64) -> Result<()> {
    if s < 0 {
        return Err(Error::OutOfRange(format!("negative argument {s}")));
    }
    Ok(())
}

/// Number of monomials of degree at most `s` in the involutive cone of
/// exactly degree `i` contributed by `(u, mu)`.
fn cone_slice(i: i64, u: &Monomial, mu: u32) -> BigInt {
    let d = u.degree() as i64;
    if mu == 0 {
        return if i == d { BigInt::one() } else { BigInt::zero() };
    }
    binomial(i - d + mu as i64 - 1, mu as i64 - 1)
}

pub fn hf_eval(input: &HilbertInput, s: i64) -> Result<BigInt> {
    check_s(s)?;
    let n = input.nvars as i64;
    let mut total = binomial(n + s, s);
    for i in 0..=s {
        for (u, mu) in &input.entries {
            total -= cone_slice(i, u, *mu);
        }
    }
    Ok(total)
}

pub fn hp_eval(input: &HilbertInput, s: i64) -> Result<BigInt> {
    check_s(s)?;
    let n = input.nvars as i64;
    let mut total = binomial(n + s, s);
    for (u, mu) in &input.entries {
        total -= binomial_poly(s - u.degree() as i64 + *mu as i64, *mu);
    }
    Ok(total)
}

/// Counts monomials of degree at most `s` outside the cone of `lms`.
pub fn hf_bruteforce(lms: &[Monomial], nvars: usize, s: i64) -> Result<BigInt> {
    check_s(s)?;
    if let Some(bad) = lms.iter().find(|u| u.nvars() != nvars) {
        return Err(Error::ArityMismatch {
            expected: nvars,
            found: bad.nvars(),
        });
    }
    let required = binomial(nvars as i64 + s, s);
    let required: u128 = required.try_into().unwrap_or(u128::MAX);
    if required > BRUTEFORCE_BUDGET {
        return Err(Error::EnumerationBudget {
            required,
            budget: BRUTEFORCE_BUDGET,
        });
    }
    let mut count = 0u64;
    for d in 0..=s as u32 {
        for w in monomials_of_degree(nvars, d) {
            if !lms.iter().any(|u| u.divides(&w)) {
                count += 1;
            }
        }
    }
    Ok(BigInt::from(count))
}

/// `(s, HF(s), HP(s))` for `s = 0..=smax`.
pub fn hilbert_table(input: &HilbertInput, smax: u32) -> Result<Vec<(u32, BigInt, BigInt)>> {
    (0..=smax)
        .map(|s| Ok((s, hf_eval(input, s as i64)?, hp_eval(input, s as i64)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn zero_ideal_counts_all_monomials() {
        let input = HilbertInput::new(3, Vec::new()).unwrap();
        for s in 0..6 {
            assert_eq!(hf_eval(&input, s).unwrap(), binomial(3 + s, s));
            assert_eq!(hp_eval(&input, s).unwrap(), binomial(3 + s, s));
        }
        assert_eq!(hf_bruteforce(&[], 2, 2).unwrap(), BigInt::from(6));
    }

    #[test]
    fn principal_ideal_in_one_variable() {
        let input = HilbertInput::new(1, vec![(m(&[1]), 1)]).unwrap();
        for s in 0..8 {
            assert_eq!(hf_eval(&input, s).unwrap(), BigInt::one());
            assert_eq!(hp_eval(&input, s).unwrap(), BigInt::one());
        }
        assert_eq!(hf_bruteforce(&[m(&[1])], 1, 5).unwrap(), BigInt::one());
    }

    #[test]
    fn bruteforce_fixed_value() {
        // survivors: 1, x, y, y^2, y^3
        assert_eq!(hf_bruteforce(&[m(&[2, 0]), m(&[1, 1])], 2, 3).unwrap(), BigInt::from(5));
    }

    #[test]
    fn formula_matches_bruteforce_on_janet_complete_set() {
        // Janet completion of {x^2, xy}: x^2 (all), xy (y)
        let lms = [m(&[2, 0]), m(&[1, 1])];
        let input = HilbertInput::from_leading_monomials(2, &lms, Division::Janet).unwrap();
        for s in 0..10 {
            assert_eq!(hf_eval(&input, s).unwrap(), hf_bruteforce(&lms, 2, s).unwrap());
        }
        let s0 = input.stabilization_degree() as i64;
        for s in s0..s0 + 10 {
            assert_eq!(hp_eval(&input, s).unwrap(), hf_eval(&input, s).unwrap());
        }
    }

    #[test]
    fn degenerate_cones_count_once() {
        // {x, y} in two variables under Janet: x has mu 2, y has mu 1
        let lms = [m(&[1, 0]), m(&[0, 1])];
        let input = HilbertInput::from_leading_monomials(2, &lms, Division::Janet).unwrap();
        for s in 0..6 {
            assert_eq!(hf_eval(&input, s).unwrap(), BigInt::one());
        }
        let single = HilbertInput::new(2, vec![(m(&[1, 1]), 0)]).unwrap();
        assert_eq!(
            hf_eval(&single, 3).unwrap(),
            binomial(5, 3) - BigInt::one()
        );
    }

    #[test]
    fn errors() {
        let input = HilbertInput::new(2, Vec::new()).unwrap();
        assert!(matches!(hf_eval(&input, -1), Err(Error::OutOfRange(_))));
        assert!(matches!(hf_bruteforce(&[], 12, 40), Err(Error::EnumerationBudget { .. })));
        assert!(HilbertInput::new(1, vec![(m(&[1]), 2)]).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(-1, 0), BigInt::zero());
        assert_eq!(binomial(2, 3), BigInt::zero());
        assert_eq!(binomial_poly(-2, 2), BigInt::from(3));
        assert_eq!(binomial_poly(-1, 0), BigInt::one());
    }
}
