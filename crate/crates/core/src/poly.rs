//! Monomials, admissible monomial orders and polynomials with primitive
//! integer coefficients.
//!
//! A polynomial over Q is stored as its primitive integer representative:
//! the gcd of the coefficients is one and the leading coefficient is
//! positive. Every reduction is carried out fraction-free and the content is
//! stripped afterwards, so two polynomials spanning the same line over Q have
//! identical representations.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Exponent = u32;

/// Largest number of variables a [`VarSet`] can hold.
pub const MAX_VARS: usize = 64;

/// A power product `x1^e1 * ... * xn^en` stored as a dense exponent vector.
///
/// The derived `Ord` compares exponent vectors lexicographically and is only
/// meant for keyed containers. Term orders go through [`MonomialOrder`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: SmallVec<[Exponent; 8]>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: impl Into<Vec<Exponent>>) -> Self {
        let exps: Vec<Exponent> = exps.into();
        let degree = exps.iter().sum();
        Monomial {
            exps: SmallVec::from_vec(exps),
            degree,
        }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    /// The variable `x_{index+1}`.
    pub fn var(nvars: usize, index: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[index] = 1;
        m.degree = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[Exponent] {
        &self.exps
    }

    pub fn exp(&self, index: usize) -> Exponent {
        self.exps[index]
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    fn check_arity(&self, other: &Monomial) -> Result<()> {
        if self.nvars() == other.nvars() {
            Ok(())
        } else {
            Err(Error::ArityMismatch {
                expected: self.nvars(),
                found: other.nvars(),
            })
        }
    }

    /// Product of two monomials. Panics if the arities differ.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.nvars(), other.nvars(), "monomial arity mismatch");
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn mul_var(&self, index: usize) -> Monomial {
        let mut m = self.clone();
        m.exps[index] += 1;
        m.degree += 1;
        m
    }

    /// `self | other` in the conventional sense.
    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.nvars(), other.nvars());
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self` divides `other` and has strictly smaller degree.
    pub fn properly_divides(&self, other: &Monomial) -> bool {
        self.degree < other.degree && self.divides(other)
    }

    /// `self / divisor` when the division is exact.
    pub fn try_div(&self, divisor: &Monomial) -> Option<Monomial> {
        if !divisor.divides(self) {
            return None;
        }
        Some(Monomial {
            exps: self.exps.iter().zip(&divisor.exps).map(|(a, b)| a - b).collect(),
            degree: self.degree - divisor.degree,
        })
    }

    pub fn checked_div(&self, divisor: &Monomial) -> Result<Option<Monomial>> {
        self.check_arity(divisor)?;
        Ok(self.try_div(divisor))
    }

    /// Componentwise maximum. Panics if the arities differ.
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.nvars(), other.nvars(), "monomial arity mismatch");
        let exps: SmallVec<[Exponent; 8]> =
            self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn checked_lcm(&self, other: &Monomial) -> Result<Monomial> {
        self.check_arity(other)?;
        Ok(self.lcm(other))
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Renders the monomial with the given variable names (`1` for the unit).
    pub fn display<'a>(&'a self, vars: &'a [String]) -> MonomialDisplay<'a> {
        MonomialDisplay { mono: self, vars }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    vars: &'a [String],
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.mono.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.vars[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A set of variables stored as a bitmask over variable indices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarSet(u64);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    pub fn all(nvars: usize) -> VarSet {
        assert!(nvars <= MAX_VARS);
        if nvars == MAX_VARS {
            VarSet(u64::MAX)
        } else {
            VarSet((1u64 << nvars) - 1)
        }
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> VarSet {
        let mut s = VarSet::EMPTY;
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub fn contains(self, index: usize) -> bool {
        self.0 & (1u64 << index) != 0
    }

    pub fn insert(&mut self, index: usize) {
        self.0 |= 1u64 << index;
    }

    pub fn remove(&mut self, index: usize) {
        self.0 &= !(1u64 << index);
    }

    pub fn union(self, other: VarSet) -> VarSet {
        VarSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VarSet) -> VarSet {
        VarSet(self.0 & other.0)
    }

    pub fn difference(self, other: VarSet) -> VarSet {
        VarSet(self.0 & !other.0)
    }

    /// Complement within the first `nvars` variables.
    pub fn complement(self, nvars: usize) -> VarSet {
        VarSet::all(nvars).difference(self)
    }

    pub fn is_subset(self, other: VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..MAX_VARS).filter(move |i| bits & (1u64 << i) != 0)
    }

    pub fn bits(self) -> u64 {
        self.0
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|i| i + 1)).finish()
    }
}

/// Admissible monomial orders with `x1 > x2 > ... > xn`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    DegLex,
    DegRevLex,
}

impl MonomialOrder {
    pub fn name(self) -> &'static str {
        match self {
            MonomialOrder::Lex => "lex",
            MonomialOrder::DegLex => "deglex",
            MonomialOrder::DegRevLex => "degrevlex",
        }
    }

    pub fn from_name(name: &str) -> Option<MonomialOrder> {
        match name.to_ascii_lowercase().as_str() {
            "lex" | "plex" => Some(MonomialOrder::Lex),
            "deglex" | "grlex" => Some(MonomialOrder::DegLex),
            "degrevlex" | "grevlex" | "drl" => Some(MonomialOrder::DegRevLex),
            _ => None,
        }
    }

    /// Compares two monomials of equal arity.
    #[inline]
    pub fn cmp(self, u: &Monomial, v: &Monomial) -> Ordering {
        debug_assert_eq!(u.nvars(), v.nvars());
        match self {
            MonomialOrder::Lex => u.exps.cmp(&v.exps),
            MonomialOrder::DegLex => u.degree.cmp(&v.degree).then_with(|| u.exps.cmp(&v.exps)),
            MonomialOrder::DegRevLex => u.degree.cmp(&v.degree).then_with(|| {
                for (a, b) in u.exps.iter().zip(&v.exps).rev() {
                    if a != b {
                        // smaller exponent in the last differing variable wins
                        return b.cmp(a);
                    }
                }
                Ordering::Equal
            }),
        }
    }

    pub fn compare(self, u: &Monomial, v: &Monomial) -> Result<Ordering> {
        u.check_arity(v)?;
        Ok(self.cmp(u, v))
    }

    /// Degree-compatible orders never let a reduction raise the total degree.
    pub fn is_degree_compatible(self) -> bool {
        !matches!(self, MonomialOrder::Lex)
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: BigInt,
    pub mono: Monomial,
}

/// A polynomial whose terms are sorted strictly descending under `order`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    order: MonomialOrder,
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero(nvars: usize, order: MonomialOrder) -> Self {
        Polynomial {
            nvars,
            order,
            terms: Vec::new(),
        }
    }

    /// Builds a polynomial from unsorted terms, combining like monomials and
    /// dropping zeros. The result is not made primitive.
    pub fn from_terms(
        nvars: usize,
        order: MonomialOrder,
        terms: impl IntoIterator<Item = (BigInt, Monomial)>,
    ) -> Result<Self> {
        let mut raw: Vec<Term> = Vec::new();
        for (coeff, mono) in terms {
            if mono.nvars() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    found: mono.nvars(),
                });
            }
            raw.push(Term { coeff, mono });
        }
        raw.sort_by(|a, b| order.cmp(&b.mono, &a.mono));
        let mut terms: Vec<Term> = Vec::with_capacity(raw.len());
        for t in raw {
            match terms.last_mut() {
                Some(last) if last.mono == t.mono => last.coeff += t.coeff,
                _ => terms.push(t),
            }
        }
        terms.retain(|t| !t.coeff.is_zero());
        Ok(Polynomial {
            nvars,
            order,
            terms,
        })
    }

    /// Convenience constructor from `(coefficient, exponents)` pairs,
    /// returned in primitive form.
    pub fn from_exps(order: MonomialOrder, terms: &[(i64, &[Exponent])]) -> Self {
        let nvars = terms.first().map_or(0, |t| t.1.len());
        Polynomial::from_terms(
            nvars,
            order,
            terms
                .iter()
                .map(|(c, e)| (BigInt::from(*c), Monomial::new(e.to_vec()))),
        )
        .expect("uniform arity")
        .primitive()
    }

    pub fn monomial(order: MonomialOrder, mono: Monomial) -> Self {
        Polynomial {
            nvars: mono.nvars(),
            order,
            terms: vec![Term {
                coeff: BigInt::one(),
                mono,
            }],
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading monomial. Panics on the zero polynomial.
    pub fn lm(&self) -> &Monomial {
        &self.terms[0].mono
    }

    pub fn lc(&self) -> &BigInt {
        &self.terms[0].coeff
    }

    pub fn lt(&self) -> &Term {
        &self.terms[0]
    }

    /// Largest total degree among the terms.
    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.mono.degree()).max().unwrap_or(0)
    }

    /// Position of the term carrying `mono`, if present.
    pub fn position(&self, mono: &Monomial) -> Option<usize> {
        let order = self.order;
        self.terms
            .binary_search_by(|t| order.cmp(mono, &t.mono))
            .ok()
    }

    pub fn coeff_of(&self, mono: &Monomial) -> Option<&BigInt> {
        self.position(mono).map(|i| &self.terms[i].coeff)
    }

    /// Re-sorts the terms under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Polynomial {
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp(&b.mono, &a.mono));
        let mut p = Polynomial {
            nvars: self.nvars,
            order,
            terms,
        };
        if p.lc().is_negative() {
            p = p.neg();
        }
        p
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: -&t.coeff,
                    mono: t.mono.clone(),
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars, self.order);
        }
        Polynomial {
            nvars: self.nvars,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: &t.coeff * c,
                    mono: t.mono.clone(),
                })
                .collect(),
        }
    }

    /// Multiplication by a monomial preserves the term order.
    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff.clone(),
                    mono: t.mono.mul(m),
                })
                .collect(),
        }
    }

    pub fn mul_var(&self, index: usize) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff.clone(),
                    mono: t.mono.mul_var(index),
                })
                .collect(),
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.combine(other, true)
    }

    fn combine(&self, other: &Polynomial, negate: bool) -> Polynomial {
        assert_eq!(self.order, other.order, "polynomials under different orders");
        let order = self.order;
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        let sign = |c: &BigInt| if negate { -c } else { c.clone() };
        while i < self.len() && j < other.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match order.cmp(&a.mono, &b.mono) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term {
                        coeff: sign(&b.coeff),
                        mono: b.mono.clone(),
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &a.coeff - &b.coeff
                    } else {
                        &a.coeff + &b.coeff
                    };
                    if !c.is_zero() {
                        out.push(Term {
                            coeff: c,
                            mono: a.mono.clone(),
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|b| Term {
            coeff: sign(&b.coeff),
            mono: b.mono.clone(),
        }));
        Polynomial {
            nvars: self.nvars,
            order,
            terms: out,
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero(self.nvars, self.order);
        for t in &other.terms {
            acc = acc.add(&self.mul_monomial(&t.mono).scale(&t.coeff));
        }
        acc
    }

    /// Gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for t in &self.terms {
            g = g.gcd(&t.coeff);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive representative: content one, positive leading coefficient.
    pub fn primitive(mut self) -> Polynomial {
        if self.terms.is_empty() {
            return self;
        }
        let g = self.content();
        let negative = self.terms[0].coeff.is_negative();
        if !g.is_one() {
            for t in &mut self.terms {
                t.coeff /= &g;
            }
        }
        if negative {
            for t in &mut self.terms {
                t.coeff = -std::mem::take(&mut t.coeff);
            }
        }
        self
    }

    pub fn is_primitive(&self) -> bool {
        self.is_zero() || (self.lc().is_positive() && self.content().is_one())
    }

    /// Bit length of the largest coefficient.
    pub fn max_coeff_bits(&self) -> u64 {
        self.terms.iter().map(|t| t.coeff.bits()).max().unwrap_or(0)
    }

    /// `a*self - b*m*g` with `m*lm(g)` equal to the monomial at `pos`, where
    /// `a = lc(g)/d`, `b = c/d`, `d = gcd(lc(g), c)` and `c` the coefficient at
    /// `pos`. The eliminated term vanishes; the result is primitive.
    pub(crate) fn reduce_at(&self, pos: usize, g: &Polynomial, m: &Monomial) -> Polynomial {
        let order = self.order;
        let c = &self.terms[pos].coeff;
        let d = g.lc().gcd(c);
        let a = g.lc() / &d;
        let b = c / &d;
        let scale_self = !a.is_one();
        let scaled = |t: &Term| Term {
            coeff: if scale_self { &t.coeff * &a } else { t.coeff.clone() },
            mono: t.mono.clone(),
        };

        let mut out = Vec::with_capacity(self.len() + g.len());
        out.extend(self.terms[..pos].iter().map(scaled));
        let rest = &self.terms[pos + 1..];
        let gt = &g.terms[1..];
        let (mut i, mut j) = (0, 0);
        let mut shifted = gt.first().map(|t| t.mono.mul(m));
        while i < rest.len() {
            let Some(sm) = shifted.as_ref() else { break };
            match order.cmp(&rest[i].mono, sm) {
                Ordering::Greater => {
                    out.push(scaled(&rest[i]));
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term {
                        coeff: -(&b * &gt[j].coeff),
                        mono: shifted.take().unwrap(),
                    });
                    j += 1;
                    shifted = gt.get(j).map(|t| t.mono.mul(m));
                }
                Ordering::Equal => {
                    let lhs = if scale_self {
                        &rest[i].coeff * &a
                    } else {
                        rest[i].coeff.clone()
                    };
                    let coeff = lhs - &b * &gt[j].coeff;
                    if !coeff.is_zero() {
                        out.push(Term {
                            coeff,
                            mono: shifted.take().unwrap(),
                        });
                    }
                    i += 1;
                    j += 1;
                    shifted = gt.get(j).map(|t| t.mono.mul(m));
                }
            }
        }
        out.extend(rest[i..].iter().map(scaled));
        if let Some(sm) = shifted {
            out.push(Term {
                coeff: -(&b * &gt[j].coeff),
                mono: sm,
            });
            out.extend(gt[j + 1..].iter().map(|t| Term {
                coeff: -(&b * &t.coeff),
                mono: t.mono.mul(m),
            }));
        }
        Polynomial {
            nvars: self.nvars,
            order,
            terms: out,
        }
        .primitive()
    }

    /// Renders with the given variable names.
    pub fn display<'a>(&'a self, vars: &'a [String]) -> PolynomialDisplay<'a> {
        PolynomialDisplay { poly: self, vars }
    }
}

/// Primitive representative of `p`.
pub fn normalize_primitive(p: &Polynomial) -> Polynomial {
    p.clone().primitive()
}

/// One elementary reduction `h - g * t/lt(g)` at the term of `h` with monomial
/// `t`, computed fraction-free and returned in primitive form.
pub fn reduce_step(h: &Polynomial, t: &Monomial, g: &Polynomial) -> Result<Polynomial> {
    if g.is_zero() {
        return Err(Error::Precondition("reductor is zero".into()));
    }
    if h.nvars() != g.nvars() || t.nvars() != h.nvars() {
        return Err(Error::ArityMismatch {
            expected: h.nvars(),
            found: g.nvars().max(t.nvars()),
        });
    }
    let pos = h
        .position(t)
        .ok_or_else(|| Error::Precondition(format!("{t} is not a term of the polynomial")))?;
    let m = t.try_div(g.lm()).ok_or_else(|| Error::NotDivisible {
        divisor: g.lm().to_string(),
        target: t.to_string(),
    })?;
    Ok(h.reduce_at(pos, g, &m))
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Uses the default variable names `x1 .. xn`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.display(&names))
    }
}

pub struct PolynomialDisplay<'a> {
    poly: &'a Polynomial,
    vars: &'a [String],
}

impl fmt::Display for PolynomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, t) in self.poly.terms.iter().enumerate() {
            let negative = t.coeff.is_negative();
            let abs = t.coeff.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if t.mono.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", t.mono.display(self.vars))?;
            } else {
                write!(f, "{abs}*{}", t.mono.display(self.vars))?;
            }
        }
        Ok(())
    }
}
