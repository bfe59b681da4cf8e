//! Conventional and involutive normal forms.
//!
//! All reductions are fraction-free over the integers: every elementary step
//! rescales the current polynomial and strips its content, so results are
//! primitive representatives of the rational normal form.

use crate::division::{compute_separation, scan_with, Division, Separation};
use crate::error::{Error, Result};
use crate::janet_tree::JanetTree;
use crate::poly::{Monomial, MonomialOrder, Polynomial};

/// Counters collected during a single normal-form computation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: u64,
    pub max_coeff_bits: u64,
    /// `usage[j]` counts the elementary steps that used reductor `j`.
    pub usage: Vec<u64>,
}

impl ReductionTrace {
    pub(crate) fn record(&mut self, reductor: usize, result: &Polynomial) {
        self.steps += 1;
        self.max_coeff_bits = self.max_coeff_bits.max(result.max_coeff_bits());
        if self.usage.len() <= reductor {
            self.usage.resize(reductor + 1, 0);
        }
        self.usage[reductor] += 1;
    }

    pub(crate) fn observe(&mut self, p: &Polynomial) {
        self.max_coeff_bits = self.max_coeff_bits.max(p.max_coeff_bits());
    }

    pub fn merge(&mut self, other: &ReductionTrace) {
        self.steps += other.steps;
        self.max_coeff_bits = self.max_coeff_bits.max(other.max_coeff_bits);
        if self.usage.len() < other.usage.len() {
            self.usage.resize(other.usage.len(), 0);
        }
        for (a, b) in self.usage.iter_mut().zip(&other.usage) {
            *a += b;
        }
    }
}

/// Decimal digits needed for a coefficient of `bits` bits.
pub fn bits_to_decimal_digits(bits: u64) -> u64 {
    if bits == 0 {
        return 0;
    }
    ((bits as f64) * std::f64::consts::LOG10_2).floor() as u64 + 1
}

/// 64-bit words needed for a coefficient of `bits` bits.
pub fn bits_to_words(bits: u64) -> u64 {
    bits.div_ceil(64)
}

/// A source of reductors: given a monomial, the reductor whose leading
/// monomial divides it in the relevant sense, with its identifier.
pub trait Reductors {
    fn find_reductor(&self, w: &Monomial) -> Result<Option<(usize, &Polynomial)>>;
}

/// Conventional division; the lowest-index divisor wins.
pub struct ConventionalSet<'a> {
    polys: &'a [Polynomial],
}

impl<'a> ConventionalSet<'a> {
    pub fn new(polys: &'a [Polynomial]) -> Self {
        ConventionalSet { polys }
    }
}

impl Reductors for ConventionalSet<'_> {
    fn find_reductor(&self, w: &Monomial) -> Result<Option<(usize, &Polynomial)>> {
        Ok(self
            .polys
            .iter()
            .enumerate()
            .find(|(_, g)| !g.is_zero() && g.lm().divides(w)))
    }
}

/// A fixed involutively autoreduced set with its separation. Janet lookups
/// go through a Janet tree; the other divisions scan.
pub struct InvolutiveSet {
    polys: Vec<Polynomial>,
    lms: Vec<Monomial>,
    sep: Separation,
    tree: Option<JanetTree<usize>>,
}

impl InvolutiveSet {
    pub fn new(division: Division, polys: Vec<Polynomial>) -> Result<Self> {
        if polys.iter().any(Polynomial::is_zero) {
            return Err(Error::Precondition("zero polynomial in reductor set".into()));
        }
        let lms: Vec<Monomial> = polys.iter().map(|p| p.lm().clone()).collect();
        let sep = compute_separation(division, &lms)?;
        let tree = if division == Division::Janet {
            let mut t = JanetTree::new(lms[0].nvars());
            for (i, u) in lms.iter().enumerate() {
                t.insert(u.clone(), i)?;
            }
            Some(t)
        } else {
            for (i, u) in lms.iter().enumerate() {
                if lms[..i].contains(u) {
                    return Err(Error::DuplicateMonomial(u.to_string()));
                }
            }
            None
        };
        Ok(InvolutiveSet {
            polys,
            lms,
            sep,
            tree,
        })
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn separation(&self) -> &Separation {
        &self.sep
    }
}

impl Reductors for InvolutiveSet {
    fn find_reductor(&self, w: &Monomial) -> Result<Option<(usize, &Polynomial)>> {
        let idx = match &self.tree {
            Some(t) => t.find_divisor(w)?.map(|(_, &k)| k),
            None => scan_with(&self.sep, &self.lms, w)?,
        };
        Ok(idx.map(|i| (i, &self.polys[i])))
    }
}

fn check_compatible(p: &Polynomial, g: &Polynomial) -> Result<()> {
    if p.nvars() != g.nvars() {
        return Err(Error::ArityMismatch {
            expected: p.nvars(),
            found: g.nvars(),
        });
    }
    Ok(())
}

/// Reduces every term from position `start` on, the highest reducible term
/// first. Terms before `start` are left in place.
pub fn reduce_from<R: Reductors + ?Sized>(
    p: &Polynomial,
    start: usize,
    reductors: &R,
    trace: &mut ReductionTrace,
) -> Result<Polynomial> {
    let mut h = p.clone();
    let mut pos = start;
    trace.observe(&h);
    while pos < h.len() {
        let t = &h.terms()[pos].mono;
        match reductors.find_reductor(t)? {
            Some((j, g)) => {
                check_compatible(&h, g)?;
                let m = t.try_div(g.lm()).ok_or_else(|| Error::NotDivisible {
                    divisor: g.lm().to_string(),
                    target: t.to_string(),
                })?;
                h = h.reduce_at(pos, g, &m);
                trace.record(j, &h);
            }
            None => pos += 1,
        }
    }
    Ok(h)
}

/// Reduces the leading term until it is irreducible or the polynomial is zero.
pub fn reduce_head<R: Reductors + ?Sized>(
    p: &Polynomial,
    reductors: &R,
    trace: &mut ReductionTrace,
) -> Result<Polynomial> {
    let mut h = p.clone();
    trace.observe(&h);
    while !h.is_zero() {
        let Some((j, g)) = reductors.find_reductor(h.lm())? else {
            break;
        };
        check_compatible(&h, g)?;
        let m = h.lm().try_div(g.lm()).ok_or_else(|| Error::NotDivisible {
            divisor: g.lm().to_string(),
            target: h.lm().to_string(),
        })?;
        h = h.reduce_at(0, g, &m);
        trace.record(j, &h);
    }
    Ok(h)
}

/// Reduces all terms but the leading one, which must already be irreducible.
pub fn reduce_tail<R: Reductors + ?Sized>(
    p: &Polynomial,
    reductors: &R,
    trace: &mut ReductionTrace,
) -> Result<Polynomial> {
    if p.is_zero() {
        return Ok(p.clone());
    }
    if reductors.find_reductor(p.lm())?.is_some() {
        return Err(Error::Precondition(format!(
            "leading monomial {} is reducible",
            p.lm()
        )));
    }
    reduce_from(p, 1, reductors, trace)
}

fn in_order(p: &Polynomial, order: MonomialOrder) -> Polynomial {
    if p.order() == order {
        p.clone()
    } else {
        p.with_order(order)
    }
}

/// Full conventional normal form of `h` modulo `f`.
pub fn conv_normal_form(h: &Polynomial, f: &[Polynomial], order: MonomialOrder) -> Result<Polynomial> {
    conv_normal_form_traced(h, f, order).map(|(p, _)| p)
}

pub fn conv_normal_form_traced(
    h: &Polynomial,
    f: &[Polynomial],
    order: MonomialOrder,
) -> Result<(Polynomial, ReductionTrace)> {
    let f: Vec<Polynomial> = f
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| in_order(g, order))
        .collect();
    let mut trace = ReductionTrace::default();
    let nf = reduce_from(&in_order(h, order).primitive(), 0, &ConventionalSet::new(&f), &mut trace)?;
    Ok((nf, trace))
}

/// Full involutive normal form of `p` modulo an involutively autoreduced `g`.
pub fn inv_normal_form(
    p: &Polynomial,
    g: &[Polynomial],
    order: MonomialOrder,
    division: Division,
) -> Result<Polynomial> {
    inv_normal_form_traced(p, g, order, division).map(|(h, _)| h)
}

pub fn inv_normal_form_traced(
    p: &Polynomial,
    g: &[Polynomial],
    order: MonomialOrder,
    division: Division,
) -> Result<(Polynomial, ReductionTrace)> {
    let p = in_order(p, order).primitive();
    let mut trace = ReductionTrace::default();
    if g.is_empty() {
        return Ok((p, trace));
    }
    let set = InvolutiveSet::new(division, g.iter().map(|q| in_order(q, order)).collect())?;
    let nf = reduce_from(&p, 0, &set, &mut trace)?;
    Ok((nf, trace))
}

/// Involutive normal form of a head-irreducible `p`; the leading term is kept.
pub fn tail_normal_form(
    p: &Polynomial,
    g: &[Polynomial],
    order: MonomialOrder,
    division: Division,
) -> Result<Polynomial> {
    let p = in_order(p, order).primitive();
    if g.is_empty() {
        return Ok(p);
    }
    let set = InvolutiveSet::new(division, g.iter().map(|q| in_order(q, order)).collect())?;
    reduce_tail(&p, &set, &mut ReductionTrace::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use MonomialOrder::Lex;

    fn poly(terms: &[(i64, &[u32])]) -> Polynomial {
        Polynomial::from_exps(Lex, terms)
    }

    #[test]
    fn conventional_examples() {
        let h = poly(&[(1, &[2, 1]), (-1, &[0, 0])]);
        let f = [poly(&[(1, &[1, 0]), (-1, &[0, 1])]), poly(&[(1, &[0, 3]), (-1, &[0, 0])])];
        assert!(conv_normal_form(&h, &f, Lex).unwrap().is_zero());
        assert_eq!(conv_normal_form(&h, &[], Lex).unwrap(), h);
        let xy = poly(&[(1, &[1, 0]), (-1, &[0, 1])]);
        assert_eq!(conv_normal_form(&xy, &[h.clone()], Lex).unwrap(), xy);
    }

    #[test]
    fn involutive_examples() {
        let f1 = poly(&[(1, &[2, 1]), (-1, &[0, 0])]);
        let f2 = poly(&[(1, &[1, 2]), (-1, &[0, 0])]);
        let p = poly(&[(1, &[2, 2]), (-1, &[1, 0])]);
        let nf = inv_normal_form(&p, &[f1.clone(), f2.clone()], Lex, Division::Janet).unwrap();
        assert_eq!(nf, poly(&[(1, &[1, 0]), (-1, &[0, 1])]));
        assert_eq!(inv_normal_form(&f1, &[f2.clone()], Lex, Division::Janet).unwrap(), f1);
        // x is multiplicative for the only element
        let px = f1.mul_var(0);
        assert!(inv_normal_form(&px, &[f1.clone()], Lex, Division::Janet).unwrap().is_zero());
    }

    #[test]
    fn tail_rewrite_keeps_head() {
        let g = [poly(&[(1, &[2, 0])]), poly(&[(1, &[0, 1]), (-1, &[0, 0])])];
        // x is non-multiplicative for y - 1, so the head x y stays
        let p = poly(&[(1, &[1, 1]), (-1, &[0, 1])]);
        let r = tail_normal_form(&p, &g, Lex, Division::Janet).unwrap();
        assert_eq!(r, poly(&[(1, &[1, 1]), (-1, &[0, 0])]));
        let q = poly(&[(1, &[1, 0]), (-1, &[0, 1])]);
        let g3 = [poly(&[(1, &[0, 3]), (-1, &[0, 0])])];
        assert_eq!(tail_normal_form(&q, &g3, Lex, Division::Janet).unwrap(), q);
        let bad = poly(&[(1, &[0, 4]), (1, &[0, 0])]);
        assert!(matches!(
            tail_normal_form(&bad, &g3, Lex, Division::Janet),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn trace_counts_steps() {
        let f = [poly(&[(1, &[1, 0]), (-1, &[0, 1])]), poly(&[(1, &[0, 3]), (-1, &[0, 0])])];
        let h = poly(&[(1, &[2, 1]), (-1, &[0, 0])]);
        let (_, tr) = conv_normal_form_traced(&h, &f, Lex).unwrap();
        assert!(tr.steps >= 2);
        assert_eq!(tr.usage.iter().sum::<u64>(), tr.steps);
        assert!(tr.usage[0] >= 1 && tr.usage[1] >= 1);
    }

    #[test]
    fn size_units() {
        assert_eq!(bits_to_words(0), 0);
        assert_eq!(bits_to_words(64), 1);
        assert_eq!(bits_to_words(65), 2);
        assert_eq!(bits_to_decimal_digits(4), 2);
        assert_eq!(bits_to_decimal_digits(10), 4);
    }

    #[test]
    fn autoreduction_violation_is_reported() {
        // x and x^2 share a Pommaret cone beyond x^2
        let g = [poly(&[(1, &[1, 0])]), poly(&[(1, &[2, 0])])];
        let p = poly(&[(1, &[3, 0])]);
        assert!(matches!(
            inv_normal_form(&p, &g, Lex, Division::Pommaret),
            Err(Error::AmbiguousDivisor { .. })
        ));
    }

    use proptest::prelude::*;

    fn small_poly(n: usize) -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec((-5i64..=5, proptest::collection::vec(0u32..3, n)), 1..5).prop_map(move |ts| {
            let ts: Vec<(num_bigint::BigInt, Monomial)> =
                ts.into_iter().map(|(c, e)| (c.into(), Monomial::new(e))).collect();
            Polynomial::from_terms(n, MonomialOrder::DegRevLex, ts).unwrap().primitive()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]
        #[test]
        fn conventional_nf_is_idempotent_and_irreducible(
            h in small_poly(3),
            f in proptest::collection::vec(small_poly(3), 1..4),
        ) {
            let f: Vec<Polynomial> = f.into_iter().filter(|g| !g.is_zero()).collect();
            let o = MonomialOrder::DegRevLex;
            let nf = conv_normal_form(&h, &f, o).unwrap();
            prop_assert_eq!(conv_normal_form(&nf, &f, o).unwrap(), nf.clone());
            for t in nf.terms() {
                prop_assert!(f.iter().all(|g| !g.lm().divides(&t.mono)));
            }
            if !h.is_zero() && !nf.is_zero() {
                prop_assert!(o.cmp(nf.lm(), h.lm()).is_le());
            }
        }
    }
}
