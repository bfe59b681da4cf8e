//! Reference Buchberger algorithm with the normal pair-selection strategy
//! and Buchberger's co-prime and chain criteria. It shares nothing with the
//! involutive engine beyond the polynomial primitives.
//!
//! An element whose leading monomial becomes a multiple of a newer one's
//! stops acting as a reducer; its pairs are still formed and processed.
//! Without this, lex runs drown in coefficients of redundant elements.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, Polynomial};

/// A pending pair of basis indices `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPair {
    pub i: usize,
    pub j: usize,
    pub lcm: Monomial,
}

impl CriticalPair {
    pub fn degree(&self) -> u32 {
        self.lcm.degree()
    }
}

/// Counters for one oracle run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleStats {
    pub pairs_formed: u64,
    pub coprime_skips: u64,
    pub chain_skips: u64,
    pub reductions_to_zero: u64,
}

/// `(lcm/lt f) * f - (lcm/lt g) * g`, primitive.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::Precondition("S-polynomial of a zero polynomial".into()));
    }
    if f.nvars() != g.nvars() {
        return Err(Error::ArityMismatch {
            expected: f.nvars(),
            found: g.nvars(),
        });
    }
    let l = f.lm().lcm(g.lm());
    let uf = l.try_div(f.lm()).expect("lcm is a multiple");
    let ug = l.try_div(g.lm()).expect("lcm is a multiple");
    let a = f.mul_monomial(&uf).scale(g.lc());
    let b = g.mul_monomial(&ug).scale(f.lc());
    Ok(a.sub(&b).primitive())
}

/// Full conventional normal form: the highest reducible term is eliminated
/// first, using the lowest-index divisor.
fn normal_form(h: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let mut h = h.clone().primitive();
    let mut pos = 0;
    while pos < h.len() {
        let t = h.terms()[pos].mono.clone();
        match basis.iter().find(|g| !g.is_zero() && g.lm().divides(&t)) {
            Some(g) => {
                let m = t.try_div(g.lm()).expect("divisor");
                h = h.reduce_at(pos, g, &m);
            }
            None => pos += 1,
        }
    }
    h
}

/// Conventional normal form of `h` with respect to `basis`.
pub fn reduce_fully(h: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    normal_form(h, basis)
}

/// Removes elements whose leading monomial is a multiple of another one's
/// and reduces every remaining tail. Output sorted by descending leading
/// monomial.
pub fn autoreduce(g: &[Polynomial], order: MonomialOrder) -> Vec<Polynomial> {
    let mut polys: Vec<Polynomial> = g
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.with_order(order).primitive())
        .collect();
    polys.sort_by(|a, b| order.cmp(a.lm(), b.lm()).then_with(|| a.len().cmp(&b.len())));
    let mut kept: Vec<Polynomial> = Vec::new();
    // ascending leading monomials: a divisor always comes first
    for p in polys {
        if !kept.iter().any(|k| k.lm().divides(p.lm())) {
            kept.push(p);
        }
    }
    let mut out = Vec::with_capacity(kept.len());
    for i in 0..kept.len() {
        let others: Vec<Polynomial> = kept
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p.clone())
            .collect();
        out.push(normal_form(&kept[i], &others));
    }
    out.sort_by(|a, b| order.cmp(b.lm(), a.lm()));
    out
}

pub fn buchberger_reduced_gb(f: &[Polynomial], order: MonomialOrder) -> Result<Vec<Polynomial>> {
    buchberger_with_stats(f, order).map(|(g, _)| g)
}

pub fn buchberger_with_stats(
    f: &[Polynomial],
    order: MonomialOrder,
) -> Result<(Vec<Polynomial>, OracleStats)> {
    let mut stats = OracleStats::default();
    let nvars = f.first().map(Polynomial::nvars);
    if let Some(bad) = f.iter().find(|p| Some(p.nvars()) != nvars) {
        return Err(Error::ArityMismatch {
            expected: nvars.unwrap_or(0),
            found: bad.nvars(),
        });
    }
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut reducers: Vec<Polynomial> = Vec::new();
    let retire = |basis: &[Polynomial], reducers: &mut Vec<Polynomial>| {
        let h = basis.last().expect("just pushed");
        reducers.retain(|g| !h.lm().divides(g.lm()));
        reducers.push(h.clone());
    };
    if f.is_empty() {
        return Ok((basis, stats));
    }

    let mut pending: BTreeSet<(u32, usize)> = BTreeSet::new();
    let mut pairs: Vec<CriticalPair> = Vec::new();
    let mut open: BTreeSet<(usize, usize)> = BTreeSet::new();
    let push_pair = |i: usize,
                     j: usize,
                     basis: &[Polynomial],
                     pairs: &mut Vec<CriticalPair>,
                     pending: &mut BTreeSet<(u32, usize)>,
                     open: &mut BTreeSet<(usize, usize)>| {
        let lcm = basis[i].lm().lcm(basis[j].lm());
        pending.insert((lcm.degree(), pairs.len()));
        open.insert((i, j));
        pairs.push(CriticalPair { i, j, lcm });
    };

    for p in f {
        let h = normal_form(&p.with_order(order), &reducers);
        if !h.is_zero() {
            basis.push(h);
            let j = basis.len() - 1;
            for i in 0..j {
                push_pair(i, j, &basis, &mut pairs, &mut pending, &mut open);
                stats.pairs_formed += 1;
            }
            retire(&basis, &mut reducers);
        }
    }

    loop {
        // normal strategy: smallest lcm degree, then smallest lcm
        let Some(&first) = pending.iter().next() else { break };
        let deg = first.0;
        let key = *pending
            .range((deg, 0)..(deg + 1, 0))
            .min_by(|a, b| {
                order
                    .cmp(&pairs[a.1].lcm, &pairs[b.1].lcm)
                    .then(a.1.cmp(&b.1))
            })
            .expect("nonempty degree class");
        pending.remove(&key);
        let pair = pairs[key.1].clone();
        open.remove(&(pair.i, pair.j));

        let (fi, fj) = (&basis[pair.i], &basis[pair.j]);
        if fi.lm().is_coprime(fj.lm()) {
            stats.coprime_skips += 1;
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != pair.i
                && k != pair.j
                && basis[k].lm().divides(&pair.lcm)
                && !open.contains(&(pair.i.min(k), pair.i.max(k)))
                && !open.contains(&(pair.j.min(k), pair.j.max(k)))
        });
        if chain {
            stats.chain_skips += 1;
            continue;
        }
        let s = s_polynomial(fi, fj)?;
        let h = normal_form(&s, &reducers);
        if h.is_zero() {
            stats.reductions_to_zero += 1;
            continue;
        }
        basis.push(h);
        let j = basis.len() - 1;
        for i in 0..j {
            push_pair(i, j, &basis, &mut pairs, &mut pending, &mut open);
            stats.pairs_formed += 1;
        }
        retire(&basis, &mut reducers);
    }
    Ok((autoreduce(&reducers, order), stats))
}

/// Whether `h` lies in the ideal generated by the Gröbner basis `gb`.
pub fn is_member(h: &Polynomial, gb: &[Polynomial]) -> bool {
    normal_form(h, gb).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use MonomialOrder::{DegRevLex, Lex};

    fn p(order: MonomialOrder, terms: &[(i64, &[u32])]) -> Polynomial {
        Polynomial::from_exps(order, terms)
    }

    #[test]
    fn s_polynomial_examples() {
        let f = p(Lex, &[(1, &[2, 1]), (-1, &[0, 0])]);
        let g = p(Lex, &[(1, &[1, 2]), (-1, &[0, 0])]);
        assert_eq!(s_polynomial(&f, &g).unwrap(), p(Lex, &[(1, &[1, 0]), (-1, &[0, 1])]));
        assert!(s_polynomial(&f, &f).unwrap().is_zero());
        let a = p(DegRevLex, &[(1, &[1, 1, 0]), (-1, &[0, 0, 0])]);
        let b = p(DegRevLex, &[(1, &[0, 1, 1]), (-1, &[0, 0, 0])]);
        // z(xy - 1) - x(yz - 1) = x - z
        assert_eq!(
            s_polynomial(&a, &b).unwrap(),
            p(DegRevLex, &[(1, &[1, 0, 0]), (-1, &[0, 0, 1])])
        );
    }

    #[test]
    fn cubic_pair_reduced_basis() {
        let f = [p(Lex, &[(1, &[2, 1]), (-1, &[0, 0])]), p(Lex, &[(1, &[1, 2]), (-1, &[0, 0])])];
        let gb = buchberger_reduced_gb(&f, Lex).unwrap();
        assert_eq!(
            gb,
            vec![p(Lex, &[(1, &[1, 0]), (-1, &[0, 1])]), p(Lex, &[(1, &[0, 3]), (-1, &[0, 0])])]
        );
        let x = p(Lex, &[(1, &[1, 0])]);
        assert_eq!(buchberger_reduced_gb(&[x.clone()], Lex).unwrap(), vec![x]);
    }

    #[test]
    fn autoreduce_examples() {
        let g1 = [
            p(Lex, &[(1, &[1, 2]), (-1, &[0, 0])]),
            p(Lex, &[(1, &[1, 1]), (-1, &[0, 2])]),
            p(Lex, &[(1, &[1, 0]), (-1, &[0, 1])]),
            p(Lex, &[(1, &[0, 3]), (-1, &[0, 0])]),
        ];
        let want = vec![p(Lex, &[(1, &[1, 0]), (-1, &[0, 1])]), p(Lex, &[(1, &[0, 3]), (-1, &[0, 0])])];
        assert_eq!(autoreduce(&g1, Lex), want);
        assert_eq!(autoreduce(&want, Lex), want);
        let xx = [p(Lex, &[(1, &[1])]), p(Lex, &[(1, &[2])])];
        assert_eq!(autoreduce(&xx, Lex), vec![p(Lex, &[(1, &[1])])]);
    }

    #[test]
    fn fixpoint_and_permutation_invariance() {
        let f = vec![
            p(DegRevLex, &[(1, &[1, 1, 0]), (-1, &[0, 0, 0])]),
            p(DegRevLex, &[(1, &[1, 0, 1]), (-1, &[0, 0, 0])]),
            p(DegRevLex, &[(1, &[0, 1, 1]), (-1, &[0, 0, 0])]),
        ];
        let gb = buchberger_reduced_gb(&f, DegRevLex).unwrap();
        for a in &gb {
            for b in &gb {
                assert!(reduce_fully(&s_polynomial(a, b).unwrap(), &gb).is_zero());
            }
        }
        let mut rev = f.clone();
        rev.reverse();
        assert_eq!(buchberger_reduced_gb(&rev, DegRevLex).unwrap(), gb);
        for g in &f {
            assert!(is_member(g, &gb));
        }
    }
}
