//! Cones, involutive cones and completion of monomial sets.

use crate::division::{compute_separation, Division, Separation};
use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder};

/// A finite set of distinct monomials of one arity, kept in insertion order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialSet {
    nvars: usize,
    elems: Vec<Monomial>,
}

impl MonomialSet {
    pub fn new(nvars: usize) -> Self {
        MonomialSet {
            nvars,
            elems: Vec::new(),
        }
    }

    pub fn from_vec(elems: Vec<Monomial>) -> Result<Self> {
        let nvars = elems.first().ok_or(Error::EmptySet)?.nvars();
        let mut set = MonomialSet::new(nvars);
        for u in elems {
            set.insert(u)?;
        }
        Ok(set)
    }

    pub fn insert(&mut self, u: Monomial) -> Result<()> {
        if u.nvars() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: u.nvars(),
            });
        }
        if self.elems.contains(&u) {
            return Err(Error::DuplicateMonomial(u.to_string()));
        }
        self.elems.push(u);
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn as_slice(&self) -> &[Monomial] {
        &self.elems
    }

    pub fn contains(&self, u: &Monomial) -> bool {
        self.elems.contains(u)
    }

    pub fn max_degree(&self) -> u32 {
        self.elems.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn separation(&self, d: Division) -> Result<Separation> {
        compute_separation(d, &self.elems)
    }
}

/// `w` lies in the conventional cone of `set`.
pub fn cone_member(set: &MonomialSet, w: &Monomial) -> bool {
    set.elems.iter().any(|u| u.divides(w))
}

/// `w` lies in the involutive cone of `set`.
pub fn lcone_member(d: Division, set: &MonomialSet, w: &Monomial) -> bool {
    match set.separation(d) {
        Ok(sep) => lcone_member_with(&sep, set, w),
        Err(_) => false,
    }
}

fn lcone_member_with(sep: &Separation, set: &MonomialSet, w: &Monomial) -> bool {
    set.elems
        .iter()
        .enumerate()
        .any(|(i, u)| sep.divides(i, u, w))
}

/// First non-multiplicative prolongation `u * x_var` outside the involutive
/// cone, scanning elements in set order and variables in index order.
pub fn local_involutivity_witness(d: Division, set: &MonomialSet) -> Option<(Monomial, usize)> {
    let sep = set.separation(d).ok()?;
    for (i, u) in set.elems.iter().enumerate() {
        for var in sep.non_multiplicative(i).iter() {
            if !lcone_member_with(&sep, set, &u.mul_var(var)) {
                return Some((u.clone(), var));
            }
        }
    }
    None
}

pub fn is_locally_involutive(d: Division, set: &MonomialSet) -> bool {
    local_involutivity_witness(d, set).is_none()
}

/// Default degree guard for completions: twice the maximal input degree plus
/// the number of variables.
pub fn default_degree_bound(set: &MonomialSet) -> u32 {
    2 * set.max_degree() + set.nvars() as u32
}

/// Completes `set` by repeatedly adjoining the smallest (under `order`)
/// non-multiplicative prolongation outside the involutive cone.
pub fn complete_monomial_set(
    d: Division,
    set: &MonomialSet,
    order: MonomialOrder,
    degree_bound: u32,
) -> Result<MonomialSet> {
    if set.is_empty() {
        return Ok(set.clone());
    }
    if degree_bound < set.max_degree() {
        return Err(Error::Precondition(format!(
            "degree bound {degree_bound} is below the input degree {}",
            set.max_degree()
        )));
    }
    let mut out = set.clone();
    loop {
        let sep = out.separation(d)?;
        let mut best: Option<Monomial> = None;
        for (i, u) in out.elems.iter().enumerate() {
            for var in sep.non_multiplicative(i).iter() {
                let w = u.mul_var(var);
                if lcone_member_with(&sep, &out, &w) {
                    continue;
                }
                if best.as_ref().map_or(true, |b| order.cmp(&w, b).is_lt()) {
                    best = Some(w);
                }
            }
        }
        let Some(w) = best else {
            return Ok(out);
        };
        if w.degree() > degree_bound {
            return Err(Error::BoundExceeded {
                degree: w.degree(),
                bound: degree_bound,
            });
        }
        out.insert(w)?;
    }
}

/// All monomials of total degree `degree` in `nvars` variables, in
/// descending lexicographic order.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    fill(&mut exps, 0, degree, &mut out);
    out
}

fn fill(exps: &mut Vec<u32>, var: usize, left: u32, out: &mut Vec<Monomial>) {
    if var + 1 >= exps.len() {
        if let Some(last) = exps.last_mut() {
            *last = left;
            out.push(Monomial::new(exps.clone()));
        } else if left == 0 {
            out.push(Monomial::new(Vec::new()));
        }
        return;
    }
    for e in (0..=left).rev() {
        exps[var] = e;
        fill(exps, var + 1, left - e, out);
    }
    exps[var] = 0;
}

/// Compares involutive-cone membership in `completed` with conventional-cone
/// membership in `original` for every monomial up to `degree_bound`, returning
/// the first disagreement.
pub fn cone_disagreement(
    d: Division,
    completed: &MonomialSet,
    original: &MonomialSet,
    degree_bound: u32,
) -> Result<Option<Monomial>> {
    let sep = completed.separation(d)?;
    for s in 0..=degree_bound {
        for w in monomials_of_degree(completed.nvars(), s) {
            if lcone_member_with(&sep, completed, &w) != cone_member(original, &w) {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}
