//! Involutive divisions: separation of variables into multiplicative and
//! non-multiplicative ones for each element of a finite monomial set.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, VarSet, MAX_VARS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Division {
    Janet,
    Pommaret,
    LexInduced,
}

impl Division {
    pub fn name(self) -> &'static str {
        match self {
            Division::Janet => "janet",
            Division::Pommaret => "pommaret",
            Division::LexInduced => "lexinduced",
        }
    }

    pub fn from_name(name: &str) -> Option<Division> {
        match name.to_ascii_lowercase().as_str() {
            "janet" => Some(Division::Janet),
            "pommaret" => Some(Division::Pommaret),
            "lexinduced" | "lex-induced" | "lex_induced" => Some(Division::LexInduced),
            _ => None,
        }
    }

    /// Whether every finite monomial set has a finite completion.
    pub fn is_noetherian(self) -> bool {
        !matches!(self, Division::Pommaret)
    }

    /// Multiplicative variables of a single monomial, when they do not
    /// depend on the surrounding set.
    pub fn local_multiplicative(self, u: &Monomial) -> Option<VarSet> {
        match self {
            Division::Pommaret => Some(pommaret_multiplicative(u)),
            _ => None,
        }
    }
}

impl fmt::Display for Division {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Multiplicative variable masks for every element of a monomial set, in the
/// order the set was given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    division: Division,
    nvars: usize,
    mult: Vec<VarSet>,
}

impl Separation {
    pub fn division(&self) -> Division {
        self.division
    }

    pub fn len(&self) -> usize {
        self.mult.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    pub fn multiplicative(&self, index: usize) -> VarSet {
        self.mult[index]
    }

    pub fn non_multiplicative(&self, index: usize) -> VarSet {
        self.mult[index].complement(self.nvars)
    }

    /// Whether `u` (the element at `index`) involutively divides `w`.
    pub fn divides(&self, index: usize, u: &Monomial, w: &Monomial) -> bool {
        quotient_is_multiplicative(u, w, self.mult[index])
    }
}

/// `u | w` with the quotient built from `mult` only.
pub fn quotient_is_multiplicative(u: &Monomial, w: &Monomial, mult: VarSet) -> bool {
    if !u.divides(w) {
        return false;
    }
    u.exps()
        .iter()
        .zip(w.exps())
        .enumerate()
        .all(|(i, (a, b))| a == b || mult.contains(i))
}

fn check_set(set: &[Monomial]) -> Result<usize> {
    let first = set.first().ok_or(Error::EmptySet)?;
    let n = first.nvars();
    if n > MAX_VARS {
        return Err(Error::OutOfRange(format!("{n} variables exceed the limit of {MAX_VARS}")));
    }
    if let Some(bad) = set.iter().find(|u| u.nvars() != n) {
        return Err(Error::ArityMismatch {
            expected: n,
            found: bad.nvars(),
        });
    }
    Ok(n)
}

/// Separation of variables for every element of `set`.
pub fn compute_separation(division: Division, set: &[Monomial]) -> Result<Separation> {
    let nvars = check_set(set)?;
    let mult = match division {
        Division::Janet => janet_separation(set, nvars),
        Division::Pommaret => set.iter().map(pommaret_multiplicative).collect(),
        Division::LexInduced => lex_induced_separation(set, nvars),
    };
    Ok(Separation {
        division,
        nvars,
        mult,
    })
}

/// Janet groups: after sorting lexicographically on exponent vectors, the
/// group `[d1, ..., d_{i-1}]` is a contiguous run; `x_i` is multiplicative for
/// the members attaining the maximal `deg_i` of their run, i.e. the tail.
fn janet_separation(set: &[Monomial], nvars: usize) -> Vec<VarSet> {
    let mut order: Vec<usize> = (0..set.len()).collect();
    order.sort_by(|&a, &b| set[a].exps().cmp(set[b].exps()));
    let mut mult = vec![VarSet::EMPTY; set.len()];
    // run boundaries: starts[k] is true when order[k] begins a new group
    let mut starts = vec![false; set.len()];
    if !starts.is_empty() {
        starts[0] = true;
    }
    for var in 0..nvars {
        let mut k = 0;
        while k < order.len() {
            let mut end = k + 1;
            while end < order.len() && !starts[end] {
                end += 1;
            }
            let max = set[order[end - 1]].exp(var);
            for &idx in &order[k..end] {
                if set[idx].exp(var) == max {
                    mult[idx].insert(var);
                }
            }
            k = end;
        }
        for k in 1..order.len() {
            if set[order[k]].exp(var) != set[order[k - 1]].exp(var) {
                starts[k] = true;
            }
        }
    }
    mult
}

fn pommaret_multiplicative(u: &Monomial) -> VarSet {
    let n = u.nvars();
    match u.exps().iter().rposition(|&e| e > 0) {
        None => VarSet::all(n),
        Some(k) => VarSet::from_indices(k..n),
    }
}

fn lex_induced_separation(set: &[Monomial], nvars: usize) -> Vec<VarSet> {
    let mut order: Vec<usize> = (0..set.len()).collect();
    order.sort_by(|&a, &b| MonomialOrder::Lex.cmp(&set[a], &set[b]));
    // running componentwise maximum over the lex-smaller prefix
    let mut prefix_max = vec![0u32; nvars];
    let mut mult = vec![VarSet::EMPTY; set.len()];
    for (pos, &idx) in order.iter().enumerate() {
        let u = &set[idx];
        let mut nm = VarSet::EMPTY;
        if pos > 0 {
            for (var, &m) in prefix_max.iter().enumerate() {
                if u.exp(var) < m {
                    nm.insert(var);
                }
            }
        }
        mult[idx] = nm.complement(nvars);
        for (var, m) in prefix_max.iter_mut().enumerate() {
            *m = (*m).max(u.exp(var));
        }
    }
    mult
}

/// Whether `u`, a member of `set`, involutively divides `w`.
pub fn involutive_divides(
    division: Division,
    set: &[Monomial],
    u: &Monomial,
    w: &Monomial,
) -> Result<bool> {
    let idx = set.iter().position(|v| v == u).ok_or(Error::NotInSet)?;
    if w.nvars() != u.nvars() {
        return Err(Error::ArityMismatch {
            expected: u.nvars(),
            found: w.nvars(),
        });
    }
    let sep = compute_separation(division, set)?;
    Ok(sep.divides(idx, u, w))
}

/// Reference involutive-divisor search by linear scan. More than one divisor
/// means the set is not involutively autoreduced and is reported as an error.
pub fn find_involutive_divisor_scan(
    division: Division,
    set: &[Monomial],
    w: &Monomial,
) -> Result<Option<usize>> {
    if set.is_empty() {
        return Ok(None);
    }
    let sep = compute_separation(division, set)?;
    scan_with(&sep, set, w)
}

pub(crate) fn scan_with(sep: &Separation, set: &[Monomial], w: &Monomial) -> Result<Option<usize>> {
    let mut found = None;
    let mut count = 0;
    for (i, u) in set.iter().enumerate() {
        if sep.divides(i, u, w) {
            count += 1;
            found.get_or_insert(i);
        }
    }
    if count > 1 {
        return Err(Error::AmbiguousDivisor {
            target: w.to_string(),
            count,
        });
    }
    Ok(found)
}

/// A violated property of an involutive division on a concrete set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    /// The cones of `u` and `v` intersect but neither contains the other.
    ConeOverlap { u: Monomial, v: Monomial },
    /// `v` lies in the cone of `u` but has multiplicative variables `u` lacks.
    Monotonicity { u: Monomial, v: Monomial },
    /// Removing elements shrank the multiplicative set of `u`.
    SubsetShrink { u: Monomial, subset: Vec<Monomial> },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
    pub subsets_checked: usize,
}

impl AxiomReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Subsets are enumerated exhaustively up to this set size and sampled above.
const EXHAUSTIVE_SUBSET_LIMIT: usize = 6;
const SAMPLED_SUBSETS: usize = 64;

/// Checks the three defining properties of an involutive division on `set`.
pub fn axiom_check(division: Division, set: &[Monomial]) -> Result<AxiomReport> {
    let mut report = AxiomReport::default();
    if set.is_empty() {
        return Ok(report);
    }
    let sep = compute_separation(division, set)?;
    let n = set[0].nvars();

    for (i, u) in set.iter().enumerate() {
        for (j, v) in set.iter().enumerate() {
            if i < j && cones_intersect(u, sep.multiplicative(i), v, sep.multiplicative(j), n) {
                let contained = sep.divides(i, u, v) || sep.divides(j, v, u);
                if !contained {
                    report.violations.push(AxiomViolation::ConeOverlap {
                        u: u.clone(),
                        v: v.clone(),
                    });
                }
            }
            if i != j
                && sep.divides(i, u, v)
                && !sep.multiplicative(j).is_subset(sep.multiplicative(i))
            {
                report.violations.push(AxiomViolation::Monotonicity {
                    u: u.clone(),
                    v: v.clone(),
                });
            }
        }
    }

    let check_subset = |mask: &[bool], report: &mut AxiomReport| -> Result<()> {
        let subset: Vec<Monomial> = set
            .iter()
            .zip(mask)
            .filter(|(_, keep)| **keep)
            .map(|(u, _)| u.clone())
            .collect();
        if subset.is_empty() {
            return Ok(());
        }
        report.subsets_checked += 1;
        let sub_sep = compute_separation(division, &subset)?;
        let mut k = 0;
        for (i, keep) in mask.iter().enumerate() {
            if !keep {
                continue;
            }
            if !sep.multiplicative(i).is_subset(sub_sep.multiplicative(k)) {
                report.violations.push(AxiomViolation::SubsetShrink {
                    u: set[i].clone(),
                    subset: subset.clone(),
                });
            }
            k += 1;
        }
        Ok(())
    };

    if set.len() <= EXHAUSTIVE_SUBSET_LIMIT {
        for bits in 1u32..(1 << set.len()) {
            let mask: Vec<bool> = (0..set.len()).map(|i| bits & (1 << i) != 0).collect();
            check_subset(&mask, &mut report)?;
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(set.len() as u64);
        let mut idx: Vec<usize> = (0..set.len()).collect();
        for s in 0..SAMPLED_SUBSETS {
            idx.shuffle(&mut rng);
            let keep = 1 + s % set.len();
            let mut mask = vec![false; set.len()];
            for &i in &idx[..keep] {
                mask[i] = true;
            }
            check_subset(&mask, &mut report)?;
        }
    }
    Ok(report)
}

/// `u*M(Xu)` and `v*M(Xv)` share a monomial iff, variable by variable, the
/// exponents can be matched: non-multiplicative on both sides forces
/// equality, non-multiplicative on one side caps the other.
fn cones_intersect(u: &Monomial, mu: VarSet, v: &Monomial, mv: VarSet, n: usize) -> bool {
    (0..n).all(|k| {
        let (a, b) = (u.exp(k), v.exp(k));
        match (mu.contains(k), mv.contains(k)) {
            (false, false) => a == b,
            (false, true) => a >= b,
            (true, false) => b >= a,
            (true, true) => true,
        }
    })
}
