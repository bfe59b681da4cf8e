//! Involutive completion: the simple algorithm working on plain polynomial
//! sets and the triple-based algorithm with head reduction, criteria and an
//! optional multi-lane head-reduction phase.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::division::{compute_separation, scan_with, Division, Separation};
use crate::error::{Error, Result};
use crate::janet_tree::JanetTree;
use crate::monomial_completion::{complete_monomial_set, MonomialSet};
use crate::poly::{Monomial, MonomialOrder, Polynomial, VarSet};
use crate::reduce::{
    bits_to_decimal_digits, bits_to_words, reduce_from, reduce_head, InvolutiveSet, ReductionTrace,
    Reductors,
};

/// Which of the four involutive criteria are consulted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Criteria {
    pub c1: bool,
    pub c2: bool,
    pub c3: bool,
    pub c4: bool,
}

impl Criteria {
    pub const NONE: Criteria = Criteria {
        c1: false,
        c2: false,
        c3: false,
        c4: false,
    };
    pub const ALL: Criteria = Criteria {
        c1: true,
        c2: true,
        c3: true,
        c4: true,
    };

    /// The first `k` criteria enabled.
    pub fn prefix(k: usize) -> Criteria {
        Criteria {
            c1: k >= 1,
            c2: k >= 2,
            c3: k >= 3,
            c4: k >= 4,
        }
    }

    /// Parses `none`, `all` or a comma-separated list such as `1,2,3`.
    pub fn parse(text: &str) -> Result<Criteria> {
        let text = text.trim();
        match text {
            "none" | "" => return Ok(Criteria::NONE),
            "all" => return Ok(Criteria::ALL),
            _ => {}
        }
        let mut c = Criteria::NONE;
        for part in text.split(',') {
            match part.trim().trim_start_matches(['c', 'C']) {
                "1" => c.c1 = true,
                "2" => c.c2 = true,
                "3" => c.c3 = true,
                "4" => c.c4 = true,
                other => {
                    return Err(Error::InvalidConfig(format!("unknown criterion '{other}'")));
                }
            }
        }
        Ok(c)
    }

    pub fn is_none(&self) -> bool {
        *self == Criteria::NONE
    }
}

impl Default for Criteria {
    fn default() -> Self {
        Criteria::ALL
    }
}

impl fmt::Display for Criteria {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = [(self.c1, "1"), (self.c2, "2"), (self.c3, "3"), (self.c4, "4")]
            .iter()
            .filter(|(on, _)| *on)
            .map(|(_, s)| *s)
            .collect();
        if parts.is_empty() {
            f.write_str("none")
        } else {
            f.write_str(&parts.join(","))
        }
    }
}

/// Rule for picking the next queue element. Every rule only returns an
/// element whose leading monomial has no proper divisor among the queue.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Selection {
    /// Minimal total degree, then the smallest leading monomial, then the
    /// earliest queued.
    #[default]
    DegreeThenSmallest,
    /// The smallest leading monomial under the active order.
    Smallest,
    /// Minimal total degree, then the largest leading monomial.
    DegreeThenLargest,
    /// The earliest queued element that has no proper divisor in the queue.
    Fifo,
}

impl Selection {
    pub const VARIANTS: [Selection; 4] = [
        Selection::DegreeThenSmallest,
        Selection::Smallest,
        Selection::DegreeThenLargest,
        Selection::Fifo,
    ];
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum OutputKind {
    Involutive,
    Groebner,
    #[default]
    Both,
}

impl OutputKind {
    pub fn from_name(name: &str) -> Option<OutputKind> {
        match name {
            "involutive" => Some(OutputKind::Involutive),
            "groebner" => Some(OutputKind::Groebner),
            "both" => Some(OutputKind::Both),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    pub order: MonomialOrder,
    pub division: Division,
    pub criteria: Criteria,
    /// Head reduce only the queue elements of minimal degree before each
    /// selection. Keeps intermediate coefficients markedly smaller. Ignored
    /// for lex, where low degree says nothing about the next selection.
    pub partial_head_reduction: bool,
    /// Largest admissible degree of a prolongation; 0 disables the guard.
    pub degree_bound: u32,
    pub workers: usize,
    pub output: OutputKind,
    pub selection: Selection,
    /// Start with every input polynomial in the basis part when no input
    /// leading monomial divides another.
    pub seed_whole_input: bool,
    pub record_prolongations: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            order: MonomialOrder::DegRevLex,
            division: Division::Janet,
            criteria: Criteria::ALL,
            partial_head_reduction: true,
            degree_bound: 0,
            workers: 1,
            output: OutputKind::Both,
            selection: Selection::DegreeThenSmallest,
            seed_whole_input: false,
            record_prolongations: false,
        }
    }
}

impl EngineConfig {
    pub fn new(order: MonomialOrder, division: Division) -> Self {
        EngineConfig {
            order,
            division,
            ..EngineConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.workers == 0 {
            return Err(Error::InvalidConfig("workers must be at least 1".into()));
        }
        if !self.division.is_noetherian() && self.degree_bound == 0 {
            return Err(Error::InvalidConfig(format!(
                "{} division needs a positive degree bound",
                self.division
            )));
        }
        Ok(())
    }
}

/// One non-multiplicative prolongation as it entered the queue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProlongationRecord {
    /// Prolongation pass that produced it; pass 0 follows initialisation.
    pub generation: u64,
    pub parent: Polynomial,
    pub var: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompletionStats {
    /// Hits of C1..C4, indexed from zero.
    pub criteria_hits: [u64; 4],
    /// Non-multiplicative prolongations put into the queue.
    pub prolongations: u64,
    pub head_steps: u64,
    pub tail_steps: u64,
    /// Queue elements whose head normal form vanished without a criterion.
    pub zero_reductions: u64,
    /// Queue elements dropped because their ancestor reduced to zero.
    pub purged: u64,
    /// Basis elements moved back to the queue.
    pub displaced: u64,
    pub insertions: u64,
    /// 1 when the completed basis was not minimal and was rebuilt from its
    /// Gröbner part.
    pub rebuilds: u64,
    pub max_intermediate_bits: u64,
    pub max_output_bits: u64,
    /// `(lm anc p, lm anc g)` for every prolongation whose head had an
    /// involutive divisor `g` and was therefore checked against the criteria.
    pub pairs: BTreeMap<(Monomial, Monomial), u64>,
    pub prolongation_log: Vec<ProlongationRecord>,
}

impl CompletionStats {
    pub fn total_steps(&self) -> u64 {
        self.head_steps + self.tail_steps
    }

    pub fn criteria_total(&self) -> u64 {
        self.criteria_hits.iter().sum()
    }

    pub fn pair_count(&self, a: &Monomial, b: &Monomial) -> u64 {
        let ab = self.pairs.get(&(a.clone(), b.clone())).copied().unwrap_or(0);
        let ba = self.pairs.get(&(b.clone(), a.clone())).copied().unwrap_or(0);
        ab + ba
    }

    pub fn max_intermediate_digits(&self) -> u64 {
        bits_to_decimal_digits(self.max_intermediate_bits)
    }

    pub fn max_intermediate_words(&self) -> u64 {
        bits_to_words(self.max_intermediate_bits)
    }

    pub fn max_output_words(&self) -> u64 {
        bits_to_words(self.max_output_bits)
    }

    /// Largest intermediate over largest output coefficient, in 64-bit words.
    pub fn swell_factor(&self) -> f64 {
        let out = self.max_output_words().max(1);
        self.max_intermediate_words().max(1) as f64 / out as f64
    }

    fn absorb_trace(&mut self, trace: &ReductionTrace, head: bool) {
        if head {
            self.head_steps += trace.steps;
        } else {
            self.tail_steps += trace.steps;
        }
        self.max_intermediate_bits = self.max_intermediate_bits.max(trace.max_coeff_bits);
    }

    /// Named counters in a fixed order, for reports.
    pub fn counters(&self) -> Vec<(&'static str, u64)> {
        vec![
            ("criterion_c1", self.criteria_hits[0]),
            ("criterion_c2", self.criteria_hits[1]),
            ("criterion_c3", self.criteria_hits[2]),
            ("criterion_c4", self.criteria_hits[3]),
            ("prolongations", self.prolongations),
            ("head_steps", self.head_steps),
            ("tail_steps", self.tail_steps),
            ("zero_reductions", self.zero_reductions),
            ("purged", self.purged),
            ("displaced", self.displaced),
            ("insertions", self.insertions),
            ("rebuilds", self.rebuilds),
            ("max_intermediate_bits", self.max_intermediate_bits),
            ("max_intermediate_digits", self.max_intermediate_digits()),
            ("max_intermediate_words", self.max_intermediate_words()),
            ("max_output_bits", self.max_output_bits),
            ("max_output_words", self.max_output_words()),
        ]
    }
}

/// The result of a completion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completion {
    /// Minimal involutive basis, sorted by descending leading monomial.
    pub basis: Vec<Polynomial>,
    /// Leading monomial of the ancestor of each basis element.
    pub ancestors: Vec<Monomial>,
    /// Reduced Gröbner basis, sorted by descending leading monomial.
    pub groebner: Vec<Polynomial>,
    pub stats: CompletionStats,
}

/// A completion record: polynomial, ancestor and the non-multiplicative
/// variables already used for prolongations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triple {
    pub pol: Polynomial,
    /// Leading monomial of the ancestor.
    pub anc: Monomial,
    /// Identity of the ancestor; shared by an ancestor and its descendants.
    pub anc_id: u64,
    pub nmp: VarSet,
    /// Basis slot of the element this prolongation was built from.
    pub parent: Option<usize>,
    /// Queue position stamp, used as the final selection tie-break.
    pub qseq: u64,
    /// Set when the ancestor was moved down to a later, smaller basis
    /// element; such triples take no part in criteria.
    pub relabeled: bool,
}

impl Triple {
    /// A fresh triple that is its own ancestor.
    pub fn fresh(pol: Polynomial, id: u64) -> Triple {
        Triple {
            anc: pol.lm().clone(),
            pol,
            anc_id: id,
            nmp: VarSet::EMPTY,
            parent: None,
            qseq: id,
            relabeled: false,
        }
    }

    pub fn lm(&self) -> &Monomial {
        self.pol.lm()
    }

    pub fn is_own_ancestor(&self) -> bool {
        self.pol.lm() == &self.anc
    }
}

/// The basis part of the completion. Slots are never reused, so a slot
/// number doubles as the insertion stamp.
#[derive(Clone, Debug)]
pub struct TripleStore {
    division: Division,
    nvars: usize,
    slots: Vec<Option<Triple>>,
    tree: Option<JanetTree<usize>>,
    live: Vec<usize>,
    lms: Vec<Monomial>,
    live_index: Vec<usize>,
    sep: Option<Separation>,
}

impl TripleStore {
    pub fn new(division: Division, nvars: usize) -> Self {
        TripleStore {
            division,
            nvars,
            slots: Vec::new(),
            tree: (division == Division::Janet).then(|| JanetTree::new(nvars)),
            live: Vec::new(),
            lms: Vec::new(),
            live_index: Vec::new(),
            sep: None,
        }
    }

    pub fn len(&self) -> usize {
        self.live.len()
    }

    pub fn is_empty(&self) -> bool {
        self.live.is_empty()
    }

    pub fn get(&self, slot: usize) -> Option<&Triple> {
        self.slots.get(slot).and_then(Option::as_ref)
    }

    /// Live slots in insertion order.
    pub fn slots(&self) -> &[usize] {
        &self.live
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Triple)> {
        self.live
            .iter()
            .map(move |&s| (s, self.slots[s].as_ref().expect("live slot")))
    }

    pub fn insert(&mut self, t: Triple) -> Result<usize> {
        if t.pol.is_zero() {
            return Err(Error::Precondition("zero polynomial inserted into the basis".into()));
        }
        let slot = self.slots.len();
        if let Some(tree) = &mut self.tree {
            tree.insert(t.lm().clone(), slot)?;
        } else if self.lms.contains(t.lm()) {
            return Err(Error::DuplicateMonomial(t.lm().to_string()));
        }
        self.slots.push(Some(t));
        self.refresh()?;
        Ok(slot)
    }

    pub fn remove(&mut self, slot: usize) -> Result<Triple> {
        let t = self
            .slots
            .get_mut(slot)
            .and_then(Option::take)
            .ok_or_else(|| Error::Absent(format!("slot {slot}")))?;
        if let Some(tree) = &mut self.tree {
            tree.remove(t.lm())?;
        }
        self.refresh()?;
        Ok(t)
    }

    fn set_pol(&mut self, slot: usize, pol: Polynomial) {
        let t = self.slots[slot].as_mut().expect("live slot");
        debug_assert_eq!(t.pol.lm(), pol.lm());
        t.pol = pol;
    }

    fn refresh(&mut self) -> Result<()> {
        self.live = (0..self.slots.len()).filter(|&s| self.slots[s].is_some()).collect();
        self.lms = self
            .live
            .iter()
            .map(|&s| self.slots[s].as_ref().expect("live").lm().clone())
            .collect();
        self.live_index = vec![usize::MAX; self.slots.len()];
        for (i, &s) in self.live.iter().enumerate() {
            self.live_index[s] = i;
        }
        self.sep = if self.lms.is_empty() {
            None
        } else {
            Some(compute_separation(self.division, &self.lms)?)
        };
        Ok(())
    }

    /// Non-multiplicative variables of the element in `slot` with respect to
    /// the whole store.
    pub fn non_multiplicative(&self, slot: usize) -> VarSet {
        match (&self.sep, self.live_index.get(slot)) {
            (Some(sep), Some(&i)) if i != usize::MAX => sep.non_multiplicative(i),
            _ => VarSet::EMPTY,
        }
    }

    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.iter().map(|(_, t)| t.pol.clone()).collect()
    }

    fn divisor_slot(&self, w: &Monomial) -> Result<Option<usize>> {
        if let Some(tree) = &self.tree {
            return Ok(tree.find_divisor(w)?.map(|(_, &k)| k));
        }
        match &self.sep {
            None => Ok(None),
            Some(sep) => Ok(scan_with(sep, &self.lms, w)?.map(|i| self.live[i])),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// First live slot whose leading monomial another element divides
    /// involutively.
    fn reducible_slot(&self) -> Option<usize> {
        let sep = self.sep.as_ref()?;
        (0..self.lms.len())
            .find(|&i| (0..self.lms.len()).any(|j| j != i && sep.divides(j, &self.lms[j], &self.lms[i])))
            .map(|i| self.live[i])
    }
}

impl Reductors for TripleStore {
    fn find_reductor(&self, w: &Monomial) -> Result<Option<(usize, &Polynomial)>> {
        Ok(self
            .divisor_slot(w)?
            .map(|s| (s, &self.slots[s].as_ref().expect("live slot").pol)))
    }
}

/// Unprocessed prolongations of one head-reduction pass, as
/// `(parent slot, leading monomial)`.
pub type Batch = HashSet<(usize, Monomial)>;

/// Which criterion (0-based) discards the pair formed by the prolongation
/// `p` and its involutive divisor `g`, if any. C4 only trusts a prolongation
/// `t·y` that is head reduced in the same pass, i.e. one listed in `batch`:
/// one treated earlier may have met a different divisor.
pub fn criteria_check(p: &Triple, g: &Triple, t: &TripleStore, enabled: Criteria, batch: &Batch) -> Option<usize> {
    if p.relabeled || g.relabeled {
        return None;
    }
    let lp = p.lm();
    let (ap, ag) = (&p.anc, &g.anc);
    if enabled.c1 && ap.mul(ag) == *lp {
        return Some(0);
    }
    let l = ap.lcm(ag);
    if enabled.c2 && l.properly_divides(lp) {
        return Some(1);
    }
    if enabled.c3
        && t.iter().any(|(_, r)| {
            r.lm().lcm(ap).properly_divides(&l) && r.lm().lcm(ag).properly_divides(&l)
        })
    {
        return Some(2);
    }
    if enabled.c4 {
        if let Some(f) = p.parent {
            let hit = t.iter().any(|(slot, r)| {
                slot < f
                    && !r.relabeled
                    && batch.contains(&(slot, lp.clone()))
                    && lp
                        .try_div(r.lm())
                        .filter(|q| q.degree() == 1)
                        .and_then(|q| q.exps().iter().position(|&e| e == 1))
                        .is_some_and(|y| t.non_multiplicative(slot).contains(y))
                    && ap.lcm(&r.anc).properly_divides(lp)
            });
            if hit {
                return Some(3);
            }
        }
    }
    None
}

/// Outcome of a head normal form computation for one queue element.
#[derive(Clone, Debug)]
pub struct HeadOutcome {
    pub result: Polynomial,
    pub criterion: Option<usize>,
    pub pair: Option<(Monomial, Monomial)>,
    pub trace: ReductionTrace,
}

/// Involutive head normal form of `pol(p)` modulo `t`; zero when a criterion
/// applies to a prolongation.
pub fn head_normal_form(p: &Triple, t: &TripleStore, criteria: Criteria, batch: &Batch) -> Result<HeadOutcome> {
    let mut out = HeadOutcome {
        result: p.pol.clone(),
        criterion: None,
        pair: None,
        trace: ReductionTrace::default(),
    };
    let Some(gslot) = t.divisor_slot(p.lm())? else {
        return Ok(out);
    };
    if !p.is_own_ancestor() {
        let g = t.get(gslot).expect("live divisor");
        out.pair = Some((p.anc.clone(), g.anc.clone()));
        if let Some(c) = criteria_check(p, g, t, criteria, batch) {
            out.criterion = Some(c);
            out.result = Polynomial::zero(p.pol.nvars(), p.pol.order());
            return Ok(out);
        }
    }
    out.result = reduce_head(&p.pol, t, &mut out.trace)?;
    Ok(out)
}

fn compute_outcomes(
    items: &[Triple],
    t: &TripleStore,
    criteria: Criteria,
    workers: usize,
) -> Result<Vec<HeadOutcome>> {
    let batch: Batch = items
        .iter()
        .filter(|p| !p.is_own_ancestor())
        .filter_map(|p| p.parent.map(|f| (f, p.lm().clone())))
        .collect();
    let batch = &batch;
    if workers <= 1 || items.len() < 2 {
        return items.iter().map(|p| head_normal_form(p, t, criteria, batch)).collect();
    }
    let chunk = items.len().div_ceil(workers);
    let lanes: Vec<Result<Vec<HeadOutcome>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || {
                    part.iter()
                        .map(|p| head_normal_form(p, t, criteria, batch))
                        .collect::<Result<Vec<_>>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("head reduction lane panicked"))
            .collect()
    });
    let mut out = Vec::with_capacity(items.len());
    for lane in lanes {
        out.extend(lane?);
    }
    Ok(out)
}

/// Index of the queue element chosen by `selection`.
pub fn select_from_queue(q: &[Triple], order: MonomialOrder, selection: Selection) -> Result<usize> {
    let keys: Vec<(&Monomial, u64)> = q.iter().map(|t| (t.lm(), t.qseq)).collect();
    select_index(&keys, order, selection).ok_or(Error::EmptySet)
}

fn select_index(keys: &[(&Monomial, u64)], order: MonomialOrder, selection: Selection) -> Option<usize> {
    use std::cmp::Ordering;
    let by = |a: &(&Monomial, u64), b: &(&Monomial, u64), largest: bool| -> Ordering {
        let deg = a.0.degree().cmp(&b.0.degree());
        let mono = if largest {
            order.cmp(b.0, a.0)
        } else {
            order.cmp(a.0, b.0)
        };
        deg.then(mono).then(a.1.cmp(&b.1))
    };
    let idx = 0..keys.len();
    match selection {
        Selection::DegreeThenSmallest => idx.min_by(|&i, &j| by(&keys[i], &keys[j], false)),
        Selection::DegreeThenLargest => idx.min_by(|&i, &j| by(&keys[i], &keys[j], true)),
        Selection::Smallest => {
            idx.min_by(|&i, &j| order.cmp(keys[i].0, keys[j].0).then(keys[i].1.cmp(&keys[j].1)))
        }
        Selection::Fifo => idx
            .filter(|&i| !keys.iter().any(|(u, _)| u.properly_divides(keys[i].0)))
            .min_by_key(|&i| keys[i].1),
    }
}

fn prepare_input(input: &[Polynomial], order: MonomialOrder) -> Result<Vec<Polynomial>> {
    let mut out: Vec<Polynomial> = Vec::new();
    let nvars = input.first().map(Polynomial::nvars);
    for p in input {
        if Some(p.nvars()) != nvars {
            return Err(Error::ArityMismatch {
                expected: nvars.unwrap_or(0),
                found: p.nvars(),
            });
        }
        if p.is_zero() {
            continue;
        }
        let p = if p.order() == order {
            p.clone()
        } else {
            p.with_order(order)
        }
        .primitive();
        if !out.contains(&p) {
            out.push(p);
        }
    }
    Ok(out)
}

fn sort_desc(polys: &mut [Polynomial], order: MonomialOrder) {
    polys.sort_by(|a, b| order.cmp(b.lm(), a.lm()));
}

/// Elements whose leading monomial has no proper divisor among the others.
fn minimal_lm_elements(polys: &[Polynomial]) -> Vec<Polynomial> {
    polys
        .iter()
        .filter(|p| !polys.iter().any(|q| q.lm().properly_divides(p.lm())))
        .cloned()
        .collect()
}

struct Engine<'c> {
    cfg: &'c EngineConfig,
    t: TripleStore,
    q: Vec<Triple>,
    /// Queue elements already head reduced against the current basis part
    /// (only tracked in partial mode).
    reduced: Vec<bool>,
    next_id: u64,
    passes: u64,
    stats: CompletionStats,
}

impl<'c> Engine<'c> {
    fn new(cfg: &'c EngineConfig, nvars: usize) -> Self {
        Engine {
            cfg,
            t: TripleStore::new(cfg.division, nvars),
            q: Vec::new(),
            reduced: Vec::new(),
            next_id: 0,
            passes: 0,
            stats: CompletionStats::default(),
        }
    }

    fn fresh_id(&mut self) -> u64 {
        self.next_id += 1;
        self.next_id
    }

    fn push_queue(&mut self, mut t: Triple, keep_stamp: bool) {
        if !keep_stamp {
            t.qseq = self.fresh_id();
        }
        self.q.push(t);
        self.reduced.push(false);
    }

    fn can_seed(polys: &[Polynomial]) -> bool {
        polys.iter().enumerate().all(|(i, p)| {
            polys
                .iter()
                .enumerate()
                .all(|(j, q)| i == j || !q.lm().divides(p.lm()))
        })
    }

    fn init(&mut self, polys: Vec<Polynomial>) -> Result<()> {
        if self.cfg.seed_whole_input && Engine::can_seed(&polys) {
            for p in polys {
                let id = self.fresh_id();
                self.t.insert(Triple::fresh(p, id))?;
                self.stats.insertions += 1;
            }
            let updates: Vec<(usize, Polynomial)> = self
                .t
                .iter()
                .map(|(s, tr)| {
                    let mut trace = ReductionTrace::default();
                    let r = reduce_from(&tr.pol, 1, &self.t, &mut trace);
                    r.map(|p| (s, p, trace))
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .map(|(s, p, trace)| {
                    self.stats.absorb_trace(&trace, false);
                    (s, p)
                })
                .collect();
            for (s, p) in updates {
                self.t.set_pol(s, p);
            }
        } else {
            let fresh: Vec<Triple> = polys
                .into_iter()
                .map(|p| {
                    let id = self.fresh_id();
                    Triple::fresh(p, id)
                })
                .collect();
            let first = select_from_queue(&fresh, self.cfg.order, self.cfg.selection)?;
            for (i, tr) in fresh.into_iter().enumerate() {
                if i == first {
                    self.t.insert(tr)?;
                    self.stats.insertions += 1;
                } else {
                    self.push_queue(tr, true);
                }
            }
        }
        self.prolong_all()?;
        self.head_reduce()
    }

    fn prolong_all(&mut self) -> Result<()> {
        let generation = self.passes;
        self.passes += 1;
        let mut new_items = Vec::new();
        let slots: Vec<usize> = self.t.slots().to_vec();
        for s in slots {
            let nm = self.t.non_multiplicative(s);
            let tr = self.t.get(s).expect("live slot");
            let fresh = nm.difference(tr.nmp);
            for x in fresh.iter() {
                let pol = tr.pol.mul_var(x);
                if self.cfg.degree_bound > 0 && pol.lm().degree() > self.cfg.degree_bound {
                    return Err(Error::BoundExceeded {
                        degree: pol.lm().degree(),
                        bound: self.cfg.degree_bound,
                    });
                }
                if self.cfg.record_prolongations {
                    self.stats.prolongation_log.push(ProlongationRecord {
                        generation,
                        parent: tr.pol.clone(),
                        var: x,
                    });
                }
                new_items.push(Triple {
                    pol,
                    anc: tr.anc.clone(),
                    anc_id: tr.anc_id,
                    nmp: VarSet::EMPTY,
                    parent: Some(s),
                    qseq: 0,
                    relabeled: tr.relabeled,
                });
            }
            let updated = tr.nmp.intersection(nm).union(fresh);
            self.t.slots[s].as_mut().expect("live slot").nmp = updated;
        }
        self.stats.prolongations += new_items.len() as u64;
        for item in new_items {
            self.push_queue(item, false);
        }
        Ok(())
    }

    /// Head reduces the queue against the basis part. In partial mode only
    /// the unreduced elements of minimal degree are processed.
    fn head_reduce(&mut self) -> Result<()> {
        let mut chosen: Vec<usize> = (0..self.q.len()).filter(|&i| !self.reduced[i]).collect();
        if self.partial() {
            if let Some(d) = chosen.iter().map(|&i| self.q[i].lm().degree()).min() {
                chosen.retain(|&i| self.q[i].lm().degree() == d);
            }
        }
        if chosen.is_empty() {
            return Ok(());
        }
        let mut take = vec![false; self.q.len()];
        for &i in &chosen {
            take[i] = true;
        }
        let mut work = Vec::with_capacity(chosen.len());
        let mut keep = Vec::with_capacity(self.q.len() - chosen.len());
        let mut keep_flags = Vec::with_capacity(keep.capacity());
        for (i, (tr, flag)) in std::mem::take(&mut self.q)
            .into_iter()
            .zip(std::mem::take(&mut self.reduced))
            .enumerate()
        {
            if take[i] {
                work.push(tr);
            } else {
                keep.push(tr);
                keep_flags.push(flag);
            }
        }
        // ancestors first, so that a vanished ancestor purges all of its
        // descendants in this pass
        work.sort_by_key(|tr| (!tr.is_own_ancestor(), tr.qseq));

        let outcomes = compute_outcomes(&work, &self.t, self.cfg.criteria, self.cfg.workers)?;

        let mut purged: HashSet<u64> = HashSet::new();
        let mut results = Vec::with_capacity(work.len());
        for (tr, out) in work.into_iter().zip(outcomes) {
            if !tr.is_own_ancestor() && purged.contains(&tr.anc_id) {
                self.stats.purged += 1;
                continue;
            }
            if let Some(pair) = out.pair {
                *self.stats.pairs.entry(pair).or_insert(0) += 1;
            }
            self.stats.absorb_trace(&out.trace, true);
            if let Some(c) = out.criterion {
                self.stats.criteria_hits[c] += 1;
                continue;
            }
            if out.result.is_zero() {
                self.stats.zero_reductions += 1;
                if tr.is_own_ancestor() {
                    purged.insert(tr.anc_id);
                }
                continue;
            }
            if out.result.lm() != tr.lm() {
                let id = self.fresh_id();
                let mut fresh = Triple::fresh(out.result, id);
                fresh.qseq = tr.qseq;
                results.push(fresh);
            } else {
                results.push(tr);
            }
        }
        self.q = keep;
        self.reduced = keep_flags;
        for tr in results {
            self.q.push(tr);
            self.reduced.push(true);
        }
        // stable queue order independent of lane layout
        let order = self.cfg.order;
        let mut paired: Vec<(Triple, bool)> =
            std::mem::take(&mut self.q).into_iter().zip(std::mem::take(&mut self.reduced)).collect();
        paired.sort_by(|(a, _), (b, _)| {
            a.lm()
                .degree()
                .cmp(&b.lm().degree())
                .then(order.cmp(a.lm(), b.lm()))
                .then(a.qseq.cmp(&b.qseq))
        });
        let (q, r): (Vec<Triple>, Vec<bool>) = paired.into_iter().unzip();
        self.q = q;
        self.reduced = r;
        Ok(())
    }

    fn partial(&self) -> bool {
        self.cfg.partial_head_reduction && self.cfg.order.is_degree_compatible()
    }

    fn mark_all_unreduced(&mut self) {
        self.reduced.iter_mut().for_each(|r| *r = false);
    }

    /// Next queue element that is head irreducible modulo the basis part.
    fn select(&mut self) -> Result<Option<Triple>> {
        loop {
            if self.q.is_empty() {
                return Ok(None);
            }
            let i = select_from_queue(&self.q, self.cfg.order, self.cfg.selection)?;
            if self.reduced[i] {
                self.reduced.remove(i);
                return Ok(Some(self.q.remove(i)));
            }
            self.head_reduce()?;
            if !self.partial() {
                // a full pass leaves nothing unreduced
                debug_assert!(self.reduced.iter().all(|&r| r));
            }
        }
    }

    fn step(&mut self, p: Triple) -> Result<()> {
        let mut changed = false;
        if p.is_own_ancestor() {
            let victims: Vec<usize> = self
                .t
                .iter()
                .filter(|(_, q)| p.lm().properly_divides(q.lm()))
                .map(|(s, _)| s)
                .collect();
            for s in victims {
                let q = self.t.remove(s)?;
                self.stats.displaced += 1;
                self.push_queue(q, false);
                changed = true;
            }
            // the contraction can put remaining elements into each other's
            // involutive cones
            while changed {
                let Some(s) = self.t.reducible_slot() else { break };
                let q = self.t.remove(s)?;
                self.stats.displaced += 1;
                self.push_queue(q, false);
            }
            let retarget = |tr: &mut Triple| {
                if p.lm().properly_divides(&tr.anc) {
                    tr.anc = p.anc.clone();
                    tr.anc_id = p.anc_id;
                    tr.relabeled = true;
                }
            };
            self.q.iter_mut().for_each(retarget);
            for tr in self.t.slots.iter_mut().flatten() {
                retarget(tr);
            }
        }
        if changed && self.t.divisor_slot(p.lm())?.is_some() {
            // the contraction made the head reducible again
            self.push_queue(p, true);
            self.mark_all_unreduced();
            return self.head_reduce();
        }
        let mut p = p;
        if p.is_own_ancestor() {
            // a conventional divisor already in the basis is a smaller ancestor
            let lower = self
                .t
                .iter()
                .filter(|(_, r)| r.lm().properly_divides(p.lm()))
                .min_by_key(|(s, r)| (r.anc.degree(), *s))
                .map(|(_, r)| (r.anc.clone(), r.anc_id));
            if let Some((anc, anc_id)) = lower {
                p.anc = anc;
                p.anc_id = anc_id;
                p.relabeled = true;
            }
        }
        let mut trace = ReductionTrace::default();
        let h = reduce_from(&p.pol, 1, &self.t, &mut trace)?;
        self.stats.absorb_trace(&trace, false);
        self.t.insert(Triple { pol: h, ..p })?;
        self.stats.insertions += 1;
        self.mark_all_unreduced();
        self.prolong_all()?;
        self.head_reduce()
    }

    fn finish(mut self) -> Result<Completion> {
        let updates: Vec<(usize, Polynomial, ReductionTrace)> = self
            .t
            .iter()
            .map(|(s, tr)| {
                let mut trace = ReductionTrace::default();
                reduce_from(&tr.pol, 1, &self.t, &mut trace).map(|p| (s, p, trace))
            })
            .collect::<Result<_>>()?;
        for (s, p, trace) in updates {
            self.stats.absorb_trace(&trace, false);
            self.t.set_pol(s, p);
        }
        let order = self.cfg.order;
        let mut entries: Vec<(Polynomial, Monomial, bool)> = self
            .t
            .iter()
            .map(|(_, tr)| (tr.pol.clone(), tr.anc.clone(), tr.is_own_ancestor()))
            .collect();
        entries.sort_by(|a, b| order.cmp(b.0.lm(), a.0.lm()));
        let basis: Vec<Polynomial> = entries.iter().map(|e| e.0.clone()).collect();
        let ancestors = entries.iter().map(|e| e.1.clone()).collect();
        let groebner = entries.iter().filter(|e| e.2).map(|e| e.0.clone()).collect();
        for p in &basis {
            self.stats.max_output_bits = self.stats.max_output_bits.max(p.max_coeff_bits());
            self.stats.max_intermediate_bits = self.stats.max_intermediate_bits.max(p.max_coeff_bits());
        }
        Ok(Completion {
            basis,
            ancestors,
            groebner,
            stats: self.stats,
        })
    }
}

fn empty_completion() -> Completion {
    Completion {
        basis: Vec::new(),
        ancestors: Vec::new(),
        groebner: Vec::new(),
        stats: CompletionStats::default(),
    }
}

/// Triple-based completion with head reduction and criteria.
pub fn involutive_basis_v2(input: &[Polynomial], cfg: &EngineConfig) -> Result<Completion> {
    cfg.validate()?;
    let polys = prepare_input(input, cfg.order)?;
    let Some(nvars) = polys.first().map(Polynomial::nvars) else {
        return Ok(empty_completion());
    };
    let mut engine = Engine::new(cfg, nvars);
    engine.init(polys)?;
    while let Some(p) = engine.select()? {
        engine.step(p)?;
    }
    let mut out = engine.finish()?;
    if let Some(lms) = missed_minimal_basis(&out, cfg)? {
        rebuild_minimal(&mut out, &lms, cfg)?;
    }
    Ok(out)
}

/// The leading monomials of the minimal involutive basis, if the completed
/// basis has different ones. Displacement only removes proper multiples of a
/// new element, so on inhomogeneous input a prolongation made for an element
/// that later left the basis can survive it.
fn missed_minimal_basis(out: &Completion, cfg: &EngineConfig) -> Result<Option<MonomialSet>> {
    let gens: Vec<Monomial> = out.groebner.iter().map(|p| p.lm().clone()).collect();
    let Ok(gens) = MonomialSet::from_vec(gens) else {
        return Ok(None);
    };
    let bound = out.basis.iter().map(|p| p.lm().degree()).max().unwrap_or(0);
    let minimal = complete_monomial_set(cfg.division, &gens, cfg.order, bound)?;
    let same = minimal.len() == out.basis.len() && out.basis.iter().all(|p| minimal.contains(p.lm()));
    Ok((!same).then_some(minimal))
}

/// Replaces the basis by multiples of Gröbner elements with the given
/// leading monomials, tail reduced against each other.
fn rebuild_minimal(out: &mut Completion, lms: &MonomialSet, cfg: &EngineConfig) -> Result<()> {
    let mut polys = Vec::with_capacity(lms.len());
    let mut ancestors = Vec::with_capacity(lms.len());
    for m in lms.as_slice() {
        let g = out
            .groebner
            .iter()
            .find(|g| g.lm().divides(m))
            .ok_or_else(|| Error::Precondition(format!("{m} outside the leading monomial ideal")))?;
        let u = m.try_div(g.lm()).expect("divisor checked");
        polys.push(g.mul_monomial(&u));
        ancestors.push(g.lm().clone());
    }
    let set = InvolutiveSet::new(cfg.division, polys.clone())?;
    for p in polys.iter_mut() {
        let mut trace = ReductionTrace::default();
        *p = reduce_from(p, 1, &set, &mut trace)?;
        out.stats.absorb_trace(&trace, false);
    }
    let order = cfg.order;
    let mut entries: Vec<(Polynomial, Monomial)> = polys.into_iter().zip(ancestors).collect();
    entries.sort_by(|a, b| order.cmp(b.0.lm(), a.0.lm()));
    out.stats.max_output_bits = entries.iter().map(|e| e.0.max_coeff_bits()).max().unwrap_or(0);
    out.stats.rebuilds = 1;
    (out.basis, out.ancestors) = entries.into_iter().unzip();
    Ok(())
}

/// The basis and queue after initialisation and after each outer iteration
/// of the simple algorithm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrajectoryRow {
    /// Basis elements sorted by descending leading monomial, each with its
    /// non-multiplicative variables.
    pub basis: Vec<(Polynomial, VarSet)>,
    pub queue: Vec<Polynomial>,
}

/// Simple completion: full involutive normal forms of queue elements and all
/// non-multiplicative prolongations re-queued after every insertion.
pub fn involutive_basis_v1(input: &[Polynomial], cfg: &EngineConfig) -> Result<Completion> {
    involutive_basis_v1_traced(input, cfg).map(|(c, _)| c)
}

pub fn involutive_basis_v1_traced(
    input: &[Polynomial],
    cfg: &EngineConfig,
) -> Result<(Completion, Vec<TrajectoryRow>)> {
    cfg.validate()?;
    let order = cfg.order;
    let polys = prepare_input(input, order)?;
    if polys.is_empty() {
        return Ok((empty_completion(), Vec::new()));
    }
    let mut stats = CompletionStats::default();
    let mut stamp = 0u64;
    let mut q: Vec<(Polynomial, u64)> = Vec::new();
    for p in polys {
        stamp += 1;
        q.push((p, stamp));
    }
    let first = pick(&q, order, cfg.selection);
    let mut g = vec![q.remove(first).0];
    let mut rows = vec![snapshot(&g, &q, cfg)?];

    loop {
        let mut h = Polynomial::zero(g[0].nvars(), order);
        let set = InvolutiveSet::new(cfg.division, g.clone())?;
        while !q.is_empty() && h.is_zero() {
            let i = pick(&q, order, cfg.selection);
            let (p, _) = q.remove(i);
            let mut trace = ReductionTrace::default();
            h = reduce_from(&p, 0, &set, &mut trace)?;
            stats.absorb_trace(&trace, true);
            if h.is_zero() {
                stats.zero_reductions += 1;
            }
        }
        if !h.is_zero() {
            let (moved, stay): (Vec<Polynomial>, Vec<Polynomial>) =
                g.into_iter().partition(|x| h.lm().properly_divides(x.lm()));
            g = stay;
            for x in moved {
                stats.displaced += 1;
                push_unique(&mut q, x, &mut stamp);
            }
            g.push(h);
            stats.insertions += 1;
            let lms: Vec<Monomial> = g.iter().map(|x| x.lm().clone()).collect();
            let sep = compute_separation(cfg.division, &lms)?;
            for (i, x) in g.iter().enumerate() {
                for var in sep.non_multiplicative(i).iter() {
                    let pr = x.mul_var(var);
                    if cfg.degree_bound > 0 && pr.lm().degree() > cfg.degree_bound {
                        return Err(Error::BoundExceeded {
                            degree: pr.lm().degree(),
                            bound: cfg.degree_bound,
                        });
                    }
                    stats.prolongations += 1;
                    push_unique(&mut q, pr, &mut stamp);
                }
            }
        }
        rows.push(snapshot(&g, &q, cfg)?);
        if q.is_empty() {
            break;
        }
    }

    let set = InvolutiveSet::new(cfg.division, g.clone())?;
    let mut basis = Vec::with_capacity(g.len());
    for p in &g {
        let mut trace = ReductionTrace::default();
        basis.push(reduce_from(p, 1, &set, &mut trace)?);
        stats.absorb_trace(&trace, false);
    }
    sort_desc(&mut basis, order);
    for p in &basis {
        stats.max_output_bits = stats.max_output_bits.max(p.max_coeff_bits());
        stats.max_intermediate_bits = stats.max_intermediate_bits.max(p.max_coeff_bits());
    }
    let groebner = minimal_lm_elements(&basis);
    let ancestors = basis
        .iter()
        .map(|p| {
            groebner
                .iter()
                .find(|r| r.lm().divides(p.lm()))
                .map_or_else(|| p.lm().clone(), |r| r.lm().clone())
        })
        .collect();
    let mut out = Completion {
        basis,
        ancestors,
        groebner,
        stats,
    };
    if let Some(lms) = missed_minimal_basis(&out, cfg)? {
        rebuild_minimal(&mut out, &lms, cfg)?;
    }
    Ok((out, rows))
}

fn pick(q: &[(Polynomial, u64)], order: MonomialOrder, selection: Selection) -> usize {
    let keys: Vec<(&Monomial, u64)> = q.iter().map(|(p, s)| (p.lm(), *s)).collect();
    select_index(&keys, order, selection).expect("nonempty queue")
}

fn push_unique(q: &mut Vec<(Polynomial, u64)>, p: Polynomial, stamp: &mut u64) {
    if !q.iter().any(|(x, _)| *x == p) {
        *stamp += 1;
        q.push((p, *stamp));
    }
}

fn snapshot(g: &[Polynomial], q: &[(Polynomial, u64)], cfg: &EngineConfig) -> Result<TrajectoryRow> {
    let mut g: Vec<Polynomial> = g.to_vec();
    sort_desc(&mut g, cfg.order);
    let lms: Vec<Monomial> = g.iter().map(|x| x.lm().clone()).collect();
    let sep = compute_separation(cfg.division, &lms)?;
    Ok(TrajectoryRow {
        basis: g
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), sep.non_multiplicative(i)))
            .collect(),
        queue: q.iter().map(|(p, _)| p.clone()).collect(),
    })
}

/// First non-multiplicative prolongation `basis[i] * x_var` whose involutive
/// normal form is nonzero, or `None` when the basis is involutive.
pub fn involutivity_witness(
    basis: &[Polynomial],
    order: MonomialOrder,
    division: Division,
) -> Result<Option<(usize, usize)>> {
    if basis.is_empty() {
        return Ok(None);
    }
    let set = InvolutiveSet::new(division, basis.iter().map(|p| p.with_order(order)).collect())?;
    for (i, p) in set.polys().iter().enumerate() {
        for var in set.separation().non_multiplicative(i).iter() {
            let nf = reduce_from(&p.mul_var(var), 0, &set, &mut ReductionTrace::default())?;
            if !nf.is_zero() {
                return Ok(Some((i, var)));
            }
        }
    }
    Ok(None)
}

/// Reduced Gröbner basis read off a completed involutive basis: the
/// elements that are their own ancestors.
pub fn extract_groebner(completion: &Completion) -> Vec<Polynomial> {
    completion
        .basis
        .iter()
        .zip(&completion.ancestors)
        .filter(|(p, a)| p.lm() == *a)
        .map(|(p, _)| p.clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::buchberger::buchberger_reduced_gb;
    use MonomialOrder::{DegRevLex, Lex};

    fn p(order: MonomialOrder, terms: &[(i64, &[u32])]) -> Polynomial {
        Polynomial::from_exps(order, terms)
    }

    fn cubic_pair() -> Vec<Polynomial> {
        vec![
            p(Lex, &[(1, &[2, 1]), (-1, &[0, 0])]),
            p(Lex, &[(1, &[1, 2]), (-1, &[0, 0])]),
        ]
    }

    fn expected34() -> Vec<Polynomial> {
        vec![
            p(Lex, &[(1, &[1, 0]), (-1, &[0, 1])]),
            p(Lex, &[(1, &[0, 3]), (-1, &[0, 0])]),
        ]
    }

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn cubic_pair_both_algorithms() {
        let cfg = EngineConfig::new(Lex, Division::Janet);
        let v2 = involutive_basis_v2(&cubic_pair(), &cfg).unwrap();
        assert_eq!(v2.basis, expected34());
        assert_eq!(v2.groebner, expected34());
        assert!(v2.stats.criteria_hits[0] >= 1);
        let v1 = involutive_basis_v1(&cubic_pair(), &cfg).unwrap();
        assert_eq!(v1.basis, expected34());
        let again = involutive_basis_v2(&expected34(), &cfg).unwrap();
        assert_eq!(again.basis, expected34());
    }

    #[test]
    fn traced_rows() {
        let cfg = EngineConfig {
            selection: Selection::Smallest,
            ..EngineConfig::new(Lex, Division::Janet)
        };
        let (_, rows) = involutive_basis_v1_traced(&cubic_pair(), &cfg).unwrap();
        let x = VarSet::from_indices([0]);
        let e = VarSet::EMPTY;
        let f1 = p(Lex, &[(1, &[2, 1]), (-1, &[0, 0])]);
        let f2 = p(Lex, &[(1, &[1, 2]), (-1, &[0, 0])]);
        let xy = p(Lex, &[(1, &[1, 0]), (-1, &[0, 1])]);
        let y3 = p(Lex, &[(1, &[0, 3]), (-1, &[0, 0])]);
        let x2y2 = p(Lex, &[(1, &[2, 2]), (-1, &[1, 0])]);
        let xy3 = p(Lex, &[(1, &[1, 3]), (-1, &[1, 0])]);
        let want: Vec<(Vec<(Polynomial, VarSet)>, Vec<Polynomial>)> = vec![
            (vec![(f2.clone(), e)], vec![f1.clone()]),
            (vec![(f1.clone(), e), (f2.clone(), x)], vec![x2y2]),
            (vec![(xy.clone(), e)], vec![f2.clone(), f1.clone()]),
            (vec![(xy.clone(), e), (y3.clone(), x)], vec![f1.clone(), xy3]),
            (vec![(xy.clone(), e), (y3.clone(), x)], vec![]),
        ];
        assert_eq!(rows.len(), want.len());
        for (row, (g, q)) in rows.iter().zip(want) {
            assert_eq!(row.basis, g);
            let mut got = row.queue.clone();
            let mut q = q;
            got.sort_by(|a, b| Lex.cmp(a.lm(), b.lm()));
            q.sort_by(|a, b| Lex.cmp(a.lm(), b.lm()));
            assert_eq!(got, q);
        }
    }

    #[test]
    fn criteria_examples() {
        let none = Batch::new();
        let mut t = TripleStore::new(Division::Janet, 2);
        let g = Triple::fresh(p(Lex, &[(1, &[1, 0]), (-1, &[0, 1])]), 1);
        t.insert(g.clone()).unwrap();
        let y3 = p(Lex, &[(1, &[0, 3]), (-1, &[0, 0])]);
        let pr = Triple {
            pol: y3.mul_var(0),
            anc: m(&[0, 3]),
            anc_id: 2,
            nmp: VarSet::EMPTY,
            parent: None,
            qseq: 3,
            relabeled: false,
        };
        assert_eq!(criteria_check(&pr, &g, &t, Criteria::ALL, &none), Some(0));
        assert_eq!(criteria_check(&pr, &g, &t, Criteria::NONE, &none), None);
        let out = head_normal_form(&pr, &t, Criteria::ALL, &none).unwrap();
        assert!(out.result.is_zero());
        assert_eq!(out.criterion, Some(0));

        let c2p = Triple {
            pol: Polynomial::monomial(Lex, m(&[2, 2])),
            anc: m(&[2, 0]),
            anc_id: 5,
            nmp: VarSet::EMPTY,
            parent: None,
            qseq: 6,
            relabeled: false,
        };
        let c2g = Triple {
            pol: Polynomial::monomial(Lex, m(&[1, 1])),
            anc: m(&[1, 1]),
            anc_id: 7,
            nmp: VarSet::EMPTY,
            parent: None,
            qseq: 7,
            relabeled: false,
        };
        let only_c2 = Criteria {
            c2: true,
            ..Criteria::NONE
        };
        assert_eq!(criteria_check(&c2p, &c2g, &t, only_c2, &none), Some(1));
        assert_eq!(criteria_check(&c2p, &c2g, &t, Criteria::prefix(1), &none), None);
    }

    #[test]
    fn head_irreducible_is_returned_unchanged() {
        let mut t = TripleStore::new(Division::Janet, 2);
        t.insert(Triple::fresh(p(Lex, &[(1, &[0, 3]), (-1, &[0, 0])]), 1)).unwrap();
        let q = Triple::fresh(p(Lex, &[(1, &[1, 0]), (-1, &[0, 1])]), 2);
        let out = head_normal_form(&q, &t, Criteria::ALL, &Batch::new()).unwrap();
        assert_eq!(out.result, q.pol);
        assert_eq!(out.trace.steps, 0);
    }

    #[test]
    fn selection_rules() {
        let f = cubic_pair();
        let q: Vec<Triple> = f.iter().enumerate().map(|(i, x)| Triple::fresh(x.clone(), i as u64)).collect();
        for s in Selection::VARIANTS {
            // both have degree three; lex-smallest is x*y^2
            let i = select_from_queue(&q, Lex, s).unwrap();
            if s != Selection::DegreeThenLargest && s != Selection::Fifo {
                assert_eq!(q[i].lm(), &m(&[1, 2]));
            }
        }
        assert_eq!(select_from_queue(&q[..1], Lex, Selection::Smallest).unwrap(), 0);
        assert!(matches!(select_from_queue(&[], Lex, Selection::Smallest), Err(Error::EmptySet)));
        let div = vec![
            Triple::fresh(Polynomial::monomial(DegRevLex, m(&[2, 1])), 0),
            Triple::fresh(Polynomial::monomial(DegRevLex, m(&[1, 0])), 1),
        ];
        for s in Selection::VARIANTS {
            assert_eq!(select_from_queue(&div, DegRevLex, s).unwrap(), 1);
        }
    }

    #[test]
    fn pommaret_needs_a_bound() {
        let cfg = EngineConfig::new(Lex, Division::Pommaret);
        assert!(matches!(involutive_basis_v2(&cubic_pair(), &cfg), Err(Error::InvalidConfig(_))));
        let cfg = EngineConfig {
            degree_bound: 20,
            ..cfg
        };
        let r = involutive_basis_v2(&cubic_pair(), &cfg).unwrap();
        assert_eq!(r.groebner, expected34());
        assert_eq!(involutivity_witness(&r.basis, Lex, Division::Pommaret).unwrap(), None);
    }

    #[test]
    fn single_pommaret_input_is_prolonged() {
        // x2 alone has x1 non-multiplicative; (x2) has no finite Pommaret basis
        let cfg = EngineConfig {
            degree_bound: 6,
            ..EngineConfig::new(DegRevLex, Division::Pommaret)
        };
        let y = Polynomial::monomial(DegRevLex, m(&[0, 1]));
        assert!(matches!(
            involutive_basis_v2(&[y], &cfg),
            Err(Error::BoundExceeded { .. })
        ));
        let x = Polynomial::monomial(DegRevLex, m(&[1, 0]));
        let r = involutive_basis_v2(&[x.clone()], &cfg).unwrap();
        assert_eq!(r.basis, vec![x]);
    }

    #[test]
    fn seeded_start_prolongs_two_elements() {
        let o = DegRevLex;
        let f = vec![
            p(o, &[(1, &[1, 1, 0]), (-1, &[0, 0, 0])]),
            p(o, &[(1, &[1, 0, 1]), (-1, &[0, 0, 0])]),
            p(o, &[(1, &[0, 1, 1]), (-1, &[0, 0, 0])]),
        ];
        let cfg = EngineConfig {
            seed_whole_input: true,
            record_prolongations: true,
            ..EngineConfig::new(o, Division::Janet)
        };
        let r = involutive_basis_v2(&f, &cfg).unwrap();
        let first: Vec<(Polynomial, usize)> = r
            .stats
            .prolongation_log
            .iter()
            .filter(|rec| rec.generation == 0)
            .map(|rec| (rec.parent.clone(), rec.var))
            .collect();
        assert_eq!(first, vec![(f[1].clone(), 1), (f[2].clone(), 0)]);
        assert_eq!(r.stats.pair_count(&m(&[1, 0, 1]), &m(&[0, 1, 1])), 0);
        assert_eq!(r.groebner, buchberger_reduced_gb(&f, o).unwrap());
    }

    #[test]
    fn criteria_parsing() {
        assert_eq!(Criteria::parse("none").unwrap(), Criteria::NONE);
        assert_eq!(Criteria::parse("1,2").unwrap(), Criteria::prefix(2));
        assert_eq!(Criteria::parse("1,2,3,4").unwrap(), Criteria::ALL);
        assert!(Criteria::parse("5").is_err());
        assert_eq!(Criteria::prefix(3).to_string(), "1,2,3");
    }
}
