//! Janet tree: a search structure over a dynamic monomial set that finds the
//! Janet divisor of a monomial along a single root-to-leaf path.
//!
//! Each level holds a chain of nodes for one variable, sorted by strictly
//! increasing degree. A node's child is either the chain for the next
//! variable or, when only one monomial carries this prefix, the leaf itself.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::poly::Monomial;

#[derive(Clone, Debug)]
struct Node<K> {
    deg: u32,
    child: Child<K>,
}

#[derive(Clone, Debug)]
enum Child<K> {
    Next(Vec<Node<K>>),
    Leaf(Monomial, K),
}

/// Outcome of a divisor search, with the number of nodes inspected.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Query<'a, K> {
    pub divisor: Option<(&'a Monomial, &'a K)>,
    pub visits: usize,
}

#[derive(Clone, Debug)]
pub struct JanetTree<K> {
    nvars: usize,
    root: Vec<Node<K>>,
    len: usize,
}

impl<K> JanetTree<K> {
    pub fn new(nvars: usize) -> Self {
        JanetTree {
            nvars,
            root: Vec::new(),
            len: 0,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn check_arity(&self, u: &Monomial) -> Result<()> {
        if u.nvars() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: u.nvars(),
            });
        }
        Ok(())
    }

    pub fn insert(&mut self, u: Monomial, key: K) -> Result<()> {
        self.check_arity(&u)?;
        if self.nvars == 0 {
            if self.len > 0 {
                return Err(Error::DuplicateMonomial(u.to_string()));
            }
            self.root.push(Node {
                deg: 0,
                child: Child::Leaf(u, key),
            });
            self.len = 1;
            return Ok(());
        }
        insert_into(&mut self.root, 0, u, key)?;
        self.len += 1;
        Ok(())
    }

    /// Removes `u` and returns its key.
    pub fn remove(&mut self, u: &Monomial) -> Result<K> {
        self.check_arity(u)?;
        if self.nvars == 0 {
            return match self.root.pop() {
                Some(Node {
                    child: Child::Leaf(_, k),
                    ..
                }) => {
                    self.len = 0;
                    Ok(k)
                }
                _ => Err(Error::Absent(u.to_string())),
            };
        }
        let key = remove_from(&mut self.root, 0, u)?;
        collapse(&mut self.root);
        self.len -= 1;
        Ok(key)
    }

    pub fn contains(&self, u: &Monomial) -> bool {
        self.get(u).is_some()
    }

    pub fn get(&self, u: &Monomial) -> Option<&K> {
        if u.nvars() != self.nvars {
            return None;
        }
        let mut chain = &self.root;
        let mut var = 0;
        loop {
            let target = if self.nvars == 0 { 0 } else { u.exp(var) };
            let node = chain.iter().find(|n| n.deg == target)?;
            match &node.child {
                Child::Leaf(m, k) => return (m == u).then_some(k),
                Child::Next(next) => {
                    chain = next;
                    var += 1;
                }
            }
        }
    }

    /// The Janet divisor of `w` among the leaves, if any.
    pub fn find_divisor(&self, w: &Monomial) -> Result<Option<(&Monomial, &K)>> {
        Ok(self.query(w)?.divisor)
    }

    pub fn query(&self, w: &Monomial) -> Result<Query<'_, K>> {
        self.check_arity(w)?;
        let mut visits = 0;
        let mut chain = &self.root;
        let mut var = 0;
        loop {
            let mut chosen = None;
            for (i, node) in chain.iter().enumerate() {
                visits += 1;
                let wv = if self.nvars == 0 { 0 } else { w.exp(var) };
                if node.deg == wv || (node.deg < wv && i + 1 == chain.len()) {
                    chosen = Some(node);
                    break;
                }
                if node.deg > wv {
                    break;
                }
            }
            let Some(node) = chosen else {
                return Ok(Query {
                    divisor: None,
                    visits,
                });
            };
            match &node.child {
                Child::Next(next) => {
                    chain = next;
                    var += 1;
                }
                Child::Leaf(u, k) => {
                    visits += 1;
                    let rest_ok = (var + 1..self.nvars).all(|i| u.exp(i) <= w.exp(i));
                    return Ok(Query {
                        divisor: rest_ok.then_some((u, k)),
                        visits,
                    });
                }
            }
        }
    }

    /// All leaves in lexicographic order of their exponent vectors.
    pub fn leaves(&self) -> Vec<(&Monomial, &K)> {
        let mut out = Vec::with_capacity(self.len);
        collect(&self.root, &mut out);
        out
    }

    pub fn max_leaf_degree(&self) -> u32 {
        self.leaves().iter().map(|(u, _)| u.degree()).max().unwrap_or(0)
    }

    /// Checks the ordering and compactness invariants and that every leaf
    /// sits on the path spelled by its own exponents.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let mut prefix = Vec::new();
        let count = check_chain(&self.root, 0, self.nvars, &mut prefix, true)?;
        if count != self.len {
            return Err(format!("leaf count {count} differs from recorded length {}", self.len));
        }
        Ok(())
    }

    /// Indented dump of `(variable, degree)` nodes, variables numbered from 1.
    pub fn render(&self) -> String {
        let mut out = String::from("(1,0)\n");
        render_chain(&self.root, 1, 1, &mut out);
        out
    }
}

fn insert_into<K>(chain: &mut Vec<Node<K>>, var: usize, u: Monomial, key: K) -> Result<()> {
    let d = u.exp(var);
    match chain.binary_search_by_key(&d, |n| n.deg) {
        Err(pos) => {
            chain.insert(
                pos,
                Node {
                    deg: d,
                    child: Child::Leaf(u, key),
                },
            );
            Ok(())
        }
        Ok(pos) => {
            let node = &mut chain[pos];
            match &mut node.child {
                Child::Next(next) => insert_into(next, var + 1, u, key),
                Child::Leaf(existing, _) => {
                    if *existing == u {
                        return Err(Error::DuplicateMonomial(u.to_string()));
                    }
                    let old = std::mem::replace(&mut node.child, Child::Next(Vec::new()));
                    let Child::Leaf(om, ok) = old else { unreachable!() };
                    node.child = Child::Next(split(var + 1, om, ok, u, key));
                    Ok(())
                }
            }
        }
    }
}

/// Chain for `var` holding two distinct monomials that agree before `var`.
fn split<K>(var: usize, a: Monomial, ka: K, b: Monomial, kb: K) -> Vec<Node<K>> {
    let (da, db) = (a.exp(var), b.exp(var));
    if da == db {
        return vec![Node {
            deg: da,
            child: Child::Next(split(var + 1, a, ka, b, kb)),
        }];
    }
    let na = Node {
        deg: da,
        child: Child::Leaf(a, ka),
    };
    let nb = Node {
        deg: db,
        child: Child::Leaf(b, kb),
    };
    if da < db {
        vec![na, nb]
    } else {
        vec![nb, na]
    }
}

fn remove_from<K>(chain: &mut Vec<Node<K>>, var: usize, u: &Monomial) -> Result<K> {
    let absent = || Error::Absent(u.to_string());
    let pos = chain
        .binary_search_by_key(&u.exp(var), |n| n.deg)
        .map_err(|_| absent())?;
    match &mut chain[pos].child {
        Child::Leaf(m, _) => {
            if m != u {
                return Err(absent());
            }
            let node = chain.remove(pos);
            let Child::Leaf(_, k) = node.child else { unreachable!() };
            Ok(k)
        }
        Child::Next(next) => {
            let k = remove_from(next, var + 1, u)?;
            collapse(next);
            if let [only] = next.as_slice() {
                if matches!(only.child, Child::Leaf(..)) {
                    let only = next.pop().expect("single node");
                    chain[pos].child = only.child;
                }
            }
            Ok(k)
        }
    }
}

/// A one-node chain whose child is itself a one-node chain ending in a leaf
/// is shortened so that the leaf hangs as high as possible.
fn collapse<K>(chain: &mut [Node<K>]) {
    for node in chain.iter_mut() {
        if let Child::Next(next) = &mut node.child {
            if let [only] = next.as_mut_slice() {
                if matches!(only.child, Child::Leaf(..)) {
                    let only = next.pop().expect("single node");
                    node.child = only.child;
                }
            }
        }
    }
}

fn collect<'a, K>(chain: &'a [Node<K>], out: &mut Vec<(&'a Monomial, &'a K)>) {
    for node in chain {
        match &node.child {
            Child::Leaf(u, k) => out.push((u, k)),
            Child::Next(next) => collect(next, out),
        }
    }
}

fn count_leaves<K>(chain: &[Node<K>]) -> usize {
    chain
        .iter()
        .map(|n| match &n.child {
            Child::Leaf(..) => 1,
            Child::Next(next) => count_leaves(next),
        })
        .sum()
}

fn check_chain<K>(
    chain: &[Node<K>],
    var: usize,
    nvars: usize,
    prefix: &mut Vec<u32>,
    is_root: bool,
) -> std::result::Result<usize, String> {
    if chain.is_empty() && !is_root {
        return Err(format!("empty chain below prefix {prefix:?}"));
    }
    if nvars > 0 && var >= nvars {
        return Err(format!("chain past the last variable at prefix {prefix:?}"));
    }
    if chain.windows(2).any(|w| w[0].deg >= w[1].deg) {
        return Err(format!("degrees not strictly increasing at prefix {prefix:?}"));
    }
    let mut total = 0;
    for node in chain {
        prefix.push(node.deg);
        match &node.child {
            Child::Leaf(u, _) => {
                if u.exps()[..prefix.len().min(u.nvars())] != prefix[..prefix.len().min(u.nvars())] {
                    return Err(format!("leaf {u} misplaced under prefix {prefix:?}"));
                }
                total += 1;
            }
            Child::Next(next) => {
                if count_leaves(next) < 2 {
                    return Err(format!("non-compact chain under prefix {prefix:?}"));
                }
                total += check_chain(next, var + 1, nvars, prefix, false)?;
            }
        }
        prefix.pop();
    }
    Ok(total)
}

fn render_chain<K>(chain: &[Node<K>], var: usize, depth: usize, out: &mut String) {
    for node in chain {
        let pad = "  ".repeat(depth);
        match &node.child {
            Child::Leaf(u, _) => {
                let _ = writeln!(out, "{pad}({var},{}) -> {u}", node.deg);
            }
            Child::Next(next) => {
                let _ = writeln!(out, "{pad}({var},{})", node.deg);
                render_chain(next, var + 1, depth + 1, out);
            }
        }
    }
}
