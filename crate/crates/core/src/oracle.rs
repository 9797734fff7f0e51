//! Exhaustive enumeration of small trees and systems, and brute-force
//! equation solving over them. Used as ground truth for the solvers.

use std::collections::{BTreeMap, HashSet};

use crate::fdds::Fdds;
use crate::tree::{Forest, Tree};
use crate::unroll::PeriodicPattern;

/// Largest node count the oracle will enumerate.
pub const MAX_ORACLE_NODES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_nodes: usize,
    pub connected_only: bool,
    /// Largest cycle length allowed in a component, if any.
    pub max_cycle: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("budget of {0} nodes exceeds the oracle limit of {MAX_ORACLE_NODES}")]
    Budget(usize),
}

impl EnumerationBudget {
    pub fn new(max_nodes: usize) -> EnumerationBudget {
        EnumerationBudget {
            max_nodes,
            connected_only: false,
            max_cycle: None,
        }
    }

    pub fn connected(mut self) -> EnumerationBudget {
        self.connected_only = true;
        self
    }

    fn check(&self) -> Result<(), OracleError> {
        if self.max_nodes > MAX_ORACLE_NODES {
            Err(OracleError::Budget(self.max_nodes))
        } else {
            Ok(())
        }
    }
}

/// Isomorphism classes of trees and systems, generated by size on demand.
#[derive(Default)]
pub struct Catalog {
    trees: Vec<Vec<Tree>>,
    connected: Vec<Vec<Fdds>>,
    all: Vec<Vec<Fdds>>,
}

impl Catalog {
    pub fn new() -> Catalog {
        Catalog::default()
    }

    /// All trees with exactly `n >= 1` nodes, ascending.
    pub fn trees(&mut self, n: usize) -> &[Tree] {
        if self.trees.is_empty() {
            self.trees.push(Vec::new());
        }
        while self.trees.len() <= n {
            let size = self.trees.len();
            let mut out = Vec::new();
            let pool: Vec<Tree> = self.trees[1..size].iter().flatten().cloned().collect();
            let mut current = Vec::new();
            forests_of_size(&pool, 0, size as u64 - 1, &mut current, &mut |f| {
                out.push(Tree::attach_root(Forest::from_trees(f.iter().cloned())));
            });
            out.sort();
            out.dedup();
            self.trees.push(out);
        }
        &self.trees[n]
    }

    /// All connected systems with exactly `n >= 1` nodes, by canonical form.
    pub fn connected(&mut self, n: usize) -> &[Fdds] {
        if self.connected.is_empty() {
            self.connected.push(Vec::new());
        }
        while self.connected.len() <= n {
            let size = self.connected.len();
            self.trees(size);
            let mut seen = HashSet::new();
            let mut out = Vec::new();
            let mut current = Vec::new();
            let trees = &self.trees;
            necklaces(trees, size, &mut current, &mut |seq| {
                let x = PeriodicPattern::new(seq.to_vec()).roll();
                if seen.insert(x.canonical_form()) {
                    out.push(x.canonical_relabel());
                }
            });
            out.sort_by_key(|x| x.canonical_form());
            self.connected.push(out);
        }
        &self.connected[n]
    }

    /// All systems with exactly `n` nodes; `n = 0` gives the empty system.
    pub fn all(&mut self, n: usize) -> &[Fdds] {
        while self.all.len() <= n {
            let size = self.all.len();
            let mut pool: Vec<Fdds> = Vec::new();
            for s in 1..=size {
                pool.extend(self.connected(s).iter().cloned());
            }
            let mut out = Vec::new();
            let mut current: Vec<usize> = Vec::new();
            multisets(&pool, 0, size, &mut current, &mut |idx| {
                let x = idx.iter().fold(Fdds::empty(), |acc, &i| acc.sum(&pool[i]));
                out.push(x.canonical_relabel());
            });
            out.sort_by_key(|x| x.canonical_form());
            self.all.push(out);
        }
        &self.all[n]
    }

    /// Classes of exactly `n` nodes, connected or not as requested.
    pub fn classes(&mut self, n: usize, connected: bool) -> &[Fdds] {
        if connected {
            if n == 0 {
                return &[];
            }
            self.connected(n)
        } else {
            self.all(n)
        }
    }
}

/// Multisets of trees from `pool[start..]` with total size `remaining`.
fn forests_of_size(
    pool: &[Tree],
    start: usize,
    remaining: u64,
    current: &mut Vec<Tree>,
    emit: &mut dyn FnMut(&[Tree]),
) {
    if remaining == 0 {
        emit(current);
        return;
    }
    for i in start..pool.len() {
        let s = pool[i].size();
        if s <= remaining {
            current.push(pool[i].clone());
            forests_of_size(pool, i, remaining - s, current, emit);
            current.pop();
        }
    }
}

/// Sequences of trees with total size `remaining`.
fn necklaces(
    trees: &[Vec<Tree>],
    remaining: usize,
    current: &mut Vec<Tree>,
    emit: &mut dyn FnMut(&[Tree]),
) {
    if remaining == 0 {
        if !current.is_empty() {
            emit(current);
        }
        return;
    }
    for s in 1..=remaining {
        for t in &trees[s] {
            current.push(t.clone());
            necklaces(trees, remaining - s, current, emit);
            current.pop();
        }
    }
}

/// Multisets of indices into `pool` (non-decreasing) with total node count `remaining`.
fn multisets(
    pool: &[Fdds],
    start: usize,
    remaining: usize,
    current: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    if remaining == 0 {
        emit(current);
        return;
    }
    for i in start..pool.len() {
        if pool[i].len() <= remaining {
            current.push(i);
            multisets(pool, i, remaining - pool[i].len(), current, emit);
            current.pop();
        }
    }
}

/// Streams every class with at most `budget.max_nodes` nodes, by size.
pub fn enumerate_fdds(
    budget: EnumerationBudget,
) -> Result<impl Iterator<Item = Fdds>, OracleError> {
    budget.check()?;
    let mut catalog = Catalog::new();
    Ok((1..=budget.max_nodes).flat_map(move |n| {
        let classes = catalog.classes(n, budget.connected_only).to_vec();
        classes.into_iter().filter(move |x| match budget.max_cycle {
            Some(c) => x.components().iter().all(|comp| comp.period() <= c),
            None => true,
        })
    }))
}

/// All trees with at most `max_nodes` nodes.
pub fn enumerate_trees(max_nodes: usize) -> Result<impl Iterator<Item = Tree>, OracleError> {
    if max_nodes > MAX_ORACLE_NODES {
        return Err(OracleError::Budget(max_nodes));
    }
    let mut catalog = Catalog::new();
    Ok((1..=max_nodes).flat_map(move |n| catalog.trees(n).to_vec()))
}

/// Every `X` (optionally connected) with `A X ≅ B`.
pub fn brute_divide(a: &Fdds, b: &Fdds, connected: bool) -> Result<Vec<Fdds>, OracleError> {
    brute_divide_in(&mut Catalog::new(), a, b, connected)
}

/// [`brute_divide`] reusing the classes of an existing catalog.
pub fn brute_divide_in(
    catalog: &mut Catalog,
    a: &Fdds,
    b: &Fdds,
    connected: bool,
) -> Result<Vec<Fdds>, OracleError> {
    if a.is_empty() {
        return Ok(if b.is_empty() && !connected {
            vec![Fdds::empty()]
        } else {
            Vec::new()
        });
    }
    if !b.len().is_multiple_of(a.len()) {
        return Ok(Vec::new());
    }
    let s = b.len() / a.len();
    if s > MAX_ORACLE_NODES {
        return Err(OracleError::Budget(s));
    }
    let target = b.canonical_form();
    Ok(catalog
        .classes(s, connected)
        .iter()
        .filter(|x| a.product(x).canonical_form() == target)
        .cloned()
        .collect())
}

/// Integer `k`-th root of `m`, if exact.
pub fn exact_root(m: usize, k: u32) -> Option<usize> {
    if k == 0 {
        return None;
    }
    (0..=m)
        .find(|s| s.checked_pow(k).is_some_and(|v| v >= m))
        .filter(|s| s.pow(k) == m)
}

/// Every `X` (optionally connected) with `X^k ≅ A`.
pub fn brute_root(a: &Fdds, k: u32, connected: bool) -> Result<Vec<Fdds>, OracleError> {
    brute_root_in(&mut Catalog::new(), a, k, connected)
}

/// [`brute_root`] reusing the classes of an existing catalog.
pub fn brute_root_in(
    catalog: &mut Catalog,
    a: &Fdds,
    k: u32,
    connected: bool,
) -> Result<Vec<Fdds>, OracleError> {
    let Some(s) = exact_root(a.len(), k) else {
        return Ok(Vec::new());
    };
    if s > MAX_ORACLE_NODES {
        return Err(OracleError::Budget(s));
    }
    let target = a.canonical_form();
    Ok(catalog
        .classes(s, connected)
        .iter()
        .filter(|x| x.power(k).canonical_form() == target)
        .cloned()
        .collect())
}

/// Every tree `x` with `depth(x) = depth(b)` and `a x = b`.
///
/// Level counts multiply under the product, so the size of any quotient is
/// known in advance and only trees of that size are tried.
pub fn brute_tree_divide(b: &Tree, a: &Tree) -> Result<Vec<Tree>, OracleError> {
    if a.depth() < b.depth() {
        return Ok(Vec::new());
    }
    let (lb, la) = (b.level_counts(), a.level_counts());
    let mut size = 0u64;
    for (nb, na) in lb.iter().zip(&la) {
        if nb % na != 0 {
            return Ok(Vec::new());
        }
        size += nb / na;
    }
    let size = size as usize;
    if size > MAX_ORACLE_NODES {
        return Err(OracleError::Budget(size));
    }
    Ok(Catalog::new()
        .trees(size)
        .iter()
        .filter(|x| x.depth() == b.depth() && a.product(x) == *b)
        .cloned()
        .collect())
}

/// Isomorphism invariant of `Unr(A)`: each component contributes its
/// primitive hanging-tree necklace, repeated `period / smallest period` times.
pub fn unroll_signature(a: &Fdds) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for c in a.components() {
        let p = c.period();
        let d = PeriodicPattern::new(c.trees.clone()).smallest_period();
        let comp = PeriodicPattern::new(c.trees[..d].iter().rev().cloned().collect()).roll();
        *out.entry(comp.canonical_form()).or_insert(0) += p / d;
    }
    out
}

/// Every `Sol` with `Unr(A) Unr(Sol) = Unr(B)`, which forces `|Sol| = |B| / |A|`.
pub fn brute_unroll_divide(
    catalog: &mut Catalog,
    a: &Fdds,
    b: &Fdds,
) -> Result<Vec<Fdds>, OracleError> {
    if a.is_empty() || !b.len().is_multiple_of(a.len()) {
        return Ok(Vec::new());
    }
    let s = b.len() / a.len();
    if s > MAX_ORACLE_NODES {
        return Err(OracleError::Budget(s));
    }
    let target = unroll_signature(b);
    Ok(catalog
        .classes(s, false)
        .iter()
        .filter(|x| unroll_signature(&a.product(x)) == target)
        .cloned()
        .collect())
}

/// Isomorphism by exhaustive search over bijections; only for tiny systems.
pub fn isomorphic_by_search(a: &Fdds, b: &Fdds) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(a: &Fdds, b: &Fdds, v: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        let n = a.len();
        if v == n {
            return (0..n).all(|u| map[a.succ(u)] == b.succ(map[u]));
        }
        for w in 0..n {
            if used[w] {
                continue;
            }
            map[v] = w;
            used[w] = true;
            // Prune on already mapped successor pairs.
            let ok = (0..=v).all(|u| {
                let s = a.succ(u);
                s > v || map[s] == b.succ(map[u])
            });
            if ok && go(a, b, v + 1, map, used) {
                return true;
            }
            used[w] = false;
        }
        map[v] = usize::MAX;
        false
    }
    go(a, b, 0, &mut map, &mut used)
}
