use std::collections::HashMap;
use std::fmt;

use super::Tree;

/// A finite multiset of trees, kept sorted in ascending tree order with equal
/// trees merged into a single entry.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Forest {
    entries: Vec<(Tree, u64)>,
}

impl Forest {
    pub fn new() -> Forest {
        Forest::default()
    }

    pub fn from_trees<I: IntoIterator<Item = Tree>>(trees: I) -> Forest {
        Forest::from_entries(trees.into_iter().map(|t| (t, 1)).collect())
    }

    /// Builds a forest from `(tree, multiplicity)` pairs in any order.
    pub fn from_entries(mut entries: Vec<(Tree, u64)>) -> Forest {
        entries.retain(|(_, m)| *m > 0);
        if entries.windows(2).any(|w| w[0].0 >= w[1].0) {
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            let mut merged: Vec<(Tree, u64)> = Vec::with_capacity(entries.len());
            for (t, m) in entries {
                match merged.last_mut() {
                    Some((last, lm)) if *last == t => *lm += m,
                    _ => merged.push((t, m)),
                }
            }
            entries = merged;
        }
        Forest { entries }
    }

    /// Distinct trees with their multiplicities, ascending.
    pub fn entries(&self) -> &[(Tree, u64)] {
        &self.entries
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&Tree, u64)> + ExactSizeIterator {
        self.entries.iter().map(|(t, m)| (t, *m))
    }

    /// Every tree repeated by its multiplicity, ascending.
    pub fn trees(&self) -> impl Iterator<Item = &Tree> {
        self.entries
            .iter()
            .flat_map(|(t, m)| std::iter::repeat_n(t, *m as usize))
    }

    /// Number of trees counted with multiplicity.
    pub fn len(&self) -> u64 {
        self.entries.iter().map(|(_, m)| *m).sum()
    }

    pub fn distinct(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Maximum depth of a tree in the forest; 0 when empty.
    pub fn depth(&self) -> usize {
        self.entries
            .iter()
            .map(|(t, _)| t.depth())
            .max()
            .unwrap_or(0)
    }

    /// Total node count (saturating).
    pub fn size(&self) -> u64 {
        self.entries.iter().fold(0u64, |acc, (t, m)| {
            acc.saturating_add(t.size().saturating_mul(*m))
        })
    }

    pub fn min(&self) -> Option<&Tree> {
        self.entries.first().map(|(t, _)| t)
    }

    pub fn max(&self) -> Option<&Tree> {
        self.entries.last().map(|(t, _)| t)
    }

    /// The smallest tree among those of maximal depth.
    pub fn select_min_deepest(&self) -> Option<&Tree> {
        let d = self.depth();
        self.entries.iter().map(|(t, _)| t).find(|t| t.depth() == d)
    }

    pub fn multiplicity(&self, tree: &Tree) -> u64 {
        match self.entries.binary_search_by(|(t, _)| t.cmp(tree)) {
            Ok(i) => self.entries[i].1,
            Err(_) => 0,
        }
    }

    /// Multiset union.
    pub fn union(&self, other: &Forest) -> Forest {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Forest::from_entries(entries)
    }

    /// Adds `count` copies of `tree`.
    pub fn insert(&mut self, tree: Tree, count: u64) {
        if count == 0 {
            return;
        }
        match self.entries.binary_search_by(|(t, _)| t.cmp(&tree)) {
            Ok(i) => self.entries[i].1 += count,
            Err(i) => self.entries.insert(i, (tree, count)),
        }
    }

    /// True when `self` is a sub-multiset of `other`.
    pub fn is_subset_of(&self, other: &Forest) -> bool {
        self.entries
            .iter()
            .all(|(t, m)| other.multiplicity(t) >= *m)
    }

    /// Multiset difference `self - other`, or `None` when `other` is not contained in `self`.
    pub fn checked_sub(&self, other: &Forest) -> Option<Forest> {
        let mut ws = WorkingSet::new(self);
        for (t, m) in other.iter() {
            if !ws.remove(t, m) {
                return None;
            }
        }
        Some(ws.into_forest())
    }

    /// Trees whose depth satisfies `keep`.
    pub fn filter_depth(&self, keep: impl Fn(usize) -> bool) -> Forest {
        Forest {
            entries: self
                .entries
                .iter()
                .filter(|(t, _)| keep(t.depth()))
                .cloned()
                .collect(),
        }
    }

    /// Every multiplicity multiplied by `k`.
    pub fn scale(&self, k: u64) -> Forest {
        if k == 0 {
            return Forest::new();
        }
        Forest {
            entries: self
                .entries
                .iter()
                .map(|(t, m)| (t.clone(), m * k))
                .collect(),
        }
    }

    /// Set of distinct depths present, ascending.
    pub fn depths(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.entries.iter().map(|(t, _)| t.depth()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Connects all trees to a new root.
    pub fn attach_root(self) -> Tree {
        Tree::attach_root(self)
    }

    /// Layered product of two forests: all pairwise tree products.
    pub fn product(&self, other: &Forest) -> Forest {
        super::Ops::default().forest_product(self, other)
    }

    /// `k`-fold product; `F^0` is a single path of depth `depth(F)`.
    pub fn power(&self, k: u32) -> Forest {
        super::Ops::default().forest_power(self, k)
    }

    /// Cuts every tree at depth `k`.
    pub fn cut(&self, k: usize) -> Forest {
        super::Ops::default().forest_cut(self, k)
    }

    pub(crate) fn take_trees(&mut self) -> Vec<Tree> {
        std::mem::take(&mut self.entries)
            .into_iter()
            .map(|(t, _)| t)
            .collect()
    }
}

impl fmt::Debug for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (t, m)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{t:?}")?;
            if *m > 1 {
                write!(f, "^{m}")?;
            }
        }
        f.write_str("}")
    }
}

impl FromIterator<Tree> for Forest {
    fn from_iter<I: IntoIterator<Item = Tree>>(iter: I) -> Forest {
        Forest::from_trees(iter)
    }
}

/// Mutable multiset used by the greedy loops. Distinct trees are kept in
/// ascending order with a hash index, so looking up the current maximum and
/// removing arbitrary trees are both cheap.
pub(crate) struct WorkingSet {
    trees: Vec<Tree>,
    counts: Vec<u64>,
    index: HashMap<Tree, usize>,
    total: u64,
    top: usize,
}

impl WorkingSet {
    pub(crate) fn new(forest: &Forest) -> WorkingSet {
        let mut trees = Vec::with_capacity(forest.distinct());
        let mut counts = Vec::with_capacity(forest.distinct());
        let mut index = HashMap::with_capacity(forest.distinct());
        for (i, (t, m)) in forest.entries().iter().enumerate() {
            trees.push(t.clone());
            counts.push(*m);
            index.insert(t.clone(), i);
        }
        let top = trees.len();
        WorkingSet {
            trees,
            counts,
            index,
            total: forest.len(),
            top,
        }
    }

    #[cfg(test)]
    pub(crate) fn len(&self) -> u64 {
        self.total
    }

    /// Largest remaining tree with its multiplicity.
    pub(crate) fn max(&mut self) -> Option<(&Tree, u64)> {
        while self.top > 0 && self.counts[self.top - 1] == 0 {
            self.top -= 1;
        }
        if self.top == 0 {
            None
        } else {
            Some((&self.trees[self.top - 1], self.counts[self.top - 1]))
        }
    }

    /// Smallest remaining tree with its multiplicity.
    pub(crate) fn min(&self) -> Option<(&Tree, u64)> {
        self.counts[..self.top]
            .iter()
            .position(|&c| c > 0)
            .map(|i| (&self.trees[i], self.counts[i]))
    }

    #[cfg(test)]
    pub(crate) fn count(&self, tree: &Tree) -> u64 {
        self.index.get(tree).map_or(0, |&i| self.counts[i])
    }

    /// Removes `m` copies of `tree`; returns false, leaving the set untouched,
    /// when fewer are present.
    pub(crate) fn remove(&mut self, tree: &Tree, m: u64) -> bool {
        match self.index.get(tree) {
            Some(&i) if self.counts[i] >= m => {
                self.counts[i] -= m;
                self.total -= m;
                true
            }
            _ => m == 0,
        }
    }

    pub(crate) fn into_forest(self) -> Forest {
        Forest {
            entries: self
                .trees
                .into_iter()
                .zip(self.counts)
                .filter(|(_, c)| *c > 0)
                .collect(),
        }
    }
}
