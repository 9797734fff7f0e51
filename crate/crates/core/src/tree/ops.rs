use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::{Forest, Tree, STACK_GROWTH, STACK_RED_ZONE};

/// Tree keyed by pointer identity. Holding the clone keeps the address valid
/// for as long as the key lives.
#[derive(Clone)]
pub(crate) struct ByPtr(pub(crate) Tree);

impl PartialEq for ByPtr {
    fn eq(&self, other: &ByPtr) -> bool {
        self.0.ptr_eq(&other.0)
    }
}

impl Eq for ByPtr {}

impl Hash for ByPtr {
    fn hash<H: Hasher>(&self, state: &mut H) {
        (Arc::as_ptr(&self.0 .0) as usize).hash(state);
    }
}

fn addr(t: &Tree) -> usize {
    Arc::as_ptr(&t.0) as usize
}

/// Memoised tree operations. Results are shared between calls, so repeated
/// products of the same subtrees are computed once.
#[derive(Default)]
pub(crate) struct Ops {
    product: HashMap<(ByPtr, ByPtr), Tree>,
    cut: HashMap<(ByPtr, usize), Tree>,
}

impl Ops {
    pub(crate) fn product(&mut self, a: &Tree, b: &Tree) -> Tree {
        if a.is_leaf() {
            return a.clone();
        }
        if b.is_leaf() {
            return b.clone();
        }
        // A path at least as deep as the other factor is neutral.
        if a.depth() >= b.depth() && a.is_path() {
            return b.clone();
        }
        if b.depth() >= a.depth() && b.is_path() {
            return a.clone();
        }
        let (a, b) = if addr(a) <= addr(b) { (a, b) } else { (b, a) };
        let key = (ByPtr(a.clone()), ByPtr(b.clone()));
        if let Some(hit) = self.product.get(&key) {
            return hit.clone();
        }
        let out = stacker::maybe_grow(STACK_RED_ZONE, STACK_GROWTH, || {
            let forest = self.forest_product(a.children(), b.children());
            Tree::attach_root(forest)
        });
        self.product.insert(key, out.clone());
        out
    }

    pub(crate) fn forest_product(&mut self, f: &Forest, g: &Forest) -> Forest {
        let mut entries = Vec::with_capacity(f.distinct() * g.distinct());
        for (x, mx) in f.iter() {
            for (y, my) in g.iter() {
                entries.push((self.product(x, y), mx.saturating_mul(my)));
            }
        }
        Forest::from_entries(entries)
    }

    pub(crate) fn cut(&mut self, t: &Tree, k: usize) -> Tree {
        if k >= t.depth() {
            return t.clone();
        }
        if k == 0 {
            return Tree::leaf();
        }
        let key = (ByPtr(t.clone()), k);
        if let Some(hit) = self.cut.get(&key) {
            return hit.clone();
        }
        let out = stacker::maybe_grow(STACK_RED_ZONE, STACK_GROWTH, || {
            let forest = self.forest_cut(t.children(), k - 1);
            Tree::attach_root(forest)
        });
        self.cut.insert(key, out.clone());
        out
    }

    pub(crate) fn forest_cut(&mut self, f: &Forest, k: usize) -> Forest {
        Forest::from_entries(f.iter().map(|(t, m)| (self.cut(t, k), m)).collect())
    }

    /// `k`-fold forest product; the zeroth power is one path of the forest's depth.
    pub(crate) fn forest_power(&mut self, f: &Forest, k: u32) -> Forest {
        let mut acc = Forest::from_trees([Tree::path(f.depth())]);
        for _ in 0..k {
            acc = self.forest_product(&acc, f);
        }
        acc
    }

    pub(crate) fn tree_power(&mut self, t: &Tree, k: u32) -> Tree {
        let mut acc = Tree::path(t.depth());
        let mut base = t.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.product(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.product(&base, &base);
            }
        }
        acc
    }
}
