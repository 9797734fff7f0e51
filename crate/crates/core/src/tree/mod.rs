//! Finite rooted in-trees and forests of them.
//!
//! Trees are immutable, reference counted and stored in canonical form: the
//! children of every node are kept as a [`Forest`], i.e. a sorted multiset of
//! subtrees with multiplicities. Two trees are equal exactly when they are
//! isomorphic, and [`Ord`] realises the breadth-first in-degree code order
//! (see [`TreeCode`]), which is compatible with the layered product.

pub(crate) mod divide;
mod forest;
mod ops;
mod order;

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, MutexGuard, OnceLock, PoisonError, Weak};

pub use divide::{forest_divide, tree_divide};
pub use forest::Forest;
pub(crate) use forest::WorkingSet;
pub(crate) use ops::{ByPtr, Ops};

/// Red zone and growth step used with `stacker` by every recursion that
/// follows tree depth.
pub(crate) const STACK_RED_ZONE: usize = 64 * 1024;
pub(crate) const STACK_GROWTH: usize = 4 * 1024 * 1024;

/// A finite rooted in-tree, up to isomorphism.
#[derive(Clone)]
pub struct Tree(pub(crate) Arc<Node>);

pub(crate) struct Node {
    pub(crate) children: Forest,
    pub(crate) depth: usize,
    pub(crate) size: u64,
    pub(crate) hash: u64,
}

impl Drop for Node {
    fn drop(&mut self) {
        {
            let mut map = lock_interner();
            if let Some(bucket) = map.get_mut(&self.hash) {
                bucket.retain(|w| w.strong_count() > 0);
                if bucket.is_empty() {
                    map.remove(&self.hash);
                }
            }
        }
        // Long spines would otherwise be dropped recursively.
        let mut stack: Vec<Tree> = self.children.take_trees();
        while let Some(tree) = stack.pop() {
            if let Ok(mut node) = Arc::try_unwrap(tree.0) {
                stack.extend(node.children.take_trees());
            }
        }
    }
}

// Every node is hash-consed: isomorphic trees share one allocation, so tree
// equality is pointer equality. Entries are weak and removed when the node
// dies. No tree may be dropped while the lock is held, since dropping a node
// takes the lock again.
type Interner = HashMap<u64, Vec<Weak<Node>>>;

fn lock_interner() -> MutexGuard<'static, Interner> {
    static INTERNER: OnceLock<Mutex<Interner>> = OnceLock::new();
    INTERNER
        .get_or_init(|| Mutex::new(HashMap::new()))
        .lock()
        .unwrap_or_else(PoisonError::into_inner)
}

fn same_children(a: &Forest, b: &Forest) -> bool {
    a.entries().len() == b.entries().len()
        && a.entries()
            .iter()
            .zip(b.entries())
            .all(|((x, m), (y, n))| m == n && x.ptr_eq(y))
}

/// Breadth-first in-degree code of a tree.
///
/// Nodes are visited level by level; the children of every node are visited
/// in ascending tree order. Equal codes characterise isomorphic trees and the
/// lexicographic order on codes is the tree order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeCode(pub Vec<u64>);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeParseError {
    #[error("unexpected character {found:?} at byte {at}")]
    Unexpected { found: char, at: usize },
    #[error("unbalanced brackets")]
    Unbalanced,
    #[error("empty input")]
    Empty,
    #[error("node {0} has an out-of-range parent")]
    BadParent(usize),
    #[error("parent array must contain exactly one root")]
    RootCount,
    #[error("parent array contains a cycle")]
    Cyclic,
}

pub(crate) fn mix(h: u64, v: u64) -> u64 {
    let mut z = h ^ v
        .wrapping_add(0x9e37_79b9_7f4a_7c15)
        .wrapping_add(h << 6)
        .wrapping_add(h >> 2);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

const LEAF_SEED: u64 = 0x5eed_0f7e_e5ca_fe01;

impl Tree {
    /// The single-node tree.
    pub fn leaf() -> Tree {
        Tree::attach_root(Forest::new())
    }

    /// The path with `depth` edges.
    pub fn path(depth: usize) -> Tree {
        let mut t = Tree::leaf();
        for _ in 0..depth {
            t = Tree::attach_root(Forest::from_trees([t]));
        }
        t
    }

    /// Connects the trees of `children` to a fresh common root (the `R` operator).
    pub fn attach_root(children: Forest) -> Tree {
        let depth = if children.is_empty() {
            0
        } else {
            children.depth() + 1
        };
        let size = children.size().saturating_add(1);
        let mut hash = LEAF_SEED;
        for (t, c) in children.iter() {
            hash = mix(mix(hash, t.0.hash), c);
        }
        let mut discard: Vec<Arc<Node>> = Vec::new();
        let mut map = lock_interner();
        let bucket = map.entry(hash).or_default();
        for w in bucket.iter() {
            if let Some(node) = w.upgrade() {
                if same_children(&node.children, &children) {
                    drop(map);
                    return Tree(node);
                }
                discard.push(node);
            }
        }
        let node = Arc::new(Node {
            children,
            depth,
            size,
            hash,
        });
        bucket.push(Arc::downgrade(&node));
        drop(map);
        drop(discard);
        Tree(node)
    }

    /// Multiset of subtrees rooted at the predecessors of the root (the `D` operator).
    pub fn children(&self) -> &Forest {
        &self.0.children
    }

    /// Length of the longest branch; a leaf has depth 0.
    pub fn depth(&self) -> usize {
        self.0.depth
    }

    /// Number of nodes (saturating).
    pub fn size(&self) -> u64 {
        self.0.size
    }

    /// In-degree of the root.
    pub fn degree(&self) -> u64 {
        self.0.children.len()
    }

    pub fn is_leaf(&self) -> bool {
        self.0.children.is_empty()
    }

    /// True when every node has at most one child.
    pub fn is_path(&self) -> bool {
        let mut cur = self;
        loop {
            match cur.0.children.entries() {
                [] => return true,
                [(child, 1)] => cur = child,
                _ => return false,
            }
        }
    }

    pub(crate) fn ptr_eq(&self, other: &Tree) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Number of nodes at each depth, from the root down.
    pub fn level_counts(&self) -> Vec<u64> {
        let mut counts = Vec::with_capacity(self.depth() + 1);
        let mut level: Vec<(&Tree, u64)> = vec![(self, 1)];
        while !level.is_empty() {
            counts.push(level.iter().map(|(_, m)| *m).sum());
            let mut next: Vec<(&Tree, u64)> = Vec::new();
            for (t, m) in &level {
                for (c, cm) in t.children().iter() {
                    next.push((c, m * cm));
                }
            }
            // Merge equal subtrees so that wide levels stay compact.
            next.sort_by_key(|(t, _)| Arc::as_ptr(&t.0) as usize);
            let mut merged: Vec<(&Tree, u64)> = Vec::with_capacity(next.len());
            for (t, m) in next {
                match merged.last_mut() {
                    Some((last, lm)) if last.ptr_eq(t) => *lm += m,
                    _ => merged.push((t, m)),
                }
            }
            level = merged;
        }
        counts
    }

    /// The breadth-first in-degree code. Its length is the node count, so this
    /// is only meant for trees of moderate size.
    pub fn code(&self) -> TreeCode {
        let mut out = Vec::new();
        let mut level: Vec<&Tree> = vec![self];
        while !level.is_empty() {
            let mut next = Vec::new();
            for t in level {
                out.push(t.degree());
                for (c, m) in t.children().iter() {
                    for _ in 0..m {
                        next.push(c);
                    }
                }
            }
            level = next;
        }
        TreeCode(out)
    }

    /// Rebuilds a tree from its breadth-first code.
    pub fn from_code(code: &TreeCode) -> Option<Tree> {
        let code = &code.0;
        if code.is_empty() {
            return None;
        }
        // Assign children in breadth-first order, then build bottom-up.
        let n = code.len();
        let mut first_child = vec![0usize; n];
        let mut next = 1usize;
        for (i, &deg) in code.iter().enumerate() {
            first_child[i] = next;
            next = next.checked_add(deg as usize)?;
            if next > n {
                return None;
            }
        }
        if next != n {
            return None;
        }
        let mut built: Vec<Option<Tree>> = vec![None; n];
        for i in (0..n).rev() {
            let kids = (first_child[i]..first_child[i] + code[i] as usize)
                .map(|c| built[c].take().expect("child built before parent"));
            built[i] = Some(Tree::attach_root(Forest::from_trees(kids)));
        }
        built[0].take()
    }

    /// Builds a tree from a parent array; exactly one entry must be `None`.
    pub fn from_parents(parents: &[Option<usize>]) -> Result<Tree, TreeParseError> {
        let n = parents.len();
        if n == 0 {
            return Err(TreeParseError::Empty);
        }
        let mut kids: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut root = None;
        for (v, p) in parents.iter().enumerate() {
            match p {
                None if root.is_none() => root = Some(v),
                None => return Err(TreeParseError::RootCount),
                Some(p) if *p >= n || *p == v => return Err(TreeParseError::BadParent(v)),
                Some(p) => kids[*p].push(v),
            }
        }
        let root = root.ok_or(TreeParseError::RootCount)?;
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            order.push(v);
            stack.extend(kids[v].iter().copied());
        }
        if order.len() != n {
            return Err(TreeParseError::Cyclic);
        }
        let mut built: Vec<Option<Tree>> = vec![None; n];
        for &v in order.iter().rev() {
            let sub = kids[v].iter().map(|&c| built[c].take().expect("built"));
            built[v] = Some(Tree::attach_root(Forest::from_trees(sub)));
        }
        Ok(built[root].take().expect("root built"))
    }

    /// Parses the nested-bracket notation produced by [`Tree::to_brackets`],
    /// e.g. `(()())` for a root with two leaf children.
    pub fn from_brackets(s: &str) -> Result<Tree, TreeParseError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(TreeParseError::Empty);
        }
        let mut stack: Vec<Vec<Tree>> = Vec::new();
        let mut result = None;
        for (at, ch) in s.char_indices() {
            match ch {
                '(' => {
                    if result.is_some() {
                        return Err(TreeParseError::Unexpected { found: ch, at });
                    }
                    stack.push(Vec::new());
                }
                ')' => {
                    let kids = stack.pop().ok_or(TreeParseError::Unbalanced)?;
                    let t = Tree::attach_root(Forest::from_trees(kids));
                    match stack.last_mut() {
                        Some(parent) => parent.push(t),
                        None => result = Some(t),
                    }
                }
                _ => return Err(TreeParseError::Unexpected { found: ch, at }),
            }
        }
        if !stack.is_empty() {
            return Err(TreeParseError::Unbalanced);
        }
        result.ok_or(TreeParseError::Empty)
    }

    /// Nested-bracket rendering with children in ascending tree order.
    pub fn to_brackets(&self) -> String {
        let mut out = String::new();
        // Explicit stack: `Some(t)` opens t, `None` closes the innermost node.
        let mut stack: Vec<Option<&Tree>> = vec![Some(self)];
        while let Some(item) = stack.pop() {
            match item {
                Some(t) => {
                    out.push('(');
                    stack.push(None);
                    for (c, m) in t.children().iter().rev() {
                        for _ in 0..m {
                            stack.push(Some(c));
                        }
                    }
                }
                None => out.push(')'),
            }
        }
        out
    }

    /// Induced subtree of the nodes at depth at most `k`.
    pub fn cut(&self, k: usize) -> Tree {
        Ops::default().cut(self, k)
    }

    /// Layered product: pairs of nodes at equal depth.
    pub fn product(&self, other: &Tree) -> Tree {
        Ops::default().product(self, other)
    }

    /// `k`-fold product; `t^0` is the path of depth `depth(t)`.
    pub fn power(&self, k: u32) -> Tree {
        Ops::default().tree_power(self, k)
    }
}

impl PartialEq for Tree {
    fn eq(&self, other: &Tree) -> bool {
        self.ptr_eq(other)
    }
}

impl Eq for Tree {}

impl Hash for Tree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.size() <= 64 {
            write!(f, "Tree{}", self.to_brackets())
        } else {
            write!(f, "Tree(size={}, depth={})", self.size(), self.depth())
        }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_brackets())
    }
}
