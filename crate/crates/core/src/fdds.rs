//! Finite discrete-time dynamical systems as functional digraphs.

use std::cmp::Ordering;
use std::collections::VecDeque;

use crate::tree::{Forest, Tree};

/// A finite functional digraph: node `i` moves to `succ[i]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Fdds {
    succ: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FddsError {
    #[error("node {node} maps to {target}, which is out of range for {len} nodes")]
    OutOfRange {
        node: usize,
        target: usize,
        len: usize,
    },
    #[error("node {0} has no successor")]
    Missing(usize),
    #[error("node {0} has more than one successor")]
    Duplicate(usize),
}

/// One connected component: a cycle with an in-tree hanging on each cycle node.
#[derive(Clone, Debug)]
pub struct Component {
    /// Cycle nodes in the order of the dynamics: `succ(cycle[i]) = cycle[i + 1]`.
    pub cycle: Vec<usize>,
    /// `trees[i]` is the tree of transient preimages rooted at `cycle[i]`.
    pub trees: Vec<Tree>,
    /// Every node of the component.
    pub nodes: Vec<usize>,
}

impl Component {
    pub fn period(&self) -> usize {
        self.cycle.len()
    }

    pub fn depth(&self) -> usize {
        self.trees.iter().map(Tree::depth).max().unwrap_or(0)
    }

    /// Index of the cycle node at which the canonical rotation starts.
    pub fn canonical_start(&self) -> usize {
        least_rotation(&self.trees)
    }

    /// Bracket string of the hanging trees, starting at the least rotation.
    pub fn canonical_form(&self) -> String {
        let s = self.canonical_start();
        let p = self.trees.len();
        let mut out = String::from("{");
        for i in 0..p {
            out.push_str(&self.trees[(s + i) % p].to_brackets());
        }
        out.push('}');
        out
    }
}

/// Start index of the lexicographically least rotation of `s`.
pub(crate) fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    if n <= 1 {
        return 0;
    }
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        match s[(i + k) % n].cmp(&s[(j + k) % n]) {
            Ordering::Equal => k += 1,
            Ordering::Greater => {
                i += k + 1;
                if i == j {
                    i += 1;
                }
                k = 0;
            }
            Ordering::Less => {
                j += k + 1;
                if i == j {
                    j += 1;
                }
                k = 0;
            }
        }
    }
    i.min(j)
}

/// Structural analysis shared by components, canonical forms and relabelling.
struct Analysis {
    periodic: Vec<bool>,
    /// Transient preimages of each node.
    kids: Vec<Vec<usize>>,
    /// Tree of transient preimages rooted at each node.
    tree: Vec<Tree>,
    cycles: Vec<Vec<usize>>,
}

impl Analysis {
    fn new(f: &Fdds) -> Analysis {
        let n = f.len();
        let mut indeg = vec![0usize; n];
        for &t in &f.succ {
            indeg[t] += 1;
        }
        let mut periodic = vec![true; n];
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        while let Some(v) = queue.pop() {
            periodic[v] = false;
            let t = f.succ[v];
            indeg[t] -= 1;
            if indeg[t] == 0 {
                queue.push(t);
            }
        }
        let mut kids = vec![Vec::new(); n];
        for v in 0..n {
            if !periodic[v] {
                kids[f.succ[v]].push(v);
            }
        }
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for v in 0..n {
            if periodic[v] && !seen[v] {
                let mut cyc = Vec::new();
                let mut u = v;
                while !seen[u] {
                    seen[u] = true;
                    cyc.push(u);
                    u = f.succ[u];
                }
                cycles.push(cyc);
            }
        }
        // Breadth-first from the cycles, then build trees bottom-up.
        let mut order: Vec<usize> = (0..n).filter(|&v| periodic[v]).collect();
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            order.extend(kids[v].iter().copied());
        }
        let mut tree: Vec<Option<Tree>> = vec![None; n];
        for &v in order.iter().rev() {
            let sub = kids[v]
                .iter()
                .map(|&c| tree[c].clone().expect("child built first"));
            tree[v] = Some(Tree::attach_root(Forest::from_trees(sub)));
        }
        Analysis {
            periodic,
            kids,
            tree: tree
                .into_iter()
                .map(|t| t.expect("every node reaches a cycle"))
                .collect(),
            cycles,
        }
    }

    fn component(&self, cycle: &[usize]) -> Component {
        let mut nodes = Vec::new();
        let mut queue: VecDeque<usize> = cycle.iter().copied().collect();
        while let Some(v) = queue.pop_front() {
            nodes.push(v);
            queue.extend(self.kids[v].iter().copied());
        }
        Component {
            cycle: cycle.to_vec(),
            trees: cycle.iter().map(|&c| self.tree[c].clone()).collect(),
            nodes,
        }
    }
}

impl Fdds {
    /// The empty system, neutral for the sum.
    pub fn empty() -> Fdds {
        Fdds::default()
    }

    /// A single fixed point, neutral for the product.
    pub fn fixed_point() -> Fdds {
        Fdds { succ: vec![0] }
    }

    /// The cycle of length `p`.
    pub fn cycle(p: usize) -> Fdds {
        Fdds {
            succ: (0..p).map(|i| (i + 1) % p).collect(),
        }
    }

    /// Validates a successor vector.
    pub fn from_succ(succ: Vec<usize>) -> Result<Fdds, FddsError> {
        let len = succ.len();
        if let Some((node, &target)) = succ.iter().enumerate().find(|(_, &t)| t >= len) {
            return Err(FddsError::OutOfRange { node, target, len });
        }
        Ok(Fdds { succ })
    }

    /// Validates a raw map given as `(node, successor)` pairs over `0..m`,
    /// where `m` is one more than the largest node mentioned on the left.
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Result<Fdds, FddsError> {
        let len = pairs.iter().map(|&(i, _)| i + 1).max().unwrap_or(0);
        let mut succ = vec![None; len];
        for &(i, j) in pairs {
            if succ[i].is_some() {
                return Err(FddsError::Duplicate(i));
            }
            succ[i] = Some(j);
        }
        let succ = succ
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or(FddsError::Missing(i)))
            .collect::<Result<Vec<_>, _>>()?;
        Fdds::from_succ(succ)
    }

    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    pub fn succ(&self, v: usize) -> usize {
        self.succ[v]
    }

    pub fn successors(&self) -> &[usize] {
        &self.succ
    }

    /// Nodes lying on a cycle.
    pub fn periodic_nodes(&self) -> Vec<usize> {
        let a = Analysis::new(self);
        (0..self.len()).filter(|&v| a.periodic[v]).collect()
    }

    /// Number of periodic nodes; also the number of unroll trees.
    pub fn alpha(&self) -> usize {
        Analysis::new(self).periodic.iter().filter(|&&p| p).count()
    }

    /// Components in canonical order.
    pub fn components(&self) -> Vec<Component> {
        let a = Analysis::new(self);
        let mut comps: Vec<(String, Component)> = a
            .cycles
            .iter()
            .map(|c| {
                let comp = a.component(c);
                (comp.canonical_form(), comp)
            })
            .collect();
        comps.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.cycle[0].cmp(&y.1.cycle[0])));
        comps.into_iter().map(|(_, c)| c).collect()
    }

    pub fn component_count(&self) -> usize {
        Analysis::new(self).cycles.len()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// Largest depth among the trees hanging on periodic nodes; 0 when empty.
    pub fn depth(&self) -> usize {
        let a = Analysis::new(self);
        (0..self.len())
            .filter(|&v| a.periodic[v])
            .map(|v| a.tree[v].depth())
            .max()
            .unwrap_or(0)
    }

    /// Disjoint union; the nodes of `other` follow those of `self`.
    pub fn sum(&self, other: &Fdds) -> Fdds {
        let off = self.len();
        let mut succ = self.succ.clone();
        succ.extend(other.succ.iter().map(|&t| t + off));
        Fdds { succ }
    }

    /// Direct product; node `(i, j)` is numbered `i * other.len() + j`.
    pub fn product(&self, other: &Fdds) -> Fdds {
        let m = other.len();
        let mut succ = Vec::with_capacity(self.len() * m);
        for &fi in &self.succ {
            for &gj in &other.succ {
                succ.push(fi * m + gj);
            }
        }
        Fdds { succ }
    }

    /// `k`-fold product; the zeroth power is the fixed point.
    pub fn power(&self, k: u32) -> Fdds {
        let mut acc = Fdds::fixed_point();
        for _ in 0..k {
            acc = acc.product(self);
        }
        acc
    }

    /// Sum of `n` copies.
    pub fn repeat(&self, n: usize) -> Fdds {
        (0..n).fold(Fdds::empty(), |acc, _| acc.sum(self))
    }

    /// A string that is equal for two systems exactly when they are isomorphic.
    ///
    /// Each component is written as `{t_0 t_1 ... t_{p-1}}` where `t_i` is the
    /// bracket form of the tree hanging on the i-th cycle node, following the
    /// dynamics from the least rotation. Components are sorted and joined by `+`.
    pub fn canonical_form(&self) -> String {
        let mut parts: Vec<String> = self
            .components()
            .iter()
            .map(Component::canonical_form)
            .collect();
        parts.sort();
        parts.join("+")
    }

    pub fn is_isomorphic(&self, other: &Fdds) -> bool {
        self.len() == other.len()
            && self.component_count() == other.component_count()
            && self.canonical_form() == other.canonical_form()
    }

    /// An isomorphic copy whose numbering depends only on the isomorphism class.
    ///
    /// Components come in canonical order. Within a component the cycle is
    /// numbered first from its least rotation, then the transient nodes
    /// breadth-first, siblings in ascending tree order.
    pub fn canonical_relabel(&self) -> Fdds {
        let a = Analysis::new(self);
        let mut comps: Vec<(String, Component)> = a
            .cycles
            .iter()
            .map(|c| {
                let comp = a.component(c);
                (comp.canonical_form(), comp)
            })
            .collect();
        comps.sort_by(|x, y| x.0.cmp(&y.0));
        let mut label = vec![usize::MAX; self.len()];
        let mut next = 0usize;
        for (_, comp) in &comps {
            let p = comp.period();
            let s = comp.canonical_start();
            let cyc: Vec<usize> = (0..p).map(|i| comp.cycle[(s + i) % p]).collect();
            for &c in &cyc {
                label[c] = next;
                next += 1;
            }
            let mut queue: VecDeque<usize> = cyc.into_iter().collect();
            while let Some(v) = queue.pop_front() {
                let mut kids = a.kids[v].clone();
                kids.sort_by(|&x, &y| a.tree[x].cmp(&a.tree[y]));
                for c in kids {
                    label[c] = next;
                    next += 1;
                    queue.push_back(c);
                }
            }
        }
        let mut succ = vec![0; self.len()];
        for v in 0..self.len() {
            succ[label[v]] = label[self.succ[v]];
        }
        Fdds { succ }
    }

    /// Splits into one standalone system per component, in canonical order.
    pub fn split(&self) -> Vec<Fdds> {
        self.components()
            .iter()
            .map(|c| self.induced(&c.nodes))
            .collect()
    }

    /// Subsystem on a successor-closed node set, renumbered in the given order.
    fn induced(&self, nodes: &[usize]) -> Fdds {
        let mut idx = vec![usize::MAX; self.len()];
        for (i, &v) in nodes.iter().enumerate() {
            idx[v] = i;
        }
        Fdds {
            succ: nodes.iter().map(|&v| idx[self.succ[v]]).collect(),
        }
    }

    /// Tree of transient preimages rooted at each node.
    pub(crate) fn node_trees(&self) -> (Vec<bool>, Vec<Tree>) {
        let a = Analysis::new(self);
        (a.periodic, a.tree)
    }
}
