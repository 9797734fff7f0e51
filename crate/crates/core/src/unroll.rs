//! Finite cuts of unrolls, spines, periodic patterns and rolls.
//!
//! The unroll tree of a periodic node `u` is the infinite tree of its iterated
//! preimages. It is never materialised; a depth-`n` cut together with the
//! pattern period carries the same information once `n` is large enough.

use crate::fdds::Fdds;
use crate::tree::{Forest, Ops, Tree};

/// Where one tree of a [`CutUnroll`] came from.
#[derive(Clone, Debug)]
pub struct Provenance {
    /// Periodic node of the source system.
    pub node: usize,
    /// Length of the cycle through `node`.
    pub period: usize,
    pub tree: Tree,
}

/// The forest `cut(Unr(A), n)`: one depth-`n` tree per periodic node.
#[derive(Clone, Debug)]
pub struct CutUnroll {
    pub forest: Forest,
    pub n: usize,
    pub alpha: u64,
    pub provenance: Vec<Provenance>,
}

/// A cyclic sequence of finite trees hanging on a spine.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeriodicPattern {
    pub trees: Vec<Tree>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UnrollError {
    #[error("window of {window} spine nodes is too short for {needed}")]
    Window { window: usize, needed: usize },
    #[error("pattern does not repeat with period {0}")]
    NotPeriodic(usize),
    #[error("period must be positive")]
    ZeroPeriod,
}

/// `2 * alpha(B) + depth(B)`, the cut depth that decides unroll equations.
pub fn required_depth(b: &Fdds) -> usize {
    2 * b.alpha() + b.depth()
}

/// Builds `cut(Unr(A), n)`.
///
/// Layer `h` holds the depth-`h` cut rooted at every periodic node. A
/// transient subtree stops changing once `h` reaches its height, so only the
/// periodic trees are rebuilt on each layer.
pub fn cut_unroll(a: &Fdds, n: usize) -> CutUnroll {
    let (periodic, hanging) = a.node_trees();
    let nodes: Vec<usize> = (0..a.len()).filter(|&v| periodic[v]).collect();
    let mut pos = vec![usize::MAX; a.len()];
    for (i, &v) in nodes.iter().enumerate() {
        pos[v] = i;
    }
    // Periodic predecessor of each periodic node, as a position.
    let mut pred = vec![0usize; nodes.len()];
    for (i, &v) in nodes.iter().enumerate() {
        pred[pos[a.succ(v)]] = i;
    }
    let mut ops = Ops::default();
    let mut layer: Vec<Tree> = vec![Tree::leaf(); nodes.len()];
    for h in 1..=n {
        let mut next = Vec::with_capacity(nodes.len());
        for (i, &v) in nodes.iter().enumerate() {
            let mut kids: Vec<(Tree, u64)> = hanging[v]
                .children()
                .iter()
                .map(|(t, m)| (ops.cut(t, h - 1), m))
                .collect();
            kids.push((layer[pred[i]].clone(), 1));
            next.push(Tree::attach_root(Forest::from_entries(kids)));
        }
        layer = next;
    }
    let period = cycle_lengths(a, &nodes, &pos);
    let provenance: Vec<Provenance> = nodes
        .iter()
        .zip(layer.iter())
        .map(|(&v, t)| Provenance {
            node: v,
            period: period[pos[v]],
            tree: t.clone(),
        })
        .collect();
    CutUnroll {
        forest: Forest::from_trees(layer),
        n,
        alpha: nodes.len() as u64,
        provenance,
    }
}

fn cycle_lengths(a: &Fdds, nodes: &[usize], pos: &[usize]) -> Vec<usize> {
    let mut out = vec![0usize; nodes.len()];
    for (i, &v) in nodes.iter().enumerate() {
        if out[i] != 0 {
            continue;
        }
        let mut cyc = vec![i];
        let mut u = a.succ(v);
        while u != v {
            cyc.push(pos[u]);
            u = a.succ(u);
        }
        for j in &cyc {
            out[*j] = cyc.len();
        }
    }
    out
}

/// A maximal-depth path `v_0, v_1, ...` from the root of a cut unroll tree,
/// as the subtrees rooted at its nodes.
///
/// Each step moves to a deepest child, preferring the largest one in tree
/// order. If the source system has depth `d`, the first `n - d + 1` nodes lie
/// on the infinite branch.
pub fn spine(t: &Tree) -> Vec<Tree> {
    let mut out = Vec::with_capacity(t.depth() + 1);
    let mut cur = t.clone();
    loop {
        let next = cur
            .children()
            .iter()
            .map(|(c, _)| c)
            .max_by_key(|c| c.depth())
            .cloned();
        out.push(cur);
        match next {
            Some(c) => cur = c,
            None => return out,
        }
    }
}

/// Hanging trees `t_i = R(D(v_i) - v_{i+1})` for `i < len` along [`spine`].
pub fn pattern_prefix(t: &Tree, len: usize) -> Result<Vec<Tree>, UnrollError> {
    let sp = spine(t);
    if len + 1 > sp.len() {
        return Err(UnrollError::Window {
            window: sp.len().saturating_sub(1),
            needed: len,
        });
    }
    let mut out = Vec::with_capacity(len);
    for i in 0..len {
        let mut rest = sp[i].children().clone();
        let removed = rest.checked_sub(&Forest::from_trees([sp[i + 1].clone()]));
        rest = removed.expect("spine child is a child");
        out.push(Tree::attach_root(rest));
    }
    Ok(out)
}

/// Extracts the pattern of length `p` from a cut tree whose spine is reliable
/// on `window` entries, checking that it repeats with period `p` there.
pub fn periodic_pattern(t: &Tree, p: usize, window: usize) -> Result<PeriodicPattern, UnrollError> {
    if p == 0 {
        return Err(UnrollError::ZeroPeriod);
    }
    if window < p {
        return Err(UnrollError::Window { window, needed: p });
    }
    let prefix = pattern_prefix(t, window)?;
    if (p..window).any(|i| prefix[i] != prefix[i - p]) {
        return Err(UnrollError::NotPeriodic(p));
    }
    Ok(PeriodicPattern {
        trees: prefix[..p].to_vec(),
    })
}

/// Smallest divisor `d` of `known` such that the pattern of length `known`
/// read from `t` repeats with period `d`.
pub fn smallest_period(t: &Tree, known: usize, window: usize) -> Result<usize, UnrollError> {
    Ok(periodic_pattern(t, known, window)?.smallest_period())
}

/// Subtree at spine position `i`, the cut of `shift(t, i)`.
pub fn shift_cut(t: &Tree, i: usize) -> Result<Tree, UnrollError> {
    let sp = spine(t);
    sp.get(i).cloned().ok_or(UnrollError::Window {
        window: sp.len().saturating_sub(1),
        needed: i,
    })
}

/// The `p` shifts of `t`, each cut to depth `depth(t) - p`.
pub fn shifts_class(t: &Tree, p: usize) -> Result<Vec<Tree>, UnrollError> {
    let sp = spine(t);
    if p >= sp.len() {
        return Err(UnrollError::Window {
            window: sp.len().saturating_sub(1),
            needed: p,
        });
    }
    let d = t.depth() - p;
    let mut ops = Ops::default();
    Ok(sp[..p].iter().map(|s| ops.cut(s, d)).collect())
}

impl PeriodicPattern {
    pub fn new(trees: Vec<Tree>) -> PeriodicPattern {
        PeriodicPattern { trees }
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// Smallest `d` dividing the length with `t_i = t_{(i + d) mod p}`.
    pub fn smallest_period(&self) -> usize {
        let p = self.trees.len();
        (1..=p)
            .filter(|d| p.is_multiple_of(*d))
            .find(|&d| (0..p).all(|i| self.trees[i] == self.trees[(i + d) % p]))
            .unwrap_or(p)
    }

    /// The same pattern truncated to its smallest period.
    pub fn reduced(&self) -> PeriodicPattern {
        PeriodicPattern {
            trees: self.trees[..self.smallest_period()].to_vec(),
        }
    }

    /// Connected system with a `p`-cycle `c_0, ..., c_{p-1}` where
    /// `succ(c_{i+1}) = c_i`, `succ(c_0) = c_{p-1}`, and `t_i` hangs on `c_i`.
    /// Cycle nodes get ids `0..p`.
    pub fn roll(&self) -> Fdds {
        let p = self.trees.len();
        let mut succ: Vec<usize> = (0..p).map(|i| (i + p - 1) % p).collect();
        let mut stack: Vec<(&Tree, usize)> = Vec::new();
        for (i, t) in self.trees.iter().enumerate() {
            stack.push((t, i));
        }
        while let Some((t, id)) = stack.pop() {
            for (c, m) in t.children().iter() {
                for _ in 0..m {
                    let child = succ.len();
                    succ.push(id);
                    stack.push((c, child));
                }
            }
        }
        Fdds::from_succ(succ).expect("roll produces a valid map")
    }
}

/// Rolls `t` at period `p`, reading the pattern over a reliable `window`.
pub fn roll(t: &Tree, p: usize, window: usize) -> Result<Fdds, UnrollError> {
    Ok(periodic_pattern(t, p, window)?.roll())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(succ: &[usize]) -> Fdds {
        Fdds::from_succ(succ.to_vec()).unwrap()
    }

    fn t(s: &str) -> Tree {
        Tree::from_brackets(s).unwrap()
    }

    #[test]
    fn cycles_unroll_to_paths() {
        let cu = cut_unroll(&Fdds::cycle(3), 5);
        assert_eq!(cu.alpha, 3);
        assert_eq!(cu.forest, Forest::from_entries(vec![(Tree::path(5), 3)]));
    }

    #[test]
    fn tail_on_fixed_point() {
        let cu = cut_unroll(&f(&[1, 1]), 3);
        assert_eq!(cu.forest.len(), 1);
        assert_eq!(cu.forest.max().unwrap(), &t("(()(()(()())))"));
        let sp = spine(cu.forest.max().unwrap());
        assert_eq!(sp.len(), 4);
        let pat = periodic_pattern(cu.forest.max().unwrap(), 1, 2).unwrap();
        assert_eq!(pat.trees, vec![t("(())")]);
        assert!(pat.roll().is_isomorphic(&f(&[1, 1])));
    }

    #[test]
    fn required_depth_formula() {
        assert_eq!(required_depth(&Fdds::cycle(3)), 6);
        assert_eq!(required_depth(&f(&[1, 2, 2])), 4);
    }

    #[test]
    fn decorated_two_cycle() {
        let a = f(&[1, 0, 0]);
        let n = required_depth(&a);
        let cu = cut_unroll(&a, n);
        for pr in &cu.provenance {
            let pat = periodic_pattern(&pr.tree, 2, n - a.depth()).unwrap();
            assert_eq!(pat.smallest_period(), 2);
            assert_ne!(pat.trees[0], pat.trees[1]);
            assert!(pat.roll().is_isomorphic(&a));
            assert_eq!(shifts_class(&pr.tree, 2).unwrap().len(), 2);
        }
    }

    #[test]
    fn smallest_period_of_repeating_pattern() {
        let (x, y) = (t("(())"), Tree::leaf());
        let pat = PeriodicPattern::new(vec![x.clone(), y.clone(), x, y]);
        assert_eq!(pat.smallest_period(), 2);
        assert_eq!(pat.reduced().len(), 2);
        let cu = cut_unroll(&Fdds::cycle(6), 12);
        assert_eq!(smallest_period(cu.forest.max().unwrap(), 6, 12).unwrap(), 1);
    }

    #[test]
    fn shifting_a_path() {
        let p = Tree::path(6);
        assert_eq!(shift_cut(&p, 0).unwrap(), p);
        assert_eq!(shift_cut(&p, 2).unwrap(), Tree::path(4));
        assert!(shift_cut(&p, 7).is_err());
    }

    #[test]
    fn roll_of_plain_path_is_cycle() {
        assert!(roll(&Tree::path(6), 3, 6)
            .unwrap()
            .is_isomorphic(&Fdds::cycle(3)));
    }
}
