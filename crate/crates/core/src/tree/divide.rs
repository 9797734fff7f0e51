//! Exact division of trees and forests under the layered product.
//!
//! Writing `F_A = D(a)`, `F_X = D(x)` and `F_B = D(b)`, the equation
//! `a * x = b` becomes `F_A * F_X = F_B`. A product of two trees has the
//! depth of the shallower factor, so the depth-`d` trees of `F_B` are
//!
//! ```text
//! A_{=d} * X_{>d}  +  cut(A_{>=d}, d) * X_{=d}
//! ```
//!
//! Sweeping `d` downwards, the first term is already known and the second is
//! a division among trees of one common depth. There the largest tree of the
//! dividend is the product of the two largest factors, which gives a greedy
//! peeling procedure. Every candidate is checked by multiplying back.

use std::collections::HashMap;

use super::{ByPtr, Forest, Ops, Tree, WorkingSet, STACK_GROWTH, STACK_RED_ZONE};

/// Returns `x` with `a * x = b` and `depth(x) = depth(b)`, if one exists.
///
/// When `depth(a) = depth(b)` every tree whose cut at that depth equals the
/// returned one is also a solution; the shallowest is returned.
pub fn tree_divide(b: &Tree, a: &Tree) -> Option<Tree> {
    Divider::default().tree(b, a)
}

/// Returns the forest `X` with `A * X = B`, if one exists. Trees of `X` never
/// exceed the depth of `B`.
pub fn forest_divide(b: &Forest, a: &Forest) -> Option<Forest> {
    Divider::default().forest(b, a)
}

#[derive(Default)]
pub(crate) struct Divider {
    pub(crate) ops: Ops,
    memo: HashMap<(ByPtr, ByPtr), Option<Tree>>,
}

impl Divider {
    pub(crate) fn forest(&mut self, b: &Forest, a: &Forest) -> Option<Forest> {
        let rb = Tree::attach_root(b.clone());
        let ra = Tree::attach_root(a.clone());
        self.tree(&rb, &ra).map(|x| x.children().clone())
    }

    pub(crate) fn tree(&mut self, b: &Tree, a: &Tree) -> Option<Tree> {
        if a.depth() < b.depth() {
            return None;
        }
        if b.is_leaf() {
            return Some(Tree::leaf());
        }
        let key = (ByPtr(b.clone()), ByPtr(a.clone()));
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let out = stacker::maybe_grow(STACK_RED_ZONE, STACK_GROWTH, || self.tree_uncached(b, a));
        self.memo.insert(key, out.clone());
        out
    }

    fn tree_uncached(&mut self, b: &Tree, a: &Tree) -> Option<Tree> {
        let fb = b.children();
        let fa = a.children();
        let top = b.depth() - 1;
        let mut x = Forest::new();
        for d in (0..=top).rev() {
            let mut bd = fb.filter_depth(|e| e == d);
            let a_eq = fa.filter_depth(|e| e == d);
            let x_gt = x.filter_depth(|e| e > d);
            if !a_eq.is_empty() && !x_gt.is_empty() {
                let known = self.ops.forest_product(&a_eq, &x_gt);
                bd = bd.checked_sub(&known)?;
            }
            if bd.is_empty() {
                continue;
            }
            let a_ge = fa.filter_depth(|e| e >= d);
            if a_ge.is_empty() {
                return None;
            }
            let divisor = self.ops.forest_cut(&a_ge, d);
            let xd = self.equal_depth(&bd, &divisor)?;
            x = x.union(&xd);
        }
        let candidate = Tree::attach_root(x);
        if self.ops.product(a, &candidate) == *b {
            Some(candidate)
        } else {
            None
        }
    }

    /// Solves `C * X = B` where every tree of `B`, `C` and `X` has one depth.
    fn equal_depth(&mut self, b: &Forest, c: &Forest) -> Option<Forest> {
        if !b.len().is_multiple_of(c.len()) {
            return None;
        }
        let (cmax, cmult) = c.entries().last().map(|(t, m)| (t.clone(), *m))?;
        let mut rest = WorkingSet::new(b);
        let mut out: Vec<(Tree, u64)> = Vec::new();
        while let Some((bmax, bmult)) = rest.max() {
            if bmult % cmult != 0 {
                return None;
            }
            let copies = bmult / cmult;
            let bmax = bmax.clone();
            let x = self.tree(&bmax, &cmax)?;
            for (ct, cm) in c.iter() {
                let p = self.ops.product(ct, &x);
                if !rest.remove(&p, cm * copies) {
                    return None;
                }
            }
            out.push((x, copies));
        }
        Some(Forest::from_entries(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Tree {
        Tree::from_brackets(s).unwrap()
    }

    #[test]
    fn recovers_factors() {
        let pairs = [
            ("((())())", "(()(()())())"),
            ("(()())", "((()))"),
            ("(((()))(())())", "((()())(()))"),
            ("((()()))", "(((())))"),
        ];
        for (x, y) in pairs {
            let (a, b) = (t(x), t(y));
            let p = a.product(&b);
            let q = tree_divide(&p, &a).expect("divisible");
            assert_eq!(a.product(&q), p);
            assert_eq!(q, b.cut(p.depth()));
        }
    }

    #[test]
    fn rejects_non_multiples() {
        let a = t("(()())");
        assert_eq!(tree_divide(&t("(()()())"), &a), None);
        assert_eq!(tree_divide(&t("((()))"), &t("(())")), None);
    }

    #[test]
    fn forest_division() {
        let a = Forest::from_trees([t("(())"), t("()")]);
        let x = Forest::from_trees([t("(()())"), t("((()))"), t("()")]);
        let b = a.product(&x);
        let got = forest_divide(&b, &a).unwrap();
        assert_eq!(a.product(&got), b);
        assert_eq!(forest_divide(&Forest::new(), &a), Some(Forest::new()));
        assert_eq!(forest_divide(&b, &Forest::new()), None);
    }
}
