//! Breadth-first code order, compared lazily level by level.
//!
//! Once all earlier levels agree, the next levels of both trees have the same
//! length, so the lexicographic comparison of full codes reduces to comparing
//! levels in turn. Levels are held as run-length lists of subtrees. Aligned
//! runs of identical subtrees produce identical aligned material on every
//! deeper level and are discarded from both sides.

use std::cmp::Ordering;

use super::Tree;

type Level<'a> = Vec<(&'a Tree, u64)>;

fn push_children<'a>(next: &mut Level<'a>, t: &'a Tree, k: u64) {
    for (c, m) in t.children().iter() {
        let m = m.saturating_mul(k);
        match next.last_mut() {
            Some((last, lm)) if last.ptr_eq(c) => *lm = lm.saturating_add(m),
            _ => next.push((c, m)),
        }
    }
}

fn same(a: &Tree, b: &Tree) -> bool {
    a.ptr_eq(b)
}

pub(crate) fn compare(a: &Tree, b: &Tree) -> Ordering {
    if same(a, b) {
        return Ordering::Equal;
    }
    let mut la: Level = vec![(a, 1)];
    let mut lb: Level = vec![(b, 1)];
    while !la.is_empty() || !lb.is_empty() {
        let mut na: Level = Vec::new();
        let mut nb: Level = Vec::new();
        let (mut i, mut j) = (0, 0);
        let mut ra = la.first().map_or(0, |x| x.1);
        let mut rb = lb.first().map_or(0, |x| x.1);
        while i < la.len() && j < lb.len() {
            let (ta, tb) = (la[i].0, lb[j].0);
            let k = ra.min(rb);
            if !same(ta, tb) {
                match ta.degree().cmp(&tb.degree()) {
                    Ordering::Equal => {}
                    other => return other,
                }
                push_children(&mut na, ta, k);
                push_children(&mut nb, tb, k);
            }
            ra -= k;
            rb -= k;
            if ra == 0 {
                i += 1;
                ra = la.get(i).map_or(0, |x| x.1);
            }
            if rb == 0 {
                j += 1;
                rb = lb.get(j).map_or(0, |x| x.1);
            }
        }
        // Equal prefixes imply equal level lengths; a leftover means the
        // other side's code is a proper prefix.
        match (i < la.len(), j < lb.len()) {
            (true, false) => return Ordering::Greater,
            (false, true) => return Ordering::Less,
            _ => {}
        }
        la = na;
        lb = nb;
    }
    Ordering::Equal
}

impl Ord for Tree {
    fn cmp(&self, other: &Tree) -> Ordering {
        compare(self, other)
    }
}

impl PartialOrd for Tree {
    fn partial_cmp(&self, other: &Tree) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
