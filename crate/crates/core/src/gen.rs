//! Seeded random systems, trees and forests for tests and fixtures.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::fdds::Fdds;
use crate::tree::{Forest, Tree};

/// A uniformly random map on `n` nodes.
pub fn random_fdds<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Fdds {
    Fdds::from_succ((0..n).map(|_| rng.gen_range(0..n)).collect()).expect("targets in range")
}

/// A random connected system on `n >= 1` nodes: a cycle of random length
/// with the remaining nodes attached to random earlier nodes.
pub fn random_connected<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Fdds {
    assert!(n >= 1, "a connected system needs a node");
    let p = rng.gen_range(1..=n);
    let mut succ: Vec<usize> = (0..p).map(|i| (i + 1) % p).collect();
    for i in p..n {
        succ.push(rng.gen_range(0..i));
    }
    shuffle_labels(rng, &Fdds::from_succ(succ).expect("targets in range"))
}

/// A random connected system whose cycle length is at most `max_cycle`.
pub fn random_connected_with_cycle<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    max_cycle: usize,
) -> Fdds {
    assert!(n >= 1 && max_cycle >= 1);
    let p = rng.gen_range(1..=n.min(max_cycle));
    let mut succ: Vec<usize> = (0..p).map(|i| (i + 1) % p).collect();
    for i in p..n {
        succ.push(rng.gen_range(0..i));
    }
    Fdds::from_succ(succ).expect("targets in range")
}

/// The same system with node ids permuted at random.
pub fn shuffle_labels<R: Rng + ?Sized>(rng: &mut R, a: &Fdds) -> Fdds {
    let mut perm: Vec<usize> = (0..a.len()).collect();
    perm.shuffle(rng);
    let mut succ = vec![0; a.len()];
    for v in 0..a.len() {
        succ[perm[v]] = perm[a.succ(v)];
    }
    Fdds::from_succ(succ).expect("permutation of a valid map")
}

/// A random tree on `n >= 1` nodes (random recursive tree).
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Tree {
    assert!(n >= 1, "a tree needs a node");
    let parents: Vec<Option<usize>> = (0..n)
        .map(|i| {
            if i == 0 {
                None
            } else {
                Some(rng.gen_range(0..i))
            }
        })
        .collect();
    Tree::from_parents(&parents).expect("parents precede children")
}

/// A random tree on `n` nodes whose depth is exactly `depth`.
pub fn random_tree_of_depth<R: Rng + ?Sized>(rng: &mut R, n: usize, depth: usize) -> Tree {
    assert!(n > depth, "need at least depth + 1 nodes");
    let mut parents: Vec<Option<usize>> = vec![None];
    let mut node_depth = vec![0usize];
    for i in 1..=depth {
        parents.push(Some(i - 1));
        node_depth.push(i);
    }
    for _ in depth + 1..n {
        let candidates: Vec<usize> = (0..parents.len())
            .filter(|&v| node_depth[v] < depth)
            .collect();
        let p = *candidates.choose(rng).expect("the root qualifies");
        parents.push(Some(p));
        node_depth.push(node_depth[p] + 1);
    }
    Tree::from_parents(&parents).expect("parents precede children")
}

/// A forest of `trees` random trees with sizes in `1..=max_size`.
pub fn random_forest<R: Rng + ?Sized>(rng: &mut R, trees: usize, max_size: usize) -> Forest {
    Forest::from_trees((0..trees).map(|_| {
        let n = rng.gen_range(1..=max_size);
        random_tree(rng, n)
    }))
}
