#![allow(dead_code)]

use std::collections::BTreeSet;

use fdds::{Fdds, Forest, Tree};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A tree as a parent array with node 0 the root and parents before children.
#[derive(Clone, Debug)]
pub struct Parents(pub Vec<usize>);

impl Parents {
    pub fn random<R: Rng>(rng: &mut R, n: usize) -> Parents {
        let mut p = vec![0];
        for i in 1..n {
            p.push(rng.gen_range(0..i));
        }
        Parents(p)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn depths(&self) -> Vec<usize> {
        let mut d = vec![0; self.0.len()];
        for i in 1..self.0.len() {
            d[i] = d[self.0[i]] + 1;
        }
        d
    }

    pub fn depth(&self) -> usize {
        self.depths().into_iter().max().unwrap_or(0)
    }

    pub fn to_tree(&self) -> Tree {
        let p: Vec<Option<usize>> = (0..self.0.len())
            .map(|i| if i == 0 { None } else { Some(self.0[i]) })
            .collect();
        Tree::from_parents(&p).unwrap()
    }

    /// Canonical string by sorted nested brackets (AHU).
    pub fn ahu(&self) -> String {
        let n = self.0.len();
        let mut kids: Vec<Vec<String>> = vec![Vec::new(); n];
        let mut label = vec![String::new(); n];
        for v in (0..n).rev() {
            let mut k = std::mem::take(&mut kids[v]);
            k.sort();
            label[v] = format!("({})", k.concat());
            if v > 0 {
                let l = label[v].clone();
                kids[self.0[v]].push(l);
            }
        }
        label[0].clone()
    }

    /// All trees of exactly `n` nodes up to isomorphism, by exhaustive parent arrays.
    pub fn all_of_size(n: usize) -> Vec<Parents> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let mut cur = vec![0usize];
        fn rec(
            n: usize,
            cur: &mut Vec<usize>,
            seen: &mut BTreeSet<String>,
            out: &mut Vec<Parents>,
        ) {
            if cur.len() == n {
                let p = Parents(cur.clone());
                if seen.insert(p.ahu()) {
                    out.push(p);
                }
                return;
            }
            for parent in 0..cur.len() {
                cur.push(parent);
                rec(n, cur, seen, out);
                cur.pop();
            }
        }
        if n >= 1 {
            rec(n, &mut cur, &mut seen, &mut out);
        }
        out
    }
}

pub fn forest_of(trees: &[Parents]) -> Forest {
    Forest::from_trees(trees.iter().map(Parents::to_tree))
}

/// Disjoint union of `parts` random connected systems with sizes in `1..=max`.
pub fn random_disconnected<R: Rng>(rng: &mut R, parts: usize, max: usize) -> Fdds {
    let mut y = Fdds::empty();
    for _ in 0..parts {
        let n = rng.gen_range(1..=max);
        y = y.sum(&fdds::gen::random_connected(rng, n));
    }
    y
}

pub fn same(a: &Fdds, b: &Fdds) -> bool {
    a.canonical_form() == b.canonical_form()
}
