use super::{degenerate, floor_log2, SolveOutcome};
use crate::fdds::Fdds;
use crate::tree::divide::Divider;
use crate::tree::{Forest, Tree, STACK_GROWTH, STACK_RED_ZONE};
use crate::unroll::{cut_unroll, periodic_pattern, required_depth};

/// Computes `R` with `R^k = A` for a forest `A`, or `None`.
///
/// The loop repeatedly takes `t_s`, the smallest of the deepest trees not yet
/// explained by `R^k`. If no tree has been reconstructed yet, or `t_m^k > t_s`
/// for the smallest reconstructed tree `t_m`, the next root tree is rebuilt
/// recursively from the children of `t_s`; otherwise it is the quotient of
/// `t_s` by `t_m^(k-1)`. After each step `R^k` must stay inside `A`.
pub fn root_forest(a: &Forest, k: u32) -> Option<Forest> {
    RootSolver::default().root(a, k)
}

/// All `(k, R)` with `2 <= k <= floor(log2 m)` and `R^k = A`, where `m` is the
/// node count of `A`.
pub fn all_roots(a: &Forest) -> Vec<(u32, Forest)> {
    let mut solver = RootSolver::default();
    (2..=floor_log2(a.size()))
        .filter_map(|k| solver.root(a, k).map(|r| (k, r)))
        .collect()
}

fn is_path_forest(f: &Forest) -> bool {
    matches!(f.entries(), [(t, 1)] if t.is_path())
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Default)]
struct RootSolver {
    div: Divider,
}

impl RootSolver {
    fn root(&mut self, a: &Forest, k: u32) -> Option<Forest> {
        if k == 0 {
            return None;
        }
        if a.is_empty() || is_path_forest(a) || k == 1 {
            return Some(a.clone());
        }
        // A forest with a k-th root that is not a path has some level with at
        // least 2^k nodes.
        if k >= 64 || (1u64 << k) > a.size() {
            return None;
        }
        stacker::maybe_grow(STACK_RED_ZONE, STACK_GROWTH, || self.root_loop(a, k))
    }

    fn root_loop(&mut self, a: &Forest, k: u32) -> Option<Forest> {
        let k_us = k as usize;
        let path = Tree::path(a.depth());
        // powers[j] = R^j, with R^0 the path of depth depth(A).
        let mut powers: Vec<Forest> = vec![Forest::new(); k_us + 1];
        powers[0] = Forest::from_trees([path.clone()]);
        let mut r = Forest::new();
        let mut t_m: Option<Tree> = None;
        loop {
            let f = a.checked_sub(&powers[k_us])?;
            if f.is_empty() {
                break;
            }
            let t_s = f.select_min_deepest()?.clone();
            let recurse = match &t_m {
                None => true,
                Some(m) => self.div.ops.tree_power(m, k) > t_s,
            };
            let t_i = if recurse {
                let sub = self.root(t_s.children(), k)?;
                let t = Tree::attach_root(sub);
                t_m = Some(t.clone());
                t
            } else {
                let m = t_m.as_ref().expect("set on the first iteration");
                let divisor = self.div.ops.tree_power(m, k - 1);
                self.div.tree(&t_s, &divisor)?
            };
            // (R + t)^j = sum_i C(j, i) R^(j-i) t^i
            let mut t_pow = vec![path.clone()];
            for i in 1..=k_us {
                let next = self.div.ops.product(&t_pow[i - 1], &t_i);
                t_pow.push(next);
            }
            let mut next_powers = Vec::with_capacity(k_us + 1);
            for j in 0..=k_us {
                let mut entries: Vec<(Tree, u64)> = Vec::new();
                for (i, ti) in t_pow.iter().enumerate().take(j + 1) {
                    let c = binomial(j as u64, i as u64);
                    for (t, m) in powers[j - i].iter() {
                        entries.push((self.div.ops.product(t, ti), m * c));
                    }
                }
                next_powers.push(Forest::from_entries(entries));
            }
            if !next_powers[k_us].is_subset_of(a) {
                return None;
            }
            powers = next_powers;
            r.insert(t_i, 1);
        }
        Some(r)
    }
}

/// Finds a connected `X` with `X^k ≅ A`.
pub fn root_connected(a: &Fdds, k: u32) -> SolveOutcome {
    if a.is_empty() {
        return SolveOutcome::not_divisible();
    }
    if k == 0 {
        return SolveOutcome::verify(Fdds::fixed_point(), Fdds::fixed_point(), a);
    }
    if k == 1 {
        if !a.is_connected() {
            return SolveOutcome::not_divisible();
        }
        return SolveOutcome::verify(a.clone(), a.clone(), a);
    }
    // A connected root with at least two nodes would give |A| >= 2^k.
    if k > floor_log2(a.len() as u64) {
        return SolveOutcome::verify(Fdds::fixed_point(), Fdds::fixed_point(), a);
    }
    let n = required_depth(a);
    let cut = cut_unroll(a, n).forest;
    let Some(r) = root_forest(&cut, k) else {
        return SolveOutcome::not_divisible();
    };
    roll_and_verify(&r, n - a.depth(), |x| x.power(k), a)
}

/// Finds a connected `X` with `A X^k ≅ B`.
///
/// If `k > floor(log2 |B|)` the only candidate is the fixed point, so the
/// answer is decided by comparing `A` with `B`.
pub fn solve_axk(a: &Fdds, b: &Fdds, k: u32) -> SolveOutcome {
    if let Some(out) = degenerate(a, b) {
        return out;
    }
    if k == 0 || k > floor_log2(b.len() as u64) {
        return SolveOutcome::verify(Fdds::fixed_point(), a.clone(), b);
    }
    let n = required_depth(b);
    let cut_a = cut_unroll(a, n).forest;
    let cut_b = cut_unroll(b, n).forest;
    let mut div = Divider::default();
    let Some(y) = div.forest(&cut_b, &cut_a) else {
        return SolveOutcome::not_divisible();
    };
    let Some(r) = root_forest(&y, k) else {
        return SolveOutcome::not_divisible();
    };
    roll_and_verify(&r, n - b.depth(), |x| a.product(&x.power(k)), b)
}

fn roll_and_verify(
    r: &Forest,
    window: usize,
    image: impl Fn(&Fdds) -> Fdds,
    target: &Fdds,
) -> SolveOutcome {
    let p = r.len() as usize;
    let Some(t) = r.min() else {
        return SolveOutcome::not_divisible();
    };
    let Ok(pattern) = periodic_pattern(t, p, window) else {
        return SolveOutcome::not_divisible();
    };
    let x = pattern.roll();
    let product = image(&x);
    SolveOutcome::verify(x, product, target)
}
