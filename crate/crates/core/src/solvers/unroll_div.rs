use std::collections::HashMap;

use super::{Certificate, SolveOutcome, Status};
use crate::fdds::Fdds;
use crate::tree::divide::Divider;
use crate::tree::{Tree, WorkingSet};
use crate::unroll::{
    cut_unroll, pattern_prefix, required_depth, smallest_period, CutUnroll, PeriodicPattern,
};

/// Finds `Sol` with `Unr(A) Unr(Sol) = Unr(B)`, certified on cuts at
/// `n = 2 alpha(B) + depth(B)`.
///
/// The returned system has one component per copy of each shift class of the
/// quotient, every component rolled at its smallest period.
pub fn unroll_divide(a: &Fdds, b: &Fdds) -> SolveOutcome {
    unroll_divide_at(a, b, required_depth(b))
}

/// [`unroll_divide`] with an explicit cut depth `n >= required_depth(B)`.
pub fn unroll_divide_at(a: &Fdds, b: &Fdds, n: usize) -> SolveOutcome {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => {
            return SolveOutcome {
                status: Status::Found,
                solution: Some(Fdds::empty()),
                certificate: Some(Certificate::CutProduct {
                    n,
                    forest: Default::default(),
                }),
            }
        }
        (true, false) | (false, true) => return SolveOutcome::not_divisible(),
        _ => {}
    }
    if a.depth() > b.depth() || a.alpha() > b.alpha() || n < b.depth() {
        return SolveOutcome::not_divisible();
    }
    let cu_a = cut_unroll(a, n);
    let cu_b = cut_unroll(b, n);
    let mut periods: HashMap<Tree, usize> = HashMap::new();
    if !fill_periods(&mut periods, &cu_a, n - a.depth())
        || !fill_periods(&mut periods, &cu_b, n - b.depth())
    {
        return SolveOutcome::not_divisible();
    }
    let m_a = component_minima(a, &cu_a);

    let mut div = Divider::default();
    let Some(quotient) = div.forest(&cu_b.forest, &cu_a.forest) else {
        return SolveOutcome::not_divisible();
    };
    let mut rest = WorkingSet::new(&quotient);
    let mut sol = Fdds::empty();
    while let Some((x, _)) = rest.min() {
        let x = x.clone();
        for t in &m_a {
            let prod = div.ops.product(t, &x);
            let (Some(pb), Some(pa)) = (periods.get(&prod), periods.get(t)) else {
                return SolveOutcome::not_divisible();
            };
            if pb % pa != 0 {
                return SolveOutcome::not_divisible();
            }
        }
        let first = div.ops.product(&m_a[0], &x);
        let b_len = periods[&first];
        let Ok(prefix) = pattern_prefix(&x, b_len) else {
            return SolveOutcome::not_divisible();
        };
        let rolled = PeriodicPattern::new(prefix).reduced().roll();
        let y = cut_unroll(&rolled, n).forest;
        for (t, m) in y.iter() {
            if !rest.remove(t, m) {
                return SolveOutcome::not_divisible();
            }
        }
        sol = sol.sum(&rolled);
    }

    let cut_sol = cut_unroll(&sol, n).forest;
    let forest = div.ops.forest_product(&cu_a.forest, &cut_sol);
    if forest != cu_b.forest {
        return SolveOutcome::not_divisible();
    }
    SolveOutcome {
        status: Status::Found,
        solution: Some(sol),
        certificate: Some(Certificate::CutProduct { n, forest }),
    }
}

/// Records the smallest period of every tree of a cut unroll, starting from
/// the cycle length of its source node.
fn fill_periods(periods: &mut HashMap<Tree, usize>, cu: &CutUnroll, window: usize) -> bool {
    for pr in &cu.provenance {
        if periods.contains_key(&pr.tree) {
            continue;
        }
        match smallest_period(&pr.tree, pr.period, window) {
            Ok(p) => {
                periods.insert(pr.tree.clone(), p);
            }
            Err(_) => return false,
        }
    }
    true
}

/// Distinct cuts of the smallest unroll tree of each component, ascending.
fn component_minima(a: &Fdds, cu: &CutUnroll) -> Vec<Tree> {
    let tree_of: HashMap<usize, &Tree> = cu.provenance.iter().map(|p| (p.node, &p.tree)).collect();
    let mut out: Vec<Tree> = a
        .components()
        .iter()
        .map(|c| {
            c.cycle
                .iter()
                .map(|v| tree_of[v])
                .min()
                .expect("cycles are nonempty")
                .clone()
        })
        .collect();
    out.sort();
    out.dedup();
    out
}
