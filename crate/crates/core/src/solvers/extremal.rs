use super::{degenerate, unroll_divide, SolveOutcome};
use crate::fdds::Fdds;
use crate::unroll::PeriodicPattern;

/// Shape of the disconnected quotient searched by [`solve_component_extremal`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtremalMode {
    /// One component per distinct shift class of the quotient unroll.
    Minimal,
    /// One component per copy of each shift class.
    Maximal,
}

impl ExtremalMode {
    fn other(self) -> ExtremalMode {
        match self {
            ExtremalMode::Minimal => ExtremalMode::Maximal,
            ExtremalMode::Maximal => ExtremalMode::Minimal,
        }
    }
}

/// Finds `X` of the requested shape with `A X ≅ B`.
///
/// The unroll quotient is computed first. Its shift classes `S_i` appear with
/// multiplicities `k_i`; the minimal shape rolls each class once at period
/// `k_i |S_i|`, the maximal shape rolls every copy at period `|S_i|`. If both
/// shapes fail while some class admits an intermediate grouping, the instance
/// is reported as not supported.
pub fn solve_component_extremal(a: &Fdds, b: &Fdds, mode: ExtremalMode) -> SolveOutcome {
    if let Some(out) = degenerate(a, b) {
        return out;
    }
    let quotient = unroll_divide(a, b);
    let Some(sol) = quotient.solution else {
        return SolveOutcome::not_divisible();
    };
    let classes = shift_classes(&sol);
    let attempt = |m: ExtremalMode| {
        let x = build(&classes, m);
        let product = a.product(&x);
        SolveOutcome::verify(x, product, b)
    };
    let out = attempt(mode);
    if out.is_found() || attempt(mode.other()).is_found() {
        return out;
    }
    let groupings = classes
        .iter()
        .fold(1u64, |acc, (_, k)| acc.saturating_mul(partitions(*k)));
    if groupings > 2 {
        SolveOutcome::not_supported()
    } else {
        out
    }
}

/// Primitive patterns of the components of `sol` with their multiplicities.
fn shift_classes(sol: &Fdds) -> Vec<(PeriodicPattern, usize)> {
    let mut out: Vec<(String, PeriodicPattern, usize)> = Vec::new();
    for c in sol.components() {
        let form = c.canonical_form();
        match out.iter_mut().find(|(f, _, _)| *f == form) {
            Some(entry) => entry.2 += 1,
            None => {
                // Rolls run against the dynamics, so the pattern is the
                // forward cycle order reversed.
                let trees = c.trees.iter().rev().cloned().collect();
                out.push((form, PeriodicPattern::new(trees), 1));
            }
        }
    }
    out.into_iter().map(|(_, p, k)| (p, k)).collect()
}

fn build(classes: &[(PeriodicPattern, usize)], mode: ExtremalMode) -> Fdds {
    let mut x = Fdds::empty();
    for (pattern, k) in classes {
        let part = match mode {
            ExtremalMode::Maximal => pattern.roll().repeat(*k),
            ExtremalMode::Minimal => {
                let trees = pattern
                    .trees
                    .iter()
                    .cycle()
                    .take(pattern.len() * k)
                    .cloned()
                    .collect();
                PeriodicPattern::new(trees).roll()
            }
        };
        x = x.sum(&part);
    }
    x
}

/// Number of integer partitions of `n`.
fn partitions(n: usize) -> u64 {
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for total in part..=n {
            p[total] = p[total].saturating_add(p[total - part]);
        }
    }
    p[n]
}
