//! Equation solvers over FDDS: connected division, k-th roots, `A X^k = B`,
//! unroll division and component-extremal division.
//!
//! Every solver ends by recomputing the defining product from its candidate.
//! A [`Status::Found`] outcome is only produced when that check succeeds.

mod connected;
mod extremal;
mod root;
mod unroll_div;

pub use connected::divide_connected;
pub use extremal::{solve_component_extremal, ExtremalMode};
pub use root::{all_roots, root_connected, root_forest, solve_axk};
pub use unroll_div::{unroll_divide, unroll_divide_at};

use crate::fdds::Fdds;
use crate::tree::Forest;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Found,
    NotDivisible,
    NotSupported,
}

/// The recomputed product that backs a found solution.
#[derive(Clone, Debug)]
pub enum Certificate {
    /// The full system product, isomorphic to the target.
    Product(Fdds),
    /// `cut(Unr(A), n) * cut(Unr(Sol), n)`, equal to `cut(Unr(B), n)`.
    CutProduct { n: usize, forest: Forest },
}

#[derive(Clone, Debug)]
pub struct SolveOutcome {
    pub status: Status,
    pub solution: Option<Fdds>,
    pub certificate: Option<Certificate>,
}

impl SolveOutcome {
    pub fn not_divisible() -> SolveOutcome {
        SolveOutcome {
            status: Status::NotDivisible,
            solution: None,
            certificate: None,
        }
    }

    pub fn not_supported() -> SolveOutcome {
        SolveOutcome {
            status: Status::NotSupported,
            solution: None,
            certificate: None,
        }
    }

    pub fn is_found(&self) -> bool {
        self.status == Status::Found
    }

    /// Found if `product` is isomorphic to `target`, otherwise not divisible.
    pub(crate) fn verify(solution: Fdds, product: Fdds, target: &Fdds) -> SolveOutcome {
        if product.is_isomorphic(target) {
            SolveOutcome {
                status: Status::Found,
                solution: Some(solution),
                certificate: Some(Certificate::Product(product)),
            }
        } else {
            SolveOutcome::not_divisible()
        }
    }
}

/// Shared handling of empty operands for `A X = B`. Returns `Some` when the
/// instance is decided without running the algorithm.
pub(crate) fn degenerate(a: &Fdds, b: &Fdds) -> Option<SolveOutcome> {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => Some(SolveOutcome::verify(Fdds::empty(), Fdds::empty(), b)),
        (true, false) | (false, true) => Some(SolveOutcome::not_divisible()),
        (false, false) if !b.len().is_multiple_of(a.len()) => Some(SolveOutcome::not_divisible()),
        _ => None,
    }
}

/// `floor(log2(m))` for `m >= 1`, 0 for `m = 0`.
pub fn floor_log2(m: u64) -> u32 {
    if m == 0 {
        0
    } else {
        63 - m.leading_zeros()
    }
}
