use super::{degenerate, SolveOutcome};
use crate::fdds::Fdds;
use crate::tree::{tree_divide, Tree};
use crate::unroll::{cut_unroll, periodic_pattern, required_depth};

/// Finds a connected `X` with `A X ≅ B`.
///
/// Both unrolls are cut at `n = 2 alpha(B) + depth(B)`, the forests are
/// divided through their attached roots, the smallest quotient tree is rolled
/// at the number of quotient trees, and the roll is verified.
pub fn divide_connected(a: &Fdds, b: &Fdds) -> SolveOutcome {
    if let Some(out) = degenerate(a, b) {
        return out;
    }
    let n = required_depth(b);
    let cut_a = cut_unroll(a, n).forest;
    let cut_b = cut_unroll(b, n).forest;
    let Some(x) = tree_divide(&Tree::attach_root(cut_b), &Tree::attach_root(cut_a)) else {
        return SolveOutcome::not_divisible();
    };
    let quotient = x.children();
    let p = quotient.len() as usize;
    let Some(t) = quotient.min() else {
        return SolveOutcome::not_divisible();
    };
    let window = n - b.depth();
    let Ok(pattern) = periodic_pattern(t, p, window) else {
        return SolveOutcome::not_divisible();
    };
    let candidate = pattern.roll();
    let product = a.product(&candidate);
    SolveOutcome::verify(candidate, product, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::Status;

    fn f(succ: &[usize]) -> Fdds {
        Fdds::from_succ(succ.to_vec()).unwrap()
    }

    #[test]
    fn identity_divisor() {
        let b = f(&[1, 2, 0, 0, 3]);
        let out = divide_connected(&Fdds::fixed_point(), &b);
        assert!(out.solution.unwrap().is_isomorphic(&b));
    }

    #[test]
    fn recovers_cycle_factor() {
        let out = divide_connected(&Fdds::cycle(2), &Fdds::cycle(6));
        assert!(out.solution.unwrap().is_isomorphic(&Fdds::cycle(3)));
        let out = divide_connected(&Fdds::cycle(2), &Fdds::cycle(2).repeat(2));
        assert!(out.solution.unwrap().is_isomorphic(&Fdds::cycle(2)));
    }

    #[test]
    fn rejects_size_mismatch() {
        let out = divide_connected(&Fdds::cycle(2), &Fdds::cycle(3));
        assert_eq!(out.status, Status::NotDivisible);
    }

    #[test]
    fn decorated_roundtrip() {
        let a = f(&[1, 0, 0, 2]);
        let x = f(&[1, 2, 0, 1]);
        let b = a.product(&x);
        let out = divide_connected(&a, &b);
        assert!(out.solution.unwrap().is_isomorphic(&x));
    }

    #[test]
    fn empty_operands() {
        assert!(divide_connected(&Fdds::empty(), &Fdds::empty()).is_found());
        assert!(!divide_connected(&Fdds::empty(), &Fdds::cycle(1)).is_found());
        assert!(!divide_connected(&Fdds::cycle(1), &Fdds::empty()).is_found());
    }
}
