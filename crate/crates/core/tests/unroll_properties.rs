mod common;

use common::rng;
use fdds::gen::{random_connected, random_fdds};
use fdds::unroll::{
    cut_unroll, pattern_prefix, periodic_pattern, required_depth, roll, shift_cut, smallest_period,
    spine, PeriodicPattern,
};
use fdds::{Fdds, Tree};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn f(succ: &[usize]) -> Fdds {
    Fdds::from_succ(succ.to_vec()).unwrap()
}

fn t(s: &str) -> Tree {
    Tree::from_brackets(s).unwrap()
}

fn system(max: usize) -> impl Strategy<Value = Fdds> {
    (1..=max, any::<u64>())
        .prop_map(|(n, seed)| random_fdds(&mut ChaCha8Rng::seed_from_u64(seed), n))
}

#[test]
fn required_depth_examples() {
    assert_eq!(required_depth(&Fdds::cycle(3)), 6);
    assert_eq!(required_depth(&f(&[0, 0, 1])), 4);
    // A 4-cycle with a path of length 3 hanging on one node.
    assert_eq!(required_depth(&f(&[1, 2, 3, 0, 0, 4, 5])), 11);
}

#[test]
fn fixed_point_with_tail() {
    let a = f(&[1, 1]);
    let cu = cut_unroll(&a, 3);
    assert_eq!(cu.forest.len(), 1);
    let tree = cu.forest.min().unwrap().clone();
    // Spine of depth 3 with one extra leaf on every spine node above depth 3.
    assert_eq!(tree, t("(()(()(()())))"));
    let sp = spine(&tree);
    assert_eq!(sp.len(), 4);
    assert_eq!(sp[3], Tree::leaf());

    let pattern = periodic_pattern(&tree, 1, 3 - a.depth()).unwrap();
    assert_eq!(pattern.trees, vec![t("(())")]);
    assert!(pattern.roll().is_isomorphic(&a));
    assert!(PeriodicPattern::new(vec![t("(())")])
        .roll()
        .is_isomorphic(&a));
}

#[test]
fn two_cycle_with_one_tail() {
    let a = f(&[1, 0, 0]);
    let n = required_depth(&a);
    let cu = cut_unroll(&a, n);
    assert_eq!(cu.forest.len(), 2);
    for tree in cu.forest.trees() {
        let pattern = periodic_pattern(tree, 2, n - a.depth()).unwrap();
        assert_ne!(pattern.trees[0], pattern.trees[1]);
        let mut kinds = pattern.trees.clone();
        kinds.sort();
        assert_eq!(kinds, vec![t("()"), t("(())")]);
        assert_eq!(smallest_period(tree, 2, n - a.depth()).unwrap(), 2);
        assert!(roll(tree, 2, n - a.depth()).unwrap().is_isomorphic(&a));
    }
}

#[test]
fn cycles_unroll_to_paths() {
    let cu = cut_unroll(&Fdds::cycle(2), 4);
    assert_eq!(cu.forest.entries(), &[(Tree::path(4), 2)]);
    assert_eq!(cu.alpha, 2);
}

#[test]
fn transient_branch_as_deep_as_the_system() {
    // Fixed point with a path of length 3 hanging on it: below the reliable
    // window the branch ties the spine in depth.
    let a = f(&[0, 0, 1, 2]);
    let n = required_depth(&a);
    let tree = cut_unroll(&a, n).forest.min().unwrap().clone();
    let window = n - a.depth();
    let prefix = pattern_prefix(&tree, window).unwrap();
    assert!(prefix.iter().all(|p| *p == t("(((())))")));
    assert!(roll(&tree, 1, window).unwrap().is_isomorphic(&a));
}

#[test]
fn roll_inverts_cut_unroll_for_connected_systems() {
    let mut r = rng(366);
    for _ in 0..400 {
        let n = r.gen_range(1..=20);
        let x = random_connected(&mut r, n);
        let depth = required_depth(&x);
        let p = x.components()[0].period();
        for tree in cut_unroll(&x, depth).forest.trees() {
            let back = roll(tree, p, depth - x.depth()).unwrap();
            assert!(back.is_isomorphic(&x), "{x:?}");
        }
    }
}

#[test]
fn shifting_by_the_period_is_periodic() {
    let mut r = rng(345);
    for _ in 0..200 {
        let size = r.gen_range(1..=12);
        let x = random_connected(&mut r, size);
        let n = required_depth(&x);
        let tree = cut_unroll(&x, n).forest.min().unwrap().clone();
        let p = smallest_period(&tree, x.components()[0].period(), n - x.depth()).unwrap();
        let shifted = shift_cut(&tree, p).unwrap();
        assert_eq!(shifted.cut(n - p), tree.cut(n - p));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn unroll_is_a_homomorphism(a in system(8), b in system(8), n in 0usize..10) {
        let lhs = cut_unroll(&a.product(&b), n).forest;
        let rhs = cut_unroll(&a, n).forest.product(&cut_unroll(&b, n).forest);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn unroll_is_additive(a in system(8), b in system(8), n in 0usize..10) {
        let lhs = cut_unroll(&a.sum(&b), n).forest;
        prop_assert_eq!(lhs, cut_unroll(&a, n).forest.union(&cut_unroll(&b, n).forest));
    }

    #[test]
    fn cut_equality_at_required_depth_is_final(x in system(6), j in 1usize..4, other in system(12), pick in 0u8..2) {
        // X times a j-cycle and j copies of X have equal unrolls.
        let (a, b) = if pick == 0 {
            (x.product(&Fdds::cycle(j)), x.repeat(j))
        } else {
            (x.repeat(j), other)
        };
        let n = required_depth(&a).max(required_depth(&b));
        let equal_at_n = cut_unroll(&a, n).forest == cut_unroll(&b, n).forest;
        if pick == 0 {
            prop_assert!(equal_at_n);
        }
        if equal_at_n {
            prop_assert_eq!(cut_unroll(&a, n + 5).forest, cut_unroll(&b, n + 5).forest);
            prop_assert_eq!(a.depth(), b.depth());
            prop_assert_eq!(a.alpha(), b.alpha());
        }
    }

    #[test]
    fn unroll_sizes(a in system(10), n in 0usize..8) {
        let cu = cut_unroll(&a, n);
        prop_assert_eq!(cu.forest.len() as usize, a.alpha());
        prop_assert!(cu.forest.trees().all(|t| t.depth() == n));
    }
}
