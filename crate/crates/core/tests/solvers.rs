mod common;

use common::{forest_of, random_disconnected, rng, same, Parents};
use fdds::forest_divide;
use fdds::gen::{random_connected, random_fdds, shuffle_labels};
use fdds::oracle::{brute_divide, brute_divide_in, brute_root, brute_unroll_divide, Catalog};
use fdds::solvers::{
    all_roots, divide_connected, floor_log2, root_connected, root_forest, solve_axk,
    solve_component_extremal, unroll_divide, Certificate, ExtremalMode,
};
use fdds::unroll::{cut_unroll, required_depth, PeriodicPattern};
use fdds::{Fdds, Forest, Status, Tree};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn f(succ: &[usize]) -> Fdds {
    Fdds::from_succ(succ.to_vec()).unwrap()
}

fn system(max: usize) -> impl Strategy<Value = Fdds> {
    (1..=max, any::<u64>())
        .prop_map(|(n, seed)| random_fdds(&mut ChaCha8Rng::seed_from_u64(seed), n))
}

fn connected(max: usize) -> impl Strategy<Value = Fdds> {
    (1..=max, any::<u64>())
        .prop_map(|(n, seed)| random_connected(&mut ChaCha8Rng::seed_from_u64(seed), n))
}

fn random_forest_of(seed: u64, max_trees: usize, max_nodes: usize) -> Forest {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let count = r.gen_range(1..=max_trees);
    let trees: Vec<Parents> = (0..count)
        .map(|_| {
            let n = r.gen_range(1..=max_nodes);
            Parents::random(&mut r, n)
        })
        .collect();
    forest_of(&trees)
}

/// Every found outcome carries a certificate that matches the target.
fn certified(out: &fdds::SolveOutcome, target: &Fdds) -> bool {
    match &out.certificate {
        Some(Certificate::Product(p)) => same(p, target),
        Some(Certificate::CutProduct { n, forest }) => *forest == cut_unroll(target, *n).forest,
        None => false,
    }
}

#[test]
fn forest_division_can_succeed_where_verification_fails() {
    let mut cat = Catalog::new();
    let a_side: Vec<Fdds> = (1..=4).flat_map(|n| cat.connected(n).to_vec()).collect();
    let b_side: Vec<Fdds> = (1..=8).flat_map(|n| cat.connected(n).to_vec()).collect();
    let mut rejected = 0;
    for a in &a_side {
        for b in &b_side {
            let n = required_depth(b);
            let cut_level =
                forest_divide(&cut_unroll(b, n).forest, &cut_unroll(a, n).forest).is_some();
            let out = divide_connected(a, b);
            let oracle = brute_divide_in(&mut cat, a, b, true).unwrap();
            assert_eq!(out.is_found(), !oracle.is_empty(), "{a:?} {b:?}");
            if cut_level && !out.is_found() {
                rejected += 1;
            }
        }
    }
    assert!(rejected > 0);
    // A 2-cycle divides the unroll of a 4-cycle, but no connected X has C2 X = C4.
    assert_eq!(
        divide_connected(&Fdds::cycle(2), &Fdds::cycle(4)).status,
        Status::NotDivisible
    );
}

#[test]
fn unroll_division_agrees_with_oracle_on_small_grid() {
    let mut cat = Catalog::new();
    let a_side: Vec<Fdds> = (1..=3).flat_map(|n| cat.all(n).to_vec()).collect();
    let b_side: Vec<Fdds> = (1..=7).flat_map(|n| cat.all(n).to_vec()).collect();
    for a in &a_side {
        for b in &b_side {
            let out = unroll_divide(a, b);
            let oracle = brute_unroll_divide(&mut cat, a, b).unwrap();
            assert_eq!(out.is_found(), !oracle.is_empty(), "{a:?} {b:?}");
            if out.is_found() {
                assert!(certified(&out, b));
            }
        }
    }
}

#[test]
fn root_of_a_path_is_itself() {
    for d in 0..6 {
        let a = Forest::from_trees([Tree::path(d)]);
        for k in 1..6 {
            assert_eq!(root_forest(&a, k), Some(a.clone()));
        }
        let expected: Vec<u32> = (2..=floor_log2(a.size())).collect();
        let got: Vec<u32> = all_roots(&a).into_iter().map(|(k, _)| k).collect();
        assert_eq!(got, expected);
    }
}

#[test]
fn fourth_powers_have_square_roots() {
    for seed in 0..30 {
        let base = random_forest_of(seed, 2, 4);
        let a = base.power(4);
        if a.size() < 16 {
            continue;
        }
        let roots = all_roots(&a);
        let ks: Vec<u32> = roots.iter().map(|(k, _)| *k).collect();
        assert!(ks.contains(&2) && ks.contains(&4), "{ks:?}");
        assert!(ks.iter().all(|&k| k <= floor_log2(a.size())));
        for (k, r) in roots {
            assert_eq!(r.power(k), a);
        }
    }
}

#[test]
fn two_cycle_has_no_connected_square_root() {
    assert_eq!(
        root_connected(&Fdds::cycle(2), 2).status,
        Status::NotDivisible
    );
    assert!(brute_root(&Fdds::cycle(2), 2, true).unwrap().is_empty());
}

#[test]
fn oversized_exponent_is_rejected_immediately() {
    let a = f(&[1, 0, 0]);
    let b = a.product(&Fdds::cycle(3));
    assert!(floor_log2(b.len() as u64) < 5);
    assert_eq!(solve_axk(&a, &b, 5).status, Status::NotDivisible);
}

#[test]
fn extremal_recovers_two_isomorphic_components() {
    let mut r = rng(456);
    for _ in 0..40 {
        let n = r.gen_range(1..=6);
        let a = random_connected(&mut r, n);
        // The component's cycle must not repeat a shorter pattern; otherwise its
        // unroll splits into several copies of one shift class.
        let comp = loop {
            let m = r.gen_range(1..=8);
            let c = random_connected(&mut r, m);
            let info = &c.components()[0];
            if PeriodicPattern::new(info.trees.clone()).smallest_period() == info.period() {
                break c;
            }
        };
        let x = comp.repeat(2);
        let b = shuffle_labels(&mut r, &a.product(&x));
        let out = solve_component_extremal(&a, &b, ExtremalMode::Maximal);
        assert!(out.solution.is_some(), "A={a:?} X={x:?} {:?}", out.status);
        assert!(same(&a.product(out.solution.as_ref().unwrap()), &b));
        assert!(certified(&out, &b));
    }
}

#[test]
fn extremal_recovers_symmetric_component() {
    // A 2-cycle with the same tree on both cycle nodes.
    let x = f(&[1, 0, 0, 1, 2, 3]);
    for a in [f(&[0]), f(&[1, 2, 0, 0]), f(&[0, 0, 1])] {
        let b = a.product(&x);
        let out = solve_component_extremal(&a, &b, ExtremalMode::Minimal);
        assert!(same(out.solution.as_ref().unwrap(), &x), "{a:?}");
    }
}

#[test]
fn extremal_reports_unsupported_intermediate_shapes() {
    // B = C1 + C2 over the fixed point: neither three fixed points nor one
    // 3-cycle works, and a split into two components exists.
    let b = f(&[0, 2, 1]);
    let out = solve_component_extremal(&Fdds::fixed_point(), &b, ExtremalMode::Minimal);
    assert_eq!(out.status, Status::NotSupported);
    assert!(out.solution.is_none());
}

#[test]
fn extremal_answers_are_oracle_answers() {
    let mut cat = Catalog::new();
    let a_side: Vec<Fdds> = (1..=3).flat_map(|n| cat.all(n).to_vec()).collect();
    let b_side: Vec<Fdds> = (1..=6).flat_map(|n| cat.all(n).to_vec()).collect();
    for a in &a_side {
        for b in &b_side {
            let oracle = brute_divide_in(&mut cat, a, b, false).unwrap();
            for mode in [ExtremalMode::Minimal, ExtremalMode::Maximal] {
                let out = solve_component_extremal(a, b, mode);
                if let Some(x) = &out.solution {
                    assert!(oracle.iter().any(|y| same(x, y)), "{a:?} {b:?} {mode:?}");
                }
                if oracle.is_empty() {
                    assert_ne!(out.status, Status::Found);
                }
            }
        }
    }
}

#[test]
fn degenerate_inputs() {
    let a = f(&[1, 0]);
    assert_eq!(
        divide_connected(&Fdds::empty(), &a).status,
        Status::NotDivisible
    );
    assert_eq!(
        divide_connected(&a, &Fdds::empty()).status,
        Status::NotDivisible
    );
    let both = divide_connected(&Fdds::empty(), &Fdds::empty());
    assert_eq!(both.status, Status::Found);
    assert!(both.solution.unwrap().is_empty());
    assert_eq!(
        unroll_divide(&a, &Fdds::empty()).status,
        Status::NotDivisible
    );
    assert_eq!(
        divide_connected(&Fdds::cycle(2), &Fdds::cycle(3)).status,
        Status::NotDivisible
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn division_roundtrip(a in system(15), x in connected(15), seed in any::<u64>()) {
        let b = shuffle_labels(&mut ChaCha8Rng::seed_from_u64(seed), &a.product(&x));
        let out = divide_connected(&a, &b);
        prop_assert!(certified(&out, &b));
        prop_assert!(same(out.solution.as_ref().unwrap(), &x));
    }

    #[test]
    fn found_answers_verify(a in system(6), b in system(18)) {
        let out = divide_connected(&a, &b);
        if out.is_found() {
            let x = out.solution.as_ref().unwrap();
            prop_assert!(x.is_connected());
            prop_assert!(same(&a.product(x), &b));
            prop_assert!(certified(&out, &b));
        }
        let out = unroll_divide(&a, &b);
        if out.is_found() {
            prop_assert!(certified(&out, &b));
        }
    }

    #[test]
    fn forest_root_roundtrip(seed in any::<u64>(), k in 2u32..=3) {
        let base = random_forest_of(seed, 3, if k == 2 { 6 } else { 4 });
        let a = base.power(k);
        prop_assert_eq!(root_forest(&a, k), Some(base));
    }

    #[test]
    fn connected_square_root_roundtrip(x in connected(12), seed in any::<u64>()) {
        let a = shuffle_labels(&mut ChaCha8Rng::seed_from_u64(seed), &x.power(2));
        let out = root_connected(&a, 2);
        prop_assert!(same(out.solution.as_ref().unwrap(), &x));
        prop_assert!(certified(&out, &a));
    }

    #[test]
    fn axk_roundtrip(a in system(6), x in connected(3)) {
        let b = a.product(&x.power(2));
        prop_assume!(b.len() <= 60);
        let out = solve_axk(&a, &b, 2);
        prop_assert!(same(out.solution.as_ref().unwrap(), &x));
        prop_assert!(certified(&out, &b));
    }

    #[test]
    fn unroll_division_roundtrip(a in system(8), seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let parts = r.gen_range(1..=3);
        let y = random_disconnected(&mut r, parts, 5);
        prop_assume!(a.len() * y.len() <= 40);
        let b = a.product(&y);
        let out = unroll_divide(&a, &b);
        prop_assert!(certified(&out, &b));
        let sol = out.solution.as_ref().unwrap();
        let n = required_depth(&b);
        prop_assert_eq!(cut_unroll(sol, n).forest, cut_unroll(&y, n).forest);
    }

    #[test]
    fn connected_division_matches_oracle(a in system(4), x in connected(4)) {
        let b = a.product(&x);
        let answers = brute_divide(&a, &b, true).unwrap();
        prop_assert!(answers.iter().any(|y| same(y, &x)));
        let found = divide_connected(&a, &b);
        prop_assert!(answers.iter().any(|y| same(y, found.solution.as_ref().unwrap())));
    }
}
