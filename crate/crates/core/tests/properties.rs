// SPDX-License-Identifier: Apache-2.0

use proptest::prelude::*;
use tspbench_core::{
    factorial, next_permutation, partition, path_cost, rank, solve_range, solve_serial, unrank,
    CostMatrix, SolveResult, WorkRange,
};

/// Lexicographic enumeration by recursive selection, independent of the
/// successor and unranking code under test.
fn lex_permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &head) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in lex_permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

fn brute_force(m: &CostMatrix) -> (u64, Vec<usize>) {
    let cities: Vec<usize> = (1..m.n()).collect();
    lex_permutations(&cities)
        .into_iter()
        .map(|p| {
            let mut cost = 0;
            let mut prev = 0;
            for &c in &p {
                cost += m.row(prev)[c];
                prev = c;
            }
            (cost + m.row(prev)[0], p)
        })
        .min()
        .unwrap()
}

#[test]
fn unrank_matches_lexicographic_enumeration() {
    for k in 0..=6 {
        let items: Vec<usize> = (0..k).collect();
        let all = lex_permutations(&items);
        assert_eq!(all.len() as u128, factorial(k).unwrap());
        for (i, p) in all.iter().enumerate() {
            assert_eq!(&unrank(i as u128, &items).unwrap(), p);
        }
        for w in all.windows(2) {
            assert!(w[0] < w[1]);
        }
    }
}

#[test]
fn rank_unrank_round_trip_up_to_seven() {
    for k in 0..=7 {
        let items: Vec<usize> = (10..10 + k).collect();
        for i in 0..factorial(k).unwrap() {
            let p = unrank(i, &items).unwrap();
            assert_eq!(rank(&p).unwrap(), i);
        }
    }
}

#[test]
fn successor_agrees_with_unrank() {
    for k in 1..=6 {
        let items: Vec<u8> = (0..k as u8).collect();
        let count = factorial(k).unwrap();
        for i in 0..count - 1 {
            let mut p = unrank(i, &items).unwrap();
            assert!(next_permutation(&mut p));
            assert_eq!(p, unrank(i + 1, &items).unwrap());
        }
        let mut last = unrank(count - 1, &items).unwrap();
        assert!(!next_permutation(&mut last));
        assert_eq!(last, items);
    }
}

#[test]
fn factorial_ratio() {
    for n in 1..=34 {
        assert_eq!(factorial(n).unwrap() / factorial(n - 1).unwrap(), n as u128);
    }
}

fn check_partition(total: u128, workers: usize) {
    let ranges = partition(total, workers).unwrap();
    assert_eq!(ranges.len(), workers);
    let mut next = 0;
    for r in &ranges {
        assert_eq!(r.start(), next);
        next = r.end();
    }
    assert_eq!(next, total);
    let longest = ranges.iter().map(WorkRange::len).max().unwrap();
    let shortest = ranges.iter().map(WorkRange::len).min().unwrap();
    assert!(longest - shortest <= 1);
    for w in ranges.windows(2) {
        assert!(w[0].len() >= w[1].len());
    }
}

#[test]
fn partition_exhaustive_small() {
    for total in 0..=100 {
        for workers in 1..=10 {
            check_partition(total, workers);
        }
    }
}

fn matrix_strategy(max_n: usize, symmetric: bool) -> impl Strategy<Value = CostMatrix> {
    (2..=max_n)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(0u64..1000, n * n)))
        .prop_map(move |(n, mut raw)| {
            for i in 0..n {
                raw[i * n + i] = 0;
                if symmetric {
                    for j in 0..i {
                        raw[i * n + j] = raw[j * n + i];
                    }
                }
            }
            CostMatrix::from_flat(n, raw).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partition_sound(total in 0u128..=3_628_800, workers in 1usize..=64) {
        check_partition(total, workers);
    }

    #[test]
    fn serial_matches_brute_force(m in matrix_strategy(7, false)) {
        let r = solve_serial(&m);
        let (cost, order) = brute_force(&m);
        prop_assert_eq!(r.cost, cost);
        let mut path = vec![0];
        path.extend(order);
        path.push(0);
        prop_assert_eq!(r.path, path);
        prop_assert_eq!(r.evaluated, m.tour_count());
    }

    #[test]
    fn any_partition_reduces_to_serial(
        m in matrix_strategy(8, false),
        cuts in prop::collection::vec(0.0f64..1.0, 0..6),
    ) {
        let total = m.tour_count();
        let mut bounds: Vec<u128> = cuts.iter().map(|c| (c * total as f64) as u128).collect();
        bounds.push(0);
        bounds.push(total);
        bounds.sort();
        let merged = bounds
            .windows(2)
            .map(|w| solve_range(&m, WorkRange::new(w[0], w[1]).unwrap()).unwrap())
            .fold(SolveResult::empty(), SolveResult::merge);
        prop_assert_eq!(merged, solve_serial(&m));
    }

    #[test]
    fn symmetric_reversal(m in matrix_strategy(8, true), idx in any::<u64>()) {
        let cities: Vec<usize> = (1..m.n()).collect();
        let p = unrank(u128::from(idx) % m.tour_count(), &cities).unwrap();
        let mut rev = p.clone();
        rev.reverse();
        prop_assert_eq!(path_cost(&p, &m).unwrap(), path_cost(&rev, &m).unwrap());
    }

    #[test]
    fn lower_bound_and_shift(m in matrix_strategy(7, false), c in 1u64..500) {
        let n = m.n();
        let r = solve_serial(&m);
        let min_off = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m.row(i)[j])
            .min()
            .unwrap();
        prop_assert!(r.cost >= n as u64 * min_off);

        let shifted: Vec<u64> = (0..n * n)
            .map(|k| m.row(k / n)[k % n] + if k / n == k % n { 0 } else { c })
            .collect();
        let s = solve_serial(&CostMatrix::from_flat(n, shifted).unwrap());
        prop_assert_eq!(s.cost, r.cost + n as u64 * c);
        prop_assert_eq!(s.path, r.path);
    }

    #[test]
    fn merge_is_associative_and_commutative(
        m in matrix_strategy(6, false),
        a in 0u128..120, b in 0u128..120, c in 0u128..120,
    ) {
        let total = m.tour_count();
        let r = |x: u128| {
            let s = x % total;
            solve_range(&m, WorkRange::new(s, (s + 3).min(total)).unwrap()).unwrap()
        };
        let (x, y, z) = (r(a), r(b), r(c));
        prop_assert_eq!(x.clone().merge(y.clone()), y.clone().merge(x.clone()));
        prop_assert_eq!(
            x.clone().merge(y.clone()).merge(z.clone()),
            x.merge(y.merge(z))
        );
    }
}
