//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use zeta_towers::graph::SerreGraph;
use zeta_towers::tower::{int_voltages, Ramification, TowerDatum};

/// Two vertices joined by two edges with voltages 1 and 2 over `p = 2`;
/// the first vertex unramified, the second with decomposition group `2ℤ_2`.
pub fn ex11() -> TowerDatum {
    TowerDatum::from_edges(
        vec!["v1".into(), "v2".into()],
        2,
        &int_voltages(&[(0, 1, 1), (0, 1, 2)]),
        vec![Ramification::Unramified, Ramification::Ramified(1)],
    )
    .unwrap()
}

/// Counts closed dart sequences `e_1…e_k` with `t(e_i) = o(e_{i+1})`,
/// `e_{i+1} ≠ ē_i` and `e_1 ≠ ē_k`, by depth-first search.
pub fn brute_force_path_counts(g: &SerreGraph, k_max: usize) -> Vec<u64> {
    fn extend(g: &SerreGraph, path: &mut Vec<usize>, k: usize, count: &mut u64) {
        let last = *path.last().unwrap();
        if path.len() == k {
            let first = path[0];
            let closes = g.dart(last).terminus == g.dart(first).origin;
            if closes && g.dart(last).inverse != first {
                *count += 1;
            }
            return;
        }
        for next in 0..g.num_darts() {
            if g.dart(next).origin == g.dart(last).terminus && g.dart(last).inverse != next {
                path.push(next);
                extend(g, path, k, count);
                path.pop();
            }
        }
    }
    (1..=k_max)
        .map(|k| {
            let mut count = 0;
            for start in 0..g.num_darts() {
                extend(g, &mut vec![start], k, &mut count);
            }
            count
        })
        .collect()
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

/// Number of spanning trees by testing every `(|V| − 1)`-subset of edges.
pub fn brute_force_spanning_trees(g: &SerreGraph) -> u64 {
    let edges: Vec<(usize, usize)> = g
        .darts()
        .iter()
        .enumerate()
        .filter(|(i, d)| *i < d.inverse && d.origin != d.terminus)
        .map(|(_, d)| (d.origin, d.terminus))
        .collect();
    let nv = g.num_vertices();
    if nv == 1 {
        return 1;
    }
    let mut count = 0;
    let mut chosen = Vec::new();
    fn rec(
        edges: &[(usize, usize)],
        nv: usize,
        from: usize,
        chosen: &mut Vec<usize>,
        count: &mut u64,
    ) {
        if chosen.len() == nv - 1 {
            let mut parent: Vec<usize> = (0..nv).collect();
            for &e in chosen.iter() {
                let (a, b) = edges[e];
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra == rb {
                    return;
                }
                parent[ra] = rb;
            }
            *count += 1;
            return;
        }
        for e in from..edges.len() {
            chosen.push(e);
            rec(edges, nv, e + 1, chosen, count);
            chosen.pop();
        }
    }
    rec(&edges, nv, 0, &mut chosen, &mut count);
    count
}

/// `h′(1)` of an integer polynomial.
pub fn derivative_at_one(coeffs: &[BigInt]) -> BigInt {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigInt::from(k))
        .sum()
}

/// Same counts as [`brute_force_path_counts`], by dynamic programming over
/// the last dart of walks from each starting dart.
pub fn walk_path_counts(g: &SerreGraph, k_max: usize) -> Vec<BigInt> {
    let nd = g.num_darts();
    let mut totals = vec![BigInt::from(0); k_max];
    for start in 0..nd {
        let mut ends = vec![BigInt::from(0); nd];
        ends[start] = BigInt::from(1);
        for k in 1..=k_max {
            for (e, c) in ends.iter().enumerate() {
                if g.dart(e).terminus == g.dart(start).origin && g.dart(e).inverse != start {
                    totals[k - 1] += c;
                }
            }
            let mut next = vec![BigInt::from(0); nd];
            for (e, c) in ends.iter().enumerate() {
                for f in 0..nd {
                    if g.dart(f).origin == g.dart(e).terminus && g.dart(e).inverse != f {
                        next[f] += c;
                    }
                }
            }
            ends = next;
        }
    }
    totals
}
