//! Seeded generators of small graphs and tower data for property checks.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::SerreGraph;
use crate::iwasawa::regime_start;
use crate::tower::{Ramification, TowerDatum};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Endpoints of a connected multigraph (loops allowed) with `nv` vertices
/// and `ne ≥ nv − 1` edges.
fn connected_edges(rng: &mut impl Rng, nv: usize, ne: usize) -> Vec<(usize, usize)> {
    let mut edges: Vec<(usize, usize)> = (1..nv).map(|v| (rng.gen_range(0..v), v)).collect();
    while edges.len() < ne {
        edges.push((rng.gen_range(0..nv), rng.gen_range(0..nv)));
    }
    edges
}

/// A connected graph with at most `max_vertices` vertices and at most
/// `max_edges` edges (at least a spanning tree).
pub fn random_connected_graph(rng: &mut impl Rng, max_vertices: usize, max_edges: usize) -> SerreGraph {
    let nv = rng.gen_range(1..=max_vertices);
    let ne = rng.gen_range((nv - 1)..=max_edges.max(nv - 1));
    SerreGraph::from_edge_list(nv, &connected_edges(rng, nv, ne)).expect("generated graph is valid")
}

/// A datum on a connected base with voltages in `-voltage_bound..=voltage_bound`
/// and each vertex ramified with probability 1/2, `k_v ≤ max_k`.
pub fn random_datum(
    rng: &mut impl Rng,
    p: u64,
    max_vertices: usize,
    max_edges: usize,
    max_k: u32,
    voltage_bound: i64,
) -> TowerDatum {
    let nv = rng.gen_range(1..=max_vertices);
    let ne = rng.gen_range((nv - 1)..=max_edges.max(nv - 1));
    let edges: Vec<(usize, usize, BigInt)> = connected_edges(rng, nv, ne)
        .into_iter()
        .map(|(a, b)| (a, b, BigInt::from(rng.gen_range(-voltage_bound..=voltage_bound))))
        .collect();
    let ram = (0..nv)
        .map(|_| {
            if rng.gen_bool(0.5) {
                Ramification::Ramified(rng.gen_range(0..=max_k))
            } else {
                Ramification::Unramified
            }
        })
        .collect();
    let names = (0..nv).map(|i| format!("v{i}")).collect();
    TowerDatum::from_edges(names, p, &edges, ram).expect("generated datum is valid")
}

/// A datum whose tower has `χ(X_n) < 0` eventually, whose level `n_max` is
/// connected, and which leaves at least three levels past the regime start.
pub fn random_admissible_datum(
    rng: &mut impl Rng,
    p: u64,
    max_vertices: usize,
    max_edges: usize,
    max_k: u32,
    n_max: u32,
) -> TowerDatum {
    loop {
        let d = random_datum(rng, p, max_vertices, max_edges, max_k, 2 * p as i64);
        if !d.eventually_negative_euler_characteristic() {
            continue;
        }
        if !d.build_level_graph(n_max).graph().connected() {
            continue;
        }
        match regime_start(&d, n_max) {
            Ok(start) if start + 3 <= n_max => return d,
            _ => continue,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic_and_valid() {
        let a = random_datum(&mut rng(7), 3, 3, 4, 2, 5);
        let b = random_datum(&mut rng(7), 3, 3, 4, 2, 5);
        assert_eq!(a, b);
        let mut r = rng(1);
        for _ in 0..50 {
            let g = random_connected_graph(&mut r, 6, 8);
            assert!(g.connected());
            assert!(g.num_edges() <= 8.max(g.num_vertices() - 1));
        }
    }

    #[test]
    fn admissible_data_are_admissible() {
        let mut r = rng(11);
        for _ in 0..5 {
            let d = random_admissible_datum(&mut r, 2, 3, 4, 2, 5);
            assert!(d.eventually_negative_euler_characteristic());
            for n in 0..=5 {
                assert!(d.build_level_graph(n).graph().connected());
            }
        }
    }
}
