#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use seedwalk::{Graph, SeedAssignment};

/// Random connected graph: a random spanning tree plus `extra` random edges.
pub fn connected_graph<R: Rng>(n: usize, extra: usize, rng: &mut R) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = BTreeSet::new();
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        let (u, v) = (order[i], parent);
        edges.insert((u.min(v), u.max(v)));
    }
    for _ in 0..extra {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            edges.insert((u.min(v), u.max(v)));
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// `k ≤ n` communities, each with at least one one-hot seed.
pub fn one_hot_seeds<R: Rng>(n: usize, k: usize, rng: &mut R) -> SeedAssignment {
    let mut nodes: Vec<usize> = (0..n).collect();
    nodes.shuffle(rng);
    let mut pairs: Vec<(usize, Vec<usize>)> = (0..k).map(|l| (nodes[l], vec![l])).collect();
    for &v in &nodes[k..] {
        if rng.gen_bool(0.1) {
            pairs.push((v, vec![rng.gen_range(0..k)]));
        }
    }
    SeedAssignment::from_memberships(k, pairs).unwrap()
}

/// Like [`one_hot_seeds`] but with arbitrary fractional vectors; community
/// `l` keeps one seed with `α = 1` so coverage holds.
pub fn fractional_seeds<R: Rng>(n: usize, k: usize, rng: &mut R) -> SeedAssignment {
    let mut nodes: Vec<usize> = (0..n).collect();
    nodes.shuffle(rng);
    let count = rng.gen_range(k..=(2 * k).min(n));
    let mut map = std::collections::BTreeMap::new();
    for (i, &v) in nodes[..count].iter().enumerate() {
        let mut a: Vec<f64> = (0..k).map(|_| rng.gen::<f64>()).collect();
        if i < k {
            a[i] = 1.0;
        }
        map.insert(v, a);
    }
    SeedAssignment::new(k, map).unwrap()
}

/// Dense reference affinities: oracle absorption matrix times seed vectors.
pub fn oracle_affinities(graph: &Graph, seeds: &SeedAssignment) -> Vec<Vec<f64>> {
    let x = seedwalk::affinity::absorption_matrix_oracle(graph, seeds).unwrap();
    let seed_rows: Vec<&[f64]> = seeds.iter().map(|(_, a)| a).collect();
    let mut out = vec![vec![0.0; seeds.k()]; graph.node_count()];
    let mut row = 0;
    for v in 0..graph.node_count() {
        if let Some(a) = seeds.get(v) {
            out[v] = a.to_vec();
            continue;
        }
        for (j, a) in seed_rows.iter().enumerate() {
            for l in 0..seeds.k() {
                out[v][l] += x[row][j] * a[l];
            }
        }
        row += 1;
    }
    out
}

/// Proptest settings without on-disk failure persistence.
pub fn cases(n: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases: n,
        failure_persistence: None,
        ..Default::default()
    }
}
