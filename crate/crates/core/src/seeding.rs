//! Degree-proportional seed sampling from ground-truth communities.

use rand::Rng;

use crate::affinity::SeedAssignment;
use crate::benchmark::GroundTruth;
use crate::graph::Graph;
use crate::{Error, Result};

/// Seeds drawn from a community of `size` nodes.
pub fn seed_count(fraction: f64, size: usize) -> usize {
    ((fraction * size as f64).round() as usize).clamp(1, size.max(1))
}

/// Samples `max(1, round(fraction·|C|))` distinct nodes from each community
/// `C`, each draw proportional to degree among the nodes not yet drawn. Every
/// chosen node becomes one seed whose vector marks all of its ground-truth
/// communities.
pub fn pick_seeds<R: Rng + ?Sized>(
    graph: &Graph,
    truth: &GroundTruth,
    fraction: f64,
    rng: &mut R,
) -> Result<SeedAssignment> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::Argument(format!(
            "seed fraction {fraction} outside (0, 1]"
        )));
    }
    if truth.node_count() != graph.node_count() {
        return Err(Error::Argument(format!(
            "ground truth has {} nodes, graph has {}",
            truth.node_count(),
            graph.node_count()
        )));
    }
    let memberships = truth.memberships();
    let mut chosen = Vec::new();
    for community in truth.communities() {
        let mut pool: Vec<usize> = community.clone();
        let mut weights: Vec<f64> = pool
            .iter()
            .map(|&v| graph.neighbors(v).len() as f64)
            .collect();
        for _ in 0..seed_count(fraction, pool.len()) {
            let i = weighted_index(&weights, rng);
            chosen.push(pool.swap_remove(i));
            weights.swap_remove(i);
        }
    }
    chosen.sort_unstable();
    chosen.dedup();
    SeedAssignment::from_memberships(
        truth.k(),
        chosen.into_iter().map(|v| (v, memberships[v].clone())),
    )
}

/// Draw proportional to `weights`; uniform when every weight is zero.
fn weighted_index<R: Rng + ?Sized>(weights: &[f64], rng: &mut R) -> usize {
    let total: f64 = weights.iter().sum();
    if total <= 0.0 {
        return rng.gen_range(0..weights.len());
    }
    let mut u = rng.gen::<f64>() * total;
    for (i, &w) in weights.iter().enumerate() {
        if u < w {
            return i;
        }
        u -= w;
    }
    weights.iter().rposition(|&w| w > 0.0).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn two_cliques() -> (Graph, GroundTruth) {
        let mut edges = Vec::new();
        for block in [0..10, 10..30] {
            for u in block.clone() {
                for v in u + 1..block.end {
                    edges.push((u, v));
                }
            }
        }
        edges.push((0, 10));
        let g = Graph::from_edges(30, edges).unwrap();
        let t = GroundTruth::new(30, vec![(0..10).collect(), (10..30).collect()]).unwrap();
        (g, t)
    }

    #[test]
    fn counts_follow_rounding() {
        assert_eq!(seed_count(0.10, 20), 2);
        assert_eq!(seed_count(0.06, 10), 1);
        assert_eq!(seed_count(0.01, 10), 1);
        assert_eq!(seed_count(1.0, 13), 13);
        let (g, t) = two_cliques();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = pick_seeds(&g, &t, 0.10, &mut rng).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.nodes().filter(|&v| v < 10).count(), 1);
    }

    #[test]
    fn full_fraction_seeds_everything() {
        let (g, t) = two_cliques();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = pick_seeds(&g, &t, 1.0, &mut rng).unwrap();
        assert_eq!(s.len(), 30);
        assert_eq!(s.get(12).unwrap(), &[0.0, 1.0]);
    }

    #[test]
    fn overlapping_node_gets_multi_hot_vector() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let t = GroundTruth::new(3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let s = pick_seeds(&g, &t, 1.0, &mut rng).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.get(1).unwrap(), &[1.0, 1.0]);
    }

    #[test]
    fn rejects_bad_fraction() {
        let (g, t) = two_cliques();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(pick_seeds(&g, &t, 0.0, &mut rng).is_err());
        assert!(pick_seeds(&g, &t, 1.5, &mut rng).is_err());
    }

    #[test]
    fn deterministic_under_seed() {
        let (g, t) = two_cliques();
        let a = pick_seeds(&g, &t, 0.3, &mut ChaCha8Rng::seed_from_u64(11)).unwrap();
        let b = pick_seeds(&g, &t, 0.3, &mut ChaCha8Rng::seed_from_u64(11)).unwrap();
        assert_eq!(a, b);
    }
}
