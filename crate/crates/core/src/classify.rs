//! From affinities to communities, and the seed-expansion loop.

use crate::affinity::{compute_affinities, AffinityMatrix, SeedAssignment};
use crate::graph::Graph;
use crate::solver::SolveParams;
use crate::{Error, Result};

/// Disjoint assignment: one community per node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    labels: Vec<usize>,
    k: usize,
}

impl Partition {
    pub fn new(labels: Vec<usize>, k: usize) -> Result<Self> {
        if let Some(&bad) = labels.iter().find(|&&l| l >= k) {
            return Err(Error::Argument(format!(
                "label {bad} out of range (k = {k})"
            )));
        }
        Ok(Self { labels, k })
    }

    /// Labels from arbitrary ids, renumbered in order of first appearance.
    pub fn from_ids<T: PartialEq + Clone>(ids: &[T]) -> Self {
        let mut seen: Vec<T> = Vec::new();
        let labels = ids
            .iter()
            .map(|id| match seen.iter().position(|s| s == id) {
                Some(p) => p,
                None => {
                    seen.push(id.clone());
                    seen.len() - 1
                }
            })
            .collect();
        Self {
            labels,
            k: seen.len(),
        }
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> usize {
        self.labels[v]
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    /// Non-empty blocks, in community order.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.k];
        for (v, &l) in self.labels.iter().enumerate() {
            blocks[l].push(v);
        }
        blocks.retain(|b| !b.is_empty());
        blocks
    }

    pub fn to_cover(&self) -> Cover {
        Cover {
            memberships: self.labels.iter().map(|&l| vec![l]).collect(),
            k: self.k,
        }
    }
}

/// Overlapping assignment: a non-empty, sorted set of communities per node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    memberships: Vec<Vec<usize>>,
    k: usize,
}

impl Cover {
    pub fn new(mut memberships: Vec<Vec<usize>>, k: usize) -> Result<Self> {
        for (v, m) in memberships.iter_mut().enumerate() {
            m.sort_unstable();
            m.dedup();
            if m.is_empty() {
                return Err(Error::Argument(format!("node {v} has no community")));
            }
            if let Some(&bad) = m.iter().find(|&&l| l >= k) {
                return Err(Error::Argument(format!(
                    "community {bad} out of range (k = {k})"
                )));
            }
        }
        Ok(Self { memberships, k })
    }

    pub fn memberships(&self) -> &[Vec<usize>] {
        &self.memberships
    }

    pub fn of(&self, v: usize) -> &[usize] {
        &self.memberships[v]
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn node_count(&self) -> usize {
        self.memberships.len()
    }

    /// Member lists of every community that has at least one member.
    pub fn communities(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.k];
        for (v, m) in self.memberships.iter().enumerate() {
            for &l in m {
                out[l].push(v);
            }
        }
        out.retain(|c| !c.is_empty());
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Disjoint,
    Overlapping,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "disjoint" => Ok(Mode::Disjoint),
            "overlapping" => Ok(Mode::Overlapping),
            other => Err(Error::Argument(format!(
                "unknown mode {other:?} (expected disjoint or overlapping)"
            ))),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Disjoint => "disjoint",
            Mode::Overlapping => "overlapping",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Assignment {
    Partition(Partition),
    Cover(Cover),
}

impl Assignment {
    /// Communities of node `v`.
    pub fn of(&self, v: usize) -> &[usize] {
        match self {
            Assignment::Partition(p) => std::slice::from_ref(&p.labels[v]),
            Assignment::Cover(c) => c.of(v),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            Assignment::Partition(p) => p.node_count(),
            Assignment::Cover(c) => c.node_count(),
        }
    }

    pub fn to_cover(&self) -> Cover {
        match self {
            Assignment::Partition(p) => p.to_cover(),
            Assignment::Cover(c) => c.clone(),
        }
    }
}

/// Index of the largest entry; the lowest index wins ties.
fn argmax(row: &[f64]) -> usize {
    let mut best = 0;
    for (l, &a) in row.iter().enumerate().skip(1) {
        if a > row[best] {
            best = l;
        }
    }
    best
}

pub fn classify_disjoint(aff: &AffinityMatrix) -> Partition {
    Partition {
        labels: aff.rows().map(argmax).collect(),
        k: aff.k(),
    }
}

/// Communities above the largest drop in the sorted affinities of `row`.
/// The earliest maximal drop wins, so a flat row yields only its first
/// top community.
pub fn largest_gap_prefix(row: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..row.len()).collect();
    order.sort_by(|&a, &b| row[b].total_cmp(&row[a]).then(a.cmp(&b)));
    let mut cut = 1;
    let mut widest = f64::NEG_INFINITY;
    for j in 0..order.len().saturating_sub(1) {
        let drop = row[order[j]] - row[order[j + 1]];
        if drop > widest {
            widest = drop;
            cut = j + 1;
        }
    }
    let mut chosen = order[..cut.min(order.len())].to_vec();
    chosen.sort_unstable();
    chosen
}

pub fn classify_overlapping(aff: &AffinityMatrix) -> Cover {
    Cover {
        memberships: aff.rows().map(largest_gap_prefix).collect(),
        k: aff.k(),
    }
}

pub fn classify(aff: &AffinityMatrix, mode: Mode) -> Assignment {
    match mode {
        Mode::Disjoint => Assignment::Partition(classify_disjoint(aff)),
        Mode::Overlapping => Assignment::Cover(classify_overlapping(aff)),
    }
}

/// Promotes, for every community `A`, the `⌈ε·|C_A|⌉` non-seed members of
/// `A` with the highest affinity to `A`. A partition promotes one-hot seeds;
/// a cover gives the new seed a 1 at `A` and at every community it is
/// assigned to. Existing seeds only ever gain 1-entries.
pub fn expand_seeds(
    aff: &AffinityMatrix,
    assignment: &Assignment,
    seeds: &SeedAssignment,
    epsilon: f64,
) -> Result<SeedAssignment> {
    if !(epsilon > 0.0) {
        return Err(Error::Argument(format!(
            "epsilon {epsilon} must be positive"
        )));
    }
    let k = aff.k();
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); k];
    for v in 0..assignment.node_count() {
        if seeds.contains(v) {
            continue;
        }
        for &l in assignment.of(v) {
            classes[l].push(v);
        }
    }

    let mut expanded = seeds.clone();
    for (l, class) in classes.iter_mut().enumerate() {
        if class.is_empty() {
            continue;
        }
        let take = ((epsilon * class.len() as f64) - 1e-9).ceil() as usize;
        let take = take.clamp(1, class.len());
        class.sort_by(|&a, &b| aff.get(b, l).total_cmp(&aff.get(a, l)).then(a.cmp(&b)));
        for &v in &class[..take] {
            match assignment {
                Assignment::Partition(_) => expanded.merge_hot(v, &[l]),
                Assignment::Cover(c) => {
                    expanded.merge_hot(v, &[l]);
                    expanded.merge_hot(v, c.of(v));
                }
            }
        }
    }
    Ok(expanded)
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub assignment: Assignment,
    pub affinities: AffinityMatrix,
    /// Seed set used for the final solve.
    pub seeds: SeedAssignment,
}

/// `iterations − 1` rounds of solve, classify and expand, then a final
/// solve and classify. One iteration is the plain method.
pub fn run(
    graph: &Graph,
    seeds: &SeedAssignment,
    mode: Mode,
    iterations: usize,
    epsilon: f64,
    params: &SolveParams,
) -> Result<RunOutcome> {
    if iterations == 0 {
        return Err(Error::Argument("iterations must be at least 1".into()));
    }
    let mut current = seeds.clone();
    for round in 1..=iterations {
        let annotate = |e: Error| Error::Iteration {
            iteration: round,
            source: Box::new(e),
        };
        let affinities = compute_affinities(graph, &current, params).map_err(annotate)?;
        let assignment = classify(&affinities, mode);
        if round == iterations {
            return Ok(RunOutcome {
                assignment,
                affinities,
                seeds: current,
            });
        }
        current = expand_seeds(&affinities, &assignment, &current, epsilon)?;
    }
    unreachable!("loop returns on the last iteration")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(rows: &[&[f64]]) -> AffinityMatrix {
        AffinityMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn argmax_and_ties() {
        let p = classify_disjoint(&matrix(&[&[0.2, 0.8], &[0.5, 0.5]]));
        assert_eq!(p.labels(), &[1, 0]);
    }

    #[test]
    fn gap_rule() {
        assert_eq!(largest_gap_prefix(&[0.9, 0.85, 0.1, 0.05]), vec![0, 1]);
        assert_eq!(largest_gap_prefix(&[0.05, 0.1, 0.85, 0.9]), vec![2, 3]);
        assert_eq!(largest_gap_prefix(&[0.25; 4]), vec![0]);
        assert_eq!(largest_gap_prefix(&[0.3]), vec![0]);
        // Two equal drops: the first one decides.
        assert_eq!(largest_gap_prefix(&[0.9, 0.6, 0.3]), vec![0]);
    }

    #[test]
    fn single_community_cover() {
        let c = classify_overlapping(&matrix(&[&[0.0], &[1.0]]));
        assert_eq!(c.memberships(), &[vec![0], vec![0]]);
    }

    fn seeds(k: usize, list: &[(usize, &[usize])]) -> SeedAssignment {
        SeedAssignment::from_memberships(k, list.iter().map(|(v, c)| (*v, c.to_vec()))).unwrap()
    }

    #[test]
    fn expansion_count_uses_ceiling() {
        // 51 nodes, seed 0; the other 50 are classified into community 0.
        let rows: Vec<Vec<f64>> = (0..51).map(|v| vec![1.0 - v as f64 / 100.0]).collect();
        let aff = AffinityMatrix::from_rows(&rows).unwrap();
        let assignment = Assignment::Partition(classify_disjoint(&aff));
        let s = seeds(1, &[(0, &[0])]);
        let grown = expand_seeds(&aff, &assignment, &s, 0.1).unwrap();
        assert_eq!(grown.len(), 6);
        assert!((1..=5).all(|v| grown.contains(v)));

        let small = AffinityMatrix::from_rows(&rows[..4]).unwrap();
        let assignment = Assignment::Partition(classify_disjoint(&small));
        let grown = expand_seeds(&small, &assignment, &s, 0.1).unwrap();
        assert_eq!(grown.len(), 2);
    }

    #[test]
    fn expansion_ties_prefer_lower_node() {
        let aff = matrix(&[&[1.0], &[0.5], &[0.5], &[0.5]]);
        let assignment = Assignment::Partition(classify_disjoint(&aff));
        let grown = expand_seeds(&aff, &assignment, &seeds(1, &[(0, &[0])]), 0.1).unwrap();
        assert!(grown.contains(1) && !grown.contains(2));
    }

    #[test]
    fn overlapping_promotion_copies_cover() {
        let aff = matrix(&[
            &[1.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0],
            &[0.0, 0.0, 1.0],
            &[0.9, 0.8, 0.0],
        ]);
        let cover = Assignment::Cover(classify_overlapping(&aff));
        assert_eq!(cover.of(3), &[0, 1]);
        let s = seeds(3, &[(0, &[0]), (1, &[1]), (2, &[2])]);
        let grown = expand_seeds(&aff, &cover, &s, 0.1).unwrap();
        assert_eq!(grown.get(3).unwrap(), &[1.0, 1.0, 0.0]);
        assert_eq!(grown.get(0).unwrap(), &[1.0, 0.0, 0.0]);
    }

    #[test]
    fn bad_epsilon() {
        let aff = matrix(&[&[1.0]]);
        let assignment = Assignment::Partition(classify_disjoint(&aff));
        assert!(expand_seeds(&aff, &assignment, &seeds(1, &[(0, &[0])]), 0.0).is_err());
    }

    #[test]
    fn path_run() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let s = seeds(2, &[(0, &[0]), (4, &[1])]);
        let out = run(&g, &s, Mode::Disjoint, 1, 0.1, &SolveParams::default()).unwrap();
        match out.assignment {
            Assignment::Partition(p) => assert_eq!(p.labels(), &[0, 0, 0, 1, 1]),
            _ => panic!("expected a partition"),
        }
        assert!(run(&g, &s, Mode::Disjoint, 0, 0.1, &SolveParams::default()).is_err());
    }

    #[test]
    fn partition_helpers() {
        let p = Partition::from_ids(&["b", "a", "b"]);
        assert_eq!((p.labels(), p.k()), (&[0, 1, 0][..], 2));
        assert_eq!(p.blocks(), vec![vec![0, 2], vec![1]]);
        assert!(Partition::new(vec![0, 3], 2).is_err());
        assert!(Cover::new(vec![vec![]], 1).is_err());
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("overlapping".parse::<Mode>().unwrap(), Mode::Overlapping);
        assert!("both".parse::<Mode>().is_err());
    }
}
