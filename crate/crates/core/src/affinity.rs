//! Affinities of non-seed nodes from absorbing random walks.
//!
//! Seeds become absorbing states. For a non-seed node `u` and community `l`,
//! the affinity is the expected `α(x, l)` of the seed `x` where a walk from
//! `u` is absorbed. Writing `D₁` for the full-graph degrees of the non-seed
//! nodes and `A₁` for the adjacency among them, the affinity column `a_l`
//! satisfies
//!
//! ```text
//! (D₁ − A₁) a_l = b_l,    b_l(u) = Σ_{seed x ~ u} α(x, l)
//! ```
//!
//! which is symmetric and diagonally dominant, strictly so on every row with a
//! seed neighbor. Edges between two seeds play no part.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::graph::Graph;
use crate::solver::{self, SolveParams, SparseSymmetricMatrix};
use crate::{dense, Error, Result};

/// Seed nodes and their user-given affinity vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedAssignment {
    k: usize,
    seeds: BTreeMap<usize, Vec<f64>>,
}

impl SeedAssignment {
    /// Validates that there is at least one seed, every vector has length `k`
    /// with entries in `[0, 1]`, and every community has a seed with positive
    /// affinity.
    pub fn new(k: usize, seeds: BTreeMap<usize, Vec<f64>>) -> Result<Self> {
        if k == 0 {
            return Err(Error::Config("community count must be at least 1".into()));
        }
        if seeds.is_empty() {
            return Err(Error::Config("no seed nodes".into()));
        }
        let mut covered = vec![false; k];
        for (&node, vector) in &seeds {
            if vector.len() != k {
                return Err(Error::Config(format!(
                    "seed {node} has {} affinities, expected {k}",
                    vector.len()
                )));
            }
            for (l, &a) in vector.iter().enumerate() {
                if !(0.0..=1.0).contains(&a) {
                    return Err(Error::Config(format!(
                        "seed {node} has affinity {a} to community {l} outside [0, 1]"
                    )));
                }
                covered[l] |= a > 0.0;
            }
        }
        if let Some(l) = covered.iter().position(|&c| !c) {
            return Err(Error::Config(format!(
                "community {l} has no seed with positive affinity"
            )));
        }
        Ok(Self { k, seeds })
    }

    /// Seeds with one-hot (or multi-hot) membership vectors.
    pub fn from_memberships<I, C>(k: usize, memberships: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, C)>,
        C: IntoIterator<Item = usize>,
    {
        let mut seeds: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
        for (node, communities) in memberships {
            let v = seeds.entry(node).or_insert_with(|| vec![0.0; k]);
            for l in communities {
                if l >= k {
                    return Err(Error::Config(format!(
                        "community {l} out of range (k = {k})"
                    )));
                }
                v[l] = 1.0;
            }
        }
        Self::new(k, seeds)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.seeds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seeds.is_empty()
    }

    pub fn contains(&self, node: usize) -> bool {
        self.seeds.contains_key(&node)
    }

    pub fn get(&self, node: usize) -> Option<&[f64]> {
        self.seeds.get(&node).map(Vec::as_slice)
    }

    /// Seeds in ascending node order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &[f64])> {
        self.seeds.iter().map(|(&n, v)| (n, v.as_slice()))
    }

    pub fn nodes(&self) -> impl Iterator<Item = usize> + '_ {
        self.seeds.keys().copied()
    }

    /// Adds 1-entries to an existing seed, or inserts a new seed. Existing
    /// entries are never lowered.
    pub(crate) fn merge_hot(&mut self, node: usize, communities: &[usize]) {
        let k = self.k;
        let v = self.seeds.entry(node).or_insert_with(|| vec![0.0; k]);
        for &l in communities {
            v[l] = 1.0;
        }
    }

    fn check_nodes(&self, n: usize) -> Result<()> {
        match self.seeds.keys().next_back() {
            Some(&last) if last >= n => Err(Error::IndexOutOfRange {
                index: last,
                len: n,
            }),
            _ => Ok(()),
        }
    }
}

/// The linear system `(D₁ − A₁) a = b` over the non-seed nodes.
#[derive(Debug, Clone)]
pub struct AbsorbingSystem {
    matrix: SparseSymmetricMatrix,
    degrees: Vec<usize>,
    /// Per non-seed row: seed neighbors and edge multiplicity.
    boundary: Vec<Vec<(usize, usize)>>,
    /// Row index → node.
    nodes: Vec<usize>,
    /// Node → row index, `None` for seeds.
    rows: Vec<Option<usize>>,
}

impl AbsorbingSystem {
    pub fn build(graph: &Graph, seeds: &SeedAssignment) -> Result<Self> {
        let n = graph.node_count();
        seeds.check_nodes(n)?;
        let mut rows = vec![None; n];
        let mut nodes = Vec::with_capacity(n - seeds.len());
        for v in 0..n {
            if !seeds.contains(v) {
                rows[v] = Some(nodes.len());
                nodes.push(v);
            }
        }

        let mut matrix_rows = Vec::with_capacity(nodes.len());
        let mut boundary = Vec::with_capacity(nodes.len());
        let mut degrees = Vec::with_capacity(nodes.len());
        for (i, &u) in nodes.iter().enumerate() {
            let adj = graph.neighbors(u);
            let mut row = Vec::with_capacity(adj.len() + 1);
            let mut seeds_here: Vec<(usize, usize)> = Vec::new();
            let mut diag_placed = false;
            for &v in adj {
                match rows[v] {
                    Some(j) => {
                        if !diag_placed && j > i {
                            row.push((i, adj.len() as f64));
                            diag_placed = true;
                        }
                        row.push((j, -1.0));
                    }
                    None => match seeds_here.last_mut() {
                        Some((x, m)) if *x == v => *m += 1,
                        _ => seeds_here.push((v, 1)),
                    },
                }
            }
            if !diag_placed {
                row.push((i, adj.len() as f64));
            }
            matrix_rows.push(row);
            boundary.push(seeds_here);
            degrees.push(adj.len());
        }

        Ok(Self {
            matrix: SparseSymmetricMatrix::from_sorted_rows(matrix_rows),
            degrees,
            boundary,
            nodes,
            rows,
        })
    }

    pub fn matrix(&self) -> &SparseSymmetricMatrix {
        &self.matrix
    }

    /// Full-graph degrees of the non-seed nodes, in row order.
    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn boundary(&self, row: usize) -> &[(usize, usize)] {
        &self.boundary[row]
    }

    pub fn node_of_row(&self, row: usize) -> usize {
        self.nodes[row]
    }

    pub fn row_of_node(&self, node: usize) -> Option<usize> {
        self.rows.get(node).copied().flatten()
    }

    pub fn dimension(&self) -> usize {
        self.nodes.len()
    }

    /// `b_l(u) = Σ α(x, l)` over seed neighbors `x` of `u`, counted per edge.
    pub fn rhs(&self, seeds: &SeedAssignment, community: usize) -> Vec<f64> {
        self.boundary
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&(x, mult)| mult as f64 * seeds.get(x).map_or(0.0, |a| a[community]))
                    .sum()
            })
            .collect()
    }
}

/// Affinity of every node to every community, row-major `n × k`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffinityMatrix {
    n: usize,
    k: usize,
    values: Vec<f64>,
}

impl AffinityMatrix {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let k = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != k) {
            return Err(Error::Argument("ragged affinity rows".into()));
        }
        Ok(Self {
            n: rows.len(),
            k,
            values: rows.concat(),
        })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn row(&self, v: usize) -> &[f64] {
        &self.values[v * self.k..(v + 1) * self.k]
    }

    pub fn get(&self, v: usize, l: usize) -> f64 {
        self.values[v * self.k + l]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks(self.k.max(1)).take(self.n)
    }
}

/// Solves one system per community (in parallel) and assembles the affinity
/// matrix. Seed rows are copied verbatim; solved values are clamped to `[0, 1]`.
pub fn compute_affinities(
    graph: &Graph,
    seeds: &SeedAssignment,
    params: &SolveParams,
) -> Result<AffinityMatrix> {
    let system = AbsorbingSystem::build(graph, seeds)?;
    compute_with_system(&system, graph.node_count(), seeds, params)
}

pub fn compute_with_system(
    system: &AbsorbingSystem,
    n: usize,
    seeds: &SeedAssignment,
    params: &SolveParams,
) -> Result<AffinityMatrix> {
    let k = seeds.k();
    let mut values = vec![0.0; n * k];
    for (node, a) in seeds.iter() {
        values[node * k..(node + 1) * k].copy_from_slice(a);
    }
    if system.dimension() == 0 {
        return Ok(AffinityMatrix { n, k, values });
    }

    let columns: Vec<Vec<f64>> = (0..k)
        .into_par_iter()
        .map(|l| {
            let b = system.rhs(seeds, l);
            solver::solve(system.matrix(), &b, params)
                .map(|s| s.x)
                .map_err(|e| Error::Community {
                    community: l,
                    source: Box::new(e),
                })
        })
        .collect::<Result<_>>()?;

    for (l, col) in columns.iter().enumerate() {
        for (row, &a) in col.iter().enumerate() {
            values[system.node_of_row(row) * k + l] = a.clamp(0.0, 1.0);
        }
    }
    Ok(AffinityMatrix { n, k, values })
}

/// Largest graph the dense oracle accepts.
pub const ORACLE_MAX_NODES: usize = 500;

/// Absorption probabilities `X = (I − Q)⁻¹ R` by dense elimination, built
/// from the transition matrix of the walk with absorbing seeds. Rows follow
/// ascending non-seed node order; columns follow ascending seed order.
pub fn absorption_matrix_oracle(graph: &Graph, seeds: &SeedAssignment) -> Result<Vec<Vec<f64>>> {
    let n = graph.node_count();
    if n > ORACLE_MAX_NODES {
        return Err(Error::Oversize(format!(
            "{n} nodes exceeds the dense limit of {ORACLE_MAX_NODES}"
        )));
    }
    seeds.check_nodes(n)?;
    let transient: Vec<usize> = (0..n).filter(|&v| !seeds.contains(v)).collect();
    let absorbing: Vec<usize> = seeds.nodes().collect();
    let t_index = |v: usize| transient.binary_search(&v).ok();
    let a_index = |v: usize| absorbing.binary_search(&v).ok();

    let t = transient.len();
    let mut i_minus_q = vec![vec![0.0; t]; t];
    let mut r = vec![vec![0.0; absorbing.len()]; t];
    for (i, &u) in transient.iter().enumerate() {
        i_minus_q[i][i] = 1.0;
        let adj = graph.neighbors(u);
        let p = 1.0 / adj.len() as f64;
        for &v in adj {
            if let Some(j) = t_index(v) {
                i_minus_q[i][j] -= p;
            } else if let Some(j) = a_index(v) {
                r[i][j] += p;
            }
        }
    }
    if t == 0 {
        return Ok(Vec::new());
    }
    dense::solve_many(&i_minus_q, &r)
}
