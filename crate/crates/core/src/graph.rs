//! Undirected simple graphs in compressed sparse row form.

use std::collections::HashMap;
use std::io::BufRead;

use crate::{Error, Result};

/// Immutable undirected simple graph.
///
/// Neighbors of node `v` are `neighbors[offsets[v]..offsets[v + 1]]`, sorted
/// ascending. Every edge is stored once in each direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<usize>,
    /// External id of each internal node, when the graph was read from a file.
    labels: Option<Vec<u64>>,
}

#[derive(Debug, Clone, Copy)]
pub struct LoadOptions {
    /// Ids start at 1 (LFR `network.dat`); id 0 is rejected.
    pub one_indexed: bool,
    /// Merge repeated and reversed edges instead of rejecting them.
    pub dedupe: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        Self {
            one_indexed: true,
            dedupe: true,
        }
    }
}

impl Graph {
    /// Builds a graph on `n` nodes from an edge iterator. Duplicate and reversed
    /// edges are merged; self-loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut pairs = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::IndexOutOfRange { index: w, len: n });
                }
            }
            if u == v {
                return Err(Error::Argument(format!("self-loop on node {u}")));
            }
            pairs.push((u, v));
            pairs.push((v, u));
        }
        Ok(Self::from_directed_pairs(n, pairs))
    }

    fn from_directed_pairs(n: usize, mut pairs: Vec<(usize, usize)>) -> Self {
        pairs.sort_unstable();
        pairs.dedup();
        let mut offsets = vec![0usize; n + 1];
        for &(u, _) in &pairs {
            offsets[u + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let neighbors = pairs.into_iter().map(|(_, v)| v).collect();
        Graph {
            offsets,
            neighbors,
            labels: None,
        }
    }

    /// Reads a whitespace-separated edge list. Lines starting with `#` and
    /// blank lines are skipped. External ids are remapped to dense indices in
    /// ascending id order and retained as labels.
    pub fn load_edge_list<R: BufRead>(source: R, options: LoadOptions) -> Result<Self> {
        let mut raw: Vec<(u64, u64, usize)> = Vec::new();
        for (idx, line) in source.lines().enumerate() {
            let line = line?;
            let lineno = idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut tokens = trimmed.split_whitespace();
            let (Some(a), Some(b)) = (tokens.next(), tokens.next()) else {
                return Err(Error::Parse {
                    line: lineno,
                    message: "expected two node ids".into(),
                });
            };
            let parse = |tok: &str| {
                tok.parse::<u64>().map_err(|_| Error::Parse {
                    line: lineno,
                    message: format!("invalid node id {tok:?}"),
                })
            };
            let (u, v) = (parse(a)?, parse(b)?);
            if options.one_indexed && (u == 0 || v == 0) {
                return Err(Error::Parse {
                    line: lineno,
                    message: "node id 0 in a one-indexed edge list".into(),
                });
            }
            if u == v {
                return Err(Error::SelfLoop {
                    line: lineno,
                    node: u,
                });
            }
            raw.push((u, v, lineno));
        }

        let mut ids: Vec<u64> = raw.iter().flat_map(|&(u, v, _)| [u, v]).collect();
        ids.sort_unstable();
        ids.dedup();
        let index: HashMap<u64, usize> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();

        if !options.dedupe {
            let mut seen = std::collections::HashSet::new();
            for &(u, v, line) in &raw {
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(Error::Parse {
                        line,
                        message: format!("duplicate edge {u} {v}"),
                    });
                }
            }
        }

        let pairs = raw
            .iter()
            .flat_map(|&(u, v, _)| {
                let (a, b) = (index[&u], index[&v]);
                [(a, b), (b, a)]
            })
            .collect();
        let mut graph = Self::from_directed_pairs(ids.len(), pairs);
        graph.labels = Some(ids);
        Ok(graph)
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Degree of `v` in the full graph.
    pub fn degree(&self, v: usize) -> Result<usize> {
        if v >= self.node_count() {
            return Err(Error::IndexOutOfRange {
                index: v,
                len: self.node_count(),
            });
        }
        Ok(self.offsets[v + 1] - self.offsets[v])
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.offsets.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.node_count() && self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.node_count())
            .flat_map(move |u| self.neighbors(u).iter().map(move |&v| (u, v)))
            .filter(|&(u, v)| u < v)
    }

    pub fn labels(&self) -> Option<&[u64]> {
        self.labels.as_deref()
    }

    /// External id of internal node `v` (the index itself plus one when the
    /// graph has no labels, matching the 1-indexed file convention).
    pub fn label(&self, v: usize) -> u64 {
        match &self.labels {
            Some(l) => l[v],
            None => v as u64 + 1,
        }
    }

    /// Internal index of an external id.
    pub fn index_of(&self, label: u64) -> Option<usize> {
        match &self.labels {
            Some(l) => l.binary_search(&label).ok(),
            None => {
                let i = label.checked_sub(1)? as usize;
                (i < self.node_count()).then_some(i)
            }
        }
    }

    pub fn with_labels(mut self, labels: Vec<u64>) -> Result<Self> {
        if labels.len() != self.node_count() {
            return Err(Error::Argument(format!(
                "{} labels for {} nodes",
                labels.len(),
                self.node_count()
            )));
        }
        if labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Argument("labels must be strictly increasing".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Connected component id of every node, numbered in order of first node.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let n = self.node_count();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = count;
            stack.push(start);
            while let Some(u) = stack.pop() {
                for &v in self.neighbors(u) {
                    if comp[v] == usize::MAX {
                        comp[v] = count;
                        stack.push(v);
                    }
                }
            }
            count += 1;
        }
        (count, comp)
    }

    pub fn is_connected(&self) -> bool {
        self.node_count() <= 1 || self.components().0 == 1
    }

    /// Full scan of the structural invariants.
    pub fn check_invariants(&self) -> bool {
        let n = self.node_count();
        if self.offsets[0] != 0 || self.offsets.windows(2).any(|w| w[0] > w[1]) {
            return false;
        }
        if *self.offsets.last().unwrap() != self.neighbors.len()
            || !self.neighbors.len().is_multiple_of(2)
        {
            return false;
        }
        (0..n).all(|u| {
            let adj = self.neighbors(u);
            adj.windows(2).all(|w| w[0] < w[1])
                && adj.iter().all(|&v| v < n && v != u && self.has_edge(v, u))
        })
    }
}
