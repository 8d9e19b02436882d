//! LFR-style benchmark graphs with planted, possibly overlapping communities.
//!
//! Degrees and community sizes follow truncated discrete power laws. Each
//! node splits its degree into an internal part `⌈(1 − μ) d⌉`, shared evenly
//! among its communities, and an external part wired to nodes outside all of
//! its communities. Stubs are paired configuration-model style, conflicts are
//! removed by degree-preserving swaps, and leftover components are joined by
//! further swaps.

use std::collections::{BTreeMap, HashSet};
use std::io::BufRead;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{Cover, Partition};
use crate::graph::{Graph, LoadOptions};
use crate::{Error, Result};

/// Resampling budget for every randomized construction step.
pub const MAX_ATTEMPTS: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkConfig {
    pub n: usize,
    pub avg_degree: f64,
    pub max_degree: usize,
    pub degree_exponent: f64,
    pub community_exponent: f64,
    pub mu: f64,
    pub c_min: usize,
    pub c_max: usize,
    /// Fraction of nodes belonging to several communities.
    pub overlap_fraction: f64,
    pub memberships_per_overlap_node: usize,
    pub rng_seed: u64,
}

impl Default for BenchmarkConfig {
    /// 1000 nodes, mean degree 20, max 50, exponents 2 and 1, communities of
    /// 10 to 50 nodes, no overlap.
    fn default() -> Self {
        Self {
            n: 1000,
            avg_degree: 20.0,
            max_degree: 50,
            degree_exponent: 2.0,
            community_exponent: 1.0,
            mu: 0.1,
            c_min: 10,
            c_max: 50,
            overlap_fraction: 0.0,
            memberships_per_overlap_node: 2,
            rng_seed: 0,
        }
    }
}

impl BenchmarkConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Config(m));
        if self.n == 0 {
            return fail("n must be positive".into());
        }
        if !(0.0..=1.0).contains(&self.mu) {
            return fail(format!("mu = {} outside [0, 1]", self.mu));
        }
        if !(0.0..=1.0).contains(&self.overlap_fraction) {
            return fail(format!(
                "overlap_fraction = {} outside [0, 1]",
                self.overlap_fraction
            ));
        }
        if self.c_min == 0 || self.c_min > self.c_max || self.c_max > self.n {
            return fail(format!(
                "community sizes need 1 <= c_min <= c_max <= n, got {}..{} with n = {}",
                self.c_min, self.c_max, self.n
            ));
        }
        if !(self.avg_degree >= 1.0) || self.avg_degree > self.max_degree as f64 {
            return fail(format!(
                "avg_degree {} must lie in [1, max_degree = {}]",
                self.avg_degree, self.max_degree
            ));
        }
        if self.max_degree >= self.n {
            return fail(format!(
                "max_degree {} must be below n = {}",
                self.max_degree, self.n
            ));
        }
        if !(self.degree_exponent > 0.0) || !(self.community_exponent > 0.0) {
            return fail("power-law exponents must be positive".into());
        }
        if self.overlap_fraction > 0.0 && self.memberships_per_overlap_node < 2 {
            return fail("memberships_per_overlap_node must be at least 2".into());
        }
        Ok(())
    }

    fn overlap_count(&self) -> usize {
        (self.overlap_fraction * self.n as f64 + 1e-9).floor() as usize
    }

    fn memberships(&self) -> usize {
        if self.overlap_count() > 0 {
            self.memberships_per_overlap_node
        } else {
            1
        }
    }
}

/// Planted community membership. A cover in general, a partition when no
/// node has more than one community.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundTruth {
    n: usize,
    communities: Vec<Vec<usize>>,
}

impl GroundTruth {
    /// Every node in `0..n` must appear in at least one community. Member
    /// lists are sorted and deduplicated.
    pub fn new(n: usize, mut communities: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for c in &mut communities {
            c.sort_unstable();
            c.dedup();
            if c.is_empty() {
                return Err(Error::Format("empty community".into()));
            }
            for &v in c.iter() {
                if v >= n {
                    return Err(Error::IndexOutOfRange { index: v, len: n });
                }
                seen[v] = true;
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::Format(format!("node {v} belongs to no community")));
        }
        Ok(Self { n, communities })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.communities.len()
    }

    pub fn communities(&self) -> &[Vec<usize>] {
        &self.communities
    }

    /// Sorted community indices of each node.
    pub fn memberships(&self) -> Vec<Vec<usize>> {
        let mut m = vec![Vec::new(); self.n];
        for (l, c) in self.communities.iter().enumerate() {
            for &v in c {
                m[v].push(l);
            }
        }
        m
    }

    pub fn is_partition(&self) -> bool {
        self.communities.iter().map(Vec::len).sum::<usize>() == self.n
    }

    pub fn to_partition(&self) -> Option<Partition> {
        if !self.is_partition() {
            return None;
        }
        let mut labels = vec![0; self.n];
        for (l, c) in self.communities.iter().enumerate() {
            for &v in c {
                labels[v] = l;
            }
        }
        Partition::new(labels, self.k()).ok()
    }

    pub fn to_cover(&self) -> Cover {
        Cover::new(self.memberships(), self.k()).expect("ground truth covers every node")
    }

    pub fn overlapping_nodes(&self) -> usize {
        self.memberships().iter().filter(|m| m.len() >= 2).count()
    }
}

/// Truncated discrete power law `P(x) ∝ x^(−exponent)` on `[lo, hi]`.
#[derive(Debug, Clone)]
pub struct PowerLaw {
    lo: usize,
    cumulative: Vec<f64>,
}

impl PowerLaw {
    pub fn new(exponent: f64, lo: usize, hi: usize) -> Result<Self> {
        if lo == 0 || lo > hi {
            return Err(Error::Argument(format!(
                "power-law range [{lo}, {hi}] needs 1 <= lo <= hi"
            )));
        }
        if !(exponent > 0.0) {
            return Err(Error::Argument(format!(
                "exponent {exponent} must be positive"
            )));
        }
        let mut acc = 0.0;
        let cumulative = (lo..=hi)
            .map(|x| {
                acc += (x as f64).powf(-exponent);
                acc
            })
            .collect();
        Ok(Self { lo, cumulative })
    }

    pub fn mean(&self) -> f64 {
        let total = *self.cumulative.last().unwrap();
        let mut prev = 0.0;
        self.cumulative
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let w = c - prev;
                prev = c;
                (self.lo + i) as f64 * w
            })
            .sum::<f64>()
            / total
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let total = *self.cumulative.last().unwrap();
        let u = rng.gen::<f64>() * total;
        let i = self.cumulative.partition_point(|&c| c <= u);
        self.lo + i.min(self.cumulative.len() - 1)
    }
}

pub fn sample_power_law<R: Rng + ?Sized>(
    exponent: f64,
    lo: usize,
    hi: usize,
    rng: &mut R,
) -> Result<usize> {
    Ok(PowerLaw::new(exponent, lo, hi)?.sample(rng))
}

/// Lower degree bound whose truncated power law has the mean closest to the
/// target.
fn degree_distribution(config: &BenchmarkConfig) -> Result<PowerLaw> {
    let mut best: Option<(f64, PowerLaw)> = None;
    for lo in 1..=config.max_degree {
        let law = PowerLaw::new(config.degree_exponent, lo, config.max_degree)?;
        let gap = (law.mean() - config.avg_degree).abs();
        if best.as_ref().is_none_or(|(g, _)| gap < *g) {
            best = Some((gap, law));
        }
    }
    Ok(best.unwrap().1)
}

/// Splits `total` into `parts` near-equal shares, larger shares first.
fn split_evenly(total: usize, parts: usize) -> Vec<usize> {
    (0..parts)
        .map(|i| total / parts + usize::from(i < total % parts))
        .collect()
}

struct Layout {
    degrees: Vec<usize>,
    /// Per node: (community, internal stub count).
    memberships: Vec<Vec<(usize, usize)>>,
    sizes: Vec<usize>,
}

fn community_sizes(config: &BenchmarkConfig, rng: &mut ChaCha8Rng) -> Result<Vec<usize>> {
    let law = PowerLaw::new(config.community_exponent, config.c_min, config.c_max)?;
    let slots = config.n + config.overlap_count() * (config.memberships() - 1);
    for _ in 0..MAX_ATTEMPTS {
        let mut sizes = Vec::new();
        let mut sum = 0;
        while sum < slots {
            let s = law.sample(rng);
            sizes.push(s);
            sum += s;
        }
        let mut excess = sum - slots;
        let slack: usize = sizes.iter().map(|&s| s - config.c_min).sum();
        if slack < excess || sizes.len() < config.memberships() {
            continue;
        }
        while excess > 0 {
            let i = rng.gen_range(0..sizes.len());
            if sizes[i] > config.c_min {
                sizes[i] -= 1;
                excess -= 1;
            }
        }
        return Ok(sizes);
    }
    Err(Error::Generation(format!(
        "community sizes in [{}, {}] could not tile {slots} membership slots",
        config.c_min, config.c_max
    )))
}

fn assign_memberships(
    config: &BenchmarkConfig,
    sizes: &[usize],
    degrees: &[usize],
    overlapping: &[bool],
    rng: &mut ChaCha8Rng,
) -> Option<Vec<Vec<(usize, usize)>>> {
    let n = config.n;
    let needs: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let internal = ((1.0 - config.mu) * degrees[v] as f64 - 1e-9)
                .ceil()
                .max(0.0) as usize;
            let parts = if overlapping[v] {
                config.memberships()
            } else {
                1
            };
            split_evenly(internal, parts)
        })
        .collect();

    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    order.sort_by_key(|&v| std::cmp::Reverse(needs[v][0]));

    let mut slots: Vec<usize> = sizes
        .iter()
        .enumerate()
        .flat_map(|(c, &s)| std::iter::repeat_n(c, s))
        .collect();
    let mut memberships: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];

    for &v in &order {
        for &need in &needs[v] {
            let eligible = |c: usize, mine: &[(usize, usize)]| {
                sizes[c] > need && mine.iter().all(|&(d, _)| d != c)
            };
            let mut pick = None;
            for _ in 0..32 {
                let i = rng.gen_range(0..slots.len());
                if eligible(slots[i], &memberships[v]) {
                    pick = Some(i);
                    break;
                }
            }
            if pick.is_none() {
                let candidates: Vec<usize> = (0..slots.len())
                    .filter(|&i| eligible(slots[i], &memberships[v]))
                    .collect();
                pick = candidates.choose(rng).copied();
            }
            let i = pick?;
            let c = slots.swap_remove(i);
            memberships[v].push((c, need));
        }
    }
    Some(memberships)
}

fn layout(config: &BenchmarkConfig, rng: &mut ChaCha8Rng) -> Result<Layout> {
    let degree_law = degree_distribution(config)?;
    let mut last_err = None;
    for _ in 0..MAX_ATTEMPTS {
        let sizes = community_sizes(config, rng)?;
        let degrees: Vec<usize> = (0..config.n).map(|_| degree_law.sample(rng)).collect();
        let mut overlapping = vec![false; config.n];
        let mut ids: Vec<usize> = (0..config.n).collect();
        ids.shuffle(rng);
        for &v in &ids[..config.overlap_count()] {
            overlapping[v] = true;
        }
        match assign_memberships(config, &sizes, &degrees, &overlapping, rng) {
            Some(memberships) => {
                return Ok(Layout {
                    degrees,
                    memberships,
                    sizes,
                })
            }
            None => last_err = Some(Error::Generation(
                "could not place every node in communities large enough for its internal degree"
                    .into(),
            )),
        }
    }
    Err(last_err.unwrap())
}

type Edge = (u32, u32);

fn key(u: usize, v: usize) -> Edge {
    (u.min(v) as u32, u.max(v) as u32)
}

/// Pairs stubs at random and repairs self-loops, duplicates and pairs
/// rejected by `allowed` with degree-preserving swaps. Unrepairable pairs
/// are dropped.
fn wire(
    stubs: &mut [usize],
    present: &mut HashSet<Edge>,
    allowed: impl Fn(usize, usize) -> bool,
    rng: &mut ChaCha8Rng,
) -> Vec<Edge> {
    stubs.shuffle(rng);
    let mut good: Vec<Edge> = Vec::with_capacity(stubs.len() / 2);
    let mut bad: Vec<(usize, usize)> = Vec::new();
    for pair in stubs.chunks_exact(2) {
        let (u, v) = (pair[0], pair[1]);
        if u != v && allowed(u, v) && present.insert(key(u, v)) {
            good.push(key(u, v));
        } else {
            bad.push((u, v));
        }
    }
    let valid = |a: usize, b: usize, present: &HashSet<Edge>| {
        a != b && allowed(a, b) && !present.contains(&key(a, b))
    };
    for (u, v) in bad {
        for _ in 0..MAX_ATTEMPTS {
            if good.is_empty() {
                break;
            }
            let i = rng.gen_range(0..good.len());
            let (x, y) = good[i];
            let (x, y) = if rng.gen() { (x, y) } else { (y, x) };
            let (x, y) = (x as usize, y as usize);
            present.remove(&key(x, y));
            if valid(u, x, present) && valid(v, y, present) && key(u, x) != key(v, y) {
                present.insert(key(u, x));
                present.insert(key(v, y));
                good[i] = key(u, x);
                good.push(key(v, y));
                break;
            }
            present.insert(key(x, y));
        }
    }
    good
}

/// Degree-preserving swaps joining every component to the largest one.
/// Swaps stay inside a shared community when possible; otherwise, when
/// `cross` is set, any edge of the largest component is used.
fn connect(
    n: usize,
    edges: &mut Vec<Edge>,
    present: &mut HashSet<Edge>,
    membership: &[Vec<usize>],
    cross: bool,
    rng: &mut ChaCha8Rng,
) {
    let shares = |a: usize, b: usize| membership[a].iter().any(|c| membership[b].contains(c));
    for _ in 0..MAX_ATTEMPTS {
        let graph = Graph::from_edges(n, edges.iter().map(|&(u, v)| (u as usize, v as usize)))
            .expect("generator edges are valid");
        let (count, comp) = graph.components();
        if count <= 1 {
            return;
        }
        let mut sizes = vec![0usize; count];
        for &c in &comp {
            sizes[c] += 1;
        }
        let giant = (0..count)
            .max_by_key(|&c| (sizes[c], std::cmp::Reverse(c)))
            .unwrap();
        let giant_edges: Vec<usize> = (0..edges.len())
            .filter(|&i| comp[edges[i].0 as usize] == giant)
            .collect();

        let mut handled = vec![false; count];
        handled[giant] = true;
        for v in 0..n {
            let c = comp[v];
            if handled[c] {
                continue;
            }
            handled[c] = true;
            if graph.neighbors(v).is_empty() && sizes[c] == 1 {
                let partners: Vec<usize> = (0..n)
                    .filter(|&w| comp[w] == giant && (cross || shares(v, w)))
                    .collect();
                if let Some(&w) = partners.choose(rng) {
                    present.insert(key(v, w));
                    edges.push(key(v, w));
                }
                continue;
            }
            let local: Vec<usize> = (0..edges.len())
                .filter(|&i| comp[edges[i].0 as usize] == c)
                .collect();
            let Some(&li) = local.choose(rng) else {
                continue;
            };
            let (a, b) = (edges[li].0 as usize, edges[li].1 as usize);
            let same_type = |gi: &usize| {
                let (x, y) = (edges[*gi].0 as usize, edges[*gi].1 as usize);
                shares(a, x) && shares(b, y) || shares(a, y) && shares(b, x)
            };
            let preferred: Vec<usize> = giant_edges.iter().copied().filter(same_type).collect();
            let pool = if !preferred.is_empty() {
                &preferred
            } else if cross {
                &giant_edges
            } else {
                continue;
            };
            for _ in 0..MAX_ATTEMPTS {
                let Some(&gi) = pool.choose(rng) else { break };
                let (mut x, mut y) = (edges[gi].0 as usize, edges[gi].1 as usize);
                if !(shares(a, x) && shares(b, y)) {
                    std::mem::swap(&mut x, &mut y);
                }
                if present.contains(&key(a, x)) || present.contains(&key(b, y)) {
                    continue;
                }
                present.remove(&key(a, b));
                present.remove(&key(x, y));
                present.insert(key(a, x));
                present.insert(key(b, y));
                edges[li] = key(a, x);
                edges[gi] = key(b, y);
                break;
            }
        }
    }
}

/// Generates a benchmark graph and its planted communities.
///
/// With `mu > 0` the result is connected or generation fails. With `mu = 0`
/// no edge may leave a community, so disjoint communities stay separate
/// components and the graph may be disconnected.
pub fn generate(config: &BenchmarkConfig) -> Result<(Graph, GroundTruth)> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    generate_with_rng(config, &mut rng)
}

pub fn generate_with_rng(
    config: &BenchmarkConfig,
    rng: &mut ChaCha8Rng,
) -> Result<(Graph, GroundTruth)> {
    config.validate()?;
    let n = config.n;
    let largest_internal = ((1.0 - config.mu) * config.max_degree as f64).ceil() as usize;
    if largest_internal >= config.c_max {
        return Err(Error::Config(format!(
            "internal degree up to {largest_internal} cannot fit in communities of at most {} nodes",
            config.c_max
        )));
    }
    let lay = layout(config, rng)?;

    let mut members: Vec<Vec<(usize, usize)>> = vec![Vec::new(); lay.sizes.len()];
    for (v, ms) in lay.memberships.iter().enumerate() {
        for &(c, need) in ms {
            members[c].push((v, need));
        }
    }
    let membership: Vec<Vec<usize>> = lay
        .memberships
        .iter()
        .map(|ms| {
            let mut cs: Vec<usize> = ms.iter().map(|&(c, _)| c).collect();
            cs.sort_unstable();
            cs
        })
        .collect();

    let mut present: HashSet<Edge> = HashSet::new();
    let mut edges: Vec<Edge> = Vec::new();
    let mut internal_total = vec![0usize; n];
    for (v, ms) in lay.memberships.iter().enumerate() {
        internal_total[v] = ms.iter().map(|&(_, s)| s).sum();
    }

    for list in &members {
        let mut stub_counts: Vec<(usize, usize)> = list.clone();
        if stub_counts.iter().map(|&(_, s)| s).sum::<usize>() % 2 == 1 {
            let top = (0..stub_counts.len())
                .max_by_key(|&i| (stub_counts[i].1, lay.degrees[stub_counts[i].0]))
                .unwrap();
            stub_counts[top].1 -= 1;
        }
        let mut stubs: Vec<usize> = stub_counts
            .iter()
            .flat_map(|&(v, s)| std::iter::repeat_n(v, s))
            .collect();
        edges.extend(wire(&mut stubs, &mut present, |_, _| true, rng));
    }

    let mut external: Vec<usize> = (0..n)
        .map(|v| lay.degrees[v].saturating_sub(internal_total[v]))
        .collect();
    if external.iter().sum::<usize>() % 2 == 1 {
        let top = (0..n)
            .filter(|&v| external[v] > 0)
            .max_by_key(|&v| (external[v], lay.degrees[v]))
            .unwrap();
        external[top] -= 1;
    }
    let mut stubs: Vec<usize> = (0..n)
        .flat_map(|v| std::iter::repeat_n(v, external[v]))
        .collect();
    let disjoint = |a: usize, b: usize| membership[a].iter().all(|c| !membership[b].contains(c));
    edges.extend(wire(&mut stubs, &mut present, disjoint, rng));

    connect(
        n,
        &mut edges,
        &mut present,
        &membership,
        config.mu > 0.0,
        rng,
    );

    edges.sort_unstable();
    let graph = Graph::from_edges(n, edges.iter().map(|&(u, v)| (u as usize, v as usize)))?;
    if config.mu > 0.0 && !graph.is_connected() {
        return Err(Error::Generation(format!(
            "graph still disconnected after {MAX_ATTEMPTS} rounds of joining swaps"
        )));
    }
    let truth = GroundTruth::new(
        n,
        members
            .into_iter()
            .map(|m| m.into_iter().map(|(v, _)| v).collect())
            .collect(),
    )?;
    Ok((graph, truth))
}

/// Fraction of each node's neighbors sharing none of its communities,
/// averaged over nodes with at least one neighbor.
pub fn measured_mixing(graph: &Graph, truth: &GroundTruth) -> f64 {
    let memberships = truth.memberships();
    let mut total = 0.0;
    let mut counted = 0usize;
    for v in 0..graph.node_count() {
        let adj = graph.neighbors(v);
        if adj.is_empty() {
            continue;
        }
        let outside = adj
            .iter()
            .filter(|&&w| memberships[v].iter().all(|c| !memberships[w].contains(c)))
            .count();
        total += outside as f64 / adj.len() as f64;
        counted += 1;
    }
    if counted == 0 {
        0.0
    } else {
        total / counted as f64
    }
}

/// Reads an LFR `network.dat` / `community.dat` pair. Community ids are
/// renumbered in ascending order.
pub fn read_lfr_files<N: BufRead, C: BufRead>(
    network: N,
    communities: C,
) -> Result<(Graph, GroundTruth)> {
    let graph = Graph::load_edge_list(network, LoadOptions::default())?;
    let membership = read_membership_lines(communities)?;
    build_truth(graph, membership)
}

/// Parses `node<ws>c1 [c2 ...]` lines into node id → community ids.
pub fn read_membership_lines<C: BufRead>(source: C) -> Result<BTreeMap<u64, Vec<u64>>> {
    let mut membership: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for (idx, line) in source.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace().map(|t| {
            t.parse::<u64>().map_err(|_| Error::Parse {
                line: idx + 1,
                message: format!("invalid id {t:?}"),
            })
        });
        let node = tokens.next().expect("non-empty line")?;
        let cs: Vec<u64> = tokens.collect::<Result<_>>()?;
        if cs.is_empty() {
            return Err(Error::Parse {
                line: idx + 1,
                message: format!("node {node} lists no community"),
            });
        }
        membership.entry(node).or_default().extend(cs);
    }
    Ok(membership)
}

fn build_truth(graph: Graph, membership: BTreeMap<u64, Vec<u64>>) -> Result<(Graph, GroundTruth)> {
    for &id in membership.keys() {
        if graph.index_of(id).is_none() {
            return Err(Error::Format(format!(
                "node {id} in community file is absent from the network"
            )));
        }
    }
    let mut ids: Vec<u64> = membership.values().flatten().copied().collect();
    ids.sort_unstable();
    ids.dedup();
    let mut communities = vec![Vec::new(); ids.len()];
    for v in 0..graph.node_count() {
        let label = graph.label(v);
        let Some(cs) = membership.get(&label) else {
            return Err(Error::Format(format!(
                "node {label} in network is absent from the community file"
            )));
        };
        for c in cs {
            communities[ids.binary_search(c).unwrap()].push(v);
        }
    }
    let truth = GroundTruth::new(graph.node_count(), communities)?;
    Ok((graph, truth))
}

/// Writes the graph as `u\tv` lines in both orientations, external ids.
pub fn write_network<W: std::io::Write>(graph: &Graph, mut out: W) -> Result<()> {
    for u in 0..graph.node_count() {
        for &v in graph.neighbors(u) {
            writeln!(out, "{}\t{}", graph.label(u), graph.label(v))?;
        }
    }
    Ok(())
}

/// Writes `node\tc1 c2 ...` lines with 1-based community ids.
pub fn write_communities<W: std::io::Write>(
    graph: &Graph,
    truth: &GroundTruth,
    mut out: W,
) -> Result<()> {
    for (v, cs) in truth.memberships().iter().enumerate() {
        let ids: Vec<String> = cs.iter().map(|c| (c + 1).to_string()).collect();
        writeln!(out, "{}\t{}", graph.label(v), ids.join(" "))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_law_degenerate_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            assert_eq!(sample_power_law(2.0, 7, 7, &mut rng).unwrap(), 7);
        }
    }

    #[test]
    fn power_law_argument_errors() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(sample_power_law(2.0, 5, 4, &mut rng).is_err());
        assert!(sample_power_law(2.0, 0, 4, &mut rng).is_err());
        assert!(sample_power_law(0.0, 1, 4, &mut rng).is_err());
    }

    #[test]
    fn power_law_two_point_mass() {
        // P(1) = 4/5, P(2) = 1/5.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let law = PowerLaw::new(2.0, 1, 2).unwrap();
        let trials = 200_000;
        let ones = (0..trials).filter(|_| law.sample(&mut rng) == 1).count();
        let p = ones as f64 / trials as f64;
        let sigma = (0.8f64 * 0.2 / trials as f64).sqrt();
        assert!((p - 0.8).abs() < 4.0 * sigma, "p = {p}");
    }

    #[test]
    fn split_shares() {
        assert_eq!(split_evenly(45, 2), vec![23, 22]);
        assert_eq!(split_evenly(9, 3), vec![3, 3, 3]);
        assert_eq!(split_evenly(1, 2), vec![1, 0]);
    }

    #[test]
    fn ground_truth_requires_cover() {
        assert!(GroundTruth::new(3, vec![vec![0, 1]]).is_err());
        let t = GroundTruth::new(3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert!(!t.is_partition());
        assert_eq!(t.overlapping_nodes(), 1);
        assert!(t.to_partition().is_none());
    }

    #[test]
    fn config_validation() {
        let bad_mu = BenchmarkConfig {
            mu: 1.5,
            ..Default::default()
        };
        assert!(matches!(bad_mu.validate(), Err(Error::Config(_))));
        let bad_sizes = BenchmarkConfig {
            c_min: 60,
            ..Default::default()
        };
        assert!(bad_sizes.validate().is_err());
        let tiny_communities = BenchmarkConfig {
            c_min: 3,
            c_max: 5,
            mu: 0.1,
            ..Default::default()
        };
        assert!(matches!(generate(&tiny_communities), Err(Error::Config(_))));
    }

    #[test]
    fn toy_lfr_files() {
        let net = "1\t2\n2\t1\n2\t3\n3\t2\n3\t4\n4\t3\n";
        let com = "1\t1\n2\t1\n3\t2\n4\t2\n";
        let (g, t) = read_lfr_files(net.as_bytes(), com.as_bytes()).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(t.k(), 2);
        assert_eq!(t.communities(), &[vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn overlapping_community_line() {
        let net = "7 8\n8 9\n";
        let com = "7\t1 3\n8\t1\n9\t3\n";
        let (g, t) = read_lfr_files(net.as_bytes(), com.as_bytes()).unwrap();
        let seven = g.index_of(7).unwrap();
        assert_eq!(t.memberships()[seven], vec![0, 1]);
    }

    #[test]
    fn lfr_files_must_agree() {
        let net = "1 2\n2 3\n";
        assert!(matches!(
            read_lfr_files(net.as_bytes(), "1 1\n2 1\n".as_bytes()),
            Err(Error::Format(_))
        ));
        assert!(matches!(
            read_lfr_files(net.as_bytes(), "1 1\n2 1\n3 1\n4 1\n".as_bytes()),
            Err(Error::Format(_))
        ));
    }
}
