//! Information-theoretic agreement between detected and planted communities.
//!
//! All logarithms are base 2 and `0 · log 0 = 0`.

use crate::classify::{Cover, Partition};
use crate::{Error, Result};

fn plogp(p: f64) -> f64 {
    if p > 0.0 {
        -p * p.log2()
    } else {
        0.0
    }
}

/// Joint counts of two partitions over the same nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfusionMatrix {
    counts: Vec<Vec<usize>>,
    rows: Vec<usize>,
    cols: Vec<usize>,
    n: usize,
}

impl ConfusionMatrix {
    pub fn new(a: &Partition, b: &Partition) -> Result<Self> {
        if a.node_count() != b.node_count() {
            return Err(Error::Argument(format!(
                "partitions cover {} and {} nodes",
                a.node_count(),
                b.node_count()
            )));
        }
        let mut counts = vec![vec![0usize; b.k()]; a.k()];
        for (&la, &lb) in a.labels().iter().zip(b.labels()) {
            counts[la][lb] += 1;
        }
        let rows = counts.iter().map(|r| r.iter().sum()).collect();
        let cols = (0..b.k())
            .map(|j| counts.iter().map(|r| r[j]).sum())
            .collect();
        Ok(Self {
            counts,
            rows,
            cols,
            n: a.node_count(),
        })
    }

    pub fn count(&self, a: usize, b: usize) -> usize {
        self.counts[a][b]
    }

    pub fn row_sums(&self) -> &[usize] {
        &self.rows
    }

    pub fn col_sums(&self) -> &[usize] {
        &self.cols
    }

    pub fn total(&self) -> usize {
        self.n
    }

    /// True when the two partitions agree up to renaming of blocks.
    pub fn is_relabeling(&self) -> bool {
        self.counts.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, &c)| c == 0 || (c == self.rows[i] && c == self.cols[j]))
        })
    }

    pub fn mutual_information(&self) -> f64 {
        let n = self.n as f64;
        let mut mi = 0.0;
        for (i, row) in self.counts.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if c > 0 {
                    let joint = c as f64 / n;
                    let pa = self.rows[i] as f64 / n;
                    let pb = self.cols[j] as f64 / n;
                    mi += joint * (joint / (pa * pb)).log2();
                }
            }
        }
        mi
    }
}

fn entropy_of_sizes(sizes: &[usize], n: usize) -> f64 {
    sizes.iter().map(|&s| plogp(s as f64 / n as f64)).sum()
}

/// Shannon entropy of a partition, in bits.
pub fn entropy(p: &Partition) -> f64 {
    let mut sizes = vec![0usize; p.k()];
    for &l in p.labels() {
        sizes[l] += 1;
    }
    entropy_of_sizes(&sizes, p.node_count().max(1))
}

/// `2 I(A, B) / (H(A) + H(B))`. Two single-block partitions score 1.
pub fn nmi_partition(a: &Partition, b: &Partition) -> Result<f64> {
    let m = ConfusionMatrix::new(a, b)?;
    let ha = entropy_of_sizes(m.row_sums(), m.total().max(1));
    let hb = entropy_of_sizes(m.col_sums(), m.total().max(1));
    if ha + hb == 0.0 || m.is_relabeling() {
        return Ok(1.0);
    }
    Ok((2.0 * m.mutual_information() / (ha + hb)).clamp(0.0, 1.0))
}

/// Entropy of the binary membership indicator of a community of `size` nodes.
fn membership_entropy(size: usize, n: usize) -> f64 {
    let p = size as f64 / n as f64;
    plogp(p) + plogp(1.0 - p)
}

/// Normalized conditional entropy `H(X|Y)` averaged over the communities of
/// `x`. `overlap[i][j]` is `|X_i ∩ Y_j|`.
fn normalized_conditional(
    x_sizes: &[usize],
    y_sizes: &[usize],
    overlap: impl Fn(usize, usize) -> usize,
    n: usize,
) -> Result<f64> {
    let nf = n as f64;
    let mut total = 0.0;
    let mut counted = 0usize;
    for (i, &sx) in x_sizes.iter().enumerate() {
        let hx = membership_entropy(sx, n);
        if hx == 0.0 {
            continue;
        }
        let mut best = hx;
        for (j, &sy) in y_sizes.iter().enumerate() {
            let both = overlap(i, j);
            let only_x = sx - both;
            let only_y = sy - both;
            let neither = n - both - only_x - only_y;
            let (p11, p10, p01, p00) = (
                both as f64 / nf,
                only_x as f64 / nf,
                only_y as f64 / nf,
                neither as f64 / nf,
            );
            if plogp(p11) + plogp(p00) >= plogp(p01) + plogp(p10) {
                let joint = plogp(p11) + plogp(p10) + plogp(p01) + plogp(p00);
                let conditional = joint - membership_entropy(sy, n);
                best = best.min(conditional);
            }
        }
        total += best / hx;
        counted += 1;
    }
    if counted == 0 {
        return Err(Error::DegenerateCover);
    }
    Ok(total / counted as f64)
}

/// Lancichinetti–Fortunato–Kertész normalized mutual information of covers:
/// `1 − ½ (H(A|B)/H(A) + H(B|A)/H(B))` with per-community normalized
/// conditional entropies. Communities with zero membership entropy (empty
/// or spanning every node) are left out of the averages.
pub fn nmi_cover_lfk(a: &Cover, b: &Cover) -> Result<f64> {
    let n = a.node_count();
    if n != b.node_count() {
        return Err(Error::Argument(format!(
            "covers span {} and {} nodes",
            n,
            b.node_count()
        )));
    }
    if n == 0 {
        return Err(Error::DegenerateCover);
    }
    let (ka, kb) = (a.k(), b.k());
    let mut sizes_a = vec![0usize; ka];
    let mut sizes_b = vec![0usize; kb];
    let mut overlap = vec![0usize; ka * kb];
    for v in 0..n {
        for &i in a.of(v) {
            sizes_a[i] += 1;
            for &j in b.of(v) {
                overlap[i * kb + j] += 1;
            }
        }
        for &j in b.of(v) {
            sizes_b[j] += 1;
        }
    }
    let a_given_b = normalized_conditional(&sizes_a, &sizes_b, |i, j| overlap[i * kb + j], n)?;
    let b_given_a = normalized_conditional(&sizes_b, &sizes_a, |j, i| overlap[i * kb + j], n)?;
    Ok((1.0 - 0.5 * (a_given_b + b_given_a)).clamp(0.0, 1.0))
}
