mod common;

use std::collections::HashMap;

use proptest::prelude::*;
use seedwalk::classify::{classify_disjoint, largest_gap_prefix};
use seedwalk::metrics::{nmi_cover_lfk, nmi_partition};
use seedwalk::{AffinityMatrix, Cover, Partition};

/// Every set partition of `n` nodes as a restricted growth string.
fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for l in 0..=max + 1 {
            prefix.push(l);
            extend(prefix, max.max(l), n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        extend(&mut vec![0], 0, n, &mut out);
    }
    out
}

/// NMI from counted label pairs, natural log, `I = H(A) + H(B) − H(A,B)`.
fn brute_nmi(a: &[usize], b: &[usize]) -> f64 {
    let n = a.len() as f64;
    let h = |counts: &mut dyn Iterator<Item = usize>| -> f64 {
        counts
            .map(|c| {
                let p = c as f64 / n;
                -p * p.ln()
            })
            .sum()
    };
    let mut ca: HashMap<usize, usize> = HashMap::new();
    let mut cb: HashMap<usize, usize> = HashMap::new();
    let mut cab: HashMap<(usize, usize), usize> = HashMap::new();
    for (&x, &y) in a.iter().zip(b) {
        *ca.entry(x).or_insert(0) += 1;
        *cb.entry(y).or_insert(0) += 1;
        *cab.entry((x, y)).or_insert(0) += 1;
    }
    let (ha, hb, hab) = (
        h(&mut ca.into_values()),
        h(&mut cb.into_values()),
        h(&mut cab.into_values()),
    );
    if ha + hb == 0.0 {
        return 1.0;
    }
    2.0 * (ha + hb - hab) / (ha + hb)
}

fn part(labels: &[usize]) -> Partition {
    Partition::from_ids(labels)
}

#[test]
fn bell_numbers() {
    let counts: Vec<usize> = (1..=8).map(|n| set_partitions(n).len()).collect();
    assert_eq!(counts, vec![1, 2, 5, 15, 52, 203, 877, 4140]);
}

#[test]
fn exhaustive_agreement_up_to_six_nodes() {
    for n in 1..=6 {
        let all = set_partitions(n);
        for a in &all {
            for b in &all {
                let got = nmi_partition(&part(a), &part(b)).unwrap();
                let want = brute_nmi(a, b);
                assert!(
                    (got - want).abs() < 1e-12,
                    "{a:?} vs {b:?}: {got} != {want}"
                );
            }
        }
    }
}

fn labels(max_n: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..5, 1..max_n)
}

proptest! {
    #![proptest_config(common::cases(256))]

    #[test]
    fn partition_nmi_symmetric_and_bounded(a in labels(40), seed in any::<u64>()) {
        let b: Vec<usize> = a.iter().enumerate().map(|(i, &x)| (x + (seed as usize >> (i % 32)) % 3) % 4).collect();
        let ab = nmi_partition(&part(&a), &part(&b)).unwrap();
        let ba = nmi_partition(&part(&b), &part(&a)).unwrap();
        prop_assert!((ab - ba).abs() < 1e-12);
        prop_assert!((0.0..=1.0).contains(&ab));
        prop_assert_eq!(nmi_partition(&part(&a), &part(&a)).unwrap(), 1.0);
    }

    #[test]
    fn partition_nmi_ignores_label_names(a in labels(40), b in labels(40), shift in 1usize..7) {
        let n = a.len().min(b.len());
        let (a, b) = (&a[..n], &b[..n]);
        let renamed: Vec<usize> = b.iter().map(|&x| (x * 7 + shift) % 35).collect();
        let x = nmi_partition(&part(a), &part(b)).unwrap();
        let y = nmi_partition(&part(a), &part(&renamed)).unwrap();
        prop_assert!((x - y).abs() < 1e-12);
    }

    #[test]
    fn lfk_symmetric_bounded_and_exact_on_identity(
        memberships in prop::collection::vec(prop::collection::btree_set(0usize..4, 1..3), 4..30),
        other in prop::collection::vec(prop::collection::btree_set(0usize..4, 1..3), 30),
    ) {
        let n = memberships.len();
        let a = Cover::new(memberships.iter().map(|s| s.iter().copied().collect()).collect(), 4).unwrap();
        let b = Cover::new(other[..n].iter().map(|s| s.iter().copied().collect()).collect(), 4).unwrap();
        if let (Ok(ab), Ok(ba)) = (nmi_cover_lfk(&a, &b), nmi_cover_lfk(&b, &a)) {
            prop_assert!((ab - ba).abs() < 1e-12);
            prop_assert!((0.0..=1.0).contains(&ab));
        }
        if let Ok(aa) = nmi_cover_lfk(&a, &a) {
            prop_assert!((aa - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn argmax_is_scale_invariant(rows in prop::collection::vec(prop::collection::vec(0.0f64..1.0, 3), 1..20), scale in 0.01f64..1.0) {
        let a = AffinityMatrix::from_rows(&rows).unwrap();
        let scaled: Vec<Vec<f64>> = rows.iter().map(|r| r.iter().map(|x| x * scale).collect()).collect();
        let b = AffinityMatrix::from_rows(&scaled).unwrap();
        let (pa, pb) = (classify_disjoint(&a), classify_disjoint(&b));
        for (v, r) in rows.iter().enumerate() {
            let best = r.iter().cloned().fold(f64::MIN, f64::max);
            prop_assert_eq!(r[pa.label(v)], best);
            let sb = &scaled[v];
            prop_assert_eq!(sb[pb.label(v)], sb.iter().cloned().fold(f64::MIN, f64::max));
        }
    }

    #[test]
    fn gap_prefix_is_a_top_set(row in prop::collection::vec(0.0f64..1.0, 1..8)) {
        let chosen = largest_gap_prefix(&row);
        prop_assert!(!chosen.is_empty());
        let lowest_in = chosen.iter().map(|&l| row[l]).fold(f64::MAX, f64::min);
        for l in 0..row.len() {
            if !chosen.contains(&l) {
                prop_assert!(row[l] <= lowest_in);
            }
        }
    }
}
