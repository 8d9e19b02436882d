//! `score`: NMI between two community files.
//!
//! Accepts LFR `community.dat` (`node<TAB>c1 c2`) and `detect` output
//! (`node<TAB>c1,c2<TAB>affinities`); any trailing fields are ignored.

use std::collections::BTreeMap;
use std::io::BufRead;

use seedwalk::{metrics, Cover, Mode, Partition};

use crate::CliError;

/// Node id → community names, in file order.
pub type Memberships = BTreeMap<u64, Vec<String>>;

pub fn read_memberships<R: BufRead>(source: R) -> Result<Memberships, CliError> {
    let mut out = Memberships::new();
    for (idx, line) in source.lines().enumerate() {
        let line = line.map_err(|e| CliError::Config(e.to_string()))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let bad = |m: String| CliError::Config(format!("line {}: {m}", idx + 1));
        let (node_tok, field) = match trimmed.split_once('\t') {
            Some((a, rest)) => (a.trim(), rest.split('\t').next().unwrap_or("")),
            None => trimmed.split_once(' ').unwrap_or((trimmed, "")),
        };
        let node: u64 = node_tok
            .parse()
            .map_err(|_| bad(format!("invalid node id {node_tok:?}")))?;
        let cs: Vec<String> = field
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(str::to_string)
            .collect();
        if cs.is_empty() {
            return Err(bad(format!("node {node} lists no community")));
        }
        out.entry(node).or_default().extend(cs);
    }
    if out.is_empty() {
        return Err(CliError::Config("community file is empty".into()));
    }
    Ok(out)
}

fn to_cover(m: &Memberships) -> Cover {
    let mut names: Vec<&str> = m.values().flatten().map(String::as_str).collect();
    names.sort_unstable();
    names.dedup();
    let memberships = m
        .values()
        .map(|cs| {
            cs.iter()
                .map(|c| names.binary_search(&c.as_str()).unwrap())
                .collect()
        })
        .collect();
    Cover::new(memberships, names.len()).expect("indices are in range")
}

fn to_partition(m: &Memberships) -> Option<Partition> {
    let ids: Vec<&String> = m
        .values()
        .map(|cs| (cs.len() == 1).then(|| &cs[0]))
        .collect::<Option<_>>()?;
    Some(Partition::from_ids(&ids))
}

/// Partition NMI when both sides are partitions and `mode` is not
/// overlapping; LFK cover NMI otherwise. Both files must list the same nodes.
pub fn nmi(truth: &Memberships, found: &Memberships, mode: Option<Mode>) -> Result<f64, CliError> {
    if let Some(id) = truth.keys().find(|id| !found.contains_key(id)) {
        return Err(CliError::Config(format!(
            "node {id} missing from detected communities"
        )));
    }
    if let Some(id) = found.keys().find(|id| !truth.contains_key(id)) {
        return Err(CliError::Config(format!(
            "node {id} missing from ground truth"
        )));
    }
    if mode != Some(Mode::Overlapping) {
        if let (Some(a), Some(b)) = (to_partition(truth), to_partition(found)) {
            return Ok(metrics::nmi_partition(&a, &b)?);
        }
        if mode == Some(Mode::Disjoint) {
            return Err(CliError::Config(
                "disjoint scoring needs exactly one community per node".into(),
            ));
        }
    }
    Ok(metrics::nmi_cover_lfk(&to_cover(truth), &to_cover(found))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn read(text: &str) -> Memberships {
        read_memberships(text.as_bytes()).unwrap()
    }

    #[test]
    fn both_formats() {
        let lfr = read("1\t1\n2\t1\n3\t2 3\n");
        assert_eq!(lfr[&3], vec!["2", "3"]);
        let det = read("1\tA\t0.9 0.1\n2\tA\t0.8 0.2\n3\tB,C\t0.1 0.9\n");
        assert_eq!(det[&3], vec!["B", "C"]);
    }

    #[test]
    fn identical_partitions_score_one() {
        let a = read("1\t1\n2\t1\n3\t2\n4\t2\n");
        let b = read("1\tX\t1 0\n2\tX\t1 0\n3\tY\t0 1\n4\tY\t0 1\n");
        assert!((nmi(&a, &b, None).unwrap() - 1.0).abs() < 1e-12);
        assert!((nmi(&a, &b, Some(Mode::Overlapping)).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mismatched_nodes_and_modes() {
        let a = read("1\t1\n2\t1\n3\t2\n");
        let b = read("1\t1\n2\t2\n");
        assert!(nmi(&a, &b, None).is_err());
        let c = read("1\t1 2\n2\t1\n3\t2\n");
        assert!(nmi(&a, &c, Some(Mode::Disjoint)).is_err());
        assert!(nmi(&a, &c, None).is_ok());
    }
}
