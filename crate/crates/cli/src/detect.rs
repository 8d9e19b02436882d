//! `detect`: communities of a real network from a seed file.
//!
//! Seed file lines are either `node<TAB>c1[,c2...]` (membership form, any
//! community names) or `node<TAB>a1 a2 ... ak` (affinity form, communities
//! named `1..k`). The first data line decides the form for the whole file.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use seedwalk::classify::{self, Assignment};
use seedwalk::{AffinityMatrix, Graph, Mode, SeedAssignment, SolveParams};

use crate::CliError;

/// Parsed seed file: affinities plus the community names in index order.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedFile {
    pub names: Vec<String>,
    pub seeds: SeedAssignment,
}

fn is_affinity_form(field: &str) -> bool {
    let tokens: Vec<&str> = field.split_whitespace().collect();
    tokens.len() > 1 || (tokens.len() == 1 && tokens[0].contains('.'))
}

pub fn read_seed_file<R: BufRead>(source: R, graph: &Graph) -> Result<SeedFile, CliError> {
    let mut names: Vec<String> = Vec::new();
    let mut entries: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    let mut hot: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut affinity_form: Option<bool> = None;
    let mut k = 0;

    for (idx, line) in source.lines().enumerate() {
        let line = line.map_err(|e| CliError::Config(e.to_string()))?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let bad = |m: String| CliError::Config(format!("seed file line {lineno}: {m}"));
        let (node_tok, rest) = match trimmed.split_once('\t') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => trimmed
                .split_once(char::is_whitespace)
                .map(|(a, b)| (a, b.trim()))
                .ok_or_else(|| bad("expected a node id and its communities".into()))?,
        };
        let id: u64 = node_tok
            .parse()
            .map_err(|_| bad(format!("invalid node id {node_tok:?}")))?;
        let node = graph
            .index_of(id)
            .ok_or_else(|| CliError::Config(format!("unknown node {id}")))?;
        let form = *affinity_form.get_or_insert_with(|| is_affinity_form(rest));

        if form {
            let values: Vec<f64> = rest
                .split_whitespace()
                .map(|t| {
                    t.parse::<f64>()
                        .map_err(|_| bad(format!("invalid affinity {t:?}")))
                })
                .collect::<Result<_, _>>()?;
            if k == 0 {
                k = values.len();
            } else if values.len() != k {
                return Err(bad(format!("{} affinities, expected {k}", values.len())));
            }
            entries.insert(node, values);
        } else {
            let mut cs = Vec::new();
            for name in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let c = match names.iter().position(|n| n == name) {
                    Some(c) => c,
                    None => {
                        names.push(name.to_string());
                        names.len() - 1
                    }
                };
                cs.push(c);
            }
            if cs.is_empty() {
                return Err(bad("no community listed".into()));
            }
            hot.push((node, cs));
        }
    }

    let seeds = match affinity_form {
        None => return Err(CliError::Config("seed file lists no seeds".into())),
        Some(true) => {
            names = (1..=k).map(|i| i.to_string()).collect();
            SeedAssignment::new(k, entries)?
        }
        Some(false) => SeedAssignment::from_memberships(names.len(), hot)?,
    };
    Ok(SeedFile { names, seeds })
}

pub struct Detection {
    pub assignment: Assignment,
    pub affinities: AffinityMatrix,
}

pub fn detect(
    graph: &Graph,
    seeds: &SeedAssignment,
    mode: Mode,
    iterations: usize,
    epsilon: f64,
    params: &SolveParams,
) -> Result<Detection, CliError> {
    if !graph.is_connected() {
        return Err(CliError::Config(
            "graph is not connected; every component needs its own run".into(),
        ));
    }
    let out = classify::run(graph, seeds, mode, iterations, epsilon, params)?;
    Ok(Detection {
        assignment: out.assignment,
        affinities: out.affinities,
    })
}

/// `node<TAB>c1[,c2...]<TAB>a1 a2 ... ak` per node, in node order.
pub fn write_detection<W: Write>(
    graph: &Graph,
    names: &[String],
    detection: &Detection,
    mut out: W,
) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Runtime(format!("writing output: {e}"));
    for v in 0..graph.node_count() {
        let cs: Vec<&str> = detection
            .assignment
            .of(v)
            .iter()
            .map(|&c| names[c].as_str())
            .collect();
        let affs: Vec<String> = detection
            .affinities
            .row(v)
            .iter()
            .map(|a| a.to_string())
            .collect();
        writeln!(
            out,
            "{}\t{}\t{}",
            graph.label(v),
            cs.join(","),
            affs.join(" ")
        )
        .map_err(io)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path5() -> Graph {
        Graph::load_edge_list(
            "1 2\n2 3\n3 4\n4 5\n".as_bytes(),
            seedwalk::graph::LoadOptions::default(),
        )
        .unwrap()
    }

    #[test]
    fn membership_form() {
        let g = path5();
        let f = read_seed_file("1\tA\n5\tB\n".as_bytes(), &g).unwrap();
        assert_eq!(f.names, vec!["A", "B"]);
        assert_eq!(f.seeds.get(0).unwrap(), &[1.0, 0.0]);
        assert_eq!(f.seeds.get(4).unwrap(), &[0.0, 1.0]);
    }

    #[test]
    fn multi_membership_and_affinity_forms() {
        let g = path5();
        let f = read_seed_file("1\tA,B\n5\tB\n".as_bytes(), &g).unwrap();
        assert_eq!(f.seeds.get(0).unwrap(), &[1.0, 1.0]);
        let f = read_seed_file("1\t0.8 0.2\n5\t0 1\n".as_bytes(), &g).unwrap();
        assert_eq!(f.names, vec!["1", "2"]);
        assert_eq!(f.seeds.get(0).unwrap(), &[0.8, 0.2]);
        assert!(read_seed_file("1\t0.8 0.2\n5\t1\n".as_bytes(), &g).is_err());
    }

    #[test]
    fn errors() {
        let g = path5();
        let err = read_seed_file("".as_bytes(), &g).unwrap_err();
        assert!(matches!(err, CliError::Config(_)));
        let err = read_seed_file("99\tA\n".as_bytes(), &g).unwrap_err();
        assert_eq!(err.to_string(), "configuration error: unknown node 99");
    }

    #[test]
    fn path_detection_output() {
        let g = path5();
        let f = read_seed_file("1\tA\n5\tB\n".as_bytes(), &g).unwrap();
        let d = detect(
            &g,
            &f.seeds,
            Mode::Disjoint,
            1,
            0.1,
            &SolveParams::default(),
        )
        .unwrap();
        let mut buf = Vec::new();
        write_detection(&g, &f.names, &d, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let labels: Vec<&str> = text
            .lines()
            .map(|l| l.split('\t').nth(1).unwrap())
            .collect();
        assert_eq!(labels, vec!["A", "A", "A", "B", "B"]);
        assert!(text.lines().nth(1).unwrap().ends_with("0.75 0.25"));
    }
}
