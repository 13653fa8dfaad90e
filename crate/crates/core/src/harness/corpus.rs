use crate::error::{Error, Result};
use crate::graph::{
    clique, complete_bipartite, cycle, disjoint_union_all, parse_edge_list, parse_graph6, path,
    petersen, star, Graph,
};
use serde::Serialize;
use std::fmt;
use std::path::Path;

/// Largest `n` for the exhaustive tier: `2^21` labelled graphs.
pub const EXHAUSTIVE_LIMIT: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Exhaustive(usize),
    Named,
    Regular { n: usize, d: usize },
    File,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Exhaustive(n) => write!(f, "exhaustive-{n}"),
            Provenance::Named => f.write_str("named"),
            Provenance::Regular { n, d } => write!(f, "regular-({n},{d})"),
            Provenance::File => f.write_str("file"),
        }
    }
}

impl Serialize for Provenance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorpusEntry {
    pub id: String,
    pub graph: Graph,
    pub provenance: Provenance,
}

impl CorpusEntry {
    fn new(id: impl Into<String>, graph: Graph, provenance: Provenance) -> Self {
        CorpusEntry {
            id: id.into(),
            graph,
            provenance,
        }
    }
}

/// Vertex pairs in graph6 order: `(0,1), (0,2), (1,2), (0,3), ...`.
fn pair_order(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect()
}

/// Every labelled graph on `n` vertices; bit `k` of the index selects the
/// `k`-th pair in graph6 order, and graphs come in increasing index order.
pub fn generate_exhaustive(n: usize) -> Result<Vec<CorpusEntry>> {
    if n == 0 || n > EXHAUSTIVE_LIMIT {
        return Err(Error::Capacity {
            what: "exhaustive tier",
            requested: n,
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    let pairs = pair_order(n);
    (0u64..1 << pairs.len())
        .map(|mask| {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Ok(CorpusEntry::new(
                format!("ex{n}-{mask}"),
                Graph::from_edges(n, &edges)?,
                Provenance::Exhaustive(n),
            ))
        })
        .collect()
}

fn kbip(a: usize, b: usize) -> Graph {
    complete_bipartite(a, b).expect("small").into_graph()
}

fn union(parts: &[Graph]) -> Graph {
    disjoint_union_all(parts).expect("small")
}

/// Fixed fixtures: complete bipartite graphs, cliques, stars, paths, cycles,
/// Petersen, and unions with and without isolated vertices.
pub fn named_corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    let mut push = |id: String, g: Graph| out.push(CorpusEntry::new(id, g, Provenance::Named));
    for d in 1..=5 {
        push(format!("k{d}_{d}"), kbip(d, d));
    }
    for k in 1..=6 {
        push(format!("k{k}"), clique(k).expect("small"));
    }
    for k in 1..=5 {
        push(format!("star{k}"), star(k).expect("small"));
    }
    for n in 1..=12 {
        push(format!("p{n}"), path(n).expect("small"));
    }
    for n in 3..=12 {
        push(format!("c{n}"), cycle(n).expect("small"));
    }
    push("petersen".into(), petersen());
    push("k2_3".into(), kbip(2, 3));
    push("k3_4".into(), kbip(3, 4));
    push("k3_3+k3_3".into(), union(&[kbip(3, 3), kbip(3, 3)]));
    push("k2_2+k2_2".into(), union(&[kbip(2, 2), kbip(2, 2)]));
    push("k1_1+k1_1+k1_1".into(), union(&[kbip(1, 1), kbip(1, 1), kbip(1, 1)]));
    push("k2_3+k1_4".into(), union(&[kbip(2, 3), kbip(1, 4)]));
    push("k3+k3".into(), union(&[clique(3).unwrap(), clique(3).unwrap()]));
    push("k4+k2".into(), union(&[clique(4).unwrap(), clique(2).unwrap()]));
    push("c4+c6".into(), union(&[cycle(4).unwrap(), cycle(6).unwrap()]));
    push("c5+p3".into(), union(&[cycle(5).unwrap(), path(3).unwrap()]));
    push("k1_1+k1".into(), union(&[kbip(1, 1), clique(1).unwrap()]));
    push("k2_2+k1+k1".into(), union(&[kbip(2, 2), clique(1).unwrap(), clique(1).unwrap()]));
    push("c5+k1".into(), union(&[cycle(5).unwrap(), clique(1).unwrap()]));
    push("k3+k1".into(), union(&[clique(3).unwrap(), clique(1).unwrap()]));
    push("petersen+k1".into(), union(&[petersen(), clique(1).unwrap()]));
    push("empty3".into(), Graph::empty(3).unwrap());
    out
}

/// `K_{d,d}` for `d <= 4` and even cycles `C_{2k}` for `k <= 7`.
pub fn regular_tier() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for d in 1..=4 {
        out.push(CorpusEntry::new(
            format!("reg-k{d}_{d}"),
            kbip(d, d),
            Provenance::Regular { n: 2 * d, d },
        ));
    }
    for k in 2..=7 {
        out.push(CorpusEntry::new(
            format!("reg-c{}", 2 * k),
            cycle(2 * k).unwrap(),
            Provenance::Regular { n: 2 * k, d: 2 },
        ));
    }
    out
}

/// A single edge-list file, or one graph6 string per line.
pub fn load_file(path: &Path) -> Result<Vec<CorpusEntry>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let stem = path
        .file_stem()
        .map_or_else(|| "input".to_string(), |s| s.to_string_lossy().into_owned());
    if let Ok(g) = parse_edge_list(&text) {
        return Ok(vec![CorpusEntry::new(format!("file:{stem}"), g, Provenance::File)]);
    }
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let l = l.trim();
            !l.is_empty() && !l.starts_with('#')
        })
        .map(|(i, l)| {
            let g = parse_graph6(l.trim()).map_err(|e| Error::Parse {
                offset: 0,
                message: format!("{}:{}: {e}", path.display(), i + 1),
            })?;
            Ok(CorpusEntry::new(format!("file:{stem}:{}", i + 1), g, Provenance::File))
        })
        .collect()
}

/// Look up a fixture by id in the named and regular tiers.
pub fn find_named(id: &str) -> Option<Graph> {
    named_corpus()
        .into_iter()
        .chain(regular_tier())
        .find(|e| e.id == id)
        .map(|e| e.graph)
}
