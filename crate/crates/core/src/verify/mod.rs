//! Consistency checks joining the modules, and comparison of dual graphs up
//! to the choice of signs.

pub mod fixtures;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::classify::{curve_genus, Classification};
use crate::model::{build_classified, DualGraph, EdgeKind, Formal, Row, VertexKind};
use crate::picture::{fmt_depth, ChromaticClusterPicture, Colour, Depth};

pub use fixtures::{fixture, Fixture, FIXTURES};

/// A dual graph reduced to names: vertices as (cluster label, tag, genus)
/// and edges as (sorted endpoint names, length), both sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphShape {
    pub vertices: Vec<(String, String, u32)>,
    pub edges: Vec<(String, String, Depth)>,
}

impl GraphShape {
    pub fn from_parts(
        vertices: impl IntoIterator<Item = (String, String, u32)>,
        edges: impl IntoIterator<Item = (String, String, Depth)>,
    ) -> Self {
        let mut vertices: Vec<_> = vertices.into_iter().collect();
        let mut edges: Vec<_> = edges
            .into_iter()
            .map(|(a, b, l)| if a <= b { (a, b, l) } else { (b, a, l) })
            .collect();
        vertices.sort();
        edges.sort();
        GraphShape { vertices, edges }
    }

    pub fn of(graph: &DualGraph) -> Self {
        Self::from_parts(
            graph
                .vertices
                .iter()
                .map(|v| (v.cluster_label.clone(), v.tag.as_str().to_string(), v.genus)),
            graph.edges.iter().map(|e| {
                (
                    graph.vertices[e.from].name(),
                    graph.vertices[e.to].name(),
                    e.length,
                )
            }),
        )
    }

    /// Applies independent sign flips per cluster: `flips[label] = (a, b)`
    /// negates the first and/or second sign of that cluster's tags.
    fn flipped(&self, flips: &BTreeMap<String, (bool, bool)>) -> Self {
        let rename = |cluster: &str, tag: &str| -> String {
            let (fa, fb) = flips.get(cluster).copied().unwrap_or((false, false));
            let flip = |ch: char, f: bool| match (ch, f) {
                ('+', true) => '-',
                ('-', true) => '+',
                (c, _) => c,
            };
            let mut chars = tag.chars();
            match (chars.next(), chars.next()) {
                (None, _) => String::new(),
                (Some(a), None) => flip(a, fa).to_string(),
                (Some(a), Some(b)) => format!("{}{}", flip(a, fa), flip(b, fb)),
            }
        };
        let split = |name: &str| -> (String, String) {
            let cut = name.find(['+', '-']).unwrap_or(name.len());
            (name[..cut].to_string(), name[cut..].to_string())
        };
        let vertex = |name: &str| {
            let (c, t) = split(name);
            let tag = rename(&c, &t);
            format!("{c}{tag}")
        };
        Self::from_parts(
            self.vertices
                .iter()
                .map(|(c, t, g)| (c.clone(), rename(c, t), *g)),
            self.edges
                .iter()
                .map(|(a, b, l)| (vertex(a), vertex(b), *l)),
        )
    }

    /// Equality up to independent sign flips per cluster.
    pub fn equivalent(&self, other: &GraphShape) -> bool {
        if self.vertices.len() != other.vertices.len() || self.edges.len() != other.edges.len() {
            return false;
        }
        let mut options: Vec<(String, Vec<(bool, bool)>)> = Vec::new();
        let mut widths: BTreeMap<&str, usize> = BTreeMap::new();
        for (c, t, _) in &self.vertices {
            let w = widths.entry(c.as_str()).or_default();
            *w = (*w).max(t.len());
        }
        for (c, w) in widths {
            let choices = match w {
                0 => vec![(false, false)],
                1 => vec![(false, false), (true, false)],
                _ => vec![(false, false), (true, false), (false, true), (true, true)],
            };
            options.push((c.to_string(), choices));
        }
        let total: usize = options.iter().map(|(_, o)| o.len()).product();
        if total > 1 << 20 {
            return false;
        }
        let mut counter = vec![0usize; options.len()];
        loop {
            let flips: BTreeMap<String, (bool, bool)> = options
                .iter()
                .zip(&counter)
                .map(|((c, o), &k)| (c.clone(), o[k]))
                .collect();
            if &self.flipped(&flips) == other {
                return true;
            }
            let mut i = 0;
            loop {
                if i == counter.len() {
                    return false;
                }
                counter[i] += 1;
                if counter[i] < options[i].1.len() {
                    break;
                }
                counter[i] = 0;
                i += 1;
            }
        }
    }
}

/// Whether the simple graph underlying `graph` is the complete bipartite
/// graph K₃,₃.
pub fn is_k33(graph: &DualGraph) -> bool {
    let n = graph.vertices.len();
    if n != 6 {
        return false;
    }
    let mut adj = vec![vec![false; n]; n];
    for e in &graph.edges {
        if e.from != e.to {
            adj[e.from][e.to] = true;
            adj[e.to][e.from] = true;
        }
    }
    let mut side = vec![None; n];
    side[0] = Some(false);
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        for w in 0..n {
            if !adj[v][w] {
                continue;
            }
            let want = !side[v].unwrap();
            match side[w] {
                None => {
                    side[w] = Some(want);
                    stack.push(w);
                }
                Some(s) if s != want => return false,
                _ => {}
            }
        }
    }
    if side.iter().any(|s| s.is_none()) {
        return false;
    }
    let left: Vec<_> = (0..n).filter(|&v| side[v] == Some(false)).collect();
    let right: Vec<_> = (0..n).filter(|&v| side[v] == Some(true)).collect();
    left.len() == 3 && right.len() == 3 && left.iter().all(|&a| right.iter().all(|&b| adj[a][b]))
}

/// ⌊(n₁-1)/2⌋ + ⌊(n₂-1)/2⌋ + ⌊(n₁+n₂-1)/2⌋ for the leaf counts of `pic`.
pub fn genus_target(pic: &ChromaticClusterPicture) -> u64 {
    let n1 = pic.leaf_count(Colour::Red);
    let n2 = pic.leaf_count(Colour::Blue);
    (curve_genus(n1) + curve_genus(n2) + curve_genus(n1 + n2)) as u64
}

/// Total vertex genus plus first Betti number.
pub fn genus_of_graph(graph: &DualGraph) -> i64 {
    graph.total_genus() as i64 + graph.betti()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Warn,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckEntry {
    pub check: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub picture: String,
    pub entries: Vec<CheckEntry>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Fail)
    }

    pub fn status(&self, check: &str) -> Option<Status> {
        self.entries
            .iter()
            .find(|e| e.check == check)
            .map(|e| e.status)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("picture {}\n", self.picture);
        for e in &self.entries {
            let tag = match e.status {
                Status::Pass => "PASS",
                Status::Warn => "WARN",
                Status::Fail => "FAIL",
            };
            out.push_str(&format!("  [{tag}] {:<22} {}\n", e.check, e.detail));
        }
        out
    }

    fn push(&mut self, check: &'static str, ok: bool, soft: bool, detail: String) {
        let status = match (ok, soft) {
            (true, _) => Status::Pass,
            (false, true) => Status::Warn,
            (false, false) => Status::Fail,
        };
        self.entries.push(CheckEntry {
            check,
            status,
            detail,
        });
    }
}

/// Runs the structural checks on the graph of `pic`. Genus balance is a hard
/// failure only when `strict_genus` is set (pictures known to come from
/// semistable curves); otherwise a mismatch is a warning.
pub fn check_graph_with(pic: &ChromaticClusterPicture, strict_genus: bool) -> CheckReport {
    let mut report = CheckReport {
        picture: pic.to_text(),
        entries: Vec::new(),
    };
    let cls = Classification::new(pic);
    let graph = match build_classified(&cls) {
        Ok(g) => g,
        Err(e) => {
            report.push("build", false, false, e.to_string());
            return report;
        }
    };
    report.push(
        "build",
        true,
        false,
        format!(
            "{} vertices, {} edges",
            graph.vertices.len(),
            graph.edges.len()
        ),
    );

    let components = graph.components();
    report.push(
        "connectivity",
        components == 1,
        false,
        format!("{components} component(s)"),
    );

    let mut bad = Vec::new();
    for s in cls.principal_clusters() {
        let want = VertexKind::of(&cls, s).tags().len();
        let got = graph.vertices_of(s).len();
        if want != got {
            bad.push(format!("{}: {got} != {want}", pic.label(s)));
        }
    }
    report.push(
        "vertex-count law",
        bad.is_empty(),
        false,
        if bad.is_empty() {
            "1, 2 or 4 vertices per principal cluster as classified".into()
        } else {
            bad.join("; ")
        },
    );

    let mut bad = Vec::new();
    for s in cls.principal_clusters() {
        for c in pic.children(s).filter(|&c| cls.is_principal(c)) {
            let chains: Vec<_> = graph
                .edges
                .iter()
                .filter(|e| e.row == Row::Chain { upper: s, lower: c })
                .collect();
            let want = if cls.is_chromatic(c) { 2 } else { 4 };
            if chains.len() != want {
                bad.push(format!(
                    "{} -> {}: {} chains",
                    pic.label(s),
                    pic.label(c),
                    chains.len()
                ));
                continue;
            }
            let (ku, kl) = (VertexKind::of(&cls, s), VertexKind::of(&cls, c));
            let sigma = cls.sigma(s, c);
            let mut expected: Vec<(usize, usize)> = if want == 2 {
                [1i8, -1]
                    .iter()
                    .map(|&x| {
                        (
                            ku.identify(Formal::Sign(x)),
                            kl.identify(Formal::Sign(x * sigma)),
                        )
                    })
                    .filter_map(|(a, b)| {
                        Some((graph.vertex_index(s, a?)?, graph.vertex_index(c, b?)?))
                    })
                    .collect()
            } else {
                [(1i8, 1i8), (1, -1), (-1, 1), (-1, -1)]
                    .iter()
                    .map(|&(a, b)| {
                        (
                            ku.identify(Formal::Pair(a, b)),
                            kl.identify(Formal::Pair(a, b)),
                        )
                    })
                    .filter_map(|(x, y)| {
                        Some((graph.vertex_index(s, x?)?, graph.vertex_index(c, y?)?))
                    })
                    .collect()
            };
            let mut got: Vec<(usize, usize)> = chains.iter().map(|e| (e.from, e.to)).collect();
            expected.sort();
            got.sort();
            if expected != got {
                bad.push(format!(
                    "{} -> {}: endpoints differ",
                    pic.label(s),
                    pic.label(c)
                ));
            }
        }
    }
    report.push(
        "chain-multiplicity law",
        bad.is_empty(),
        false,
        if bad.is_empty() {
            "2 chains per chromatic child, 4 per black child".into()
        } else {
            bad.join("; ")
        },
    );

    let target = genus_target(pic) as i64;
    let got = genus_of_graph(&graph);
    report.push(
        "genus balance",
        target == got,
        !strict_genus,
        format!(
            "{} + {} = {got}, expected {target}",
            graph.total_genus(),
            graph.betti()
        ),
    );

    let factor = Depth::from_integer(2);
    let scaled = pic
        .scaled(factor)
        .and_then(|q| build_classified(&Classification::new(&q)));
    let (ok, detail) = match scaled {
        Ok(h) => {
            let want = GraphShape::of(&graph.with_lengths_scaled(factor));
            let ok = GraphShape::of(&h) == want;
            (ok, "depths x2 gives lengths x2".to_string())
        }
        Err(e) => (false, format!("scaled build failed: {e}")),
    };
    report.push("scaling equivariance", ok, false, detail);

    let integral_input = pic.has_integer_depths();
    let fractional: Vec<_> = graph
        .edges
        .iter()
        .filter(|e| !e.length.is_integer())
        .map(|e| format!("{}={}", e.name, fmt_depth(&e.length)))
        .collect();
    report.push(
        "integral lengths",
        !integral_input || fractional.is_empty(),
        true,
        if fractional.is_empty() {
            "all lengths integral".into()
        } else if integral_input {
            format!(
                "integer depths but fractional lengths: {}",
                fractional.join(", ")
            )
        } else {
            format!("fractional depths in input: {}", fractional.join(", "))
        },
    );

    let loops = graph
        .edges
        .iter()
        .filter(|e| e.kind == EdgeKind::Loop)
        .count();
    report.push(
        "edge kinds",
        true,
        true,
        format!("{} chains, {loops} loops", graph.edges.len() - loops),
    );
    report
}

pub fn check_graph(pic: &ChromaticClusterPicture) -> CheckReport {
    check_graph_with(pic, false)
}

#[derive(Clone, Debug)]
pub struct FixtureResult {
    pub name: &'static str,
    pub matched: bool,
    pub detail: String,
}

/// Builds a bundled fixture and compares it with the expected graph up to
/// sign choices.
pub fn match_fixture(name: &str) -> Option<FixtureResult> {
    let fx = fixture(name)?;
    let pic = ChromaticClusterPicture::parse(fx.picture).expect("fixture pictures parse");
    Some(match crate::model::build(&pic) {
        Ok(graph) => {
            let got = GraphShape::of(&graph);
            let matched = got.equivalent(&fx.expected());
            FixtureResult {
                name: fx.name,
                matched,
                detail: if matched {
                    format!(
                        "{} vertices, {} edges",
                        graph.vertices.len(),
                        graph.edges.len()
                    )
                } else {
                    format!("got {:?}", got)
                },
            }
        }
        Err(e) => FixtureResult {
            name: fx.name,
            matched: false,
            detail: e.to_string(),
        },
    })
}
