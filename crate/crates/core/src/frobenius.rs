//! Frobenius action on the dual graph, from a cluster permutation and a table
//! of ε values.

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::classify::Classification;
use crate::error::{Error, Result};
use crate::model::{DualGraph, EdgeLabel, Row, Tag, VertexKind};
use crate::picture::{ChromaticClusterPicture, ClusterId, Index};

/// ε_{s,i} values keyed by cluster and picture index. `None` records a value
/// that is known to be undefined.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EpsilonTable {
    entries: BTreeMap<(usize, Index), Option<i8>>,
}

impl EpsilonTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every proper cluster and index set to +1.
    pub fn trivial(pic: &ChromaticClusterPicture) -> Self {
        let mut t = Self::new();
        for c in pic.proper_clusters() {
            for i in Index::ALL {
                t.set(c, i, Some(1));
            }
        }
        t
    }

    pub fn set(&mut self, c: ClusterId, i: Index, value: Option<i8>) {
        self.entries.insert((c.index(), i), value);
    }

    /// The stored entry, without falling back to s*.
    pub fn entry(&self, c: ClusterId, i: Index) -> Option<Option<i8>> {
        self.entries.get(&(c.index(), i)).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// ε_{c,i}, read from c itself or else from c* (the two agree by
    /// definition).
    pub fn get(&self, cls: &Classification<'_>, c: ClusterId, i: Index) -> Result<i8> {
        let pic = cls.picture();
        for cand in [c, cls.star(c, i)] {
            match self.entry(cand, i) {
                Some(Some(v)) => return Ok(v),
                Some(None) => {
                    return Err(Error::UndefinedEpsilon {
                        cluster: pic.label(cand).to_string(),
                        index: i,
                    })
                }
                None => {}
            }
        }
        Err(Error::MissingEpsilon(format!("{}:{}", pic.label(c), i)))
    }

    /// Parses `{"s1": {"1": 1, "2": -1, "h": null}, ...}`.
    pub fn from_json(pic: &ChromaticClusterPicture, text: &str) -> Result<Self> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| Error::Input(format!("epsilon JSON: {e}")))?;
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Input("epsilon JSON must be an object".into()))?;
        let mut t = Self::new();
        for (label, per_index) in obj {
            let c = proper_cluster(pic, label)?;
            let per_index = per_index.as_object().ok_or_else(|| {
                Error::Input(format!("epsilon entry for {label} must be an object"))
            })?;
            for (index, v) in per_index {
                let i: Index = index.parse()?;
                let v = match v {
                    Value::Null => None,
                    Value::Number(n) if n.as_i64() == Some(1) => Some(1),
                    Value::Number(n) if n.as_i64() == Some(-1) => Some(-1),
                    other => {
                        return Err(Error::Input(format!(
                            "epsilon {label}:{index} must be 1, -1 or null, got {other}"
                        )))
                    }
                };
                t.set(c, i, v);
            }
        }
        Ok(t)
    }

    pub fn to_json(&self, pic: &ChromaticClusterPicture) -> Value {
        let mut out = serde_json::Map::new();
        for (&(c, i), &v) in &self.entries {
            let label = pic
                .cluster(c)
                .map(|c| pic.label(c))
                .unwrap_or("?")
                .to_string();
            let slot = out
                .entry(label)
                .or_insert_with(|| Value::Object(Default::default()));
            slot.as_object_mut()
                .expect("object")
                .insert(i.to_string(), v.map_or(Value::Null, |v| json!(v)));
        }
        Value::Object(out)
    }
}

fn proper_cluster(pic: &ChromaticClusterPicture, label: &str) -> Result<ClusterId> {
    match pic.find_label(label) {
        Some(c) if !pic.is_leaf(c) => Ok(c),
        Some(_) => Err(Error::Input(format!(
            "{label} is a leaf, not a proper cluster"
        ))),
        None => Err(Error::Input(format!("unknown cluster label {label}"))),
    }
}

/// A permutation of the proper clusters; unlisted clusters are fixed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClusterMap {
    image: BTreeMap<usize, usize>,
}

impl ClusterMap {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn apply(&self, pic: &ChromaticClusterPicture, c: ClusterId) -> ClusterId {
        match self.image.get(&c.index()) {
            Some(&j) => pic.cluster(j).expect("validated cluster map"),
            None => c,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().all(|(a, b)| a == b)
    }

    pub fn insert(&mut self, from: ClusterId, to: ClusterId) {
        self.image.insert(from.index(), to.index());
    }

    /// Parses `{"s1": "s2", "s2": "s1"}` and checks it is an automorphism.
    pub fn from_json(pic: &ChromaticClusterPicture, text: &str) -> Result<Self> {
        let raw: BTreeMap<String, String> = serde_json::from_str(text)
            .map_err(|e| Error::Input(format!("permutation JSON: {e}")))?;
        let mut m = Self::identity();
        for (a, b) in &raw {
            m.insert(proper_cluster(pic, a)?, proper_cluster(pic, b)?);
        }
        m.validate(pic)?;
        Ok(m)
    }

    /// Cluster map induced by a permutation of the leaves.
    pub fn from_leaf_map(
        pic: &ChromaticClusterPicture,
        leaf: impl Fn(ClusterId) -> ClusterId,
    ) -> Result<Self> {
        let leaf_set = |c: ClusterId| -> Vec<usize> {
            let mut v: Vec<usize> = pic
                .leaves()
                .filter(|&l| pic.contains(c, l))
                .map(|l| l.index())
                .collect();
            v.sort_unstable();
            v
        };
        let by_set: BTreeMap<Vec<usize>, ClusterId> =
            pic.proper_clusters().map(|c| (leaf_set(c), c)).collect();
        let mut m = Self::identity();
        for c in pic.proper_clusters() {
            let mut img: Vec<usize> = leaf_set(c)
                .into_iter()
                .map(|l| leaf(pic.cluster(l).expect("leaf")).index())
                .collect();
            img.sort_unstable();
            let target = by_set.get(&img).ok_or_else(|| {
                Error::NotAutomorphism(format!(
                    "image of the roots of {} is not a cluster",
                    pic.label(c)
                ))
            })?;
            m.insert(c, *target);
        }
        m.validate(pic)?;
        Ok(m)
    }

    /// Bijective, fixes the top, and preserves parents, relative depths and
    /// the colours of leaf children.
    pub fn validate(&self, pic: &ChromaticClusterPicture) -> Result<()> {
        let bad = |msg: String| Err(Error::NotAutomorphism(msg));
        let proper: Vec<_> = pic.proper_clusters().collect();
        let mut seen = std::collections::BTreeSet::new();
        for &c in &proper {
            let t = self.apply(pic, c);
            if pic.is_leaf(t) {
                return bad(format!("{} maps to a leaf", pic.label(c)));
            }
            if !seen.insert(t) {
                return bad(format!("two clusters map to {}", pic.label(t)));
            }
            if pic.is_root(c) != pic.is_root(t) {
                return bad("the top cluster must be fixed".into());
            }
            if let (Some(p), Some(q)) = (pic.parent(c), pic.parent(t)) {
                if self.apply(pic, p) != q {
                    return bad(format!(
                        "parent of {} does not map to parent of {}",
                        pic.label(c),
                        pic.label(t)
                    ));
                }
            }
            if pic.rel_depth(c) != pic.rel_depth(t) {
                return bad(format!(
                    "{} and {} have different depths",
                    pic.label(c),
                    pic.label(t)
                ));
            }
            let leaf_kids = |x: ClusterId| {
                let mut v: Vec<_> = pic.children(x).filter_map(|k| pic.leaf_colour(k)).collect();
                v.sort();
                v
            };
            if leaf_kids(c) != leaf_kids(t) {
                return bad(format!(
                    "{} and {} have different single roots",
                    pic.label(c),
                    pic.label(t)
                ));
            }
        }
        Ok(())
    }

    /// `next` after `self`.
    pub fn then(&self, next: &ClusterMap, pic: &ChromaticClusterPicture) -> ClusterMap {
        let mut m = ClusterMap::identity();
        for c in pic.proper_clusters() {
            m.insert(c, next.apply(pic, self.apply(pic, c)));
        }
        m
    }
}

/// Frobenius data: where clusters go and the ε values of the element.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FrobeniusAction {
    pub perm: ClusterMap,
    pub eps: EpsilonTable,
}

impl FrobeniusAction {
    pub fn identity(pic: &ChromaticClusterPicture) -> Self {
        Self {
            perm: ClusterMap::identity(),
            eps: EpsilonTable::trivial(pic),
        }
    }

    /// The action of `next` after `self`, with ε_s(ψφ) = ε_s(φ)·ε_{φ(s)}(ψ).
    /// Entries that are missing or undefined in either factor are left out.
    pub fn then(&self, next: &FrobeniusAction, cls: &Classification<'_>) -> FrobeniusAction {
        let pic = cls.picture();
        let mut eps = EpsilonTable::new();
        for c in pic.proper_clusters() {
            for i in Index::ALL {
                let here = self.eps.get(cls, c, i);
                let there = next.eps.get(cls, self.perm.apply(pic, c), i);
                if let (Ok(a), Ok(b)) = (here, there) {
                    eps.set(c, i, Some(a * b));
                }
            }
        }
        FrobeniusAction {
            perm: self.perm.then(&next.perm, pic),
            eps,
        }
    }
}

/// Which Frobenius rule moved a vertex or an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Single vertex of a cluster with polychromatic children.
    Unique,
    /// (i): Γ_s^± for clusters with chromatic children.
    SignedVertices,
    /// (ii): Γ_s^{±,±} for übereven clusters without chromatic children.
    PairedVertices,
    /// (iii): chains to a chromatic cluster.
    ChromaticChains,
    /// (iv): chains to a black cluster.
    BlackChains,
    /// (v): loops of chromatic twins, cotwins and top-cluster loops.
    ChromaticLoop,
    /// (vi): loop pairs of black twins and cotwins.
    BlackLoops,
    /// Chains between the two halves of a non-principal top cluster.
    TopChains,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::Unique => "unique",
            Rule::SignedVertices => "i",
            Rule::PairedVertices => "ii",
            Rule::ChromaticChains => "iii",
            Rule::BlackChains => "iv",
            Rule::ChromaticLoop => "v",
            Rule::BlackLoops => "vi",
            Rule::TopChains => "top",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A permutation of vertices and a signed permutation of edges; sign -1
/// means the edge is mapped with its orientation reversed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphAutomorphism {
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<(usize, i8)>,
}

/// The rule applied to each vertex and edge by [`act`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub vertex_rules: Vec<Rule>,
    pub edge_rules: Vec<Rule>,
}

impl GraphAutomorphism {
    pub fn identity(graph: &DualGraph) -> Self {
        Self {
            vertex_map: (0..graph.vertices.len()).collect(),
            edge_map: (0..graph.edges.len()).map(|e| (e, 1)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.vertex_map.iter().enumerate().all(|(i, &j)| i == j)
            && self
                .edge_map
                .iter()
                .enumerate()
                .all(|(i, &(j, s))| i == j && s == 1)
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &GraphAutomorphism) -> GraphAutomorphism {
        GraphAutomorphism {
            vertex_map: other
                .vertex_map
                .iter()
                .map(|&v| self.vertex_map[v])
                .collect(),
            edge_map: other
                .edge_map
                .iter()
                .map(|&(e, s)| {
                    let (f, t) = self.edge_map[e];
                    (f, s * t)
                })
                .collect(),
        }
    }

    /// Checks bijectivity and that incidence, orientation, lengths, kinds and
    /// genera are respected.
    pub fn validate(&self, graph: &DualGraph) -> Result<()> {
        let bad = |msg: String| Err(Error::NotAutomorphism(msg));
        let mut vs = self.vertex_map.clone();
        vs.sort_unstable();
        if vs != (0..graph.vertices.len()).collect::<Vec<_>>() {
            return bad("vertex map is not a bijection".into());
        }
        let mut es: Vec<_> = self.edge_map.iter().map(|&(e, _)| e).collect();
        es.sort_unstable();
        if es != (0..graph.edges.len()).collect::<Vec<_>>() {
            return bad("edge map is not a bijection".into());
        }
        for (v, &w) in self.vertex_map.iter().enumerate() {
            if graph.vertices[v].genus != graph.vertices[w].genus {
                return bad(format!(
                    "{} and {} have different genera",
                    graph.vertices[v].name(),
                    graph.vertices[w].name()
                ));
            }
        }
        for (i, &(j, sign)) in self.edge_map.iter().enumerate() {
            let (e, f) = (&graph.edges[i], &graph.edges[j]);
            if e.length != f.length || e.kind != f.kind {
                return bad(format!(
                    "{} and {} differ in length or kind",
                    e.name, f.name
                ));
            }
            let (a, b) = (self.vertex_map[e.from], self.vertex_map[e.to]);
            let ends = if sign > 0 {
                (f.from, f.to)
            } else {
                (f.to, f.from)
            };
            if ends != (a, b) {
                return bad(format!(
                    "{} is not mapped onto {} compatibly",
                    e.name, f.name
                ));
            }
        }
        Ok(())
    }

    pub fn to_json(&self, graph: &DualGraph, trace: Option<&Trace>) -> String {
        let vertices: Vec<Value> = self
            .vertex_map
            .iter()
            .enumerate()
            .map(|(v, &w)| {
                let mut o = json!({
                    "from": graph.vertices[v].name(),
                    "to": graph.vertices[w].name(),
                });
                if let Some(t) = trace {
                    o["rule"] = json!(t.vertex_rules[v].as_str());
                }
                o
            })
            .collect();
        let edges: Vec<Value> = self
            .edge_map
            .iter()
            .enumerate()
            .map(|(e, &(f, s))| {
                let mut o = json!({
                    "from": graph.edges[e].name,
                    "to": graph.edges[f].name,
                    "sign": s,
                });
                if let Some(t) = trace {
                    o["rule"] = json!(t.edge_rules[e].as_str());
                }
                o
            })
            .collect();
        serde_json::to_string_pretty(&json!({
            "identity": self.is_identity(),
            "vertices": vertices,
            "edges": edges,
        }))
        .expect("serialisable")
    }

    pub fn to_text(&self, graph: &DualGraph, trace: Option<&Trace>) -> String {
        let mut out = String::new();
        let rule = |r: Option<Rule>| r.map(|r| format!("  ({r})")).unwrap_or_default();
        for (v, &w) in self.vertex_map.iter().enumerate() {
            let _ = writeln!(
                out,
                "v_{:<8} -> v_{}{}",
                graph.vertices[v].name(),
                graph.vertices[w].name(),
                rule(trace.map(|t| t.vertex_rules[v]))
            );
        }
        for (e, &(f, s)) in self.edge_map.iter().enumerate() {
            let sign = if s > 0 { "" } else { "-" };
            let _ = writeln!(
                out,
                "{:<10} -> {sign}{}{}",
                graph.edges[e].name,
                graph.edges[f].name,
                rule(trace.map(|t| t.edge_rules[e]))
            );
        }
        out
    }
}

/// The index in which a chromatic cluster is even.
fn even_index(pic: &ChromaticClusterPicture, c: ClusterId) -> Index {
    match (pic.red_count(c) % 2, pic.blue_count(c) % 2) {
        (1, 0) => Index::Two,
        (0, 1) => Index::One,
        _ => Index::H,
    }
}

/// Indices (i, j) for a pair of black loops: the loops are swapped by ε_i,
/// where the twin-like part has no roots in Σ_i, and reversed by ε_j.
fn black_loop_indices(red_in_twin: bool) -> (Index, Index) {
    if red_in_twin {
        (Index::Two, Index::One)
    } else {
        (Index::One, Index::Two)
    }
}

/// Predicted image of one edge family member: the rule, the label map and
/// the orientation sign when the rule fixes one.
struct Prediction {
    rule: Rule,
    label: EdgeLabel,
    sign: Option<i8>,
    cluster: ClusterId,
}

fn predict(
    cls: &Classification<'_>,
    eps: &EpsilonTable,
    row: Row,
    label: EdgeLabel,
) -> Result<Prediction> {
    let pic = cls.picture();
    let signed = |c: ClusterId, e: i8, rule: Rule, sign: Option<i8>| -> Result<Prediction> {
        let label = match label {
            EdgeLabel::Sign(x) => EdgeLabel::Sign(x * e),
            other => other,
        };
        Ok(Prediction {
            rule,
            label,
            sign,
            cluster: c,
        })
    };
    let paired = |c: ClusterId, rule: Rule| -> Result<Prediction> {
        let (e2, e1) = (eps.get(cls, c, Index::Two)?, eps.get(cls, c, Index::One)?);
        let label = match label {
            EdgeLabel::Pair(a, b) => EdgeLabel::Pair(a * e2, b * e1),
            other => other,
        };
        Ok(Prediction {
            rule,
            label,
            sign: Some(1),
            cluster: c,
        })
    };
    let chromatic_loop = |c: ClusterId| -> Result<Prediction> {
        let e = eps.get(cls, c, even_index(pic, c))?;
        Ok(Prediction {
            rule: Rule::ChromaticLoop,
            label,
            sign: Some(e),
            cluster: c,
        })
    };
    let black_loops = |c: ClusterId, red_in_twin: bool| -> Result<Prediction> {
        let (i, j) = black_loop_indices(red_in_twin);
        let (swap, flip) = (eps.get(cls, c, i)?, eps.get(cls, c, j)?);
        signed(c, swap, Rule::BlackLoops, Some(flip))
    };
    match row {
        Row::Chain { lower, .. } => {
            if cls.is_chromatic(lower) {
                let e = eps.get(cls, lower, even_index(pic, lower))?;
                signed(lower, e, Rule::ChromaticChains, Some(1))
            } else {
                paired(lower, Rule::BlackChains)
            }
        }
        Row::TwinLoop { twin, .. } | Row::TopTwinLoop { twin, .. } => {
            if cls.is_chromatic(twin) {
                chromatic_loop(twin)
            } else {
                black_loops(twin, pic.red_count(twin) > 0)
            }
        }
        Row::CotwinLoop { top, child } => {
            if cls.is_chromatic(child) {
                chromatic_loop(child)
            } else {
                black_loops(child, pic.red_count(top) > pic.red_count(child))
            }
        }
        Row::SingletonLoop { child, .. } => chromatic_loop(child),
        Row::PairChain { first, second } => {
            if cls.is_chromatic(first) {
                let a = eps.get(cls, first, even_index(pic, first))?;
                let b = eps.get(cls, second, even_index(pic, second))?;
                if a != b {
                    return Err(Error::InconsistentEpsilon(format!(
                        "{} and {}",
                        pic.label(first),
                        pic.label(second)
                    )));
                }
                signed(first, a, Rule::TopChains, Some(1))
            } else {
                let p = paired(first, Rule::TopChains)?;
                let q = paired(second, Rule::TopChains)?;
                if p.label != q.label {
                    return Err(Error::InconsistentEpsilon(format!(
                        "{} and {}",
                        pic.label(first),
                        pic.label(second)
                    )));
                }
                Ok(p)
            }
        }
    }
}

fn vertex_image(
    cls: &Classification<'_>,
    graph: &DualGraph,
    action: &FrobeniusAction,
    v: usize,
) -> Result<(usize, Rule)> {
    let pic = cls.picture();
    let vert = &graph.vertices[v];
    let s = vert.cluster;
    let target = action.perm.apply(pic, s);
    let kind = graph
        .vertex_kind(s)
        .ok_or_else(|| Error::NotPrincipal(pic.label(s).to_string()))?;
    let (tag, rule) = match kind {
        VertexKind::Single => (Tag::Plain, Rule::Unique),
        VertexKind::Quad => {
            let (a, b) = vert.tag.as_pair().expect("quad tag");
            let e2 = action.eps.get(cls, s, Index::Two)?;
            let e1 = action.eps.get(cls, s, Index::One)?;
            (Tag::pair(a * e2, b * e1), Rule::PairedVertices)
        }
        _ => {
            let x = vert.tag.as_sign().expect("signed tag");
            let mut found: Option<i8> = None;
            for i in Index::ALL {
                if !pic.derive(i).is_ubereven(s) {
                    continue;
                }
                let e = action.eps.get(cls, s, i)?;
                if found.is_some_and(|f| f != e) {
                    return Err(Error::InconsistentEpsilon(pic.label(s).to_string()));
                }
                found = Some(e);
            }
            let e = found.ok_or_else(|| {
                Error::Input(format!(
                    "cluster {} is übereven in no derived picture",
                    pic.label(s)
                ))
            })?;
            (Tag::sign(x * e), Rule::SignedVertices)
        }
    };
    let w = graph
        .vertex_index(target, tag)
        .ok_or_else(|| Error::NotAutomorphism(format!("no vertex {}{tag}", pic.label(target))))?;
    Ok((w, rule))
}

/// The automorphism of `graph` induced by `action`, with the rule used for
/// every vertex and edge.
pub fn act_traced(
    cls: &Classification<'_>,
    graph: &DualGraph,
    action: &FrobeniusAction,
) -> Result<(GraphAutomorphism, Trace)> {
    let pic = cls.picture();
    action.perm.validate(pic)?;
    let mut vertex_map = Vec::with_capacity(graph.vertices.len());
    let mut vertex_rules = Vec::with_capacity(graph.vertices.len());
    for v in 0..graph.vertices.len() {
        let (w, rule) = vertex_image(cls, graph, action, v)?;
        vertex_map.push(w);
        vertex_rules.push(rule);
    }
    let mut edge_map = Vec::with_capacity(graph.edges.len());
    let mut edge_rules = Vec::with_capacity(graph.edges.len());
    for e in &graph.edges {
        let p = predict(cls, &action.eps, e.row, e.label)?;
        let (a, b) = e.row.clusters();
        let row = e
            .row
            .with_clusters(action.perm.apply(pic, a), action.perm.apply(pic, b));
        let inconsistent = || Error::InconsistentEpsilon(pic.label(p.cluster).to_string());
        let j = graph
            .edges
            .iter()
            .position(|f| f.row == row && f.label == p.label)
            .ok_or_else(inconsistent)?;
        let f = &graph.edges[j];
        let (from, to) = (vertex_map[e.from], vertex_map[e.to]);
        let sign = if f.from == f.to {
            if (from, to) != (f.from, f.to) {
                return Err(inconsistent());
            }
            p.sign.ok_or_else(inconsistent)?
        } else if (from, to) == (f.from, f.to) {
            1
        } else if (from, to) == (f.to, f.from) {
            -1
        } else {
            return Err(inconsistent());
        };
        if p.sign.is_some_and(|s| s != sign) {
            return Err(inconsistent());
        }
        edge_map.push((j, sign));
        edge_rules.push(p.rule);
    }
    let auto = GraphAutomorphism {
        vertex_map,
        edge_map,
    };
    auto.validate(graph)?;
    Ok((
        auto,
        Trace {
            vertex_rules,
            edge_rules,
        },
    ))
}

/// The automorphism of `graph` induced by `action`.
pub fn act(
    cls: &Classification<'_>,
    graph: &DualGraph,
    action: &FrobeniusAction,
) -> Result<GraphAutomorphism> {
    act_traced(cls, graph, action).map(|(a, _)| a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::build;

    fn setup(s: &str) -> (ChromaticClusterPicture, DualGraph) {
        let p = ChromaticClusterPicture::parse(s).unwrap();
        let g = build(&p).unwrap();
        (p, g)
    }

    #[test]
    fn trivial_action_is_identity() {
        for f in crate::verify::fixtures::FIXTURES {
            let (p, g) = setup(f.picture);
            let cls = Classification::new(&p);
            let a = act(&cls, &g, &FrobeniusAction::identity(&p)).unwrap();
            assert!(a.is_identity(), "{}", f.name);
        }
    }

    #[test]
    fn purple_twin_loop_is_reversed_by_its_epsilon() {
        let (p, g) = setup("(0 (2 r b) r r b b)");
        let cls = Classification::new(&p);
        let mut action = FrobeniusAction::identity(&p);
        action
            .eps
            .set(p.find_label("s1").unwrap(), Index::H, Some(-1));
        let a = act(&cls, &g, &action).unwrap();
        assert_eq!(a.edge_map, vec![(0, -1)]);
    }

    #[test]
    fn black_twin_loops_swap_and_reverse() {
        let (p, g) = setup("(0 (3 r r) r b b b)");
        let cls = Classification::new(&p);
        let t = p.find_label("s1").unwrap();
        for (e1, e2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let mut action = FrobeniusAction::identity(&p);
            action.eps.set(t, Index::One, Some(e1));
            action.eps.set(t, Index::Two, Some(e2));
            let a = act(&cls, &g, &action).unwrap();
            let swapped = a.edge_map[0].0 == 1;
            assert_eq!(swapped, e2 == -1);
            assert!(a.edge_map.iter().all(|&(_, s)| s == e1));
        }
    }

    #[test]
    fn missing_and_undefined_entries_are_reported() {
        let (p, g) = setup("(0 (2 r b) r r b b)");
        let cls = Classification::new(&p);
        let mut action = FrobeniusAction {
            perm: ClusterMap::identity(),
            eps: EpsilonTable::new(),
        };
        assert!(matches!(
            act(&cls, &g, &action),
            Err(Error::MissingEpsilon(_))
        ));
        action.eps.set(p.find_label("s1").unwrap(), Index::H, None);
        assert!(matches!(
            act(&cls, &g, &action),
            Err(Error::UndefinedEpsilon { .. })
        ));
    }

    #[test]
    fn epsilon_falls_back_to_the_star_cluster() {
        let (p, g) = setup("(0 (2 (5 r r) (4 b b)) (3 r b))");
        let cls = Classification::new(&p);
        let mut action = FrobeniusAction {
            perm: ClusterMap::identity(),
            eps: EpsilonTable::new(),
        };
        for c in [p.root(), p.find_label("s1").unwrap()] {
            for i in Index::ALL {
                action.eps.set(c, i, Some(1));
            }
        }
        // The twins read their values from s1 or from the top.
        assert!(act(&cls, &g, &action).unwrap().is_identity());
    }

    #[test]
    fn swapping_isomorphic_children() {
        let (p, g) = setup("(0 (2 r r r) (2 r r r) b b b)");
        let cls = Classification::new(&p);
        let perm = ClusterMap::from_json(&p, r#"{"s1":"s2","s2":"s1"}"#).unwrap();
        let action = FrobeniusAction {
            perm,
            eps: EpsilonTable::trivial(&p),
        };
        let a = act(&cls, &g, &action).unwrap();
        assert!(!a.is_identity());
        assert!(a.compose(&a).is_identity());
    }

    #[test]
    fn bad_permutations_are_rejected() {
        let p = ChromaticClusterPicture::parse("(0 (2 r r r) (3 r r r) b b b)").unwrap();
        assert!(matches!(
            ClusterMap::from_json(&p, r#"{"s1":"s2","s2":"s1"}"#),
            Err(Error::NotAutomorphism(_))
        ));
        assert!(ClusterMap::from_json(&p, r#"{"s9":"s1"}"#).is_err());
    }

    #[test]
    fn epsilon_json_round_trip() {
        let p = ChromaticClusterPicture::parse("(0 (2 r b) r r b b)").unwrap();
        let t = EpsilonTable::from_json(&p, r#"{"s1":{"h":-1,"1":null}}"#).unwrap();
        let back = EpsilonTable::from_json(&p, &t.to_json(&p).to_string()).unwrap();
        assert_eq!(t, back);
        assert!(EpsilonTable::from_json(&p, r#"{"s1":{"h":2}}"#).is_err());
    }
}
