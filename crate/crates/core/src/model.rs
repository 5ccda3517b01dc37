//! Dual graph of the special fibre of the minimal regular model, built from
//! a classified chromatic cluster picture.

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;

use num::Signed;
use serde::Serialize;

use crate::classify::{Chromaticity, Classification, ClusterColour};
use crate::error::{Error, Result};
use crate::picture::{fmt_depth, ChromaticClusterPicture, ClusterId, Depth};

/// Which of a cluster's vertices a vertex is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    Plain,
    Plus,
    Minus,
    PlusPlus,
    PlusMinus,
    MinusPlus,
    MinusMinus,
}

impl Tag {
    pub const ALL: [Tag; 7] = [
        Tag::Plain,
        Tag::Plus,
        Tag::Minus,
        Tag::PlusPlus,
        Tag::PlusMinus,
        Tag::MinusPlus,
        Tag::MinusMinus,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Tag::Plain => "",
            Tag::Plus => "+",
            Tag::Minus => "-",
            Tag::PlusPlus => "++",
            Tag::PlusMinus => "+-",
            Tag::MinusPlus => "-+",
            Tag::MinusMinus => "--",
        }
    }

    pub fn sign(x: i8) -> Tag {
        if x > 0 {
            Tag::Plus
        } else {
            Tag::Minus
        }
    }

    pub fn pair(a: i8, b: i8) -> Tag {
        match (a > 0, b > 0) {
            (true, true) => Tag::PlusPlus,
            (true, false) => Tag::PlusMinus,
            (false, true) => Tag::MinusPlus,
            (false, false) => Tag::MinusMinus,
        }
    }

    /// Sign coordinates of a two-sign tag.
    pub fn as_pair(self) -> Option<(i8, i8)> {
        match self {
            Tag::PlusPlus => Some((1, 1)),
            Tag::PlusMinus => Some((1, -1)),
            Tag::MinusPlus => Some((-1, 1)),
            Tag::MinusMinus => Some((-1, -1)),
            _ => None,
        }
    }

    pub fn as_sign(self) -> Option<i8> {
        match self {
            Tag::Plus => Some(1),
            Tag::Minus => Some(-1),
            _ => None,
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How many vertices a principal cluster contributes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexKind {
    /// One vertex: not übereven, polychromatic children.
    Single,
    /// Two vertices, not übereven, red children only.
    MonoRed,
    /// Two vertices, not übereven, blue children only.
    MonoBlue,
    /// Two vertices: übereven with chromatic children.
    UberevenChromatic,
    /// Four vertices: übereven without chromatic children.
    Quad,
}

impl VertexKind {
    pub fn of(cls: &Classification<'_>, s: ClusterId) -> Self {
        match (cls.is_ubereven(s), cls.chromaticity(s)) {
            (false, Chromaticity::Polychromatic) => VertexKind::Single,
            (false, Chromaticity::MonoRed) => VertexKind::MonoRed,
            (false, Chromaticity::MonoBlue) => VertexKind::MonoBlue,
            // A non-übereven cluster always has an odd, hence chromatic, child.
            (false, Chromaticity::None) => VertexKind::Single,
            (true, Chromaticity::None) => VertexKind::Quad,
            (true, _) => VertexKind::UberevenChromatic,
        }
    }

    pub fn tags(self) -> &'static [Tag] {
        match self {
            VertexKind::Single => &[Tag::Plain],
            VertexKind::Quad => &[
                Tag::PlusPlus,
                Tag::PlusMinus,
                Tag::MinusPlus,
                Tag::MinusMinus,
            ],
            _ => &[Tag::Plus, Tag::Minus],
        }
    }

    /// Concrete tag of a formal vertex label under the identifications.
    pub fn identify(self, formal: Formal) -> Option<Tag> {
        match (self, formal) {
            (VertexKind::Single, _) => Some(Tag::Plain),
            (VertexKind::Quad, Formal::Pair(a, b)) => Some(Tag::pair(a, b)),
            (VertexKind::Quad, Formal::Sign(_)) => None,
            (_, Formal::Sign(x)) => Some(Tag::sign(x)),
            (VertexKind::MonoRed, Formal::Pair(a, _)) => Some(Tag::sign(a)),
            (VertexKind::MonoBlue, Formal::Pair(_, b)) => Some(Tag::sign(b)),
            (VertexKind::UberevenChromatic, Formal::Pair(a, b)) => Some(Tag::sign(a * b)),
        }
    }
}

/// A vertex label as written in the edge tables, before identification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Formal {
    Sign(i8),
    Pair(i8, i8),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Chain,
    Loop,
}

/// The table row an edge comes from, with the clusters it is attached to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Row {
    /// Chain from principal `upper` to its principal child `lower`.
    Chain { upper: ClusterId, lower: ClusterId },
    /// Loop of a twin `twin` on its principal parent `parent`.
    TwinLoop { parent: ClusterId, twin: ClusterId },
    /// Loop of the cotwin top cluster on its principal child `child`.
    CotwinLoop { top: ClusterId, child: ClusterId },
    /// Chain between the two principal children of a non-principal top.
    PairChain { first: ClusterId, second: ClusterId },
    /// Loop of a non-principal top made of a principal cluster and a twin.
    TopTwinLoop {
        principal: ClusterId,
        twin: ClusterId,
    },
    /// Loop of a non-principal top made of an odd principal cluster and a
    /// single root.
    SingletonLoop { top: ClusterId, child: ClusterId },
}

impl Row {
    pub fn clusters(self) -> (ClusterId, ClusterId) {
        match self {
            Row::Chain { upper, lower } => (upper, lower),
            Row::TwinLoop { parent, twin } => (parent, twin),
            Row::CotwinLoop { top, child } => (top, child),
            Row::PairChain { first, second } => (first, second),
            Row::TopTwinLoop { principal, twin } => (principal, twin),
            Row::SingletonLoop { top, child } => (top, child),
        }
    }

    pub fn with_clusters(self, a: ClusterId, b: ClusterId) -> Row {
        match self {
            Row::Chain { .. } => Row::Chain { upper: a, lower: b },
            Row::TwinLoop { .. } => Row::TwinLoop { parent: a, twin: b },
            Row::CotwinLoop { .. } => Row::CotwinLoop { top: a, child: b },
            Row::PairChain { .. } => Row::PairChain {
                first: a,
                second: b,
            },
            Row::TopTwinLoop { .. } => Row::TopTwinLoop {
                principal: a,
                twin: b,
            },
            Row::SingletonLoop { .. } => Row::SingletonLoop { top: a, child: b },
        }
    }
}

/// Label of an edge inside its family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeLabel {
    Single,
    Sign(i8),
    Pair(i8, i8),
}

impl EdgeLabel {
    fn suffix(self) -> String {
        match self {
            EdgeLabel::Single => String::new(),
            EdgeLabel::Sign(x) => Tag::sign(x).as_str().to_string(),
            EdgeLabel::Pair(a, b) => Tag::pair(a, b).as_str().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub cluster: ClusterId,
    pub cluster_label: String,
    pub tag: Tag,
    pub genus: u32,
}

impl Vertex {
    pub fn name(&self) -> String {
        format!("{}{}", self.cluster_label, self.tag)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub from: usize,
    pub to: usize,
    pub length: Depth,
    pub kind: EdgeKind,
    pub row: Row,
    pub label: EdgeLabel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    kinds: BTreeMap<usize, VertexKind>,
}

impl DualGraph {
    pub fn vertex_index(&self, cluster: ClusterId, tag: Tag) -> Option<usize> {
        self.vertices
            .iter()
            .position(|v| v.cluster == cluster && v.tag == tag)
    }

    pub fn vertices_of(&self, cluster: ClusterId) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&i| self.vertices[i].cluster == cluster)
            .collect()
    }

    /// Vertex kind of a principal cluster.
    pub fn vertex_kind(&self, cluster: ClusterId) -> Option<VertexKind> {
        self.kinds.get(&cluster.index()).copied()
    }

    pub fn find_edge(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    pub fn total_genus(&self) -> u64 {
        self.vertices.iter().map(|v| u64::from(v.genus)).sum()
    }

    pub fn components(&self) -> usize {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.from), find(&mut parent, e.to));
            if a != b {
                parent[a] = b;
            }
        }
        (0..n).filter(|&i| find(&mut parent, i) == i).count()
    }

    /// First Betti number E - V + (number of components).
    pub fn betti(&self) -> i64 {
        self.edges.len() as i64 - self.vertices.len() as i64 + self.components() as i64
    }

    /// Every length multiplied by `factor`.
    pub fn with_lengths_scaled(&self, factor: Depth) -> DualGraph {
        let mut g = self.clone();
        for e in &mut g.edges {
            e.length *= factor;
        }
        g
    }

    fn remap_clusters(self, pic: &ChromaticClusterPicture) -> DualGraph {
        let map = |c: ClusterId| pic.cluster(c.index()).expect("same arena shape");
        let mut g = self;
        for v in &mut g.vertices {
            v.cluster = map(v.cluster);
        }
        for e in &mut g.edges {
            let (a, b) = e.row.clusters();
            e.row = e.row.with_clusters(map(a), map(b));
        }
        g
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct V<'a> {
            cluster: &'a str,
            tag: &'static str,
            genus: u32,
        }
        #[derive(Serialize)]
        struct E<'a> {
            name: &'a str,
            from: String,
            to: String,
            length: String,
            kind: EdgeKind,
        }
        #[derive(Serialize)]
        struct G<'a> {
            vertices: Vec<V<'a>>,
            edges: Vec<E<'a>>,
            betti: i64,
            total_genus: u64,
        }
        let doc = G {
            vertices: self
                .vertices
                .iter()
                .map(|v| V {
                    cluster: &v.cluster_label,
                    tag: v.tag.as_str(),
                    genus: v.genus,
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| E {
                    name: &e.name,
                    from: self.vertices[e.from].name(),
                    to: self.vertices[e.to].name(),
                    length: fmt_depth(&e.length),
                    kind: e.kind,
                })
                .collect(),
            betti: self.betti(),
            total_genus: self.total_genus(),
        };
        serde_json::to_string_pretty(&doc).expect("graph JSON serialises")
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph dual {\n  node [shape=circle];\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let label = if v.genus > 0 {
                v.genus.to_string()
            } else {
                String::new()
            };
            let _ = writeln!(out, "  v{i} [label=\"{label}\", xlabel=\"{}\"];", v.name());
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  v{} -- v{} [label=\"{}\", tooltip=\"{}\"];",
                e.from,
                e.to,
                fmt_depth(&e.length),
                e.name
            );
        }
        out.push_str("}\n");
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "vertices: {}  edges: {}  betti: {}  total genus: {}",
            self.vertices.len(),
            self.edges.len(),
            self.betti(),
            self.total_genus()
        );
        for v in &self.vertices {
            let _ = writeln!(out, "  v_{:<8} genus {}", v.name(), v.genus);
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  {:<12} {:<5} v_{} -- v_{}  length {}",
                e.name,
                match e.kind {
                    EdgeKind::Chain => "chain",
                    EdgeKind::Loop => "loop",
                },
                self.vertices[e.from].name(),
                self.vertices[e.to].name(),
                fmt_depth(&e.length)
            );
        }
        out
    }
}

/// A top-cluster row whose edges are added once the matching rows are known.
type PendingRow<'c, 'p> = Box<dyn FnOnce(&mut Builder<'c, 'p>) -> Result<()>>;

struct Builder<'c, 'p> {
    cls: &'c Classification<'p>,
    graph: DualGraph,
}

impl<'c, 'p> Builder<'c, 'p> {
    fn label(&self, c: ClusterId) -> String {
        self.cls.picture().label(c).to_string()
    }

    fn add_vertices(&mut self, s: ClusterId) -> Result<()> {
        let kind = VertexKind::of(self.cls, s);
        let genus = self.cls.chromatic_genus(s)?;
        for &tag in kind.tags() {
            self.graph.vertices.push(Vertex {
                cluster: s,
                cluster_label: self.label(s),
                tag,
                genus,
            });
        }
        self.graph.kinds.insert(s.index(), kind);
        Ok(())
    }

    fn vertex(&self, s: ClusterId, formal: Formal) -> Result<usize> {
        let kind = self
            .graph
            .vertex_kind(s)
            .ok_or_else(|| Error::NotPrincipal(self.label(s)))?;
        let tag = kind.identify(formal).ok_or_else(|| {
            Error::Input(format!(
                "cluster {} has four vertices but a single-sign endpoint was requested",
                self.label(s)
            ))
        })?;
        Ok(self.graph.vertex_index(s, tag).expect("vertex exists"))
    }

    #[allow(clippy::too_many_arguments)]
    fn edge(
        &mut self,
        name: String,
        from: (ClusterId, Formal),
        to: (ClusterId, Formal),
        length: Depth,
        kind: EdgeKind,
        row: Row,
        label: EdgeLabel,
    ) -> Result<()> {
        let from = self.vertex(from.0, from.1)?;
        let to = self.vertex(to.0, to.1)?;
        self.graph.edges.push(Edge {
            name,
            from,
            to,
            length,
            kind,
            row,
            label,
        });
        Ok(())
    }

    /// Two chains of half the depth for a chromatic lower cluster, four of
    /// the full depth for a black one.
    fn chain_family(
        &mut self,
        upper: ClusterId,
        lower: ClusterId,
        length: Depth,
        name: &str,
        row: Row,
        sigma: i8,
    ) -> Result<()> {
        if self.cls.is_chromatic(lower) {
            let half = length / 2;
            for x in [1i8, -1] {
                let label = EdgeLabel::Sign(x);
                self.edge(
                    format!("{name}{}", label.suffix()),
                    (upper, Formal::Sign(x)),
                    (lower, Formal::Sign(x * sigma)),
                    half,
                    EdgeKind::Chain,
                    row,
                    label,
                )?;
            }
        } else {
            for (a, b) in [(1i8, 1i8), (1, -1), (-1, 1), (-1, -1)] {
                let label = EdgeLabel::Pair(a, b);
                self.edge(
                    format!("{name}{}", label.suffix()),
                    (upper, Formal::Pair(a, b)),
                    (lower, Formal::Pair(a, b)),
                    length,
                    EdgeKind::Chain,
                    row,
                    label,
                )?;
            }
        }
        Ok(())
    }

    /// One loop v⁺ → v⁻ for a chromatic twin, two loops
    /// v^{++} → v^{σ,-σ} and v^{-σ,σ} → v^{--} for a black one. Both black
    /// loops run from the + side to the - side of the coordinate they flip.
    fn loop_family(
        &mut self,
        on: ClusterId,
        chromatic: bool,
        length: Depth,
        name: &str,
        row: Row,
        sigma: i8,
    ) -> Result<()> {
        if chromatic {
            self.edge(
                name.to_string(),
                (on, Formal::Sign(1)),
                (on, Formal::Sign(-1)),
                length,
                EdgeKind::Loop,
                row,
                EdgeLabel::Single,
            )
        } else {
            for x in [1i8, -1] {
                let label = EdgeLabel::Sign(x);
                let (start, end) = (
                    (on, Formal::Pair(x, x)),
                    (on, Formal::Pair(x * sigma, -x * sigma)),
                );
                let (from, to) = if x == 1 { (start, end) } else { (end, start) };
                self.edge(
                    format!("{name}{}", label.suffix()),
                    from,
                    to,
                    length * 2,
                    EdgeKind::Loop,
                    row,
                    label,
                )?;
            }
            Ok(())
        }
    }

    fn rel_depth(&self, c: ClusterId) -> Depth {
        self.cls
            .picture()
            .rel_depth(c)
            .expect("non-root proper cluster")
    }

    fn top_rows(&mut self) -> Result<usize> {
        let cls = self.cls;
        let pic = cls.picture();
        let root = pic.root();
        let kids: Vec<_> = pic.children(root).collect();
        let mut matched: Vec<&'static str> = Vec::new();
        let mut pending: Vec<PendingRow<'c, 'p>> = Vec::new();

        if cls.is_cotwin(root) {
            let two_g = cls.two_g_h();
            if let Some(&s) = kids
                .iter()
                .find(|&&k| pic.size(k) == two_g && cls.is_principal(k))
            {
                let colour = cls.colour(s);
                if colour == ClusterColour::Purple || colour == ClusterColour::Black {
                    matched.push("cotwin");
                    // The complement plays the part of a twin.
                    let blue_rest = pic.blue_count(root) > pic.blue_count(s);
                    let sigma = if blue_rest { -1 } else { 1 };
                    let name = format!("L_{}", pic.label(root));
                    let length = self.rel_depth(s);
                    let row = Row::CotwinLoop {
                        top: root,
                        child: s,
                    };
                    let chromatic = colour == ClusterColour::Purple;
                    pending.push(Box::new(move |b: &mut Self| {
                        b.loop_family(s, chromatic, length, &name, row, sigma)
                    }));
                }
            }
        }
        if kids.len() == 2 {
            let (s, s2) = (kids[0], kids[1]);
            if cls.is_principal(s) && cls.is_principal(s2) && cls.colour(s) == cls.colour(s2) {
                matched.push("two principal children of one colour");
                let length = self.rel_depth(s) + self.rel_depth(s2);
                let name = format!("L_{},{}", pic.label(s), pic.label(s2));
                let row = Row::PairChain {
                    first: s,
                    second: s2,
                };
                pending.push(Box::new(move |b: &mut Self| {
                    b.chain_family(s, s2, length, &name, row, 1)
                }));
            }
            for (s, t) in [(s, s2), (s2, s)] {
                let colour = cls.colour(s);
                if cls.is_principal(s)
                    && cls.is_twin(t)
                    && colour == cls.colour(t)
                    && matches!(colour, ClusterColour::Purple | ClusterColour::Black)
                {
                    matched.push("principal cluster and twin");
                    let length = self.rel_depth(s) + self.rel_depth(t);
                    let sigma = twin_sigma(cls, t);
                    let name = format!("L_{}", pic.label(t));
                    let row = Row::TopTwinLoop {
                        principal: s,
                        twin: t,
                    };
                    let chromatic = colour == ClusterColour::Purple;
                    pending.push(Box::new(move |b: &mut Self| {
                        b.loop_family(s, chromatic, length, &name, row, sigma)
                    }));
                }
            }
        }
        if kids.len() == 2 {
            let proper: Vec<_> = kids.iter().copied().filter(|&k| !pic.is_leaf(k)).collect();
            if let [s] = proper[..] {
                if pic.size(s) % 2 == 1 && cls.is_principal(s) {
                    matched.push("odd principal cluster and a single root");
                    let length = self.rel_depth(s);
                    let name = format!("L_{}", pic.label(root));
                    let row = Row::SingletonLoop {
                        top: root,
                        child: s,
                    };
                    // When both colour counts of the top are even, the chains
                    // end on rational tails and contribute nothing.
                    if pic.red_count(root) % 2 == 1 || pic.blue_count(root) % 2 == 1 {
                        pending.push(Box::new(move |b: &mut Self| {
                            b.loop_family(s, true, length, &name, row, 1)
                        }));
                    }
                }
            }
        }
        if matched.len() > 1 {
            return Err(Error::TableConflict(matched.join(" / ")));
        }
        for f in pending {
            f(self)?;
        }
        Ok(matched.len())
    }
}

/// Joining sign of a black twin's loops: the two loops swap the first sign
/// exactly when the twin has blue leaves, whatever its parent is.
fn twin_sigma(cls: &Classification<'_>, t: ClusterId) -> i8 {
    if cls.chromaticity(t) == Chromaticity::MonoBlue {
        -1
    } else {
        1
    }
}

/// Builds the dual graph, taking the degrees of f₁ and f₂ from `cls`.
pub fn build_classified(cls: &Classification<'_>) -> Result<DualGraph> {
    let pic = cls.picture();
    let denom = pic.depth_denominator();
    if denom == 1 {
        return build_integral(cls);
    }
    let scale = Depth::from_integer(denom);
    let scaled = pic.scaled(scale)?;
    let (d1, d2) = cls.degrees();
    let scaled_cls = Classification::with_degrees(&scaled, d1, d2);
    let graph = build_integral(&scaled_cls)?;
    Ok(graph
        .with_lengths_scaled(Depth::new(1, denom))
        .remap_clusters(pic))
}

/// Builds the dual graph with degrees equal to the leaf counts.
pub fn build(pic: &ChromaticClusterPicture) -> Result<DualGraph> {
    build_classified(&Classification::new(pic))
}

fn build_integral(cls: &Classification<'_>) -> Result<DualGraph> {
    let pic = cls.picture();
    let principal = cls.principal_clusters();
    if principal.is_empty() {
        return Err(Error::NoPrincipalCluster);
    }
    let mut b = Builder {
        cls,
        graph: DualGraph {
            vertices: Vec::new(),
            edges: Vec::new(),
            kinds: BTreeMap::new(),
        },
    };
    for &s in &principal {
        b.add_vertices(s)?;
    }
    for &s in &principal {
        for c in pic.children(s) {
            if pic.is_leaf(c) {
                continue;
            }
            let delta = b.rel_depth(c);
            let name = format!("L_{}", pic.label(c));
            if cls.is_principal(c) {
                let row = Row::Chain { upper: s, lower: c };
                b.chain_family(s, c, delta, &name, row, cls.sigma(s, c))?;
            } else if cls.is_twin(c) {
                let row = Row::TwinLoop { parent: s, twin: c };
                b.loop_family(
                    s,
                    cls.is_chromatic(c),
                    delta,
                    &name,
                    row,
                    twin_sigma(cls, c),
                )?;
            }
        }
    }
    let top_rows = if cls.is_principal(pic.root()) {
        0
    } else {
        b.top_rows()?
    };
    let graph = b.graph;
    let components = graph.components();
    if components > 1 {
        if !cls.is_principal(pic.root()) && top_rows == 0 {
            return Err(Error::UnsupportedTop(format!(
                "top cluster {} is not principal and its {} principal parts are not linked by any row",
                pic.to_text(),
                components
            )));
        }
        return Err(Error::Disconnected { components });
    }
    debug_assert!(graph.edges.iter().all(|e| e.length.is_positive()));
    Ok(graph)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(s: &str) -> DualGraph {
        build(&ChromaticClusterPicture::parse(s).unwrap()).unwrap()
    }

    fn lengths(g: &DualGraph) -> Vec<String> {
        let mut v: Vec<_> = g.edges.iter().map(|e| fmt_depth(&e.length)).collect();
        v.sort();
        v
    }

    #[test]
    fn purple_twin_gives_one_loop() {
        let g = graph("(0 (2 r b) r r b b)");
        assert_eq!(g.vertices.len(), 1);
        assert_eq!(g.vertices[0].genus, 3);
        assert_eq!(g.edges.len(), 1);
        assert_eq!(g.edges[0].kind, EdgeKind::Loop);
        assert_eq!(g.edges[0].from, g.edges[0].to);
        assert_eq!(lengths(&g), ["2"]);
    }

    #[test]
    fn black_twin_gives_two_loops() {
        let g = graph("(0 (3 r r) r b b b)");
        assert_eq!(g.vertices.len(), 1);
        assert_eq!(g.vertices[0].genus, 2);
        assert_eq!(lengths(&g), ["6", "6"]);
        assert_eq!(g.betti(), 2);
    }

    #[test]
    fn identifications() {
        assert_eq!(
            VertexKind::MonoRed.identify(Formal::Pair(1, -1)),
            Some(Tag::Plus)
        );
        assert_eq!(
            VertexKind::MonoBlue.identify(Formal::Pair(1, -1)),
            Some(Tag::Minus)
        );
        assert_eq!(
            VertexKind::UberevenChromatic.identify(Formal::Pair(-1, -1)),
            Some(Tag::Plus)
        );
        assert_eq!(
            VertexKind::Single.identify(Formal::Sign(-1)),
            Some(Tag::Plain)
        );
        assert_eq!(VertexKind::Quad.identify(Formal::Sign(1)), None);
    }

    #[test]
    fn k33_picture() {
        let g = graph("(0 (2 (5 r r) (4 b b)) (3 r b))");
        assert_eq!(g.vertices.len(), 6);
        assert!(g.vertices.iter().all(|v| v.genus == 0));
        assert_eq!(g.edges.len(), 9);
        assert_eq!(lengths(&g), ["10", "10", "2", "2", "2", "2", "3", "8", "8"]);
        assert_eq!(g.betti(), 4);
    }

    #[test]
    fn half_integer_depths_are_scaled() {
        let pic = ChromaticClusterPicture::parse("(0 (1/2 r b) r r b b)").unwrap();
        let g = build(&pic).unwrap();
        assert_eq!(lengths(&g), ["1/2"]);
        assert_eq!(g.vertices[0].cluster, pic.root());
    }

    #[test]
    fn non_principal_top_rows() {
        // Two purple principal children.
        let g = graph("(0 (1 r r r b) (3 r b b b))");
        assert_eq!(g.vertices.len(), 2);
        assert_eq!(lengths(&g), ["2", "2"]);

        // Purple cotwin child under a black top.
        let g = graph("(0 (2 r r r b b b) r b)");
        assert_eq!(lengths(&g), ["2"]);
        assert_eq!(g.edges[0].kind, EdgeKind::Loop);

        // Black principal child with a black twin.
        let g = graph("(0 (1 r r b b) (2 r r))");
        assert_eq!(lengths(&g), ["6", "6"]);

        // Odd principal child and a single root of the other colour.
        let g = graph("(0 (3 r r r) b)");
        assert_eq!(g.vertices.len(), 2);
        assert_eq!(lengths(&g), ["3"]);
        assert_eq!(g.total_genus() as i64 + g.betti(), 2);

        // Same colour: the chains end on rational tails.
        let g = graph("(0 (3 r r b) b)");
        assert!(g.edges.is_empty());
    }

    #[test]
    fn black_twin_under_blue_parent() {
        let g = graph("(0 (1 r r) b b b)");
        assert_eq!(g.components(), 1);
        assert_eq!(lengths(&g), ["2", "2"]);
    }

    #[test]
    fn no_principal_cluster() {
        let pic = ChromaticClusterPicture::parse("(0 (1 r b) (2 r b))").unwrap();
        assert_eq!(build(&pic), Err(Error::NoPrincipalCluster));
    }

    #[test]
    fn renderers() {
        let g = graph("(0 (2 r b) r r b b)");
        let dot = g.to_dot();
        assert!(dot.contains("label=\"3\""));
        assert!(dot.contains("v0 -- v0 [label=\"2\""));
        let json: serde_json::Value = serde_json::from_str(&g.to_json()).unwrap();
        assert_eq!(json["vertices"][0]["genus"], 3);
        assert_eq!(json["edges"][0]["length"], "2");
        assert_eq!(json["edges"][0]["kind"], "loop");
        assert!(g.to_text().contains("betti: 1"));
    }
}
