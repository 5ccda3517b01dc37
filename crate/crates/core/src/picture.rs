//! Chromatic cluster pictures: the rooted, depth-labelled tree of clusters
//! with red/blue roots as leaves, its text and JSON encodings, the depth
//! calculus and the derived red, blue and composite pictures.
//!
//! Text grammar:
//!
//! ```text
//! cluster := '(' depth item+ ')'
//! item    := 'r' | 'b' | cluster
//! depth   := integer | integer '/' integer
//! ```
//!
//! The depth of the outermost cluster is absolute, nested depths are relative
//! to the parent and must be positive.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use num::rational::Rational64;
use num::{Integer, Signed};
use serde::{Deserialize, Serialize};

use crate::classify::ClusterColour;
use crate::error::{Error, Result};

/// Exact rational depth.
pub type Depth = Rational64;

static NEXT_PICTURE: AtomicU64 = AtomicU64::new(1);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Colour {
    #[serde(rename = "r")]
    Red,
    #[serde(rename = "b")]
    Blue,
}

impl Colour {
    pub fn code(self) -> char {
        match self {
            Colour::Red => 'r',
            Colour::Blue => 'b',
        }
    }

    /// The derived picture in which roots of this colour survive.
    pub fn index(self) -> Index {
        match self {
            Colour::Red => Index::One,
            Colour::Blue => Index::Two,
        }
    }
}

/// Which of the three derived pictures: red (1), blue (2) or composite (h).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Index {
    One,
    Two,
    H,
}

impl Index {
    pub const ALL: [Index; 3] = [Index::One, Index::Two, Index::H];

    pub fn keeps(self, colour: Colour) -> bool {
        match self {
            Index::One => colour == Colour::Red,
            Index::Two => colour == Colour::Blue,
            Index::H => true,
        }
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Index::One => "1",
            Index::Two => "2",
            Index::H => "h",
        })
    }
}

impl FromStr for Index {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" => Ok(Index::One),
            "2" => Ok(Index::Two),
            "h" | "H" => Ok(Index::H),
            other => Err(Error::Input(format!("unknown picture index '{other}'"))),
        }
    }
}

/// Handle to a cluster (or leaf) of a particular picture.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClusterId {
    picture: u64,
    index: u32,
}

impl ClusterId {
    /// Position in the picture's arena (pre-order of the canonical tree).
    pub fn index(self) -> usize {
        self.index as usize
    }
}

/// Owned tree used while building pictures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawNode {
    Leaf(Colour),
    Cluster {
        rel_depth: Depth,
        children: Vec<RawNode>,
    },
}

#[derive(Clone, Debug)]
struct Node {
    parent: Option<u32>,
    children: Vec<u32>,
    leaf: Option<Colour>,
    rel_depth: Option<Depth>,
    depth: Option<Depth>,
    level: u32,
    size: usize,
    red: usize,
}

#[derive(Clone, Debug)]
pub struct ChromaticClusterPicture {
    id: u64,
    nodes: Vec<Node>,
    labels: Vec<String>,
    top_depth: Depth,
    prime_hint: Option<u64>,
}

impl PartialEq for ChromaticClusterPicture {
    fn eq(&self, other: &Self) -> bool {
        self.to_text() == other.to_text()
    }
}

impl Eq for ChromaticClusterPicture {}

impl fmt::Display for ChromaticClusterPicture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for ChromaticClusterPicture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

struct Keyed {
    node: RawNode,
    size: usize,
    colour_code: u8,
    text: String,
    /// Input positions of the leaves, in canonical order.
    leaves: Vec<usize>,
}

fn colour_code(c: ClusterColour) -> u8 {
    match c {
        ClusterColour::Red => 0,
        ClusterColour::Blue => 1,
        ClusterColour::Purple => 2,
        ClusterColour::Black => 3,
    }
}

/// Sorts children canonically (size desc, colour code, text) and returns the
/// subtree's key data. `top` is the depth printed for this cluster.
fn canonicalize(node: RawNode) -> (Keyed, ClusterColour) {
    canonicalize_from(node, &mut 0)
}

fn canonicalize_from(node: RawNode, next_leaf: &mut usize) -> (Keyed, ClusterColour) {
    match node {
        RawNode::Leaf(c) => {
            let colour = match c {
                Colour::Red => ClusterColour::Red,
                Colour::Blue => ClusterColour::Blue,
            };
            (
                Keyed {
                    node: RawNode::Leaf(c),
                    size: 1,
                    colour_code: colour_code(colour),
                    text: c.code().to_string(),
                    leaves: vec![std::mem::replace(next_leaf, *next_leaf + 1)],
                },
                colour,
            )
        }
        RawNode::Cluster {
            rel_depth,
            children,
        } => {
            let mut keyed: Vec<(Keyed, ClusterColour)> = children
                .into_iter()
                .map(|c| canonicalize_from(c, next_leaf))
                .collect();
            keyed.sort_by(|(a, _), (b, _)| compare_keys(a, b));
            let (mut red, mut blue) = (0, 0);
            for (_, c) in &keyed {
                if c.counts_red() {
                    red += 1;
                }
                if c.counts_blue() {
                    blue += 1;
                }
            }
            let colour = ClusterColour::induced(red, blue);
            let size = keyed.iter().map(|(k, _)| k.size).sum();
            let leaves = keyed
                .iter()
                .flat_map(|(k, _)| k.leaves.iter().copied())
                .collect();
            let mut text = format!("({}", fmt_depth(&rel_depth));
            for (k, _) in &keyed {
                text.push(' ');
                text.push_str(&k.text);
            }
            text.push(')');
            (
                Keyed {
                    node: RawNode::Cluster {
                        rel_depth,
                        children: keyed.into_iter().map(|(k, _)| k.node).collect(),
                    },
                    size,
                    colour_code: colour_code(colour),
                    text,
                    leaves,
                },
                colour,
            )
        }
    }
}

fn compare_keys(a: &Keyed, b: &Keyed) -> Ordering {
    b.size
        .cmp(&a.size)
        .then(a.colour_code.cmp(&b.colour_code))
        .then_with(|| a.text.cmp(&b.text))
}

pub(crate) fn fmt_depth(d: &Depth) -> String {
    if d.is_integer() {
        d.numer().to_string()
    } else {
        format!("{}/{}", d.numer(), d.denom())
    }
}

pub(crate) fn parse_depth(s: &str) -> Option<Depth> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<i64>().ok()?, d.trim().parse::<i64>().ok()?),
        None => (s.parse::<i64>().ok()?, 1),
    };
    if d == 0 {
        return None;
    }
    Some(Depth::new(n, d))
}

impl ChromaticClusterPicture {
    /// Builds a validated picture in canonical arena order.
    pub fn from_raw(top_depth: Depth, children: Vec<RawNode>) -> Result<Self> {
        Self::from_raw_tracked(top_depth, children).map(|(p, _)| p)
    }

    /// Like [`from_raw`](Self::from_raw), also returning the leaf handle of
    /// each input leaf in depth-first input order.
    pub fn from_raw_tracked(
        top_depth: Depth,
        children: Vec<RawNode>,
    ) -> Result<(Self, Vec<ClusterId>)> {
        if children.len() < 2 {
            return Err(Error::SingleChild { position: 0 });
        }
        let (root, _) = canonicalize(RawNode::Cluster {
            rel_depth: top_depth,
            children,
        });
        let order = root.leaves.clone();
        let mut pic = ChromaticClusterPicture {
            id: NEXT_PICTURE.fetch_add(1, AtomicOrdering::Relaxed),
            nodes: Vec::new(),
            labels: Vec::new(),
            top_depth,
            prime_hint: None,
        };
        pic.push(root.node, None, top_depth, 0)?;
        pic.assign_labels();
        let red = pic.leaf_count(Colour::Red);
        let blue = pic.leaf_count(Colour::Blue);
        if red == 0 || blue == 0 {
            return Err(Error::MonochromePicture { red, blue });
        }
        let mut handles = vec![pic.root(); order.len()];
        for (leaf, &input) in pic.leaves().zip(&order) {
            handles[input] = leaf;
        }
        Ok((pic, handles))
    }

    fn push(
        &mut self,
        node: RawNode,
        parent: Option<u32>,
        depth: Depth,
        level: u32,
    ) -> Result<u32> {
        let idx = self.nodes.len() as u32;
        match node {
            RawNode::Leaf(c) => {
                self.nodes.push(Node {
                    parent,
                    children: Vec::new(),
                    leaf: Some(c),
                    rel_depth: None,
                    depth: None,
                    level,
                    size: 1,
                    red: usize::from(c == Colour::Red),
                });
            }
            RawNode::Cluster {
                rel_depth,
                children,
            } => {
                if children.len() < 2 {
                    return Err(Error::SingleChild { position: 0 });
                }
                if parent.is_some() && !rel_depth.is_positive() {
                    return Err(Error::NonPositiveDepth {
                        position: 0,
                        depth: fmt_depth(&rel_depth),
                    });
                }
                self.nodes.push(Node {
                    parent,
                    children: Vec::new(),
                    leaf: None,
                    rel_depth: parent.map(|_| rel_depth),
                    depth: Some(depth),
                    level,
                    size: 0,
                    red: 0,
                });
                let mut kids = Vec::with_capacity(children.len());
                for child in children {
                    let child_depth = match &child {
                        RawNode::Cluster { rel_depth, .. } => depth + rel_depth,
                        RawNode::Leaf(_) => depth,
                    };
                    kids.push(self.push(child, Some(idx), child_depth, level + 1)?);
                }
                let size = kids.iter().map(|&k| self.nodes[k as usize].size).sum();
                let red = kids.iter().map(|&k| self.nodes[k as usize].red).sum();
                let n = &mut self.nodes[idx as usize];
                n.children = kids;
                n.size = size;
                n.red = red;
            }
        }
        Ok(idx)
    }

    fn assign_labels(&mut self) {
        let (mut proper, mut leaves) = (0, 0);
        self.labels = self
            .nodes
            .iter()
            .map(|n| {
                if n.parent.is_none() {
                    "R".to_string()
                } else if n.leaf.is_some() {
                    leaves += 1;
                    format!("l{leaves}")
                } else {
                    proper += 1;
                    format!("s{proper}")
                }
            })
            .collect();
    }

    fn handle(&self, index: usize) -> ClusterId {
        ClusterId {
            picture: self.id,
            index: index as u32,
        }
    }

    fn node(&self, c: ClusterId) -> &Node {
        debug_assert_eq!(c.picture, self.id, "cluster from another picture");
        &self.nodes[c.index()]
    }

    /// Whether the handle belongs to this picture.
    pub fn owns(&self, c: ClusterId) -> bool {
        c.picture == self.id && c.index() < self.nodes.len()
    }

    /// Handle for the arena position `index`.
    pub fn cluster(&self, index: usize) -> Option<ClusterId> {
        (index < self.nodes.len()).then(|| self.handle(index))
    }

    pub fn root(&self) -> ClusterId {
        self.handle(0)
    }

    pub fn top_depth(&self) -> Depth {
        self.top_depth
    }

    pub fn prime_hint(&self) -> Option<u64> {
        self.prime_hint
    }

    pub fn with_prime_hint(mut self, p: Option<u64>) -> Self {
        self.prime_hint = p;
        self
    }

    /// Number of arena entries (proper clusters and leaves).
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// All clusters and leaves in arena pre-order.
    pub fn all(&self) -> impl Iterator<Item = ClusterId> + '_ {
        (0..self.nodes.len()).map(|i| self.handle(i))
    }

    /// Proper clusters (size at least two) in arena pre-order.
    pub fn proper_clusters(&self) -> impl Iterator<Item = ClusterId> + '_ {
        self.all().filter(|&c| !self.is_leaf(c))
    }

    pub fn leaves(&self) -> impl Iterator<Item = ClusterId> + '_ {
        self.all().filter(|&c| self.is_leaf(c))
    }

    pub fn children(&self, c: ClusterId) -> impl Iterator<Item = ClusterId> + '_ {
        self.node(c)
            .children
            .iter()
            .map(|&i| self.handle(i as usize))
    }

    pub fn child_count(&self, c: ClusterId) -> usize {
        self.node(c).children.len()
    }

    pub fn parent(&self, c: ClusterId) -> Option<ClusterId> {
        self.node(c).parent.map(|p| self.handle(p as usize))
    }

    pub fn is_root(&self, c: ClusterId) -> bool {
        self.node(c).parent.is_none()
    }

    pub fn is_leaf(&self, c: ClusterId) -> bool {
        self.node(c).leaf.is_some()
    }

    pub fn leaf_colour(&self, c: ClusterId) -> Option<Colour> {
        self.node(c).leaf
    }

    /// Number of roots in the cluster.
    pub fn size(&self, c: ClusterId) -> usize {
        self.node(c).size
    }

    pub fn red_count(&self, c: ClusterId) -> usize {
        self.node(c).red
    }

    pub fn blue_count(&self, c: ClusterId) -> usize {
        self.node(c).size - self.node(c).red
    }

    pub fn colour_count(&self, c: ClusterId, colour: Colour) -> usize {
        match colour {
            Colour::Red => self.red_count(c),
            Colour::Blue => self.blue_count(c),
        }
    }

    pub fn leaf_count(&self, colour: Colour) -> usize {
        self.colour_count(self.root(), colour)
    }

    /// Relative depth δ; `None` on the root and on leaves.
    pub fn rel_depth(&self, c: ClusterId) -> Option<Depth> {
        self.node(c).rel_depth
    }

    /// Absolute depth d; `None` on leaves.
    pub fn depth(&self, c: ClusterId) -> Option<Depth> {
        self.node(c).depth
    }

    pub fn label(&self, c: ClusterId) -> &str {
        &self.labels[c.index()]
    }

    pub fn find_label(&self, label: &str) -> Option<ClusterId> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.handle(i))
    }

    /// Whether `outer` contains `inner` (reflexive).
    pub fn contains(&self, outer: ClusterId, inner: ClusterId) -> bool {
        let mut cur = Some(inner);
        while let Some(c) = cur {
            if c == outer {
                return true;
            }
            cur = self.parent(c);
        }
        false
    }

    /// Smallest cluster containing both arguments.
    pub fn wedge(&self, a: ClusterId, b: ClusterId) -> Result<ClusterId> {
        if !self.owns(a) || !self.owns(b) {
            return Err(Error::ForeignCluster);
        }
        let (mut x, mut y) = (a, b);
        while self.node(x).level > self.node(y).level {
            x = self.parent(x).expect("non-root has a parent");
        }
        while self.node(y).level > self.node(x).level {
            y = self.parent(y).expect("non-root has a parent");
        }
        while x != y {
            x = self.parent(x).expect("non-root has a parent");
            y = self.parent(y).expect("non-root has a parent");
        }
        Ok(x)
    }

    /// d(a) + d(b) - 2 d(a ∧ b).
    pub fn rel_distance(&self, a: ClusterId, b: ClusterId) -> Result<Depth> {
        let w = self.wedge(a, b)?;
        let depth = |c: ClusterId| {
            self.depth(c)
                .ok_or_else(|| Error::SingletonDepth(self.label(c).to_string()))
        };
        Ok(depth(a)? + depth(b)? - depth(w)? * 2)
    }

    /// Copy of the picture with every depth (including the top depth)
    /// multiplied by `factor`. Arena order and labels are preserved.
    pub fn scaled(&self, factor: Depth) -> Result<Self> {
        if !factor.is_positive() {
            return Err(Error::Input(format!(
                "scale factor must be positive, got {}",
                fmt_depth(&factor)
            )));
        }
        let mut out = self.clone();
        out.id = NEXT_PICTURE.fetch_add(1, AtomicOrdering::Relaxed);
        out.top_depth *= factor;
        for n in &mut out.nodes {
            n.rel_depth = n.rel_depth.map(|d| d * factor);
            n.depth = n.depth.map(|d| d * factor);
        }
        Ok(out)
    }

    /// Least common denominator of all relative depths.
    pub fn depth_denominator(&self) -> i64 {
        self.nodes
            .iter()
            .filter_map(|n| n.rel_depth)
            .fold(1, |acc, d| acc.lcm(d.denom()))
    }

    pub fn has_integer_depths(&self) -> bool {
        self.top_depth.is_integer() && self.depth_denominator() == 1
    }

    fn raw(&self, c: ClusterId) -> RawNode {
        match self.leaf_colour(c) {
            Some(colour) => RawNode::Leaf(colour),
            None => RawNode::Cluster {
                rel_depth: self.rel_depth(c).unwrap_or(self.top_depth),
                children: self.children(c).map(|k| self.raw(k)).collect(),
            },
        }
    }

    /// Owned tree of the picture (the root carries the top depth).
    pub fn to_raw(&self) -> RawNode {
        self.raw(self.root())
    }

    /// Canonical text form.
    pub fn to_text(&self) -> String {
        canonicalize(self.to_raw()).0.text
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut parser = Parser::new(text);
        let (top, children, open) = parser.cluster(true)?;
        parser.skip_ws();
        if parser.pos < parser.bytes.len() {
            return Err(Error::Syntax {
                position: parser.pos,
                message: "trailing input after picture".into(),
            });
        }
        if children.len() < 2 {
            return Err(Error::SingleChild { position: open });
        }
        Self::from_raw(top, children)
    }

    pub fn to_json(&self) -> String {
        let tree = json_node(&canonicalize(self.to_raw()).0.node, true);
        let doc = JsonPicture {
            top_depth: fmt_depth(&self.top_depth),
            tree,
        };
        serde_json::to_string(&doc).expect("picture JSON serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: JsonPicture =
            serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        let top = parse_depth(&doc.top_depth)
            .ok_or_else(|| Error::Json(format!("bad top_depth '{}'", doc.top_depth)))?;
        if doc.tree.depth.is_some() {
            return Err(Error::Json("root node must have depth null".into()));
        }
        if doc.tree.color.is_some() {
            return Err(Error::Json("root node cannot be a leaf".into()));
        }
        let children = doc
            .tree
            .children
            .iter()
            .map(raw_from_json)
            .collect::<Result<Vec<_>>>()?;
        Self::from_raw(top, children)
    }

    /// Red (1), blue (2) or composite (h) picture on the same disc tree.
    pub fn derive(&self, index: Index) -> DerivedPicture<'_> {
        let sizes = self
            .nodes
            .iter()
            .map(|n| match index {
                Index::One => n.red,
                Index::Two => n.size - n.red,
                Index::H => n.size,
            })
            .collect();
        DerivedPicture {
            pic: self,
            index,
            sizes,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct JsonPicture {
    top_depth: String,
    tree: JsonNode,
}

#[derive(Serialize, Deserialize)]
struct JsonNode {
    depth: Option<String>,
    children: Vec<JsonNode>,
    color: Option<Colour>,
}

fn json_node(node: &RawNode, root: bool) -> JsonNode {
    match node {
        RawNode::Leaf(c) => JsonNode {
            depth: None,
            children: Vec::new(),
            color: Some(*c),
        },
        RawNode::Cluster {
            rel_depth,
            children,
        } => JsonNode {
            depth: (!root).then(|| fmt_depth(rel_depth)),
            children: children.iter().map(|c| json_node(c, false)).collect(),
            color: None,
        },
    }
}

fn raw_from_json(node: &JsonNode) -> Result<RawNode> {
    match (&node.color, node.children.is_empty()) {
        (Some(c), true) => {
            if node.depth.is_some() {
                return Err(Error::Json("leaf nodes carry no depth".into()));
            }
            Ok(RawNode::Leaf(*c))
        }
        (Some(_), false) => Err(Error::Json("coloured node has children".into())),
        (None, true) => Err(Error::MissingColour { position: 0 }),
        (None, false) => {
            let d = node
                .depth
                .as_deref()
                .ok_or_else(|| Error::Json("nested cluster without depth".into()))?;
            let rel_depth =
                parse_depth(d).ok_or_else(|| Error::Json(format!("bad depth '{d}'")))?;
            if !rel_depth.is_positive() {
                return Err(Error::NonPositiveDepth {
                    position: 0,
                    depth: d.to_string(),
                });
            }
            if node.children.len() < 2 {
                return Err(Error::SingleChild { position: 0 });
            }
            Ok(RawNode::Cluster {
                rel_depth,
                children: node
                    .children
                    .iter()
                    .map(raw_from_json)
                    .collect::<Result<_>>()?,
            })
        }
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn syntax(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    /// Parses `'(' depth item+ ')'`, returning the depth, children and the
    /// byte offset of the opening parenthesis.
    fn cluster(&mut self, top: bool) -> Result<(Depth, Vec<RawNode>, usize)> {
        self.skip_ws();
        let open = self.pos;
        if self.peek() != Some(b'(') {
            return Err(self.syntax("expected '('"));
        }
        self.pos += 1;
        self.skip_ws();
        let depth_pos = self.pos;
        let token = self.token();
        if token.is_empty() {
            return Err(self.syntax("expected a depth"));
        }
        let depth = parse_depth(token).ok_or_else(|| Error::Syntax {
            position: depth_pos,
            message: format!("invalid depth '{token}'"),
        })?;
        if !top && !depth.is_positive() {
            return Err(Error::NonPositiveDepth {
                position: depth_pos,
                depth: token.to_string(),
            });
        }
        let mut children = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None => return Err(self.syntax("unclosed '('")),
                Some(b')') => {
                    self.pos += 1;
                    break;
                }
                Some(b'(') => {
                    let (d, kids, child_open) = self.cluster(false)?;
                    if kids.len() < 2 {
                        return Err(Error::SingleChild {
                            position: child_open,
                        });
                    }
                    children.push(RawNode::Cluster {
                        rel_depth: d,
                        children: kids,
                    });
                }
                Some(_) => {
                    let at = self.pos;
                    let token = self.token();
                    match token {
                        "r" => children.push(RawNode::Leaf(Colour::Red)),
                        "b" => children.push(RawNode::Leaf(Colour::Blue)),
                        t if parse_depth(t).is_some() => {
                            return Err(Error::MissingColour { position: at })
                        }
                        "" => return Err(self.syntax("unexpected character")),
                        t => {
                            return Err(Error::Syntax {
                                position: at,
                                message: format!("unexpected token '{t}'"),
                            })
                        }
                    }
                }
            }
        }
        if children.is_empty() {
            return Err(Error::Syntax {
                position: open,
                message: "cluster has no items".into(),
            });
        }
        Ok((depth, children, open))
    }

    fn token(&mut self) -> &'a str {
        let start = self.pos;
        while let Some(b) = self.peek() {
            if b.is_ascii_whitespace() || b == b'(' || b == b')' {
                break;
            }
            self.pos += 1;
        }
        std::str::from_utf8(&self.bytes[start..self.pos]).unwrap_or("")
    }
}

/// One of the red, blue or composite pictures induced by a chromatic
/// picture. It shares the disc tree (and the arena) of the chromatic picture;
/// only leaf membership changes, so nodes may be empty or chains.
#[derive(Clone, Debug)]
pub struct DerivedPicture<'a> {
    pic: &'a ChromaticClusterPicture,
    index: Index,
    sizes: Vec<usize>,
}

impl<'a> DerivedPicture<'a> {
    pub fn index(&self) -> Index {
        self.index
    }

    pub fn picture(&self) -> &'a ChromaticClusterPicture {
        self.pic
    }

    /// The chromatic cluster this node comes from (identity on handles).
    pub fn back_map(&self, c: ClusterId) -> ClusterId {
        c
    }

    /// Whether the node exists in this derived picture: every proper cluster
    /// does (as a disc), leaves only when their colour survives.
    pub fn has_node(&self, c: ClusterId) -> bool {
        match self.pic.leaf_colour(c) {
            Some(colour) => self.index.keeps(colour),
            None => true,
        }
    }

    /// Number of surviving roots below the node.
    pub fn size(&self, c: ClusterId) -> usize {
        self.sizes[c.index()]
    }

    pub fn is_even(&self, c: ClusterId) -> bool {
        self.size(c).is_multiple_of(2)
    }

    pub fn is_empty_node(&self, c: ClusterId) -> bool {
        !self.pic.is_leaf(c) && self.size(c) == 0
    }

    pub fn children(&self, c: ClusterId) -> Vec<ClusterId> {
        self.pic.children(c).filter(|&k| self.has_node(k)).collect()
    }

    /// A proper disc with a single child and no other content.
    pub fn is_chain(&self, c: ClusterId) -> bool {
        !self.pic.is_leaf(c) && self.children(c).len() == 1
    }

    /// All children even (vacuously true for childless discs).
    pub fn is_ubereven(&self, c: ClusterId) -> bool {
        !self.pic.is_leaf(c) && self.children(c).iter().all(|&k| self.is_even(k))
    }

    /// Total number of roots of the corresponding polynomial.
    pub fn degree(&self) -> usize {
        self.size(self.pic.root())
    }

    /// Genus of the corresponding hyperelliptic curve, ⌊(n-1)/2⌋.
    pub fn curve_genus(&self) -> usize {
        self.degree().saturating_sub(1) / 2
    }

    /// Principal in the usual single-colour sense: at least three roots and,
    /// for the top disc, neither an even disjoint union of two children nor
    /// a child of size 2g.
    pub fn is_principal(&self, c: ClusterId) -> bool {
        let n = self.size(c);
        if self.pic.is_leaf(c) || n < 3 {
            return false;
        }
        if !self.pic.is_root(c) {
            return true;
        }
        let kids = self.children(c);
        if n.is_multiple_of(2) && kids.len() == 2 {
            return false;
        }
        let two_g = 2 * self.curve_genus();
        !kids.iter().any(|&k| self.size(k) == two_g)
    }

    /// Cotwin in this picture: a child of size 2g whose complement is not a
    /// twin.
    pub fn is_cotwin(&self, c: ClusterId) -> bool {
        if self.pic.is_leaf(c) {
            return false;
        }
        let two_g = 2 * self.curve_genus();
        let kids = self.children(c);
        kids.iter().any(|&k| {
            self.size(k) == two_g && two_g > 0 && {
                let rest: Vec<_> = kids.iter().filter(|&&o| o != k).collect();
                !(rest.len() == 1 && self.size(*rest[0]) == 2)
            }
        })
    }
}

/// Depth helper used by builders: `p`-free integer depth.
pub fn integer_depth(n: i64) -> Depth {
    Depth::from_integer(n)
}
