//! Colour and predicate calculus on chromatic cluster pictures.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::picture::{ChromaticClusterPicture, ClusterId, Colour, DerivedPicture, Index};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClusterColour {
    Red,
    Blue,
    Purple,
    Black,
}

impl ClusterColour {
    /// Colour of a cluster with the given numbers of red and blue children,
    /// where purple children are counted on both sides.
    pub fn induced(red_children: usize, blue_children: usize) -> Self {
        match (red_children % 2 == 1, blue_children % 2 == 1) {
            (true, true) => ClusterColour::Purple,
            (true, false) => ClusterColour::Red,
            (false, true) => ClusterColour::Blue,
            (false, false) => ClusterColour::Black,
        }
    }

    pub fn counts_red(self) -> bool {
        matches!(self, ClusterColour::Red | ClusterColour::Purple)
    }

    pub fn counts_blue(self) -> bool {
        matches!(self, ClusterColour::Blue | ClusterColour::Purple)
    }

    pub fn is_chromatic(self) -> bool {
        self != ClusterColour::Black
    }
}

impl From<Colour> for ClusterColour {
    fn from(c: Colour) -> Self {
        match c {
            Colour::Red => ClusterColour::Red,
            Colour::Blue => ClusterColour::Blue,
        }
    }
}

impl fmt::Display for ClusterColour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClusterColour::Red => "red",
            ClusterColour::Blue => "blue",
            ClusterColour::Purple => "purple",
            ClusterColour::Black => "black",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Chromaticity {
    Polychromatic,
    MonoRed,
    MonoBlue,
    None,
}

impl Chromaticity {
    pub fn is_mono(self) -> bool {
        matches!(self, Chromaticity::MonoRed | Chromaticity::MonoBlue)
    }

    pub fn has_chromatic(self) -> bool {
        self != Chromaticity::None
    }
}

impl fmt::Display for Chromaticity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Chromaticity::Polychromatic => "poly",
            Chromaticity::MonoRed => "mono_red",
            Chromaticity::MonoBlue => "mono_blue",
            Chromaticity::None => "none",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Parities in the red, blue and composite pictures.
pub type ParityProfile = (Parity, Parity, Parity);

/// The parity triple forced by a colour.
pub fn expected_profile(colour: ClusterColour) -> ParityProfile {
    use Parity::*;
    match colour {
        ClusterColour::Purple => (Odd, Odd, Even),
        ClusterColour::Red => (Odd, Even, Odd),
        ClusterColour::Blue => (Even, Odd, Odd),
        ClusterColour::Black => (Even, Even, Even),
    }
}

#[derive(Serialize)]
struct TableRow {
    cluster: String,
    parent: Option<String>,
    size: usize,
    depth: String,
    colour: ClusterColour,
    parity: String,
    ubereven: bool,
    twin: bool,
    cotwin: bool,
    principal: bool,
    chromaticity: Chromaticity,
    genus: u32,
    chromatic_genus: Option<u32>,
}

#[derive(Clone, Debug)]
pub struct ClusterInfo {
    pub colour: ClusterColour,
    pub profile: ParityProfile,
    pub ubereven: bool,
    pub twin: bool,
    pub cotwin: bool,
    pub principal: bool,
    pub chromaticity: Chromaticity,
    pub genus: u32,
    /// `Err` carries the negative value the polychromatic formula produced.
    pub chromatic_genus: std::result::Result<u32, i64>,
    /// Star of the cluster in the red, blue and composite pictures.
    pub star: [ClusterId; 3],
}

/// Classification of every cluster of a picture, computed once.
#[derive(Clone, Debug)]
pub struct Classification<'a> {
    pic: &'a ChromaticClusterPicture,
    info: Vec<ClusterInfo>,
    degrees: (usize, usize),
}

fn index_slot(i: Index) -> usize {
    match i {
        Index::One => 0,
        Index::Two => 1,
        Index::H => 2,
    }
}

fn genus_from_count(k: usize) -> u32 {
    (k.saturating_sub(1) / 2) as u32
}

/// Genus of the hyperelliptic curve with `n` branch roots, ⌊(n-1)/2⌋.
pub fn curve_genus(n: usize) -> usize {
    n.saturating_sub(1) / 2
}

impl<'a> Classification<'a> {
    /// Classifies with the degrees of f₁, f₂ taken to be the leaf counts.
    pub fn new(pic: &'a ChromaticClusterPicture) -> Self {
        Self::with_degrees(
            pic,
            pic.leaf_count(Colour::Red),
            pic.leaf_count(Colour::Blue),
        )
    }

    pub fn with_degrees(pic: &'a ChromaticClusterPicture, deg1: usize, deg2: usize) -> Self {
        let n = pic.len();
        let mut colours = vec![ClusterColour::Black; n];
        // Children follow parents in the arena, so a reverse sweep is bottom-up.
        for c in pic.all().collect::<Vec<_>>().into_iter().rev() {
            colours[c.index()] = match pic.leaf_colour(c) {
                Some(colour) => colour.into(),
                None => {
                    let kids: Vec<_> = pic.children(c).map(|k| colours[k.index()]).collect();
                    ClusterColour::induced(
                        kids.iter().filter(|k| k.counts_red()).count(),
                        kids.iter().filter(|k| k.counts_blue()).count(),
                    )
                }
            };
        }
        let derived = [
            pic.derive(Index::One),
            pic.derive(Index::Two),
            pic.derive(Index::H),
        ];
        let mut info = Vec::with_capacity(n);
        for c in pic.all() {
            let colour = colours[c.index()];
            let profile = (
                Parity::of(derived[0].size(c)),
                Parity::of(derived[1].size(c)),
                Parity::of(derived[2].size(c)),
            );
            let star = [
                star_in(&derived[0], c),
                star_in(&derived[1], c),
                star_in(&derived[2], c),
            ];
            if pic.is_leaf(c) {
                info.push(ClusterInfo {
                    colour,
                    profile,
                    ubereven: false,
                    twin: false,
                    cotwin: false,
                    principal: false,
                    chromaticity: Chromaticity::None,
                    genus: 0,
                    chromatic_genus: Ok(0),
                    star,
                });
                continue;
            }
            let kids: Vec<ClusterColour> = pic.children(c).map(|k| colours[k.index()]).collect();
            let chromaticity = chromaticity_of(&kids);
            let odd = pic.children(c).filter(|&k| pic.size(k) % 2 == 1).count();
            info.push(ClusterInfo {
                colour,
                profile,
                ubereven: pic.children(c).all(|k| pic.size(k).is_multiple_of(2)),
                twin: pic.size(c) == 2,
                cotwin: false,
                principal: false,
                chromaticity,
                genus: genus_from_count(odd),
                chromatic_genus: Ok(0),
                star,
            });
        }
        let mut cls = Classification {
            pic,
            info,
            degrees: (deg1, deg2),
        };
        for c in pic.proper_clusters() {
            let cotwin = cls.compute_cotwin(c);
            let principal = cls.compute_principal(c);
            let slot = &mut cls.info[c.index()];
            slot.cotwin = cotwin;
            slot.principal = principal;
        }
        for c in pic.proper_clusters() {
            let g = cls.compute_chromatic_genus(c);
            cls.info[c.index()].chromatic_genus = g;
        }
        cls
    }

    pub fn picture(&self) -> &'a ChromaticClusterPicture {
        self.pic
    }

    pub fn degrees(&self) -> (usize, usize) {
        self.degrees
    }

    pub fn info(&self, c: ClusterId) -> &ClusterInfo {
        &self.info[c.index()]
    }

    pub fn colour(&self, c: ClusterId) -> ClusterColour {
        self.info(c).colour
    }

    pub fn parity_profile(&self, c: ClusterId) -> ParityProfile {
        self.info(c).profile
    }

    pub fn parity(&self, c: ClusterId, i: Index) -> Parity {
        let p = self.info(c).profile;
        match i {
            Index::One => p.0,
            Index::Two => p.1,
            Index::H => p.2,
        }
    }

    pub fn is_ubereven(&self, c: ClusterId) -> bool {
        self.info(c).ubereven
    }

    pub fn is_twin(&self, c: ClusterId) -> bool {
        self.info(c).twin
    }

    pub fn is_cotwin(&self, c: ClusterId) -> bool {
        self.info(c).cotwin
    }

    pub fn is_principal(&self, c: ClusterId) -> bool {
        self.info(c).principal
    }

    pub fn is_chromatic(&self, c: ClusterId) -> bool {
        self.colour(c).is_chromatic()
    }

    pub fn chromaticity(&self, c: ClusterId) -> Chromaticity {
        self.info(c).chromaticity
    }

    pub fn genus(&self, c: ClusterId) -> u32 {
        self.info(c).genus
    }

    pub fn chromatic_genus(&self, c: ClusterId) -> Result<u32> {
        self.info(c)
            .chromatic_genus
            .map_err(|value| Error::NegativeGenus {
                cluster: self.pic.label(c).to_string(),
                value,
            })
    }

    pub fn star(&self, c: ClusterId, i: Index) -> ClusterId {
        self.info(c).star[index_slot(i)]
    }

    /// 2g(C_h) for the composite curve.
    pub fn two_g_h(&self) -> usize {
        2 * curve_genus(self.pic.size(self.pic.root()))
    }

    /// Principal clusters in arena order.
    pub fn principal_clusters(&self) -> Vec<ClusterId> {
        self.pic
            .proper_clusters()
            .filter(|&c| self.is_principal(c))
            .collect()
    }

    fn compute_cotwin(&self, c: ClusterId) -> bool {
        let pic = self.pic;
        let two_g = self.two_g_h();
        if two_g == 0 {
            return false;
        }
        let kids: Vec<_> = pic.children(c).collect();
        kids.iter().any(|&k| {
            if pic.size(k) != two_g {
                return false;
            }
            if self.colour(c) == ClusterColour::Purple && self.colour(k) == ClusterColour::Black {
                return false;
            }
            let rest: Vec<_> = kids.iter().filter(|&&o| o != k).collect();
            !(rest.len() == 1 && pic.size(*rest[0]) == 2)
        })
    }

    /// Top cluster exceptions: a disjoint union of two clusters of the same
    /// colour or with a singleton, or a black top whose unique proper child
    /// has size 2g(C_h) and is purple or black. A disjoint union with a twin
    /// of the other colour stays principal.
    fn compute_principal(&self, c: ClusterId) -> bool {
        let pic = self.pic;
        if pic.size(c) < 3 {
            return false;
        }
        if !pic.is_root(c) {
            return true;
        }
        let kids: Vec<_> = pic.children(c).collect();
        if kids.len() == 2 {
            let (a, b) = (kids[0], kids[1]);
            if self.colour(a) == self.colour(b) || pic.is_leaf(a) || pic.is_leaf(b) {
                return false;
            }
        }
        let proper: Vec<_> = kids.iter().copied().filter(|&k| !pic.is_leaf(k)).collect();
        if proper.len() == 1 && pic.size(proper[0]) == self.two_g_h() {
            let child = self.colour(proper[0]);
            let chromatic_or_black =
                child == ClusterColour::Purple || child == ClusterColour::Black;
            if chromatic_or_black && self.colour(c) == ClusterColour::Black {
                return false;
            }
        }
        true
    }

    fn compute_chromatic_genus(&self, c: ClusterId) -> std::result::Result<u32, i64> {
        let pic = self.pic;
        let chromatic = pic.children(c).filter(|&k| self.is_chromatic(k)).count();
        match self.chromaticity(c) {
            Chromaticity::None => Ok(0),
            Chromaticity::MonoRed | Chromaticity::MonoBlue => Ok(genus_from_count(chromatic)),
            // Übereven clusters with purple children: the components are
            // double covers branched exactly at the purple children.
            Chromaticity::Polychromatic if self.is_ubereven(c) => Ok(genus_from_count(chromatic)),
            // Riemann-Hurwitz on the biquadratic cover: the point towards the
            // parent is a branch point of neither quotient exactly when the
            // cluster is even in both colours (for the top cluster, when both
            // degrees are even).
            Chromaticity::Polychromatic => {
                let (d1, d2) = self.degrees;
                let unbranched = if pic.is_root(c) {
                    d1 % 2 == 0 && d2 % 2 == 0
                } else {
                    self.colour(c) == ClusterColour::Black
                };
                let offset = if unbranched { 3 } else { 2 };
                let g = chromatic as i64 - offset;
                if g < 0 {
                    Err(g)
                } else {
                    Ok(g as u32)
                }
            }
        }
    }

    /// σ(s, s'): -1 for monochromatic children of opposite colours, or for a
    /// black übereven s with a black s' whose children are blue.
    pub fn sigma(&self, s: ClusterId, s2: ClusterId) -> i8 {
        let (a, b) = (self.chromaticity(s), self.chromaticity(s2));
        let opposite = matches!(
            (a, b),
            (Chromaticity::MonoRed, Chromaticity::MonoBlue)
                | (Chromaticity::MonoBlue, Chromaticity::MonoRed)
        );
        let black_case = self.colour(s) == ClusterColour::Black
            && self.is_ubereven(s)
            && self.colour(s2) == ClusterColour::Black
            && b == Chromaticity::MonoBlue;
        if opposite || black_case {
            -1
        } else {
            1
        }
    }

    fn table_rows(&self) -> Vec<TableRow> {
        let pic = self.pic;
        let p = |x: Parity| if x == Parity::Odd { 'o' } else { 'e' };
        pic.proper_clusters()
            .map(|c| {
                let info = self.info(c);
                let (a, b, h) = info.profile;
                TableRow {
                    cluster: pic.label(c).to_string(),
                    parent: pic.parent(c).map(|q| pic.label(q).to_string()),
                    size: pic.size(c),
                    depth: pic.depth(c).map(|d| d.to_string()).unwrap_or_default(),
                    colour: info.colour,
                    parity: format!("{}{}{}", p(a), p(b), p(h)),
                    ubereven: info.ubereven,
                    twin: info.twin,
                    cotwin: info.cotwin,
                    principal: info.principal,
                    chromaticity: info.chromaticity,
                    genus: info.genus,
                    chromatic_genus: info.chromatic_genus.ok(),
                }
            })
            .collect()
    }

    /// One JSON object per proper cluster, in arena order.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.table_rows()).expect("table serialises")
    }

    /// Aligned table; parity is given as red, blue, composite with o/e.
    pub fn to_text(&self) -> String {
        let mut out =
            String::from("cluster parent size depth  colour  parity flags chromaticity g  g_chi\n");
        for r in self.table_rows() {
            let flags: String = [
                (r.ubereven, 'U'),
                (r.twin, 'T'),
                (r.cotwin, 'C'),
                (r.principal, 'P'),
            ]
            .iter()
            .map(|&(on, ch)| if on { ch } else { '.' })
            .collect();
            out.push_str(&format!(
                "{:<7} {:<6} {:<4} {:<6} {:<7} {:<6} {:<5} {:<12} {:<2} {}\n",
                r.cluster,
                r.parent.as_deref().unwrap_or("-"),
                r.size,
                r.depth,
                r.colour.to_string(),
                r.parity,
                flags,
                r.chromaticity.to_string(),
                r.genus,
                r.chromatic_genus
                    .map(|g| g.to_string())
                    .unwrap_or_else(|| "-".into()),
            ));
        }
        out
    }

    /// Principal in the single-colour sense in at least one derived picture.
    pub fn principal_in_some_derived(&self, c: ClusterId) -> bool {
        Index::ALL
            .iter()
            .any(|&i| derived_principal(&self.pic.derive(i), c))
    }
}

fn chromaticity_of(children: &[ClusterColour]) -> Chromaticity {
    let purple = children.contains(&ClusterColour::Purple);
    let red = children.contains(&ClusterColour::Red);
    let blue = children.contains(&ClusterColour::Blue);
    match (purple || (red && blue), red, blue) {
        (true, _, _) => Chromaticity::Polychromatic,
        (false, true, false) => Chromaticity::MonoRed,
        (false, false, true) => Chromaticity::MonoBlue,
        _ => Chromaticity::None,
    }
}

fn star_in(d: &DerivedPicture<'_>, c: ClusterId) -> ClusterId {
    let pic = d.picture();
    let mut cur = c;
    while let Some(parent) = pic.parent(cur) {
        if !d.is_ubereven(parent) {
            break;
        }
        cur = parent;
    }
    cur
}

/// Children of the root set of `c` in the single-colour cluster picture:
/// maximal non-empty proper subsets, descending through discs that contain
/// the same roots.
fn real_children(d: &DerivedPicture<'_>, c: ClusterId) -> Vec<usize> {
    let pic = d.picture();
    let n = d.size(c);
    let mut out = Vec::new();
    for k in pic.children(c) {
        if !d.has_node(k) || d.size(k) == 0 {
            continue;
        }
        if d.size(k) == n && !pic.is_leaf(k) {
            return real_children(d, k);
        }
        out.push(d.size(k));
    }
    out
}

/// Single-colour principality: at least three roots, and for the top cluster
/// the component it gives on the curve has positive genus or meets the rest
/// of the special fibre in at least three points.
pub fn derived_principal(d: &DerivedPicture<'_>, c: ClusterId) -> bool {
    let pic = d.picture();
    if pic.is_leaf(c) || d.size(c) < 3 {
        return false;
    }
    if !pic.is_root(c) {
        return true;
    }
    // A top whose roots all lie in one child is that child's cluster here.
    if pic
        .children(c)
        .any(|k| !pic.is_leaf(k) && d.has_node(k) && d.size(k) == d.size(c))
    {
        return false;
    }
    let kids = real_children(d, c);
    let branch = kids.iter().filter(|&&k| k % 2 == 1).count() + d.size(c) % 2;
    let proper = kids.iter().filter(|&&k| k >= 2);
    if branch == 0 {
        // Two components, each meeting every proper child once.
        return proper.count() >= 3;
    }
    let links: usize = proper.map(|&k| if k % 2 == 1 { 1 } else { 2 }).sum();
    branch >= 4 || links >= 3
}
