#![allow(dead_code)]

use chromatic::picture::{ChromaticClusterPicture, ClusterId, Colour, Depth, RawNode};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_depth(rng: &mut ChaCha8Rng, halves: bool) -> Depth {
    let n = rng.gen_range(1..=4);
    if halves && rng.gen_bool(0.2) {
        Depth::new(2 * n - 1, 2)
    } else {
        Depth::from_integer(n)
    }
}

/// Splits `n` into at least two positive parts.
fn split(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    loop {
        let mut parts = Vec::new();
        let mut left = n;
        while left > 0 {
            let take = rng.gen_range(1..=left);
            // Bias towards singletons so trees stay shallow.
            let take = if rng.gen_bool(0.5) { 1 } else { take };
            parts.push(take);
            left -= take;
        }
        if parts.len() >= 2 {
            return parts;
        }
    }
}

fn subtree(rng: &mut ChaCha8Rng, n: usize, halves: bool) -> RawNode {
    if n == 1 {
        return RawNode::Leaf(if rng.gen_bool(0.5) {
            Colour::Red
        } else {
            Colour::Blue
        });
    }
    RawNode::Cluster {
        rel_depth: random_depth(rng, halves),
        children: split(rng, n)
            .into_iter()
            .map(|k| subtree(rng, k, halves))
            .collect(),
    }
}

/// Random picture with between 2 and `max_leaves` roots of both colours.
pub fn random_picture(
    rng: &mut ChaCha8Rng,
    max_leaves: usize,
    halves: bool,
) -> ChromaticClusterPicture {
    loop {
        let n = rng.gen_range(2..=max_leaves);
        let children = split(rng, n)
            .into_iter()
            .map(|k| subtree(rng, k, halves))
            .collect();
        let top = Depth::from_integer(rng.gen_range(-1..=1));
        if let Ok(p) = ChromaticClusterPicture::from_raw(top, children) {
            return p;
        }
    }
}

/// The fixed corpus used by the property suites.
pub fn corpus(size: usize, seed: u64) -> Vec<ChromaticClusterPicture> {
    let mut r = rng(seed);
    (0..size)
        .map(|_| random_picture(&mut r, 12, true))
        .collect()
}

/// What the biquadratic cover y₁² = f₁, y₂² = f₂ looks like over the
/// component of the x-line belonging to a cluster.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoverShape {
    pub components: usize,
    pub genus: i64,
    /// Points on each component where linking chains or loops attach.
    pub links: usize,
}

impl CoverShape {
    pub fn principal(&self) -> bool {
        self.genus >= 1 || self.links >= 3
    }
}

/// Branch type of a point in (Z/2)²: which of y₁, y₂ ramify there.
fn branch_type(red: usize, blue: usize) -> (u8, u8) {
    ((red % 2) as u8, (blue % 2) as u8)
}

/// Riemann-Hurwitz for the (Z/2)² cover of the cluster's component, worked
/// out from leaf counts alone.
pub fn cover_shape(pic: &ChromaticClusterPicture, c: ClusterId) -> CoverShape {
    let point = |k: ClusterId| branch_type(pic.red_count(k), pic.blue_count(k));
    let mut points: Vec<((u8, u8), bool)> = pic
        .children(c)
        .map(|k| (point(k), !pic.is_leaf(k)))
        .collect();
    // The point at infinity links to the parent unless c is the top.
    points.push((point(c), !pic.is_root(c)));
    let mut span = std::collections::BTreeSet::from([(0u8, 0u8)]);
    for &(t, _) in &points {
        let cur: Vec<_> = span.iter().copied().collect();
        for s in cur {
            span.insert((s.0 ^ t.0, s.1 ^ t.1));
        }
    }
    let h = span.len();
    let components = 4 / h;
    let branch = points.iter().filter(|(t, _)| *t != (0, 0)).count();
    // 2g - 2 = h(-2) + (h/2)·branch on each component.
    let genus = 1 - h as i64 + (branch * h) as i64 / 4;
    let links = points
        .iter()
        .filter(|(_, l)| *l)
        .map(|(t, _)| if *t == (0, 0) { h } else { h / 2 })
        .sum();
    CoverShape {
        components,
        genus,
        links,
    }
}
