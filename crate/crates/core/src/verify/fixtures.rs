//! Worked examples bundled as fixtures, with their expected dual graphs.

use crate::picture::Depth;

use super::GraphShape;

pub struct Fixture {
    pub name: &'static str,
    pub summary: &'static str,
    pub picture: &'static str,
    /// Expected vertices as (cluster label, tag, genus).
    pub vertices: &'static [(&'static str, &'static str, u32)],
    /// Expected edges as (endpoint, endpoint, length numerator, length
    /// denominator); endpoints are cluster label followed by tag.
    pub edges: &'static [(&'static str, &'static str, i64, i64)],
    /// Polynomial input reproducing the picture, with `{p}` left for the prime.
    pub polynomials: Option<&'static str>,
}

impl Fixture {
    pub fn expected(&self) -> GraphShape {
        GraphShape::from_parts(
            self.vertices
                .iter()
                .map(|&(c, t, g)| (c.to_string(), t.to_string(), g)),
            self.edges
                .iter()
                .map(|&(a, b, n, d)| (a.to_string(), b.to_string(), Depth::new(n, d))),
        )
    }

    /// Polynomial JSON for the prime `p`, if the fixture has one.
    pub fn polynomials_for(&self, p: u64) -> Option<String> {
        self.polynomials.map(|t| t.replace("{p}", &p.to_string()))
    }
}

pub const FIXTURES: &[Fixture] = &[
    Fixture {
        name: "purple-twin",
        summary: "purple twin of depth 2 beside two red and two blue roots",
        picture: "(0 (2 r b) r r b b)",
        vertices: &[("R", "", 3)],
        edges: &[("R", "R", 2, 1)],
        polynomials: Some(
            r#"{"p":{p},"f1":{"lead":"1","factors":[{"z":"0","c":"p^2","n":1},{"z":"0","c":"1","n":2}]},"f2":{"lead":"1","factors":[{"z":"0","c":"-p^2","n":1},{"z":"0","c":"2","n":2}]}}"#,
        ),
    },
    Fixture {
        name: "black-twin",
        summary: "red twin of depth 3 beside a red root and three blue roots",
        picture: "(0 (3 r r) r b b b)",
        vertices: &[("R", "", 2)],
        edges: &[("R", "R", 6, 1), ("R", "R", 6, 1)],
        polynomials: Some(
            r#"{"p":{p},"f1":{"lead":"1","factors":[{"z":"0","c":"p^6","n":2},{"z":"0","c":"1","n":1}]},"f2":{"lead":"1","factors":[{"z":"0","c":"2","n":3}]}}"#,
        ),
    },
    Fixture {
        name: "three-children",
        summary: "top cluster with a purple, a black and a blue child",
        picture: "(0 (2 r r r b b b) (3 r r r r) (6 b b b))",
        vertices: &[
            ("R", "", 0),
            ("s1", "", 4),
            ("s2", "+", 1),
            ("s2", "-", 1),
            ("s3", "+", 1),
            ("s3", "-", 1),
        ],
        edges: &[
            ("R", "s1", 1, 1),
            ("R", "s1", 1, 1),
            ("R", "s2+", 3, 1),
            ("R", "s2+", 3, 1),
            ("R", "s2-", 3, 1),
            ("R", "s2-", 3, 1),
            ("R", "s3+", 3, 1),
            ("R", "s3-", 3, 1),
        ],
        polynomials: None,
    },
    Fixture {
        name: "nested",
        summary: "blue four-root cluster nested in a red cluster",
        picture: "(0 (4 (1 b b b b) r r r) r r r b b b)",
        vertices: &[
            ("R", "", 5),
            ("s1", "+", 1),
            ("s1", "-", 1),
            ("s2", "+", 1),
            ("s2", "-", 1),
        ],
        edges: &[
            ("R", "s1+", 2, 1),
            ("R", "s1-", 2, 1),
            ("s1+", "s2+", 1, 1),
            ("s1+", "s2-", 1, 1),
            ("s1-", "s2+", 1, 1),
            ("s1-", "s2-", 1, 1),
        ],
        polynomials: Some(
            r#"{"p":{p},"f1":{"lead":"1","factors":[{"z":"0","c":"p^12","n":3},{"z":"0","c":"2","n":3}]},"f2":{"lead":"1","factors":[{"z":"0","c":"p^20","n":4},{"z":"0","c":"1","n":3}]}}"#,
        ),
    },
    Fixture {
        name: "k33",
        summary: "übereven top with a purple twin and a cluster of two black twins",
        picture: "(0 (2 (5 r r) (4 b b)) (3 r b))",
        vertices: &[
            ("R", "+", 0),
            ("R", "-", 0),
            ("s1", "++", 0),
            ("s1", "+-", 0),
            ("s1", "-+", 0),
            ("s1", "--", 0),
        ],
        edges: &[
            ("R+", "R-", 3, 1),
            ("R+", "s1++", 2, 1),
            ("R+", "s1--", 2, 1),
            ("R-", "s1+-", 2, 1),
            ("R-", "s1-+", 2, 1),
            ("s1++", "s1+-", 10, 1),
            ("s1--", "s1-+", 10, 1),
            ("s1++", "s1-+", 8, 1),
            ("s1--", "s1+-", 8, 1),
        ],
        polynomials: Some(
            r#"{"p":{p},"f1":{"lead":"1","factors":[{"z":"-p^2","c":"p^14","n":2},{"z":"2","c":"-p^3","n":1}]},"f2":{"lead":"1","factors":[{"z":"p^2","c":"p^12","n":2},{"z":"2","c":"p^3","n":1}]}}"#,
        ),
    },
];

pub fn fixture(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}
