//! Polynomial input: root descriptors, p-adic root finding, the chromatic
//! cluster picture of f₁f₂, and the invariants ν, ω and ε.
//!
//! Each factor is given as a descriptor `(z, c, n)` standing for the
//! polynomial `(x - z)^n - c` with `c = u·p^m`, `u` a unit and `n | m`.
//! Its roots `z + p^{m/n}·w` with `w^n = u` are found over the unramified
//! extension in which every `x^n - ū` splits, lifted by Newton iteration in
//! `(Z/p^N)[x]/(F)`.

pub mod field;
pub mod padic;

use std::collections::BTreeMap;

use num::{BigInt, BigRational, BigUint, One, ToPrimitive, Zero};
use serde_json::Value;

use crate::classify::Classification;
use crate::error::{Error, Result};
use crate::frobenius::{ClusterMap, EpsilonTable, FrobeniusAction};
use crate::picture::{ChromaticClusterPicture, ClusterId, Colour, Depth, Index, RawNode};

use field::{legendre_u64, Fe, Fq};
use padic::{valuation_int, Elem, Zq};

/// Precision is doubled until roots separate, up to this many digits.
pub const MAX_PRECISION: u32 = 1024;

/// A nonzero p-adic number written as `u·p^m` with `u` a rational unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicNumber {
    pub unit: BigRational,
    pub exponent: i64,
}

impl PadicNumber {
    pub fn value(&self, p: u64) -> BigRational {
        let pp = BigRational::from_integer(BigInt::from(p));
        let mut v = self.unit.clone();
        for _ in 0..self.exponent.abs() {
            if self.exponent > 0 {
                v *= &pp;
            } else {
                v /= &pp;
            }
        }
        v
    }

    fn normalized(unit: BigRational, exponent: i64, p: u64) -> Result<Self> {
        if unit.is_zero() {
            return Err(Error::PolynomialInput("zero is not allowed here".into()));
        }
        let pb = BigInt::from(p);
        let vn = valuation_int(unit.numer(), &pb).unwrap_or(0) as i64;
        let vd = valuation_int(unit.denom(), &pb).unwrap_or(0) as i64;
        let shift = vn - vd;
        let mut num = unit.numer().clone();
        let mut den = unit.denom().clone();
        for _ in 0..vn {
            num /= &pb;
        }
        for _ in 0..vd {
            den /= &pb;
        }
        Ok(PadicNumber {
            unit: BigRational::new(num, den),
            exponent: exponent + shift,
        })
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::PolynomialInput(format!("cannot parse number '{s}'"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Parses `0`, a rational `a/b`, `p`, `p^m`, `-p^m` or `a/b*p^m`. Returns
/// `None` for zero.
pub fn parse_padic(text: &str, p: u64) -> Result<Option<PadicNumber>> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::PolynomialInput(format!("cannot parse number '{text}'"));
    if s.is_empty() {
        return Err(bad());
    }
    let (unit_text, power_text) = match s.find('p') {
        None => (s.as_str(), None),
        Some(i) => {
            let head = s[..i].strip_suffix('*').unwrap_or(&s[..i]);
            (head, Some(&s[i + 1..]))
        }
    };
    let unit = match unit_text {
        "" => BigRational::one(),
        "-" => -BigRational::one(),
        t => parse_rational(t)?,
    };
    let exponent = match power_text {
        None => 0,
        Some("") => 1,
        Some(t) => t
            .strip_prefix('^')
            .ok_or_else(bad)?
            .parse::<i64>()
            .map_err(|_| bad())?,
    };
    if unit.is_zero() {
        return Ok(None);
    }
    PadicNumber::normalized(unit, exponent, p).map(Some)
}

fn json_number(v: &Value, what: &str, p: u64) -> Result<Option<PadicNumber>> {
    match v {
        Value::String(s) => parse_padic(s, p),
        Value::Number(n) => parse_padic(&n.to_string(), p),
        _ => Err(Error::PolynomialInput(format!(
            "{what} must be a string or number"
        ))),
    }
}

/// One factor `(x - z)^n - c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDescriptor {
    pub z: BigRational,
    pub c: PadicNumber,
    pub n: u32,
}

/// One of f₁, f₂: a leading coefficient and its factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialSpec {
    pub lead: PadicNumber,
    pub factors: Vec<RootDescriptor>,
}

/// The input pair (f₁, f₂) over Q_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialInput {
    pub p: u64,
    pub f1: PolynomialSpec,
    pub f2: PolynomialSpec,
}

impl PolynomialInput {
    /// `{"p":7,"f1":{"lead":"1","factors":[{"z":"0","c":"p^2","n":1}]},"f2":{...}}`
    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value =
            serde_json::from_str(text).map_err(|e| Error::PolynomialInput(e.to_string()))?;
        let p = v
            .get("p")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::PolynomialInput("missing prime 'p'".into()))?;
        Self::from_value(&v, p)
    }

    /// Like [`from_json`](Self::from_json) with the prime supplied (or
    /// overridden) by the caller.
    pub fn from_json_with_prime(text: &str, p: u64) -> Result<Self> {
        let v: Value =
            serde_json::from_str(text).map_err(|e| Error::PolynomialInput(e.to_string()))?;
        Self::from_value(&v, p)
    }

    fn from_value(v: &Value, p: u64) -> Result<Self> {
        if p == 2 || !field::is_prime(p) {
            return Err(Error::Unsupported(format!("p = {p} is not an odd prime")));
        }
        let side = |key: &str| -> Result<PolynomialSpec> {
            let s = v
                .get(key)
                .ok_or_else(|| Error::PolynomialInput(format!("missing '{key}'")))?;
            let lead = match s.get("lead") {
                None => Some(PadicNumber {
                    unit: BigRational::one(),
                    exponent: 0,
                }),
                Some(l) => json_number(l, "lead", p)?,
            }
            .ok_or_else(|| Error::PolynomialInput(format!("{key}: zero leading coefficient")))?;
            let factors = s
                .get("factors")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::PolynomialInput(format!("{key}: missing 'factors'")))?;
            let factors = factors
                .iter()
                .enumerate()
                .map(|(j, f)| {
                    let name = format!("{key}[{j}]");
                    let z = match f.get("z") {
                        None => BigRational::zero(),
                        Some(z) => json_number(z, "z", p)?
                            .map(|z| z.value(p))
                            .unwrap_or_else(BigRational::zero),
                    };
                    let c = json_number(
                        f.get("c").ok_or_else(|| {
                            Error::PolynomialInput(format!("{name}: missing 'c'"))
                        })?,
                        "c",
                        p,
                    )?
                    .ok_or_else(|| Error::PolynomialInput(format!("{name}: c must be nonzero")))?;
                    let n = match f.get("n") {
                        None => 1,
                        Some(n) => n.as_u64().filter(|&n| n >= 1).ok_or_else(|| {
                            Error::PolynomialInput(format!("{name}: n must be a positive integer"))
                        })? as u32,
                    };
                    Ok(RootDescriptor { z, c, n })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(PolynomialSpec { lead, factors })
        };
        let input = PolynomialInput {
            p,
            f1: side("f1")?,
            f2: side("f2")?,
        };
        input.validate()?;
        Ok(input)
    }

    fn descriptors(&self) -> impl Iterator<Item = (String, Colour, &RootDescriptor)> {
        let red = self
            .f1
            .factors
            .iter()
            .enumerate()
            .map(|(j, d)| (format!("f1[{j}]"), Colour::Red, d));
        let blue = self
            .f2
            .factors
            .iter()
            .enumerate()
            .map(|(j, d)| (format!("f2[{j}]"), Colour::Blue, d));
        red.chain(blue)
    }

    fn validate(&self) -> Result<()> {
        let p = self.p;
        let pb = BigInt::from(p);
        if self.f1.factors.is_empty() || self.f2.factors.is_empty() {
            return Err(Error::PolynomialInput(
                "f1 and f2 need at least one factor each".into(),
            ));
        }
        for (name, _, d) in self.descriptors() {
            if u64::from(d.n) % p == 0 {
                return Err(Error::Unsupported(format!(
                    "{name}: p divides n = {} (wild ramification)",
                    d.n
                )));
            }
            if valuation_int(d.z.denom(), &pb).is_some_and(|v| v > 0) {
                return Err(Error::Unsupported(format!("{name}: z is not p-integral")));
            }
            if d.c.exponent < 0 {
                return Err(Error::Unsupported(format!("{name}: c is not p-integral")));
            }
            if d.c.exponent % i64::from(d.n) != 0 {
                return Err(Error::Unsupported(format!(
                    "{name}: n = {} does not divide v_p(c) = {} (ramified roots)",
                    d.n, d.c.exponent
                )));
            }
        }
        let all: Vec<_> = self.descriptors().collect();
        for (a, (na, _, da)) in all.iter().enumerate() {
            for (nb, _, db) in &all[a + 1..] {
                if shares_root(da, db, p) {
                    return Err(Error::SharedRoot {
                        first: na.clone(),
                        second: nb.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn total_degree(&self) -> (usize, usize) {
        let deg = |s: &PolynomialSpec| s.factors.iter().map(|d| d.n as usize).sum();
        (deg(&self.f1), deg(&self.f2))
    }
}

type QPoly = Vec<BigRational>;

fn qpoly_trim(mut a: QPoly) -> QPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn qpoly_rem(a: &QPoly, m: &QPoly) -> QPoly {
    let mut r = qpoly_trim(a.clone());
    let dm = m.len() - 1;
    while r.len() > dm {
        let d = r.len() - 1;
        let c = &r[d] / &m[dm];
        for (i, mc) in m.iter().enumerate() {
            let t = &c * mc;
            r[d - dm + i] -= t;
        }
        r = qpoly_trim(r);
    }
    r
}

/// `(x - z)^n - c` over Q.
fn descriptor_poly(d: &RootDescriptor, p: u64) -> QPoly {
    let n = d.n as usize;
    let mut out = vec![BigRational::zero(); n + 1];
    let mut binom = BigInt::one();
    for (k, slot) in out.iter_mut().enumerate() {
        // coefficient of x^k in (x - z)^n is C(n,k)·(-z)^{n-k}
        let mut term = BigRational::from_integer(binom.clone());
        for _ in 0..n - k {
            term *= -&d.z;
        }
        *slot = term;
        binom = binom * BigInt::from(n - k) / BigInt::from(k + 1);
    }
    out[0] -= d.c.value(p);
    out
}

/// Exact test for a common root, by a gcd over Q.
fn shares_root(a: &RootDescriptor, b: &RootDescriptor, p: u64) -> bool {
    let (mut x, mut y) = (descriptor_poly(a, p), descriptor_poly(b, p));
    while !y.is_empty() {
        let r = qpoly_rem(&x, &y);
        x = y;
        y = r;
    }
    x.len() > 1
}

/// Euler's criterion for a rational p-adic unit.
pub fn legendre(u: &BigRational, p: u64) -> Result<i8> {
    let pb = BigInt::from(p);
    let num = u.numer().mod_floor_big(&pb);
    let den = u.denom().mod_floor_big(&pb);
    if num.is_zero() || den.is_zero() {
        return Err(Error::NotUnit(u.to_string()));
    }
    let n = num.to_u64().expect("reduced mod p");
    let d = den.to_u64().expect("reduced mod p");
    Ok(legendre_u64(n, p) * legendre_u64(d, p))
}

trait ModFloor {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt;
}

impl ModFloor for BigInt {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt {
        num::Integer::mod_floor(self, m)
    }
}

/// A lifted root.
#[derive(Clone, Debug)]
pub struct Root {
    pub label: String,
    pub colour: Colour,
    pub descriptor: usize,
    pub residue: Fe,
    pub value: Elem,
}

/// Everything computed from a polynomial input: the roots, their cluster
/// picture and the Frobenius permutation of the roots.
#[derive(Clone, Debug)]
pub struct ArithmeticContext {
    input: PolynomialInput,
    field: Fq,
    ring: Zq,
    roots: Vec<Root>,
    valuations: Vec<Vec<u32>>,
    certified: bool,
    picture: ChromaticClusterPicture,
    leaf_of_root: Vec<ClusterId>,
    root_of_leaf: BTreeMap<usize, usize>,
    frobenius: Vec<usize>,
}

fn lift_roots(input: &PolynomialInput, field: &Fq, ring: &Zq) -> Vec<Root> {
    let p = input.p;
    let pb = BigInt::from(p);
    let mut out = Vec::new();
    for (j, (name, colour, d)) in input.descriptors().enumerate() {
        let n = d.n as usize;
        let u = ring.from_rational(&d.c.unit).expect("unit");
        let ubar = ring.residue(&u);
        let mut h = vec![field.zero(); n + 1];
        h[0] = field.neg(&ubar);
        h[n] = field.one();
        let z = ring.from_rational(&d.z).expect("p-integral");
        let shift = pb.pow((d.c.exponent / i64::from(d.n)) as u32);
        let n_elem = ring.from_int(&BigInt::from(d.n));
        for (k, w0) in field.roots(&h).into_iter().enumerate() {
            let mut w = ring.from_residue(&w0);
            for _ in 0..=ring.precision().ilog2() + 1 {
                let f = ring.sub(&ring.pow(&w, n as u64), &u);
                let df = ring.mul(&n_elem, &ring.pow(&w, n as u64 - 1));
                let inv = ring.inv(&df).expect("separable reduction");
                w = ring.sub(&w, &ring.mul(&f, &inv));
            }
            out.push(Root {
                label: format!("{name}#{k}"),
                colour,
                descriptor: j,
                residue: w0,
                value: ring.add(&z, &ring.scale(&w, &shift)),
            });
        }
    }
    out
}

fn valuation_matrix(
    ring: &Zq,
    roots: &[Root],
) -> std::result::Result<Vec<Vec<u32>>, (usize, usize)> {
    let n = roots.len();
    let mut m = vec![vec![u32::MAX; n]; n];
    for a in 0..n {
        for b in a + 1..n {
            let v = ring
                .valuation(&ring.sub(&roots[a].value, &roots[b].value))
                .ok_or((a, b))?;
            m[a][b] = v;
            m[b][a] = v;
        }
    }
    Ok(m)
}

fn cluster_tree(
    set: &[usize],
    vals: &[Vec<u32>],
    roots: &[Root],
    parent_depth: i64,
    order: &mut Vec<usize>,
) -> RawNode {
    if set.len() == 1 {
        order.push(set[0]);
        return RawNode::Leaf(roots[set[0]].colour);
    }
    let d = set
        .iter()
        .flat_map(|&a| {
            set.iter()
                .filter(move |&&b| b != a)
                .map(move |&b| vals[a][b])
        })
        .min()
        .expect("two roots") as i64;
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &r in set {
        match classes.iter_mut().find(|c| vals[c[0]][r] > d as u32) {
            Some(c) => c.push(r),
            None => classes.push(vec![r]),
        }
    }
    let children = classes
        .iter()
        .map(|c| cluster_tree(c, vals, roots, d, order))
        .collect();
    RawNode::Cluster {
        rel_depth: Depth::from_integer(d - parent_depth),
        children,
    }
}

/// Roots, picture and Frobenius data for a polynomial input.
pub fn build_picture(input: &PolynomialInput) -> Result<ArithmeticContext> {
    let p = input.p;
    let mut k = 1usize;
    for (_, _, d) in input.descriptors() {
        let u = BigRational::from_integer(BigInt::from(p));
        let ubar = (d.c.unit.numer() * d.c.unit.denom().modinv(u.numer()).expect("unit"))
            .mod_floor_big(u.numer())
            .to_u64()
            .expect("reduced mod p");
        k = num::integer::lcm(k, Fq::splitting_degree(p, d.n as usize, ubar));
    }
    let field = Fq::extension(p, k);
    let max_m = input
        .descriptors()
        .map(|(_, _, d)| (d.c.exponent / i64::from(d.n)).unsigned_abs() as u32)
        .max()
        .unwrap_or(0);
    let mut precision = 2 * max_m + 4;
    let (ring, roots, valuations) = loop {
        let ring = Zq::new(&field, precision);
        let roots = lift_roots(input, &field, &ring);
        match valuation_matrix(&ring, &roots) {
            Ok(m) => break (ring, roots, m),
            Err((a, b)) if precision >= MAX_PRECISION => {
                return Err(Error::Indistinguishable {
                    first: roots[a].label.clone(),
                    second: roots[b].label.clone(),
                    precision,
                })
            }
            Err(_) => precision *= 2,
        }
    };
    // Certificate: the same valuations at twice the precision.
    let fine = Zq::new(&field, 2 * precision);
    let certified = valuation_matrix(&fine, &lift_roots(input, &field, &fine))
        .map(|m| m == valuations)
        .unwrap_or(false);

    let all: Vec<usize> = (0..roots.len()).collect();
    let mut order = Vec::new();
    let RawNode::Cluster {
        rel_depth,
        children,
    } = cluster_tree(&all, &valuations, &roots, 0, &mut order)
    else {
        return Err(Error::PolynomialInput("need at least two roots".into()));
    };
    let (picture, handles) = ChromaticClusterPicture::from_raw_tracked(rel_depth, children)?;
    let picture = picture.with_prime_hint(Some(p));
    let mut leaf_of_root = vec![picture.root(); roots.len()];
    for (&r, &h) in order.iter().zip(&handles) {
        leaf_of_root[r] = h;
    }
    let root_of_leaf = leaf_of_root
        .iter()
        .enumerate()
        .map(|(r, h)| (h.index(), r))
        .collect();
    let frobenius = roots
        .iter()
        .map(|r| {
            let image = field.frobenius(&r.residue);
            roots
                .iter()
                .position(|s| s.descriptor == r.descriptor && s.residue == image)
                .expect("Frobenius permutes the roots of a descriptor")
        })
        .collect();
    Ok(ArithmeticContext {
        input: input.clone(),
        field,
        ring,
        roots,
        valuations,
        certified,
        picture,
        leaf_of_root,
        root_of_leaf,
        frobenius,
    })
}

impl ArithmeticContext {
    pub fn p(&self) -> u64 {
        self.input.p
    }

    pub fn input(&self) -> &PolynomialInput {
        &self.input
    }

    /// Degree of the residue field extension used for the roots.
    pub fn residue_degree(&self) -> usize {
        self.field.degree()
    }

    pub fn precision(&self) -> u32 {
        self.ring.precision()
    }

    /// Whether the root valuations agreed at twice the working precision.
    pub fn certified(&self) -> bool {
        self.certified
    }

    pub fn picture(&self) -> &ChromaticClusterPicture {
        &self.picture
    }

    pub fn classification(&self) -> Classification<'_> {
        let (d1, d2) = self.input.total_degree();
        Classification::with_degrees(&self.picture, d1, d2)
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn leaf(&self, root: usize) -> ClusterId {
        self.leaf_of_root[root]
    }

    pub fn root_at(&self, leaf: ClusterId) -> Option<usize> {
        self.root_of_leaf.get(&leaf.index()).copied()
    }

    /// v_p(r_a - r_b).
    pub fn valuation(&self, a: usize, b: usize) -> Option<u32> {
        (a != b).then(|| self.valuations[a][b])
    }

    /// Frobenius image of each root.
    pub fn frobenius_roots(&self) -> &[usize] {
        &self.frobenius
    }

    /// Roots below `c`, in input order.
    pub fn roots_in(&self, c: ClusterId) -> Vec<usize> {
        (0..self.roots.len())
            .filter(|&r| self.picture.contains(c, self.leaf_of_root[r]))
            .collect()
    }

    /// Centre of the disc of `c`: its first root in input order.
    pub fn centre(&self, c: ClusterId) -> usize {
        self.roots_in(c)[0]
    }

    fn in_index(&self, r: usize, i: Index) -> bool {
        i.keeps(self.roots[r].colour)
    }

    fn lead(&self, i: Index) -> (i64, BigRational) {
        let (a, b) = (&self.input.f1.lead, &self.input.f2.lead);
        match i {
            Index::One => (a.exponent, a.unit.clone()),
            Index::Two => (b.exponent, b.unit.clone()),
            Index::H => (a.exponent + b.exponent, &a.unit * &b.unit),
        }
    }

    fn cluster_depth(&self, c: ClusterId) -> Result<i64> {
        let d = self
            .picture
            .depth(c)
            .ok_or_else(|| Error::SingletonDepth(self.picture.label(c).to_string()))?;
        Ok(d.to_integer())
    }

    /// ν_s(f_i) = v(c_i) + Σ_{r ∈ R_i} min(d_s, v(z_s - r)).
    pub fn nu(&self, c: ClusterId, i: Index) -> Result<i64> {
        let d = self.cluster_depth(c)?;
        let z = self.centre(c);
        let (v_lead, _) = self.lead(i);
        let sum: i64 = (0..self.roots.len())
            .filter(|&r| self.in_index(r, i))
            .map(|r| match self.valuation(z, r) {
                None => d,
                Some(v) => d.min(i64::from(v)),
            })
            .sum();
        Ok(v_lead + sum)
    }

    /// ν_s(f_i) mod 2.
    pub fn omega(&self, c: ClusterId, i: Index) -> Result<u8> {
        Ok(self.nu(c, i)?.rem_euclid(2) as u8)
    }

    /// θ_s² = c_i Π_{r ∈ R_i \ s} (z_s - r), as its valuation and the
    /// residue of its unit part.
    pub fn theta_squared(&self, c: ClusterId, i: Index) -> Result<(i64, Fe)> {
        let z = self.centre(c);
        let inside = self.roots_in(c);
        let (mut v, lead) = self.lead(i);
        let mut unit = self
            .ring
            .from_rational(&lead)
            .ok_or_else(|| Error::NotUnit(lead.to_string()))?;
        for r in (0..self.roots.len()).filter(|&r| self.in_index(r, i) && !inside.contains(&r)) {
            let diff = self.ring.sub(&self.roots[z].value, &self.roots[r].value);
            let (w, u) = self.ring.unit_part(&diff).expect("distinct roots");
            v += i64::from(w);
            unit = self.ring.mul(&unit, &u);
        }
        Ok((v, self.ring.residue(&unit)))
    }

    /// Frobenius permutation of the clusters.
    pub fn cluster_map(&self) -> Result<ClusterMap> {
        ClusterMap::from_leaf_map(&self.picture, |leaf| {
            let r = self.root_of_leaf[&leaf.index()];
            self.leaf_of_root[self.frobenius[r]]
        })
    }

    fn orbit(&self, map: &ClusterMap, c: ClusterId) -> Vec<ClusterId> {
        let mut out = vec![c];
        let mut next = map.apply(&self.picture, c);
        while next != c {
            out.push(next);
            next = map.apply(&self.picture, next);
        }
        out
    }

    /// ε_s(Frob) in index i, or `None` when θ_s² has odd valuation.
    ///
    /// Along a Frobenius orbit s, φs, ..., φ^{L-1}s of stars the square
    /// roots are normalised by θ_{φ^k s} = Frob^k(θ_s) from the member with
    /// the smallest arena index, so all values are 1 except at the last
    /// member, where ε is the square class of θ_s² in the field with p^L
    /// elements.
    pub fn epsilon(&self, cls: &Classification<'_>, c: ClusterId, i: Index) -> Result<Option<i8>> {
        let pic = &self.picture;
        let derived = pic.derive(i);
        if pic.is_leaf(c) || !(derived.is_even(c) || derived.is_cotwin(c)) {
            return Err(Error::EpsilonPrecondition {
                cluster: pic.label(c).to_string(),
                index: i,
            });
        }
        let t = cls.star(c, i);
        let map = self.cluster_map()?;
        let mut orbit = self.orbit(&map, t);
        let start = orbit
            .iter()
            .enumerate()
            .min_by_key(|(_, c)| c.index())
            .map(|(k, _)| k)
            .expect("nonempty orbit");
        orbit.rotate_left(start);
        let rep = orbit[0];
        let (v, residue) = self.theta_squared(rep, i)?;
        if v.rem_euclid(2) == 1 {
            return Ok(None);
        }
        let l = orbit.len();
        if orbit[l - 1] != t {
            return Ok(Some(1));
        }
        if !self.field.in_subfield(&residue, l) {
            return Err(Error::Input(format!(
                "theta^2 of {} is not defined over the field of its orbit",
                pic.label(rep)
            )));
        }
        Ok(Some(if self.field.is_square_in(&residue, l) {
            1
        } else {
            -1
        }))
    }

    /// ε for every proper cluster and index where it is defined.
    pub fn epsilon_table(&self, cls: &Classification<'_>) -> Result<EpsilonTable> {
        let mut table = EpsilonTable::new();
        for c in self.picture.proper_clusters() {
            for i in Index::ALL {
                match self.epsilon(cls, c, i) {
                    Ok(v) => table.set(c, i, v),
                    Err(Error::EpsilonPrecondition { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(table)
    }

    /// The Frobenius element's cluster permutation and ε values.
    pub fn action(&self, cls: &Classification<'_>) -> Result<FrobeniusAction> {
        Ok(FrobeniusAction {
            perm: self.cluster_map()?,
            eps: self.epsilon_table(cls)?,
        })
    }

    /// The residue field order as a big integer.
    pub fn residue_field_order(&self) -> BigUint {
        self.field.order()
    }
}
