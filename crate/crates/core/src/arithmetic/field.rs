//! Finite fields F_q = F_p[x]/(F) and root finding over them.

use num::BigUint;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// An element of F_q as its coordinates in the basis 1, x, ..., x^{k-1}.
pub type Fe = Vec<u64>;

/// The field F_p[x]/(F) for a monic irreducible F of degree k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fq {
    p: u64,
    /// Monic modulus, low degree first, length k + 1.
    modulus: Vec<u64>,
}

impl Fq {
    pub fn prime_field(p: u64) -> Self {
        Fq {
            p,
            modulus: vec![0, 1],
        }
    }

    /// The extension of degree `k`, defined by the first monic irreducible
    /// polynomial in lexicographic order of its coefficients.
    pub fn extension(p: u64, k: usize) -> Self {
        if k == 1 {
            return Self::prime_field(p);
        }
        let base = Self::prime_field(p);
        let mut t: u128 = 0;
        loop {
            let mut coeffs = Vec::with_capacity(k + 1);
            let mut x = t;
            for _ in 0..k {
                coeffs.push((x % p as u128) as u64);
                x /= p as u128;
            }
            coeffs.push(1);
            if coeffs[0] != 0 && base.is_irreducible(&coeffs) {
                return Fq { p, modulus: coeffs };
            }
            t += 1;
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.p).pow(self.degree() as u32)
    }

    pub fn zero(&self) -> Fe {
        vec![0; self.degree()]
    }

    pub fn one(&self) -> Fe {
        self.from_u64(1)
    }

    pub fn from_u64(&self, a: u64) -> Fe {
        let mut e = self.zero();
        e[0] = a % self.p;
        e
    }

    /// The element x (only meaningful for k ≥ 2).
    pub fn generator(&self) -> Fe {
        let mut e = self.zero();
        if self.degree() > 1 {
            e[1] = 1;
        } else {
            e[0] = 0;
        }
        e
    }

    /// The t-th element in base-p digit order.
    pub fn nth(&self, mut t: u128) -> Fe {
        let mut e = self.zero();
        for c in e.iter_mut() {
            *c = (t % self.p as u128) as u64;
            t /= self.p as u128;
        }
        e
    }

    pub fn is_zero(&self, a: &Fe) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &Fe, b: &Fe) -> Fe {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.p).collect()
    }

    pub fn sub(&self, a: &Fe, b: &Fe) -> Fe {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| (x + self.p - y) % self.p)
            .collect()
    }

    pub fn neg(&self, a: &Fe) -> Fe {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        let k = self.degree();
        let p = self.p;
        let mut prod = vec![0u64; 2 * k];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mul_mod(x, y, p)) % p;
            }
        }
        for d in (k..2 * k).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (i, &m) in self.modulus[..k].iter().enumerate() {
                let idx = d - k + i;
                prod[idx] = (prod[idx] + p - mul_mod(c, m, p)) % p;
            }
        }
        prod.truncate(k);
        prod
    }

    pub fn pow(&self, a: &Fe, e: &BigUint) -> Fe {
        let mut r = self.one();
        let bits = e.bits();
        for i in (0..bits).rev() {
            r = self.mul(&r, &r);
            if e.bit(i) {
                r = self.mul(&r, a);
            }
        }
        r
    }

    pub fn inv(&self, a: &Fe) -> Option<Fe> {
        if self.is_zero(a) {
            return None;
        }
        Some(self.pow(a, &(self.order() - 2u32)))
    }

    pub fn frobenius(&self, a: &Fe) -> Fe {
        self.pow(a, &BigUint::from(self.p))
    }

    /// Whether `a` lies in the subfield with p^l elements.
    pub fn in_subfield(&self, a: &Fe, l: usize) -> bool {
        &self.pow(a, &BigUint::from(self.p).pow(l as u32)) == a
    }

    /// Square test in the subfield with p^l elements containing `a`.
    pub fn is_square_in(&self, a: &Fe, l: usize) -> bool {
        if self.is_zero(a) {
            return true;
        }
        let e = (BigUint::from(self.p).pow(l as u32) - 1u32) / 2u32;
        self.pow(a, &e) == self.one()
    }

    /// Rabin's test for a monic polynomial over this field (used with the
    /// prime field).
    pub fn is_irreducible(&self, f: &[u64]) -> bool {
        let k = f.len() - 1;
        let ring = PolyRing { f: self };
        let f: Poly = f.iter().map(|&c| self.from_u64(c)).collect();
        let x: Poly = vec![self.zero(), self.one()];
        let p = BigUint::from(self.p);
        let frob_power = |j: usize| {
            let mut y = x.clone();
            for _ in 0..j {
                y = ring.pow_mod(&y, &p, &f);
            }
            y
        };
        if ring
            .sub(&frob_power(k), &x)
            .iter()
            .any(|c| !self.is_zero(c))
        {
            return false;
        }
        for r in prime_factors(k) {
            let h = ring.sub(&frob_power(k / r), &x);
            if ring.degree(&ring.gcd(&h, &f)) != Some(0) {
                return false;
            }
        }
        true
    }

    /// Smallest l such that x^n - u splits into linear factors over the
    /// field with p^l elements (u a nonzero element of the prime field).
    pub fn splitting_degree(p: u64, n: usize, u: u64) -> usize {
        let base = Self::prime_field(p);
        let ring = PolyRing { f: &base };
        let mut h: Poly = vec![base.zero(); n + 1];
        h[0] = base.from_u64((p - u % p) % p);
        h[n] = base.one();
        let x: Poly = vec![base.zero(), base.one()];
        let mut y = x.clone();
        let pp = BigUint::from(p);
        for l in 1.. {
            y = ring.pow_mod(&y, &pp, &h);
            let g = ring.gcd(&ring.sub(&y, &x), &h);
            if ring.degree(&g) == Some(n) {
                return l;
            }
        }
        unreachable!()
    }

    /// All roots in this field of a polynomial with coefficients in it,
    /// sorted by coordinates.
    pub fn roots(&self, h: &Poly) -> Vec<Fe> {
        let ring = PolyRing { f: self };
        let h = ring.trim(h.clone());
        if ring.degree(&h).unwrap_or(0) == 0 {
            return Vec::new();
        }
        let x: Poly = vec![self.zero(), self.one()];
        let xq = ring.pow_mod(&x, &self.order(), &h);
        let g = ring.gcd(&ring.sub(&xq, &x), &h);
        let mut out = Vec::new();
        ring.split(g, &mut out);
        out.sort();
        out
    }
}

/// Polynomial over F_q, low degree first.
pub type Poly = Vec<Fe>;

struct PolyRing<'a> {
    f: &'a Fq,
}

impl PolyRing<'_> {
    fn trim(&self, mut a: Poly) -> Poly {
        while a.last().is_some_and(|c| self.f.is_zero(c)) {
            a.pop();
        }
        a
    }

    fn degree(&self, a: &Poly) -> Option<usize> {
        let a = self.trim(a.clone());
        if a.is_empty() {
            None
        } else {
            Some(a.len() - 1)
        }
    }

    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.len().max(b.len());
        let z = self.f.zero();
        let out = (0..n)
            .map(|i| self.f.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect();
        self.trim(out)
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.f.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if self.f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = self.f.add(&out[i + j], &self.f.mul(x, y));
            }
        }
        self.trim(out)
    }

    fn divrem(&self, a: &Poly, m: &Poly) -> (Poly, Poly) {
        let m = self.trim(m.clone());
        let mut r = self.trim(a.clone());
        let dm = m.len() - 1;
        let lead_inv = self.f.inv(&m[dm]).expect("nonzero divisor");
        let mut q = vec![self.f.zero(); r.len().saturating_sub(dm).max(1)];
        while r.len() > dm {
            let d = r.len() - 1;
            let c = self.f.mul(&r[d], &lead_inv);
            for (i, mc) in m.iter().enumerate() {
                let idx = d - dm + i;
                r[idx] = self.f.sub(&r[idx], &self.f.mul(&c, mc));
            }
            q[d - dm] = c;
            r = self.trim(r);
        }
        (self.trim(q), r)
    }

    fn rem(&self, a: &Poly, m: &Poly) -> Poly {
        self.divrem(a, m).1
    }

    fn pow_mod(&self, a: &Poly, e: &BigUint, m: &Poly) -> Poly {
        let mut r = self.rem(&vec![self.f.one()], m);
        let base = self.rem(a, m);
        for i in (0..e.bits()).rev() {
            r = self.rem(&self.mul(&r, &r), m);
            if e.bit(i) {
                r = self.rem(&self.mul(&r, &base), m);
            }
        }
        r
    }

    fn monic(&self, a: Poly) -> Poly {
        let a = self.trim(a);
        match a.last() {
            None => a,
            Some(l) => {
                let inv = self.f.inv(l).expect("nonzero");
                a.iter().map(|c| self.f.mul(c, &inv)).collect()
            }
        }
    }

    fn gcd(&self, a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (self.trim(a.clone()), self.trim(b.clone()));
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(a)
    }

    /// Splits a product of distinct monic linear factors.
    fn split(&self, g: Poly, out: &mut Vec<Fe>) {
        let g = self.monic(g);
        match self.degree(&g) {
            None | Some(0) => return,
            Some(1) => {
                out.push(self.f.neg(&g[0]));
                return;
            }
            _ => {}
        }
        let e = (self.f.order() - 1u32) / 2u32;
        let one: Poly = vec![self.f.one()];
        let mut t: u128 = 0;
        loop {
            let shift: Poly = vec![self.f.nth(t), self.f.one()];
            let h = self.sub(&self.pow_mod(&shift, &e, &g), &one);
            let d = self.gcd(&h, &g);
            let dd = self.degree(&d).unwrap_or(0);
            if dd > 0 && Some(dd) < self.degree(&g) {
                let (q, _) = self.divrem(&g, &d);
                self.split(d, out);
                self.split(q, out);
                return;
            }
            t += 1;
        }
    }
}

/// Legendre symbol of an integer modulo an odd prime, by Euler's criterion;
/// 0 when p divides a.
pub fn legendre_u64(a: u64, p: u64) -> i8 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}
