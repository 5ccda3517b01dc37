//! The ring of integers of an unramified extension of Q_p, truncated
//! modulo p^N and presented as (Z/p^N)[x]/(F) for a monic lift F of the
//! residue field's modulus.

use num::{BigInt, BigRational, Integer, One, Zero};

use super::field::{Fe, Fq};

/// An element of Z_q / p^N in the basis 1, x, ..., x^{k-1}.
pub type Elem = Vec<BigInt>;

#[derive(Clone, Debug)]
pub struct Zq {
    p: BigInt,
    precision: u32,
    pn: BigInt,
    field: Fq,
    modulus: Vec<BigInt>,
    /// The Frobenius image of x.
    frob_x: Elem,
}

pub fn valuation_int(a: &BigInt, p: &BigInt) -> Option<u32> {
    if a.is_zero() {
        return None;
    }
    let mut v = 0;
    let mut a = a.clone();
    while (&a % p).is_zero() {
        a /= p;
        v += 1;
    }
    Some(v)
}

impl Zq {
    pub fn new(field: &Fq, precision: u32) -> Self {
        let p = BigInt::from(field.p());
        let pn = p.pow(precision);
        let modulus = field.modulus().iter().map(|&c| BigInt::from(c)).collect();
        let mut ring = Zq {
            p,
            precision,
            pn,
            field: field.clone(),
            modulus,
            frob_x: Vec::new(),
        };
        ring.frob_x = ring.lift_frobenius_of_x();
        ring
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    fn k(&self) -> usize {
        self.field.degree()
    }

    fn reduce_coeff(&self, a: BigInt) -> BigInt {
        a.mod_floor(&self.pn)
    }

    pub fn zero(&self) -> Elem {
        vec![BigInt::zero(); self.k()]
    }

    pub fn from_int(&self, a: &BigInt) -> Elem {
        let mut e = self.zero();
        e[0] = self.reduce_coeff(a.clone());
        e
    }

    /// A rational with denominator prime to p.
    pub fn from_rational(&self, a: &BigRational) -> Option<Elem> {
        let d = a.denom();
        if (d % &self.p).is_zero() {
            return None;
        }
        let inv = d.modinv(&self.pn)?;
        Some(self.from_int(&(a.numer() * inv)))
    }

    pub fn from_residue(&self, a: &Fe) -> Elem {
        a.iter().map(|&c| BigInt::from(c)).collect()
    }

    pub fn residue(&self, a: &Elem) -> Fe {
        let p = &self.p;
        a.iter()
            .map(|c| {
                let r = c.mod_floor(p);
                r.to_u64_digits().1.first().copied().unwrap_or(0)
            })
            .collect()
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        a.iter()
            .zip(b)
            .map(|(x, y)| self.reduce_coeff(x + y))
            .collect()
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        a.iter()
            .zip(b)
            .map(|(x, y)| self.reduce_coeff(x - y))
            .collect()
    }

    pub fn scale(&self, a: &Elem, s: &BigInt) -> Elem {
        a.iter().map(|x| self.reduce_coeff(x * s)).collect()
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let k = self.k();
        let mut prod = vec![BigInt::zero(); 2 * k];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        for d in (k..2 * k).rev() {
            let c = std::mem::take(&mut prod[d]);
            if c.is_zero() {
                continue;
            }
            for i in 0..k {
                prod[d - k + i] -= &c * &self.modulus[i];
            }
        }
        prod.truncate(k);
        prod.into_iter().map(|c| self.reduce_coeff(c)).collect()
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut r = self.from_int(&BigInt::one());
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    /// Valuation, or `None` when the element vanishes modulo p^N.
    pub fn valuation(&self, a: &Elem) -> Option<u32> {
        a.iter().filter_map(|c| valuation_int(c, &self.p)).min()
    }

    /// Divides by p^v where v is the valuation, returning (v, unit). The
    /// unit is only meaningful modulo p^{N-v}.
    pub fn unit_part(&self, a: &Elem) -> Option<(u32, Elem)> {
        let v = self.valuation(a)?;
        let pv = self.p.pow(v);
        Some((v, a.iter().map(|c| c / &pv).collect()))
    }

    /// Inverse of a unit, by Newton iteration from the residue inverse.
    pub fn inv(&self, a: &Elem) -> Option<Elem> {
        let r = self.field.inv(&self.residue(a))?;
        let mut y = self.from_residue(&r);
        let two = self.from_int(&BigInt::from(2));
        for _ in 0..=(self.precision.max(1)).ilog2() + 1 {
            y = self.mul(&y, &self.sub(&two, &self.mul(a, &y)));
        }
        Some(y)
    }

    fn eval_modulus(&self, y: &Elem) -> (Elem, Elem) {
        // F(y) and F'(y) by Horner.
        let k = self.k();
        let mut f = self.zero();
        let mut df = self.zero();
        for i in (0..=k).rev() {
            df = self.add(&self.mul(&df, y), &f);
            f = self.add(&self.mul(&f, y), &self.from_int(&self.modulus[i]));
        }
        (f, df)
    }

    /// The root of F congruent to x^p, which is the Frobenius image of x.
    fn lift_frobenius_of_x(&self) -> Elem {
        let k = self.k();
        if k == 1 {
            return self.zero();
        }
        let mut x = self.zero();
        x[1] = BigInt::one();
        let mut y = self.from_residue(&self.field.frobenius(&self.residue(&x)));
        for _ in 0..=(self.precision.max(1)).ilog2() + 1 {
            let (f, df) = self.eval_modulus(&y);
            let inv = self.inv(&df).expect("F is separable modulo p");
            y = self.sub(&y, &self.mul(&f, &inv));
        }
        y
    }

    /// The arithmetic Frobenius, acting on coordinates through x ↦ σ(x).
    pub fn frobenius(&self, a: &Elem) -> Elem {
        if self.k() == 1 {
            return a.clone();
        }
        let mut out = self.zero();
        let mut power = self.from_int(&BigInt::one());
        for c in a {
            out = self.add(&out, &self.scale(&power, c));
            power = self.mul(&power, &self.frob_x);
        }
        out
    }
}
