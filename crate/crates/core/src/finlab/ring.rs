//! Small finite commutative rings stored as operation tables: the fields
//! `F_q` and the residue rings `Z/m`.

use crate::error::{Error, Result};

/// A finite commutative ring with elements `0..order`, where `0` and `1` are
/// the additive and multiplicative identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRing {
    order: usize,
    characteristic: u32,
    /// `q` for a field `F_q`; `None` for residue rings that are not fields.
    field_order: Option<u32>,
    label: String,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<Option<u8>>,
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Splits `q = p^f`; `None` when `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut f = 0;
    let mut m = q;
    while m.is_multiple_of(p) {
        m /= p;
        f += 1;
    }
    (m == 1 && is_prime(p)).then_some((p, f))
}

impl FiniteRing {
    /// The field with `q` elements. Elements are polynomials over `F_p` in a
    /// root of a fixed irreducible polynomial, encoded by their base-`p` digits.
    pub fn field(q: u32) -> Result<Self> {
        let (p, f) = prime_power(q).ok_or_else(|| Error::Precondition(format!("{q} is not a prime power")))?;
        if q > 64 {
            return Err(Error::Guard(format!("field order {q} exceeds 64")));
        }
        let modulus = irreducible_poly(p, f);
        let n = q as usize;
        let digits = |mut a: usize| -> Vec<u32> {
            (0..f)
                .map(|_| {
                    let d = (a % p as usize) as u32;
                    a /= p as usize;
                    d
                })
                .collect()
        };
        let encode = |v: &[u32]| -> usize { v.iter().rev().fold(0usize, |acc, &d| acc * p as usize + d as usize) };
        let mut add = vec![0u8; n * n];
        let mut mul = vec![0u8; n * n];
        for a in 0..n {
            let da = digits(a);
            for b in 0..n {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * n + b] = encode(&s) as u8;
                // schoolbook product then reduction by the monic modulus
                let mut prod = vec![0u32; 2 * f as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for i in (f as usize..prod.len()).rev() {
                    let c = prod[i];
                    if c != 0 {
                        for (j, m) in modulus.iter().enumerate().take(f as usize) {
                            let k = i - f as usize + j;
                            prod[k] = (prod[k] + (p - c) * m % p) % p;
                        }
                        prod[i] = 0;
                    }
                }
                mul[a * n + b] = encode(&prod[..f as usize]) as u8;
            }
        }
        Self::from_tables(n, p, Some(q), format!("F{q}"), add, mul)
    }

    /// The residue ring `Z/m`.
    pub fn integers_mod(m: u32) -> Result<Self> {
        if !(2..=250).contains(&m) {
            return Err(Error::Guard(format!("modulus {m} outside 2..=250")));
        }
        let n = m as usize;
        let mut add = vec![0u8; n * n];
        let mut mul = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                add[a * n + b] = ((a + b) % n) as u8;
                mul[a * n + b] = ((a * b) % n) as u8;
            }
        }
        let p = (2..=m).find(|d| m.is_multiple_of(*d)).unwrap();
        let field = is_prime(m).then_some(m);
        Self::from_tables(n, p, field, format!("Z/{m}"), add, mul)
    }

    fn from_tables(n: usize, p: u32, field: Option<u32>, label: String, add: Vec<u8>, mul: Vec<u8>) -> Result<Self> {
        let neg = (0..n)
            .map(|a| (0..n).find(|&b| add[a * n + b] == 0).map(|b| b as u8))
            .collect::<Option<Vec<u8>>>()
            .ok_or_else(|| Error::Invariant("additive inverse missing".into()))?;
        let inv = (0..n)
            .map(|a| (0..n).find(|&b| mul[a * n + b] == 1).map(|b| b as u8))
            .collect();
        let ring = Self {
            order: n,
            characteristic: p,
            field_order: field,
            label,
            add,
            mul,
            neg,
            inv,
        };
        ring.check_axioms()?;
        Ok(ring)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.order;
        for a in 0..n as u8 {
            for b in 0..n as u8 {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err(Error::Invariant(format!("{} is not commutative", self.label)));
                }
                for c in 0..n as u8 {
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c))
                        || self.mul(a, self.mul(b, c)) != self.mul(self.mul(a, b), c)
                        || self.add(a, self.add(b, c)) != self.add(self.add(a, b), c)
                    {
                        return Err(Error::Invariant(format!("{} fails a ring axiom", self.label)));
                    }
                }
            }
        }
        if self.field_order.is_some() && (1..n).any(|a| self.inv[a].is_none()) {
            return Err(Error::Invariant(format!("{} has a non-invertible nonzero element", self.label)));
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }
    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }
    pub fn field_order(&self) -> Option<u32> {
        self.field_order
    }
    pub fn label(&self) -> &str {
        &self.label
    }
    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.order + b as usize]
    }
    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.order + b as usize]
    }
    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }
    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }
    pub fn inv(&self, a: u8) -> Option<u8> {
        self.inv[a as usize]
    }
    pub fn is_unit(&self, a: u8) -> bool {
        self.inv[a as usize].is_some()
    }
    pub fn units(&self) -> Vec<u8> {
        (0..self.order as u8).filter(|&a| self.is_unit(a)).collect()
    }
    pub fn pow(&self, a: u8, e: u64) -> u8 {
        let mut r = 1u8;
        for _ in 0..e {
            r = self.mul(r, a);
        }
        r
    }
    /// The image of the integer `k` (`k * 1`).
    pub fn from_int(&self, k: i64) -> u8 {
        let mut r = 0u8;
        let m = k.rem_euclid(self.characteristic as i64 * self.order as i64);
        for _ in 0..m {
            r = self.add(r, 1);
        }
        r
    }
    /// A basis of the ring as an `F_p`-module for fields, or `{1}` for `Z/m`.
    pub fn additive_generators(&self) -> Vec<u8> {
        match self.field_order {
            Some(q) if q != self.characteristic => {
                let (p, f) = prime_power(q).unwrap();
                (0..f).map(|i| p.pow(i) as u8).collect()
            }
            _ => vec![1],
        }
    }
}

/// A monic irreducible polynomial of degree `f` over `F_p`, ascending
/// coefficients including the leading 1. Irreducibility is tested by trial
/// division by all monic polynomials of degree at most `f / 2`.
pub fn irreducible_poly(p: u32, f: u32) -> Vec<u32> {
    if f == 1 {
        return vec![0, 1];
    }
    let total = (p as u64).pow(f);
    for tail in 0..total {
        let mut cand: Vec<u32> = (0..f).map(|i| ((tail / (p as u64).pow(i)) % p as u64) as u32).collect();
        cand.push(1);
        if cand[0] == 0 {
            continue;
        }
        let reducible = (1..=f / 2).any(|d| {
            (0..(p as u64).pow(d)).any(|t| {
                let mut div: Vec<u32> = (0..d).map(|i| ((t / (p as u64).pow(i)) % p as u64) as u32).collect();
                div.push(1);
                poly_rem_is_zero(&cand, &div, p)
            })
        });
        if !reducible {
            return cand;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn poly_rem_is_zero(a: &[u32], b: &[u32], p: u32) -> bool {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    for i in (db..r.len()).rev() {
        let c = r[i];
        if c != 0 {
            for j in 0..=db {
                let k = i - db + j;
                r[k] = (r[k] + (p - c) * b[j] % p) % p;
            }
        }
    }
    r[..db].iter().all(|&c| c == 0)
}
