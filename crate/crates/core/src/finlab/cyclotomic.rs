//! Exact elements of cyclotomic fields `Q(zeta_n)` with integer
//! coefficients, kept in the power basis `1, zeta, ..., zeta^(phi(n)-1)`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// Coefficients of the `n`-th cyclotomic polynomial, ascending, monic.
pub fn cyclotomic_poly(n: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Phi_d with d a proper divisor of n
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let div = cyclotomic_poly(d);
        num = exact_div(&num, &div);
    }
    let p = Arc::new(num);
    cache.lock().unwrap().insert(n, p.clone());
    p
}

fn exact_div(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0i64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db];
        q[i] = c;
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= c * bj;
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0));
    q
}

pub fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u32
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<i64>,
}

impl Cyclotomic {
    pub fn zero(n: u32) -> Self {
        Self {
            conductor: n,
            coeffs: vec![0; euler_phi(n) as usize],
        }
    }

    pub fn from_int(n: u32, k: i64) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[0] = k;
        z
    }

    /// The root of unity `zeta_n^k`.
    pub fn root(n: u32, k: i64) -> Self {
        Self::from_exponents(n, &[(k, 1)])
    }

    /// `sum m * zeta_n^k` over the given `(k, m)` pairs.
    pub fn from_exponents(n: u32, terms: &[(i64, i64)]) -> Self {
        let mut full = vec![0i64; n as usize];
        for &(k, m) in terms {
            full[k.rem_euclid(n as i64) as usize] += m;
        }
        Self::reduce(n, full)
    }

    /// Reduces a coefficient vector in powers of `zeta_n` modulo `Phi_n`.
    fn reduce(n: u32, mut v: Vec<i64>) -> Self {
        let phi = cyclotomic_poly(n);
        let deg = phi.len() - 1;
        for i in (deg..v.len()).rev() {
            let c = v[i];
            if c != 0 {
                for (j, pj) in phi.iter().enumerate() {
                    v[i - deg + j] -= c * pj;
                }
            }
        }
        v.resize(deg, 0);
        Self { conductor: n, coeffs: v }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The value as a rational integer, if it is one.
    pub fn to_integer(&self) -> Option<i64> {
        self.coeffs[1..].iter().all(|&c| c == 0).then_some(self.coeffs[0])
    }

    /// Re-expresses the element in `Q(zeta_m)`, where `n` divides `m`.
    pub fn lift(&self, m: u32) -> Self {
        assert!(m.is_multiple_of(self.conductor), "conductor {} does not divide {m}", self.conductor);
        if m == self.conductor {
            return self.clone();
        }
        let step = (m / self.conductor) as i64;
        let terms: Vec<(i64, i64)> = self.coeffs.iter().enumerate().map(|(i, &c)| (i as i64 * step, c)).collect();
        Self::from_exponents(m, &terms)
    }

    /// Complex conjugation, `zeta -> zeta^-1`.
    pub fn conj(&self) -> Self {
        let terms: Vec<(i64, i64)> = self.coeffs.iter().enumerate().map(|(i, &c)| (-(i as i64), c)).collect();
        Self::from_exponents(self.conductor, &terms)
    }

    /// Galois action `zeta -> zeta^k` for `k` coprime to the conductor.
    pub fn galois(&self, k: i64) -> Self {
        let terms: Vec<(i64, i64)> = self.coeffs.iter().enumerate().map(|(i, &c)| (i as i64 * k, c)).collect();
        Self::from_exponents(self.conductor, &terms)
    }

    pub fn scale(&self, k: i64) -> Self {
        Self {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Exact division by a nonzero integer, if every coefficient divides.
    pub fn div_int(&self, k: i64) -> Option<Self> {
        self.coeffs.iter().all(|c| c % k == 0).then(|| Self {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c / k).collect(),
        })
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.conductor == b.conductor {
            (a.clone(), b.clone())
        } else {
            let m = a.conductor.lcm(&b.conductor);
            (a.lift(m), b.lift(m))
        }
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::common(self, rhs);
        Cyclotomic {
            conductor: a.conductor,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.scale(-1)
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::common(self, rhs);
        let mut prod = vec![0i64; a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        Cyclotomic::reduce(a.conductor, prod)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(k) = self.to_integer() {
            return write!(f, "{k}");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            let coef = if mag == 1 && i > 0 { String::new() } else { format!("{mag}") };
            let term = match i {
                0 => String::new(),
                1 => format!("E({})", self.conductor),
                _ => format!("E({})^{i}", self.conductor),
            };
            let join = if !coef.is_empty() && !term.is_empty() { "*" } else { "" };
            write!(f, "{sign}{coef}{join}{term}")?;
            first = false;
        }
        Ok(())
    }
}
