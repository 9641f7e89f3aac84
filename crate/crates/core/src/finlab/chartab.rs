//! Character tables by Dixon's modular method.
//!
//! Central characters `omega(C_i) = |C_i| chi(g_i) / chi(1)` are the common
//! eigenvectors of the class-multiplication matrices. They are computed
//! over `F_l` for a prime `l = 1 mod exp(G)`, turned into character values
//! mod `l`, and lifted to exact cyclotomic values by recovering the
//! eigenvalue multiplicities of each element.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::finlab::cyclotomic::Cyclotomic;
use crate::finlab::group::{ConjugacyClasses, Mat, MatrixGroup};
use crate::finlab::modp::{char_poly, inv_mod, is_prime, nullspace, poly_eval, pow_mod, primitive_root, rref};

/// Default cap on the number of conjugacy classes.
pub const DEFAULT_CLASS_GUARD: usize = 64;

/// How many primes to try before giving up.
const PRIME_ATTEMPTS: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassInfo {
    /// Representative matrix entries, row-major.
    pub representative: Vec<u8>,
    pub size: usize,
    pub element_order: usize,
    /// Class of the inverse of the representative.
    pub inverse_class: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTable {
    pub label: String,
    pub group_order: usize,
    /// Exponent of the group; all values lie in `Q(zeta_conductor)`.
    pub conductor: u32,
    pub classes: Vec<ClassInfo>,
    /// `characters[c][j]` is the value of character `c` on class `j`.
    pub characters: Vec<Vec<Cyclotomic>>,
    /// The prime used for the modular computation.
    pub prime: u64,
}

impl CharacterTable {
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn degree(&self, c: usize) -> i64 {
        self.characters[c][0].to_integer().expect("degrees are integers")
    }

    pub fn degrees(&self) -> Vec<i64> {
        (0..self.characters.len()).map(|c| self.degree(c)).collect()
    }

    /// `sum_j |C_j| a(j) conj(b(j))`, which is `|G| <a, b>`.
    pub fn weighted_pairing(&self, a: &[Cyclotomic], b: &[Cyclotomic]) -> Cyclotomic {
        let mut acc = Cyclotomic::zero(self.conductor);
        for (j, cls) in self.classes.iter().enumerate() {
            let term = (&a[j] * &b[j].conj()).scale(cls.size as i64);
            acc = &acc + &term;
        }
        acc
    }

    /// The inner product `<a, b>` of two class functions, which must be an
    /// integer.
    pub fn inner_product(&self, a: &[Cyclotomic], b: &[Cyclotomic]) -> Result<i64> {
        let s = self.weighted_pairing(a, b);
        s.to_integer()
            .filter(|v| v % self.group_order as i64 == 0)
            .map(|v| v / self.group_order as i64)
            .ok_or_else(|| Error::Invariant(format!("inner product {s} is not a multiple of |G|")))
    }

    /// Checks row orthogonality, the degree sum, and squareness exactly.
    pub fn verify(&self) -> Result<()> {
        if self.characters.len() != self.classes.len() {
            return Err(Error::Invariant(format!(
                "{} characters for {} classes",
                self.characters.len(),
                self.classes.len()
            )));
        }
        let deg_sq: i64 = self.degrees().iter().map(|d| d * d).sum();
        if deg_sq != self.group_order as i64 {
            return Err(Error::Invariant(format!("sum of squared degrees {deg_sq} != |G| = {}", self.group_order)));
        }
        for a in 0..self.characters.len() {
            for b in a..self.characters.len() {
                let ip = self.inner_product(&self.characters[a], &self.characters[b])?;
                if ip != i64::from(a == b) {
                    return Err(Error::Invariant(format!("<chi_{a}, chi_{b}> = {ip}")));
                }
            }
        }
        Ok(())
    }

    /// Column orthogonality: `sum_chi chi(g_j) conj(chi(g_k)) = delta_jk |C_G(g_j)|`.
    pub fn verify_columns(&self) -> Result<()> {
        let k = self.classes.len();
        for j in 0..k {
            for l in j..k {
                let mut acc = Cyclotomic::zero(self.conductor);
                for chi in &self.characters {
                    acc = &acc + &(&chi[j] * &chi[l].conj());
                }
                let expect = if j == l { (self.group_order / self.classes[j].size) as i64 } else { 0 };
                if acc.to_integer() != Some(expect) {
                    return Err(Error::Invariant(format!("column pairing ({j}, {l}) = {acc}")));
                }
            }
        }
        Ok(())
    }

    /// Indices of characters sorted as stored, filtered by degree.
    pub fn characters_of_degree(&self, d: i64) -> Vec<usize> {
        (0..self.characters.len()).filter(|&c| self.degree(c) == d).collect()
    }
}

/// Options for [`character_table`].
#[derive(Debug, Clone, Copy)]
pub struct DixonOptions {
    pub exec: Exec,
    pub class_guard: usize,
    /// Skip this many admissible primes before the first attempt, which
    /// exercises the retry path in tests.
    pub skip_primes: usize,
}

impl Default for DixonOptions {
    fn default() -> Self {
        Self {
            exec: Exec::default(),
            class_guard: DEFAULT_CLASS_GUARD,
            skip_primes: 0,
        }
    }
}

/// Computes the character table of `g` with the default options.
pub fn character_table(g: &MatrixGroup) -> Result<CharacterTable> {
    character_table_with(g, &g.conjugacy_classes(), DixonOptions::default())
}

pub fn character_table_with(g: &MatrixGroup, cc: &ConjugacyClasses, opts: DixonOptions) -> Result<CharacterTable> {
    let k = cc.len();
    if k > opts.class_guard {
        return Err(Error::Guard(format!("{} has {k} classes, guard is {}", g.label, opts.class_guard)));
    }
    let order = g.order();
    let e = g.exponent(cc);
    let consts = g.class_constants(cc, opts.exec);
    let inverse_class: Vec<usize> = cc
        .classes
        .iter()
        .map(|c| g.class_index(cc, &g.inverse(g.element(c.representative))))
        .collect();
    // classes of g^l for l = 0..order(g), per class
    let power_classes: Vec<Vec<usize>> = cc
        .classes
        .iter()
        .map(|c| {
            let r = *g.element(c.representative);
            let mut x = g.alg.identity();
            (0..c.element_order)
                .map(|_| {
                    let cl = g.class_index(cc, &x);
                    x = g.mul(&x, &r);
                    cl
                })
                .collect()
        })
        .collect();
    let classes: Vec<ClassInfo> = cc
        .classes
        .iter()
        .zip(&inverse_class)
        .map(|(c, &inv)| ClassInfo {
            representative: g.element(c.representative)[..g.alg.n * g.alg.n].to_vec(),
            size: c.size,
            element_order: c.element_order,
            inverse_class: inv,
        })
        .collect();

    let bound = 2.0 * (order as f64).sqrt();
    let primes = (1u64..)
        .map(|t| 1 + t * e as u64)
        .filter(|&l| is_prime(l) && (l as f64) > bound)
        .skip(opts.skip_primes)
        .take(PRIME_ATTEMPTS);
    let mut last_err = None;
    for ell in primes {
        match dixon_attempt(order, e, &classes, &consts, &power_classes, ell) {
            Ok(mut characters) => {
                characters.sort_by(|a, b| (a[0].to_integer(), a).cmp(&(b[0].to_integer(), b)));
                let table = CharacterTable {
                    label: g.label.clone(),
                    group_order: order,
                    conductor: e as u32,
                    classes: classes.clone(),
                    characters,
                    prime: ell,
                };
                match table.verify() {
                    Ok(()) => return Ok(table),
                    Err(err) => last_err = Some(err),
                }
            }
            Err(err) => last_err = Some(err),
        }
    }
    Err(Error::CharacterTable(format!(
        "{}: no admissible prime succeeded ({})",
        g.label,
        last_err.map(|e| e.to_string()).unwrap_or_default()
    )))
}

fn dixon_attempt(
    order: usize,
    e: usize,
    classes: &[ClassInfo],
    consts: &[Vec<Vec<u64>>],
    power_classes: &[Vec<usize>],
    ell: u64,
) -> Result<Vec<Vec<Cyclotomic>>> {
    let k = classes.len();
    let omegas = common_eigenvectors(consts, ell)?;
    let z = pow_mod(primitive_root(ell), (ell - 1) / e as u64, ell);
    let sqrt_order = (order as f64).sqrt().floor() as u64 + 1;
    let mut characters = Vec::with_capacity(k);
    for omega in omegas {
        // |G| / chi(1)^2 = sum_j omega_j omega_j* / |C_j|
        let s = (0..k).fold(0u64, |acc, j| {
            let t = omega[j] * omega[classes[j].inverse_class] % ell * inv_mod(classes[j].size as u64 % ell, ell) % ell;
            (acc + t) % ell
        });
        if s == 0 {
            return Err(Error::CharacterTable(format!("degenerate norm mod {ell}")));
        }
        let d2 = (order as u64 % ell) * inv_mod(s, ell) % ell;
        let degree = (1..=sqrt_order)
            .find(|&d| d * d % ell == d2 && (order as u64).is_multiple_of(d))
            .ok_or_else(|| Error::CharacterTable(format!("no degree with square {d2} mod {ell}")))?;
        let chi_mod: Vec<u64> = (0..k)
            .map(|j| degree * omega[j] % ell * inv_mod(classes[j].size as u64 % ell, ell) % ell)
            .collect();
        let mut values = Vec::with_capacity(k);
        for j in 0..k {
            let o = classes[j].element_order as u64;
            let zo = pow_mod(z, e as u64 / o, ell);
            let inv_o = inv_mod(o % ell, ell);
            let mut terms = Vec::new();
            let mut total = 0u64;
            for kk in 0..o {
                let mut acc = 0u64;
                for l in 0..o {
                    let root = pow_mod(zo, (o - (kk * l) % o) % o, ell);
                    acc = (acc + chi_mod[power_classes[j][l as usize]] * root) % ell;
                }
                let m = acc * inv_o % ell;
                if m > degree {
                    return Err(Error::CharacterTable(format!("multiplicity {m} exceeds degree {degree} mod {ell}")));
                }
                total += m;
                if m > 0 {
                    terms.push(((kk * (e as u64 / o)) as i64, m as i64));
                }
            }
            if total != degree {
                return Err(Error::CharacterTable(format!("multiplicities sum to {total}, degree {degree}")));
            }
            values.push(Cyclotomic::from_exponents(e as u32, &terms));
        }
        characters.push(values);
    }
    Ok(characters)
}

/// The simultaneous eigenvectors of the class matrices `(M_i)_{jk} = c_ijk`
/// over `F_ell`, each normalised to 1 on the identity class.
fn common_eigenvectors(consts: &[Vec<Vec<u64>>], ell: u64) -> Result<Vec<Vec<u64>>> {
    let k = consts.len();
    let identity: Vec<Vec<u64>> = (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect();
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![identity];
    for (i, ci) in consts.iter().enumerate().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let m: Vec<Vec<u64>> = ci.iter().map(|row| row.iter().map(|&c| c % ell).collect()).collect();
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            next.extend(split_space(&m, space, ell).map_err(|e| Error::CharacterTable(format!("class {i}: {e}")))?);
        }
        spaces = next;
    }
    spaces
        .into_iter()
        .map(|s| {
            if s.len() != 1 {
                return Err(Error::CharacterTable(format!("eigenspace of dimension {} did not split", s.len())));
            }
            let v = &s[0];
            if v[0] == 0 {
                return Err(Error::CharacterTable("eigenvector vanishes on the identity class".into()));
            }
            let inv = inv_mod(v[0], ell);
            Ok(v.iter().map(|x| x * inv % ell).collect())
        })
        .collect()
}

/// Splits an `m`-invariant subspace, given by basis vectors in reduced
/// echelon form, into eigenspaces of `m`.
fn split_space(m: &[Vec<u64>], basis: Vec<Vec<u64>>, ell: u64) -> Result<Vec<Vec<Vec<u64>>>> {
    let k = m.len();
    let d = basis.len();
    let pivots: Vec<usize> = basis.iter().map(|v| v.iter().position(|&x| x != 0).unwrap()).collect();
    // restriction of m to the subspace in the coordinates read off at pivots
    let images: Vec<Vec<u64>> = basis
        .iter()
        .map(|v| (0..k).map(|r| m[r].iter().zip(v).fold(0, |acc, (a, b)| (acc + a * b) % ell)).collect())
        .collect();
    let a: Vec<Vec<u64>> = (0..d).map(|r| (0..d).map(|c| images[c][pivots[r]]).collect()).collect();
    let cp = char_poly(&a, ell);
    let roots: Vec<u64> = (0..ell).filter(|&x| poly_eval(&cp, x, ell) == 0).collect();
    if roots.len() == 1 {
        return Ok(vec![basis]);
    }
    let mut out = Vec::new();
    let mut found = 0;
    for lambda in roots {
        let shifted: Vec<Vec<u64>> = (0..d)
            .map(|r| (0..d).map(|c| (a[r][c] + if r == c { ell - lambda } else { 0 }) % ell).collect())
            .collect();
        let ns = nullspace(&shifted, d, ell);
        found += ns.len();
        let mut vecs: Vec<Vec<u64>> = ns
            .iter()
            .map(|coef| (0..k).map(|r| basis.iter().zip(coef).fold(0, |acc, (b, c)| (acc + b[r] * c) % ell)).collect())
            .collect();
        rref(&mut vecs, ell);
        out.push(vecs);
    }
    if found != d {
        return Err(Error::CharacterTable(format!("class matrix not diagonalisable mod {ell}")));
    }
    Ok(out)
}

/// Maps the classes of a cached table onto freshly computed classes of the
/// same group by representative lookup.
pub fn reindex_for_group(table: &CharacterTable, g: &MatrixGroup, cc: &ConjugacyClasses) -> Result<CharacterTable> {
    if table.group_order != g.order() || table.classes.len() != cc.len() {
        return Err(Error::Invariant("cached table does not match the group".into()));
    }
    let n2 = g.alg.n * g.alg.n;
    let mut perm = vec![usize::MAX; cc.len()];
    for (old, info) in table.classes.iter().enumerate() {
        let mut m: Mat = [0; 9];
        m[..n2].copy_from_slice(&info.representative);
        if !g.contains(&m) {
            return Err(Error::Invariant("cached representative not in group".into()));
        }
        let new = g.class_index(cc, &m);
        if cc.classes[new].size != info.size {
            return Err(Error::Invariant("cached class size mismatch".into()));
        }
        perm[new] = old;
    }
    if perm.contains(&usize::MAX) {
        return Err(Error::Invariant("cached classes do not cover the group".into()));
    }
    let classes: Vec<ClassInfo> = (0..cc.len())
        .map(|new| {
            let mut info = table.classes[perm[new]].clone();
            let rep = g.element(cc.classes[new].representative);
            info.representative = rep[..n2].to_vec();
            info.inverse_class = g.class_index(cc, &g.inverse(rep));
            info
        })
        .collect();
    let characters = table
        .characters
        .iter()
        .map(|chi| (0..cc.len()).map(|new| chi[perm[new]].clone()).collect())
        .collect();
    let out = CharacterTable {
        label: table.label.clone(),
        group_order: table.group_order,
        conductor: table.conductor,
        classes,
        characters,
        prime: table.prime,
    };
    out.verify()?;
    Ok(out)
}
