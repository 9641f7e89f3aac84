//! Matrix groups of size at most 3 over a [`FiniteRing`], enumerated by
//! closure under a generating set.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exec::{map_range, Exec};
use crate::finlab::ring::FiniteRing;

/// A square matrix of size `n <= 3`, row-major in the leading `n * n` slots.
pub type Mat = [u8; 9];

/// Default cap on the number of enumerated group elements.
pub const DEFAULT_GROUP_GUARD: usize = 400_000;

/// Arithmetic on `n x n` matrices over a shared ring.
#[derive(Debug, Clone)]
pub struct MatrixAlgebra {
    pub n: usize,
    pub ring: Arc<FiniteRing>,
}

impl MatrixAlgebra {
    pub fn new(n: usize, ring: Arc<FiniteRing>) -> Result<Self> {
        if !(1..=3).contains(&n) {
            return Err(Error::Precondition(format!("matrix size {n} outside 1..=3")));
        }
        Ok(Self { n, ring })
    }

    pub fn identity(&self) -> Mat {
        let mut m = [0u8; 9];
        for i in 0..self.n {
            m[i * self.n + i] = 1;
        }
        m
    }

    /// Builds a matrix from rows of ring elements.
    pub fn from_rows(&self, rows: &[&[u8]]) -> Mat {
        let mut m = [0u8; 9];
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m[i * self.n + j] = v;
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, m: &Mat, i: usize, j: usize) -> u8 {
        m[i * self.n + j]
    }

    /// The elementary matrix `1 + t E_{ij}` (zero-based indices).
    pub fn elementary(&self, i: usize, j: usize, t: u8) -> Mat {
        let mut m = self.identity();
        m[i * self.n + j] = t;
        m
    }

    pub fn diagonal(&self, d: &[u8]) -> Mat {
        let mut m = [0u8; 9];
        for (i, &v) in d.iter().enumerate() {
            m[i * self.n + i] = v;
        }
        m
    }

    pub fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        let n = self.n;
        let r = &self.ring;
        let mut c = [0u8; 9];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0u8;
                for k in 0..n {
                    s = r.add(s, r.mul(a[i * n + k], b[k * n + j]));
                }
                c[i * n + j] = s;
            }
        }
        c
    }

    pub fn det(&self, a: &Mat) -> u8 {
        let r = &self.ring;
        match self.n {
            1 => a[0],
            2 => r.sub(r.mul(a[0], a[3]), r.mul(a[1], a[2])),
            _ => {
                let m = |x: u8, y: u8, z: u8| r.mul(x, r.mul(y, z));
                let pos = r.add(r.add(m(a[0], a[4], a[8]), m(a[1], a[5], a[6])), m(a[2], a[3], a[7]));
                let neg = r.add(r.add(m(a[2], a[4], a[6]), m(a[0], a[5], a[7])), m(a[1], a[3], a[8]));
                r.sub(pos, neg)
            }
        }
    }

    /// The adjugate matrix; equals the inverse when the determinant is 1.
    pub fn adjugate(&self, a: &Mat) -> Mat {
        let r = &self.ring;
        let n = self.n;
        let mut c = [0u8; 9];
        match n {
            1 => c[0] = 1,
            2 => {
                c[0] = a[3];
                c[1] = r.neg(a[1]);
                c[2] = r.neg(a[2]);
                c[3] = a[0];
            }
            _ => {
                for i in 0..3 {
                    for j in 0..3 {
                        // cofactor of entry (j, i)
                        let rows: Vec<usize> = (0..3).filter(|&k| k != j).collect();
                        let cols: Vec<usize> = (0..3).filter(|&k| k != i).collect();
                        let minor = r.sub(
                            r.mul(a[rows[0] * 3 + cols[0]], a[rows[1] * 3 + cols[1]]),
                            r.mul(a[rows[0] * 3 + cols[1]], a[rows[1] * 3 + cols[0]]),
                        );
                        c[i * 3 + j] = if (i + j) % 2 == 0 { minor } else { r.neg(minor) };
                    }
                }
            }
        }
        c
    }

    /// Inverse of a matrix with unit determinant.
    pub fn inverse(&self, a: &Mat) -> Option<Mat> {
        let dinv = self.ring.inv(self.det(a))?;
        let mut adj = self.adjugate(a);
        for v in adj.iter_mut().take(self.n * self.n) {
            *v = self.ring.mul(*v, dinv);
        }
        Some(adj)
    }

    pub fn is_scalar(&self, a: &Mat) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..n).all(|j| if i == j { a[i * n + i] == a[0] } else { a[i * n + j] == 0 }))
    }

    pub fn is_upper_triangular(&self, a: &Mat) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..i).all(|j| a[i * n + j] == 0))
    }

    pub fn is_lower_triangular(&self, a: &Mat) -> bool {
        let n = self.n;
        (0..n).all(|i| (i + 1..n).all(|j| a[i * n + j] == 0))
    }

    pub fn is_unitriangular(&self, a: &Mat) -> bool {
        (0..self.n).all(|i| a[i * self.n + i] == 1)
    }

    /// Order of `a` in the group, by repeated multiplication.
    pub fn order(&self, a: &Mat) -> usize {
        let id = self.identity();
        let mut x = *a;
        let mut k = 1;
        while x != id {
            x = self.mul(&x, a);
            k += 1;
        }
        k
    }

    pub fn pow(&self, a: &Mat, e: usize) -> Mat {
        let mut r = self.identity();
        for _ in 0..e {
            r = self.mul(&r, a);
        }
        r
    }
}

/// A finite matrix group with all elements enumerated and indexed.
#[derive(Debug, Clone)]
pub struct MatrixGroup {
    pub label: String,
    pub alg: MatrixAlgebra,
    elements: Vec<Mat>,
    index: HashMap<Mat, u32>,
    generators: Vec<Mat>,
}

impl MatrixGroup {
    /// Closure of `generators` under multiplication. Elements are listed in
    /// breadth-first order from the identity, so index 0 is the identity.
    pub fn generate(label: impl Into<String>, alg: MatrixAlgebra, generators: Vec<Mat>, guard: usize) -> Result<Self> {
        let id = alg.identity();
        let mut elements = vec![id];
        let mut index = HashMap::new();
        index.insert(id, 0u32);
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head];
            head += 1;
            for g in &generators {
                let y = alg.mul(&x, g);
                if let std::collections::hash_map::Entry::Vacant(e) = index.entry(y) {
                    if elements.len() >= guard {
                        return Err(Error::Guard(format!("group exceeds {guard} elements")));
                    }
                    e.insert(elements.len() as u32);
                    elements.push(y);
                }
            }
        }
        Ok(Self {
            label: label.into(),
            alg,
            elements,
            index,
            generators,
        })
    }

    /// The subgroup of elements satisfying `keep`, which must be closed
    /// under multiplication. Generators are all kept elements.
    pub fn subgroup_by(&self, label: impl Into<String>, keep: impl Fn(&Mat) -> bool) -> Result<Self> {
        let elements: Vec<Mat> = self.elements.iter().copied().filter(|m| keep(m)).collect();
        let index: HashMap<Mat, u32> = elements.iter().enumerate().map(|(i, m)| (*m, i as u32)).collect();
        for a in &elements {
            for b in &elements {
                if !index.contains_key(&self.alg.mul(a, b)) {
                    return Err(Error::Invariant("subset is not closed under multiplication".into()));
                }
            }
        }
        let mut sub = Self {
            label: label.into(),
            alg: self.alg.clone(),
            generators: Vec::new(),
            elements,
            index,
        };
        sub.generators = sub.small_generating_set();
        Ok(sub)
    }

    fn small_generating_set(&self) -> Vec<Mat> {
        let mut gens: Vec<Mat> = Vec::new();
        let mut reached: std::collections::HashSet<Mat> = [self.alg.identity()].into_iter().collect();
        for g in &self.elements {
            if reached.contains(g) {
                continue;
            }
            gens.push(*g);
            let mut frontier: Vec<Mat> = reached.iter().copied().collect();
            while let Some(x) = frontier.pop() {
                for h in &gens {
                    let y = self.alg.mul(&x, h);
                    if reached.insert(y) {
                        frontier.push(y);
                    }
                }
            }
        }
        gens
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
    pub fn elements(&self) -> &[Mat] {
        &self.elements
    }
    pub fn element(&self, i: usize) -> &Mat {
        &self.elements[i]
    }
    pub fn generators(&self) -> &[Mat] {
        &self.generators
    }
    pub fn index_of(&self, m: &Mat) -> Option<usize> {
        self.index.get(m).map(|&i| i as usize)
    }
    pub fn contains(&self, m: &Mat) -> bool {
        self.index.contains_key(m)
    }
    pub fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        self.alg.mul(a, b)
    }
    pub fn inverse(&self, a: &Mat) -> Mat {
        self.alg.inverse(a).expect("group elements are invertible")
    }

    /// Conjugacy classes as orbits under conjugation by the generators.
    /// Classes are sorted by (element order, size, first element index), so
    /// class 0 is the identity.
    pub fn conjugacy_classes(&self) -> ConjugacyClasses {
        let n = self.order();
        let gens: Vec<(Mat, Mat)> = self.generators.iter().map(|g| (*g, self.inverse(g))).collect();
        let mut class_of = vec![u32::MAX; n];
        let mut raw: Vec<Vec<u32>> = Vec::new();
        for start in 0..n {
            if class_of[start] != u32::MAX {
                continue;
            }
            let c = raw.len() as u32;
            class_of[start] = c;
            let mut members = vec![start as u32];
            let mut head = 0;
            while head < members.len() {
                let x = self.elements[members[head] as usize];
                head += 1;
                for (g, gi) in &gens {
                    let y = self.alg.mul(&self.alg.mul(gi, &x), g);
                    let j = self.index[&y] as usize;
                    if class_of[j] == u32::MAX {
                        class_of[j] = c;
                        members.push(j as u32);
                    }
                }
            }
            raw.push(members);
        }
        let mut keyed: Vec<(usize, usize, u32, Vec<u32>)> = raw
            .into_iter()
            .map(|mut m| {
                m.sort_unstable();
                (self.alg.order(&self.elements[m[0] as usize]), m.len(), m[0], m)
            })
            .collect();
        keyed.sort();
        let mut class_of = vec![0u32; n];
        let mut classes = Vec::with_capacity(keyed.len());
        for (c, (order, _, _, members)) in keyed.into_iter().enumerate() {
            for &e in &members {
                class_of[e as usize] = c as u32;
            }
            classes.push(ConjugacyClass {
                representative: members[0] as usize,
                size: members.len(),
                element_order: order,
            });
        }
        ConjugacyClasses { classes, class_of }
    }

    /// Exponent of the group, the lcm of the class element orders.
    pub fn exponent(&self, cc: &ConjugacyClasses) -> usize {
        cc.classes.iter().fold(1, |e, c| num_integer::lcm(e, c.element_order))
    }

    /// Class constants `c[i][j][k] = #{(x, y) in C_i x C_j : x y = z_k}` for
    /// a fixed representative `z_k` of each class, split over `exec`.
    pub fn class_constants(&self, cc: &ConjugacyClasses, exec: Exec) -> Vec<Vec<Vec<u64>>> {
        let k = cc.len();
        let per_class: Vec<Vec<Vec<u64>>> = map_range(exec, k, |t| {
            let z = self.elements[cc.classes[t].representative];
            let mut counts = vec![vec![0u64; k]; k];
            for x in &self.elements {
                let y = self.alg.mul(&self.inverse(x), &z);
                let i = cc.class_of[self.index[x] as usize] as usize;
                let j = cc.class_of[self.index[&y] as usize] as usize;
                counts[i][j] += 1;
            }
            counts
        });
        let mut c = vec![vec![vec![0u64; k]; k]; k];
        for (t, counts) in per_class.into_iter().enumerate() {
            for i in 0..k {
                for j in 0..k {
                    c[i][j][t] = counts[i][j];
                }
            }
        }
        c
    }

    /// Class index of `m`, which must belong to the group.
    pub fn class_index(&self, cc: &ConjugacyClasses, m: &Mat) -> usize {
        cc.class_of[self.index[m] as usize] as usize
    }

    /// For each class, the class of the `e`-th power of its representative.
    pub fn power_map(&self, cc: &ConjugacyClasses, e: usize) -> Vec<usize> {
        cc.classes
            .iter()
            .map(|c| self.class_index(cc, &self.alg.pow(&self.elements[c.representative], e)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub size: usize,
    pub element_order: usize,
}

#[derive(Debug, Clone)]
pub struct ConjugacyClasses {
    pub classes: Vec<ConjugacyClass>,
    /// Class index of each group element, by element index.
    pub class_of: Vec<u32>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }
    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.size).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gl_alg(n: usize, q: u32) -> MatrixAlgebra {
        MatrixAlgebra::new(n, Arc::new(FiniteRing::field(q).unwrap())).unwrap()
    }

    #[test]
    fn adjugate_inverts() {
        let alg = gl_alg(3, 5);
        let a = alg.from_rows(&[&[1, 2, 3], &[0, 1, 4], &[2, 0, 1]]);
        let inv = alg.inverse(&a).unwrap();
        assert_eq!(alg.mul(&a, &inv), alg.identity());
        assert_eq!(alg.mul(&inv, &a), alg.identity());
    }

    #[test]
    fn cyclic_group_classes() {
        let alg = gl_alg(1, 7);
        let g = MatrixGroup::generate("C6", alg, vec![[3, 0, 0, 0, 0, 0, 0, 0, 0]], 100).unwrap();
        assert_eq!(g.order(), 6);
        let cc = g.conjugacy_classes();
        assert_eq!(cc.len(), 6);
        assert_eq!(g.exponent(&cc), 6);
    }

    #[test]
    fn class_constants_match_sequential() {
        let alg = gl_alg(2, 3);
        let gens = vec![alg.elementary(0, 1, 1), alg.elementary(1, 0, 1)];
        let g = MatrixGroup::generate("SL(2,3)", alg, gens, 1000).unwrap();
        let cc = g.conjugacy_classes();
        let a = g.class_constants(&cc, Exec::Sequential);
        let b = g.class_constants(&cc, Exec::Parallel);
        assert_eq!(a, b);
        // sum over i, j of c_ijk counts all factorizations of z_k
        for k in 0..cc.len() {
            let total: u64 = a.iter().flat_map(|r| r.iter().map(move |c| c[k])).sum();
            assert_eq!(total as usize, g.order());
        }
    }
}
