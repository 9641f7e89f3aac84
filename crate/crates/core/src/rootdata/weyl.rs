use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::cartan::CartanSpec;
use super::datum::RootDatum;
use crate::error::{Error, Result};
use crate::linalg::{self, char_poly};
use crate::qpoly::QPolynomial;
use crate::rational::Rat;

/// Default rank bound for enumerating a finite Weyl group.
pub const DEFAULT_WEYL_RANK_GUARD: usize = 6;

/// An element of the finite Weyl group acting on coroot coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeylElement {
    /// Row-major `n x n` integer matrix.
    pub matrix: Vec<i64>,
    /// A reduced word in the simple reflections (0-based indices).
    pub word: Vec<usize>,
    pub length: usize,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        Self {
            matrix: linalg::identity(rank),
            word: Vec::new(),
            length: 0,
        }
    }

    pub fn rank(&self) -> usize {
        (self.matrix.len() as f64).sqrt() as usize
    }

    pub fn apply(&self, x: &[Rat]) -> Vec<Rat> {
        linalg::mat_vec_rat(&self.matrix, x)
    }

    pub fn apply_int(&self, x: &[i64]) -> Vec<i64> {
        linalg::mat_vec(&self.matrix, x)
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == linalg::identity(self.rank())
    }
}

/// Matrix of the simple reflection `s_i` on coroot coordinates:
/// `s_i(x) = x - <alpha_i, x> alpha_i^vee`.
pub fn simple_reflection_matrix(datum: &RootDatum, i: usize) -> Vec<i64> {
    reflection_matrix(datum, datum.simple_root_index(i))
}

/// Matrix of the reflection in the root with index `k`.
pub fn reflection_matrix(datum: &RootDatum, k: usize) -> Vec<i64> {
    let n = datum.rank();
    let f = datum.functional(k);
    let c = datum.coroot(k);
    let mut m = linalg::identity(n);
    for r in 0..n {
        for s in 0..n {
            m[r * n + s] -= c[r] * f[s];
        }
    }
    m
}

/// Element given by a word in the simple reflections; the recorded length is
/// the word length, which is only reduced if the word is.
pub fn element_from_word(datum: &RootDatum, word: &[usize]) -> WeylElement {
    let n = datum.rank();
    let mut m = linalg::identity(n);
    for &i in word {
        m = linalg::mat_mul(&m, &simple_reflection_matrix(datum, i), n);
    }
    WeylElement {
        matrix: m,
        word: word.to_vec(),
        length: word.len(),
    }
}

/// The Coxeter element `s_1 s_2 ... s_n`.
pub fn coxeter_element(datum: &RootDatum) -> WeylElement {
    let word: Vec<usize> = (0..datum.rank()).collect();
    element_from_word(datum, &word)
}

/// The finite Weyl group with multiplication, inverses and its action on roots.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    rank: usize,
    elements: Vec<WeylElement>,
    index: HashMap<Vec<i64>, usize>,
    inverse: Vec<usize>,
    root_action: Vec<Vec<usize>>,
}

impl WeylGroup {
    pub fn new(datum: &RootDatum) -> Result<Self> {
        Self::with_guard(datum, DEFAULT_WEYL_RANK_GUARD)
    }

    pub fn with_guard(datum: &RootDatum, max_rank: usize) -> Result<Self> {
        let n = datum.rank();
        if n > max_rank {
            return Err(Error::Guard(format!(
                "Weyl group enumeration limited to rank {max_rank}, got rank {n}"
            )));
        }
        let gens: Vec<Vec<i64>> = (0..n).map(|i| simple_reflection_matrix(datum, i)).collect();
        let mut elements = vec![WeylElement::identity(n)];
        let mut index = HashMap::new();
        index.insert(elements[0].matrix.clone(), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            for (i, g) in gens.iter().enumerate() {
                let m = linalg::mat_mul(&elements[a].matrix, g, n);
                if !index.contains_key(&m) {
                    let mut word = elements[a].word.clone();
                    word.push(i);
                    let length = elements[a].length + 1;
                    index.insert(m.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(WeylElement { matrix: m, word, length });
                }
            }
        }
        let mut inverse = Vec::with_capacity(elements.len());
        for e in &elements {
            let mut m = linalg::identity(n);
            for &i in e.word.iter().rev() {
                m = linalg::mat_mul(&m, &gens[i], n);
            }
            inverse.push(index[&m]);
        }

        // (w alpha)(x) = alpha(w^{-1} x): the functional of w alpha is f_alpha M_{w^{-1}}
        let by_functional: HashMap<&[i64], usize> =
            (0..datum.num_roots()).map(|k| (datum.functional(k), k)).collect();
        let mut root_action = Vec::with_capacity(elements.len());
        for (a, _) in elements.iter().enumerate() {
            let minv = &elements[inverse[a]].matrix;
            let perm: Vec<usize> = (0..datum.num_roots())
                .map(|k| {
                    let f = datum.functional(k);
                    let g: Vec<i64> = (0..n).map(|s| (0..n).map(|r| f[r] * minv[r * n + s]).sum()).collect();
                    by_functional[g.as_slice()]
                })
                .collect();
            root_action.push(perm);
        }

        Ok(Self {
            rank: n,
            elements,
            index,
            inverse,
            root_action,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn order(&self) -> usize {
        self.elements.len()
    }
    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }
    pub fn element(&self, a: usize) -> &WeylElement {
        &self.elements[a]
    }
    pub fn identity_index(&self) -> usize {
        0
    }
    pub fn index_of(&self, matrix: &[i64]) -> Option<usize> {
        self.index.get(matrix).copied()
    }
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let m = linalg::mat_mul(&self.elements[a].matrix, &self.elements[b].matrix, self.rank);
        self.index[&m]
    }
    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }
    /// Index of the root `w alpha_k`.
    pub fn act_on_root(&self, a: usize, k: usize) -> usize {
        self.root_action[a][k]
    }

    /// Number of positive roots sent to negative roots.
    pub fn inversion_count(&self, datum: &RootDatum, a: usize) -> usize {
        (0..datum.num_positive())
            .filter(|&k| !datum.is_positive(self.root_action[a][k]))
            .count()
    }

    /// Conjugacy classes as sorted lists of element indices.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let gens: Vec<usize> = (0..self.rank)
            .map(|i| self.elements.iter().position(|e| e.word == [i]).unwrap())
            .collect();
        let mut class_of = vec![usize::MAX; self.order()];
        let mut classes = Vec::new();
        for start in 0..self.order() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[start] = id;
            let mut members = vec![start];
            let mut k = 0;
            while k < members.len() {
                let a = members[k];
                for &s in &gens {
                    // s is an involution
                    let c = self.mul(self.mul(s, a), s);
                    if class_of[c] == usize::MAX {
                        class_of[c] = id;
                        members.push(c);
                    }
                }
                k += 1;
            }
            members.sort_unstable();
            classes.push(members);
        }
        classes
    }

    /// The stabiliser in `W` of a finite set of roots (as a set).
    pub fn setwise_stabilizer(&self, roots: &[usize]) -> Vec<usize> {
        let mut sorted = roots.to_vec();
        sorted.sort_unstable();
        (0..self.order())
            .filter(|&a| {
                let mut img: Vec<usize> = roots.iter().map(|&k| self.root_action[a][k]).collect();
                img.sort_unstable();
                img == sorted
            })
            .collect()
    }
}

/// `sum_w q^{l(w)}`.
pub fn poincare_poly(group: &WeylGroup) -> QPolynomial {
    let maxlen = group.elements.iter().map(|e| e.length).max().unwrap_or(0);
    let mut counts = vec![0i64; maxlen + 1];
    for e in &group.elements {
        counts[e.length] += 1;
    }
    QPolynomial::from_i64(&counts)
}

/// `|T_w(F_q)| = det(q I - M_w)`.
pub fn torus_order_poly(w: &WeylElement) -> QPolynomial {
    char_poly(&w.matrix, w.rank())
}

/// `prod_i (q^{d_i} - 1)`.
pub fn degree_product_poly(spec: &CartanSpec) -> Result<QPolynomial> {
    Ok(spec
        .weyl_degrees()?
        .into_iter()
        .map(QPolynomial::q_pow_minus_one)
        .product())
}

/// `|G(F_q)| = q^{|Phi^+|} prod_i (q^{d_i} - 1)` for the simply connected group.
pub fn group_order_poly(spec: &CartanSpec) -> Result<QPolynomial> {
    let npos: usize = spec.components.iter().map(|c| c.root_count() / 2).sum();
    Ok(degree_product_poly(spec)?.shift(npos))
}

/// Degree of the Deligne-Lusztig character attached to the torus `T_w`:
/// `prod_i (q^{d_i} - 1) / |T_w|`.
pub fn dl_cuspidal_degree_poly(spec: &CartanSpec, w: &WeylElement) -> Result<QPolynomial> {
    if w.rank() != spec.rank() {
        return Err(Error::Dimension {
            expected: spec.rank(),
            got: w.rank(),
        });
    }
    degree_product_poly(spec)?.div_exact(&torus_order_poly(w))
}
