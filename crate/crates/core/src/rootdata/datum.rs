use std::collections::{HashMap, VecDeque};

use num_traits::Zero;

use super::cartan::CartanSpec;
use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{int, Rat};

/// A root system given by its Cartan matrix, with every root enumerated.
///
/// Roots are stored in simple-root coordinates. Points of the apartment and
/// cocharacters are written in the basis of simple coroots, so that
/// `alpha(x) = sum_{i,j} a_j C[i][j] x_i` for `alpha = sum_j a_j alpha_j`.
#[derive(Debug, Clone)]
pub struct RootDatum {
    label: String,
    cartan: Vec<Vec<i64>>,
    positive: Vec<Vec<i64>>,
    functionals: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    lengths: Vec<i64>,
    component_of_simple: Vec<usize>,
    component_of_root: Vec<usize>,
    index: HashMap<Vec<i64>, usize>,
    symmetrizer: Vec<i64>,
    fundamental_coweights: Vec<Vec<Rat>>,
}

impl RootDatum {
    pub fn new(spec: &CartanSpec) -> Result<Self> {
        Self::from_cartan_matrix(spec.cartan_matrix(), spec.to_string())
    }

    /// Builds the root system of an arbitrary finite-type Cartan matrix.
    pub fn from_cartan_matrix(cartan: Vec<Vec<i64>>, label: String) -> Result<Self> {
        let n = cartan.len();
        if cartan.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension {
                expected: n,
                got: cartan.iter().map(|r| r.len()).find(|&l| l != n).unwrap_or(0),
            });
        }
        let component_of_simple = components(&cartan);
        let symmetrizer = symmetrize(&cartan, &component_of_simple)?;

        // closure of the simple roots under simple reflections
        let reflect = |v: &[i64], i: usize| -> Vec<i64> {
            let pairing: i64 = (0..n).map(|j| cartan[i][j] * v[j]).sum();
            let mut w = v.to_vec();
            w[i] -= pairing;
            w
        };
        let mut all: HashMap<Vec<i64>, ()> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            all.insert(e.clone(), ());
            queue.push_back(e);
        }
        while let Some(v) = queue.pop_front() {
            for i in 0..n {
                let w = reflect(&v, i);
                if !all.contains_key(&w) {
                    if all.len() > 100_000 {
                        return Err(Error::Invariant("Cartan matrix is not of finite type".into()));
                    }
                    all.insert(w.clone(), ());
                    queue.push_back(w);
                }
            }
        }
        let mut positive: Vec<Vec<i64>> = all.into_keys().filter(|v| v.iter().all(|&a| a >= 0)).collect();
        positive.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });

        let mut roots = positive.clone();
        roots.extend(positive.iter().map(|v| v.iter().map(|a| -a).collect::<Vec<_>>()));

        let functionals = roots
            .iter()
            .map(|a| (0..n).map(|i| (0..n).map(|j| a[j] * cartan[i][j]).sum()).collect())
            .collect();
        let lengths: Vec<i64> = roots
            .iter()
            .map(|a| {
                (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .map(|(i, j)| a[i] * a[j] * symmetrizer[i] * cartan[i][j])
                    .sum()
            })
            .collect();
        let coroots = roots
            .iter()
            .zip(&lengths)
            .map(|(a, &len)| (0..n).map(|i| 2 * a[i] * symmetrizer[i] / len).collect())
            .collect();
        let component_of_root = roots
            .iter()
            .map(|a| component_of_simple[a.iter().position(|&c| c != 0).unwrap()])
            .collect();
        let index = roots.iter().enumerate().map(|(k, a)| (a.clone(), k)).collect();

        // fundamental coweights solve <alpha_j, w_i^vee> = delta_ij
        let mut fundamental_coweights = Vec::with_capacity(n);
        for i in 0..n {
            let a: Vec<Vec<Rat>> = (0..n)
                .map(|j| (0..n).map(|k| int(cartan[k][j])).collect())
                .collect();
            let b: Vec<Rat> = (0..n).map(|j| int((i == j) as i64)).collect();
            let sol = linalg::solve(&a, &b)
                .ok_or_else(|| Error::Invariant("singular Cartan matrix".into()))?;
            fundamental_coweights.push(sol);
        }

        Ok(Self {
            label,
            cartan,
            positive,
            functionals,
            coroots,
            lengths,
            component_of_simple,
            component_of_root,
            index,
            symmetrizer,
            fundamental_coweights,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }
    pub fn rank(&self) -> usize {
        self.cartan.len()
    }
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }
    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }
    pub fn num_roots(&self) -> usize {
        2 * self.positive.len()
    }

    /// Root number `k`; indices `0..P` are positive and `P + k` is `-root(k)`.
    pub fn root(&self, k: usize) -> Vec<i64> {
        let p = self.positive.len();
        if k < p {
            self.positive[k].clone()
        } else {
            self.positive[k - p].iter().map(|a| -a).collect()
        }
    }
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }
    pub fn is_positive(&self, k: usize) -> bool {
        k < self.positive.len()
    }
    pub fn negate(&self, k: usize) -> usize {
        let p = self.positive.len();
        if k < p {
            k + p
        } else {
            k - p
        }
    }
    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }
    pub fn height(&self, k: usize) -> i64 {
        self.root(k).iter().sum()
    }
    pub fn simple_root_index(&self, i: usize) -> usize {
        let mut e = vec![0; self.rank()];
        e[i] = 1;
        self.index[&e]
    }

    /// Coefficients of the linear form `x -> alpha_k(x)` in coroot coordinates.
    pub fn functional(&self, k: usize) -> &[i64] {
        &self.functionals[k]
    }
    /// `alpha_k^vee` in simple-coroot coordinates.
    pub fn coroot(&self, k: usize) -> &[i64] {
        &self.coroots[k]
    }

    pub fn eval(&self, k: usize, x: &[Rat]) -> Rat {
        self.functionals[k]
            .iter()
            .zip(x)
            .fold(Rat::zero(), |acc, (&f, xi)| acc + *xi * int(f))
    }
    pub fn eval_int(&self, k: usize, x: &[i64]) -> i64 {
        self.functionals[k].iter().zip(x).map(|(f, xi)| f * xi).sum()
    }

    pub fn squared_length(&self, k: usize) -> i64 {
        self.lengths[k]
    }
    pub fn component_of_root(&self, k: usize) -> usize {
        self.component_of_root[k]
    }
    pub fn component_of_simple(&self, i: usize) -> usize {
        self.component_of_simple[i]
    }
    pub fn num_components(&self) -> usize {
        self.component_of_simple.iter().max().map_or(0, |m| m + 1)
    }
    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    fn component_is_simply_laced(&self, c: usize) -> bool {
        let lens: Vec<i64> = (0..self.num_roots())
            .filter(|&k| self.component_of_root[k] == c)
            .map(|k| self.lengths[k])
            .collect();
        lens.iter().all(|&l| l == lens[0])
    }

    fn component_extreme_length(&self, c: usize, long: bool) -> i64 {
        let it = (0..self.num_roots())
            .filter(|&k| self.component_of_root[k] == c)
            .map(|k| self.lengths[k]);
        if long {
            it.max().unwrap()
        } else {
            it.min().unwrap()
        }
    }

    /// Long roots of their component; in a simply-laced component every root counts.
    pub fn is_long(&self, k: usize) -> bool {
        let c = self.component_of_root[k];
        self.component_is_simply_laced(c) || self.lengths[k] == self.component_extreme_length(c, true)
    }
    /// Short roots of their component; in a simply-laced component every root counts.
    pub fn is_short(&self, k: usize) -> bool {
        let c = self.component_of_root[k];
        self.component_is_simply_laced(c) || self.lengths[k] == self.component_extreme_length(c, false)
    }

    /// Highest root of each irreducible component.
    pub fn highest_roots(&self) -> Vec<usize> {
        self.highest_filtered(|_| true)
    }
    /// Highest short root of each irreducible component.
    pub fn highest_short_roots(&self) -> Vec<usize> {
        self.highest_filtered(|k| self.is_short(k))
    }

    fn highest_filtered(&self, keep: impl Fn(usize) -> bool) -> Vec<usize> {
        (0..self.num_components())
            .map(|c| {
                (0..self.num_positive())
                    .filter(|&k| self.component_of_root[k] == c && keep(k))
                    .max_by_key(|&k| self.height(k))
                    .expect("every component has roots")
            })
            .collect()
    }

    /// `omega_i^vee` in coroot coordinates.
    pub fn fundamental_coweight(&self, i: usize) -> &[Rat] {
        &self.fundamental_coweights[i]
    }

    /// A regular dominant point: every simple root takes the value 1.
    pub fn regular_dominant(&self) -> Vec<Rat> {
        let n = self.rank();
        (0..n)
            .map(|k| self.fundamental_coweights.iter().fold(Rat::zero(), |a, w| a + w[k]))
            .collect()
    }

    /// Vertices of the fundamental alcove: `0` together with `omega_i^vee / m_i`,
    /// where `m_i` is the coefficient of `alpha_i` in the highest root of the
    /// component containing `i`. For a reducible system the alcove is the
    /// product of the component alcoves and its vertices are all sums of one
    /// vertex per component.
    pub fn alcove_vertices(&self) -> Vec<Vec<Rat>> {
        let n = self.rank();
        let highest = self.highest_roots();
        let mut per_comp: Vec<Vec<Vec<Rat>>> = Vec::new();
        for (c, &h) in highest.iter().enumerate() {
            let theta = self.root(h);
            let mut verts = vec![vec![Rat::zero(); n]];
            for i in (0..n).filter(|&i| self.component_of_simple[i] == c) {
                let m = int(theta[i]);
                verts.push(self.fundamental_coweights[i].iter().map(|v| v / m).collect());
            }
            per_comp.push(verts);
        }
        let mut out = vec![vec![Rat::zero(); n]];
        for verts in per_comp {
            let mut next = Vec::new();
            for base in &out {
                for v in &verts {
                    next.push(base.iter().zip(v).map(|(a, b)| a + b).collect());
                }
            }
            out = next;
        }
        out
    }

    /// Sum of positive coroots, i.e. `2 rho^vee`, in coroot coordinates.
    pub fn two_rho_check(&self) -> Vec<i64> {
        let n = self.rank();
        (0..n)
            .map(|i| (0..self.num_positive()).map(|k| self.coroots[k][i]).sum())
            .collect()
    }
}

fn components(c: &[Vec<i64>]) -> Vec<usize> {
    let n = c.len();
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = next;
        let mut stack = vec![s];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if c[i][j] != 0 && comp[j] == usize::MAX {
                    comp[j] = next;
                    stack.push(j);
                }
            }
        }
        next += 1;
    }
    comp
}

/// Integers `d_i` with `d_i C[i][j] = d_j C[j][i]`, normalised so that the
/// shortest simple root of each component has `d = 1`.
fn symmetrize(c: &[Vec<i64>], comp: &[usize]) -> Result<Vec<i64>> {
    let n = c.len();
    let mut d: Vec<Option<Rat>> = vec![None; n];
    for s in 0..n {
        if d[s].is_some() {
            continue;
        }
        d[s] = Some(int(1));
        let mut stack = vec![s];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i != j && c[i][j] != 0 {
                    if c[j][i] == 0 {
                        return Err(Error::Invariant("Cartan matrix is not symmetrizable".into()));
                    }
                    let dj = d[i].unwrap() * int(c[i][j]) / int(c[j][i]);
                    match d[j] {
                        None => {
                            d[j] = Some(dj);
                            stack.push(j);
                        }
                        Some(v) if v != dj => {
                            return Err(Error::Invariant("Cartan matrix is not symmetrizable".into()))
                        }
                        _ => {}
                    }
                }
            }
        }
    }
    let d: Vec<Rat> = d.into_iter().map(Option::unwrap).collect();
    let mut out = vec![0i64; n];
    let ncomp = comp.iter().max().map_or(0, |m| m + 1);
    for cidx in 0..ncomp {
        let members: Vec<usize> = (0..n).filter(|&i| comp[i] == cidx).collect();
        let min = members.iter().map(|&i| d[i]).min().unwrap();
        for &i in &members {
            let v = d[i] / min;
            if !v.is_integer() {
                return Err(Error::Invariant("unexpected root length ratio".into()));
            }
            out[i] = v.to_integer() as i64;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn datum(s: &str) -> RootDatum {
        RootDatum::new(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn root_counts_match_closed_forms() {
        for t in ["A1", "A2", "A4", "B2", "B3", "C3", "D4", "E6", "E7", "E8", "F4", "G2", "B2+A1"] {
            let spec: CartanSpec = t.parse().unwrap();
            let expected: usize = spec.components.iter().map(|c| c.root_count()).sum();
            assert_eq!(datum(t).num_roots(), expected, "{t}");
        }
    }

    #[test]
    fn a2_has_six_roots() {
        let d = datum("A2");
        assert_eq!(d.num_roots(), 6);
        assert_eq!(d.num_positive(), 3);
        assert_eq!(d.root(2), vec![1, 1]);
    }

    #[test]
    fn g2_lengths() {
        let d = datum("G2");
        let long = (0..12).filter(|&k| d.is_long(k)).count();
        let short = (0..12).filter(|&k| d.is_short(k)).count();
        assert_eq!((long, short), (6, 6));
        let h = d.highest_roots()[0];
        assert_eq!(d.root(h), vec![3, 2]);
        let hs = d.highest_short_roots()[0];
        assert_eq!(d.root(hs), vec![2, 1]);
    }

    #[test]
    fn b2_highest_short_root() {
        let d = datum("B2");
        let hs = d.highest_short_roots()[0];
        assert_eq!(d.root(hs), vec![1, 1]);
        assert_eq!(d.root(d.highest_roots()[0]), vec![1, 2]);
    }

    #[test]
    fn pairings_with_coroots() {
        for t in ["B3", "C3", "G2", "F4", "D4"] {
            let d = datum(t);
            for a in 0..d.num_roots() {
                let cv: Vec<i64> = d.coroot(a).to_vec();
                assert_eq!(d.eval_int(a, &cv), 2, "{t}");
                for b in 0..d.num_roots() {
                    let p = d.eval_int(b, &cv);
                    assert!((-3..=3).contains(&p));
                }
            }
        }
    }

    #[test]
    fn fundamental_coweights_are_dual() {
        let d = datum("C3");
        for i in 0..3 {
            for j in 0..3 {
                let v = d.eval(d.simple_root_index(j), d.fundamental_coweight(i));
                assert_eq!(v, int((i == j) as i64));
            }
        }
    }

    #[test]
    fn alcove_vertices_a2() {
        let d = datum("A2");
        let v = d.alcove_vertices();
        assert_eq!(v.len(), 3);
        assert!(v.contains(&vec![rat(2, 3), rat(1, 3)]));
        let dp = datum("A1+A1");
        assert_eq!(dp.alcove_vertices().len(), 4);
    }
}
