//! `SL(2, q)` and `SL(3, q)` with their character tables, and the
//! character-level identities for Deligne-Lusztig cuspidal characters.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{map_slice, Exec};
use crate::finlab::cache::TableCache;
use crate::finlab::chartab::{character_table_with, reindex_for_group, CharacterTable, DixonOptions};
use crate::finlab::cyclotomic::Cyclotomic;
use crate::finlab::group::{ConjugacyClasses, Mat, MatrixAlgebra, MatrixGroup, DEFAULT_GROUP_GUARD};
use crate::finlab::ring::{prime_power, FiniteRing};
use crate::rootdata::{coxeter_element, dl_cuspidal_degree_poly, CartanSpec, RootDatum, WeylElement};

/// Largest `q` enumerated for `SL(2, q)` and `SL(3, q)` without the big-q flag.
pub const SL2_MAX_Q: u32 = 11;
pub const SL3_MAX_Q: u32 = 4;
/// Largest `q` for `SL(3, q)` with the big-q flag.
pub const SL3_MAX_BIG_Q: u32 = 5;

/// `|SL(n, q)| = q^(n(n-1)/2) prod_{i=2..n} (q^i - 1)`.
pub fn sl_order(n: u32, q: u64) -> u64 {
    q.pow(n * (n - 1) / 2) * (2..=n).map(|i| q.pow(i) - 1).product::<u64>()
}

/// Enumerates `SL(n, q)` for `n` in `{2, 3}` within the size guards.
pub fn build_sl(n: usize, q: u32, allow_big_q: bool) -> Result<MatrixGroup> {
    let max = match (n, allow_big_q) {
        (2, _) => SL2_MAX_Q,
        (3, false) => SL3_MAX_Q,
        (3, true) => SL3_MAX_BIG_Q,
        _ => return Err(Error::Precondition(format!("SL({n}, q) needs n in {{2, 3}}"))),
    };
    if q > max {
        let hint = if n == 3 && !allow_big_q && q <= SL3_MAX_BIG_Q { " (enable big q)" } else { "" };
        return Err(Error::Guard(format!("SL({n},{q}) exceeds q <= {max}{hint}")));
    }
    let ring = Arc::new(FiniteRing::field(q)?);
    let alg = MatrixAlgebra::new(n, ring.clone())?;
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                for &t in &ring.additive_generators() {
                    gens.push(alg.elementary(i, j, t));
                }
            }
        }
    }
    let g = MatrixGroup::generate(format!("SL({n},{q})"), alg, gens, DEFAULT_GROUP_GUARD)?;
    let expected = sl_order(n as u32, q as u64);
    if g.order() as u64 != expected {
        return Err(Error::Invariant(format!("|{}| = {} but the closed form gives {expected}", g.label, g.order())));
    }
    Ok(g)
}

/// A standard subgroup of `SL(n, q)` described by which entries may be nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StandardSubgroup {
    /// Upper triangular matrices.
    Borel,
    /// Upper unitriangular matrices.
    Unipotent,
    /// Lower triangular matrices.
    OppositeBorel,
    /// Lower unitriangular matrices.
    OppositeUnipotent,
    /// Diagonal matrices.
    Torus,
    /// Scalar matrices.
    Centre,
    /// Unipotent radical of the block upper triangular parabolic with the
    /// given first block size.
    Radical(usize),
    /// Block upper triangular parabolic with the given first block size.
    Parabolic(usize),
}

impl StandardSubgroup {
    pub fn contains(self, alg: &MatrixAlgebra, m: &Mat) -> bool {
        let n = alg.n;
        match self {
            Self::Borel => alg.is_upper_triangular(m),
            Self::Unipotent => alg.is_upper_triangular(m) && alg.is_unitriangular(m),
            Self::OppositeBorel => alg.is_lower_triangular(m),
            Self::OppositeUnipotent => alg.is_lower_triangular(m) && alg.is_unitriangular(m),
            Self::Torus => alg.is_upper_triangular(m) && alg.is_lower_triangular(m),
            Self::Centre => alg.is_scalar(m),
            Self::Radical(k) => (0..n).all(|i| {
                (0..n).all(|j| {
                    let v = alg.get(m, i, j);
                    if i == j {
                        v == 1
                    } else if i < k && j >= k {
                        true
                    } else {
                        v == 0
                    }
                })
            }),
            Self::Parabolic(k) => (k..n).all(|i| (0..k).all(|j| alg.get(m, i, j) == 0)),
        }
    }

    pub fn name(self) -> String {
        match self {
            Self::Borel => "B".into(),
            Self::Unipotent => "U".into(),
            Self::OppositeBorel => "B_op".into(),
            Self::OppositeUnipotent => "U_op".into(),
            Self::Torus => "T".into(),
            Self::Centre => "Z".into(),
            Self::Radical(k) => format!("U_P{k}"),
            Self::Parabolic(k) => format!("P{k}"),
        }
    }
}

/// Options for building a [`LieLab`].
#[derive(Debug, Clone, Copy, Default)]
pub struct LabOptions {
    pub allow_big_q: bool,
    pub dixon: DixonOptions,
}

/// `SL(n, q)` together with its classes and character table.
#[derive(Debug, Clone)]
pub struct LieLab {
    pub n: usize,
    pub q: u32,
    pub p: u32,
    pub group: MatrixGroup,
    pub classes: ConjugacyClasses,
    pub table: CharacterTable,
    exec: Exec,
}

/// Result of comparing two characters on the Borel subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BorelComparison {
    pub same_central_character: bool,
    pub agree_on_borel: bool,
    pub first_vanishes_off_central: bool,
    pub second_vanishes_off_central: bool,
}

impl BorelComparison {
    /// The combined verdict: pointwise agreement on `B`.
    pub fn holds(&self) -> bool {
        self.agree_on_borel
    }
}

impl LieLab {
    pub fn new(n: usize, q: u32, opts: LabOptions) -> Result<Self> {
        Self::with_cache(n, q, opts, None)
    }

    /// Builds the lab, reading and updating `cache` when given.
    pub fn with_cache(n: usize, q: u32, opts: LabOptions, cache: Option<&mut TableCache>) -> Result<Self> {
        let (p, _) = prime_power(q).ok_or_else(|| Error::Precondition(format!("{q} is not a prime power")))?;
        let group = build_sl(n, q, opts.allow_big_q)?;
        let classes = group.conjugacy_classes();
        let table = match cache {
            Some(cache) => match cache.get(&group.label) {
                Some(t) => reindex_for_group(t, &group, &classes)?,
                None => {
                    let t = character_table_with(&group, &classes, opts.dixon)?;
                    cache.insert(t.clone());
                    t
                }
            },
            None => character_table_with(&group, &classes, opts.dixon)?,
        };
        Ok(Self {
            n,
            q,
            p,
            group,
            classes,
            table,
            exec: opts.dixon.exec,
        })
    }

    pub fn alg(&self) -> &MatrixAlgebra {
        &self.group.alg
    }

    pub fn subgroup_elements(&self, s: StandardSubgroup) -> Vec<Mat> {
        self.group.elements().iter().copied().filter(|m| s.contains(self.alg(), m)).collect()
    }

    /// Unipotent radicals of the proper standard parabolics, the Borel
    /// radical included.
    pub fn standard_radicals(&self) -> Vec<(StandardSubgroup, Vec<Mat>)> {
        let mut out: Vec<StandardSubgroup> = (1..self.n).map(StandardSubgroup::Radical).collect();
        if self.n > 2 {
            out.push(StandardSubgroup::Unipotent);
        }
        out.into_iter().map(|s| (s, self.subgroup_elements(s))).collect()
    }

    pub fn class_of(&self, m: &Mat) -> usize {
        self.group.class_index(&self.classes, m)
    }

    /// Number of elements of `elems` in each class.
    pub fn class_counts(&self, elems: &[Mat]) -> Vec<u64> {
        let mut counts = vec![0u64; self.classes.len()];
        for m in elems {
            counts[self.class_of(m)] += 1;
        }
        counts
    }

    /// `sum_c counts[c] * chi(c)`.
    pub fn weighted_sum(&self, chi: usize, counts: &[u64]) -> Cyclotomic {
        let vals = &self.table.characters[chi];
        counts
            .iter()
            .zip(vals)
            .filter(|(c, _)| **c > 0)
            .fold(Cyclotomic::zero(self.table.conductor), |acc, (c, v)| &acc + &v.scale(*c as i64))
    }

    /// The distinct class-count vectors of the cosets `g U`, over all `g`.
    fn coset_signatures(&self, radical: &[Mat]) -> Vec<Vec<u64>> {
        let sigs: Vec<Vec<u64>> = map_slice(self.exec, self.group.elements(), |g| {
            let translates: Vec<Mat> = radical.iter().map(|u| self.group.mul(g, u)).collect();
            self.class_counts(&translates)
        });
        let set: HashSet<Vec<u64>> = sigs.into_iter().collect();
        let mut out: Vec<Vec<u64>> = set.into_iter().collect();
        out.sort();
        out
    }

    /// Characters with `sum_{u in U_P} chi(g u) = 0` for every `g` and every
    /// given radical `U_P`.
    pub fn cuspidal_characters_for(&self, radicals: &[Vec<Mat>]) -> Vec<usize> {
        let sigs: Vec<Vec<Vec<u64>>> = radicals.iter().map(|r| self.coset_signatures(r)).collect();
        (0..self.table.characters.len())
            .filter(|&chi| sigs.iter().flatten().all(|s| self.weighted_sum(chi, s).is_zero()))
            .collect()
    }

    pub fn cuspidal_characters(&self) -> Vec<usize> {
        let radicals: Vec<Vec<Mat>> = self.standard_radicals().into_iter().map(|(_, r)| r).collect();
        self.cuspidal_characters_for(&radicals)
    }

    /// Characters without nonzero vectors fixed by any standard radical,
    /// the fixed-vector form of cuspidality.
    pub fn cuspidal_by_fixed_vectors(&self) -> Vec<usize> {
        let counts: Vec<Vec<u64>> = self.standard_radicals().iter().map(|(_, r)| self.class_counts(r)).collect();
        (0..self.table.characters.len())
            .filter(|&chi| counts.iter().all(|c| self.weighted_sum(chi, c).is_zero()))
            .collect()
    }

    pub fn cartan_spec(&self) -> CartanSpec {
        format!("A{}", self.n - 1).parse().expect("type A label parses")
    }

    /// The Weyl group element of the Coxeter torus.
    pub fn coxeter(&self) -> Result<WeylElement> {
        Ok(coxeter_element(&RootDatum::new(&self.cartan_spec())?))
    }

    /// Cuspidal characters whose degree equals the Deligne-Lusztig degree
    /// of the torus `w` at `q`. An empty list is a result, not an error.
    pub fn identify_dl_cuspidals(&self, w: &WeylElement) -> Result<Vec<usize>> {
        let poly = dl_cuspidal_degree_poly(&self.cartan_spec(), w)?;
        let degree = poly
            .eval_i64(self.q as i64)
            .to_i64()
            .ok_or_else(|| Error::Invariant("degree overflow".into()))?;
        Ok(self
            .cuspidal_characters()
            .into_iter()
            .filter(|&c| self.table.degree(c) == degree)
            .collect())
    }

    /// Classes of elements of `p`-power order.
    pub fn unipotent_classes(&self) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&c| {
                let mut o = self.classes.classes[c].element_order;
                while o.is_multiple_of(self.p as usize) {
                    o /= self.p as usize;
                }
                o == 1
            })
            .collect()
    }

    /// `Q(u) = chi(u)` on unipotent classes; errors unless every value is a
    /// rational integer.
    pub fn green_values(&self, chi: usize) -> Result<BTreeMap<usize, i64>> {
        self.unipotent_classes()
            .into_iter()
            .map(|c| {
                let v = &self.table.characters[chi][c];
                v.to_integer()
                    .map(|k| (c, k))
                    .ok_or_else(|| Error::Invariant(format!("Green value {v} on class {c} is not an integer")))
            })
            .collect()
    }

    /// `sum_{u in U} Q(u)^2` over the upper unitriangular subgroup.
    pub fn green_square_sum(&self, chi: usize) -> Result<i64> {
        let green = self.green_values(chi)?;
        let counts = self.class_counts(&self.subgroup_elements(StandardSubgroup::Unipotent));
        let mut total = 0i64;
        for (c, n) in counts.iter().enumerate() {
            if *n > 0 {
                let q = green
                    .get(&c)
                    .ok_or_else(|| Error::Invariant(format!("U meets non-unipotent class {c}")))?;
                total += *n as i64 * q * q;
            }
        }
        Ok(total)
    }

    /// `chi(z) / chi(1)` scaled back by `chi(1)`: the values `chi(z)` on
    /// central elements, in a fixed order.
    fn central_values(&self, chi: usize) -> Vec<Cyclotomic> {
        self.subgroup_elements(StandardSubgroup::Centre)
            .iter()
            .map(|z| self.table.characters[chi][self.class_of(z)].clone())
            .collect()
    }

    pub fn same_central_character(&self, a: usize, b: usize) -> bool {
        let (da, db) = (self.table.degree(a), self.table.degree(b));
        self.central_values(a)
            .iter()
            .zip(self.central_values(b))
            .all(|(x, y)| (&x.scale(db) - &y.scale(da)).is_zero())
    }

    /// Classes meeting `B`, and those meeting the elements of `B` whose
    /// diagonal is not scalar.
    fn borel_class_sets(&self) -> (Vec<usize>, Vec<usize>) {
        let mut all = HashSet::new();
        let mut noncentral = HashSet::new();
        let alg = self.alg();
        for b in self.subgroup_elements(StandardSubgroup::Borel) {
            let c = self.class_of(&b);
            all.insert(c);
            if (1..self.n).any(|i| alg.get(&b, i, i) != alg.get(&b, 0, 0)) {
                noncentral.insert(c);
            }
        }
        let mut a: Vec<usize> = all.into_iter().collect();
        let mut n: Vec<usize> = noncentral.into_iter().collect();
        a.sort_unstable();
        n.sort_unstable();
        (a, n)
    }

    pub fn borel_restriction_check(&self, a: usize, b: usize) -> BorelComparison {
        let (on_b, off_central) = self.borel_class_sets();
        let (xa, xb) = (&self.table.characters[a], &self.table.characters[b]);
        BorelComparison {
            same_central_character: self.same_central_character(a, b),
            agree_on_borel: on_b.iter().all(|&c| xa[c] == xb[c]),
            first_vanishes_off_central: off_central.iter().all(|&c| xa[c].is_zero()),
            second_vanishes_off_central: off_central.iter().all(|&c| xb[c].is_zero()),
        }
    }

    /// `<chi, chi>_B` by an exact class sum over the Borel subgroup.
    pub fn self_intertwining_on_borel(&self, chi: usize) -> Result<i64> {
        let borel = self.subgroup_elements(StandardSubgroup::Borel);
        let counts = self.class_counts(&borel);
        let vals = &self.table.characters[chi];
        let mut acc = Cyclotomic::zero(self.table.conductor);
        for (c, n) in counts.iter().enumerate() {
            if *n > 0 {
                acc = &acc + &(&vals[c] * &vals[c].conj()).scale(*n as i64);
            }
        }
        acc.to_integer()
            .filter(|v| v % borel.len() as i64 == 0)
            .map(|v| v / borel.len() as i64)
            .ok_or_else(|| Error::Invariant(format!("<chi, chi>_B = {acc} / {}", borel.len())))
    }

    /// `|Z|`, the number of scalar matrices in the group.
    pub fn centre_order(&self) -> usize {
        self.subgroup_elements(StandardSubgroup::Centre).len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_match_closed_form() {
        assert_eq!(build_sl(2, 3, false).unwrap().order(), 24);
        assert_eq!(build_sl(3, 2, false).unwrap().order(), 168);
        assert_eq!(build_sl(2, 4, false).unwrap().order(), 60);
        assert!(matches!(build_sl(3, 5, false), Err(Error::Guard(_))));
        assert!(matches!(build_sl(2, 13, true), Err(Error::Guard(_))));
    }

    #[test]
    fn sl23_table() {
        let lab = LieLab::new(2, 3, LabOptions::default()).unwrap();
        assert_eq!(lab.table.characters.len(), 7);
        let mut d = lab.table.degrees();
        d.sort_unstable();
        assert_eq!(d, vec![1, 1, 1, 2, 2, 2, 3]);
        lab.table.verify_columns().unwrap();
    }

    #[test]
    fn sl32_degrees() {
        let lab = LieLab::new(3, 2, LabOptions::default()).unwrap();
        assert_eq!(lab.table.degrees(), vec![1, 3, 3, 6, 7, 8]);
    }

    #[test]
    fn trivial_character_is_never_cuspidal() {
        for (n, q) in [(2, 3), (3, 2)] {
            let lab = LieLab::new(n, q, LabOptions::default()).unwrap();
            let triv = (0..lab.table.characters.len())
                .find(|&c| lab.table.characters[c].iter().all(|v| v.to_integer() == Some(1)))
                .unwrap();
            assert!(!lab.cuspidal_characters().contains(&triv));
        }
    }

    #[test]
    fn cuspidality_criteria_agree() {
        for (n, q) in [(2, 3), (2, 5), (3, 2)] {
            let lab = LieLab::new(n, q, LabOptions::default()).unwrap();
            assert_eq!(lab.cuspidal_characters(), lab.cuspidal_by_fixed_vectors(), "SL({n},{q})");
        }
    }

    #[test]
    fn sl2_green_values_are_minus_one_off_identity() {
        for q in [3, 5] {
            let lab = LieLab::new(2, q, LabOptions::default()).unwrap();
            let w = lab.coxeter().unwrap();
            let dl = lab.identify_dl_cuspidals(&w).unwrap();
            assert!(!dl.is_empty());
            for chi in dl {
                let g = lab.green_values(chi).unwrap();
                assert_eq!(g[&0], q as i64 - 1);
                for (c, v) in g {
                    if c != 0 && lab.table.classes[c].size > 1 && lab.table.classes[c].element_order == lab.p as usize {
                        assert_eq!(v, -1);
                    }
                }
            }
        }
    }

    #[test]
    fn character_against_itself_agrees_on_borel() {
        let lab = LieLab::new(2, 5, LabOptions::default()).unwrap();
        let cmp = lab.borel_restriction_check(3, 3);
        assert!(cmp.holds() && cmp.same_central_character);
    }

    #[test]
    fn cache_round_trip_reproduces_table() {
        let mut cache = TableCache::default();
        let a = LieLab::with_cache(2, 3, LabOptions::default(), Some(&mut cache)).unwrap();
        let text = cache.to_json().unwrap();
        let mut back = TableCache::from_json(&text).unwrap();
        let b = LieLab::with_cache(2, 3, LabOptions::default(), Some(&mut back)).unwrap();
        assert_eq!(a.table.characters, b.table.characters);
    }
}
