//! Restriction of Deligne-Lusztig cuspidal characters of `SL(3, q)` to the
//! lower unitriangular (Heisenberg) subgroup, and induction from it to the
//! lower triangular subgroup.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finlab::chartab::{character_table_with, CharacterTable, DixonOptions};
use crate::finlab::cyclotomic::Cyclotomic;
use crate::finlab::group::{ConjugacyClasses, Mat, MatrixAlgebra, MatrixGroup};
use crate::finlab::lie::{LieLab, StandardSubgroup};
use crate::finlab::ring::FiniteRing;

/// How an irreducible character of the Heisenberg group restricts to the
/// two simple negative root subgroups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum HeisenbergKind {
    /// Degree `q`, nontrivial on the centre.
    StoneVonNeumann,
    /// Linear, nontrivial on both simple root subgroups.
    GenericLinear,
    /// Linear, trivial on at least one simple root subgroup.
    DegenerateLinear,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeisenbergRow {
    pub degree: i64,
    pub kind: HeisenbergKind,
    pub multiplicity: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeisenbergProfile {
    pub q: u32,
    pub character_degree: i64,
    pub rows: Vec<HeisenbergRow>,
}

impl HeisenbergProfile {
    fn rows_of(&self, kind: HeisenbergKind) -> impl Iterator<Item = &HeisenbergRow> {
        self.rows.iter().filter(move |r| r.kind == kind)
    }

    /// Multiplicity `q - 1` on each of the `q - 1` Stone-von Neumann
    /// characters, 1 on each of the `(q - 1)^2` generic linear characters,
    /// 0 on the rest.
    pub fn holds(&self) -> bool {
        let m = self.q as i64 - 1;
        let svn: Vec<_> = self.rows_of(HeisenbergKind::StoneVonNeumann).collect();
        let gen: Vec<_> = self.rows_of(HeisenbergKind::GenericLinear).collect();
        svn.len() as i64 == m
            && svn.iter().all(|r| r.multiplicity == m)
            && gen.len() as i64 == m * m
            && gen.iter().all(|r| r.multiplicity == 1)
            && self.rows_of(HeisenbergKind::DegenerateLinear).all(|r| r.multiplicity == 0)
    }
}

/// A group with its classes and character table.
#[derive(Debug, Clone)]
pub struct TabulatedGroup {
    pub group: MatrixGroup,
    pub classes: ConjugacyClasses,
    pub table: CharacterTable,
}

impl TabulatedGroup {
    pub fn new(group: MatrixGroup, opts: DixonOptions) -> Result<Self> {
        let classes = group.conjugacy_classes();
        let table = character_table_with(&group, &classes, opts)?;
        Ok(Self { group, classes, table })
    }

    pub fn class_of(&self, m: &Mat) -> usize {
        self.group.class_index(&self.classes, m)
    }
}

/// Classifies the characters of the lower unitriangular group `u` of
/// `SL(3, q)` by degree and behaviour on `e21(t)` and `e32(t)`.
pub fn classify_heisenberg(u: &TabulatedGroup) -> Vec<HeisenbergKind> {
    let alg = &u.group.alg;
    let q = alg.ring.order() as u8;
    let root_classes = |i: usize, j: usize| -> Vec<usize> { (1..q).map(|t| u.class_of(&alg.elementary(i, j, t))).collect() };
    let (alpha, beta) = (root_classes(1, 0), root_classes(2, 1));
    (0..u.table.characters.len())
        .map(|c| {
            let chi = &u.table.characters[c];
            if u.table.degree(c) > 1 {
                return HeisenbergKind::StoneVonNeumann;
            }
            let nontrivial = |cls: &[usize]| cls.iter().any(|&k| chi[k].to_integer() != Some(1));
            if nontrivial(&alpha) && nontrivial(&beta) {
                HeisenbergKind::GenericLinear
            } else {
                HeisenbergKind::DegenerateLinear
            }
        })
        .collect()
}

/// The lower unitriangular subgroup of a lab's `SL(3, q)` with its table.
pub fn opposite_unipotent(lab: &LieLab, opts: DixonOptions) -> Result<TabulatedGroup> {
    if lab.n != 3 {
        return Err(Error::Precondition("Heisenberg subgroup needs SL(3, q)".into()));
    }
    let alg = lab.alg().clone();
    let sub = lab
        .group
        .subgroup_by(format!("U_op({})", lab.q), |m| StandardSubgroup::OppositeUnipotent.contains(&alg, m))?;
    TabulatedGroup::new(sub, opts)
}

/// Multiplicities `<Res chi, sigma>` over every irreducible `sigma` of the
/// lower unitriangular subgroup.
pub fn heisenberg_restriction_profile(lab: &LieLab, chi: usize, u: &TabulatedGroup) -> Result<HeisenbergProfile> {
    let restricted: Vec<Cyclotomic> = u
        .table
        .classes
        .iter()
        .map(|c| {
            let mut m: Mat = [0; 9];
            m.copy_from_slice(&c.representative);
            lab.table.characters[chi][lab.class_of(&m)].clone()
        })
        .collect();
    let kinds = classify_heisenberg(u);
    let rows = (0..u.table.characters.len())
        .map(|s| {
            Ok(HeisenbergRow {
                degree: u.table.degree(s),
                kind: kinds[s],
                multiplicity: u.table.inner_product(&restricted, &u.table.characters[s])?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HeisenbergProfile {
        q: lab.q,
        character_degree: lab.table.degree(chi),
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedRow {
    pub source_degree: i64,
    pub source_kind: HeisenbergKind,
    pub induced_degree: i64,
    pub norm: i64,
    /// `(degree, multiplicity)` of each constituent.
    pub constituents: Vec<(i64, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BorelOpReport {
    pub q: u32,
    pub borel_op_order: usize,
    pub borel_op_classes: usize,
    pub rows: Vec<InducedRow>,
}

impl BorelOpReport {
    /// Every generic linear datum induces to an irreducible of degree
    /// `(q - 1)^2`; every Stone-von Neumann datum induces to `q - 1`
    /// distinct constituents of degree `q (q - 1)`.
    pub fn holds(&self) -> bool {
        let q = self.q as i64;
        let mut seen = (false, false);
        let ok = self.rows.iter().all(|r| match r.source_kind {
            HeisenbergKind::GenericLinear => {
                seen.0 = true;
                r.norm == 1 && r.constituents == vec![((q - 1) * (q - 1), 1)]
            }
            HeisenbergKind::StoneVonNeumann => {
                seen.1 = true;
                r.norm == q - 1
                    && r.constituents.len() as i64 == q - 1
                    && r.constituents.iter().all(|&(d, m)| d == q * (q - 1) && m == 1)
            }
            HeisenbergKind::DegenerateLinear => true,
        });
        ok && seen.0 && seen.1
    }
}

/// The lower triangular subgroup of `SL(3, q)`, generated directly.
pub fn build_borel_op(q: u32) -> Result<MatrixGroup> {
    let f = Arc::new(FiniteRing::field(q)?);
    let alg = MatrixAlgebra::new(3, f.clone())?;
    let mut gens = Vec::new();
    for (i, j) in [(1, 0), (2, 1), (2, 0)] {
        for &t in &f.additive_generators() {
            gens.push(alg.elementary(i, j, t));
        }
    }
    for a in f.units() {
        let ai = f.inv(a).unwrap();
        gens.push(alg.diagonal(&[a, ai, 1]));
        gens.push(alg.diagonal(&[1, a, ai]));
    }
    let order = (q as usize).pow(3) * (q as usize - 1).pow(2);
    let g = MatrixGroup::generate(format!("B_op({q})"), alg, gens, order + 1)?;
    if g.order() != order {
        return Err(Error::Invariant(format!("|B_op| = {} but expected {order}", g.order())));
    }
    Ok(g)
}

/// Induces every generic linear and every Stone-von Neumann character of
/// `U_op` to `B_op` by the induced-character formula and decomposes the
/// results against the table of `B_op`.
pub fn borel_op_induced_decomposition(q: u32, opts: DixonOptions) -> Result<BorelOpReport> {
    if !(2..=5).contains(&q) {
        return Err(Error::Precondition(format!("q = {q} outside 2..=5")));
    }
    let b = TabulatedGroup::new(build_borel_op(q)?, opts)?;
    let alg = b.group.alg.clone();
    let u = TabulatedGroup::new(
        b.group
            .subgroup_by(format!("U_op({q})"), |m| StandardSubgroup::OppositeUnipotent.contains(&alg, m))?,
        opts,
    )?;
    let torus: Vec<(Mat, Mat)> = b
        .group
        .elements()
        .iter()
        .filter(|m| StandardSubgroup::Torus.contains(&alg, m))
        .map(|t| (*t, b.group.inverse(t)))
        .collect();
    let kinds = classify_heisenberg(&u);
    let mut rows = Vec::new();
    for (s, kind) in kinds.iter().enumerate() {
        if *kind == HeisenbergKind::DegenerateLinear {
            continue;
        }
        let phi = &u.table.characters[s];
        // Ind(phi)(x) = sum over t in T of phi(t x t^-1) for x in U, else 0
        let induced: Vec<Cyclotomic> = b
            .table
            .classes
            .iter()
            .map(|c| {
                let mut x: Mat = [0; 9];
                x.copy_from_slice(&c.representative);
                if !u.group.contains(&x) {
                    return Cyclotomic::zero(u.table.conductor);
                }
                torus.iter().fold(Cyclotomic::zero(u.table.conductor), |acc, (t, ti)| {
                    let y = alg.mul(&alg.mul(t, &x), ti);
                    &acc + &phi[u.class_of(&y)]
                })
            })
            .collect();
        let norm = b.table.inner_product(&induced, &induced)?;
        let mut constituents = Vec::new();
        for (c, chi) in b.table.characters.iter().enumerate() {
            let m = b.table.inner_product(&induced, chi)?;
            if m != 0 {
                constituents.push((b.table.degree(c), m));
            }
        }
        rows.push(InducedRow {
            source_degree: u.table.degree(s),
            source_kind: *kind,
            induced_degree: induced[0].to_integer().unwrap_or(-1),
            norm,
            constituents,
        });
    }
    Ok(BorelOpReport {
        q,
        borel_op_order: b.group.order(),
        borel_op_classes: b.classes.len(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finlab::lie::LabOptions;

    #[test]
    fn heisenberg_group_of_order_27() {
        let lab = LieLab::new(3, 3, LabOptions::default()).unwrap();
        let u = opposite_unipotent(&lab, DixonOptions::default()).unwrap();
        assert_eq!(u.group.order(), 27);
        let kinds = classify_heisenberg(&u);
        let count = |k| kinds.iter().filter(|&&x| x == k).count();
        assert_eq!(count(HeisenbergKind::StoneVonNeumann), 2);
        assert_eq!(count(HeisenbergKind::GenericLinear), 4);
        assert_eq!(count(HeisenbergKind::DegenerateLinear), 5);
    }

    #[test]
    fn borel_op_at_q3() {
        let r = borel_op_induced_decomposition(3, DixonOptions::default()).unwrap();
        assert_eq!(r.borel_op_order, 108);
        assert!(r.holds(), "{r:?}");
    }
}
