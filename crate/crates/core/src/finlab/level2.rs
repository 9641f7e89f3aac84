//! Double cosets of a level-two subgroup in `SL(3, Z/p^2)`.
//!
//! The ambient group (36.8 million elements at `p = 3`) is never listed.
//! Only the right cosets `H g` are enumerated, by breadth-first search under
//! elementary generators, with `H g = H g'` decided by `g g'^-1 in H`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finlab::group::{Mat, MatrixAlgebra, MatrixGroup};
use crate::finlab::lie::sl_order;
use crate::finlab::ring::FiniteRing;

/// The subgroup acting on the coset space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Level2Subgroup {
    /// Entries `(2,1)` and `(3,2)` divisible by `p`, entry `(3,1)` by `p^2`.
    Standard,
    /// The whole group.
    Whole,
}

impl Level2Subgroup {
    pub fn contains(self, alg: &MatrixAlgebra, p: u8, m: &Mat) -> bool {
        match self {
            Self::Whole => true,
            Self::Standard => alg.get(m, 1, 0).is_multiple_of(p) && alg.get(m, 2, 1).is_multiple_of(p) && alg.get(m, 2, 0) == 0,
        }
    }

    /// Generators: `e21(p)`, `e32(p)`, the upper elementaries, and the
    /// diagonal units of determinant one. `Whole` adds the lower
    /// elementaries.
    pub fn generators(self, alg: &MatrixAlgebra, p: u8) -> Vec<Mat> {
        let r = &alg.ring;
        let mut gens = vec![
            alg.elementary(1, 0, p),
            alg.elementary(2, 1, p),
            alg.elementary(0, 1, 1),
            alg.elementary(0, 2, 1),
            alg.elementary(1, 2, 1),
        ];
        for a in r.units() {
            let ai = r.inv(a).unwrap();
            gens.push(alg.diagonal(&[a, ai, 1]));
            gens.push(alg.diagonal(&[1, a, ai]));
        }
        if self == Self::Whole {
            gens.extend([alg.elementary(1, 0, 1), alg.elementary(2, 1, 1), alg.elementary(2, 0, 1)]);
        }
        gens
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Level2Report {
    pub p: u32,
    pub subgroup: Level2Subgroup,
    pub index: usize,
    pub expected_index: Option<usize>,
    pub double_cosets: usize,
    /// Sizes of the `H`-orbits on `H \ G`, sorted.
    pub orbit_sizes: Vec<usize>,
}

fn ambient(p: u32) -> Result<(MatrixAlgebra, u8)> {
    if p.is_multiple_of(2) || !(3..=7).contains(&p) || (p - 1).is_multiple_of(3) {
        return Err(Error::Precondition(format!("p = {p} must be odd, at most 7, with 3 not dividing p - 1")));
    }
    let ring = Arc::new(FiniteRing::integers_mod(p * p)?);
    Ok((MatrixAlgebra::new(3, ring)?, p as u8))
}

/// `|SL(3, Z/p^2)| = |SL(3, p)| p^8`.
pub fn sl3_mod_p2_order(p: u64) -> u64 {
    sl_order(3, p) * p.pow(8)
}

/// Right coset representatives of `H` in `SL(3, Z/p^2)`.
pub fn coset_representatives(p: u32, subgroup: Level2Subgroup) -> Result<(MatrixAlgebra, Vec<Mat>)> {
    let (alg, pp) = ambient(p)?;
    let gens: Vec<Mat> = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)]
        .iter()
        .map(|&(i, j)| alg.elementary(i, j, 1))
        .collect();
    let mut reps = vec![alg.identity()];
    let mut rep_inverses = vec![alg.identity()];
    let mut head = 0;
    while head < reps.len() {
        let x = reps[head];
        head += 1;
        for g in &gens {
            let y = alg.mul(&x, g);
            let known = rep_inverses.iter().any(|ri| subgroup.contains(&alg, pp, &alg.mul(&y, ri)));
            if !known {
                if reps.len() > 10_000 {
                    return Err(Error::Guard("more than 10000 cosets".into()));
                }
                rep_inverses.push(alg.inverse(&y).expect("determinant one"));
                reps.push(y);
            }
        }
    }
    Ok((alg, reps))
}

/// Counts the double cosets `H \ G / H` as orbits of `H` acting on the
/// right cosets by right multiplication.
pub fn sl3_level2_double_cosets(p: u32, subgroup: Level2Subgroup) -> Result<Level2Report> {
    let (alg, reps) = coset_representatives(p, subgroup)?;
    let pp = p as u8;
    let expected_index = match subgroup {
        Level2Subgroup::Standard => Some((p * (p + 1) * (p * p + p + 1)) as usize),
        Level2Subgroup::Whole => Some(1),
    };
    if let Some(e) = expected_index {
        if reps.len() != e {
            return Err(Error::Invariant(format!(
                "coset enumeration found index {} but expected {e}; the generator set is wrong",
                reps.len()
            )));
        }
    }
    let inverses: Vec<Mat> = reps.iter().map(|r| alg.inverse(r).unwrap()).collect();
    let coset_of = |m: &Mat| -> usize {
        inverses
            .iter()
            .position(|ri| subgroup.contains(&alg, pp, &alg.mul(m, ri)))
            .expect("every element lies in some coset")
    };
    let mut parent: Vec<usize> = (0..reps.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for h in subgroup.generators(&alg, pp) {
        for (i, r) in reps.iter().enumerate() {
            let j = coset_of(&alg.mul(r, &h));
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut sizes = std::collections::BTreeMap::new();
    for i in 0..reps.len() {
        *sizes.entry(find(&mut parent, i)).or_insert(0usize) += 1;
    }
    let mut orbit_sizes: Vec<usize> = sizes.into_values().collect();
    orbit_sizes.sort_unstable();
    Ok(Level2Report {
        p,
        subgroup,
        index: reps.len(),
        expected_index,
        double_cosets: orbit_sizes.len(),
        orbit_sizes,
    })
}

/// Cross-checks the membership predicate against the group generated by
/// [`Level2Subgroup::generators`]: returns `(|closure|, |G| / index)`, and
/// errors if a generated element fails the predicate.
pub fn generated_subgroup_check(p: u32) -> Result<(usize, u64)> {
    let (alg, pp) = ambient(p)?;
    let gens = Level2Subgroup::Standard.generators(&alg, pp);
    let order = sl3_mod_p2_order(p as u64);
    let index = (p * (p + 1) * (p * p + p + 1)) as u64;
    let h = MatrixGroup::generate("H", alg.clone(), gens, (order / index) as usize + 1)?;
    if let Some(bad) = h.elements().iter().find(|m| !Level2Subgroup::Standard.contains(&alg, pp, m)) {
        return Err(Error::Invariant(format!("generated element {bad:?} violates the predicate")));
    }
    Ok((h.order(), order / index))
}

/// Checks that reduction mod `p` maps the elementary generators of
/// `SL(3, Z/p^2)` onto generators of `SL(3, p)`; returns the order of the
/// group they generate mod `p`.
pub fn reduction_image_order(p: u32) -> Result<usize> {
    let ring = Arc::new(FiniteRing::integers_mod(p)?);
    let alg = MatrixAlgebra::new(3, ring)?;
    let gens: Vec<Mat> = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)]
        .iter()
        .map(|&(i, j)| alg.elementary(i, j, 1))
        .collect();
    Ok(MatrixGroup::generate("SL(3,p)", alg, gens, sl_order(3, p as u64) as usize + 1)?.order())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn whole_group_has_one_double_coset() {
        let r = sl3_level2_double_cosets(3, Level2Subgroup::Whole).unwrap();
        assert_eq!((r.index, r.double_cosets), (1, 1));
    }

    #[test]
    fn order_formula() {
        assert_eq!(sl3_mod_p2_order(3), 36_846_576);
        assert_eq!(36_846_576 / 156, 236_196);
        assert_eq!(reduction_image_order(3).unwrap(), 5616);
    }

    #[test]
    fn rejects_bad_primes() {
        assert!(sl3_level2_double_cosets(7, Level2Subgroup::Standard).is_err());
        assert!(sl3_level2_double_cosets(4, Level2Subgroup::Standard).is_err());
    }
}
