//! The Coxeter torus of `SL(3, q)`: norm-one elements of `F_{q^3}` acting
//! on `F_{q^3} = F_q^3` by multiplication.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finlab::group::{Mat, MatrixAlgebra};
use crate::finlab::lie::StandardSubgroup;
use crate::finlab::ring::FiniteRing;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionRow {
    pub subgroup: String,
    pub order: usize,
    pub inside_centre: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxeterTorusReport {
    pub q: u32,
    pub torus_order: usize,
    pub expected_order: usize,
    pub centre_order: usize,
    pub intersections: Vec<IntersectionRow>,
}

impl CoxeterTorusReport {
    pub fn holds(&self) -> bool {
        self.torus_order == self.expected_order && self.intersections.iter().all(|r| r.inside_centre)
    }
}

/// A monic cubic `x^3 + c2 x^2 + c1 x + c0` over `F_q` with no root,
/// hence irreducible; returns `[c0, c1, c2]`.
fn irreducible_cubic(f: &FiniteRing) -> [u8; 3] {
    let q = f.order() as u8;
    for c0 in 1..q {
        for c1 in 0..q {
            for c2 in 0..q {
                let has_root = (0..q).any(|x| {
                    let x2 = f.mul(x, x);
                    let v = f.add(f.add(f.mul(x2, x), f.mul(c2, x2)), f.add(f.mul(c1, x), c0));
                    v == 0
                });
                if !has_root {
                    return [c0, c1, c2];
                }
            }
        }
    }
    unreachable!("irreducible cubics exist over every finite field")
}

/// Matrices of multiplication by each nonzero element of `F_{q^3}`, in the
/// basis `1, x, x^2`.
pub fn multiplication_matrices(q: u32) -> Result<(MatrixAlgebra, Vec<Mat>)> {
    let f = Arc::new(FiniteRing::field(q)?);
    let [c0, c1, c2] = irreducible_cubic(&f);
    let alg = MatrixAlgebra::new(3, f.clone())?;
    let times_x = |b: [u8; 3]| -> [u8; 3] {
        [
            f.neg(f.mul(c0, b[2])),
            f.sub(b[0], f.mul(c1, b[2])),
            f.sub(b[1], f.mul(c2, b[2])),
        ]
    };
    let qq = q as usize;
    let mut out = Vec::with_capacity(qq * qq * qq - 1);
    for code in 1..qq * qq * qq {
        let alpha = [(code % qq) as u8, ((code / qq) % qq) as u8, (code / (qq * qq)) as u8];
        let mut col = alpha;
        let mut m = [0u8; 9];
        for j in 0..3 {
            for i in 0..3 {
                m[i * 3 + j] = col[i];
            }
            col = times_x(col);
        }
        out.push(m);
    }
    Ok((alg, out))
}

/// Builds the torus, checks its order `q^2 + q + 1`, and intersects it with
/// both standard maximal parabolics and the Borel subgroup.
pub fn coxeter_torus_and_parabolic_intersection(q: u32) -> Result<CoxeterTorusReport> {
    if !(2..=4).contains(&q) {
        return Err(Error::Precondition(format!("q = {q} outside 2..=4")));
    }
    let (alg, mats) = multiplication_matrices(q)?;
    let torus: Vec<Mat> = mats.into_iter().filter(|m| alg.det(m) == 1).collect();
    let expected = (q * q + q + 1) as usize;
    if torus.len() != expected {
        return Err(Error::Invariant(format!("|T| = {} but q^2 + q + 1 = {expected}", torus.len())));
    }
    let centre_order = torus.iter().filter(|m| alg.is_scalar(m)).count();
    let intersections = [StandardSubgroup::Parabolic(1), StandardSubgroup::Parabolic(2), StandardSubgroup::Borel]
        .into_iter()
        .map(|s| {
            let meet: Vec<&Mat> = torus.iter().filter(|m| s.contains(&alg, m)).collect();
            IntersectionRow {
                subgroup: s.name(),
                order: meet.len(),
                inside_centre: meet.iter().all(|m| alg.is_scalar(m)),
            }
        })
        .collect();
    Ok(CoxeterTorusReport {
        q,
        torus_order: torus.len(),
        expected_order: expected,
        centre_order,
        intersections,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplication_is_a_homomorphism() {
        let (alg, mats) = multiplication_matrices(3).unwrap();
        assert_eq!(mats.len(), 26);
        let set: std::collections::HashSet<Mat> = mats.iter().copied().collect();
        for a in &mats {
            for b in mats.iter().step_by(5) {
                assert!(set.contains(&alg.mul(a, b)));
            }
        }
    }

    #[test]
    fn torus_at_q3_meets_parabolics_trivially() {
        let r = coxeter_torus_and_parabolic_intersection(3).unwrap();
        assert_eq!(r.torus_order, 13);
        assert!(r.intersections.iter().all(|row| row.order == 1));
        assert!(r.holds());
    }
}
