//! Exact rational linear programming over polytopes `{v : A v <= b}` that
//! contain the origin (`b >= 0`).

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::Rat;

/// Default limit on the number of constraint subsets the vertex oracle visits.
pub const DEFAULT_VERTEX_GUARD: u64 = 2_000_000;

fn validate(c: &[Rat], a: &[Vec<Rat>], b: &[Rat]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::Dimension {
            expected: a.len(),
            got: b.len(),
        });
    }
    if let Some(row) = a.iter().find(|r| r.len() != c.len()) {
        return Err(Error::Dimension {
            expected: c.len(),
            got: row.len(),
        });
    }
    if b.iter().any(|v| v.is_negative()) {
        return Err(Error::Lp("the origin must be feasible (b >= 0)".into()));
    }
    Ok(())
}

/// Maximises `c . v` over `{v in Q^n : A v <= b}` with the primal simplex
/// method and Bland's anti-cycling rule. Free variables are split as
/// `v = v+ - v-`; the slack basis is feasible because `b >= 0`.
pub fn maximize(c: &[Rat], a: &[Vec<Rat>], b: &[Rat]) -> Result<Rat> {
    validate(c, a, b)?;
    let n = c.len();
    let m = a.len();
    let cols = 2 * n + m;
    // tableau rows: constraints, then the objective row holding reduced costs
    let mut t: Vec<Vec<Rat>> = Vec::with_capacity(m + 1);
    for (i, row) in a.iter().enumerate() {
        let mut r = vec![Rat::zero(); cols + 1];
        for j in 0..n {
            r[j] = row[j];
            r[n + j] = -row[j];
        }
        r[2 * n + i] = Rat::one();
        r[cols] = b[i];
        t.push(r);
    }
    let mut obj = vec![Rat::zero(); cols + 1];
    for j in 0..n {
        obj[j] = c[j];
        obj[n + j] = -c[j];
    }
    t.push(obj);
    let mut basis: Vec<usize> = (0..m).map(|i| 2 * n + i).collect();

    loop {
        let Some(enter) = (0..cols).find(|&j| t[m][j].is_positive()) else {
            // objective row stores c - c_B B^{-1} A and -(current value) in the last column
            return Ok(-t[m][cols]);
        };
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = t[i][cols] / t[i][enter];
                leave = match leave {
                    None => Some(i),
                    Some(l) => {
                        let best = t[l][cols] / t[l][enter];
                        if ratio < best || (ratio == best && basis[i] < basis[l]) {
                            Some(i)
                        } else {
                            Some(l)
                        }
                    }
                };
            }
        }
        let Some(p) = leave else {
            return Err(Error::Lp("objective is unbounded".into()));
        };
        let inv = Rat::one() / t[p][enter];
        for v in t[p].iter_mut() {
            *v *= inv;
        }
        for i in 0..=m {
            if i != p && !t[i][enter].is_zero() {
                let f = t[i][enter];
                for j in 0..=cols {
                    let d = t[p][j] * f;
                    t[i][j] -= d;
                }
            }
        }
        basis[p] = enter;
    }
}

/// Maximum of `c . v` over all vertices of `{A v <= b}`, found by solving
/// every `n`-subset of constraints as equalities. Intended as an independent
/// check of [`maximize`] on small instances.
pub fn maximize_by_vertices(c: &[Rat], a: &[Vec<Rat>], b: &[Rat], guard: u64) -> Result<Rat> {
    validate(c, a, b)?;
    let n = c.len();
    let m = a.len();
    let count = binomial(m as u64, n as u64);
    if count > guard {
        return Err(Error::Guard(format!("{count} constraint subsets exceed the limit {guard}")));
    }
    let mut best: Option<Rat> = None;
    let mut subset: Vec<usize> = (0..n).collect();
    if n > m {
        return Err(Error::Lp("fewer constraints than variables; polytope unbounded".into()));
    }
    loop {
        let rows: Vec<Vec<Rat>> = subset.iter().map(|&i| a[i].clone()).collect();
        let rhs: Vec<Rat> = subset.iter().map(|&i| b[i]).collect();
        if let Some(v) = linalg::solve(&rows, &rhs) {
            let feasible = a.iter().zip(b).all(|(row, bi)| dot(row, &v) <= *bi);
            if feasible {
                let val = dot(c, &v);
                if best.is_none_or(|cur| val > cur) {
                    best = Some(val);
                }
            }
        }
        // next n-subset in lexicographic order
        let mut i = n;
        loop {
            if i == 0 {
                return best.ok_or_else(|| Error::Lp("polytope has no vertices".into()));
            }
            i -= 1;
            if subset[i] < m - n + i {
                subset[i] += 1;
                for j in i + 1..n {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |s, (x, y)| s + x * y)
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use proptest::prelude::*;

    fn square() -> (Vec<Vec<Rat>>, Vec<Rat>) {
        let a = vec![
            vec![int(1), int(0)],
            vec![int(-1), int(0)],
            vec![int(0), int(1)],
            vec![int(0), int(-1)],
        ];
        (a, vec![int(1); 4])
    }

    #[test]
    fn unit_square() {
        let (a, b) = square();
        let c = vec![int(2), int(3)];
        assert_eq!(maximize(&c, &a, &b).unwrap(), int(5));
        assert_eq!(maximize_by_vertices(&c, &a, &b, 100).unwrap(), int(5));
    }

    #[test]
    fn unbounded_and_infeasible_origin() {
        let a = vec![vec![int(1), int(0)]];
        assert!(matches!(maximize(&[int(0), int(1)], &a, &[int(1)]), Err(Error::Lp(_))));
        assert!(matches!(maximize(&[int(1), int(0)], &a, &[int(-1)]), Err(Error::Lp(_))));
    }

    #[test]
    fn degenerate_hexagon() {
        // |v1| <= r, |v2| <= r, |v1 + v2| <= r with r = 3/2 and a redundant copy
        let r = rat(3, 2);
        let rows = [[1, 0], [0, 1], [1, 1], [1, 1]];
        let mut a = Vec::new();
        let mut b = Vec::new();
        for row in rows {
            a.push(vec![int(row[0]), int(row[1])]);
            a.push(vec![int(-row[0]), int(-row[1])]);
            b.push(r);
            b.push(r);
        }
        let c = vec![rat(2, 3), rat(1, 3)];
        assert_eq!(maximize(&c, &a, &b).unwrap(), r * rat(2, 3));
        assert_eq!(maximize_by_vertices(&c, &a, &b, 1000).unwrap(), r * rat(2, 3));
    }

    proptest! {
        #[test]
        fn simplex_matches_vertex_enumeration(
            rows in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 3), 4..9),
            rhs in proptest::collection::vec(0i64..=4, 9),
            obj in proptest::collection::vec(-3i64..=3, 3),
        ) {
            // close the polytope with a bounding box so the optimum exists
            let mut a: Vec<Vec<Rat>> = rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
            let mut b: Vec<Rat> = rhs.iter().take(a.len()).map(|&v| int(v)).collect();
            for i in 0..3 {
                for s in [1, -1] {
                    let mut e = vec![int(0); 3];
                    e[i] = int(s);
                    a.push(e);
                    b.push(int(5));
                }
            }
            let c: Vec<Rat> = obj.iter().map(|&v| int(v)).collect();
            let s = maximize(&c, &a, &b).unwrap();
            let v = maximize_by_vertices(&c, &a, &b, 100_000).unwrap();
            prop_assert_eq!(s, v);
        }
    }
}
