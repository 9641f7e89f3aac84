//! Subgroups of the form `S_lvl * prod_alpha G_alpha(P^{f(alpha)})`, encoded by
//! their exponent functions.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{map_slice, Exec};
use crate::lp;
use crate::qpoly::QPolynomial;
use crate::rational::{ceil, ceil_plus, int, Rat};
use crate::rootdata::RootDatum;

/// Exponents `f(alpha)` indexed like the roots of the datum, plus a torus level.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExponentFunction {
    pub datum: String,
    pub exponents: Vec<i64>,
    pub torus_level: i64,
}

impl ExponentFunction {
    pub fn exponent(&self, root: usize) -> i64 {
        self.exponents[root]
    }

    /// Same exponents with the torus factor replaced by `S_0`.
    pub fn with_torus_level_zero(&self) -> Self {
        Self {
            torus_level: 0,
            ..self.clone()
        }
    }
}

/// Which roots cut out the polytope `{z : |alpha(z - x)| <= r}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Flavor {
    All,
    Long,
    Short,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeOmega {
    pub center: Vec<Rat>,
    pub radius: Rat,
    pub flavor: Flavor,
}

/// `f(alpha) = max over the points of ceil(-alpha(z))`.
pub fn f_omega_points(datum: &RootDatum, points: &[Vec<Rat>]) -> Result<ExponentFunction> {
    if points.is_empty() {
        return Err(Error::Precondition("at least one point is required".into()));
    }
    for p in points {
        if p.len() != datum.rank() {
            return Err(Error::Dimension {
                expected: datum.rank(),
                got: p.len(),
            });
        }
    }
    let exponents = (0..datum.num_roots())
        .map(|k| points.iter().map(|p| ceil(&-datum.eval(k, p))).max().unwrap())
        .collect();
    Ok(ExponentFunction {
        datum: datum.label().to_string(),
        exponents,
        torus_level: 0,
    })
}

fn flavor_roots(datum: &RootDatum, flavor: Flavor) -> Vec<usize> {
    (0..datum.num_positive())
        .filter(|&k| match flavor {
            Flavor::All => true,
            Flavor::Long => datum.is_long(k),
            Flavor::Short => datum.is_short(k),
        })
        .collect()
}

fn polytope_constraints(datum: &RootDatum, omega: &PolytopeOmega) -> (Vec<Vec<Rat>>, Vec<Rat>) {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for k in flavor_roots(datum, omega.flavor) {
        let f: Vec<Rat> = datum.functional(k).iter().map(|&v| int(v)).collect();
        a.push(f.iter().map(|v| -v).collect());
        a.push(f);
        b.push(omega.radius);
        b.push(omega.radius);
    }
    (a, b)
}

/// `m(alpha) = max alpha(x - z)` over the polytope, for every root.
pub fn polytope_support(datum: &RootDatum, omega: &PolytopeOmega) -> Result<Vec<Rat>> {
    if omega.radius.is_negative() {
        return Err(Error::Precondition("radius must be nonnegative".into()));
    }
    let (a, b) = polytope_constraints(datum, omega);
    (0..datum.num_roots())
        .map(|k| {
            // over v = z - x the objective alpha(x - z) is -alpha(v)
            let c: Vec<Rat> = datum.functional(k).iter().map(|&v| int(-v)).collect();
            lp::maximize(&c, &a, &b)
        })
        .collect()
}

/// Same support values computed by enumerating polytope vertices.
pub fn polytope_support_by_vertices(datum: &RootDatum, omega: &PolytopeOmega, guard: u64) -> Result<Vec<Rat>> {
    let (a, b) = polytope_constraints(datum, omega);
    (0..datum.num_roots())
        .map(|k| {
            let c: Vec<Rat> = datum.functional(k).iter().map(|&v| int(-v)).collect();
            lp::maximize_by_vertices(&c, &a, &b, guard)
        })
        .collect()
}

/// `f(alpha) = ceil(-alpha(x) + m(alpha))`.
pub fn f_omega_polytope(datum: &RootDatum, omega: &PolytopeOmega) -> Result<ExponentFunction> {
    if omega.center.len() != datum.rank() {
        return Err(Error::Dimension {
            expected: datum.rank(),
            got: omega.center.len(),
        });
    }
    let m = polytope_support(datum, omega)?;
    let exponents = (0..datum.num_roots())
        .map(|k| ceil(&(m[k] - datum.eval(k, &omega.center))))
        .collect();
    Ok(ExponentFunction {
        datum: datum.label().to_string(),
        exponents,
        torus_level: 0,
    })
}

/// Exponents of `G_{x,r}` (or `G_{x,r+}` when `plus` is set).
pub fn moy_prasad_function(datum: &RootDatum, x: &[Rat], r: Rat, plus: bool) -> Result<ExponentFunction> {
    if r.is_negative() {
        return Err(Error::Precondition("depth must be nonnegative".into()));
    }
    if x.len() != datum.rank() {
        return Err(Error::Dimension {
            expected: datum.rank(),
            got: x.len(),
        });
    }
    let round = |t: &Rat| if plus { ceil_plus(t) } else { ceil(t) };
    Ok(ExponentFunction {
        datum: datum.label().to_string(),
        exponents: (0..datum.num_roots()).map(|k| round(&(r - datum.eval(k, x)))).collect(),
        torus_level: round(&r),
    })
}

fn same_datum(a: &ExponentFunction, b: &ExponentFunction) -> Result<()> {
    if a.datum != b.datum || a.exponents.len() != b.exponents.len() {
        return Err(Error::DatumMismatch(a.datum.clone(), b.datum.clone()));
    }
    Ok(())
}

/// Whether the group of `small` is contained in the group of `big`.
pub fn includes(small: &ExponentFunction, big: &ExponentFunction) -> Result<bool> {
    same_datum(small, big)?;
    Ok(small.torus_level >= big.torus_level
        && small.exponents.iter().zip(&big.exponents).all(|(s, b)| s >= b))
}

/// `[super : sub] = q^{sum (sub(alpha) - super(alpha))}`.
pub fn index_qpoly(sub: &ExponentFunction, sup: &ExponentFunction) -> Result<QPolynomial> {
    if !includes(sub, sup)? {
        return Err(Error::Precondition("subgroup is not contained in the supergroup".into()));
    }
    if sub.torus_level != sup.torus_level {
        return Err(Error::Precondition("torus levels differ; the index is not a power of q".into()));
    }
    let n: i64 = sub.exponents.iter().zip(&sup.exponents).map(|(a, b)| a - b).sum();
    Ok(QPolynomial::monomial(1, n as usize))
}

/// Comparison of `S_0 G_{x,r}` with the stabilisers of the short-root and
/// long-root polytopes of radius `r` around `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GxrOmegaReport {
    /// `G_{Omega^s}` is contained in `S_0 G_{x,r}`.
    pub incl_short: bool,
    /// `S_0 G_{x,r}` is contained in `G_{Omega^l}`.
    pub incl_long: bool,
    /// `S_0 G_{x,r} = G_{Omega^l}`.
    pub equality: bool,
    /// `G_{Omega^l} = G_{Omega}`.
    pub long_equals_all: bool,
    /// Roots at which `S_0 G_{x,r}` and `G_{Omega^l}` differ.
    pub mismatched_roots: Vec<Vec<i64>>,
}

pub fn verify_gxromega(datum: &RootDatum, x: &[Rat], r: Rat) -> Result<GxrOmegaReport> {
    if !r.is_positive() {
        return Err(Error::Precondition("radius must be positive".into()));
    }
    let poly = |flavor| PolytopeOmega {
        center: x.to_vec(),
        radius: r,
        flavor,
    };
    let mp = moy_prasad_function(datum, x, r, false)?.with_torus_level_zero();
    let fs = f_omega_polytope(datum, &poly(Flavor::Short))?;
    let fl = f_omega_polytope(datum, &poly(Flavor::Long))?;
    let fa = f_omega_polytope(datum, &poly(Flavor::All))?;
    let mismatched_roots = (0..datum.num_roots())
        .filter(|&k| mp.exponents[k] != fl.exponents[k])
        .map(|k| datum.root(k))
        .collect();
    Ok(GxrOmegaReport {
        incl_short: includes(&fs, &mp)?,
        incl_long: includes(&mp, &fl)?,
        equality: mp == fl,
        long_equals_all: fl == fa,
        mismatched_roots,
    })
}

/// Searches alcove vertices, the barycentre, and a few depths for a point where
/// `S_0 G_{x,r}` is strictly smaller than `G_{Omega^l}`.
pub fn find_gxromega_failure(datum: &RootDatum) -> Result<Option<(Vec<Rat>, Rat, GxrOmegaReport)>> {
    let verts = datum.alcove_vertices();
    let mut samples = verts.clone();
    let n = datum.rank();
    let count = int(verts.len() as i64);
    samples.push(
        (0..n)
            .map(|i| verts.iter().fold(Rat::zero(), |a, v| a + v[i]) / count)
            .collect(),
    );
    for x in &samples {
        for r in [Rat::new(1, 2), int(1), Rat::new(3, 2), int(2)] {
            let rep = verify_gxromega(datum, x, r)?;
            if !rep.equality {
                return Ok(Some((x.clone(), r, rep)));
            }
        }
    }
    Ok(None)
}

/// Outcome of [`gxromega_sweep`] over a set of points and radii.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GxrOmegaSweep {
    pub cases: usize,
    pub inclusion_failures: usize,
    pub equality_failures: usize,
    /// The first `(x, r)` where equality fails, in input order.
    pub witness: Option<(Vec<Rat>, Rat)>,
}

/// Runs [`verify_gxromega`] on every pair of point and radius.
pub fn gxromega_sweep(exec: Exec, datum: &RootDatum, points: &[Vec<Rat>], radii: &[Rat]) -> Result<GxrOmegaSweep> {
    let cases: Vec<(usize, usize)> = (0..points.len()).flat_map(|i| (0..radii.len()).map(move |j| (i, j))).collect();
    let reports = map_slice(exec, &cases, |&(i, j)| verify_gxromega(datum, &points[i], radii[j]))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let mut sweep = GxrOmegaSweep {
        cases: cases.len(),
        inclusion_failures: 0,
        equality_failures: 0,
        witness: None,
    };
    for (&(i, j), rep) in cases.iter().zip(&reports) {
        if !(rep.incl_short && rep.incl_long) {
            sweep.inclusion_failures += 1;
        }
        if !rep.equality {
            sweep.equality_failures += 1;
            sweep.witness.get_or_insert_with(|| (points[i].clone(), radii[j]));
        }
    }
    Ok(sweep)
}

/// Alcove vertices, the barycentre of the alcove, and `random` points with
/// coordinates `a / d` for `|a / d| <= 2` and `d <= 12`, drawn from a
/// seeded generator.
pub fn sample_points(datum: &RootDatum, random: usize, seed: u64) -> Vec<Vec<Rat>> {
    use rand::{Rng, SeedableRng};
    let verts = datum.alcove_vertices();
    let n = datum.rank();
    let count = int(verts.len() as i64);
    let mut out = verts.clone();
    out.push(
        (0..n)
            .map(|i| verts.iter().fold(Rat::zero(), |a, v| a + v[i]) / count)
            .collect(),
    );
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random {
        out.push(
            (0..n)
                .map(|_| {
                    let d: i128 = rng.gen_range(1..=12);
                    Rat::new(rng.gen_range(-2 * d..=2 * d), d)
                })
                .collect(),
        );
    }
    out
}

/// The radii used by the standard sweep.
pub fn standard_radii() -> Vec<Rat> {
    vec![Rat::new(1, 2), int(1), Rat::new(3, 2), int(2)]
}
