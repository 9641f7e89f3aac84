//! Geometry of a single apartment: affine roots, local root systems,
//! chambers, and a brute-force model of the affine Weyl group.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{map_slice, Exec};
use crate::linalg;
use crate::rational::{is_integer, Rat};
use crate::rootdata::{RootDatum, WeylGroup};

/// Default bound on the `l^inf` radius accepted by the double-coset oracle.
pub const DEFAULT_WINDOW_GUARD: i64 = 6;

/// The affine function `alpha + level`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineRoot {
    pub gradient: usize,
    pub level: i64,
}

impl AffineRoot {
    pub fn eval(&self, datum: &RootDatum, x: &[Rat]) -> Rat {
        datum.eval(self.gradient, x) + Rat::from_integer(self.level as i128)
    }
}

/// Affine roots vanishing at a point and their linear parts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalRootSystem {
    pub base_point: Vec<Rat>,
    pub phi_x: Vec<AffineRoot>,
    pub phi_x_lin: Vec<usize>,
    pub phi_x_lin_plus: Vec<usize>,
    pub delta_x: Vec<usize>,
}

fn check_dim(datum: &RootDatum, x: &[Rat]) -> Result<()> {
    if x.len() != datum.rank() {
        return Err(Error::Dimension {
            expected: datum.rank(),
            got: x.len(),
        });
    }
    Ok(())
}

pub fn local_root_system(datum: &RootDatum, x: &[Rat]) -> Result<LocalRootSystem> {
    check_dim(datum, x)?;
    let mut phi_x = Vec::new();
    let mut phi_x_lin = Vec::new();
    for k in 0..datum.num_roots() {
        let v = datum.eval(k, x);
        if is_integer(&v) {
            phi_x.push(AffineRoot {
                gradient: k,
                level: -(v.to_integer() as i64),
            });
            phi_x_lin.push(k);
        }
    }
    let phi_x_lin_plus: Vec<usize> = phi_x_lin.iter().copied().filter(|&k| datum.is_positive(k)).collect();
    let delta_x = indecomposables(datum, &phi_x_lin_plus);
    Ok(LocalRootSystem {
        base_point: x.to_vec(),
        phi_x,
        phi_x_lin,
        phi_x_lin_plus,
        delta_x,
    })
}

/// Elements of a positive system that are not sums of two others.
fn indecomposables(datum: &RootDatum, plus: &[usize]) -> Vec<usize> {
    let coords: Vec<Vec<i64>> = plus.iter().map(|&k| datum.root(k)).collect();
    plus.iter()
        .enumerate()
        .filter(|&(a, _)| {
            !coords.iter().enumerate().any(|(b, cb)| {
                b != a && {
                    let diff: Vec<i64> = coords[a].iter().zip(cb).map(|(p, q)| p - q).collect();
                    coords.contains(&diff)
                }
            })
        })
        .map(|(_, &k)| k)
        .collect()
}

pub fn is_special(datum: &RootDatum, x: &[Rat]) -> Result<bool> {
    check_dim(datum, x)?;
    Ok((0..datum.num_positive()).all(|k| is_integer(&datum.eval(k, x))))
}

pub fn is_vertex(datum: &RootDatum, x: &[Rat]) -> Result<bool> {
    let loc = local_root_system(datum, x)?;
    let rows: Vec<Vec<i64>> = loc.phi_x_lin.iter().map(|&k| datum.root(k)).collect();
    Ok(!rows.is_empty() && linalg::rank_int(&rows) == datum.rank() || datum.rank() == 0)
}

/// `W_x^lin`: the Weyl elements `w` with `x - w x` in the coroot lattice.
pub fn w_lin(weyl: &WeylGroup, x: &[Rat]) -> Vec<usize> {
    (0..weyl.order())
        .filter(|&a| {
            let wx = weyl.element(a).apply(x);
            x.iter().zip(&wx).all(|(p, q)| is_integer(&(p - q)))
        })
        .collect()
}

/// `{w in W_0 : w D is contained in D_x}`, i.e. `w^{-1} beta > 0` for every `beta` in `Delta_x`.
pub fn upsilon(datum: &RootDatum, weyl: &WeylGroup, x: &[Rat]) -> Result<Vec<usize>> {
    let loc = local_root_system(datum, x)?;
    Ok((0..weyl.order())
        .filter(|&a| {
            let inv = weyl.inverse(a);
            loc.delta_x
                .iter()
                .all(|&b| datum.is_positive(weyl.act_on_root(inv, b)))
        })
        .collect())
}

/// Index of the unique `w` with `z` in the open chamber `w D`, or `None` when
/// `z` lies on a wall.
pub fn chamber_of(datum: &RootDatum, weyl: &WeylGroup, z: &[Rat]) -> Option<usize> {
    if (0..datum.num_positive()).any(|k| datum.eval(k, z).is_zero()) {
        return None;
    }
    // z in wD iff w^{-1} z is dominant
    (0..weyl.order()).find(|&a| {
        let u = weyl.element(weyl.inverse(a)).apply(z);
        (0..datum.rank()).all(|i| datum.eval(datum.simple_root_index(i), &u) > Rat::zero())
    })
}

/// `{alpha : alpha(l) > alpha(y - x)}`.
pub fn phi_dagger(datum: &RootDatum, x: &[Rat], y: &[Rat], ell: &[i64]) -> Result<Vec<usize>> {
    check_dim(datum, x)?;
    check_dim(datum, y)?;
    if ell.len() != datum.rank() {
        return Err(Error::Dimension {
            expected: datum.rank(),
            got: ell.len(),
        });
    }
    let diff: Vec<Rat> = y.iter().zip(x).map(|(a, b)| a - b).collect();
    Ok((0..datum.num_roots())
        .filter(|&k| Rat::from_integer(datum.eval_int(k, ell) as i128) > datum.eval(k, &diff))
        .collect())
}

/// The affine Weyl element `t(translation) w`, acting by `z -> w z + translation`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AffineWeylElement {
    pub translation: Vec<i64>,
    /// Index into the finite Weyl group.
    pub linear: usize,
}

impl AffineWeylElement {
    pub fn translation(t: Vec<i64>) -> Self {
        Self { translation: t, linear: 0 }
    }

    pub fn compose(&self, other: &Self, weyl: &WeylGroup) -> Self {
        let moved = weyl.element(self.linear).apply_int(&other.translation);
        Self {
            translation: self.translation.iter().zip(&moved).map(|(a, b)| a + b).collect(),
            linear: weyl.mul(self.linear, other.linear),
        }
    }

    pub fn inverse(&self, weyl: &WeylGroup) -> Self {
        let inv = weyl.inverse(self.linear);
        let t = weyl.element(inv).apply_int(&self.translation);
        Self {
            translation: t.into_iter().map(|v| -v).collect(),
            linear: inv,
        }
    }

    pub fn apply(&self, weyl: &WeylGroup, z: &[Rat]) -> Vec<Rat> {
        weyl.element(self.linear)
            .apply(z)
            .into_iter()
            .zip(&self.translation)
            .map(|(a, &t)| a + Rat::from_integer(t as i128))
            .collect()
    }

    pub fn is_translation(&self) -> bool {
        self.linear == 0
    }
}

/// The image of `W_x^lin` under `w -> t(x - w x) w`, which is the stabiliser
/// `W_x` of `x` in the affine Weyl group.
pub fn stabilizer_w_x(weyl: &WeylGroup, x: &[Rat]) -> Vec<AffineWeylElement> {
    w_lin(weyl, x)
        .into_iter()
        .map(|a| wlin_image(weyl, x, a))
        .collect()
}

pub fn wlin_image(weyl: &WeylGroup, x: &[Rat], a: usize) -> AffineWeylElement {
    let wx = weyl.element(a).apply(x);
    AffineWeylElement {
        translation: x.iter().zip(&wx).map(|(p, q)| (p - q).to_integer() as i64).collect(),
        linear: a,
    }
}

/// All integer vectors with `l^inf` norm at most `bound`.
pub fn lattice_window(rank: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::with_capacity(rank)];
    for _ in 0..rank {
        let mut next = Vec::with_capacity(out.len() * (2 * bound as usize + 1));
        for v in &out {
            for c in -bound..=bound {
                let mut w = v.clone();
                w.push(c);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// One class of `W_y \ W / W_x` meeting the enumeration window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleCosetClass {
    /// Lexicographically least element of the full double coset orbit.
    pub key: AffineWeylElement,
    /// Number of window elements in the class.
    pub window_members: usize,
    /// Translations `l` with `t(l)` in the class (over the full finite orbit).
    pub translations: Vec<Vec<i64>>,
}

/// Brute-force orbit computation of `W_y \ W / W_x` over all `t(l) w` with
/// `||l||_inf <= bound`.
pub fn affine_double_cosets_bruteforce(
    datum: &RootDatum,
    weyl: &WeylGroup,
    x: &[Rat],
    y: &[Rat],
    bound: i64,
) -> Result<Vec<DoubleCosetClass>> {
    affine_double_cosets_bruteforce_with(Exec::default(), datum, weyl, x, y, bound, DEFAULT_WINDOW_GUARD)
}

pub fn affine_double_cosets_bruteforce_with(
    exec: Exec,
    datum: &RootDatum,
    weyl: &WeylGroup,
    x: &[Rat],
    y: &[Rat],
    bound: i64,
    guard: i64,
) -> Result<Vec<DoubleCosetClass>> {
    check_dim(datum, x)?;
    check_dim(datum, y)?;
    if bound < 0 || bound > guard {
        return Err(Error::Guard(format!("window bound {bound} outside 0..={guard}")));
    }
    if !is_vertex(datum, x)? || !is_vertex(datum, y)? {
        return Err(Error::Precondition("double cosets need vertices x and y".into()));
    }
    let wx = stabilizer_w_x(weyl, x);
    let wy = stabilizer_w_x(weyl, y);
    let mut window = Vec::new();
    for t in lattice_window(datum.rank(), bound) {
        for a in 0..weyl.order() {
            window.push(AffineWeylElement {
                translation: t.clone(),
                linear: a,
            });
        }
    }
    let orbit = |g: &AffineWeylElement| -> (AffineWeylElement, Vec<Vec<i64>>) {
        let mut best: Option<AffineWeylElement> = None;
        let mut translations = Vec::new();
        for a in &wy {
            let ag = a.compose(g, weyl);
            for b in &wx {
                let e = ag.compose(b, weyl);
                if e.is_translation() {
                    translations.push(e.translation.clone());
                }
                if best.as_ref().is_none_or(|cur| e < *cur) {
                    best = Some(e);
                }
            }
        }
        translations.sort();
        translations.dedup();
        (best.expect("stabilisers are nonempty"), translations)
    };
    let keyed = map_slice(exec, &window, |g| orbit(g));
    let mut classes: BTreeMap<AffineWeylElement, DoubleCosetClass> = BTreeMap::new();
    for (key, translations) in keyed {
        classes
            .entry(key.clone())
            .or_insert_with(|| DoubleCosetClass {
                key,
                window_members: 0,
                translations,
            })
            .window_members += 1;
    }
    Ok(classes.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, parse_vector, rat};
    use crate::rootdata::CartanSpec;

    fn setup(s: &str) -> (RootDatum, WeylGroup) {
        let d = RootDatum::new(&s.parse::<CartanSpec>().unwrap()).unwrap();
        let w = WeylGroup::new(&d).unwrap();
        (d, w)
    }

    fn zero(n: usize) -> Vec<Rat> {
        vec![Rat::zero(); n]
    }

    fn c2_nonspecial(d: &RootDatum) -> Vec<Rat> {
        d.fundamental_coweight(0).iter().map(|v| v / int(2)).collect()
    }

    #[test]
    fn local_system_at_origin_is_everything() {
        let (d, _) = setup("A2");
        let loc = local_root_system(&d, &zero(2)).unwrap();
        assert_eq!(loc.phi_x_lin.len(), 6);
        let mut delta = loc.delta_x.clone();
        delta.sort();
        assert_eq!(delta, vec![d.simple_root_index(0), d.simple_root_index(1)]);
    }

    #[test]
    fn alcove_barycenter_has_no_affine_roots() {
        let (d, _) = setup("A2");
        let verts = d.alcove_vertices();
        let bary: Vec<Rat> = (0..2)
            .map(|i| verts.iter().fold(Rat::zero(), |a, v| a + v[i]) / int(3))
            .collect();
        assert!(local_root_system(&d, &bary).unwrap().phi_x.is_empty());
        assert!(!is_vertex(&d, &bary).unwrap());
    }

    #[test]
    fn c2_nonspecial_vertex() {
        let (d, w) = setup("C2");
        let x = c2_nonspecial(&d);
        let a = d.simple_root_index(0);
        let b = d.simple_root_index(1);
        assert_eq!(d.eval(a, &x), rat(1, 2));
        assert_eq!(d.eval(b, &x), int(0));
        assert!(!is_special(&d, &x).unwrap());
        assert!(is_vertex(&d, &x).unwrap());
        let loc = local_root_system(&d, &x).unwrap();
        let mut got: Vec<Vec<i64>> = loc.delta_x.iter().map(|&k| d.root(k)).collect();
        got.sort();
        assert_eq!(got, vec![vec![0, 1], vec![2, 1]]);
        assert_eq!(upsilon(&d, &w, &x).unwrap().len(), 8 / w_lin(&w, &x).len());
        assert_eq!(w_lin(&w, &x).len(), 4);
    }

    #[test]
    fn special_points() {
        let (d, w) = setup("A2");
        assert!(is_special(&d, &zero(2)).unwrap());
        assert!(is_special(&d, d.fundamental_coweight(0)).unwrap());
        assert_eq!(upsilon(&d, &w, &zero(2)).unwrap(), vec![0]);
        let bary = parse_vector("1/3,1/3").unwrap();
        assert_eq!(upsilon(&d, &w, &bary).unwrap().len(), 6);
    }

    #[test]
    fn special_implies_full_local_system() {
        for t in ["B2", "G2", "A3", "C3"] {
            let (d, _) = setup(t);
            for v in d.alcove_vertices() {
                let loc = local_root_system(&d, &v).unwrap();
                assert!(is_vertex(&d, &v).unwrap(), "{t}");
                if is_special(&d, &v).unwrap() {
                    assert_eq!(loc.phi_x_lin.len(), d.num_roots());
                }
                // Phi_x_lin is generated by Delta_x with coefficients of one sign
                let delta: Vec<Vec<i64>> = loc.delta_x.iter().map(|&k| d.root(k)).collect();
                for &k in &loc.phi_x_lin {
                    let rows: Vec<Vec<Rat>> = (0..d.rank())
                        .map(|i| {
                            let mut r: Vec<Rat> = delta.iter().map(|v| int(v[i])).collect();
                            r.push(int(d.root(k)[i]));
                            r
                        })
                        .collect();
                    let mut m = rows.clone();
                    let piv = linalg::rref(&mut m);
                    assert!(piv.iter().all(|&c| c < delta.len()));
                    let coeffs: Vec<Rat> = (0..piv.len()).map(|r| m[r][delta.len()]).collect();
                    assert!(
                        coeffs.iter().all(|c| c.is_integer() && *c >= Rat::zero())
                            || coeffs.iter().all(|c| c.is_integer() && *c <= Rat::zero())
                    );
                }
            }
        }
    }

    #[test]
    fn w_lin_is_generated_by_local_reflections() {
        for t in ["C2", "G2", "A2", "B3"] {
            let (d, w) = setup(t);
            for v in d.alcove_vertices() {
                let loc = local_root_system(&d, &v).unwrap();
                let gens: Vec<usize> = loc
                    .phi_x_lin_plus
                    .iter()
                    .map(|&k| w.index_of(&crate::rootdata::reflection_matrix(&d, k)).unwrap())
                    .collect();
                let mut closure = vec![0usize];
                let mut i = 0;
                while i < closure.len() {
                    for &g in &gens {
                        let p = w.mul(closure[i], g);
                        if !closure.contains(&p) {
                            closure.push(p);
                        }
                    }
                    i += 1;
                }
                closure.sort();
                assert_eq!(closure, w_lin(&w, &v), "{t}");
            }
        }
    }

    #[test]
    fn wlin_map_is_a_homomorphism() {
        for t in ["C2", "A3", "B2+A1"] {
            let (d, w) = setup(t);
            for v in d.alcove_vertices() {
                let lin = w_lin(&w, &v);
                for &a in &lin {
                    for &b in &lin {
                        let lhs = wlin_image(&w, &v, w.mul(a, b));
                        let rhs = wlin_image(&w, &v, a).compose(&wlin_image(&w, &v, b), &w);
                        assert_eq!(lhs, rhs);
                    }
                    assert_eq!(wlin_image(&w, &v, a).apply(&w, &v), v);
                }
            }
        }
    }

    #[test]
    fn conjugating_translations() {
        let (_, w) = setup("B2");
        let ell = vec![2, -1];
        for a in 0..w.order() {
            let g = AffineWeylElement {
                translation: vec![0, 0],
                linear: a,
            };
            let conj = g.compose(&AffineWeylElement::translation(ell.clone()), &w).compose(&g.inverse(&w), &w);
            assert_eq!(conj, AffineWeylElement::translation(w.element(a).apply_int(&ell)));
        }
    }

    #[test]
    fn phi_dagger_examples() {
        let (d, _) = setup("A2");
        let z = zero(2);
        let ell = d.coroot(d.root_index(&[1, 1]).unwrap()).to_vec();
        let mut got = phi_dagger(&d, &z, &z, &ell).unwrap();
        got.sort();
        assert_eq!(got, vec![0, 1, 2]);
        assert!(phi_dagger(&d, &z, &z, &[0, 0]).unwrap().is_empty());
    }

    #[test]
    fn a1_double_cosets() {
        let (d, w) = setup("A1");
        let z = zero(1);
        let classes = affine_double_cosets_bruteforce(&d, &w, &z, &z, 3).unwrap();
        // classes represented by dominant translations 0..=3 in the window
        let mut reps: Vec<i64> = classes
            .iter()
            .flat_map(|c| c.translations.iter().filter(|t| t[0] >= 0).map(|t| t[0]))
            .collect();
        reps.sort();
        assert_eq!(reps, vec![0, 1, 2, 3]);
        let single = affine_double_cosets_bruteforce(&d, &w, &z, &z, 0).unwrap();
        assert_eq!(single.len(), 1);
    }

    #[test]
    fn guard_rejects_large_windows() {
        let (d, w) = setup("A1");
        let z = zero(1);
        assert!(matches!(
            affine_double_cosets_bruteforce(&d, &w, &z, &z, 7),
            Err(Error::Guard(_))
        ));
    }

    #[test]
    fn chambers_partition_regular_points() {
        let (d, w) = setup("G2");
        let p = parse_vector("3/7,-2/5").unwrap();
        let c = chamber_of(&d, &w, &p).unwrap();
        let moved = w.element(w.inverse(c)).apply(&p);
        assert!((0..2).all(|i| d.eval(d.simple_root_index(i), &moved) > Rat::zero()));
    }
}
