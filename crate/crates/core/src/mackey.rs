//! Mackey components of a depth-zero supercuspidal restricted to the
//! stabiliser of a special vertex, and their comparison with principal series.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::apartment::{self, chamber_of, lattice_window, local_root_system, phi_dagger};
use crate::error::{Error, Result};
use crate::exec::{map_slice, Exec};
use crate::qpoly::QPolynomial;
use crate::rational::{ceil, floor, int, is_integer, Rat};
use crate::rootdata::{dl_cuspidal_degree_poly, poincare_poly, CartanSpec, RootDatum, WeylElement, WeylGroup};

/// A central character of `Z(G_x)`, either as an opaque label or concretely.
///
/// `Concrete { orders, exponents }` describes `Z = prod Z/orders[i]` and the
/// character sending the `i`-th generator to `exp(2 pi i exponents[i] / orders[i])`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CentralCharacter {
    Tag(String),
    Concrete { orders: Vec<u64>, exponents: Vec<u64> },
}

impl CentralCharacter {
    pub fn trivial_group() -> Self {
        CentralCharacter::Concrete {
            orders: Vec::new(),
            exponents: Vec::new(),
        }
    }

    fn canonical(&self) -> Self {
        match self {
            CentralCharacter::Tag(t) => CentralCharacter::Tag(t.clone()),
            CentralCharacter::Concrete { orders, exponents } => {
                let (o, e): (Vec<u64>, Vec<u64>) = orders
                    .iter()
                    .zip(exponents)
                    .filter(|(o, _)| **o > 1)
                    .map(|(&o, &e)| (o, e % o))
                    .unzip();
                CentralCharacter::Concrete { orders: o, exponents: e }
            }
        }
    }

    /// `true` when the underlying group is known to be trivial.
    pub fn group_is_trivial(&self) -> bool {
        matches!(self.canonical(), CentralCharacter::Concrete { orders, .. } if orders.is_empty())
    }

    /// Order of the centre, when known.
    pub fn group_order(&self) -> Option<u64> {
        match self {
            CentralCharacter::Tag(_) => None,
            CentralCharacter::Concrete { orders, .. } => Some(orders.iter().product()),
        }
    }

    /// Equality of characters; errors when the two descriptions cannot be compared.
    pub fn matches(&self, other: &Self) -> Result<bool> {
        match (self.canonical(), other.canonical()) {
            (CentralCharacter::Tag(a), CentralCharacter::Tag(b)) => Ok(a == b),
            (CentralCharacter::Concrete { orders: oa, exponents: ea }, CentralCharacter::Concrete { orders: ob, exponents: eb }) => {
                if oa != ob {
                    return Err(Error::Precondition(format!(
                        "central characters live on different groups {oa:?} and {ob:?}"
                    )));
                }
                Ok(ea == eb)
            }
            (a, b) => Err(Error::Precondition(format!(
                "cannot compare central characters {a:?} and {b:?}"
            ))),
        }
    }
}

/// A depth-zero supercuspidal `c-Ind_{G_x}^G tau`, described through `tau`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupercuspidalDatum {
    pub vertex: Vec<Rat>,
    /// Weyl element whose twisted torus carries `tau`, for Deligne-Lusztig data.
    pub torus: Option<WeylElement>,
    pub degree: QPolynomial,
    pub central_character: CentralCharacter,
}

impl SupercuspidalDatum {
    /// Deligne-Lusztig cuspidal attached to the torus of `w`, which must lie in
    /// `W_x^lin`; the degree is computed from the Cartan type of `Phi_x`.
    pub fn deligne_lusztig(
        datum: &RootDatum,
        weyl: &WeylGroup,
        x: &[Rat],
        w: &WeylElement,
        central_character: CentralCharacter,
    ) -> Result<Self> {
        let lin = apartment::w_lin(weyl, x);
        let idx = weyl
            .index_of(&w.matrix)
            .ok_or_else(|| Error::Precondition("matrix is not a Weyl group element".into()))?;
        if !lin.contains(&idx) {
            return Err(Error::Precondition("torus element is not in W_x^lin".into()));
        }
        let spec = local_cartan_spec(datum, x)?;
        Ok(Self {
            vertex: x.to_vec(),
            torus: Some(w.clone()),
            degree: dl_cuspidal_degree_poly(&spec, w)?,
            central_character,
        })
    }

    /// A cuspidal datum with a formal degree and no torus information.
    pub fn formal(x: &[Rat], degree: QPolynomial, central_character: CentralCharacter) -> Self {
        Self {
            vertex: x.to_vec(),
            torus: None,
            degree,
            central_character,
        }
    }
}

/// Cartan type of the local root system `Phi_x^lin`.
pub fn local_cartan_spec(datum: &RootDatum, x: &[Rat]) -> Result<CartanSpec> {
    let loc = local_root_system(datum, x)?;
    if loc.delta_x.is_empty() {
        return Err(Error::Precondition("no affine root vanishes at x".into()));
    }
    CartanSpec::classify(&local_cartan_matrix(datum, &loc.delta_x))
}

fn local_cartan_matrix(datum: &RootDatum, delta: &[usize]) -> Vec<Vec<i64>> {
    delta
        .iter()
        .map(|&bi| delta.iter().map(|&bj| datum.eval_int(bj, datum.coroot(bi))).collect())
        .collect()
}

/// Product of the reflections in `Delta_x`, a Coxeter element of `W_x^lin`.
pub fn local_coxeter_element(datum: &RootDatum, weyl: &WeylGroup, x: &[Rat]) -> Result<WeylElement> {
    let loc = local_root_system(datum, x)?;
    let mut acc = weyl.identity_index();
    for &b in &loc.delta_x {
        let r = weyl
            .index_of(&crate::rootdata::reflection_matrix(datum, b))
            .expect("reflections lie in W");
        acc = weyl.mul(acc, r);
    }
    Ok(weyl.element(acc).clone())
}

/// `l` together with whether it lies in the interior of `X+_{x,y}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct XPlusElement {
    pub ell: Vec<i64>,
    pub interior: bool,
}

fn check_xy(datum: &RootDatum, x: &[Rat], y: &[Rat]) -> Result<()> {
    if !apartment::is_special(datum, y)? {
        return Err(Error::Precondition("y must be a special vertex".into()));
    }
    if !apartment::is_vertex(datum, x)? {
        return Err(Error::Precondition("x must be a vertex".into()));
    }
    Ok(())
}

fn diff(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(p, q)| p - q).collect()
}

fn shifted(x: &[Rat], y: &[Rat], ell: &[i64]) -> Vec<Rat> {
    x.iter()
        .zip(y)
        .zip(ell)
        .map(|((a, b), &l)| a - b + int(l))
        .collect()
}

/// Membership of `l` in `X+_{x,y}`: `None` if outside, otherwise the interior flag.
pub fn xplus_classify(datum: &RootDatum, x: &[Rat], y: &[Rat], ell: &[i64]) -> Result<Option<bool>> {
    let loc = local_root_system(datum, x)?;
    let ymx = diff(y, x);
    let mut interior = true;
    for &k in &loc.phi_x_lin_plus {
        let lhs = int(datum.eval_int(k, ell));
        let rhs = datum.eval(k, &ymx);
        if lhs < rhs {
            return Ok(None);
        }
        if lhs == rhs {
            interior = false;
        }
    }
    Ok(Some(interior))
}

/// All `l` with `||l||_inf <= bound` and `alpha(l) >= alpha(y - x)` on `Phi_x^{lin,+}`.
pub fn xplus_enumerate(datum: &RootDatum, x: &[Rat], y: &[Rat], bound: i64) -> Result<Vec<XPlusElement>> {
    check_xy(datum, x, y)?;
    let mut out = Vec::new();
    for ell in lattice_window(datum.rank(), bound) {
        if let Some(interior) = xplus_classify(datum, x, y, &ell)? {
            out.push(XPlusElement { ell, interior });
        }
    }
    Ok(out)
}

/// `sum_{alpha in Phi^dagger} (alpha(l) + ceil(alpha(x - y)) - 1)`.
pub fn eta(datum: &RootDatum, x: &[Rat], y: &[Rat], ell: &[i64]) -> Result<i64> {
    let xmy = diff(x, y);
    Ok(phi_dagger(datum, x, y, ell)?
        .into_iter()
        .map(|k| datum.eval_int(k, ell) + ceil(&datum.eval(k, &xmy)) - 1)
        .sum())
}

/// `2 rho(v) - |Phi^+|`, the closed form of `eta` when `x` is special.
pub fn eta_special(datum: &RootDatum, x: &[Rat], y: &[Rat], ell: &[i64]) -> i64 {
    let v = shifted(x, y, ell);
    let two_rho = (0..datum.num_positive()).fold(Rat::zero(), |a, k| a + datum.eval(k, &v));
    two_rho.to_integer() as i64 - datum.num_positive() as i64
}

/// `deg(tau) q^{eta} |G_y / B|` for interior `l`; `deg(tau)` when `x + l = y`.
pub fn component_degree(
    datum: &RootDatum,
    weyl: &WeylGroup,
    x: &[Rat],
    y: &[Rat],
    ell: &[i64],
    tau_degree: &QPolynomial,
) -> Result<QPolynomial> {
    check_xy(datum, x, y)?;
    if shifted(x, y, ell).iter().all(|v| v.is_zero()) {
        return Ok(tau_degree.clone());
    }
    match xplus_classify(datum, x, y, ell)? {
        None => return Err(Error::Precondition("l is not in X+_{x,y}".into())),
        Some(false) => {
            return Err(Error::Precondition(
                "l lies on the boundary of X+_{x,y}; the parabolic correction is not implemented".into(),
            ))
        }
        Some(true) => {}
    }
    let e = eta(datum, x, y, ell)?;
    if apartment::is_special(datum, x)? && e != eta_special(datum, x, y, ell) {
        return Err(Error::Invariant("the two expressions for eta disagree".into()));
    }
    Ok(tau_degree * &poincare_poly(weyl) * QPolynomial::monomial(1, e as usize))
}

/// `(r_0, s_0)` bounding the depths of the constituents of the component at `l`.
pub fn depth_bounds(datum: &RootDatum, x: &[Rat], y: &[Rat], ell: &[i64]) -> Result<(i64, i64)> {
    check_xy(datum, x, y)?;
    if xplus_classify(datum, x, y, ell)?.is_none() {
        return Err(Error::Precondition("l is not in X+_{x,y}".into()));
    }
    let v = shifted(x, y, ell);
    let loc = local_root_system(datum, x)?;
    let r0 = loc
        .delta_x
        .iter()
        .map(|&b| datum.eval(b, &v))
        .max()
        .unwrap_or_else(Rat::zero);
    debug_assert!(is_integer(&r0));
    let s0 = (0..datum.num_roots()).map(|k| floor(&datum.eval(k, &v))).max().unwrap_or(0);
    Ok((r0.to_integer() as i64, s0))
}

/// Depth intervals certify disjointness of the two components.
pub fn disjointness(
    datum: &RootDatum,
    x1: &[Rat],
    ell1: &[i64],
    x2: &[Rat],
    ell2: &[i64],
    y: &[Rat],
) -> Result<bool> {
    let (r1, s1) = depth_bounds(datum, x1, y, ell1)?;
    let (r2, s2) = depth_bounds(datum, x2, y, ell2)?;
    Ok(s1 < r2 || s2 < r1)
}

/// The unique `w in Upsilon_x` with `l + x - y in w D`, for interior `l`.
pub fn upsilon_witness(datum: &RootDatum, weyl: &WeylGroup, x: &[Rat], y: &[Rat], ell: &[i64]) -> Result<Vec<usize>> {
    let ups = apartment::upsilon(datum, weyl, x)?;
    let v = shifted(x, y, ell);
    Ok(match chamber_of(datum, weyl, &v) {
        Some(c) if ups.contains(&c) => vec![c],
        _ => Vec::new(),
    })
}

/// Which result licenses the coincidence of the two components at `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoincidenceMarker {
    /// The two cuspidal data are equal.
    Trivial,
    /// Interior component with the same torus and central character.
    InteriorTheorem,
    /// Torus meets proper parabolics only in the centre.
    AllSameCorollary,
    /// The component at `l` with `x + l = y` is `tau_i` itself.
    NonShared,
    NotCertified,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoincidenceRow {
    pub ell: Vec<i64>,
    pub interior: bool,
    pub marker: CoincidenceMarker,
}

fn conjugate_within(weyl: &WeylGroup, subgroup: &[usize], a: usize, b: usize) -> bool {
    subgroup
        .iter()
        .any(|&g| weyl.mul(weyl.mul(g, a), weyl.inverse(g)) == b)
}

/// Whether the two data come from conjugate tori of `G_x`.
pub fn same_torus(weyl: &WeylGroup, x: &[Rat], t1: &SupercuspidalDatum, t2: &SupercuspidalDatum) -> bool {
    match (&t1.torus, &t2.torus) {
        (Some(a), Some(b)) => match (weyl.index_of(&a.matrix), weyl.index_of(&b.matrix)) {
            (Some(ia), Some(ib)) => conjugate_within(weyl, &apartment::w_lin(weyl, x), ia, ib),
            _ => false,
        },
        _ => false,
    }
}

#[allow(clippy::too_many_arguments)]
pub fn coincidence_report(
    datum: &RootDatum,
    weyl: &WeylGroup,
    tau1: &SupercuspidalDatum,
    tau2: &SupercuspidalDatum,
    x: &[Rat],
    y: &[Rat],
    bound: i64,
    torus_meets_parabolics_in_centre: bool,
) -> Result<Vec<CoincidenceRow>> {
    if tau1.vertex != x || tau2.vertex != x {
        return Err(Error::Precondition("both cuspidal data must live at the vertex x".into()));
    }
    let identical = tau1 == tau2;
    let same = same_torus(weyl, x, tau1, tau2) && tau1.central_character.matches(&tau2.central_character)?;
    let rows = xplus_enumerate(datum, x, y, bound)?
        .into_iter()
        .map(|e| {
            let lands_on_y = shifted(x, y, &e.ell).iter().all(|v| v.is_zero());
            let marker = if identical {
                CoincidenceMarker::Trivial
            } else if !same {
                CoincidenceMarker::NotCertified
            } else if e.interior {
                CoincidenceMarker::InteriorTheorem
            } else if torus_meets_parabolics_in_centre && !lands_on_y {
                CoincidenceMarker::AllSameCorollary
            } else if torus_meets_parabolics_in_centre {
                CoincidenceMarker::NonShared
            } else {
                CoincidenceMarker::NotCertified
            };
            CoincidenceRow {
                ell: e.ell,
                interior: e.interior,
                marker,
            }
        })
        .collect();
    Ok(rows)
}

/// `dim V^{G_{y,n}} = |G_y/B| q^{(n-1)|Phi^+|}`.
pub fn ps_fixed_dim(datum: &RootDatum, weyl: &WeylGroup, n: u32) -> Result<QPolynomial> {
    if n < 1 {
        return Err(Error::Precondition("n must be a positive integer".into()));
    }
    Ok(poincare_poly(weyl).shift((n as usize - 1) * datum.num_positive()))
}

/// The expression `q^6 (q^2 + 1 + 1)(q + 1)` printed for `dim V^{G_{0,3}}`
/// in the worked SL(3) example, read literally.
pub fn printed_sl3_ps_dim() -> QPolynomial {
    QPolynomial::monomial(1, 6) * QPolynomial::from_i64(&[2, 0, 1]) * QPolynomial::from_i64(&[1, 1])
}

/// Comparison of the computed dimension with the printed worked-example form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsDimNote {
    pub computed: QPolynomial,
    pub printed: QPolynomial,
    pub printed_matches: bool,
    /// The printed form with `q^2 + q + 1` in place of `q^2 + 1 + 1`.
    pub corrected_matches: bool,
}

pub fn ps_dim_note(datum: &RootDatum, weyl: &WeylGroup) -> Result<PsDimNote> {
    let computed = ps_fixed_dim(datum, weyl, 3)?;
    let printed = printed_sl3_ps_dim();
    let corrected = QPolynomial::monomial(1, 6) * QPolynomial::from_i64(&[1, 1, 1]) * QPolynomial::from_i64(&[1, 1]);
    Ok(PsDimNote {
        printed_matches: printed == computed,
        corrected_matches: corrected == computed,
        computed,
        printed,
    })
}

/// `deg(tau) |Z(G_x)| / |S|` with `|S| = (q-1)^rank`, or zero when the
/// central characters do not match.
pub fn intertwining_value(
    tau_degree: &QPolynomial,
    z_order: &QPolynomial,
    rank: usize,
    central_characters_match: bool,
) -> Result<QPolynomial> {
    if !central_characters_match {
        return Ok(QPolynomial::zero());
    }
    let s = QPolynomial::from_i64(&[-1, 1]).pow(rank as u32);
    (tau_degree * z_order).div_exact(&s)
}

/// Restrictions of `^w chi` to `Z_x`, one per Weyl element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrincipalSeriesDatum {
    pub twists: Vec<(WeylElement, CentralCharacter)>,
}

impl PrincipalSeriesDatum {
    /// `W_0` acting trivially on the centre.
    pub fn trivial_action(weyl: &WeylGroup, restriction: CentralCharacter) -> Self {
        Self {
            twists: weyl.elements().iter().map(|w| (w.clone(), restriction.clone())).collect(),
        }
    }
}

/// Finds `w` with `Res_{Z_x} ^w chi = theta`.
pub fn compatibility_check(tau: &SupercuspidalDatum, chi: &PrincipalSeriesDatum) -> Result<Option<WeylElement>> {
    if tau.central_character.group_is_trivial() {
        let n = tau.vertex.len();
        return Ok(Some(WeylElement::identity(n)));
    }
    for (w, c) in &chi.twists {
        if c.matches(&tau.central_character)? {
            return Ok(Some(w.clone()));
        }
    }
    Ok(None)
}

/// One row of a Mackey report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MackeyComponent {
    pub ell: Vec<i64>,
    pub interior: bool,
    pub is_tau: bool,
    /// Upsilon element for interior rows.
    pub w_upsilon: Option<Vec<usize>>,
    pub degree: Option<QPolynomial>,
    pub depth_lower: i64,
    pub depth_upper: i64,
}

/// All Mackey components in the window, computed independently per `l`.
pub fn mackey_components(
    exec: Exec,
    datum: &RootDatum,
    weyl: &WeylGroup,
    x: &[Rat],
    y: &[Rat],
    bound: i64,
    tau_degree: &QPolynomial,
) -> Result<Vec<MackeyComponent>> {
    let elems = xplus_enumerate(datum, x, y, bound)?;
    map_slice(exec, &elems, |e| -> Result<MackeyComponent> {
        let is_tau = shifted(x, y, &e.ell).iter().all(|v| v.is_zero());
        let (depth_lower, depth_upper) = depth_bounds(datum, x, y, &e.ell)?;
        let w_upsilon = if e.interior {
            let ws = upsilon_witness(datum, weyl, x, y, &e.ell)?;
            if ws.len() != 1 {
                return Err(Error::Invariant("interior l without a unique chamber in Upsilon_x".into()));
            }
            Some(weyl.element(ws[0]).word.clone())
        } else {
            None
        };
        let degree = if e.interior || is_tau {
            Some(component_degree(datum, weyl, x, y, &e.ell, tau_degree)?)
        } else {
            None
        };
        Ok(MackeyComponent {
            ell: e.ell.clone(),
            interior: e.interior,
            is_tau,
            w_upsilon,
            degree,
            depth_lower,
            depth_upper,
        })
    })
    .into_iter()
    .collect()
}

/// Result of comparing `X+_{x,y}` with the brute-force double cosets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleComparison {
    pub classes: usize,
    pub xplus_in_window: usize,
    /// Classes whose orbit does not contain exactly one element of `X+`.
    pub bad_classes: usize,
    /// Elements of `X+` in the window that are not the representative of a class.
    pub unmatched: usize,
}

impl OracleComparison {
    pub fn agrees(&self) -> bool {
        self.bad_classes == 0 && self.unmatched == 0
    }
}

pub fn compare_with_double_coset_oracle(
    exec: Exec,
    datum: &RootDatum,
    weyl: &WeylGroup,
    x: &[Rat],
    y: &[Rat],
    bound: i64,
) -> Result<OracleComparison> {
    let classes = apartment::affine_double_cosets_bruteforce_with(
        exec,
        datum,
        weyl,
        x,
        y,
        bound,
        apartment::DEFAULT_WINDOW_GUARD,
    )?;
    let xplus = xplus_enumerate(datum, x, y, bound)?;
    let mut bad = 0;
    let mut reps = Vec::new();
    for c in &classes {
        let in_x: Vec<&Vec<i64>> = c
            .translations
            .iter()
            .filter(|t| xplus_classify(datum, x, y, t).ok().flatten().is_some())
            .collect();
        if in_x.len() != 1 {
            bad += 1;
        } else if in_x[0].iter().all(|v| v.abs() <= bound) {
            reps.push(in_x[0].clone());
        }
    }
    reps.sort();
    let mut xs: Vec<Vec<i64>> = xplus.iter().map(|e| e.ell.clone()).collect();
    xs.sort();
    let unmatched = xs.iter().filter(|e| reps.binary_search(e).is_err()).count()
        + reps.iter().filter(|e| xs.binary_search(e).is_err()).count();
    Ok(OracleComparison {
        classes: classes.len(),
        xplus_in_window: xs.len(),
        bad_classes: bad,
        unmatched,
    })
}

/// `q^eta` recomputed as the index of the segment stabiliser in the Iwahori
/// subgroup of the alcove at `y` pointing towards `x + l`.
pub fn eta_via_stabilizers(datum: &RootDatum, x: &[Rat], y: &[Rat], ell: &[i64]) -> Result<QPolynomial> {
    use crate::stabilizers::{f_omega_points, index_qpoly, ExponentFunction};
    let end: Vec<Rat> = x.iter().zip(ell).map(|(a, &l)| a + int(l)).collect();
    let seg = f_omega_points(datum, &[y.to_vec(), end])?;
    let dagger = phi_dagger(datum, x, y, ell)?;
    let iwahori = ExponentFunction {
        datum: datum.label().to_string(),
        exponents: (0..datum.num_roots())
            .map(|k| {
                let base = -datum.eval(k, y).to_integer() as i64;
                if dagger.contains(&k) {
                    base
                } else {
                    base + 1
                }
            })
            .collect(),
        torus_level: 0,
    };
    index_qpoly(&seg, &iwahori)
}
