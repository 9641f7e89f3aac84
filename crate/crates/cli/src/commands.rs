//! Subcommand implementations.

use depthzero::apartment::is_vertex;
use depthzero::mackey::{
    coincidence_report, disjointness, local_cartan_spec, local_coxeter_element, mackey_components, CentralCharacter,
    CoincidenceMarker, SupercuspidalDatum,
};
use depthzero::rational::{format_vector, parse_vector, Rat};
use depthzero::rootdata::{
    coxeter_element, group_order_poly, poincare_poly, torus_order_poly, CartanSpec, RootDatum, WeylGroup,
};
use depthzero::{Error, Exec};

use crate::report::{MackeyReport, MackeyRow, RootInfoReport};

/// Errors split by exit status: bad input versus a failed computation.
#[derive(Debug)]
pub enum CommandError {
    Usage(String),
    Runtime(String),
}

impl From<Error> for CommandError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::InvalidCartan { .. } | Error::Precondition(_) | Error::Dimension { .. } => {
                CommandError::Usage(e.to_string())
            }
            other => CommandError::Runtime(other.to_string()),
        }
    }
}

pub fn parse_spec(s: &str) -> Result<CartanSpec, CommandError> {
    s.parse::<CartanSpec>()
        .map_err(|e| CommandError::Usage(format!("--spec {s:?}: {e}")))
}

pub fn parse_point(flag: &str, s: &str, rank: usize) -> Result<Vec<Rat>, CommandError> {
    let v = parse_vector(s).map_err(|e| CommandError::Usage(format!("{flag} {s:?}: {e}")))?;
    if v.len() != rank {
        return Err(CommandError::Usage(format!("{flag} has {} coordinates, rank is {rank}", v.len())));
    }
    Ok(v)
}

pub fn rootinfo(spec: &CartanSpec) -> Result<RootInfoReport, CommandError> {
    let datum = RootDatum::new(spec)?;
    let weyl = WeylGroup::new(&datum)?;
    let positive = datum.num_positive();
    let long = (0..datum.num_roots()).filter(|&k| datum.is_long(k)).count();
    let short = (0..datum.num_roots()).filter(|&k| datum.is_short(k)).count();
    Ok(RootInfoReport {
        spec: spec.to_string(),
        rank: datum.rank(),
        roots: datum.num_roots(),
        positive_roots: positive,
        long_roots: long,
        short_roots: short,
        simply_laced: spec.components.iter().all(|c| c.is_simply_laced()),
        weyl_order: weyl.order(),
        degrees: spec.weyl_degrees()?,
        poincare: poincare_poly(&weyl),
        coxeter_torus_order: torus_order_poly(&coxeter_element(&datum)),
        group_order: group_order_poly(spec)?,
    })
}

pub struct MackeyArgs<'a> {
    pub spec: &'a CartanSpec,
    pub x: &'a str,
    pub y: &'a str,
    pub bound: i64,
    pub torus_in_centre: bool,
    pub exec: Exec,
}

/// The Mackey table for a Deligne-Lusztig cuspidal of the local Coxeter
/// torus at `x`, restricted to the stabiliser of `y`. Coincidence markers
/// compare it with the cuspidal of a distinct conjugate of that torus with
/// the same central character, when one exists.
pub fn mackey(args: &MackeyArgs) -> Result<MackeyReport, CommandError> {
    let datum = RootDatum::new(args.spec)?;
    let weyl = WeylGroup::new(&datum)?;
    let x = parse_point("--x", args.x, datum.rank())?;
    let y = parse_point("--y", args.y, datum.rank())?;
    if !is_vertex(&datum, &x)? {
        return Err(CommandError::Usage(format!("--x {} is not a vertex", format_vector(&x))));
    }
    if args.bound < 0 {
        return Err(CommandError::Usage("--bound must be nonnegative".into()));
    }
    let theta = CentralCharacter::Tag("theta".into());
    let w = local_coxeter_element(&datum, &weyl, &x)?;
    let tau = SupercuspidalDatum::deligne_lusztig(&datum, &weyl, &x, &w, theta.clone())?;
    let lin = depthzero::apartment::w_lin(&weyl, &x);
    let wi = weyl.index_of(&w.matrix).expect("Coxeter element lies in W");
    let other = lin
        .iter()
        .map(|&g| weyl.mul(weyl.mul(g, wi), weyl.inverse(g)))
        .find(|&c| c != wi)
        .map(|c| SupercuspidalDatum::deligne_lusztig(&datum, &weyl, &x, weyl.element(c), theta.clone()))
        .transpose()?
        .unwrap_or_else(|| tau.clone());
    let comps = mackey_components(args.exec, &datum, &weyl, &x, &y, args.bound, &tau.degree)?;
    let markers = coincidence_report(&datum, &weyl, &tau, &other, &x, &y, args.bound, args.torus_in_centre)?;
    let rows: Vec<MackeyRow> = comps
        .into_iter()
        .map(|component| {
            let marker = markers
                .iter()
                .find(|m| m.ell == component.ell)
                .map(|m| m.marker)
                .unwrap_or(CoincidenceMarker::NotCertified);
            MackeyRow { component, marker }
        })
        .collect();
    let mut disjoint = 0;
    let mut total = 0;
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            total += 1;
            if disjointness(&datum, &x, &rows[i].component.ell, &x, &rows[j].component.ell, &y)? {
                disjoint += 1;
            }
        }
    }
    Ok(MackeyReport {
        spec: args.spec.to_string(),
        x: format_vector(&x),
        y: format_vector(&y),
        bound: args.bound,
        local_type: local_cartan_spec(&datum, &x)?.to_string(),
        tau_degree: tau.degree,
        rows,
        disjoint_pairs: disjoint,
        total_pairs: total,
    })
}
