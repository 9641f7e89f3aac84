//! Exact rationals used for apartment coordinates and polytope arithmetic.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = Ratio<i128>;

pub fn rat(n: i128, d: i128) -> Rat {
    Rat::new(n, d)
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(n as i128)
}

/// Least integer `k >= r`.
pub fn ceil(r: &Rat) -> i64 {
    r.ceil().to_integer() as i64
}

/// Greatest integer `k <= r`.
pub fn floor(r: &Rat) -> i64 {
    r.floor().to_integer() as i64
}

/// Least integer `k > r`, written `⌈r+⌉` in filtration notation.
pub fn ceil_plus(r: &Rat) -> i64 {
    floor(r) + 1
}

pub fn is_integer(r: &Rat) -> bool {
    r.is_integer()
}

/// Parses `"3"`, `"-1/2"`, or `" 4 / 6 "`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    parse_rat_at(s, 0)
}

fn parse_rat_at(s: &str, offset: usize) -> Result<Rat> {
    let lead = s.len() - s.trim_start().len();
    let t = s.trim();
    let err = |msg: &str| Error::Parse {
        column: offset + lead + 1,
        message: format!("{msg}: {t:?}"),
    };
    if t.is_empty() {
        return Err(err("empty rational"));
    }
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: i128 = n.parse().map_err(|_| err("bad numerator"))?;
    let d: i128 = d.parse().map_err(|_| err("bad denominator"))?;
    if d.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rat::new(n, d))
}

/// Parses a comma-separated exact vector such as `"1/2,0"`.
pub fn parse_vector(s: &str) -> Result<Vec<Rat>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in s.split(',') {
        out.push(parse_rat_at(piece, offset)?);
        offset += piece.len() + 1;
    }
    Ok(out)
}

pub fn format_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn format_vector(v: &[Rat]) -> String {
    v.iter().map(format_rat).collect::<Vec<_>>().join(",")
}

/// Common denominator of a rational vector.
pub fn lcm_denominator(v: &[Rat]) -> i128 {
    v.iter().fold(1i128, |acc, r| acc.lcm(r.denom()))
}

pub fn max_abs(v: &[Rat]) -> Rat {
    v.iter().map(|r| r.abs()).fold(Rat::zero(), |a, b| if b > a { b } else { a })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceilings() {
        assert_eq!(ceil(&rat(1, 2)), 1);
        assert_eq!(ceil(&rat(-1, 2)), 0);
        assert_eq!(ceil(&int(2)), 2);
        assert_eq!(ceil_plus(&int(2)), 3);
        assert_eq!(ceil_plus(&rat(3, 2)), 2);
        assert_eq!(floor(&rat(-1, 2)), -1);
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_vector("1/2,0").unwrap(), vec![rat(1, 2), int(0)]);
        assert_eq!(parse_vector(" -3 , 4/6").unwrap(), vec![int(-3), rat(2, 3)]);
        match parse_vector("1,x") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 3),
            other => panic!("{other:?}"),
        }
        assert!(parse_rat("1/0").is_err());
        assert_eq!(format_vector(&parse_vector("1/2,-2").unwrap()), "1/2,-2");
    }
}
