use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One irreducible component, e.g. `B` of rank 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanComponent {
    pub letter: char,
    pub rank: usize,
}

impl CartanComponent {
    pub fn new(letter: char, rank: usize) -> Result<Self> {
        let bad = |reason| Err(Error::InvalidCartan { letter, rank, reason });
        match letter {
            'A' if rank >= 1 => {}
            'B' | 'C' if rank >= 2 => {}
            'D' if rank >= 3 => {}
            'E' if (6..=8).contains(&rank) => {}
            'F' if rank == 4 => {}
            'G' if rank == 2 => {}
            'A' | 'B' | 'C' | 'D' | 'E' | 'F' | 'G' => return bad("rank out of range for type"),
            _ => return bad("unknown type letter"),
        }
        Ok(Self { letter, rank })
    }

    /// Bourbaki-labelled Cartan matrix with `C[i][j] = <alpha_j, alpha_i^vee>`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            c[i][j] = -1;
            c[j][i] = -1;
        };
        match self.letter {
            'A' | 'B' | 'C' | 'F' | 'G' => {
                for i in 0..n.saturating_sub(1) {
                    link(i, i + 1);
                }
            }
            'D' => {
                for i in 0..n - 2 {
                    link(i, i + 1);
                }
                link(n - 3, n - 1);
            }
            'E' => {
                // 1-3-4-5-6-7-8 chain with 2 hanging off 4 (0-based shifts)
                link(0, 2);
                link(1, 3);
                for i in 2..n - 1 {
                    link(i, i + 1);
                }
            }
            _ => unreachable!(),
        }
        match self.letter {
            'B' => c[n - 1][n - 2] = -2,
            'C' => c[n - 2][n - 1] = -2,
            'F' => c[2][1] = -2,
            'G' => c[0][1] = -3,
            _ => {}
        }
        c
    }

    /// Degrees of the basic polynomial invariants of the Weyl group.
    pub fn weyl_degrees(&self) -> Vec<usize> {
        let n = self.rank;
        match self.letter {
            'A' => (2..=n + 1).collect(),
            'B' | 'C' => (1..=n).map(|i| 2 * i).collect(),
            'D' => {
                let mut d: Vec<usize> = (1..n).map(|i| 2 * i).collect();
                d.push(n);
                d.sort_unstable();
                d
            }
            'E' => match n {
                6 => vec![2, 5, 6, 8, 9, 12],
                7 => vec![2, 6, 8, 10, 12, 14, 18],
                _ => vec![2, 8, 12, 14, 18, 20, 24, 30],
            },
            'F' => vec![2, 6, 8, 12],
            'G' => vec![2, 6],
            _ => unreachable!(),
        }
    }

    pub fn root_count(&self) -> usize {
        let n = self.rank;
        match self.letter {
            'A' => n * (n + 1),
            'B' | 'C' => 2 * n * n,
            'D' => 2 * n * (n - 1),
            'E' => [72, 126, 240][n - 6],
            'F' => 48,
            'G' => 12,
            _ => unreachable!(),
        }
    }

    pub fn weyl_order(&self) -> u64 {
        let n = self.rank as u64;
        let fact = |k: u64| (1..=k).product::<u64>();
        match self.letter {
            'A' => fact(n + 1),
            'B' | 'C' => (1u64 << n) * fact(n),
            'D' => (1u64 << (n - 1)) * fact(n),
            'E' => [51_840, 2_903_040, 696_729_600][(n - 6) as usize],
            'F' => 1152,
            'G' => 12,
            _ => unreachable!(),
        }
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.letter, 'A' | 'D' | 'E')
    }
}

/// A direct sum of irreducible Cartan types, written like `"B2+A1"`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanSpec {
    pub components: Vec<CartanComponent>,
}

impl CartanSpec {
    pub fn new(components: Vec<CartanComponent>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Parse {
                column: 1,
                message: "empty Cartan type".into(),
            });
        }
        Ok(Self { components })
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }

    /// Block-diagonal Cartan matrix of the direct sum.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut m = vec![vec![0; n]; n];
        let mut off = 0;
        for comp in &self.components {
            let c = comp.cartan_matrix();
            for i in 0..comp.rank {
                for j in 0..comp.rank {
                    m[off + i][off + j] = c[i][j];
                }
            }
            off += comp.rank;
        }
        m
    }

    /// Weyl degrees of all components, validated against the root and group
    /// counts of each component.
    pub fn weyl_degrees(&self) -> Result<Vec<usize>> {
        let mut all = Vec::new();
        for comp in &self.components {
            let d = comp.weyl_degrees();
            let prod: u64 = d.iter().map(|&x| x as u64).product();
            let exps: usize = d.iter().map(|&x| x - 1).sum();
            if d.len() != comp.rank || prod != comp.weyl_order() || 2 * exps != comp.root_count() {
                return Err(Error::Invariant(format!(
                    "degree table for {}{} inconsistent",
                    comp.letter, comp.rank
                )));
            }
            all.extend(d);
        }
        Ok(all)
    }

    pub fn has_g2(&self) -> bool {
        self.components.iter().any(|c| c.letter == 'G')
    }

    /// Identifies the Cartan type of an arbitrary (not necessarily
    /// Bourbaki-ordered) Cartan matrix. `B_n` and `C_n` are told apart by the
    /// number of short simple roots.
    pub fn classify(cartan: &[Vec<i64>]) -> Result<Self> {
        let n = cartan.len();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut nodes = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < nodes.len() {
                let i = nodes[k];
                for j in 0..n {
                    if !seen[j] && cartan[i][j] != 0 {
                        seen[j] = true;
                        nodes.push(j);
                    }
                }
                k += 1;
            }
            comps.push(classify_connected(cartan, &nodes)?);
        }
        Self::new(comps)
    }
}

fn classify_connected(c: &[Vec<i64>], nodes: &[usize]) -> Result<CartanComponent> {
    let r = nodes.len();
    let mut max_bond = 0;
    let mut degree = vec![0usize; r];
    for (a, &i) in nodes.iter().enumerate() {
        for &j in nodes {
            if i != j && c[i][j] != 0 {
                degree[a] += 1;
                max_bond = max_bond.max(c[i][j] * c[j][i]);
            }
        }
    }
    let letter = match max_bond {
        0 | 1 => {
            if let Some(branch) = degree.iter().position(|&d| d == 3) {
                let mut arms: Vec<usize> = nodes
                    .iter()
                    .filter(|&&j| c[nodes[branch]][j] != 0 && j != nodes[branch])
                    .map(|&j| arm_length(c, nodes, nodes[branch], j))
                    .collect();
                arms.sort_unstable();
                match (arms[0], arms[1]) {
                    (1, 1) => 'D',
                    (1, 2) => 'E',
                    _ => {
                        return Err(Error::Invariant("unrecognised Dynkin diagram".into()));
                    }
                }
            } else {
                'A'
            }
        }
        2 => {
            if r == 4 && degree.iter().filter(|&&d| d == 1).count() == 2 {
                // F4 has its double bond in the middle of the path
                let ends_double = nodes.iter().any(|&i| {
                    nodes.iter().filter(|&&j| j != i && c[i][j] != 0).count() == 1
                        && nodes.iter().any(|&j| j != i && c[i][j] * c[j][i] == 2)
                });
                if ends_double {
                    b_or_c(c, nodes)
                } else {
                    'F'
                }
            } else {
                b_or_c(c, nodes)
            }
        }
        3 => 'G',
        _ => return Err(Error::Invariant("not a finite-type Cartan matrix".into())),
    };
    CartanComponent::new(letter, r)
}

fn arm_length(c: &[Vec<i64>], nodes: &[usize], from: usize, first: usize) -> usize {
    let (mut prev, mut cur, mut len) = (from, first, 1);
    loop {
        let next = nodes
            .iter()
            .copied()
            .find(|&j| j != prev && j != cur && c[cur][j] != 0);
        match next {
            Some(nx) => {
                prev = cur;
                cur = nx;
                len += 1;
            }
            None => return len,
        }
    }
}

// In a double bond i=>j with C[j][i] = -2, alpha_i is the long root.
fn b_or_c(c: &[Vec<i64>], nodes: &[usize]) -> char {
    let mut short = 0;
    let mut long = 0;
    for &i in nodes {
        for &j in nodes {
            if i != j && c[i][j] * c[j][i] == 2 && c[j][i] == -2 {
                long = i;
                short = j;
            }
        }
    }
    // count nodes on the short side of the double bond (including `short`)
    let mut side = vec![short];
    let mut k = 0;
    while k < side.len() {
        let i = side[k];
        for &j in nodes {
            if j != long && !side.contains(&j) && c[i][j] != 0 {
                side.push(j);
            }
        }
        k += 1;
    }
    if side.len() == 1 && nodes.len() > 2 {
        'B'
    } else if nodes.len() == 2 {
        // B2 = C2; keep the label that matches the given ordering
        if short == nodes[0] {
            'C'
        } else {
            'B'
        }
    } else {
        'C'
    }
}

impl FromStr for CartanSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut comps = Vec::new();
        let mut col = 1;
        for piece in s.split('+') {
            let lead = piece.len() - piece.trim_start().len();
            let t = piece.trim();
            let here = col + lead;
            let mut chars = t.chars();
            let letter = chars.next().ok_or_else(|| Error::Parse {
                column: here,
                message: "expected a type letter".into(),
            })?;
            if !letter.is_ascii_uppercase() {
                return Err(Error::Parse {
                    column: here,
                    message: format!("expected an uppercase type letter, found {letter:?}"),
                });
            }
            let digits = chars.as_str();
            let rank: usize = digits.parse().map_err(|_| Error::Parse {
                column: here + 1,
                message: format!("expected a rank after {letter}, found {digits:?}"),
            })?;
            comps.push(CartanComponent::new(letter, rank)?);
            col += piece.len() + 1;
        }
        Self::new(comps)
    }
}

impl fmt::Display for CartanSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| format!("{}{}", c.letter, c.rank))
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let s: CartanSpec = "B2+A1".parse().unwrap();
        assert_eq!(s.rank(), 3);
        assert_eq!(s.to_string(), "B2+A1");
        assert!(matches!("A0".parse::<CartanSpec>(), Err(Error::InvalidCartan { .. })));
        assert!(matches!("E9".parse::<CartanSpec>(), Err(Error::InvalidCartan { .. })));
        assert!(matches!("G3".parse::<CartanSpec>(), Err(Error::InvalidCartan { .. })));
        match "A2+x1".parse::<CartanSpec>() {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 4),
            other => panic!("{other:?}"),
        }
        match "A2+Bq".parse::<CartanSpec>() {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 5),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degrees_examples() {
        let d = |s: &str| s.parse::<CartanSpec>().unwrap().weyl_degrees().unwrap();
        assert_eq!(d("A2"), vec![2, 3]);
        assert_eq!(d("C2"), vec![2, 4]);
        assert_eq!(d("G2"), vec![2, 6]);
        assert_eq!(d("D4"), vec![2, 4, 4, 6]);
        for t in ["A1", "A7", "B5", "C6", "D5", "D8", "E6", "E7", "E8", "F4", "G2"] {
            d(t);
        }
    }

    #[test]
    fn classification_round_trip() {
        for t in ["A3", "B3", "C3", "D4", "D5", "E6", "E7", "E8", "F4", "G2", "B2+A1", "A1+A1"] {
            let s: CartanSpec = t.parse().unwrap();
            let back = CartanSpec::classify(&s.cartan_matrix()).unwrap();
            assert_eq!(back, s, "{t}");
        }
    }
}
