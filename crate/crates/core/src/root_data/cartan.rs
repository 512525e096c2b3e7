//! Cartan matrices and recognition of finite Dynkin types.
//!
//! Recognition works on the weighted Coxeter diagram: nodes are simple roots,
//! an edge joins `i` and `j` when `C[i][j] ≠ 0`, and carries the multiplicity
//! `C[i][j]·C[j][i]`. Each connected component is reduced to a canonical
//! shape (path, branch arms, position and orientation of the multiple edge)
//! which determines its type.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{Result, RootDataError, RootDatum};
use crate::exact_linalg::{dot, IntMatrix};

pub fn cartan_matrix(datum: &RootDatum, simple: &[usize]) -> IntMatrix {
    let roots: Vec<Vec<BigInt>> = simple.iter().map(|&i| datum.root(i).to_vec()).collect();
    let coroots: Vec<Vec<BigInt>> = simple.iter().map(|&i| datum.coroot(i).to_vec()).collect();
    cartan_from_pairs(&roots, &coroots)
}

pub fn cartan_from_pairs(roots: &[Vec<BigInt>], coroots: &[Vec<BigInt>]) -> IntMatrix {
    let k = roots.len();
    let mut c = IntMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            c[(i, j)] = dot(&roots[i], &coroots[j]);
        }
    }
    c
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DynkinComponent {
    pub family: Family,
    pub rank: usize,
}

/// A product of irreducible finite types, components sorted. The empty
/// product is the trivial type.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DynkinType {
    pub components: Vec<DynkinComponent>,
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

impl DynkinComponent {
    pub fn weyl_order(&self) -> BigInt {
        let n = self.rank;
        match self.family {
            Family::A => factorial(n + 1),
            Family::B | Family::C => BigInt::from(2).pow(n as u32) * factorial(n),
            Family::D => BigInt::from(2).pow(n as u32 - 1) * factorial(n),
            Family::E => BigInt::from(match n {
                6 => 51_840u64,
                7 => 2_903_040,
                _ => 696_729_600,
            }),
            Family::F => BigInt::from(1152),
            Family::G => BigInt::from(12),
        }
    }
}

impl DynkinType {
    pub fn weyl_order(&self) -> BigInt {
        self.components.iter().map(DynkinComponent::weyl_order).product()
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.components.is_empty()
    }
}

impl fmt::Display for DynkinComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "trivial");
        }
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl std::str::FromStr for DynkinType {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        if s == "trivial" || s.is_empty() {
            return Ok(DynkinType::default());
        }
        let mut components = Vec::new();
        for part in s.split('x') {
            let mut chars = part.chars();
            let family = match chars.next() {
                Some('A') => Family::A,
                Some('B') => Family::B,
                Some('C') => Family::C,
                Some('D') => Family::D,
                Some('E') => Family::E,
                Some('F') => Family::F,
                Some('G') => Family::G,
                _ => return Err(format!("unknown Dynkin family in {part:?}")),
            };
            let rank: usize = chars.as_str().parse().map_err(|_| format!("bad rank in {part:?}"))?;
            components.push(DynkinComponent { family, rank });
        }
        components.sort();
        Ok(DynkinType { components })
    }
}

fn entry(c: &IntMatrix, i: usize, j: usize) -> i64 {
    c[(i, j)].to_i64().unwrap_or(i64::MIN)
}

pub fn recognize_finite_type(c: &IntMatrix) -> Result<DynkinType> {
    let n = c.rows();
    if !c.is_square() {
        return Err(RootDataError::InvalidCartan("matrix is not square".into()));
    }
    for i in 0..n {
        if c[(i, i)] != BigInt::from(2) {
            return Err(RootDataError::InvalidCartan(format!("diagonal entry {i} is not 2")));
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            if c[(i, j)] > BigInt::zero() {
                return Err(RootDataError::InvalidCartan(format!("entry ({i},{j}) is positive")));
            }
            if c[(i, j)].is_zero() != c[(j, i)].is_zero() {
                return Err(RootDataError::InvalidCartan(format!("zero pattern of ({i},{j}) is not symmetric")));
            }
        }
    }

    let mut seen = vec![false; n];
    let mut components = Vec::new();
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
                if !seen[j] && !c[(i, j)].is_zero() {
                    seen[j] = true;
                    nodes.push(j);
                }
            }
            k += 1;
        }
        components.push(classify_component(c, &nodes)?);
    }
    components.sort();
    Ok(DynkinType { components })
}

fn classify_component(c: &IntMatrix, nodes: &[usize]) -> Result<DynkinComponent> {
    let affine = |why: &str| Err(RootDataError::SingularOrAffine(why.to_string()));
    let k = nodes.len();
    let mut adj: Vec<Vec<usize>> = vec![vec![]; k];
    let mut edges = 0;
    // (a, b) local indices of the unique multiple edge, with a long and b short
    let mut multiple: Option<(usize, usize, i64)> = None;
    for a in 0..k {
        for b in a + 1..k {
            let (i, j) = (nodes[a], nodes[b]);
            let cij = entry(c, i, j);
            if cij == 0 {
                continue;
            }
            let cji = entry(c, j, i);
            let m = cij.saturating_mul(cji);
            edges += 1;
            adj[a].push(b);
            adj[b].push(a);
            match m {
                1 => {}
                2 | 3 => {
                    if multiple.is_some() {
                        return affine("more than one multiple edge");
                    }
                    // C[i][j] = <α_i, α_j∨>; |C[i][j]| > 1 means α_i is the long root
                    multiple = Some(if cij.abs() > cji.abs() { (a, b, m) } else { (b, a, m) });
                }
                _ => return affine("edge multiplicity at least 4"),
            }
        }
    }
    if edges != k - 1 {
        return affine("diagram contains a cycle");
    }
    let degrees: Vec<usize> = adj.iter().map(Vec::len).collect();
    let max_deg = degrees.iter().copied().max().unwrap_or(0);
    if max_deg > 3 {
        return affine("node of degree at least 4");
    }
    let branch_nodes = degrees.iter().filter(|&&d| d == 3).count();

    if let Some((long, short, m)) = multiple {
        if branch_nodes > 0 {
            return affine("branch node together with a multiple edge");
        }
        if m == 3 {
            return if k == 2 { Ok(DynkinComponent { family: Family::G, rank: 2 }) } else { affine("triple edge in a diagram with more than two nodes") };
        }
        if k == 2 {
            return Ok(DynkinComponent { family: Family::B, rank: 2 });
        }
        if degrees[short] == 1 {
            return Ok(DynkinComponent { family: Family::B, rank: k });
        }
        if degrees[long] == 1 {
            return Ok(DynkinComponent { family: Family::C, rank: k });
        }
        return if k == 4 { Ok(DynkinComponent { family: Family::F, rank: 4 }) } else { affine("double edge in the interior of a long path") };
    }

    match branch_nodes {
        0 => Ok(DynkinComponent { family: Family::A, rank: k }),
        1 => {
            let centre = degrees.iter().position(|&d| d == 3).expect("branch node");
            let mut arms: Vec<usize> = adj[centre]
                .iter()
                .map(|&first| {
                    let (mut prev, mut cur, mut len) = (centre, first, 1);
                    while degrees[cur] == 2 {
                        let next = adj[cur].iter().copied().find(|&x| x != prev).expect("path continues");
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                    len
                })
                .collect();
            arms.sort_unstable();
            match (arms[0], arms[1], arms[2]) {
                (1, 1, _) => Ok(DynkinComponent { family: Family::D, rank: k }),
                (1, 2, 2) | (1, 2, 3) | (1, 2, 4) => Ok(DynkinComponent { family: Family::E, rank: k }),
                _ => affine("branched diagram outside D and E"),
            }
        }
        _ => affine("more than one branch node"),
    }
}
