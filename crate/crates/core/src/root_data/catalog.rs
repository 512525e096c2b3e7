//! Built-in root data used by tests, examples and the command line tool.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{RootDatum, Result};
use crate::exact_linalg::{int_vec, IntMatrix};

/// `SL(2)`: `Λ = Z`, root 2, coroot 1.
pub fn sl2() -> RootDatum {
    RootDatum::from_i64(1, &[vec![2], vec![-2]], &[vec![1], vec![-1]], vec![0]).expect("valid datum")
}

/// `PGL(2)` (= `SO(3)`, type B1): `Λ = Z`, root 1, coroot 2.
pub fn pgl2() -> RootDatum {
    RootDatum::from_i64(1, &[vec![1], vec![-1]], &[vec![2], vec![-2]], vec![0]).expect("valid datum")
}

/// `GL(2)`: root `(1,-1)` with a one-dimensional centre.
pub fn gl2() -> RootDatum {
    RootDatum::from_i64(2, &[vec![1, -1], vec![-1, 1]], &[vec![1, -1], vec![-1, 1]], vec![0]).expect("valid datum")
}

/// `SL(2) × SL(2)`: roots `(2,0)`, `(0,2)`.
pub fn a1xa1() -> RootDatum {
    RootDatum::from_i64(
        2,
        &[vec![2, 0], vec![-2, 0], vec![0, 2], vec![0, -2]],
        &[vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]],
        vec![0, 2],
    )
    .expect("valid datum")
}

/// Root-lattice datum of a Cartan matrix: `Λ` has the simple roots as its
/// standard basis and `α_j∨` is the `j`-th column of `C`. Positive roots are
/// those with non-negative coefficients.
pub fn from_cartan(c: &IntMatrix) -> Result<RootDatum> {
    let n = c.rows();
    let mut roots: Vec<Vec<BigInt>> = Vec::new();
    let mut coroots: Vec<Vec<BigInt>> = Vec::new();
    let mut index: HashMap<Vec<BigInt>, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for j in 0..n {
        let mut e = vec![BigInt::zero(); n];
        e[j] = BigInt::from(1);
        let pair = (e, c.column(j));
        index.insert(pair.0.clone(), roots.len());
        roots.push(pair.0.clone());
        coroots.push(pair.1.clone());
        queue.push_back(pair);
    }
    while let Some((r, cr)) = queue.pop_front() {
        for j in 0..n {
            // s_j(x) = x − ⟨x, α_j∨⟩ α_j,   s_j(y) = y − ⟨α_j, y⟩ α_j∨
            let k: BigInt = r.iter().zip(c.column(j)).map(|(x, y)| x * y).sum();
            let mut r2 = r.clone();
            r2[j] -= &k;
            let l = cr[j].clone();
            let cj = c.column(j);
            let cr2: Vec<BigInt> = cr.iter().zip(&cj).map(|(y, a)| y - &l * a).collect();
            if !index.contains_key(&r2) {
                if roots.len() > 100_000 {
                    return Err(super::RootDataError::SingularOrAffine("root closure does not terminate".into()));
                }
                index.insert(r2.clone(), roots.len());
                roots.push(r2.clone());
                coroots.push(cr2.clone());
                queue.push_back((r2, cr2));
            }
        }
    }
    let positive = roots
        .iter()
        .enumerate()
        .filter(|(_, r)| r.iter().all(|x| !x.is_negative()))
        .map(|(i, _)| i)
        .collect();
    RootDatum::new(n, roots, coroots, positive)
}

fn cartan(rows: &[Vec<i64>]) -> RootDatum {
    from_cartan(&IntMatrix::from_i64_rows(rows, rows.len())).expect("finite Cartan matrix")
}

/// Positive system of vectors whose first nonzero coordinate is positive.
fn lex_positive(roots: &[Vec<BigInt>]) -> Vec<usize> {
    roots
        .iter()
        .enumerate()
        .filter(|(_, r)| r.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_positive()))
        .map(|(i, _)| i)
        .collect()
}

/// Type B_n (`SO(2n+1)`) or C_n (`Sp(2n)`) in ε-coordinates on `Z^n`.
fn classical_bc(n: usize, long_short_is_b: bool) -> RootDatum {
    let mut roots = Vec::new();
    let mut coroots = Vec::new();
    for i in 0..n {
        for s in [1i64, -1] {
            let mut e = vec![0i64; n];
            e[i] = s;
            let mut e2 = vec![0i64; n];
            e2[i] = 2 * s;
            if long_short_is_b {
                roots.push(int_vec(&e));
                coroots.push(int_vec(&e2));
            } else {
                roots.push(int_vec(&e2));
                coroots.push(int_vec(&e));
            }
        }
        for j in i + 1..n {
            for (si, sj) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
                let mut v = vec![0i64; n];
                v[i] = si;
                v[j] = sj;
                roots.push(int_vec(&v));
                coroots.push(int_vec(&v));
            }
        }
    }
    let positive = lex_positive(&roots);
    RootDatum::new(n, roots, coroots, positive).expect("valid datum")
}

/// `SO(5)`: type B2 on `Z^2` in ε-coordinates (the lattice is the root lattice).
pub fn b2() -> RootDatum {
    classical_bc(2, true)
}

pub fn b3() -> RootDatum {
    classical_bc(3, true)
}

/// `Sp(6)` in ε-coordinates.
pub fn c3() -> RootDatum {
    classical_bc(3, false)
}

pub fn a2() -> RootDatum {
    cartan(&[vec![2, -1], vec![-1, 2]])
}

pub fn a3() -> RootDatum {
    cartan(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]])
}

/// G2 on its root lattice; first simple root short.
pub fn g2() -> RootDatum {
    cartan(&[vec![2, -1], vec![-3, 2]])
}

/// Every built-in datum with its name.
pub fn all() -> Vec<(&'static str, RootDatum)> {
    vec![
        ("SL2", sl2()),
        ("PGL2", pgl2()),
        ("GL2", gl2()),
        ("A1xA1", a1xa1()),
        ("A2", a2()),
        ("B2", b2()),
        ("G2", g2()),
        ("A3", a3()),
        ("B3", b3()),
        ("C3", c3()),
    ]
}

pub fn by_name(name: &str) -> Option<RootDatum> {
    all().into_iter().find(|(n, _)| n.eq_ignore_ascii_case(name)).map(|(_, d)| d)
}
