//! Smith normal form with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// `u * a * v == d` with `u`, `v` unimodular and `d` diagonal,
/// `d[0][0] | d[1][1] | ...`, all diagonal entries non-negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries `d_1, ..., d_min(m,n)`, zeros included.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Nonzero elementary divisors.
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.elementary_divisors().len()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let m = a.rows();
    let n = a.cols();
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if d[(i, j)].is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            // bring the smallest entry of row t / column t to the pivot
            let mut pr = t;
            let mut pc = t;
            for i in t + 1..m {
                if !d[(i, t)].is_zero() && d[(i, t)].abs() < d[(pr, pc)].abs() {
                    pr = i;
                    pc = t;
                }
            }
            for j in t + 1..n {
                if !d[(t, j)].is_zero() && d[(t, j)].abs() < d[(pr, pc)].abs() {
                    pr = t;
                    pc = j;
                }
            }
            if pr != t {
                d.swap_rows(t, pr);
                u.swap_rows(t, pr);
            }
            if pc != t {
                d.swap_cols(t, pc);
                v.swap_cols(t, pc);
            }

            let pivot = d[(t, t)].clone();
            let mut dirty = false;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&pivot);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                dirty |= !d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&pivot);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                dirty |= !d[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }

            // divisibility: fold an offending row into the pivot row and retry
            let offending = (t + 1..m)
                .find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    d.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }

        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }

    SmithDecomposition { u, d, v }
}

/// Basis of the integer kernel `{x : a x = 0}`, as vectors. The result spans a
/// saturated sublattice.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    (r..a.cols()).map(|j| snf.v.column(j)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::int_vec;

    fn check(a: &IntMatrix) -> SmithDecomposition {
        let s = smith_normal_form(a);
        assert_eq!(&(&s.u * a) * &s.v, s.d);
        assert!(s.u.is_unimodular());
        assert!(s.v.is_unimodular());
        s
    }

    #[test]
    fn identity_is_its_own_form() {
        let s = check(&IntMatrix::identity(2));
        assert_eq!(s.d, IntMatrix::identity(2));
    }

    #[test]
    fn diag_two_three() {
        let a = IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]], 2);
        let s = check(&a);
        assert_eq!(s.d, IntMatrix::from_i64_rows(&[vec![1, 0], vec![0, 6]], 2));
    }

    #[test]
    fn one_by_one() {
        let s = check(&IntMatrix::from_i64_rows(&[vec![2]], 1));
        assert_eq!(s.d, IntMatrix::from_i64_rows(&[vec![2]], 1));
        let s = check(&IntMatrix::from_i64_rows(&[vec![-7]], 1));
        assert_eq!(s.diagonal(), int_vec(&[7]));
    }

    #[test]
    fn rectangular_and_zero() {
        let s = check(&IntMatrix::zeros(2, 3));
        assert!(s.d.is_zero());
        let a = IntMatrix::from_i64_rows(&[vec![1, 1], vec![1, -1], vec![2, 0]], 2);
        let s = check(&a);
        assert_eq!(s.diagonal(), int_vec(&[1, 2]));
    }

    #[test]
    fn kernel_of_pairing_row() {
        let a = IntMatrix::from_i64_rows(&[vec![1, -1, 0]], 3);
        let k = integer_kernel(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
    }
}
