use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Row-style Hermite normal form of the lattice spanned by the rows of `gens`.
///
/// Returned rows are the canonical basis: echelon shape, positive pivots,
/// entries above each pivot reduced into `[0, pivot)`. Zero rows are dropped,
/// so the row count equals the rank.
pub fn hermite_rows(gens: &IntMatrix) -> IntMatrix {
    let mut h = gens.clone();
    let m = h.rows();
    let n = h.cols();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            // pick the row with smallest nonzero |entry| in column c
            let mut piv: Option<usize> = None;
            for i in r..m {
                if h[(i, c)].is_zero() {
                    continue;
                }
                if piv.is_none_or(|p| h[(i, c)].abs() < h[(p, c)].abs()) {
                    piv = Some(i);
                }
            }
            let Some(p) = piv else { break };
            h.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..m {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = -h[(i, c)].div_floor(&h[(r, c)]);
                h.add_row_multiple(i, r, &q);
                if !h[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
        }
        for i in 0..r {
            let q = -h[(i, c)].div_floor(&h[(r, c)]);
            h.add_row_multiple(i, r, &q);
        }
        r += 1;
    }
    let rows: Vec<Vec<BigInt>> = (0..r).map(|i| h.row(i).to_vec()).collect();
    IntMatrix::from_rows(&rows, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_for_equal_lattices() {
        let a = IntMatrix::from_i64_rows(&[vec![1, 1], vec![1, -1]], 2);
        let b = IntMatrix::from_i64_rows(&[vec![2, 0], vec![1, 1], vec![3, 1]], 2);
        assert_eq!(hermite_rows(&a), hermite_rows(&b));
        assert_eq!(hermite_rows(&a), IntMatrix::from_i64_rows(&[vec![1, 1], vec![0, 2]], 2));
    }

    #[test]
    fn zero_rows_dropped() {
        let a = IntMatrix::from_i64_rows(&[vec![0, 0], vec![0, -3], vec![0, 6]], 2);
        assert_eq!(hermite_rows(&a), IntMatrix::from_i64_rows(&[vec![0, 3]], 2));
        assert_eq!(hermite_rows(&IntMatrix::zeros(0, 3)).rows(), 0);
    }
}
