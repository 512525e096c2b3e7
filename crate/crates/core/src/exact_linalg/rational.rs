//! Gaussian elimination over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;
pub type RatVec = Vec<Rat>;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_rat_vec(v: &[BigInt]) -> RatVec {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

pub fn rat_dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len(), "dot product of vectors of different length");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn rat_int_dot(a: &[Rat], b: &[BigInt]) -> Rat {
    assert_eq!(a.len(), b.len(), "dot product of vectors of different length");
    a.iter().zip(b).map(|(x, y)| x * Rat::from_integer(y.clone())).sum()
}

pub fn is_integral(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_integer())
}

pub fn to_int_vec(v: &[Rat]) -> Option<Vec<BigInt>> {
    v.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
}

/// Smallest positive integer multiple of a rational vector that is a primitive
/// integer vector. Zero maps to zero.
pub fn primitive_direction(v: &[Rat]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
    super::primitive(&ints)
}

/// Reduced row echelon form in place; returns pivot columns.
#[allow(clippy::needless_range_loop)] // rows `i` and `r` are borrowed together
pub fn rref(m: &mut [RatVec]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let v = &f * &m[r][j];
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[RatVec]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

pub fn int_rank(rows: &[Vec<BigInt>]) -> usize {
    let m: Vec<RatVec> = rows.iter().map(|r| to_rat_vec(r)).collect();
    rank(&m)
}

/// Basis of `{x : rows * x = 0}` over the rationals, `ncols` unknowns.
pub fn kernel(rows: &[RatVec], ncols: usize) -> Vec<RatVec> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); ncols];
            v[f] = Rat::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Some solution of `rows * x = rhs`, or `None` if inconsistent.
pub fn solve(rows: &[RatVec], rhs: &[Rat], ncols: usize) -> Option<RatVec> {
    let mut aug: Vec<RatVec> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![Rat::zero(); ncols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[r][ncols].clone();
    }
    Some(x)
}

/// Inverse of a square rational matrix, `None` when singular.
pub fn inverse(m: &[RatVec]) -> Option<Vec<RatVec>> {
    let n = m.len();
    let mut aug: Vec<RatVec> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn parse_rational(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rat::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(Rat::from_integer),
    }
}

/// `p/q` form, or plain `p` for integers.
pub fn format_rational(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn abs_rat(x: &Rat) -> Rat {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_and_solve() {
        let rows = vec![vec![rat(1), rat(1), rat(0)]];
        let k = kernel(&rows, 3);
        assert_eq!(k.len(), 2);
        let x = solve(&[vec![rat(1), rat(1)], vec![rat(1), rat(-1)]], &[rat(1), rat(0)], 2).unwrap();
        assert_eq!(x, vec![ratio(1, 2), ratio(1, 2)]);
        assert!(solve(&[vec![rat(1)], vec![rat(1)]], &[rat(0), rat(1)], 1).is_none());
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/6"), Some(ratio(1, 2)));
        assert_eq!(parse_rational("-4"), Some(rat(-4)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(format_rational(&ratio(-2, 4)), "-1/2");
        assert_eq!(format_rational(&rat(5)), "5");
    }

    #[test]
    fn primitive_of_rational_direction() {
        assert_eq!(
            primitive_direction(&[ratio(1, 2), ratio(-1, 3)]),
            vec![BigInt::from(3), BigInt::from(-2)]
        );
    }

    #[test]
    fn inverse_matrix() {
        let m = vec![vec![rat(2), rat(1)], vec![rat(1), rat(1)]];
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, vec![vec![rat(1), rat(-1)], vec![rat(-1), rat(2)]]);
        assert!(inverse(&[vec![rat(1), rat(1)], vec![rat(2), rat(2)]]).is_none());
    }
}
