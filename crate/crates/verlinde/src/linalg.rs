//! Small exact linear algebra over the rationals: just enough for Gram
//! matrices, kernel enumeration and the Koszul rank computations. Matrices
//! are dense `Vec<Vec<BigRational>>`; everything is fraction-free-safe via
//! arbitrary precision.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn vec_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Rat], c: &Rat) -> Vec<Rat> {
    a.iter().map(|x| x * c).collect()
}

pub fn vec_is_zero(a: &[Rat]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// Determinant by fraction-free Gaussian elimination.
pub fn determinant(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut det = Rat::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero());
        let Some(p) = pivot else {
            return Rat::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        det *= &a[col][col];
        let inv = a[col][col].recip();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] * &inv;
            for c in col..n {
                let sub = &factor * &a[col][c];
                a[r][c] = &a[r][c] - &sub;
            }
        }
    }
    det
}

/// Inverse via Gauss–Jordan; `None` if singular.
pub fn inverse(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(p, col);
        let inv = a[col][col].recip();
        for c in 0..2 * n {
            a[col][c] = &a[col][c] * &inv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..2 * n {
                let sub = &f * &a[col][c];
                a[r][c] = &a[r][c] - &sub;
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Rank of a (possibly non-square) matrix.
pub fn rank(m: &[Vec<Rat>]) -> usize {
    if m.is_empty() || m[0].is_empty() {
        return 0;
    }
    let rows = m.len();
    let cols = m[0].len();
    let mut a = m.to_vec();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][col].recip();
        for i in r + 1..rows {
            if a[i][col].is_zero() {
                continue;
            }
            let f = &a[i][col] * &inv;
            for c in col..cols {
                let sub = &f * &a[r][c];
                a[i][c] = &a[i][c] - &sub;
            }
        }
        r += 1;
    }
    r
}

pub fn mat_vec(m: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    m.iter().map(|row| dot(row, v)).collect()
}

/// Exact integer from a rational that must have denominator 1.
pub fn to_integer(r: &Rat) -> Option<BigInt> {
    if r.denom().is_one() || r.denom() == &BigInt::from(-1) {
        Some(r.to_integer())
    } else {
        None
    }
}

/// Least common multiple of the (positive) denominators of a set of rationals.
pub fn denominator_lcm<'a>(vals: impl Iterator<Item = &'a Rat>) -> BigInt {
    let mut l = BigInt::one();
    for v in vals {
        let d = v.denom().abs();
        l = num::integer::lcm(l, d);
    }
    l
}

/// Fractional part in `[0, 1)`.
pub fn frac(r: &Rat) -> Rat {
    let f = r.floor();
    r - f
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_inverse_roundtrip() {
        let m = vec![
            vec![rat(2), rat(-1)],
            vec![rat(-1), rat(2)],
        ];
        assert_eq!(determinant(&m), rat(3));
        let inv = inverse(&m).unwrap();
        assert_eq!(inv[0][0], ratio(2, 3));
        assert_eq!(inv[0][1], ratio(1, 3));
        // m * m^-1 = id
        for i in 0..2 {
            for j in 0..2 {
                let e: Rat = (0..2).map(|k| &m[i][k] * &inv[k][j]).sum();
                assert_eq!(e, if i == j { rat(1) } else { rat(0) });
            }
        }
    }

    #[test]
    fn rank_of_singular_matrix() {
        let m = vec![
            vec![rat(1), rat(2), rat(3)],
            vec![rat(2), rat(4), rat(6)],
            vec![rat(0), rat(1), rat(1)],
        ];
        assert_eq!(rank(&m), 2);
        assert_eq!(determinant(&m), rat(0));
    }

    #[test]
    fn frac_handles_negatives() {
        assert_eq!(frac(&ratio(-1, 3)), ratio(2, 3));
        assert_eq!(frac(&ratio(7, 3)), ratio(1, 3));
        assert_eq!(frac(&rat(2)), rat(0));
    }
}
