//! Dense rational matrices of desk-scale dimension (d <= ~10).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{LatticeError, Result};

pub type QMat = Vec<Vec<BigRational>>;

pub fn identity(d: usize) -> QMat {
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn transpose(m: &QMat) -> QMat {
    let d = m.len();
    (0..d)
        .map(|j| (0..d).map(|i| m[i][j].clone()).collect())
        .collect()
}

pub fn mat_vec(m: &QMat, v: &[BigRational]) -> Vec<BigRational> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn mat_vec_int(m: &QMat, v: &[BigInt]) -> Vec<BigRational> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .map(|(a, b)| a * BigRational::from_integer(b.clone()))
                .sum()
        })
        .collect()
}

pub fn determinant(m: &QMat) -> BigRational {
    let d = m.len();
    let mut a = m.to_vec();
    let mut det = BigRational::one();
    for col in 0..d {
        let Some(pivot) = (col..d).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col].clone();
        let inv = a[col][col].recip();
        for r in col + 1..d {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] * &inv;
            for c in col..d {
                let sub = &factor * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    det
}

/// Gauss-Jordan inverse; errors on singular input.
pub fn inverse(m: &QMat) -> Result<QMat> {
    let d = m.len();
    let mut a = m.to_vec();
    let mut inv = identity(d);
    for col in 0..d {
        let pivot = (col..d)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| LatticeError::invalid("singular matrix"))?;
        a.swap(pivot, col);
        inv.swap(pivot, col);
        let scale = a[col][col].recip();
        for c in 0..d {
            a[col][c] *= &scale;
            inv[col][c] *= &scale;
        }
        for r in 0..d {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..d {
                let s = &factor * &a[col][c];
                a[r][c] -= s;
                let s = &factor * &inv[col][c];
                inv[r][c] -= s;
            }
        }
    }
    Ok(inv)
}

/// True when every entry is an integer.
pub fn is_integer_matrix(m: &QMat) -> bool {
    m.iter().flatten().all(|e| e.is_integer())
}

pub fn to_f64(m: &QMat) -> Vec<Vec<f64>> {
    use num_traits::ToPrimitive;
    m.iter()
        .map(|row| row.iter().map(|e| e.to_f64().unwrap_or(f64::NAN)).collect())
        .collect()
}

pub fn abs(r: &BigRational) -> BigRational {
    if r.is_negative() {
        -r.clone()
    } else {
        r.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn det_and_inverse() {
        let m = vec![vec![q(0, 1), q(1, 4)], vec![q(1, 1), q(1, 3)]];
        assert_eq!(determinant(&m), q(-1, 4));
        let inv = inverse(&m).unwrap();
        // inverse maps the first column of m back to e1
        let prod = mat_vec(&inv, &[q(0, 1), q(1, 1)]);
        assert_eq!(prod, vec![q(1, 1), q(0, 1)]);
    }

    #[test]
    fn singular_rejected() {
        let m = vec![vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(4, 1)]];
        assert!(determinant(&m).is_zero());
        assert!(inverse(&m).is_err());
    }
}
