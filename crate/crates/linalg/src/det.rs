use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::matrix::RationalMatrix;
use crate::rational::{common_denominator, Rational};

/// Determinant of a square matrix by fraction-free elimination.
///
/// Each row is first scaled to integers. Elimination runs in `i128` and falls
/// back to big integers on overflow.
pub(crate) fn bareiss_determinant(m: &RationalMatrix) -> Rational {
    let n = m.rows();
    if n == 0 {
        return Rational::one();
    }
    let mut scale = BigInt::one();
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let r = m.row(i);
        let d = common_denominator(r);
        rows.push(r.iter().map(|x| (x * &d).to_integer()).collect());
        scale *= d;
    }
    let small: Option<Vec<Vec<i128>>> = rows
        .iter()
        .map(|r| r.iter().map(ToPrimitive::to_i128).collect())
        .collect();
    let det = small
        .and_then(bareiss_i128)
        .map(BigInt::from)
        .unwrap_or_else(|| bareiss_big(rows));
    Rational::new(det, scale)
}

fn bareiss_i128(mut a: Vec<Vec<i128>>) -> Option<i128> {
    let n = a.len();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n.saturating_sub(1) {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(p) => {
                    a.swap(k, p);
                    sign = -sign;
                }
                None => return Some(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = a[i][j].checked_mul(a[k][k])?;
                let y = a[i][k].checked_mul(a[k][j])?;
                a[i][j] = x.checked_sub(y)? / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    sign.checked_mul(a[n - 1][n - 1])
}

fn bareiss_big(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn singular_column_gives_zero() {
        let m =
            RationalMatrix::from_i64_rows(&[vec![0, 1, 2], vec![0, 3, 4], vec![0, 5, 6]]).unwrap();
        assert_eq!(bareiss_determinant(&m), int(0));
    }

    #[test]
    fn big_path_matches_small_path() {
        let rows = vec![
            vec![BigInt::from(2), BigInt::from(-3), BigInt::from(1)],
            vec![BigInt::from(4), BigInt::from(0), BigInt::from(5)],
            vec![BigInt::from(-1), BigInt::from(7), BigInt::from(2)],
        ];
        let small: Vec<Vec<i128>> = rows
            .iter()
            .map(|r| r.iter().map(|v| v.to_i128().unwrap()).collect())
            .collect();
        assert_eq!(
            BigInt::from(bareiss_i128(small).unwrap()),
            bareiss_big(rows)
        );
    }

    #[test]
    fn overflow_falls_back() {
        let big = 1i64 << 62;
        let m = RationalMatrix::from_i64_rows(&[vec![big, 1, 0], vec![1, big, 1], vec![0, 1, big]])
            .unwrap();
        let b = BigInt::from(big);
        let expected = &b * &b * &b - &b - &b;
        assert_eq!(bareiss_determinant(&m), Rational::from_integer(expected));
    }
}
