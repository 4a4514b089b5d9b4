use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use crate::det::bareiss_determinant;
use crate::rational::{int, Rational};
use crate::LinalgError;

/// Dense row-major matrix over exact rationals.
///
/// Zero-row (or zero-column) matrices are allowed: the kernel of a full rank
/// square matrix is `0 x n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds from rows; `cols` is needed to describe a matrix with no rows.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(LinalgError::Shape(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r);
        }
        Ok(Self {
            rows: n,
            cols,
            data,
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| int(v)).collect())
                .collect(),
        )
    }

    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(LinalgError::Shape(format!(
                    "column {j} has {} entries, expected {rows}",
                    c.len()
                )));
            }
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::Shape(format!(
                "vector of length {} for a {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Result<Self, LinalgError> {
        if let Some(&bad) = cols.iter().find(|&&j| j >= self.cols) {
            return Err(LinalgError::Shape(format!(
                "column {bad} out of range {}",
                self.cols
            )));
        }
        let mut out = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                out[(i, k)] = self[(i, j)].clone();
            }
        }
        Ok(out)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Result<Self, LinalgError> {
        if let Some(&bad) = rows.iter().find(|&&i| i >= self.rows) {
            return Err(LinalgError::Shape(format!(
                "row {bad} out of range {}",
                self.rows
            )));
        }
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend_from_slice(self.row(i));
        }
        Ok(Self {
            rows: rows.len(),
            cols: self.cols,
            data,
        })
    }

    pub fn hstack(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.rows != other.rows {
            return Err(LinalgError::Shape(format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        Ok(out)
    }

    pub fn vstack(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::Shape(format!(
                "vstack of {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn scale_row(&mut self, i: usize, s: &Rational) {
        for j in 0..self.cols {
            let v = &self[(i, j)] * s;
            self[(i, j)] = v;
        }
    }

    pub fn scale_column(&mut self, j: usize, s: &Rational) {
        for i in 0..self.rows {
            let v = &self[(i, j)] * s;
            self[(i, j)] = v;
        }
    }

    pub fn determinant(&self) -> Result<Rational, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(bareiss_determinant(self))
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            m.scale_row(r, &inv);
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    m.add_row_multiple(i, r, &-f);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x = 0}` as the rows of a `(cols - rank) x cols` matrix.
    pub fn nullspace(&self) -> Self {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Self::zeros(free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            basis[(k, f)] = Rational::one();
            for (pi, &pc) in pivots.iter().enumerate() {
                basis[(k, pc)] = -r[(pi, f)].clone();
            }
        }
        basis
    }

    /// Gale dual: rows of the result span the kernel of a full row rank matrix.
    pub fn kernel_basis(&self) -> Result<Self, LinalgError> {
        let rank = self.rank();
        if rank != self.rows {
            return Err(LinalgError::RankDeficient {
                rank,
                expected: self.rows,
            });
        }
        Ok(self.nullspace())
    }

    pub fn inverse(&self) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(n))?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(LinalgError::Singular);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        r.select_columns(&cols)
    }

    /// Solves `self * x = b` for square nonsingular `self`.
    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if b.len() != self.rows {
            return Err(LinalgError::Shape(format!(
                "rhs of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let n = self.rows;
        let rhs = Self::from_columns(n, &[b.to_vec()])?;
        let (r, pivots) = self.hstack(&rhs)?.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(LinalgError::Singular);
        }
        Ok(r.column(n))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// `row[dst] += f * row[src]`
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, f: &Rational) {
        for j in 0..self.cols {
            if !self[(src, j)].is_zero() {
                let v = &self[(src, j)] * f;
                self[(dst, j)] += v;
            }
        }
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    /// Right-aligned text with one row per line, columns separated by two spaces.
    pub fn to_printed(&self) -> String {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        let mut out = String::new();
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>width$}", cells[i * self.cols + j]))
                .collect();
            out.push_str(&line.join("  "));
            out.push('\n');
        }
        out
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut s = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{}", self.rows, self.cols)?;
        f.write_str(&self.to_printed())
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_printed())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn m(rows: &[Vec<i64>]) -> RationalMatrix {
        RationalMatrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(m(&[vec![1, 0], vec![0, 1]]).determinant().unwrap(), int(1));
        assert_eq!(m(&[vec![0, 1], vec![1, 0]]).determinant().unwrap(), int(-1));
        assert_eq!(RationalMatrix::zeros(0, 0).determinant().unwrap(), int(1));
        assert!(m(&[vec![1, 2, 3]]).determinant().is_err());
    }

    #[test]
    fn rational_determinant() {
        let a = RationalMatrix::from_rows(
            2,
            vec![vec![frac(1, 2), frac(1, 3)], vec![int(3), frac(-2, 5)]],
        )
        .unwrap();
        // 1/2 * -2/5 - 1/3 * 3 = -1/5 - 1
        assert_eq!(a.determinant().unwrap(), frac(-6, 5));
    }

    #[test]
    fn kernel_of_row() {
        let k = m(&[vec![1, 1]]).kernel_basis().unwrap();
        assert_eq!(k.shape(), (1, 2));
        assert_eq!(k[(0, 0)], -k[(0, 1)].clone());
        assert!(!k.is_zero());
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let k = RationalMatrix::identity(3).kernel_basis().unwrap();
        assert_eq!(k.shape(), (0, 3));
    }

    #[test]
    fn kernel_rejects_rank_deficiency() {
        let err = m(&[vec![1, 2], vec![2, 4]]).kernel_basis().unwrap_err();
        assert!(matches!(
            err,
            LinalgError::RankDeficient {
                rank: 1,
                expected: 2
            }
        ));
    }

    #[test]
    fn counting_matrix_kernel() {
        let d = m(&[
            vec![1, 0, 1, 0, 1, 0],
            vec![3, 1, 2, 2, 1, 3],
            vec![0, 1, 0, 1, 0, 1],
        ]);
        let b = d.kernel_basis().unwrap();
        assert_eq!(b.shape(), (3, 6));
        assert_eq!(b.rank(), 3);
        assert!(d.mul(&b.transpose()).unwrap().is_zero());
    }

    #[test]
    fn inverse_and_solve() {
        let a = m(&[vec![2, 1], vec![1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), RationalMatrix::identity(2));
        assert_eq!(a.solve(&[int(3), int(2)]).unwrap(), vec![int(1), int(1)]);
        assert!(matches!(
            m(&[vec![1, 1], vec![1, 1]]).inverse(),
            Err(LinalgError::Singular)
        ));
    }

    #[test]
    fn stacking_and_selection() {
        let a = m(&[vec![1, 2, 3], vec![4, 5, 6]]);
        let s = a.select_columns(&[2, 0]).unwrap();
        assert_eq!(s, m(&[vec![3, 1], vec![6, 4]]));
        let v = a.vstack(&m(&[vec![7, 8, 9]])).unwrap();
        assert_eq!(v.rows(), 3);
        assert_eq!(v.select_rows(&[2]).unwrap(), m(&[vec![7, 8, 9]]));
        assert!(a.select_columns(&[3]).is_err());
    }

    #[test]
    fn printed_is_aligned() {
        let a = m(&[vec![1, -10], vec![100, 2]]);
        assert_eq!(a.to_printed(), "  1  -10\n100    2\n");
    }
}
