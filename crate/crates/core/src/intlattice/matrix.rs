use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix with arbitrary-precision entries, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// A vector with exact rational entries.
pub type QVector = Vec<BigRational>;

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn diagonal<T: Into<BigInt> + Clone>(d: &[T]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m[(i, i)] = x.clone().into();
        }
        m
    }

    /// Builds a matrix from rows of small integers. All rows must have `cols` entries.
    pub fn from_rows<R: AsRef<[i64]>>(cols: usize, rows: &[R]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        Ok(IntMatrix { rows: rows.len(), cols, data })
    }

    pub fn from_bigint_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r);
        }
        Ok(IntMatrix { rows: nrows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<BigInt> {
        self.row(i).to_vec()
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[BigInt]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.row_iter().map(|r| r.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
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

    pub fn scaled(&self, k: &BigInt) -> Self {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn neg(&self) -> Self {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: other.rows });
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.cols });
        }
        Ok(())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
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

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// `M v` for a rational column vector `v`.
    pub fn apply_rational(&self, v: &[BigRational]) -> Result<QVector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(BigRational::zero(), |acc, (a, b)| acc + b * BigRational::from_integer(a.clone()))
            })
            .collect())
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.cols });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(IntMatrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &Self) -> Self {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * k;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += k * col[src]
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * k;
            self.data[i * self.cols + dst] += v;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = &mut self.data[i * self.cols + j];
            *x = -std::mem::take(x);
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let x = &mut self.data[i * self.cols + j];
            *x = -std::mem::take(x);
        }
    }

    /// Keeps only the first `n` rows.
    pub fn truncate_rows(&mut self, n: usize) {
        if n < self.rows {
            self.rows = n;
            self.data.truncate(n * self.cols);
        }
    }

    /// Exact determinant via fraction-free elimination (Bareiss).
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * &a[(n - 1, n - 1)])
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().map(|d| d.abs().is_one()).unwrap_or(false)
    }

    pub fn to_rational_rows(&self) -> Vec<QVector> {
        self.row_iter()
            .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect()
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("matrix shapes do not match")
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}", self.rows, self.cols)?;
        f.debug_list().entries(self.row_iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>())).finish()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.row_iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// A square matrix with rational entries, used for projections and basis changes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    n_rows: usize,
    n_cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { n_rows: rows, n_cols: cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        RatMatrix {
            n_rows: m.rows(),
            n_cols: m.cols(),
            data: m.data.iter().map(|x| BigRational::from_integer(x.clone())).collect(),
        }
    }

    pub fn from_rows(cols: usize, rows: &[QVector]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r.iter().cloned());
        }
        Ok(RatMatrix { n_rows: rows.len(), n_cols: cols, data })
    }

    pub fn rows(&self) -> usize {
        self.n_rows
    }

    pub fn cols(&self) -> usize {
        self.n_cols
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.n_cols..(i + 1) * self.n_cols]
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.n_cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.n_cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n_cols, self.n_rows);
        for i in 0..self.n_rows {
            for j in 0..self.n_cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n_cols != other.n_rows {
            return Err(Error::DimensionMismatch { expected: self.n_cols, found: other.n_rows });
        }
        let mut out = Self::zeros(self.n_rows, other.n_cols);
        for i in 0..self.n_rows {
            for k in 0..self.n_cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.n_cols {
                    let v = a * other.get(k, j);
                    out.data[i * other.n_cols + j] += v;
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[BigRational]) -> Result<QVector> {
        if v.len() != self.n_cols {
            return Err(Error::DimensionMismatch { expected: self.n_cols, found: v.len() });
        }
        Ok((0..self.n_rows)
            .map(|i| self.row(i).iter().zip(v).fold(BigRational::zero(), |acc, (a, b)| acc + a * b))
            .collect())
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        if self.n_rows != self.n_cols {
            return None;
        }
        let n = self.n_rows;
        let mut a = self.clone();
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            inv.set(i, i, BigRational::one());
        }
        for c in 0..n {
            let p = (c..n).find(|&r| !a.get(r, c).is_zero())?;
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                    inv.data.swap(p * n + j, c * n + j);
                }
            }
            let piv = a.get(c, c).clone();
            for j in 0..n {
                let x = a.get(c, j) / &piv;
                a.set(c, j, x);
                let y = inv.get(c, j) / &piv;
                inv.set(c, j, y);
            }
            for r in 0..n {
                if r == c || a.get(r, c).is_zero() {
                    continue;
                }
                let f = a.get(r, c).clone();
                for j in 0..n {
                    let x = a.get(r, j) - &f * a.get(c, j);
                    a.set(r, j, x);
                    let y = inv.get(r, j) - &f * inv.get(c, j);
                    inv.set(r, j, y);
                }
            }
        }
        Some(inv)
    }

    /// Splits into an integer matrix and a positive common denominator.
    pub fn to_scaled_int(&self) -> (IntMatrix, BigInt) {
        let denom = common_denominator(&self.data);
        let data = self.data.iter().map(|x| (x * BigRational::from_integer(denom.clone())).to_integer()).collect();
        (IntMatrix { rows: self.n_rows, cols: self.n_cols, data }, denom)
    }

    /// Returns the integer matrix if every entry is integral.
    pub fn to_int(&self) -> Option<IntMatrix> {
        if self.data.iter().all(|x| x.is_integer()) {
            Some(IntMatrix {
                rows: self.n_rows,
                cols: self.n_cols,
                data: self.data.iter().map(|x| x.to_integer()).collect(),
            })
        } else {
            None
        }
    }
}

/// Least common multiple of the denominators; always positive.
pub fn common_denominator(v: &[BigRational]) -> BigInt {
    use num_integer::Integer;
    v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn qvec(v: &[i64]) -> QVector {
    v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
}

/// Rational vector from `(numerator, denominator)` pairs.
pub fn qvec_frac(v: &[(i64, i64)]) -> QVector {
    v.iter().map(|&(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d))).collect()
}

pub fn int_to_q(v: &[BigInt]) -> QVector {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

/// `Some(integers)` when every entry is integral.
pub fn q_to_int(v: &[BigRational]) -> Option<Vec<BigInt>> {
    v.iter().map(|x| if x.is_integer() { Some(x.to_integer()) } else { None }).collect()
}

pub fn format_qvector(v: &[BigRational]) -> String {
    let cells: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", cells.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = IntMatrix::from_rows(3, &[[2, -1, 0], [-1, 2, -1], [0, -1, 2]]).unwrap();
        assert_eq!(m.determinant().unwrap(), BigInt::from(4));
        let s = IntMatrix::from_rows(2, &[[1, 2], [2, 4]]).unwrap();
        assert!(s.determinant().unwrap().is_zero());
    }

    #[test]
    fn rational_inverse_round_trips() {
        let m = RatMatrix::from_int(&IntMatrix::from_rows(2, &[[2, 1], [1, 1]]).unwrap());
        let inv = m.inverse().unwrap();
        let prod = m.mul(&inv).unwrap();
        assert_eq!(prod.to_int().unwrap(), IntMatrix::identity(2));
    }

    #[test]
    fn mismatched_rows_are_rejected() {
        let err = IntMatrix::from_rows(2, &[vec![1, 2], vec![3]]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { expected: 2, found: 1 }));
    }
}
