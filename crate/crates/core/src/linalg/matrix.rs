use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{CScalar, LinalgError, Rational};

/// Dense row-major matrix over the Gaussian rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<CScalar>,
}

impl CMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<CScalar>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                expected: format!("{} entries", rows * cols),
                found: format!("{} entries", data.len()),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![CScalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { CScalar::one() } else { CScalar::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> CScalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Real integer matrix from nested rows. Panics on ragged input.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged integer grid");
        Self::from_fn(r, c, |i, j| CScalar::from_int(rows[i][j]))
    }

    pub fn from_rationals(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        Self::from_fn(rows, cols, |i, j| CScalar::real(f(i, j)))
    }

    /// Combine real and imaginary parts of equal shape.
    pub fn from_parts(re: &CMatrix, im: &CMatrix) -> Result<Self, LinalgError> {
        re.expect_shape(im.rows, im.cols)?;
        Ok(Self::from_fn(re.rows, re.cols, |i, j| {
            CScalar::new(re[(i, j)].re.clone(), im[(i, j)].re.clone())
        }))
    }

    pub fn column(v: &[CScalar]) -> Self {
        Self { rows: v.len(), cols: 1, data: v.to_vec() }
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

    pub fn entries(&self) -> &[CScalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[CScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn expect_shape(&self, rows: usize, cols: usize) -> Result<(), LinalgError> {
        if self.rows != rows || self.cols != cols {
            return Err(LinalgError::DimensionMismatch {
                expected: format!("{rows}x{cols}"),
                found: format!("{}x{}", self.rows, self.cols),
            });
        }
        Ok(())
    }

    pub fn expect_square(&self) -> Result<usize, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NonSquare { rows: self.rows, cols: self.cols });
        }
        Ok(self.rows)
    }

    pub fn map(&self, f: impl Fn(&CScalar) -> CScalar) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn conj(&self) -> Self {
        self.map(CScalar::conj)
    }

    pub fn re(&self) -> Self {
        self.map(|z| CScalar::real(z.re.clone()))
    }

    pub fn im(&self) -> Self {
        self.map(|z| CScalar::real(z.im.clone()))
    }

    pub fn scale(&self, s: &CScalar) -> Self {
        self.map(|z| z * s)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(CScalar::is_real)
    }

    pub fn is_integer(&self) -> bool {
        self.data.iter().all(CScalar::is_integer)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_alternating(&self) -> bool {
        self.is_square() && *self == -self.transpose()
    }

    pub fn try_mul(&self, o: &CMatrix) -> Result<CMatrix, LinalgError> {
        if self.cols != o.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: format!("{} rows", self.cols),
                found: format!("{} rows", o.rows),
            });
        }
        let mut out = CMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, o: &CMatrix) -> Result<CMatrix, LinalgError> {
        o.expect_shape(self.rows, self.cols)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, o: &CMatrix) -> Result<CMatrix, LinalgError> {
        self.try_add(&-o)
    }

    /// Copy of the `r`×`c` block whose top-left corner is `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, r: usize, c: usize) -> CMatrix {
        assert!(r0 + r <= self.rows && c0 + c <= self.cols, "block out of range");
        Self::from_fn(r, c, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    /// Assemble a block matrix. Every block in a block-row shares its row
    /// count and every block in a block-column shares its column count.
    pub fn from_blocks(grid: &[Vec<CMatrix>]) -> Result<CMatrix, LinalgError> {
        let heights: Vec<usize> = grid.iter().map(|row| row.first().map_or(0, CMatrix::rows)).collect();
        let widths: Vec<usize> = grid.first().map_or(vec![], |row| row.iter().map(CMatrix::cols).collect());
        for (bi, row) in grid.iter().enumerate() {
            if row.len() != widths.len() {
                return Err(LinalgError::DimensionMismatch {
                    expected: format!("{} blocks per row", widths.len()),
                    found: format!("{}", row.len()),
                });
            }
            for (bj, b) in row.iter().enumerate() {
                b.expect_shape(heights[bi], widths[bj])?;
            }
        }
        let rows = heights.iter().sum();
        let cols = widths.iter().sum();
        let mut out = CMatrix::zeros(rows, cols);
        let mut r0 = 0;
        for (bi, row) in grid.iter().enumerate() {
            let mut c0 = 0;
            for (bj, b) in row.iter().enumerate() {
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                    }
                }
                c0 += widths[bj];
            }
            r0 += heights[bi];
        }
        Ok(out)
    }

    /// Row-reduce `[self | rhs]` to `[I | self⁻¹ rhs]`. The pivot is the
    /// first nonzero entry in the column, tested exactly.
    fn solve_in_place(&self, rhs: &mut CMatrix) -> Result<(), LinalgError> {
        let n = self.expect_square()?;
        let mut a = self.clone();
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[(r, col)].is_zero()).ok_or(LinalgError::Singular)?;
            if piv != col {
                a.swap_rows(piv, col);
                rhs.swap_rows(piv, col);
            }
            let inv = a[(col, col)].inv().expect("pivot is nonzero");
            a.scale_row(col, &inv);
            rhs.scale_row(col, &inv);
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                a.axpy_row(r, col, &f);
                rhs.axpy_row(r, col, &f);
            }
        }
        Ok(())
    }

    pub fn inverse(&self) -> Result<CMatrix, LinalgError> {
        let n = self.expect_square()?;
        let mut out = CMatrix::identity(n);
        self.solve_in_place(&mut out)?;
        Ok(out)
    }

    /// Determinant by exact elimination.
    pub fn det(&self) -> Result<CScalar, LinalgError> {
        let n = self.expect_square()?;
        let mut a = self.clone();
        let mut det = CScalar::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return Ok(CScalar::zero());
            };
            if piv != col {
                a.swap_rows(piv, col);
                det = -det;
            }
            let p = a[(col, col)].clone();
            det *= &p;
            let inv = p.inv().expect("pivot is nonzero");
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let f = &a[(r, col)] * &inv;
                a.axpy_row(r, col, &f);
            }
        }
        Ok(det)
    }

    /// Leading principal minors `det(A[..k, ..k])` for `k = 1..=n`.
    pub fn leading_minors(&self) -> Result<Vec<CScalar>, LinalgError> {
        let n = self.expect_square()?;
        (1..=n).map(|k| self.block(0, 0, k, k).det()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, s: &CScalar) {
        for j in 0..self.cols {
            let v = &self[(r, j)] * s;
            self[(r, j)] = v;
        }
    }

    /// row[r] -= f * row[src]
    fn axpy_row(&mut self, r: usize, src: usize, f: &CScalar) {
        for j in 0..self.cols {
            if self[(src, j)].is_zero() {
                continue;
            }
            let v = f * &self[(src, j)];
            self[(r, j)] -= &v;
        }
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = CScalar;
    fn index(&self, (i, j): (usize, usize)) -> &CScalar {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut CScalar {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &mut self.data[i * self.cols + j]
    }
}

// Operator forms panic on shape mismatch; the `try_*` methods report it.
impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, o: &CMatrix) -> CMatrix {
        self.try_mul(o).expect("matrix product shape mismatch")
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, o: &CMatrix) -> CMatrix {
        self.try_add(o).expect("matrix sum shape mismatch")
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, o: &CMatrix) -> CMatrix {
        self.try_sub(o).expect("matrix difference shape mismatch")
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        self.map(|z| -z)
    }
}

impl Neg for CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        -&self
    }
}

impl fmt::Display for CMatrix {
    /// `[[a, b], [c, d]]`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
