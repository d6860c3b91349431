//! Dense matrices over `Q(zeta_N)`.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::exactnum::CycNum;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<CycNum>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![CycNum::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = CycNum::one();
        }
        m
    }

    pub fn diagonal(entries: Vec<CycNum>) -> Matrix {
        let n = entries.len();
        let mut m = Matrix::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m.data[i * n + i] = e;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CycNum>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Parse("ragged matrix rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<CycNum>]) -> Matrix {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m.data[i * c + j] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &CycNum {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: CycNum) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[CycNum] {
        &self.data
    }

    pub fn column(&self, c: usize) -> Vec<CycNum> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> &[CycNum] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        m
    }

    pub fn mul_ref(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix shape mismatch");
        let mut m = Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        m.data[r * rhs.cols + c] += &a.mul_ref(b);
                    }
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[CycNum]) -> Vec<CycNum> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = CycNum::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &a.mul_ref(b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn sub_ref(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.sub_ref(b)).collect(),
        }
    }

    pub fn scale(&self, s: &CycNum) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.mul_ref(s)).collect() }
    }

    pub fn promote(&self, n: u32) -> Result<Matrix> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.promote(n)).collect::<Result<_>>()?,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|r| (0..self.cols).all(|c| if r == c { self.get(r, c).is_one() } else { self.get(r, c).is_zero() }))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self.get(r, c).is_zero()))
    }

    /// Each column has exactly one nonzero entry, each row too.
    pub fn is_monomial(&self) -> bool {
        self.rows == self.cols
            && (0..self.cols).all(|c| (0..self.rows).filter(|&r| !self.get(r, c).is_zero()).count() == 1)
            && (0..self.rows).all(|r| self.row(r).iter().filter(|x| !x.is_zero()).count() == 1)
    }

    pub fn trace(&self) -> CycNum {
        let mut acc = CycNum::zero();
        for i in 0..self.rows.min(self.cols) {
            acc += self.get(i, i);
        }
        acc
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inverse().expect("pivot nonzero");
            for c in col..m.cols {
                let v = m.get(row, c).mul_ref(&inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = m.get(row, c).mul_ref(&f);
                    if !v.is_zero() {
                        let nv = m.get(r, c).sub_ref(&v);
                        m.set(r, c, nv);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Nullspace basis read off the RREF: one vector per free column, with
    /// that free variable set to 1 and the other free variables 0.
    pub fn kernel(&self) -> Vec<Vec<CycNum>> {
        let (r, pivots) = self.rref();
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![CycNum::zero(); self.cols];
            v[free] = CycNum::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = r.get(i, free).neg_ref();
            }
            out.push(v);
        }
        out
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::Precondition("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, CycNum::one());
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Precondition("matrix is singular".into()));
        }
        let mut inv = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c).clone());
            }
        }
        Ok(inv)
    }

    pub fn det(&self) -> CycNum {
        assert_eq!(self.rows, self.cols);
        let idx: Vec<usize> = (0..self.rows).collect();
        self.minor(&idx, &idx)
    }

    /// Determinant of the submatrix with rows `rows` and columns `cols`, in
    /// the given orders. The empty minor is 1.
    pub fn submatrix_det(&self, rows: &[usize], cols: &[usize]) -> Result<CycNum> {
        if rows.len() != cols.len() {
            return Err(Error::Precondition(format!(
                "minor needs equally many rows and columns, got {} and {}",
                rows.len(),
                cols.len()
            )));
        }
        if rows.iter().any(|&r| r >= self.rows) || cols.iter().any(|&c| c >= self.cols) {
            return Err(Error::Precondition("minor index out of range".into()));
        }
        Ok(self.minor(rows, cols))
    }

    pub(crate) fn minor(&self, rows: &[usize], cols: &[usize]) -> CycNum {
        let k = rows.len();
        let e = |i: usize, j: usize| self.get(rows[i], cols[j]);
        match k {
            0 => CycNum::one(),
            1 => e(0, 0).clone(),
            2 => e(0, 0).mul_ref(e(1, 1)).sub_ref(&e(0, 1).mul_ref(e(1, 0))),
            _ => {
                let mut m: Vec<Vec<CycNum>> = (0..k).map(|i| (0..k).map(|j| e(i, j).clone()).collect()).collect();
                let mut det = CycNum::one();
                for col in 0..k {
                    let Some(p) = (col..k).find(|&r| !m[r][col].is_zero()) else {
                        return CycNum::zero();
                    };
                    if p != col {
                        m.swap(p, col);
                        det = det.neg_ref();
                    }
                    det = det.mul_ref(&m[col][col]);
                    let inv = m[col][col].inverse().expect("pivot nonzero");
                    for r in col + 1..k {
                        if m[r][col].is_zero() {
                            continue;
                        }
                        let f = m[r][col].mul_ref(&inv);
                        for c in col..k {
                            let v = m[col][c].mul_ref(&f);
                            m[r][c] = m[r][c].sub_ref(&v);
                        }
                    }
                }
                det
            }
        }
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.mul_ref(rhs)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
