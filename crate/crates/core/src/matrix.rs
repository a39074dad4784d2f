//! Dense matrices over a [`Field`]: row reduction, rank, kernels and particular solutions.

use std::fmt;

use crate::codes::Labeling;
use crate::error::{Error, Result};
use crate::galois::{Fe, Field};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl Matrix {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<Fe>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, actual: data.len() });
        }
        if let Some(bad) = data.iter().find(|v| v.0 >= field.order()) {
            return Err(Error::InvalidField(format!("{} is not an element of {field}", bad.0)));
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![Fe::ZERO; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Fe::ONE);
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Fe>>) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in &rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, actual: row.len() });
            }
            data.extend_from_slice(row);
        }
        Matrix::new(field, rows.len(), cols, data)
    }

    /// Convenience constructor from packed integer encodings.
    pub fn from_values(field: &Field, rows: &[&[u32]]) -> Result<Matrix> {
        Matrix::from_rows(field, rows.iter().map(|r| r.iter().map(|&v| Fe(v)).collect()).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Fe] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Fe> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, actual: other.rows });
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * other.cols + c;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(k, c)));
                }
            }
        }
        Ok(out)
    }

    /// `A x` for a column vector `x`.
    pub fn mul_vec(&self, x: &[Fe]) -> Result<Vec<Fe>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, actual: x.len() });
        }
        Ok((0..self.rows).map(|r| self.field.dot(self.row(r), x)).collect())
    }

    /// `x A` for a row vector `x`.
    pub fn vec_mul(&self, x: &[Fe]) -> Result<Vec<Fe>> {
        if x.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, actual: x.len() });
        }
        let f = &self.field;
        let mut out = vec![Fe::ZERO; self.cols];
        for (r, &a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, &v) in out.iter_mut().zip(self.row(r)) {
                *o = f.add(*o, f.mul(a, v));
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form with leftmost-column, topmost-row pivoting.
    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0usize;
        for col in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(pr) = (lead..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(pr, lead);
            let inv = f.inv(m.get(lead, col)).expect("pivot is nonzero");
            for c in col..m.cols {
                let v = m.get(lead, c);
                m.set(lead, c, f.mul(v, inv));
            }
            for r in 0..m.rows {
                if r == lead {
                    continue;
                }
                let factor = m.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = f.sub(m.get(r, c), f.mul(factor, m.get(lead, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            lead += 1;
        }
        let rank = pivots.len();
        Rref { matrix: m, pivots, rank }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Some `x` with `A x = b`, free variables set to zero; `None` if inconsistent.
    pub fn solve_particular(&self, b: &[Fe]) -> Result<Option<Vec<Fe>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, actual: b.len() });
        }
        let mut aug = Matrix::zeros(&self.field, self.rows, self.cols + 1);
        for (r, &v) in b.iter().enumerate() {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, v);
        }
        let red = aug.rref();
        if red.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Fe::ZERO; self.cols];
        for (row, &pc) in red.pivots.iter().enumerate() {
            x[pc] = red.matrix.get(row, self.cols);
        }
        Ok(Some(x))
    }

    /// Basis of the right kernel, one vector per free column in increasing order.
    pub fn kernel_basis(&self) -> Vec<Vec<Fe>> {
        let f = &self.field;
        let red = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &red.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Fe::ZERO; self.cols];
                v[free] = Fe::ONE;
                for (row, &pc) in red.pivots.iter().enumerate() {
                    v[pc] = f.neg(red.matrix.get(row, free));
                }
                v
            })
            .collect()
    }

    /// The submatrix formed by the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    /// Columns whose label lies in `labels` (0-based), original order preserved.
    pub fn restrict_columns(&self, labeling: &Labeling, labels: &[usize]) -> Result<Matrix> {
        if labeling.n() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, actual: labeling.n() });
        }
        if let Some(&bad) = labels.iter().find(|&&l| l >= labeling.s()) {
            return Err(Error::ParameterOutOfRange(format!(
                "label {} outside [1, {}]",
                bad + 1,
                labeling.s()
            )));
        }
        let cols: Vec<usize> = (0..self.cols).filter(|&c| labels.contains(&labeling.label(c))).collect();
        Ok(self.select_columns(&cols))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|v| v.0.to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn rref_examples() {
        let f = gf2();
        let id = Matrix::identity(&f, 3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert_eq!(r.rank, 3);

        let z = Matrix::zeros(&f, 2, 3);
        let r = z.rref();
        assert_eq!(r.matrix, z);
        assert!(r.pivots.is_empty());

        let a = Matrix::from_values(&f, &[&[1, 1], &[1, 1]]).unwrap();
        let r = a.rref();
        assert_eq!(r.matrix, Matrix::from_values(&f, &[&[1, 1], &[0, 0]]).unwrap());
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn solve_examples() {
        let f = gf2();
        let id = Matrix::identity(&f, 3);
        let b = vec![Fe(1), Fe(0), Fe(1)];
        assert_eq!(id.solve_particular(&b).unwrap(), Some(b.clone()));

        let a = Matrix::from_values(&f, &[&[1, 1]]).unwrap();
        assert_eq!(a.solve_particular(&[Fe(1)]).unwrap(), Some(vec![Fe(1), Fe(0)]));

        let z = Matrix::from_values(&f, &[&[0]]).unwrap();
        assert_eq!(z.solve_particular(&[Fe(1)]).unwrap(), None);

        assert_eq!(
            a.solve_particular(&[Fe(1), Fe(1)]),
            Err(Error::DimensionMismatch { expected: 1, actual: 2 })
        );
    }

    #[test]
    fn kernel_examples() {
        let f = gf2();
        assert!(Matrix::identity(&f, 4).kernel_basis().is_empty());
        let a = Matrix::from_values(&f, &[&[1, 1]]).unwrap();
        assert_eq!(a.kernel_basis(), vec![vec![Fe(1), Fe(1)]]);
    }

    #[test]
    fn restrict_examples() {
        let f = gf2();
        let g = Matrix::from_values(&f, &[&[1, 0, 1, 1], &[0, 1, 1, 0]]).unwrap();
        let id = Labeling::identity(4);
        assert_eq!(g.restrict_columns(&id, &[0, 1, 2, 3]).unwrap(), g);
        let empty = g.restrict_columns(&id, &[]).unwrap();
        assert_eq!((empty.rows(), empty.cols()), (2, 0));
        let sub = g.restrict_columns(&id, &[0, 2]).unwrap();
        assert_eq!(sub, Matrix::from_values(&f, &[&[1, 1], &[0, 1]]).unwrap());
    }

    #[test]
    fn empty_column_matrix_has_rank_zero() {
        let m = Matrix::zeros(&gf2(), 3, 0);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.solve_particular(&[Fe(0); 3]).unwrap(), Some(vec![]));
        assert_eq!(m.solve_particular(&[Fe(1), Fe(0), Fe(0)]).unwrap(), None);
    }
}
