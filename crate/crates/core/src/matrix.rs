//! Sparse column-major matrices with exact [`Scalar`] entries.

use serde::{Deserialize, Serialize};

use crate::coeff::{RingSpec, Scalar};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    ring: RingSpec,
    nrows: usize,
    ncols: usize,
    // each column sorted by row, no zeros
    cols: Vec<Vec<(usize, Scalar)>>,
}

impl Matrix {
    pub fn zeros(ring: RingSpec, nrows: usize, ncols: usize) -> Self {
        Matrix {
            ring,
            nrows,
            ncols,
            cols: vec![Vec::new(); ncols],
        }
    }

    pub fn identity(ring: RingSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.push(i, i, ring.one());
        }
        m
    }

    /// Builds a matrix from integer triplets, reducing into `ring`.
    pub fn from_int_triplets(ring: RingSpec, nrows: usize, ncols: usize, entries: &[(usize, usize, i64)]) -> Self {
        let mut m = Matrix::zeros(ring, nrows, ncols);
        for &(r, c, v) in entries {
            m.push(r, c, ring.from_i64(v));
        }
        m
    }

    /// Dense row-major integer input, mostly for tests and examples.
    pub fn from_rows(ring: RingSpec, rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(ring, nrows, ncols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged rows");
            for (c, &v) in row.iter().enumerate() {
                m.push(r, c, ring.from_i64(v));
            }
        }
        m
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    /// Adds `value` to entry `(row, col)`.
    pub fn push(&mut self, row: usize, col: usize, value: Scalar) {
        assert!(row < self.nrows && col < self.ncols, "entry ({row}, {col}) out of bounds");
        if value.is_zero() {
            return;
        }
        let column = &mut self.cols[col];
        match column.binary_search_by_key(&row, |e| e.0) {
            Ok(k) => {
                let s = column[k].1.try_add(&value).expect("matrix entries share a ring");
                if s.is_zero() {
                    column.remove(k);
                } else {
                    column[k].1 = s;
                }
            }
            Err(k) => column.insert(k, (row, value)),
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Scalar {
        let column = &self.cols[col];
        match column.binary_search_by_key(&row, |e| e.0) {
            Ok(k) => column[k].1.clone(),
            Err(_) => self.ring.zero(),
        }
    }

    pub fn column(&self, col: usize) -> &[(usize, Scalar)] {
        &self.cols[col]
    }

    pub fn columns(&self) -> impl Iterator<Item = &[(usize, Scalar)]> {
        self.cols.iter().map(Vec::as_slice)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> Matrix {
        let mut cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.nrows];
        for (c, column) in self.cols.iter().enumerate() {
            for (r, v) in column {
                cols[*r].push((c, v.clone()));
            }
        }
        Matrix {
            ring: self.ring,
            nrows: self.ncols,
            ncols: self.nrows,
            cols,
        }
    }

    /// `self · other`.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.ncols != other.nrows || self.ring != other.ring {
            return Err(Error::invalid(format!(
                "cannot multiply {}x{} over {} by {}x{} over {}",
                self.nrows, self.ncols, self.ring, other.nrows, other.ncols, other.ring
            )));
        }
        let mut out = Matrix::zeros(self.ring, self.nrows, other.ncols);
        for (c, column) in other.cols.iter().enumerate() {
            let mut acc: std::collections::BTreeMap<usize, Scalar> = Default::default();
            for (k, b) in column {
                for (r, a) in &self.cols[*k] {
                    let t = a.try_mul(b)?;
                    let slot = acc.entry(*r).or_insert_with(|| self.ring.zero());
                    *slot = slot.try_add(&t)?;
                }
            }
            out.cols[c] = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        }
        Ok(out)
    }

    /// Reads every entry as an integer and reduces it into `ring`.
    pub fn change_ring(&self, ring: RingSpec) -> Result<Matrix> {
        let mut out = Matrix::zeros(ring, self.nrows, self.ncols);
        for (c, column) in self.cols.iter().enumerate() {
            for (r, v) in column {
                let z = v
                    .to_bigint()
                    .ok_or_else(|| Error::invalid(format!("entry {v} has no image in {ring}")))?;
                out.push(*r, c, ring.from_bigint(&z));
            }
        }
        Ok(out)
    }

    /// `(row, col, value)` triplets in column-major order.
    pub fn triplets(&self) -> Vec<(usize, usize, String)> {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, column)| column.iter().map(move |(r, v)| (*r, c, v.to_string())))
            .collect()
    }

    pub fn to_record(&self) -> MatrixRecord {
        MatrixRecord {
            rows: self.nrows,
            cols: self.ncols,
            entries: self.triplets(),
        }
    }

    pub fn from_record(ring: RingSpec, rec: &MatrixRecord) -> Result<Matrix> {
        let mut m = Matrix::zeros(ring, rec.rows, rec.cols);
        for (r, c, v) in &rec.entries {
            if *r >= rec.rows || *c >= rec.cols {
                return Err(Error::invalid(format!("triplet ({r}, {c}) out of bounds")));
            }
            m.push(*r, *c, ring.parse_scalar(v)?);
        }
        Ok(m)
    }
}

/// JSON exchange form of a matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, String)>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn push_merges_and_cancels() {
        let z = RingSpec::Integers;
        let mut m = Matrix::zeros(z, 2, 2);
        m.push(0, 1, z.from_i64(3));
        m.push(0, 1, z.from_i64(-3));
        assert!(m.is_zero());
        m.push(1, 0, z.from_i64(2));
        assert_eq!(m.get(1, 0), z.from_i64(2));
        assert_eq!(m.transpose().get(0, 1), z.from_i64(2));
    }

    #[test]
    fn product_and_record_round_trip() {
        let z = RingSpec::Integers;
        let a = Matrix::from_rows(z, &[vec![1, 2], vec![3, 4]]);
        let b = Matrix::from_rows(z, &[vec![0, 1], vec![1, 0]]);
        assert_eq!(a.mul(&b).unwrap(), Matrix::from_rows(z, &[vec![2, 1], vec![4, 3]]));
        let back = Matrix::from_record(z, &a.to_record()).unwrap();
        assert_eq!(back, a);
        let f2 = a.change_ring(RingSpec::ModM(2)).unwrap();
        assert_eq!(f2.nnz(), 2);
    }
}
