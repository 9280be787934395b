use crate::error::{Error, Result};

use super::field::PrimeField;

/// Row-major dense matrix over a prime field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(cols: usize, rows: impl IntoIterator<Item = Vec<u32>>) -> Result<Self> {
        let mut entries = Vec::new();
        let mut count = 0;
        for row in rows {
            if row.len() != cols {
                return Err(Error::Shape(format!(
                    "row {count} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            entries.extend(row);
            count += 1;
        }
        Ok(Self {
            rows: count,
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: &[u32]) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::Shape(format!(
                "row has {} entries, expected {}",
                row.len(),
                self.cols
            )));
        }
        self.entries.extend_from_slice(row);
        self.rows += 1;
        Ok(())
    }

    /// Rank over `field` by Gaussian elimination, pivoting on the first
    /// nonzero entry of each column.
    pub fn rank(&self, field: &PrimeField) -> usize {
        let (rows, cols) = (self.rows, self.cols);
        if rows == 0 || cols == 0 {
            return 0;
        }
        let p = field.modulus();
        let mut a: Vec<u32> = self
            .entries
            .iter()
            .map(|&v| (u64::from(v) % p) as u32)
            .collect();
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(pivot) = (rank..rows).find(|&r| a[r * cols + col] != 0) else {
                continue;
            };
            if pivot != rank {
                for c in col..cols {
                    a.swap(pivot * cols + c, rank * cols + c);
                }
            }
            let inv = u64::from(field.inv(a[rank * cols + col]));
            for v in &mut a[rank * cols + col..(rank + 1) * cols] {
                *v = (u64::from(*v) * inv % p) as u32;
            }
            let (top, bottom) = a.split_at_mut((rank + 1) * cols);
            let pivot_row = &top[rank * cols + col..];
            for row in bottom.chunks_exact_mut(cols) {
                let f = row[col];
                if f == 0 {
                    continue;
                }
                let m = p - u64::from(f);
                for (v, &pv) in row[col..].iter_mut().zip(pivot_row) {
                    *v = ((u64::from(*v) + m * u64::from(pv)) % p) as u32;
                }
            }
            rank += 1;
        }
        rank
    }
}
