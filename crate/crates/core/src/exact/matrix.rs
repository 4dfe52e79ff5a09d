use std::ops::{Index, IndexMut};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("row {row} has {len} entries, expected {n}")]
    NonSquare { row: usize, len: usize, n: usize },
}

/// Dense square matrix, row-major, indexed from zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T> SquareMatrix<T> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let data = (0..n * n).map(|idx| f(idx / n, idx % n)).collect();
        SquareMatrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, MatrixError> {
        let n = rows.len();
        if let Some((row, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(MatrixError::NonSquare { row, len: r.len(), n });
        }
        Ok(SquareMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> SquareMatrix<U> {
        SquareMatrix {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T> Index<(usize, usize)> for SquareMatrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.n && j < self.n, "index ({i}, {j}) out of range");
        &self.data[i * self.n + j]
    }
}

impl<T> IndexMut<(usize, usize)> for SquareMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.n && j < self.n, "index ({i}, {j}) out of range");
        &mut self.data[i * self.n + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_ragged_rows() {
        let err = SquareMatrix::from_rows(vec![vec![1, 2], vec![3]]).unwrap_err();
        assert_eq!(err, MatrixError::NonSquare { row: 1, len: 1, n: 2 });
        assert!(SquareMatrix::from_rows(vec![vec![1, 2, 3]]).is_err());
    }

    #[test]
    fn indexing() {
        let m = SquareMatrix::from_fn(3, |i, j| 10 * i + j);
        assert_eq!(m[(2, 1)], 21);
        assert_eq!(m.row(1), &[10, 11, 12]);
        assert_eq!(SquareMatrix::<u8>::from_rows(vec![]).unwrap().dim(), 0);
    }
}
