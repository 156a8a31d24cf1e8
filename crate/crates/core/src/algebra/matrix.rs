//! Dense square matrices over a [`Ring`].

use super::ring::Ring;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R> {
    dim: usize,
    entries: Vec<R>,
    one: R,
}

impl<R: Ring> Matrix<R> {
    /// `one` fixes the coefficient ring (needed for the empty matrix).
    pub fn from_fn(dim: usize, one: R, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Matrix { dim, entries, one }
    }

    pub fn from_rows(rows: Vec<Vec<R>>, one: R) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        Matrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
            one,
        }
    }

    pub fn zeros(dim: usize, one: R) -> Self {
        let zero = one.zero_like();
        Self::from_fn(dim, one, |_, _| zero.clone())
    }

    pub fn identity(dim: usize, one: R) -> Self {
        let zero = one.zero_like();
        let o = one.clone();
        Self::from_fn(dim, one, |i, j| if i == j { o.clone() } else { zero.clone() })
    }

    pub fn diagonal(diag: Vec<R>, one: R) -> Self {
        let zero = one.zero_like();
        Self::from_fn(diag.len(), one, |i, j| if i == j { diag[i].clone() } else { zero.clone() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn one(&self) -> &R {
        &self.one
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> Vec<Vec<R>> {
        (0..self.dim).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, self.one.clone(), |i, j| self.get(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn map<S: Ring>(&self, one: S, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            dim: self.dim,
            entries: self.entries.iter().map(f).collect(),
            one,
        }
    }

    pub fn try_map<S: Ring, E>(&self, one: S, f: impl Fn(&R) -> Result<S, E>) -> Result<Matrix<S>, E> {
        Ok(Matrix {
            dim: self.dim,
            entries: self.entries.iter().map(f).collect::<Result<_, E>>()?,
            one,
        })
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        Self::from_fn(self.dim, self.one.clone(), |i, j| self.get(i, j).add(rhs.get(i, j)))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        Self::from_fn(self.dim, self.one.clone(), |i, j| self.get(i, j).sub(rhs.get(i, j)))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        let zero = self.one.zero_like();
        Self::from_fn(self.dim, self.one.clone(), |i, j| {
            let mut acc = zero.clone();
            for k in 0..self.dim {
                let a = self.get(i, k);
                if !a.is_zero() {
                    acc = acc.add(&a.mul(rhs.get(k, j)));
                }
            }
            acc
        })
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(self.one.clone(), |x| x.mul(c))
    }

    /// Principal-style submatrix on the given row and column indices.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        assert_eq!(rows.len(), cols.len());
        Self::from_fn(rows.len(), self.one.clone(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// The matrix with row `r` and column `c` deleted.
    pub fn minor(&self, r: usize, c: usize) -> Self {
        let rows: Vec<usize> = (0..self.dim).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..self.dim).filter(|&j| j != c).collect();
        self.submatrix(&rows, &cols)
    }

    pub fn trace(&self) -> R {
        let mut acc = self.one.zero_like();
        for i in 0..self.dim {
            acc = acc.add(self.get(i, i));
        }
        acc
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.dim, self.one.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}
