//! Dense square matrices of dissimilarities.

use std::fmt;
use std::ops::{Index, IndexMut};

/// Square row-major matrix of non-negative dissimilarities.
///
/// This is the working type of the min-max algebra: network dissimilarities,
/// directed minimum chain costs and symmetrized costs are all `CostMatrix`
/// values. No validation is attached; the wrapping [`Network`](crate::Network)
/// and [`Ultrametric`](crate::Ultrametric) types enforce their own invariants.
#[derive(Clone, PartialEq)]
pub struct CostMatrix {
    n: usize,
    data: Vec<f64>,
}

impl CostMatrix {
    /// An `n x n` matrix filled with zeros.
    pub fn zeros(n: usize) -> Self {
        CostMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    /// Zero diagonal, `value` everywhere else.
    pub fn constant(n: usize, value: f64) -> Self {
        let mut m = CostMatrix {
            n,
            data: vec![value; n * n],
        };
        for i in 0..n {
            m[(i, i)] = 0.0;
        }
        m
    }

    /// Returns `None` if the rows are ragged or the data is not square.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Option<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            let row = row.as_ref();
            if row.len() != n {
                return None;
            }
            data.extend_from_slice(row);
        }
        Some(CostMatrix { n, data })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        CostMatrix { n, data }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks(self.n.max(1)).take(self.n)
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.rows().map(<[f64]>::to_vec).collect()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        CostMatrix::from_fn(self.n, |i, j| self.get(j, i))
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        CostMatrix {
            n: self.n,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Entrywise `max(M, Mᵀ)`.
    pub fn max_symmetrized(&self) -> Self {
        CostMatrix::from_fn(self.n, |i, j| self.get(i, j).max(self.get(j, i)))
    }

    /// Entrywise `min(M, Mᵀ)`.
    pub fn min_symmetrized(&self) -> Self {
        CostMatrix::from_fn(self.n, |i, j| self.get(i, j).min(self.get(j, i)))
    }

    pub fn elementwise_min(&self, other: &CostMatrix) -> Self {
        assert_eq!(self.n, other.n, "matrix sizes differ");
        CostMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.min(*b))
                .collect(),
        }
    }

    /// Restriction to the given rows/columns, in the given order.
    pub fn submatrix(&self, indices: &[usize]) -> Self {
        CostMatrix::from_fn(indices.len(), |a, b| self.get(indices[a], indices[b]))
    }

    /// Exact symmetry check; returns the first asymmetric pair.
    pub fn first_asymmetry(&self) -> Option<(usize, usize)> {
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.get(i, j) != self.get(j, i) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// `true` if every entry is `<=` the corresponding entry of `other`.
    pub fn le(&self, other: &CostMatrix) -> bool {
        self.n == other.n && self.data.iter().zip(&other.data).all(|(a, b)| a <= b)
    }

    /// Off-diagonal entries, row-major.
    pub fn off_diagonal(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n)
            .flat_map(move |i| (0..self.n).map(move |j| (i, j)))
            .filter(|(i, j)| i != j)
            .map(move |(i, j)| self.get(i, j))
    }
}

impl Index<(usize, usize)> for CostMatrix {
    type Output = f64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for CostMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

impl fmt::Debug for CostMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

/// Relative tolerance used by the ultrametric and symmetry checks.
pub const REL_TOL: f64 = 1e-9;
/// Absolute floor for [`REL_TOL`].
pub const ABS_TOL: f64 = 1e-12;

/// `a <= b` up to the validation tolerance.
#[inline]
pub(crate) fn le_tol(a: f64, b: f64) -> bool {
    a <= b + ABS_TOL.max(REL_TOL * a.abs().max(b.abs()))
}

#[inline]
pub(crate) fn eq_tol(a: f64, b: f64) -> bool {
    le_tol(a, b) && le_tol(b, a)
}
