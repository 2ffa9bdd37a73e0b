//! Ultrametrics: the output of every hierarchical clustering method, and the
//! partitions obtained by cutting them at a resolution.

use crate::error::{Error, Result};
use crate::matrix::{eq_tol, le_tol, CostMatrix};
use crate::network::{check_unique, Network};

/// Symmetric dissimilarity, zero exactly on the diagonal, satisfying
/// `u(i, j) <= max(u(i, k), u(k, j))` for every triple.
///
/// Symmetry and the strong triangle inequality are checked with relative
/// tolerance [`REL_TOL`](crate::matrix::REL_TOL) and absolute floor
/// [`ABS_TOL`](crate::matrix::ABS_TOL).
#[derive(Debug, Clone, PartialEq)]
pub struct Ultrametric {
    labels: Vec<String>,
    values: CostMatrix,
}

/// A partition of the nodes at a given resolution. Blocks list their members
/// in node order and are sorted by smallest member.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    pub resolution: f64,
    pub blocks: Vec<Vec<String>>,
}

impl Ultrametric {
    pub fn new<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        rows: &[Vec<f64>],
    ) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if rows.len() != labels.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} labels but {} rows",
                labels.len(),
                rows.len()
            )));
        }
        let values = CostMatrix::from_rows(rows).ok_or_else(|| {
            Error::ShapeMismatch(format!("matrix with {} rows is not square", rows.len()))
        })?;
        Ultrametric::from_matrix(labels, values)
    }

    pub fn from_matrix(labels: Vec<String>, values: CostMatrix) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptyNetwork);
        }
        if labels.len() != values.size() {
            return Err(Error::ShapeMismatch(format!(
                "{} labels but a {}x{} matrix",
                labels.len(),
                values.size(),
                values.size()
            )));
        }
        check_unique(&labels)?;
        if let Some(e) = find_violation(&labels, &values) {
            return Err(e);
        }
        Ok(Ultrametric { labels, values })
    }

    /// For matrices produced by the clustering kernels. Debug builds still
    /// run the full check.
    pub(crate) fn from_parts_unchecked(labels: Vec<String>, values: CostMatrix) -> Self {
        debug_assert!(
            find_violation(&labels, &values).is_none(),
            "kernel produced an invalid ultrametric: {:?}",
            find_violation(&labels, &values)
        );
        Ultrametric { labels, values }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values.get(i, j)
    }

    pub fn matrix(&self) -> &CostMatrix {
        &self.values
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Distinct positive values in increasing order: the merge resolutions.
    pub fn merge_values(&self) -> Vec<f64> {
        let mut vals: Vec<f64> = self.values.off_diagonal().collect();
        vals.sort_by(f64::total_cmp);
        vals.dedup();
        vals
    }

    /// The ultrametric viewed as a (symmetric) network, e.g. to measure
    /// network distances between clustering outputs.
    pub fn to_network(&self) -> Network {
        Network::from_parts_unchecked(self.labels.clone(), self.values.clone())
    }

    pub fn restrict(&self, indices: &[usize]) -> Ultrametric {
        Ultrametric {
            labels: indices.iter().map(|&i| self.labels[i].clone()).collect(),
            values: self.values.submatrix(indices),
        }
    }

    /// Blocks of the partition at `delta`, as node indices.
    pub fn cut_indices(&self, delta: f64) -> Result<Vec<Vec<usize>>> {
        if delta.is_nan() || delta < 0.0 {
            return Err(Error::NegativeResolution(delta));
        }
        let n = self.len();
        let mut block_of = vec![usize::MAX; n];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            if block_of[i] != usize::MAX {
                continue;
            }
            let id = blocks.len();
            let members: Vec<usize> = (i..n)
                .filter(|&j| block_of[j] == usize::MAX && self.get(i, j) <= delta)
                .collect();
            for &j in &members {
                block_of[j] = id;
            }
            blocks.push(members);
        }
        Ok(blocks)
    }

    /// Partition into the equivalence classes of `u(x, x') <= delta`.
    pub fn cut(&self, delta: f64) -> Result<Partition> {
        let blocks = self
            .cut_indices(delta)?
            .into_iter()
            .map(|b| b.into_iter().map(|i| self.labels[i].clone()).collect())
            .collect();
        Ok(Partition {
            resolution: delta,
            blocks,
        })
    }
}

fn find_violation(labels: &[String], u: &CostMatrix) -> Option<Error> {
    let n = u.size();
    let lbl = |i: usize| labels[i].clone();
    for i in 0..n {
        for j in 0..n {
            let v = u.get(i, j);
            if !v.is_finite() || v < 0.0 {
                return Some(Error::IdentityViolation(lbl(i), lbl(j)));
            }
            if (i == j) != (v == 0.0) {
                return Some(Error::IdentityViolation(lbl(i), lbl(j)));
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if !eq_tol(u.get(i, j), u.get(j, i)) {
                return Some(Error::NotSymmetric(lbl(i), lbl(j)));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let v = u.get(i, j);
            for k in 0..n {
                if !le_tol(v, u.get(i, k).max(u.get(k, j))) {
                    return Some(Error::StrongTriangleViolation(lbl(i), lbl(j), lbl(k)));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc(rows: &[Vec<f64>]) -> Result<Ultrametric> {
        Ultrametric::new(["a", "b", "c"], rows)
    }

    #[test]
    fn validation() {
        abc(&[vec![0., 1., 2.], vec![1., 0., 2.], vec![2., 2., 0.]]).unwrap();
        let err = abc(&[vec![0., 1., 3.], vec![1., 0., 2.], vec![3., 2., 0.]]).unwrap_err();
        assert_eq!(
            err,
            Error::StrongTriangleViolation("a".into(), "c".into(), "b".into())
        );
        let err = Ultrametric::new(["a", "b"], &[vec![0., 1.], vec![2., 0.]]).unwrap_err();
        assert_eq!(err, Error::NotSymmetric("a".into(), "b".into()));
        let err = Ultrametric::new(["a", "b"], &[vec![0., 0.], vec![0., 0.]]).unwrap_err();
        assert_eq!(err, Error::IdentityViolation("a".into(), "b".into()));
        let err = Ultrametric::new(["a", "b"], &[vec![1., 2.], vec![2., 0.]]).unwrap_err();
        assert_eq!(err, Error::IdentityViolation("a".into(), "a".into()));
    }

    #[test]
    fn tolerance_accepts_rounding_noise() {
        let eps = 1e-15;
        abc(&[
            vec![0., 1., 2.],
            vec![1., 0., 2. + eps],
            vec![2., 2. + eps, 0.],
        ])
        .unwrap();
        Ultrametric::new(["a", "b"], &[vec![0., 1.], vec![1. + 1e-13, 0.]]).unwrap();
    }

    #[test]
    fn cuts() {
        let u = abc(&[vec![0., 5., 5.], vec![5., 0., 5.], vec![5., 5., 0.]]).unwrap();
        assert_eq!(u.cut(1.0).unwrap().blocks.len(), 3);
        let p = u.cut(5.0).unwrap();
        assert_eq!(p.blocks, vec![vec!["a", "b", "c"]]);
        assert_eq!(p.resolution, 5.0);
        assert_eq!(u.cut(0.0).unwrap().blocks.len(), 3);
        assert_eq!(u.cut(-1.0).unwrap_err(), Error::NegativeResolution(-1.0));
        assert!(matches!(u.cut(f64::NAN), Err(Error::NegativeResolution(_))));

        let u = abc(&[vec![0., 2., 1.], vec![2., 0., 2.], vec![1., 2., 0.]]).unwrap();
        assert_eq!(u.cut(1.5).unwrap().blocks, vec![vec!["a", "c"], vec!["b"]]);
        assert_eq!(u.merge_values(), vec![1.0, 2.0]);
    }
}
