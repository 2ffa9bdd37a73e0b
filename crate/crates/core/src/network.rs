//! Finite directed networks with positive, possibly asymmetric dissimilarities.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::matrix::CostMatrix;

/// A finite set of labeled nodes and a total dissimilarity function between
/// them.
///
/// Dissimilarities are non-negative, zero exactly on the diagonal, finite, and
/// need not be symmetric: `get(i, j)` is the dissimilarity *from* node `i`
/// *to* node `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    labels: Vec<String>,
    dissim: CostMatrix,
}

impl Network {
    /// Validates `rows` against `labels` and builds a network.
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
        let dissim = CostMatrix::from_rows(rows).ok_or_else(|| {
            Error::ShapeMismatch(format!("matrix with {} rows is not square", rows.len()))
        })?;
        Network::from_matrix(labels, dissim)
    }

    /// Validates an already assembled matrix.
    pub fn from_matrix(labels: Vec<String>, dissim: CostMatrix) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptyNetwork);
        }
        if labels.len() != dissim.size() {
            return Err(Error::ShapeMismatch(format!(
                "{} labels but a {}x{} matrix",
                labels.len(),
                dissim.size(),
                dissim.size()
            )));
        }
        check_unique(&labels)?;
        validate_dissimilarities(&dissim)?;
        Ok(Network { labels, dissim })
    }

    /// Network with labels `x0, x1, ...`.
    pub fn with_default_labels(dissim: CostMatrix) -> Result<Self> {
        let labels = (0..dissim.size()).map(|i| format!("x{i}")).collect();
        Network::from_matrix(labels, dissim)
    }

    /// Crate-internal constructor for matrices produced by operations that
    /// preserve the network invariants.
    pub(crate) fn from_parts_unchecked(labels: Vec<String>, dissim: CostMatrix) -> Self {
        debug_assert!(validate_dissimilarities(&dissim).is_ok());
        Network { labels, dissim }
    }

    /// Two nodes `p`, `q` with `A(p, q) = alpha` and `A(q, p) = beta`.
    pub fn two_node(alpha: f64, beta: f64) -> Result<Self> {
        Network::new(["p", "q"], &[vec![0.0, alpha], vec![beta, 0.0]])
    }

    /// Three nodes `a, b, c` with `forward` on the cycle a→b→c→a and
    /// `backward` on the reverse arcs.
    pub fn three_cycle(forward: f64, backward: f64) -> Result<Self> {
        let (f, b) = (forward, backward);
        Network::new(
            ["a", "b", "c"],
            &[vec![0.0, f, b], vec![b, 0.0, f], vec![f, b, 0.0]],
        )
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always `false`: networks have at least one node.
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.dissim.get(i, j)
    }

    pub fn matrix(&self) -> &CostMatrix {
        &self.dissim
    }

    pub fn is_symmetric(&self) -> bool {
        self.dissim.first_asymmetry().is_none()
    }

    /// The multiple `alpha * N`: every dissimilarity multiplied by `alpha`.
    pub fn scale(&self, alpha: f64) -> Result<Network> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::NonPositiveScale(alpha));
        }
        let dissim = self.dissim.map(|v| alpha * v);
        // Underflow or overflow can still break the invariants.
        validate_dissimilarities(&dissim)?;
        Ok(Network {
            labels: self.labels.clone(),
            dissim,
        })
    }

    /// Restriction of the network to `block`, in the network's label order.
    pub fn subnetwork<S: AsRef<str>>(&self, block: &[S]) -> Result<Network> {
        if block.is_empty() {
            return Err(Error::EmptyBlock);
        }
        let mut indices = Vec::with_capacity(block.len());
        for label in block {
            let label = label.as_ref();
            let i = self
                .index_of(label)
                .ok_or_else(|| Error::UnknownLabel(label.to_owned()))?;
            indices.push(i);
        }
        indices.sort_unstable();
        indices.dedup();
        Ok(self.subnetwork_indices(&indices))
    }

    /// Restriction to the given node indices, in the given order.
    pub fn subnetwork_indices(&self, indices: &[usize]) -> Network {
        Network {
            labels: indices.iter().map(|&i| self.labels[i].clone()).collect(),
            dissim: self.dissim.submatrix(indices),
        }
    }

    /// Same dissimilarities under new labels (e.g. a relabeled copy).
    pub fn relabeled(&self, labels: Vec<String>) -> Result<Network> {
        Network::from_matrix(labels, self.dissim.clone())
    }
}

pub(crate) fn check_unique(labels: &[String]) -> Result<()> {
    let mut seen = HashSet::with_capacity(labels.len());
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

fn validate_dissimilarities(m: &CostMatrix) -> Result<()> {
    let n = m.size();
    for row in 0..n {
        for col in 0..n {
            let value = m.get(row, col);
            if !value.is_finite() {
                return Err(Error::NonFinite { row, col });
            }
            if row == col {
                if value != 0.0 {
                    return Err(Error::NonZeroDiagonal { row, col, value });
                }
            } else if value <= 0.0 {
                return Err(Error::NonPositiveOffDiagonal { row, col, value });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_node_is_valid() {
        let n = Network::new(["p", "q"], &[vec![0.0, 2.0], vec![3.0, 0.0]]).unwrap();
        assert_eq!(n, Network::two_node(2.0, 3.0).unwrap());
        assert_eq!(n.get(0, 1), 2.0);
        assert_eq!(n.get(1, 0), 3.0);
    }

    #[test]
    fn validation_errors() {
        let err = Network::new(["p", "q"], &[vec![0.0, 0.0], vec![3.0, 0.0]]).unwrap_err();
        assert!(matches!(err, Error::NonPositiveOffDiagonal { row: 0, col: 1, .. }));
        let err = Network::new(["p", "q"], &[vec![1.0, 2.0], vec![3.0, 0.0]]).unwrap_err();
        assert!(matches!(err, Error::NonZeroDiagonal { row: 0, col: 0, .. }));
        let err = Network::new(["p", "q"], &[vec![0.0, f64::INFINITY], vec![3.0, 0.0]])
            .unwrap_err();
        assert_eq!(err, Error::NonFinite { row: 0, col: 1 });
        let err = Network::new(["p", "q"], &[vec![0.0, f64::NAN], vec![3.0, 0.0]]).unwrap_err();
        assert_eq!(err, Error::NonFinite { row: 0, col: 1 });
        let err = Network::new(["p", "p"], &[vec![0.0, 2.0], vec![3.0, 0.0]]).unwrap_err();
        assert_eq!(err, Error::DuplicateLabel("p".into()));
        let err = Network::new(["p", "q", "r"], &[vec![0.0, 2.0], vec![3.0, 0.0]]).unwrap_err();
        assert!(matches!(err, Error::ShapeMismatch(_)));
        let err = Network::new(["p", "q"], &[vec![0.0, 2.0, 1.0], vec![3.0, 0.0]]).unwrap_err();
        assert!(matches!(err, Error::ShapeMismatch(_)));
        let err = Network::new(Vec::<String>::new(), &[]).unwrap_err();
        assert_eq!(err, Error::EmptyNetwork);
    }

    #[test]
    fn scaling() {
        let t = Network::two_node(2.0, 3.0).unwrap();
        assert_eq!(t.scale(2.0).unwrap(), Network::two_node(4.0, 6.0).unwrap());
        assert_eq!(
            Network::three_cycle(1.0, 5.0).unwrap().scale(3.0).unwrap(),
            Network::three_cycle(3.0, 15.0).unwrap()
        );
        assert_eq!(t.scale(1.0).unwrap(), t);
        assert_eq!(t.scale(0.0).unwrap_err(), Error::NonPositiveScale(0.0));
        assert!(matches!(t.scale(-1.0), Err(Error::NonPositiveScale(_))));
        assert!(matches!(t.scale(f64::NAN), Err(Error::NonPositiveScale(_))));
        let tiny = Network::two_node(1e-10, 1e-10).unwrap();
        assert!(matches!(tiny.scale(1e-320), Err(Error::NonPositiveOffDiagonal { .. })));
    }

    #[test]
    fn subnetworks() {
        let c3 = Network::three_cycle(1.0, 5.0).unwrap();
        assert_eq!(c3.subnetwork(&["a", "b", "c"]).unwrap(), c3);
        assert_eq!(c3.subnetwork(&["c", "a", "b"]).unwrap(), c3);
        let ab = c3.subnetwork(&["a", "b"]).unwrap();
        assert_eq!(ab.labels(), ["a", "b"]);
        assert_eq!(ab.matrix().to_rows(), vec![vec![0.0, 1.0], vec![5.0, 0.0]]);
        let single = c3.subnetwork(&["b"]).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single.get(0, 0), 0.0);
        assert_eq!(c3.subnetwork::<&str>(&[]).unwrap_err(), Error::EmptyBlock);
        assert_eq!(
            c3.subnetwork(&["z"]).unwrap_err(),
            Error::UnknownLabel("z".into())
        );
    }
}
