//! Min-max (bottleneck) path algebra.
//!
//! The cost of a chain is its largest link dissimilarity; the kernels here
//! minimize that cost over chains. Only `min` and `max` are applied to input
//! entries, so every output entry is one of the input entries, bit for bit.

use crate::error::{Error, Result};
use crate::matrix::CostMatrix;
use crate::network::Network;
use crate::ultrametric::Ultrametric;

/// Directed minimum chain cost between every ordered pair.
///
/// Floyd–Warshall over the (min, max) semiring. Updating in place is safe:
/// during round `k` row and column `k` are fixed points because the diagonal
/// is zero.
pub fn minmax_closure(a: &CostMatrix) -> CostMatrix {
    let n = a.size();
    let mut u = a.clone();
    for k in 0..n {
        for i in 0..n {
            let uik = u[(i, k)];
            if i == k {
                continue;
            }
            for j in 0..n {
                let via = uik.max(u[(k, j)]);
                if via < u[(i, j)] {
                    u[(i, j)] = via;
                }
            }
        }
    }
    u
}

/// One min-max product step: `(M ⊗ A)(i, j) = min_k max(M(i, k), A(k, j))`.
pub fn minmax_product(m: &CostMatrix, a: &CostMatrix) -> CostMatrix {
    let n = m.size();
    assert_eq!(n, a.size(), "matrix sizes differ");
    CostMatrix::from_fn(n, |i, j| {
        (0..n)
            .map(|k| m[(i, k)].max(a[(k, j)]))
            .fold(f64::INFINITY, f64::min)
    })
}

/// Minimum chain cost over chains of at most `t` nodes (at most `t - 1`
/// links).
pub fn bounded_hop_minmax(a: &CostMatrix, t: usize) -> Result<CostMatrix> {
    if t < 2 {
        return Err(Error::InvalidHopBound(t));
    }
    let mut m = a.clone();
    // t - 2 extra hops; beyond n - 1 links nothing changes
    let rounds = (t - 2).min(a.size().saturating_sub(2));
    for _ in 0..rounds {
        let next = m.elementwise_min(&minmax_product(&m, a));
        if next == m {
            break;
        }
        m = next;
    }
    Ok(m)
}

/// Walk costs with at most `1, 2, ..., max_links` links, returned in order.
/// Zero-cost stays on the diagonal let a walk use fewer links than allowed.
pub(crate) fn hop_sequence(a: &CostMatrix, max_links: usize) -> Vec<CostMatrix> {
    let mut out = Vec::with_capacity(max_links);
    if max_links == 0 {
        return out;
    }
    out.push(a.clone());
    while out.len() < max_links {
        let last = out.last().expect("non-empty");
        let next = if out.len() >= a.size().saturating_sub(1) {
            last.clone()
        } else {
            last.elementwise_min(&minmax_product(last, a))
        };
        out.push(next);
    }
    out
}

/// Single linkage ultrametric of a symmetric network.
pub fn single_linkage(network: &Network) -> Result<Ultrametric> {
    if let Some((i, j)) = network.matrix().first_asymmetry() {
        return Err(Error::AsymmetricInput(
            network.label(i).to_owned(),
            network.label(j).to_owned(),
        ));
    }
    Ok(single_linkage_matrix(network.labels().to_vec(), network.matrix()))
}

/// Single linkage on a matrix already known to be symmetric with a zero
/// diagonal and positive off-diagonal entries.
pub(crate) fn single_linkage_matrix(labels: Vec<String>, sym: &CostMatrix) -> Ultrametric {
    debug_assert!(sym.first_asymmetry().is_none());
    Ultrametric::from_parts_unchecked(labels, minmax_closure(sym))
}
