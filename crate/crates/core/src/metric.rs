//! Gromov–Hausdorff-type distance between networks.
//!
//! `d(N_X, N_Y) = ½ min_R max_{(x,y),(x',y') ∈ R} |A_X(x, x') − A_Y(y, y')|`
//! where `R` ranges over correspondences: relations between the node sets in
//! which every node of either side appears. Computing it is hard in general;
//! [`network_distance_exact`] searches all correspondences and is meant for
//! networks with a handful of nodes.

use crate::error::{Error, Result};
use crate::network::Network;

/// Default cap on `|X| * |Y|` for the exact distance.
pub const DEFAULT_RELATION_BITS: usize = 25;

/// A left- and right-total relation between the nodes of two networks,
/// stored as sorted, deduplicated index pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Correspondence {
    pairs: Vec<(usize, usize)>,
}

impl Correspondence {
    /// Checks totality against node counts `m` (left) and `n` (right).
    pub fn new(mut pairs: Vec<(usize, usize)>, m: usize, n: usize) -> Result<Self> {
        pairs.sort_unstable();
        pairs.dedup();
        if let Some(&(x, y)) = pairs.iter().find(|&&(x, y)| x >= m || y >= n) {
            return Err(Error::NotTotal(format!("pair ({x}, {y}) outside {m} x {n}")));
        }
        let mut left = vec![false; m];
        let mut right = vec![false; n];
        for &(x, y) in &pairs {
            left[x] = true;
            right[y] = true;
        }
        if let Some(x) = left.iter().position(|c| !c) {
            return Err(Error::NotTotal(format!("left node {x} is unmatched")));
        }
        if let Some(y) = right.iter().position(|c| !c) {
            return Err(Error::NotTotal(format!("right node {y} is unmatched")));
        }
        Ok(Correspondence { pairs })
    }

    /// `{(i, i)}` for two node sets of equal size.
    pub fn identity(n: usize) -> Self {
        Correspondence {
            pairs: (0..n).map(|i| (i, i)).collect(),
        }
    }

    /// Every pair in `X × Y`.
    pub fn full(m: usize, n: usize) -> Self {
        Correspondence {
            pairs: (0..m).flat_map(|x| (0..n).map(move |y| (x, y))).collect(),
        }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn transpose(&self) -> Self {
        let mut pairs: Vec<_> = self.pairs.iter().map(|&(x, y)| (y, x)).collect();
        pairs.sort_unstable();
        Correspondence { pairs }
    }
}

/// Half the largest dissimilarity mismatch over all ordered pairs of pairs
/// in `r`.
pub fn correspondence_distortion(r: &Correspondence, nx: &Network, ny: &Network) -> Result<f64> {
    let r = Correspondence::new(r.pairs.clone(), nx.len(), ny.len())?;
    Ok(0.5 * raw_distortion(&r.pairs, nx, ny))
}

fn raw_distortion(pairs: &[(usize, usize)], nx: &Network, ny: &Network) -> f64 {
    let mut worst = 0.0_f64;
    for &(x, y) in pairs {
        for &(x2, y2) in pairs {
            worst = worst.max((nx.get(x, x2) - ny.get(y, y2)).abs());
        }
    }
    worst
}

/// Exact network distance with the default size cap.
pub fn network_distance_exact(nx: &Network, ny: &Network) -> Result<f64> {
    network_distance_exact_with_cap(nx, ny, DEFAULT_RELATION_BITS)
}

/// Exact network distance, searching every correspondence when
/// `|X| * |Y| <= cap_bits`.
///
/// Branch and bound over the pairs of `X × Y`: adding a pair never lowers
/// the distortion, so a partial relation whose distortion already reaches the
/// best complete one is abandoned.
pub fn network_distance_exact_with_cap(nx: &Network, ny: &Network, cap_bits: usize) -> Result<f64> {
    let (m, n) = (nx.len(), ny.len());
    let bits = m * n;
    if bits > cap_bits {
        return Err(Error::TooLargeForExact {
            bits,
            cap: cap_bits,
        });
    }
    let mut search = Search {
        nx,
        ny,
        m,
        n,
        chosen: Vec::with_capacity(bits),
        right_count: vec![0; n],
        best: f64::INFINITY,
    };
    search.descend(0, 0.0);
    Ok(0.5 * search.best)
}

struct Search<'a> {
    nx: &'a Network,
    ny: &'a Network,
    m: usize,
    n: usize,
    chosen: Vec<(usize, usize)>,
    right_count: Vec<usize>,
    best: f64,
}

impl Search<'_> {
    /// Decide pair number `pos` (row-major over `X × Y`); `worst` is the raw
    /// distortion of the pairs chosen so far.
    fn descend(&mut self, pos: usize, worst: f64) {
        if worst >= self.best {
            return;
        }
        if pos == self.m * self.n {
            if self.right_count.iter().all(|&c| c > 0) {
                self.best = worst;
            }
            return;
        }
        let (x, y) = (pos / self.n, pos % self.n);

        // Including (x, y).
        let mut with = worst;
        for &(x2, y2) in &self.chosen {
            with = with
                .max((self.nx.get(x, x2) - self.ny.get(y, y2)).abs())
                .max((self.nx.get(x2, x) - self.ny.get(y2, y)).abs());
        }
        self.chosen.push((x, y));
        self.right_count[y] += 1;
        self.descend(pos + 1, with);
        self.right_count[y] -= 1;
        self.chosen.pop();

        // Excluding (x, y): x must still be matched by the end of its row,
        // and y must still be reachable from a later row.
        let row_end = y == self.n - 1;
        let x_matched = self.chosen.last().is_some_and(|&(cx, _)| cx == x);
        if row_end && !x_matched {
            return;
        }
        let last_row = x == self.m - 1;
        if last_row && self.right_count[y] == 0 {
            return;
        }
        self.descend(pos + 1, worst);
    }
}

/// Every correspondence between node sets of sizes `m` and `n`, as bitmasks
/// over row-major `X × Y` (bit `x * n + y`). Plain enumeration; used to
/// cross-check the counting formula and the branch-and-bound search.
pub fn enumerate_correspondences(m: usize, n: usize) -> Result<Vec<u64>> {
    let bits = m * n;
    if bits > DEFAULT_RELATION_BITS {
        return Err(Error::TooLargeForExact {
            bits,
            cap: DEFAULT_RELATION_BITS,
        });
    }
    let row_mask = (1u64 << n) - 1;
    let col_mask: u64 = (0..m).map(|x| 1u64 << (x * n)).sum();
    let total = |rel: u64| {
        (0..m).all(|x| (rel >> (x * n)) & row_mask != 0)
            && (0..n).all(|y| rel & (col_mask << y) != 0)
    };
    Ok((0..(1u64 << bits)).filter(|&rel| total(rel)).collect())
}

/// Turns a bitmask from [`enumerate_correspondences`] into pairs.
pub fn correspondence_from_mask(mask: u64, m: usize, n: usize) -> Result<Correspondence> {
    let pairs = (0..m * n)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| (b / n, b % n))
        .collect();
    Correspondence::new(pairs, m, n)
}

/// Number of correspondences between sets of sizes `m` and `n`, by
/// inclusion–exclusion over the rows and columns left unmatched:
/// `Σ_{i,j} (−1)^{i+j} C(m,i) C(n,j) 2^{(m−i)(n−j)}`.
pub fn count_correspondences(m: usize, n: usize) -> Result<u64> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument("set sizes must be positive".into()));
    }
    if m * n > 30 {
        return Err(Error::Overflow(m, n));
    }
    let mut total: i128 = 0;
    for i in 0..=m {
        for j in 0..=n {
            let term = binomial(m, i) * binomial(n, j) * (1i128 << ((m - i) * (n - j)));
            if (i + j) % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
    }
    u64::try_from(total).map_err(|_| Error::Overflow(m, n))
}

fn binomial(n: usize, k: usize) -> i128 {
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(a: f64, b: f64) -> Network {
        Network::two_node(a, b).unwrap()
    }

    #[test]
    fn distortions() {
        let (x, y) = (t(2.0, 3.0), t(2.0, 5.0));
        assert_eq!(correspondence_distortion(&Correspondence::identity(2), &x, &y).unwrap(), 1.0);
        assert_eq!(correspondence_distortion(&Correspondence::full(2, 2), &x, &y).unwrap(), 2.5);
        assert_eq!(correspondence_distortion(&Correspondence::identity(2), &x, &x).unwrap(), 0.0);
        let err = correspondence_distortion(
            &Correspondence { pairs: vec![(0, 0)] },
            &x,
            &y,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotTotal(_)));
    }

    #[test]
    fn exact_distance_examples() {
        let (x, y) = (t(2.0, 3.0), t(2.0, 5.0));
        assert_eq!(network_distance_exact(&x, &y).unwrap(), 1.0);
        assert_eq!(network_distance_exact(&x, &x).unwrap(), 0.0);
        let big = Network::with_default_labels(crate::CostMatrix::constant(6, 1.0)).unwrap();
        assert_eq!(
            network_distance_exact(&big, &big).unwrap_err(),
            Error::TooLargeForExact { bits: 36, cap: 25 }
        );
    }

    #[test]
    fn brute_force_agrees_on_small_cases() {
        let x = Network::three_cycle(1.0, 5.0).unwrap();
        let y = t(2.0, 3.0);
        let brute = enumerate_correspondences(3, 2)
            .unwrap()
            .into_iter()
            .map(|mask| {
                let r = correspondence_from_mask(mask, 3, 2).unwrap();
                correspondence_distortion(&r, &x, &y).unwrap()
            })
            .fold(f64::INFINITY, f64::min);
        assert_eq!(network_distance_exact(&x, &y).unwrap(), brute);
        assert_eq!(network_distance_exact(&y, &x).unwrap(), brute);
    }

    #[test]
    fn counts() {
        assert_eq!(count_correspondences(1, 1).unwrap(), 1);
        assert_eq!(count_correspondences(2, 2).unwrap(), 7);
        assert_eq!(count_correspondences(2, 3).unwrap(), 25);
        assert_eq!(count_correspondences(5, 7).unwrap_err(), Error::Overflow(5, 7));
        for m in 1..=4 {
            for n in 1..=4 {
                assert_eq!(
                    enumerate_correspondences(m, n).unwrap().len() as u64,
                    count_correspondences(m, n).unwrap(),
                    "({m}, {n})"
                );
            }
        }
    }
}
