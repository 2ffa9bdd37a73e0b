//! Dendrograms as merge sequences, and their equivalence with ultrametrics.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::CostMatrix;
use crate::network::check_unique;
use crate::ultrametric::Ultrametric;

/// One merge event: the listed blocks (leaf indices, each sorted) become a
/// single block at `resolution`.
#[derive(Debug, Clone, PartialEq)]
pub struct Merge {
    pub resolution: f64,
    pub blocks: Vec<Vec<usize>>,
}

impl Merge {
    /// Union of the merged blocks, sorted.
    pub fn merged(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.blocks.iter().flatten().copied().collect();
        all.sort_unstable();
        all
    }
}

/// Nested partitions of `leaves`, from all singletons at resolution 0 to a
/// single block at the last merge.
///
/// The canonical form, produced by [`Dendrogram::from_ultrametric`], emits one
/// multi-way merge per connected component at each distinct resolution. Events
/// sharing a resolution, and the blocks inside an event, are ordered by
/// smallest member.
#[derive(Debug, Clone, PartialEq)]
pub struct Dendrogram {
    leaves: Vec<String>,
    merges: Vec<Merge>,
}

impl Dendrogram {
    /// Validates a merge sequence.
    ///
    /// Rejects non-monotone or non-positive resolutions, blocks that are not
    /// current blocks (splits, overlaps), merges of fewer than two blocks, a
    /// block merged again at the resolution it was created at, and sequences
    /// that do not end in a single block.
    pub fn new(leaves: Vec<String>, merges: Vec<Merge>) -> Result<Self> {
        let malformed = |m: String| Err(Error::MalformedMergeSequence(m));
        if leaves.is_empty() {
            return Err(Error::EmptyNetwork);
        }
        check_unique(&leaves)?;
        let n = leaves.len();
        // current block -> resolution at which it was formed
        let mut current: BTreeMap<Vec<usize>, f64> =
            (0..n).map(|i| (vec![i], 0.0)).collect();
        let mut last = 0.0_f64;
        for (e, merge) in merges.iter().enumerate() {
            let r = merge.resolution;
            if !(r.is_finite() && r > 0.0) {
                return malformed(format!("merge {e} has resolution {r}"));
            }
            if r < last {
                return malformed(format!("merge {e} at {r} follows a merge at {last}"));
            }
            last = r;
            if merge.blocks.len() < 2 {
                return malformed(format!("merge {e} joins fewer than two blocks"));
            }
            for block in &merge.blocks {
                if block.iter().any(|&i| i >= n) {
                    return malformed(format!("merge {e} references an unknown leaf"));
                }
                let mut sorted = block.clone();
                sorted.sort_unstable();
                match current.remove(&sorted) {
                    Some(formed) if formed == r => {
                        return malformed(format!(
                            "merge {e} re-merges a block formed at the same resolution {r}"
                        ))
                    }
                    Some(_) => {}
                    None => {
                        return malformed(format!(
                            "merge {e} uses a block that is not current: {block:?}"
                        ))
                    }
                }
            }
            current.insert(merge.merged(), r);
        }
        if current.len() != 1 {
            return malformed(format!(
                "merges end with {} blocks instead of one",
                current.len()
            ));
        }
        let merges = merges
            .into_iter()
            .map(|m| Merge {
                resolution: m.resolution,
                blocks: m
                    .blocks
                    .into_iter()
                    .map(|mut b| {
                        b.sort_unstable();
                        b
                    })
                    .collect(),
            })
            .collect();
        Ok(Dendrogram { leaves, merges })
    }

    /// Canonical dendrogram of an ultrametric.
    pub fn from_ultrametric(u: &Ultrametric) -> Dendrogram {
        let n = u.len();
        let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                pairs.push((u.get(i, j), i, j));
            }
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));

        // block id per leaf; blocks by id
        let mut block_of: Vec<usize> = (0..n).collect();
        let mut blocks: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        let mut merges = Vec::new();
        let mut start = 0;
        while start < pairs.len() {
            let value = pairs[start].0;
            let mut end = start;
            while end < pairs.len() && pairs[end].0 == value {
                end += 1;
            }
            // union-find over current block ids, restricted to this level
            let mut parent: Vec<usize> = (0..blocks.len()).collect();
            for &(_, i, j) in &pairs[start..end] {
                let (a, b) = (find(&mut parent, block_of[i]), find(&mut parent, block_of[j]));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
            let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for (id, block) in blocks.iter().enumerate() {
                if block.is_empty() {
                    continue;
                }
                let root = find(&mut parent, id);
                groups.entry(root).or_default().push(id);
            }
            let mut level: Vec<Merge> = Vec::new();
            for ids in groups.into_values().filter(|ids| ids.len() > 1) {
                let mut merged_blocks: Vec<Vec<usize>> =
                    ids.iter().map(|&id| std::mem::take(&mut blocks[id])).collect();
                merged_blocks.sort_by_key(|b| b[0]);
                let merge = Merge {
                    resolution: value,
                    blocks: merged_blocks,
                };
                let union = merge.merged();
                let new_id = blocks.len();
                for &leaf in &union {
                    block_of[leaf] = new_id;
                }
                blocks.push(union);
                level.push(merge);
            }
            level.sort_by_key(|m| m.blocks[0][0]);
            merges.extend(level);
            start = end;
        }
        Dendrogram {
            leaves: u.labels().to_vec(),
            merges,
        }
    }

    pub fn leaves(&self) -> &[String] {
        &self.leaves
    }

    pub fn merges(&self) -> &[Merge] {
        &self.merges
    }

    /// `u(x, x')` is the resolution of the merge that first joins `x` and `x'`.
    pub fn to_ultrametric(&self) -> Ultrametric {
        let n = self.leaves.len();
        let mut values = CostMatrix::zeros(n);
        for merge in &self.merges {
            for (a, left) in merge.blocks.iter().enumerate() {
                for right in &merge.blocks[a + 1..] {
                    for &i in left {
                        for &j in right {
                            values[(i, j)] = merge.resolution;
                            values[(j, i)] = merge.resolution;
                        }
                    }
                }
            }
        }
        Ultrametric::from_parts_unchecked(self.leaves.clone(), values)
    }

    /// Largest merge resolution, 0 for a single leaf.
    pub fn height(&self) -> f64 {
        self.merges.last().map_or(0.0, |m| m.resolution)
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn two_nodes() {
        let u = Ultrametric::new(["p", "q"], &[vec![0., 3.], vec![3., 0.]]).unwrap();
        let d = Dendrogram::from_ultrametric(&u);
        assert_eq!(
            d.merges(),
            &[Merge {
                resolution: 3.0,
                blocks: vec![vec![0], vec![1]]
            }]
        );
        assert_eq!(d.to_ultrametric(), u);
    }

    #[test]
    fn two_levels() {
        let u = Ultrametric::new(
            ["a", "b", "c"],
            &[vec![0., 1., 2.], vec![1., 0., 2.], vec![2., 2., 0.]],
        )
        .unwrap();
        let d = Dendrogram::from_ultrametric(&u);
        assert_eq!(
            d.merges(),
            &[
                Merge {
                    resolution: 1.0,
                    blocks: vec![vec![0], vec![1]]
                },
                Merge {
                    resolution: 2.0,
                    blocks: vec![vec![0, 1], vec![2]]
                },
            ]
        );
        let built = Dendrogram::new(labels(&["a", "b", "c"]), d.merges().to_vec()).unwrap();
        assert_eq!(built.to_ultrametric(), u);
    }

    #[test]
    fn single_node_has_no_merges() {
        let u = Ultrametric::new(["a"], &[vec![0.]]).unwrap();
        let d = Dendrogram::from_ultrametric(&u);
        assert!(d.merges().is_empty());
        assert_eq!(d.height(), 0.0);
        assert_eq!(d.to_ultrametric(), u);
    }

    #[test]
    fn ties_become_multiway_merges_per_component() {
        // {a,c} and {b,d} both form at 1; everything joins at 2.
        let u = Ultrametric::new(
            ["a", "b", "c", "d"],
            &[
                vec![0., 2., 1., 2.],
                vec![2., 0., 2., 1.],
                vec![1., 2., 0., 2.],
                vec![2., 1., 2., 0.],
            ],
        )
        .unwrap();
        let d = Dendrogram::from_ultrametric(&u);
        assert_eq!(d.merges().len(), 3);
        assert_eq!(d.merges()[0].blocks, vec![vec![0], vec![2]]);
        assert_eq!(d.merges()[1].blocks, vec![vec![1], vec![3]]);
        assert_eq!(d.merges()[2].blocks, vec![vec![0, 2], vec![1, 3]]);

        let flat = Ultrametric::new(
            ["a", "b", "c"],
            &[vec![0., 4., 4.], vec![4., 0., 4.], vec![4., 4., 0.]],
        )
        .unwrap();
        let d = Dendrogram::from_ultrametric(&flat);
        assert_eq!(d.merges().len(), 1);
        assert_eq!(d.merges()[0].blocks, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn malformed_sequences() {
        let l = labels(&["a", "b", "c"]);
        let m = |r: f64, blocks: Vec<Vec<usize>>| Merge {
            resolution: r,
            blocks,
        };
        let bad = [
            // non-monotone
            vec![m(2., vec![vec![0], vec![1]]), m(1., vec![vec![0, 1], vec![2]])],
            // split: {0} is no longer a block
            vec![m(1., vec![vec![0], vec![1]]), m(2., vec![vec![0], vec![2]])],
            // incomplete
            vec![m(1., vec![vec![0], vec![1]])],
            // zero resolution
            vec![m(0., vec![vec![0], vec![1]]), m(1., vec![vec![0, 1], vec![2]])],
            // chained at same resolution
            vec![m(1., vec![vec![0], vec![1]]), m(1., vec![vec![0, 1], vec![2]])],
            // singleton merge
            vec![m(1., vec![vec![0, 1, 2]])],
            // unknown leaf
            vec![m(1., vec![vec![0], vec![1], vec![2], vec![7]])],
        ];
        for merges in bad {
            let err = Dendrogram::new(l.clone(), merges.clone()).unwrap_err();
            assert!(
                matches!(err, Error::MalformedMergeSequence(_)),
                "{merges:?} gave {err:?}"
            );
        }
    }
}
