//! Representable clustering.
//!
//! A representer is a small, possibly partial, directed network that acts as
//! a template for what a cluster looks like. For a pair of nodes `x, x'` of a
//! network, the optimal multiple is the smallest `λ` such that some map from
//! the representer into the network, with `x` and `x'` in its image, is
//! dissimilarity reducing from `λ` times the representer. A family of
//! representers induces the symmetric matrix of optimal multiples (minimized
//! over members), and the representable method is single linkage applied to
//! that matrix.
//!
//! Optimal multiples are computed exactly by enumerating all maps. Directed
//! cycles with equal arc weights and the three-node two-weight cycle have
//! closed forms that are used automatically by [`lambda_family`];
//! [`lambda_family_enumerated`] always enumerates.

use crate::error::{Error, Result};
use crate::matrix::CostMatrix;
use crate::minimax::{hop_sequence, single_linkage_matrix};
use crate::network::Network;
use crate::ultrametric::Ultrametric;

/// Maximum number of node maps a single enumeration may evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(10_000_000);
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

/// A weakly connected directed network whose dissimilarity is defined only
/// on a subset of node pairs (its arcs).
#[derive(Debug, Clone, PartialEq)]
pub struct Representer {
    nodes: Vec<String>,
    /// (from, to, weight), sorted by (from, to)
    arcs: Vec<(usize, usize, f64)>,
}

impl Representer {
    /// Builds a representer from arcs given by node label.
    pub fn new<S: AsRef<str>>(nodes: Vec<String>, arcs: &[(S, S, f64)]) -> Result<Self> {
        let index = |label: &str| {
            nodes
                .iter()
                .position(|n| n == label)
                .ok_or_else(|| Error::UnknownLabel(label.to_owned()))
        };
        let indexed = arcs
            .iter()
            .map(|(a, b, w)| Ok((index(a.as_ref())?, index(b.as_ref())?, *w)))
            .collect::<Result<Vec<_>>>()?;
        Representer::from_indices(nodes, indexed)
    }

    /// Builds a representer from arcs given by node index.
    pub fn from_indices(nodes: Vec<String>, mut arcs: Vec<(usize, usize, f64)>) -> Result<Self> {
        let k = nodes.len();
        if k < 2 {
            return Err(Error::TooFewNodes(k));
        }
        crate::network::check_unique(&nodes)?;
        if arcs.is_empty() {
            return Err(Error::NoArcs);
        }
        for &(a, b, w) in &arcs {
            if a >= k || b >= k {
                return Err(Error::InvalidArgument(format!(
                    "arc ({a}, {b}) references a node outside 0..{k}"
                )));
            }
            if a == b {
                return Err(Error::SelfArc(nodes[a].clone()));
            }
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::NonPositiveArc {
                    from: nodes[a].clone(),
                    to: nodes[b].clone(),
                    weight: w,
                });
            }
        }
        arcs.sort_by_key(|&(a, b, _)| (a, b));
        for pair in arcs.windows(2) {
            if (pair[0].0, pair[0].1) == (pair[1].0, pair[1].1) {
                return Err(Error::DuplicateArc(
                    nodes[pair[0].0].clone(),
                    nodes[pair[0].1].clone(),
                ));
            }
        }
        if !weakly_connected(k, &arcs) {
            return Err(Error::NotWeaklyConnected);
        }
        Ok(Representer { nodes, arcs })
    }

    /// Two nodes with both arcs of weight 1. Represents reciprocal clustering.
    pub fn reciprocal() -> Self {
        Representer::cycle(2).expect("length 2 is valid")
    }

    /// Directed cycle `z0 → z1 → ... → z(len-1) → z0`, every arc weight 1,
    /// reverse arcs undefined.
    pub fn cycle(len: usize) -> Result<Self> {
        if len < 2 {
            return Err(Error::InvalidLength(len));
        }
        let nodes = (0..len).map(|i| format!("z{i}")).collect();
        let arcs = (0..len).map(|i| (i, (i + 1) % len, 1.0)).collect();
        Representer::from_indices(nodes, arcs)
    }

    /// Three nodes, weight 1 on the cycle `z0 → z1 → z2 → z0` and weight
    /// `reverse` on the opposite arcs.
    pub fn three_cycle(reverse: f64) -> Result<Self> {
        let nodes = vec!["z0".into(), "z1".into(), "z2".into()];
        let mut arcs = Vec::with_capacity(6);
        for i in 0..3 {
            arcs.push((i, (i + 1) % 3, 1.0));
            arcs.push(((i + 1) % 3, i, reverse));
        }
        Representer::from_indices(nodes, arcs)
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Defined arcs as `(from, to, weight)` by node index.
    pub fn arcs(&self) -> &[(usize, usize, f64)] {
        &self.arcs
    }

    /// Smallest defined arc weight.
    pub fn sep(&self) -> f64 {
        self.arcs.iter().map(|a| a.2).fold(f64::INFINITY, f64::min)
    }

    /// Largest defined arc weight.
    pub fn max_arc(&self) -> f64 {
        self.arcs.iter().map(|a| a.2).fold(0.0, f64::max)
    }

    /// Arc weight if every node has exactly one outgoing and one incoming arc,
    /// the arcs form a single cycle through all nodes, and all weights agree.
    fn uniform_cycle_weight(&self) -> Option<f64> {
        let k = self.len();
        if self.arcs.len() != k {
            return None;
        }
        let w = self.arcs[0].2;
        let mut next = vec![usize::MAX; k];
        let mut indegree = vec![0usize; k];
        for &(a, b, weight) in &self.arcs {
            if weight != w || next[a] != usize::MAX {
                return None;
            }
            next[a] = b;
            indegree[b] += 1;
        }
        if indegree.iter().any(|&d| d != 1) {
            return None;
        }
        let mut at = 0;
        for _ in 0..k - 1 {
            at = next[at];
            if at == 0 {
                return None;
            }
        }
        (next[at] == 0).then_some(w)
    }

    /// `(forward, reverse)` weights for a complete three-node representer
    /// whose arcs on the cycle `0 → 1 → 2 → 0` share one weight and whose
    /// opposite arcs share another.
    fn three_cycle_weights(&self) -> Option<(f64, f64)> {
        if self.len() != 3 || self.arcs.len() != 6 {
            return None;
        }
        let weight = |a: usize, b: usize| {
            self.arcs
                .iter()
                .find(|arc| arc.0 == a && arc.1 == b)
                .map(|arc| arc.2)
        };
        let forward = [weight(0, 1)?, weight(1, 2)?, weight(2, 0)?];
        let reverse = [weight(1, 0)?, weight(2, 1)?, weight(0, 2)?];
        let same = |w: [f64; 3]| w[0] == w[1] && w[1] == w[2];
        (same(forward) && same(reverse)).then_some((forward[0], reverse[0]))
    }
}

fn weakly_connected(k: usize, arcs: &[(usize, usize, f64)]) -> bool {
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(a, b, _) in arcs {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let root = find(&mut parent, 0);
    (1..k).all(|i| find(&mut parent, i) == root)
}

/// A finite, nonempty collection of representers with its uniform bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct RepresenterFamily {
    members: Vec<Representer>,
    sep: f64,
    d_max: f64,
}

impl RepresenterFamily {
    pub fn new(members: Vec<Representer>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let sep = members.iter().map(Representer::sep).fold(f64::INFINITY, f64::min);
        let d_max = members.iter().map(Representer::max_arc).fold(0.0, f64::max);
        Ok(RepresenterFamily {
            members,
            sep,
            d_max,
        })
    }

    pub fn single(member: Representer) -> Self {
        RepresenterFamily::new(vec![member]).expect("one member")
    }

    pub fn members(&self) -> &[Representer] {
        &self.members
    }

    /// Smallest arc weight over all members.
    pub fn sep(&self) -> f64 {
        self.sep
    }

    /// Largest arc weight over all members.
    pub fn d_max(&self) -> f64 {
        self.d_max
    }
}

/// Directed cycles of every length `2..=max_len`, arcs of weight 1.
///
/// With `max_len >= 2n - 2` the family reproduces nonreciprocal clustering on
/// networks with `n` nodes; see [`nonreciprocal_family`].
pub fn cycle_family(max_len: usize) -> Result<RepresenterFamily> {
    if max_len < 2 {
        return Err(Error::InvalidLength(max_len));
    }
    RepresenterFamily::new((2..=max_len).map(Representer::cycle).collect::<Result<_>>()?)
}

/// The cycle family long enough for networks with `n` nodes:
/// `cycle_family(max(2, 2n - 2))`.
pub fn nonreciprocal_family(n: usize) -> RepresenterFamily {
    cycle_family((2 * n).saturating_sub(2).max(2)).expect("length >= 2")
}

/// Lipschitz constant of a representable method: `1 / sep`.
pub fn stability_constant(family: &RepresenterFamily) -> f64 {
    1.0 / family.sep()
}

/// Assignment of every representer node to a network node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeMap(pub Vec<usize>);

impl NodeMap {
    /// All representer nodes mapped to one network node.
    pub fn constant(k: usize, target: usize) -> Self {
        NodeMap(vec![target; k])
    }

    pub fn image(&self) -> Vec<usize> {
        let mut img = self.0.clone();
        img.sort_unstable();
        img.dedup();
        img
    }
}

/// Smallest multiple of `representer` under which `map` is dissimilarity
/// reducing into `network`: the largest ratio `A(φz, φz') / A_ω(z, z')`
/// over defined arcs. Arcs collapsed onto one node contribute 0.
pub fn expansion_constant(map: &NodeMap, representer: &Representer, network: &Network) -> Result<f64> {
    if map.0.len() != representer.len() {
        return Err(Error::InvalidNodeMap(format!(
            "map has {} entries for {} representer nodes",
            map.0.len(),
            representer.len()
        )));
    }
    if let Some(&bad) = map.0.iter().find(|&&x| x >= network.len()) {
        return Err(Error::InvalidNodeMap(format!(
            "target {bad} outside a network of {} nodes",
            network.len()
        )));
    }
    Ok(expansion(&map.0, representer, network))
}

#[inline]
fn expansion(map: &[usize], representer: &Representer, network: &Network) -> f64 {
    representer
        .arcs
        .iter()
        .map(|&(a, b, w)| network.get(map[a], map[b]) / w)
        .fold(0.0, f64::max)
}

fn map_count(network: &Network, representer: &Representer, budget: Budget) -> Result<u128> {
    let maps = (network.len() as u128)
        .checked_pow(representer.len() as u32)
        .unwrap_or(u128::MAX);
    if maps > budget.0 as u128 {
        return Err(Error::ComplexityGuard {
            maps,
            budget: budget.0,
        });
    }
    Ok(maps)
}

/// Visits every map from `k` representer nodes into `n` network nodes, in
/// mixed-radix order with the first representer node as the least
/// significant digit.
fn for_each_map(k: usize, n: usize, mut visit: impl FnMut(&[usize])) {
    let mut digits = vec![0usize; k];
    loop {
        visit(&digits);
        let mut pos = 0;
        loop {
            if pos == k {
                return;
            }
            digits[pos] += 1;
            if digits[pos] < n {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

/// Minimum expansion constant over all maps whose image contains both `x`
/// and `x_prime`, by exhaustive enumeration.
pub fn optimal_multiple(
    representer: &Representer,
    network: &Network,
    x: usize,
    x_prime: usize,
    budget: Budget,
) -> Result<f64> {
    let n = network.len();
    if x >= n || x_prime >= n {
        return Err(Error::InvalidArgument(format!(
            "node index out of range for a network of {n} nodes"
        )));
    }
    if x == x_prime {
        return Ok(0.0);
    }
    map_count(network, representer, budget)?;
    let mut best = f64::INFINITY;
    for_each_map(representer.len(), n, |map| {
        if map.contains(&x) && map.contains(&x_prime) {
            best = best.min(expansion(map, representer, network));
        }
    });
    Ok(best)
}

/// Matrix of optimal multiples of one representer for every pair, by
/// enumerating each map once and crediting every pair in its image.
fn member_lambda_enumerated(
    representer: &Representer,
    network: &Network,
    budget: Budget,
) -> Result<CostMatrix> {
    let n = network.len();
    map_count(network, representer, budget)?;
    let mut lambda = CostMatrix::constant(n, f64::INFINITY);
    let mut image = Vec::with_capacity(representer.len());
    for_each_map(representer.len(), n, |map| {
        image.clear();
        image.extend_from_slice(map);
        image.sort_unstable();
        image.dedup();
        if image.len() < 2 {
            return;
        }
        let c = expansion(map, representer, network);
        for (a, &i) in image.iter().enumerate() {
            for &j in &image[a + 1..] {
                if c < lambda[(i, j)] {
                    lambda[(i, j)] = c;
                    lambda[(j, i)] = c;
                }
            }
        }
    });
    Ok(lambda)
}

/// Closed form for a directed cycle of `len` nodes with every arc weighing
/// `weight`: a map is a closed walk of `len` steps (stays allowed), so the
/// optimal multiple splits into a walk `x → x'` of `p` steps and a walk
/// `x' → x` of `len - p` steps.
fn member_lambda_uniform_cycle(network: &Network, len: usize, weight: f64) -> CostMatrix {
    let n = network.len();
    let hops = hop_sequence(network.matrix(), len - 1);
    CostMatrix::from_fn(n, |i, j| {
        if i == j {
            return 0.0;
        }
        let best = (1..len)
            .map(|p| hops[p - 1][(i, j)].max(hops[len - p - 1][(j, i)]))
            .fold(f64::INFINITY, f64::min);
        best / weight
    })
}

/// Closed form for the complete three-node representer with `forward` weight
/// on one orientation of the cycle and `reverse` on the other.
fn member_lambda_three_cycle(network: &Network, forward: f64, reverse: f64) -> CostMatrix {
    let n = network.len();
    let a = |i: usize, j: usize| network.get(i, j);
    let b = CostMatrix::from_fn(n, |i, j| {
        if i == j {
            return 0.0;
        }
        (0..n)
            .map(|k| {
                (a(i, j) / forward)
                    .max(a(j, k) / forward)
                    .max(a(k, i) / forward)
                    .max(a(j, i) / reverse)
                    .max(a(k, j) / reverse)
                    .max(a(i, k) / reverse)
            })
            .fold(f64::INFINITY, f64::min)
    });
    b.min_symmetrized()
}

/// Optimal multiples of the three-node cycle representer with forward
/// weight 1 and reverse weight `r`, via the `O(n³)` matrix formula
/// `B(i, j) = min_k max(A(i,j), A(j,k), A(k,i), A(j,i)/r, A(k,j)/r, A(i,k)/r)`
/// followed by `min(B, Bᵀ)`.
pub fn fast_lambda_cycle3(network: &Network, r: f64) -> Result<CostMatrix> {
    if !(r > 1.0 && r.is_finite()) {
        return Err(Error::InvalidRatio(r));
    }
    Ok(member_lambda_three_cycle(network, 1.0, r))
}

fn min_over_members(
    family: &RepresenterFamily,
    network: &Network,
    mut member: impl FnMut(&Representer) -> Result<CostMatrix>,
) -> Result<CostMatrix> {
    let mut lambda: Option<CostMatrix> = None;
    for rep in family.members() {
        let m = member(rep)?;
        lambda = Some(match lambda {
            None => m,
            Some(acc) => acc.elementwise_min(&m),
        });
    }
    Ok(lambda.unwrap_or_else(|| CostMatrix::zeros(network.len())))
}

/// Symmetric matrix of optimal multiples, minimized over the family.
/// Recognized cycle shapes use their closed forms; other members are
/// enumerated under `budget`.
pub fn lambda_family(
    family: &RepresenterFamily,
    network: &Network,
    budget: Budget,
) -> Result<CostMatrix> {
    min_over_members(family, network, |rep| {
        if let Some(w) = rep.uniform_cycle_weight() {
            Ok(member_lambda_uniform_cycle(network, rep.len(), w))
        } else if let Some((f, r)) = rep.three_cycle_weights() {
            Ok(member_lambda_three_cycle(network, f, r))
        } else {
            member_lambda_enumerated(rep, network, budget)
        }
    })
}

/// Same as [`lambda_family`] but always by exhaustive map enumeration.
pub fn lambda_family_enumerated(
    family: &RepresenterFamily,
    network: &Network,
    budget: Budget,
) -> Result<CostMatrix> {
    min_over_members(family, network, |rep| {
        member_lambda_enumerated(rep, network, budget)
    })
}

/// Representable clustering: single linkage on [`lambda_family`].
pub fn representable_cluster(
    family: &RepresenterFamily,
    network: &Network,
    budget: Budget,
) -> Result<Ultrametric> {
    let lambda = lambda_family(family, network, budget)?;
    Ok(single_linkage_matrix(network.labels().to_vec(), &lambda))
}

/// Network of optimal multiples, i.e. the symmetric network that the
/// representable method hands to single linkage.
pub fn symmetrize(family: &RepresenterFamily, network: &Network, budget: Budget) -> Result<Network> {
    let lambda = lambda_family(family, network, budget)?;
    Ok(Network::from_parts_unchecked(network.labels().to_vec(), lambda))
}

/// Labels of arcs grouped by source; used by the file writers.
pub(crate) fn arcs_by_label(rep: &Representer) -> Vec<(String, String, f64)> {
    rep.arcs
        .iter()
        .map(|&(a, b, w)| (rep.nodes[a].clone(), rep.nodes[b].clone(), w))
        .collect()
}
