//! Executable checks of the axioms and robustness properties, plus the
//! seeded random generators they run on.
//!
//! Every check returns a [`CheckReport`]. A failing report carries a
//! [`Witness`] holding the offending instance, so it can be replayed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::CostMatrix;
use crate::methods::ClusteringMethod;
use crate::metric::network_distance_exact;
use crate::network::Network;
use crate::ultrametric::Ultrametric;

/// Slack on the stability inequality; all other checks are exact.
pub const STABILITY_TOLERANCE: f64 = 1e-12;

/// Range of generated off-diagonal dissimilarities.
pub const RANDOM_RANGE: (f64, f64) = (0.1, 10.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    Value,
    Transformation,
    Excisiveness,
    ScalePreservation,
    Stability,
    Sandwich,
}

/// A network as plain data, for embedding in reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NetworkRecord {
    pub labels: Vec<String>,
    pub matrix: Vec<Vec<f64>>,
}

impl From<&Network> for NetworkRecord {
    fn from(n: &Network) -> Self {
        NetworkRecord {
            labels: n.labels().to_vec(),
            matrix: n.matrix().to_rows(),
        }
    }
}

/// Inputs and offending values of a failed check.
#[derive(Debug, Clone, PartialEq, Serialize, Default)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub networks: Vec<NetworkRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parameter: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub observed: Option<f64>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub property: Property,
    pub method: String,
    pub passed: bool,
    pub trials: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl CheckReport {
    fn pass(property: Property, method: &dyn ClusteringMethod, trials: usize) -> Self {
        CheckReport {
            property,
            method: method.name(),
            passed: true,
            trials,
            witness: None,
        }
    }

    fn fail(property: Property, method: &dyn ClusteringMethod, trials: usize, w: Witness) -> Self {
        CheckReport {
            property,
            method: method.name(),
            passed: false,
            trials,
            witness: Some(w),
        }
    }

    /// Attaches a seed to the witness, if any.
    pub fn with_seed(mut self, seed: u64) -> Self {
        if let Some(w) = self.witness.as_mut() {
            w.seed = Some(seed);
        }
        self
    }

    /// Folds several reports of the same property into one; the first
    /// failure is kept as the witness.
    pub fn merge(reports: impl IntoIterator<Item = CheckReport>) -> Option<CheckReport> {
        let mut iter = reports.into_iter();
        let mut acc = iter.next()?;
        for r in iter {
            acc.trials += r.trials;
            if acc.passed && !r.passed {
                acc.passed = false;
                acc.witness = r.witness;
            }
        }
        Some(acc)
    }
}

// ---------------------------------------------------------------------------
// Generators

/// Deterministic, platform-independent generator for a seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn draw(rng: &mut impl Rng) -> f64 {
    rng.gen_range(RANDOM_RANGE.0..=RANDOM_RANGE.1)
}

/// Network with i.i.d. uniform off-diagonal dissimilarities, labels `x0..`.
pub fn random_network(rng: &mut impl Rng, n: usize) -> Network {
    let m = CostMatrix::from_fn(n, |i, j| if i == j { 0.0 } else { draw(rng) });
    Network::with_default_labels(m).expect("generated values are valid")
}

/// Symmetric variant of [`random_network`].
pub fn random_symmetric_network(rng: &mut impl Rng, n: usize) -> Network {
    let mut m = CostMatrix::zeros(n);
    for i in 0..n {
        for j in i + 1..n {
            let v = draw(rng);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    Network::with_default_labels(m).expect("generated values are valid")
}

/// Random ultrametric with `n` leaves, built by merging random blocks at
/// increasing random resolutions (ties and multi-way merges included).
pub fn random_ultrametric(rng: &mut impl Rng, n: usize) -> Ultrametric {
    let mut blocks: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    let mut values = CostMatrix::zeros(n);
    let mut level = 0.0;
    while blocks.len() > 1 {
        // occasionally reuse the previous level to create ties
        if level == 0.0 || rng.gen_bool(0.7) {
            level += rng.gen_range(0.1..2.0);
        }
        blocks.shuffle(rng);
        let take = rng.gen_range(2..=blocks.len().min(3));
        let merged: Vec<Vec<usize>> = blocks.drain(..take).collect();
        for (a, left) in merged.iter().enumerate() {
            for right in &merged[a + 1..] {
                for &i in left {
                    for &j in right {
                        values[(i, j)] = level;
                        values[(j, i)] = level;
                    }
                }
            }
        }
        blocks.push(merged.concat());
    }
    let labels = (0..n).map(|i| format!("x{i}")).collect();
    Ultrametric::from_matrix(labels, values).expect("constructed by merging")
}

/// A dissimilarity-reducing pair `φ: N_X → N_Y`.
#[derive(Debug, Clone)]
pub struct ReducingPair {
    pub nx: Network,
    pub ny: Network,
    /// `phi[x]` is the node of `N_Y` that `x` maps to.
    pub phi: Vec<usize>,
}

/// Random `N_Y` with `n_y` nodes, random surjection `φ` from `n_x` nodes, and
/// `A_X(x, x') = A_Y(φx, φx') + noise` (fresh values where `φ` collapses the
/// pair), so that `A_X >= A_Y ∘ φ` everywhere.
pub fn generate_reducing_pair(seed: u64, n_y: usize, n_x: usize) -> Result<ReducingPair> {
    if n_y == 0 || n_x < n_y {
        return Err(Error::InvalidArgument(format!(
            "need n_x >= n_y >= 1, got n_x = {n_x}, n_y = {n_y}"
        )));
    }
    let mut rng = rng(seed);
    let ny = random_network(&mut rng, n_y);
    let mut phi: Vec<usize> = (0..n_y).chain((n_y..n_x).map(|_| rng.gen_range(0..n_y))).collect();
    phi.shuffle(&mut rng);
    let m = CostMatrix::from_fn(n_x, |i, j| {
        if i == j {
            0.0
        } else if phi[i] == phi[j] {
            draw(&mut rng)
        } else {
            ny.get(phi[i], phi[j]) + rng.gen_range(0.0..1.0)
        }
    });
    let nx = Network::with_default_labels(m).expect("generated values are valid");
    Ok(ReducingPair { nx, ny, phi })
}

// ---------------------------------------------------------------------------
// Checks

/// Two-node law: the method must return `max(alpha, beta)` on the two-node
/// network with dissimilarities `alpha` and `beta`.
pub fn check_value_axiom(method: &dyn ClusteringMethod, alpha: f64, beta: f64) -> Result<CheckReport> {
    let t = Network::two_node(alpha, beta)?;
    let u = method.cluster(&t)?;
    let expected = alpha.max(beta);
    let observed = u.get(0, 1);
    if observed == expected {
        Ok(CheckReport::pass(Property::Value, method, 1))
    } else {
        Ok(CheckReport::fail(
            Property::Value,
            method,
            1,
            Witness {
                networks: vec![(&t).into()],
                pair: Some(("p".into(), "q".into())),
                expected: Some(expected),
                observed: Some(observed),
                note: "two-node network not clustered at max(alpha, beta)".into(),
                ..Witness::default()
            },
        ))
    }
}

/// Output of `N_X` must dominate the output of `N_Y` pulled back through a
/// dissimilarity-reducing `φ`.
pub fn check_transformation_axiom(
    method: &dyn ClusteringMethod,
    nx: &Network,
    ny: &Network,
    phi: &[usize],
) -> Result<CheckReport> {
    if phi.len() != nx.len() || phi.iter().any(|&y| y >= ny.len()) {
        return Err(Error::InvalidArgument("map does not fit the networks".into()));
    }
    for i in 0..nx.len() {
        for j in 0..nx.len() {
            if nx.get(i, j) < ny.get(phi[i], phi[j]) {
                return Err(Error::NotReducing(
                    nx.label(i).to_owned(),
                    nx.label(j).to_owned(),
                ));
            }
        }
    }
    let ux = method.cluster(nx)?;
    let uy = method.cluster(ny)?;
    for i in 0..nx.len() {
        for j in 0..nx.len() {
            let (lhs, rhs) = (ux.get(i, j), uy.get(phi[i], phi[j]));
            if lhs < rhs {
                return Ok(CheckReport::fail(
                    Property::Transformation,
                    method,
                    1,
                    Witness {
                        networks: vec![nx.into(), ny.into()],
                        pair: Some((nx.label(i).to_owned(), nx.label(j).to_owned())),
                        expected: Some(rhs),
                        observed: Some(lhs),
                        note: format!("map {phi:?}: u_X below u_Y after mapping"),
                        ..Witness::default()
                    },
                ));
            }
        }
    }
    Ok(CheckReport::pass(Property::Transformation, method, 1))
}

/// Reclusters every block of the output at resolution `delta` and compares it
/// with the restriction of the output to that block.
pub fn check_excisiveness(method: &dyn ClusteringMethod, network: &Network, delta: f64) -> Result<CheckReport> {
    if delta.is_nan() || delta <= 0.0 {
        return Err(Error::NegativeResolution(delta));
    }
    let u = method.cluster(network)?;
    excisive_at(method, network, &u, delta)
}

fn excisive_at(
    method: &dyn ClusteringMethod,
    network: &Network,
    u: &Ultrametric,
    delta: f64,
) -> Result<CheckReport> {
    let blocks = u.cut_indices(delta)?;
    let trials = blocks.len();
    for block in blocks {
        let restricted = u.restrict(&block);
        let reclustered = method.cluster(&network.subnetwork_indices(&block))?;
        let n = block.len();
        for a in 0..n {
            for b in 0..n {
                if reclustered.get(a, b) != restricted.get(a, b) {
                    return Ok(CheckReport::fail(
                        Property::Excisiveness,
                        method,
                        trials,
                        Witness {
                            networks: vec![network.into()],
                            pair: Some((
                                network.label(block[a]).to_owned(),
                                network.label(block[b]).to_owned(),
                            )),
                            parameter: Some(delta),
                            expected: Some(restricted.get(a, b)),
                            observed: Some(reclustered.get(a, b)),
                            note: "reclustered block differs from the restricted output".into(),
                            ..Witness::default()
                        },
                    ));
                }
            }
        }
    }
    Ok(CheckReport::pass(Property::Excisiveness, method, trials))
}

/// Resolutions at which excisiveness is checked: every distinct merge value
/// of `u` and the midpoints between consecutive ones.
pub fn excisiveness_sweep(u: &Ultrametric) -> Vec<f64> {
    let values = u.merge_values();
    let mut out = Vec::with_capacity(2 * values.len());
    for (i, &v) in values.iter().enumerate() {
        out.push(v);
        if let Some(&next) = values.get(i + 1) {
            out.push(0.5 * (v + next));
        }
    }
    out
}

/// Excisiveness at every resolution of [`excisiveness_sweep`].
pub fn check_excisiveness_all(method: &dyn ClusteringMethod, network: &Network) -> Result<CheckReport> {
    let u = method.cluster(network)?;
    let mut reports = Vec::new();
    for delta in excisiveness_sweep(&u) {
        let r = excisive_at(method, network, &u, delta)?;
        let failed = !r.passed;
        reports.push(r);
        if failed {
            break;
        }
    }
    Ok(CheckReport::merge(reports).unwrap_or_else(|| CheckReport::pass(Property::Excisiveness, method, 0)))
}

/// `method(alpha * N) == alpha * method(N)`, entrywise and exactly.
pub fn check_scale_preservation(method: &dyn ClusteringMethod, network: &Network, alpha: f64) -> Result<CheckReport> {
    let scaled = network.scale(alpha)?;
    let u = method.cluster(network)?;
    let us = method.cluster(&scaled)?;
    let n = network.len();
    for i in 0..n {
        for j in 0..n {
            let expected = alpha * u.get(i, j);
            let observed = us.get(i, j);
            if observed != expected {
                return Ok(CheckReport::fail(
                    Property::ScalePreservation,
                    method,
                    1,
                    Witness {
                        networks: vec![network.into()],
                        pair: Some((network.label(i).to_owned(), network.label(j).to_owned())),
                        parameter: Some(alpha),
                        expected: Some(expected),
                        observed: Some(observed),
                        note: format!(
                            "output scaled by {} instead of {alpha}",
                            observed / u.get(i, j)
                        ),
                        ..Witness::default()
                    },
                ));
            }
        }
    }
    Ok(CheckReport::pass(Property::ScalePreservation, method, 1))
}

/// `d(method(N_X), method(N_Y)) <= L * d(N_X, N_Y)` with exact distances and
/// [`STABILITY_TOLERANCE`] slack.
pub fn check_stability(
    method: &dyn ClusteringMethod,
    nx: &Network,
    ny: &Network,
    lipschitz: f64,
) -> Result<CheckReport> {
    let d_in = network_distance_exact(nx, ny)?;
    let ux = method.cluster(nx)?.to_network();
    let uy = method.cluster(ny)?.to_network();
    let d_out = network_distance_exact(&ux, &uy)?;
    let bound = lipschitz * d_in;
    if d_out <= bound + STABILITY_TOLERANCE {
        Ok(CheckReport::pass(Property::Stability, method, 1))
    } else {
        Ok(CheckReport::fail(
            Property::Stability,
            method,
            1,
            Witness {
                networks: vec![nx.into(), ny.into()],
                parameter: Some(lipschitz),
                expected: Some(bound),
                observed: Some(d_out),
                note: format!("output distance {d_out} exceeds L * input distance {bound}"),
                ..Witness::default()
            },
        ))
    }
}

/// Nonreciprocal output <= method output <= reciprocal output, entrywise.
pub fn check_sandwich(method: &dyn ClusteringMethod, network: &Network) -> Result<CheckReport> {
    let lower = crate::methods::nonreciprocal(network);
    let upper = crate::methods::reciprocal(network);
    let u = method.cluster(network)?;
    let n = network.len();
    for i in 0..n {
        for j in 0..n {
            let v = u.get(i, j);
            let (lo, hi) = (lower.get(i, j), upper.get(i, j));
            if !(lo <= v && v <= hi) {
                return Ok(CheckReport::fail(
                    Property::Sandwich,
                    method,
                    1,
                    Witness {
                        networks: vec![network.into()],
                        pair: Some((network.label(i).to_owned(), network.label(j).to_owned())),
                        expected: Some(if v < lo { lo } else { hi }),
                        observed: Some(v),
                        note: format!("value outside [{lo}, {hi}]"),
                        ..Witness::default()
                    },
                ));
            }
        }
    }
    Ok(CheckReport::pass(Property::Sandwich, method, 1))
}

/// Four-node network on which semi-reciprocal clustering with `t = 3` is not
/// excisive: at resolution 1.5, `{x1, x3}` is a block of the output, while the
/// subnetwork on `{x1, x3}` alone has both dissimilarities equal to 2.
pub fn semi_reciprocal_excisiveness_witness() -> Network {
    Network::new(
        ["x1", "x2", "x3", "x4"],
        &[
            vec![0.0, 1.0, 2.0, 2.0],
            vec![2.0, 0.0, 1.0, 2.0],
            vec![2.0, 2.0, 0.0, 1.0],
            vec![1.0, 2.0, 2.0, 0.0],
        ],
    )
    .expect("valid witness")
}

/// Seeded search over random 4-node networks for a network and resolution
/// at which `method` fails excisiveness. Returns the first failing report.
pub fn search_excisiveness_counterexample(
    method: &dyn ClusteringMethod,
    seed: u64,
    attempts: usize,
) -> Result<Option<CheckReport>> {
    let mut rng = rng(seed);
    for _ in 0..attempts {
        let n = random_network(&mut rng, 4);
        let report = check_excisiveness_all(method, &n)?;
        if !report.passed {
            return Ok(Some(report.with_seed(seed)));
        }
    }
    Ok(None)
}
