//! Hierarchical clustering of directed networks.
//!
//! A [`Network`] is a finite set of nodes with positive, possibly asymmetric
//! dissimilarities. A hierarchical clustering method maps it to an
//! [`Ultrametric`], equivalently a [`Dendrogram`]: the value `u(x, x')` is the
//! smallest resolution at which `x` and `x'` share a cluster.
//!
//! Methods provided:
//!
//! * [`reciprocal`] and [`nonreciprocal`] clustering, the largest and
//!   smallest methods satisfying the value and transformation axioms;
//! * [`semi_reciprocal`] and [`grafting`], which sit between the two but
//!   lack some robustness properties;
//! * representable clustering ([`representable_cluster`]) driven by a family
//!   of small template networks ([`Representer`]). These methods are
//!   excisive, linear scale preserving and stable.
//!
//! The [`properties`] module turns those axioms and properties into checks
//! that run on concrete networks, [`metric`] computes the network distance
//! used by the stability property, and [`io`] handles CSV, JSON and Newick.
//!
//! ```
//! use dirclust::{nonreciprocal, reciprocal, Network};
//!
//! // a → b → c → a costs 1, the reverse direction costs 5
//! let net = Network::three_cycle(1.0, 5.0)?;
//! assert_eq!(reciprocal(&net).get(0, 1), 5.0);
//! assert_eq!(nonreciprocal(&net).get(0, 1), 1.0);
//! # Ok::<(), dirclust::Error>(())
//! ```

pub mod cli;
pub mod dendrogram;
pub mod error;
pub mod io;
pub mod matrix;
pub mod methods;
pub mod metric;
pub mod minimax;
pub mod network;
pub mod properties;
pub mod representable;
pub mod ultrametric;
pub mod uses;

pub use dendrogram::{Dendrogram, Merge};
pub use error::{Error, Result};
pub use matrix::CostMatrix;
pub use methods::{grafting, nonreciprocal, reciprocal, semi_reciprocal, ClusteringMethod, MethodSpec};
pub use metric::{count_correspondences, correspondence_distortion, network_distance_exact, Correspondence};
pub use minimax::{bounded_hop_minmax, minmax_closure, single_linkage};
pub use network::Network;
pub use representable::{
    cycle_family, expansion_constant, fast_lambda_cycle3, lambda_family, lambda_family_enumerated,
    nonreciprocal_family, optimal_multiple, representable_cluster, stability_constant, symmetrize, Budget,
    NodeMap, Representer, RepresenterFamily,
};
pub use ultrametric::{Partition, Ultrametric};
pub use uses::{normalize_uses_table, ZeroUse};
