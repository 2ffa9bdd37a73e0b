//! Hierarchical clustering methods for directed networks.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::CostMatrix;
use crate::minimax::{bounded_hop_minmax, minmax_closure, single_linkage, single_linkage_matrix};
use crate::network::Network;
use crate::representable::{representable_cluster, Budget, RepresenterFamily};
use crate::ultrametric::Ultrametric;

/// Anything that maps a network to an ultrametric on the same labels.
///
/// Implemented by [`MethodSpec`]; the property checkers accept any
/// implementation so deliberately broken methods can be used as controls.
pub trait ClusteringMethod {
    fn cluster(&self, network: &Network) -> Result<Ultrametric>;

    fn name(&self) -> String;
}

/// Selects one of the clustering methods together with its parameters.
#[derive(Debug, Clone)]
pub enum MethodSpec {
    Reciprocal,
    Nonreciprocal,
    /// Reciprocal clustering of chain costs over chains of at most `t` nodes.
    SemiReciprocal { t: usize },
    /// Nonreciprocal values where the reciprocal value is `<= beta`,
    /// reciprocal values elsewhere.
    Grafting { beta: f64 },
    /// Only defined for symmetric networks.
    SingleLinkage,
    Representable {
        family: Arc<RepresenterFamily>,
        budget: Budget,
    },
}

impl MethodSpec {
    pub fn semi_reciprocal(t: usize) -> Result<Self> {
        if t < 2 {
            return Err(Error::InvalidHopBound(t));
        }
        Ok(MethodSpec::SemiReciprocal { t })
    }

    pub fn grafting(beta: f64) -> Result<Self> {
        check_beta(beta)?;
        Ok(MethodSpec::Grafting { beta })
    }

    pub fn representable(family: RepresenterFamily) -> Self {
        MethodSpec::Representable {
            family: Arc::new(family),
            budget: Budget::default(),
        }
    }
}

impl ClusteringMethod for MethodSpec {
    fn cluster(&self, network: &Network) -> Result<Ultrametric> {
        match self {
            MethodSpec::Reciprocal => Ok(reciprocal(network)),
            MethodSpec::Nonreciprocal => Ok(nonreciprocal(network)),
            MethodSpec::SemiReciprocal { t } => semi_reciprocal(network, *t),
            MethodSpec::Grafting { beta } => grafting(network, *beta),
            MethodSpec::SingleLinkage => single_linkage(network),
            MethodSpec::Representable { family, budget } => {
                representable_cluster(family, network, *budget)
            }
        }
    }

    fn name(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for MethodSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MethodSpec::Reciprocal => write!(f, "reciprocal"),
            MethodSpec::Nonreciprocal => write!(f, "nonreciprocal"),
            MethodSpec::SemiReciprocal { t } => write!(f, "semireciprocal(t={t})"),
            MethodSpec::Grafting { beta } => write!(f, "grafting(beta={beta})"),
            MethodSpec::SingleLinkage => write!(f, "single-linkage"),
            MethodSpec::Representable { family, .. } => {
                write!(f, "representable({} representers)", family.members().len())
            }
        }
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if beta > 0.0 && beta.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveBeta(beta))
    }
}

fn to_ultrametric(network: &Network, values: CostMatrix) -> Ultrametric {
    Ultrametric::from_parts_unchecked(network.labels().to_vec(), values)
}

/// Reciprocal clustering: both directions must be traversed through the same
/// chain, so each link costs `max(A(x, x'), A(x', x))`.
pub fn reciprocal(network: &Network) -> Ultrametric {
    single_linkage_matrix(
        network.labels().to_vec(),
        &network.matrix().max_symmetrized(),
    )
}

/// Nonreciprocal clustering: the larger of the two directed minimum chain
/// costs, which may use different chains.
pub fn nonreciprocal(network: &Network) -> Ultrametric {
    let directed = minmax_closure(network.matrix());
    to_ultrametric(network, directed.max_symmetrized())
}

/// Semi-reciprocal clustering with chains of at most `t` nodes between
/// consecutive members of the outer chain.
pub fn semi_reciprocal(network: &Network, t: usize) -> Result<Ultrametric> {
    if t < 2 {
        return Err(Error::InvalidHopBound(t));
    }
    // chains longer than n nodes never help
    let hops = bounded_hop_minmax(network.matrix(), t.min(network.len().max(2)))?;
    Ok(single_linkage_matrix(
        network.labels().to_vec(),
        &hops.max_symmetrized(),
    ))
}

/// Grafting of nonreciprocal branches onto the reciprocal dendrogram below
/// resolution `beta`. The boundary `u_R == beta` takes the nonreciprocal value.
pub fn grafting(network: &Network, beta: f64) -> Result<Ultrametric> {
    check_beta(beta)?;
    let r = reciprocal(network);
    let nr = nonreciprocal(network);
    let n = network.len();
    let values = CostMatrix::from_fn(n, |i, j| {
        if r.get(i, j) <= beta {
            nr.get(i, j)
        } else {
            r.get(i, j)
        }
    });
    Ok(to_ultrametric(network, values))
}
