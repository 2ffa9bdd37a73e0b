use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::dendrogram::{Dendrogram, Merge};
use crate::error::{Error, Result};
use crate::matrix::CostMatrix;
use crate::network::Network;
use crate::representable::{arcs_by_label, Representer, RepresenterFamily};
use crate::ultrametric::Partition;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub from: String,
    pub to: String,
    pub weight: f64,
}

/// Edge-list network: every ordered off-diagonal pair must be present.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkDoc {
    pub nodes: Vec<String>,
    pub edges: Vec<EdgeDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepresenterDoc {
    pub nodes: Vec<String>,
    pub arcs: Vec<EdgeDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepresenterFileDoc {
    pub representers: Vec<RepresenterDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MergeDoc {
    pub resolution: f64,
    pub blocks: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DendrogramDoc {
    pub leaves: Vec<String>,
    pub merges: Vec<MergeDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionDoc {
    pub resolution: f64,
    pub blocks: Vec<Vec<String>>,
}

fn parse_json<'a, T: Deserialize<'a>>(text: &'a str, source: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        Error::parse(
            format!("{source}:{}:{}", e.line(), e.column()),
            e.to_string(),
        )
    })
}

fn to_pretty<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("serializable document");
    s.push('\n');
    s
}

pub fn network_from_json(text: &str, source: &str) -> Result<Network> {
    let doc: NetworkDoc = parse_json(text, source)?;
    let n = doc.nodes.len();
    let index: HashMap<&str, usize> = doc
        .nodes
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    if index.len() != n {
        return Err(Error::DuplicateLabel(first_duplicate(&doc.nodes)).located(source));
    }
    let mut matrix = CostMatrix::zeros(n);
    let mut seen = vec![false; n * n];
    for (e, edge) in doc.edges.iter().enumerate() {
        let loc = format!("{source}: edges[{e}]");
        let i = *index
            .get(edge.from.as_str())
            .ok_or_else(|| Error::UnknownLabel(edge.from.clone()).located(&loc))?;
        let j = *index
            .get(edge.to.as_str())
            .ok_or_else(|| Error::UnknownLabel(edge.to.clone()).located(&loc))?;
        if i == j {
            return Err(Error::parse(loc, "self edges are not part of the format"));
        }
        if std::mem::replace(&mut seen[i * n + j], true) {
            return Err(Error::parse(loc, format!("duplicate edge {} -> {}", edge.from, edge.to)));
        }
        matrix[(i, j)] = edge.weight;
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && !seen[i * n + j] {
                return Err(Error::parse(
                    source,
                    format!(
                        "incomplete edge list: missing {} -> {}",
                        doc.nodes[i], doc.nodes[j]
                    ),
                ));
            }
        }
    }
    Network::from_matrix(doc.nodes, matrix).map_err(|e| e.located(source))
}

fn first_duplicate(labels: &[String]) -> String {
    let mut seen = std::collections::HashSet::new();
    labels
        .iter()
        .find(|l| !seen.insert(l.as_str()))
        .cloned()
        .unwrap_or_default()
}

pub fn network_to_json(network: &Network) -> String {
    let n = network.len();
    let mut edges = Vec::with_capacity(n * n.saturating_sub(1));
    for i in 0..n {
        for j in 0..n {
            if i != j {
                edges.push(EdgeDoc {
                    from: network.label(i).to_owned(),
                    to: network.label(j).to_owned(),
                    weight: network.get(i, j),
                });
            }
        }
    }
    to_pretty(&NetworkDoc {
        nodes: network.labels().to_vec(),
        edges,
    })
}

/// Parses and validates a representer family; each member is validated and
/// the family bounds are recomputed.
pub fn family_from_json(text: &str, source: &str) -> Result<RepresenterFamily> {
    let doc: RepresenterFileDoc = parse_json(text, source)?;
    let members = doc
        .representers
        .into_iter()
        .enumerate()
        .map(|(r, rep)| {
            let arcs: Vec<(String, String, f64)> = rep
                .arcs
                .into_iter()
                .map(|a| (a.from, a.to, a.weight))
                .collect();
            Representer::new(rep.nodes, &arcs)
                .map_err(|e| e.located(format!("{source}: representers[{r}]")))
        })
        .collect::<Result<Vec<_>>>()?;
    RepresenterFamily::new(members).map_err(|e| e.located(source))
}

pub fn family_to_json(family: &RepresenterFamily) -> String {
    let representers = family
        .members()
        .iter()
        .map(|rep| RepresenterDoc {
            nodes: rep.nodes().to_vec(),
            arcs: arcs_by_label(rep)
                .into_iter()
                .map(|(from, to, weight)| EdgeDoc { from, to, weight })
                .collect(),
        })
        .collect();
    to_pretty(&RepresenterFileDoc { representers })
}

pub fn dendrogram_to_json(d: &Dendrogram) -> String {
    let leaves = d.leaves();
    let merges = d
        .merges()
        .iter()
        .map(|m| MergeDoc {
            resolution: m.resolution,
            blocks: m
                .blocks
                .iter()
                .map(|b| b.iter().map(|&i| leaves[i].clone()).collect())
                .collect(),
        })
        .collect();
    to_pretty(&DendrogramDoc {
        leaves: leaves.to_vec(),
        merges,
    })
}

pub fn dendrogram_from_json(text: &str, source: &str) -> Result<Dendrogram> {
    let doc: DendrogramDoc = parse_json(text, source)?;
    let index: HashMap<&str, usize> = doc
        .leaves
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    let merges = doc
        .merges
        .iter()
        .map(|m| {
            let blocks = m
                .blocks
                .iter()
                .map(|b| {
                    b.iter()
                        .map(|l| {
                            index
                                .get(l.as_str())
                                .copied()
                                .ok_or_else(|| Error::UnknownLabel(l.clone()))
                        })
                        .collect::<Result<Vec<usize>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Merge {
                resolution: m.resolution,
                blocks,
            })
        })
        .collect::<Result<Vec<_>>>()
        .map_err(|e| e.located(source))?;
    Dendrogram::new(doc.leaves, merges).map_err(|e| e.located(source))
}

pub fn partition_to_json(p: &Partition) -> String {
    to_pretty(&PartitionDoc {
        resolution: p.resolution,
        blocks: p.blocks.clone(),
    })
}
