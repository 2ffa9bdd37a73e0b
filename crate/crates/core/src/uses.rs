//! Input-output "uses" tables turned into networks.
//!
//! `U(i, j)` is the value of sector `i`'s output consumed by sector `j`. The
//! dissimilarity from `i` to `j` is the inverse of the share of `j`'s total
//! input that comes from `i`, so strong suppliers are close.

use crate::error::{Error, Result};
use crate::matrix::CostMatrix;
use crate::network::Network;

/// What to do with a zero off-diagonal use, whose inverse share is infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZeroUse {
    /// Reject the table with [`Error::ZeroUseEntry`].
    Error,
    /// Use this (positive, finite) dissimilarity instead.
    Cap(f64),
}

impl std::str::FromStr for ZeroUse {
    type Err = Error;

    /// `error` or `cap=VALUE`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "error" {
            return Ok(ZeroUse::Error);
        }
        let value = s
            .strip_prefix("cap=")
            .and_then(|v| v.parse::<f64>().ok())
            .ok_or_else(|| Error::InvalidArgument(format!("`{s}`: expected `error` or `cap=VALUE`")))?;
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::InvalidArgument(format!("cap {value} must be positive and finite")));
        }
        Ok(ZeroUse::Cap(value))
    }
}

/// `A(i, j) = (U(i, j) / Σ_k U(k, j))⁻¹` for `i ≠ j`, zero on the diagonal.
/// The column sum includes the sector's use of its own output.
pub fn normalize_uses_table(labels: Vec<String>, uses: &CostMatrix, zero_use: ZeroUse) -> Result<Network> {
    let n = uses.size();
    if labels.len() != n {
        return Err(Error::ShapeMismatch(format!("{} labels for a {n}x{n} table", labels.len())));
    }
    for i in 0..n {
        for j in 0..n {
            let v = uses.get(i, j);
            if !v.is_finite() {
                return Err(Error::NonFinite { row: i, col: j });
            }
            if v < 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "negative use {v} from `{}` to `{}`",
                    labels[i], labels[j]
                )));
            }
        }
    }
    let column_sums: Vec<f64> = (0..n).map(|j| (0..n).map(|k| uses.get(k, j)).sum()).collect();
    if let Some(j) = column_sums.iter().position(|&s| s <= 0.0) {
        return Err(Error::ZeroColumn(labels[j].clone()));
    }
    let mut dissim = CostMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let u = uses.get(i, j);
            dissim[(i, j)] = if u == 0.0 {
                match zero_use {
                    ZeroUse::Error => {
                        return Err(Error::ZeroUseEntry(labels[i].clone(), labels[j].clone()))
                    }
                    ZeroUse::Cap(cap) => cap,
                }
            } else {
                1.0 / (u / column_sums[j])
            };
        }
    }
    Network::from_matrix(labels, dissim)
}
