//! Weight matrices: totally ordered families of weight sequences.

use crate::error::{Error, Result};
use crate::weights::omega::WeightFunction;
use crate::weights::sequence::WeightSequence;

/// A finite, pointwise-nondecreasing list of weight sequences.
#[derive(Debug, Clone)]
pub struct WeightMatrix {
    label: String,
    members: Vec<WeightSequence>,
    /// The `h` parameters when built from a weight function.
    h_values: Option<Vec<f64>>,
}

impl WeightMatrix {
    /// Matrix from explicit members; consecutive members must satisfy
    /// `M ≤ N` pointwise.
    pub fn new(label: impl Into<String>, members: Vec<WeightSequence>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidArgument("weight matrix needs a member".into()));
        }
        for w in members.windows(2) {
            if !w[0].pointwise_le(&w[1]) {
                return Err(Error::InvalidArgument(format!(
                    "members '{}' and '{}' are not pointwise ordered",
                    w[0].label(),
                    w[1].label()
                )));
            }
        }
        Ok(WeightMatrix {
            label: label.into(),
            members,
            h_values: None,
        })
    }

    /// The matrix `𝔐_ω` truncated to the listed `h` values, with members
    /// `M^h_{ω,p} = exp(φ*(hp)/h)`.
    ///
    /// Convexity of `φ*` with `φ*(0) = 0` makes the members pointwise
    /// nondecreasing in `h`; this is re-checked on construction.
    pub fn from_weight_function(
        omega: &WeightFunction,
        h_list: &[f64],
        p_max: usize,
    ) -> Result<Self> {
        if h_list.is_empty() {
            return Err(Error::InvalidArgument("empty h list".into()));
        }
        if h_list.windows(2).any(|w| w[1] <= w[0]) || h_list[0] <= 0.0 {
            return Err(Error::InvalidArgument(
                "h list must be positive and strictly ascending".into(),
            ));
        }
        let members = h_list
            .iter()
            .map(|&h| WeightSequence::from_weight_function(omega, h, p_max))
            .collect::<Result<Vec<_>>>()?;
        for w in members.windows(2) {
            if !w[0].pointwise_le(&w[1]) {
                return Err(Error::InvalidArgument(
                    "members are not monotone in h; phi_star may be inaccurate".into(),
                ));
            }
        }
        Ok(WeightMatrix {
            label: format!("matrix[{}]", omega.label()),
            members,
            h_values: Some(h_list.to_vec()),
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn members(&self) -> &[WeightSequence] {
        &self.members
    }

    pub fn h_values(&self) -> Option<&[f64]> {
        self.h_values.as_deref()
    }
}
