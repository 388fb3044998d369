//! Entropy, information gain, split information, and gain ratio.
//!
//! All quantities are in bits (base-2 logarithms) with `0·log 0 = 0`.
//! Split statistics follow the C4.5 conventions for missing values: the
//! entropy terms are computed over instances whose split value is known,
//! the gain is scaled by the known fraction of the total weight, and the
//! missing mass counts as one extra branch in the split information.

use crate::dataset::{ClassDistribution, Dataset};
use crate::error::{Error, Result};

pub(crate) const GAIN_EPSILON: f64 = 1e-12;

/// Entropy of a class distribution in bits.
pub fn entropy(dist: &ClassDistribution) -> f64 {
    entropy_of_weights(dist.weights())
}

/// Entropy of an arbitrary non-negative weight vector in bits.
pub(crate) fn entropy_of_weights(weights: &[f64]) -> f64 {
    let total: f64 = weights.iter().sum();
    if total <= 0.0 {
        return 0.0;
    }
    let mut bits = 0.0;
    for &w in weights {
        if w > 0.0 {
            let p = w / total;
            bits -= p * p.log2();
        }
    }
    bits.max(0.0)
}

/// Split statistics for one candidate attribute.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitEvaluation {
    /// Schema index of the evaluated attribute.
    pub attribute: usize,
    /// Information gain in bits, clamped to be non-negative.
    pub info_gain: f64,
    /// Entropy of the branch-size distribution in bits.
    pub split_info: f64,
    /// `info_gain / split_info`, absent when `split_info` is zero.
    pub gain_ratio: Option<f64>,
}

/// Tallies per-value class weights plus the missing-value weight.
pub(crate) struct SplitTally {
    pub value_class_weights: Vec<Vec<f64>>,
    pub missing_weight: f64,
}

impl SplitTally {
    pub(crate) fn collect(d: &Dataset, attribute: usize) -> Result<SplitTally> {
        let schema = d.schema();
        if attribute == schema.class_index() {
            return Err(Error::invalid(format!(
                "attribute `{}` is the class attribute",
                schema.class_attribute().name()
            )));
        }
        let spec = schema.attribute(attribute).ok_or_else(|| {
            Error::invalid(format!(
                "attribute index {attribute} is out of range for {} attributes",
                schema.attributes().len()
            ))
        })?;
        let mut value_class_weights =
            vec![vec![0.0; schema.class_count()]; spec.values().len()];
        let mut missing_weight = 0.0;
        for (i, instance) in d.instances().iter().enumerate() {
            let class = d.class_of(instance).ok_or_else(|| {
                Error::invalid(format!("instance {i} has a missing class value"))
            })?;
            match instance.value(attribute) {
                Some(v) => value_class_weights[v][class] += instance.weight(),
                None => missing_weight += instance.weight(),
            }
        }
        Ok(SplitTally {
            value_class_weights,
            missing_weight,
        })
    }

    /// Known weight per attribute value.
    pub(crate) fn branch_weights(&self) -> Vec<f64> {
        self.value_class_weights
            .iter()
            .map(|row| row.iter().sum())
            .collect()
    }

    pub(crate) fn known_weight(&self) -> f64 {
        self.branch_weights().iter().sum()
    }
}

/// Computes information gain, split info, and gain ratio in one pass.
pub fn evaluate_split(d: &Dataset, attribute: usize) -> Result<SplitEvaluation> {
    let tally = SplitTally::collect(d, attribute)?;
    Ok(evaluate_tally(d.schema().class_count(), attribute, &tally))
}

pub(crate) fn evaluate_tally(
    class_count: usize,
    attribute: usize,
    tally: &SplitTally,
) -> SplitEvaluation {
    let branch_weights = tally.branch_weights();
    let known = tally.known_weight();
    let total = known + tally.missing_weight;

    let info_gain = if known > 0.0 {
        let mut known_class = vec![0.0; class_count];
        for row in &tally.value_class_weights {
            for (sum, w) in known_class.iter_mut().zip(row) {
                *sum += w;
            }
        }
        let parent_bits = entropy_of_weights(&known_class);
        let mut child_bits = 0.0;
        for (row, &weight) in tally.value_class_weights.iter().zip(&branch_weights) {
            if weight > 0.0 {
                child_bits += weight / known * entropy_of_weights(row);
            }
        }
        (known / total * (parent_bits - child_bits)).max(0.0)
    } else {
        0.0
    };

    let mut sizes = branch_weights;
    if tally.missing_weight > 0.0 {
        sizes.push(tally.missing_weight);
    }
    let split_info = entropy_of_weights(&sizes);
    let gain_ratio = (split_info > GAIN_EPSILON).then(|| info_gain / split_info);

    SplitEvaluation {
        attribute,
        info_gain,
        split_info,
        gain_ratio,
    }
}

/// Information gain of splitting on `attribute`, in bits.
pub fn information_gain(d: &Dataset, attribute: usize) -> Result<f64> {
    Ok(evaluate_split(d, attribute)?.info_gain)
}

/// Entropy of the branch sizes of splitting on `attribute`, in bits.
pub fn split_info(d: &Dataset, attribute: usize) -> Result<f64> {
    Ok(evaluate_split(d, attribute)?.split_info)
}

/// Gain ratio of splitting on `attribute`; `None` when split info is zero.
pub fn gain_ratio(d: &Dataset, attribute: usize) -> Result<Option<f64>> {
    Ok(evaluate_split(d, attribute)?.gain_ratio)
}
