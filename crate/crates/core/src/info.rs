//! Entropy, information gain and gain ratio over an instance base.
//!
//! All quantities are in bits and count occurrences: a vector stored with a
//! distribution of ten instances contributes ten, not one. Sums are taken
//! over sorted terms, which makes every value independent of the order in
//! which vectors and symbols were stored.

use std::collections::HashMap;

use thiserror::Error;

use crate::base::{ClassDistribution, InstanceBase};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InfoError {
    #[error("entropy of an empty distribution is undefined")]
    EmptyDistribution,
}

/// Shannon entropy (base 2) of a class distribution.
pub fn entropy(dist: &ClassDistribution) -> Result<f64, InfoError> {
    let total = dist.total();
    if total == 0 {
        return Err(InfoError::EmptyDistribution);
    }
    Ok(entropy_of_counts(dist.iter().map(|(_, c)| c), total))
}

fn entropy_of_counts(counts: impl Iterator<Item = u64>, total: u64) -> f64 {
    let total = total as f64;
    let terms = counts
        .filter(|&c| c > 0)
        .map(|c| {
            let p = c as f64 / total;
            -p * p.log2()
        })
        .collect();
    sorted_sum(terms)
}

fn sorted_sum(mut terms: Vec<f64>) -> f64 {
    terms.sort_by(f64::total_cmp);
    terms.iter().sum()
}

/// Class distributions of the base partitioned on the values of feature `f`.
fn partition(base: &InstanceBase, f: usize) -> Vec<ClassDistribution> {
    let mut parts: HashMap<u32, ClassDistribution> = HashMap::new();
    for (vector, dist) in base.entries() {
        parts.entry(vector[f]).or_default().merge(dist);
    }
    parts.into_values().collect()
}

/// Information gain and split information of one feature.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Split {
    gain: f64,
    split_info: f64,
}

fn split(base: &InstanceBase, f: usize) -> Split {
    assert!(f < base.width(), "feature index {f} out of range");
    let total = base.global().total();
    if total == 0 {
        return Split { gain: 0.0, split_info: 0.0 };
    }
    let class_entropy = entropy_of_counts(base.global().iter().map(|(_, c)| c), total);
    let parts = partition(base, f);
    let n = total as f64;
    let mut conditional = Vec::with_capacity(parts.len());
    let mut split_terms = Vec::with_capacity(parts.len());
    for part in &parts {
        let t = part.total();
        let p = t as f64 / n;
        conditional.push(p * entropy_of_counts(part.iter().map(|(_, c)| c), t));
        split_terms.push(-p * p.log2());
    }
    let gain = (class_entropy - sorted_sum(conditional)).clamp(0.0, class_entropy);
    Split {
        gain,
        split_info: sorted_sum(split_terms),
    }
}

/// H(class) − Σ_v P(f=v)·H(class | f=v) over all stored occurrences.
///
/// Panics if `f` is not a feature of the base.
pub fn information_gain(base: &InstanceBase, f: usize) -> f64 {
    split(base, f).gain
}

/// Gain ratio of a feature. A constant feature has no split information;
/// its ratio is reported as 0 with `degenerate` set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GainRatio {
    pub value: f64,
    pub degenerate: bool,
}

pub fn gain_ratio(base: &InstanceBase, f: usize) -> GainRatio {
    let s = split(base, f);
    if s.split_info <= 0.0 {
        GainRatio { value: 0.0, degenerate: true }
    } else {
        GainRatio {
            value: s.gain / s.split_info,
            degenerate: false,
        }
    }
}

/// Weighting function used for feature orderings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderMode {
    Gain,
    GainRatio,
}

/// Per-feature weights of the overlap distance.
#[derive(Clone, Debug, PartialEq)]
pub struct FeatureWeights(Vec<f64>);

impl FeatureWeights {
    pub fn new(weights: Vec<f64>) -> Self {
        Self(weights)
    }

    /// All weights equal to one.
    pub fn uniform(n: usize) -> Self {
        Self(vec![1.0; n])
    }

    /// Information gain of every feature.
    pub fn gain(base: &InstanceBase) -> Self {
        Self((0..base.width()).map(|f| information_gain(base, f)).collect())
    }

    pub fn gain_ratio(base: &InstanceBase) -> Self {
        Self((0..base.width()).map(|f| gain_ratio(base, f).value).collect())
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn all_positive(&self) -> bool {
        self.0.iter().all(|&w| w > 0.0)
    }

    /// Feature indices by descending weight, ties by ascending index.
    pub fn order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.0.len()).collect();
        idx.sort_by(|&a, &b| self.0[b].total_cmp(&self.0[a]).then(a.cmp(&b)));
        idx
    }
}

/// Feature permutation by descending weight under `mode`.
pub fn feature_order(base: &InstanceBase, mode: OrderMode) -> Vec<usize> {
    match mode {
        OrderMode::Gain => FeatureWeights::gain(base).order(),
        OrderMode::GainRatio => FeatureWeights::gain_ratio(base).order(),
    }
}

/// One row of the per-feature report.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FeatureReport {
    pub index: usize,
    pub offset: isize,
    pub gain: f64,
    pub gain_ratio: GainRatio,
}

pub fn feature_report(base: &InstanceBase) -> Vec<FeatureReport> {
    let window = base.schema().window;
    (0..base.width())
        .map(|f| FeatureReport {
            index: f,
            offset: window.offset(f),
            gain: information_gain(base, f),
            gain_ratio: gain_ratio(base, f),
        })
        .collect()
}
