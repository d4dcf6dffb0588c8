//! IB1 and IB1-IG: 1-nearest-neighbour classification under the weighted
//! overlap distance.
//!
//! The distance between two vectors is the sum of the weights of the
//! positions where they differ. It therefore depends only on the *mismatch
//! set*, and for the small widths used in windowed tasks the search can
//! enumerate mismatch sets in ascending distance instead of scanning the
//! base: for each candidate set `m`, the stored vectors agreeing with the
//! query outside `m` are found with one binary search in a table sorted on
//! that projection. The first non-empty set (plus any set at the same
//! distance) is exactly the nearest set of the full scan.
//!
//! Wide windows or large alphabets fall back to a linear scan with early
//! abandoning. Both paths sum weights in feature index order, so they
//! produce bit-identical distances.

use thiserror::Error;

use crate::base::{ClassDistribution, InstanceBase, UNSEEN};
use crate::corpus::Label;
use crate::info::FeatureWeights;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MblError {
    #[error("vector lengths differ: {x} vs {y} (weights {w})")]
    LengthMismatch { x: usize, y: usize, w: usize },
}

/// Weighted overlap distance: Σ w_i · [x_i ≠ y_i].
pub fn distance<T: PartialEq>(x: &[T], y: &[T], w: &FeatureWeights) -> Result<f64, MblError> {
    let w = w.as_slice();
    if x.len() != y.len() || x.len() != w.len() {
        return Err(MblError::LengthMismatch {
            x: x.len(),
            y: y.len(),
            w: w.len(),
        });
    }
    let mut d = 0.0;
    for i in 0..x.len() {
        if x[i] != y[i] {
            d += w[i];
        }
    }
    Ok(d)
}

/// The stored vectors nearest to a query.
#[derive(Clone, Debug, PartialEq)]
pub struct Neighbors {
    pub distance: f64,
    /// Sum of the distributions of every vector at `distance`.
    pub distribution: ClassDistribution,
    /// Number of distinct stored vectors at `distance`.
    pub vectors: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub label: Label,
    pub distribution: ClassDistribution,
    pub distance: f64,
}

/// Weighting scheme of a memory-based classifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weighting {
    /// IB1: every feature weighs 1.
    Uniform,
    /// IB1-IG: every feature weighs its information gain.
    Gain,
}

/// Largest width for which the mismatch-set index is built.
const MAX_INDEXED_WIDTH: usize = 12;
/// Upper bound on index rows (one per mismatch set and stored vector).
const MAX_INDEX_ROWS: usize = 1 << 23;

/// A memory-based classifier over an immutable instance base.
#[derive(Clone, Debug)]
pub struct MemoryClassifier {
    base: InstanceBase,
    weights: FeatureWeights,
    weighting: Weighting,
    index: Option<SubsetIndex>,
}

impl MemoryClassifier {
    /// IB1: uniform weights.
    pub fn ib1(base: InstanceBase) -> Self {
        let w = FeatureWeights::uniform(base.width());
        Self::with_weights(base, w, Weighting::Uniform)
    }

    /// IB1-IG: information-gain weights.
    pub fn ib1ig(base: InstanceBase) -> Self {
        let w = FeatureWeights::gain(&base);
        Self::with_weights(base, w, Weighting::Gain)
    }

    /// Uses the given weights verbatim (e.g. loaded from a model file).
    ///
    /// Panics if the weight count differs from the base width.
    pub fn with_weights(base: InstanceBase, weights: FeatureWeights, weighting: Weighting) -> Self {
        assert_eq!(weights.len(), base.width(), "one weight per feature");
        let index = SubsetIndex::build(&base, &weights);
        Self {
            base,
            weights,
            weighting,
            index,
        }
    }

    pub fn base(&self) -> &InstanceBase {
        &self.base
    }

    pub fn weights(&self) -> &FeatureWeights {
        &self.weights
    }

    pub fn weighting(&self) -> Weighting {
        self.weighting
    }

    pub fn is_indexed(&self) -> bool {
        self.index.is_some()
    }

    /// Nearest stored vectors to `query`.
    ///
    /// Panics if the query width differs from the base width.
    pub fn nearest_set(&self, query: &[char]) -> Neighbors {
        self.nearest_set_ids(&self.base.encode(query))
    }

    pub fn nearest_set_ids(&self, query: &[u32]) -> Neighbors {
        assert_eq!(query.len(), self.base.width(), "query width does not match the base");
        match &self.index {
            Some(index) => index.nearest(&self.base, query),
            None => self.scan(query),
        }
    }

    pub fn classify(&self, query: &[char]) -> Classification {
        self.classify_ids(&self.base.encode(query))
    }

    pub fn classify_ids(&self, query: &[u32]) -> Classification {
        let nn = self.nearest_set_ids(query);
        let label = nn
            .distribution
            .majority(self.base.global())
            .expect("instance base entries have non-empty distributions");
        Classification {
            label,
            distribution: nn.distribution,
            distance: nn.distance,
        }
    }

    fn scan(&self, query: &[u32]) -> Neighbors {
        let w = self.weights.as_slice();
        let mut best = f64::INFINITY;
        let mut dist = ClassDistribution::new();
        let mut vectors = 0;
        'entries: for (vector, d) in self.base.entries() {
            let mut sum = 0.0;
            for i in 0..query.len() {
                if vector[i] != query[i] {
                    sum += w[i];
                    // partial sums never decrease, so this entry cannot tie
                    if sum > best {
                        continue 'entries;
                    }
                }
            }
            if sum < best {
                best = sum;
                dist = ClassDistribution::new();
                vectors = 0;
            }
            dist.merge(d);
            vectors += 1;
        }
        Neighbors {
            distance: best,
            distribution: dist,
            vectors,
        }
    }
}

/// Tables of stored vectors keyed on their projection onto every subset of
/// features, with mismatch sets pre-sorted by distance.
#[derive(Clone, Debug)]
struct SubsetIndex {
    bits: u32,
    // (distance, mismatch mask), ascending by distance then mask
    masks: Vec<(f64, u32)>,
    // per mismatch mask: (packed projection onto the complement, entry id), sorted
    tables: Vec<Vec<(u64, u32)>>,
}

impl SubsetIndex {
    fn build(base: &InstanceBase, weights: &FeatureWeights) -> Option<Self> {
        let n = base.width();
        let symbols = base.alphabet().len().max(2) as u64;
        let bits = 64 - (symbols - 1).leading_zeros();
        if n > MAX_INDEXED_WIDTH
            || bits as usize * n > 64
            || (1usize << n).saturating_mul(base.len()) > MAX_INDEX_ROWS
        {
            return None;
        }
        let w = weights.as_slice();
        let full = (1u32 << n) - 1;
        let mut masks: Vec<(f64, u32)> = (0..=full)
            .map(|m| {
                let mut d = 0.0;
                for (i, wi) in w.iter().enumerate() {
                    if m & (1 << i) != 0 {
                        d += wi;
                    }
                }
                (d, m)
            })
            .collect();
        masks.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

        let mut tables = Vec::with_capacity(masks.len());
        for m in 0..=full {
            let keep = full & !m;
            let mut table: Vec<(u64, u32)> = (0..base.len())
                .map(|e| (pack(base.vector(e), keep, bits), e as u32))
                .collect();
            table.sort_unstable();
            tables.push(table);
        }
        Some(Self { bits, masks, tables })
    }

    fn nearest(&self, base: &InstanceBase, query: &[u32]) -> Neighbors {
        let n = query.len();
        let full = (1u32 << n) - 1;
        let unseen = query
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == UNSEEN)
            .fold(0u32, |acc, (i, _)| acc | (1 << i));

        let mut best: Option<f64> = None;
        let mut hits: Vec<u32> = Vec::new();
        for &(d, m) in &self.masks {
            if let Some(b) = best {
                if d > b {
                    break;
                }
            }
            // an unseen query symbol can never match, so it must be in the mismatch set
            if unseen & !m != 0 {
                continue;
            }
            let key = pack(query, full & !m, self.bits);
            let table = &self.tables[m as usize];
            let start = table.partition_point(|&(k, _)| k < key);
            let found = table[start..].iter().take_while(|&&(k, _)| k == key);
            let before = hits.len();
            hits.extend(found.map(|&(_, e)| e));
            if hits.len() > before && best.is_none() {
                best = Some(d);
            }
        }
        // vectors matching on a zero-weight subset show up under several masks
        hits.sort_unstable();
        hits.dedup();
        let mut distribution = ClassDistribution::new();
        for &e in &hits {
            distribution.merge(base.distribution(e as usize));
        }
        Neighbors {
            distance: best.expect("the all-mismatch mask matches every stored vector"),
            distribution,
            vectors: hits.len(),
        }
    }
}

fn pack(vector: &[u32], keep: u32, bits: u32) -> u64 {
    let mut key = 0u64;
    for (i, &s) in vector.iter().enumerate() {
        key <<= bits;
        if keep & (1 << i) != 0 {
            key |= s as u64;
        }
    }
    key
}
