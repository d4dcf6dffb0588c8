//! The instance base: unique feature vectors with occurrence-counted class
//! distributions.

use std::collections::HashMap;

use crate::corpus::{Label, Task, Window};

/// Symbol id given to query symbols that never occurred in training.
pub const UNSEEN: u32 = u32::MAX;

/// Occurrence counts per class label.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ClassDistribution {
    counts: [u64; Label::COUNT],
}

impl ClassDistribution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(label: Label, count: u64) -> Self {
        let mut d = Self::new();
        d.add(label, count);
        d
    }

    pub fn from_counts(pairs: impl IntoIterator<Item = (Label, u64)>) -> Self {
        let mut d = Self::new();
        for (l, c) in pairs {
            d.add(l, c);
        }
        d
    }

    pub fn add(&mut self, label: Label, count: u64) {
        self.counts[label.index()] += count;
    }

    pub fn merge(&mut self, other: &ClassDistribution) {
        for (a, b) in self.counts.iter_mut().zip(other.counts.iter()) {
            *a += b;
        }
    }

    pub fn get(&self, label: Label) -> u64 {
        self.counts[label.index()]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total() == 0
    }

    /// Labels with a nonzero count, in fixed label order.
    pub fn iter(&self) -> impl Iterator<Item = (Label, u64)> + '_ {
        Label::ALL
            .iter()
            .map(|&l| (l, self.get(l)))
            .filter(|&(_, c)| c > 0)
    }

    pub fn class_count(&self) -> usize {
        self.iter().count()
    }

    pub fn is_single_class(&self) -> bool {
        self.class_count() == 1
    }

    /// Most frequent label. Ties go to the label that is more frequent in
    /// `global`, then to the earlier label in the fixed label order.
    pub fn majority(&self, global: &ClassDistribution) -> Option<Label> {
        pick(self.iter(), global)
    }

    /// Most frequent boundary (non-null) label, with the same tie rules.
    pub fn majority_boundary(&self, global: &ClassDistribution) -> Option<Label> {
        pick(self.iter().filter(|(l, _)| l.is_boundary()), global)
    }

    /// `label:count` pairs separated by spaces, in label order.
    pub fn render(&self) -> String {
        self.iter()
            .map(|(l, c)| format!("{l}:{c}"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut d = Self::new();
        for item in text.split_whitespace() {
            let (l, c) = item
                .split_once(':')
                .ok_or_else(|| format!("class count `{item}` is not LABEL:COUNT"))?;
            let label: Label = l.parse()?;
            let count: u64 = c.parse().map_err(|_| format!("bad count in `{item}`"))?;
            d.add(label, count);
        }
        Ok(d)
    }
}

fn pick(candidates: impl Iterator<Item = (Label, u64)>, global: &ClassDistribution) -> Option<Label> {
    let mut best: Option<(Label, u64)> = None;
    for (label, count) in candidates {
        best = match best {
            None => Some((label, count)),
            Some((b, bc)) => {
                let better = count > bc || (count == bc && global.get(label) > global.get(b));
                // candidates arrive in label order, so equal keys keep the earlier label
                if better {
                    Some((label, count))
                } else {
                    Some((b, bc))
                }
            }
        };
    }
    best.map(|(l, _)| l)
}

/// Interns symbols into dense ids in order of first appearance.
#[derive(Clone, Debug, Default)]
pub struct Alphabet {
    symbols: Vec<char>,
    ids: HashMap<char, u32>,
}

impl Alphabet {
    pub fn intern(&mut self, c: char) -> u32 {
        if let Some(&id) = self.ids.get(&c) {
            return id;
        }
        let id = self.symbols.len() as u32;
        self.symbols.push(c);
        self.ids.insert(c, id);
        id
    }

    pub fn id(&self, c: char) -> Option<u32> {
        self.ids.get(&c).copied()
    }

    pub fn symbol(&self, id: u32) -> char {
        self.symbols[id as usize]
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Encodes a query; symbols outside the alphabet become [`UNSEEN`].
    pub fn encode(&self, symbols: &[char]) -> Vec<u32> {
        symbols
            .iter()
            .map(|&c| self.id(c).unwrap_or(UNSEEN))
            .collect()
    }
}

/// Task and window shared by every instance of a base.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Schema {
    pub task: Task,
    pub window: Window,
}

impl Schema {
    pub fn width(&self) -> usize {
        self.window.width()
    }
}

/// Deduplicated training instances. Immutable once built.
#[derive(Clone, Debug)]
pub struct InstanceBase {
    schema: Schema,
    alphabet: Alphabet,
    // row-major, `len() * width` symbol ids
    vectors: Vec<u32>,
    distributions: Vec<ClassDistribution>,
    global: ClassDistribution,
    index: HashMap<Vec<u32>, usize>,
}

impl InstanceBase {
    pub fn schema(&self) -> Schema {
        self.schema
    }

    pub fn width(&self) -> usize {
        self.schema.width()
    }

    /// Number of unique feature vectors.
    pub fn len(&self) -> usize {
        self.distributions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.distributions.is_empty()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn vector(&self, i: usize) -> &[u32] {
        let n = self.width();
        &self.vectors[i * n..(i + 1) * n]
    }

    pub fn vector_symbols(&self, i: usize) -> Vec<char> {
        self.vector(i).iter().map(|&id| self.alphabet.symbol(id)).collect()
    }

    pub fn distribution(&self, i: usize) -> &ClassDistribution {
        &self.distributions[i]
    }

    pub fn distributions(&self) -> &[ClassDistribution] {
        &self.distributions
    }

    /// Class distribution over all stored occurrences.
    pub fn global(&self) -> &ClassDistribution {
        &self.global
    }

    pub fn encode(&self, symbols: &[char]) -> Vec<u32> {
        self.alphabet.encode(symbols)
    }

    /// Entry index of an exact vector, if stored.
    pub fn lookup(&self, symbols: &[char]) -> Option<usize> {
        self.lookup_ids(&self.encode(symbols))
    }

    pub fn lookup_ids(&self, ids: &[u32]) -> Option<usize> {
        self.index.get(ids).copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[u32], &ClassDistribution)> + '_ {
        (0..self.len()).map(move |i| (self.vector(i), &self.distributions[i]))
    }
}

/// Single-writer accumulator for an [`InstanceBase`].
#[derive(Debug)]
pub struct InstanceBaseBuilder {
    schema: Schema,
    alphabet: Alphabet,
    vectors: Vec<u32>,
    distributions: Vec<ClassDistribution>,
    index: HashMap<Vec<u32>, usize>,
}

impl InstanceBaseBuilder {
    pub fn new(schema: Schema) -> Self {
        Self {
            schema,
            alphabet: Alphabet::default(),
            vectors: Vec::new(),
            distributions: Vec::new(),
            index: HashMap::new(),
        }
    }

    /// Adds `count` occurrences of `features` labelled `label`.
    ///
    /// Panics if the vector length differs from the schema width.
    pub fn add(&mut self, features: &[char], label: Label, count: u64) {
        self.add_distribution(features, &ClassDistribution::single(label, count));
    }

    pub fn add_distribution(&mut self, features: &[char], dist: &ClassDistribution) {
        assert_eq!(
            features.len(),
            self.schema.width(),
            "feature vector length does not match the schema"
        );
        let ids: Vec<u32> = features.iter().map(|&c| self.alphabet.intern(c)).collect();
        match self.index.get(&ids) {
            Some(&i) => self.distributions[i].merge(dist),
            None => {
                self.index.insert(ids.clone(), self.distributions.len());
                self.vectors.extend_from_slice(&ids);
                self.distributions.push(*dist);
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.distributions.is_empty()
    }

    pub fn build(self) -> InstanceBase {
        let mut global = ClassDistribution::new();
        for d in &self.distributions {
            global.merge(d);
        }
        InstanceBase {
            schema: self.schema,
            alphabet: self.alphabet,
            vectors: self.vectors,
            distributions: self.distributions,
            global,
            index: self.index,
        }
    }
}
