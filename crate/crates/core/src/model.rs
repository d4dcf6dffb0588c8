//! Trained models and their versioned text format.
//!
//! ```text
//! morphseg-model 1
//! algorithm ib1ig
//! task M3
//! window 3 3
//! weighting gain
//! weights 0.0123 0.4567 ...
//! classes 0:9500 s:1200 1:800 2:300 i:700
//! entries 14233
//! - - - a b n o<TAB>1:1
//! ...
//! ```
//!
//! IGTree models replace the entry block with `order`, `unique-vectors` and
//! a `nodes` line followed by the preorder node list.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::base::{ClassDistribution, InstanceBase, InstanceBaseBuilder, Schema};
use crate::corpus::{render_symbols, Label, Task, Window};
use crate::igtree::{IgTree, TreeError};
use crate::info::FeatureWeights;
use crate::mbl::{MemoryClassifier, Weighting};

pub const FORMAT_VERSION: u32 = 1;
const MAGIC: &str = "morphseg-model";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    Ib1,
    Ib1Ig,
    IgTree,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Ib1, Algorithm::Ib1Ig, Algorithm::IgTree];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Ib1 => "ib1",
            Algorithm::Ib1Ig => "ib1ig",
            Algorithm::IgTree => "igtree",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ib1" => Ok(Algorithm::Ib1),
            "ib1ig" | "ib1-ig" => Ok(Algorithm::Ib1Ig),
            "igtree" => Ok(Algorithm::IgTree),
            _ => Err(format!("unknown algorithm `{s}` (expected ib1, ib1ig or igtree)")),
        }
    }
}

#[derive(Clone, Debug)]
enum Classifier {
    Memory(MemoryClassifier),
    Tree { tree: IgTree, gains: FeatureWeights },
}

/// A trained classifier plus the schema it was trained under.
#[derive(Clone, Debug)]
pub struct Model {
    algorithm: Algorithm,
    schema: Schema,
    global: ClassDistribution,
    classifier: Classifier,
}

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("model line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("unsupported model format version {0}")]
    Version(u32),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

fn format_err(line: usize, message: impl Into<String>) -> ModelError {
    ModelError::Format {
        line,
        message: message.into(),
    }
}

impl Model {
    /// Trains `algorithm` on an instance base.
    pub fn train(base: InstanceBase, algorithm: Algorithm) -> Self {
        let schema = base.schema();
        let global = *base.global();
        let classifier = match algorithm {
            Algorithm::Ib1 => Classifier::Memory(MemoryClassifier::ib1(base)),
            Algorithm::Ib1Ig => Classifier::Memory(MemoryClassifier::ib1ig(base)),
            Algorithm::IgTree => {
                let gains = FeatureWeights::gain(&base);
                let tree = IgTree::build(&base, &gains.order())
                    .expect("gain order is a permutation and the base is non-empty");
                Classifier::Tree { tree, gains }
            }
        };
        Self {
            algorithm,
            schema,
            global,
            classifier,
        }
    }

    pub fn algorithm(&self) -> Algorithm {
        self.algorithm
    }

    pub fn schema(&self) -> Schema {
        self.schema
    }

    pub fn task(&self) -> Task {
        self.schema.task
    }

    pub fn window(&self) -> Window {
        self.schema.window
    }

    /// Class distribution of the training occurrences.
    pub fn global(&self) -> &ClassDistribution {
        &self.global
    }

    /// Distance weights (IB1, IB1-IG) or ordering gains (IGTree).
    pub fn weights(&self) -> &FeatureWeights {
        match &self.classifier {
            Classifier::Memory(m) => m.weights(),
            Classifier::Tree { gains, .. } => gains,
        }
    }

    pub fn tree(&self) -> Option<&IgTree> {
        match &self.classifier {
            Classifier::Tree { tree, .. } => Some(tree),
            Classifier::Memory(_) => None,
        }
    }

    pub fn memory(&self) -> Option<&MemoryClassifier> {
        match &self.classifier {
            Classifier::Memory(m) => Some(m),
            Classifier::Tree { .. } => None,
        }
    }

    /// Class label of one windowed instance.
    pub fn classify(&self, features: &[char]) -> Label {
        match &self.classifier {
            Classifier::Memory(m) => m.classify(features).label,
            Classifier::Tree { tree, .. } => tree.classify(features).label,
        }
    }

    fn weighting_name(&self) -> &'static str {
        match self.algorithm {
            Algorithm::Ib1 => "uniform",
            Algorithm::Ib1Ig | Algorithm::IgTree => "gain",
        }
    }

    /// Serializes to the versioned text format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{MAGIC} {FORMAT_VERSION}");
        let _ = writeln!(out, "algorithm {}", self.algorithm);
        let _ = writeln!(out, "task {}", self.schema.task);
        let _ = writeln!(out, "window {} {}", self.schema.window.left, self.schema.window.right);
        let _ = writeln!(out, "weighting {}", self.weighting_name());
        let weights: Vec<String> = self.weights().as_slice().iter().map(|w| format!("{w:?}")).collect();
        let _ = writeln!(out, "weights {}", weights.join(" "));
        let _ = writeln!(out, "classes {}", self.global.render());
        match &self.classifier {
            Classifier::Memory(m) => {
                let base = m.base();
                let _ = writeln!(out, "entries {}", base.len());
                for i in 0..base.len() {
                    let _ = writeln!(
                        out,
                        "{}\t{}",
                        render_symbols(&base.vector_symbols(i)),
                        base.distribution(i).render()
                    );
                }
            }
            Classifier::Tree { tree, .. } => {
                let order: Vec<String> = tree.order().iter().map(|f| f.to_string()).collect();
                let _ = writeln!(out, "order {}", order.join(" "));
                let _ = writeln!(out, "unique-vectors {}", tree.unique_vectors());
                let _ = writeln!(out, "nodes {}", tree.node_count());
                tree.write_nodes(&mut out);
            }
        }
        out
    }

    /// Parses the text written by [`Model::to_text`].
    pub fn from_text(text: &str) -> Result<Self, ModelError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let mut header = |key: &str| -> Result<(usize, String), ModelError> {
            let (n, line) = lines
                .next()
                .ok_or_else(|| format_err(0, format!("missing `{key}` line")))?;
            let rest = line
                .strip_prefix(key)
                .and_then(|r| if r.is_empty() { Some(r) } else { r.strip_prefix(' ') })
                .ok_or_else(|| format_err(n, format!("expected `{key}`")))?;
            Ok((n, rest.to_string()))
        };

        let (n, version) = header(MAGIC)?;
        let version: u32 = version.parse().map_err(|_| format_err(n, "bad format version"))?;
        if version != FORMAT_VERSION {
            return Err(ModelError::Version(version));
        }
        let (n, algo) = header("algorithm")?;
        let algorithm: Algorithm = algo.parse().map_err(|e: String| format_err(n, e))?;
        let (n, task) = header("task")?;
        let task: Task = task.parse().map_err(|e: String| format_err(n, e))?;
        let (n, window) = header("window")?;
        let widths: Vec<usize> = window
            .split(' ')
            .map(|v| v.parse().map_err(|_| format_err(n, "bad window width")))
            .collect::<Result<_, _>>()?;
        if widths.len() != 2 {
            return Err(format_err(n, "window needs two widths"));
        }
        let schema = Schema {
            task,
            window: Window::new(widths[0], widths[1]),
        };
        let (_, _weighting) = header("weighting")?;
        let (n, weights) = header("weights")?;
        let weights: Vec<f64> = weights
            .split(' ')
            .map(|v| v.parse().map_err(|_| format_err(n, format!("bad weight `{v}`"))))
            .collect::<Result<_, _>>()?;
        if weights.len() != schema.width() {
            return Err(format_err(n, "weight count does not match the window"));
        }
        let weights = FeatureWeights::new(weights);
        let (n, classes) = header("classes")?;
        let global = ClassDistribution::parse(&classes).map_err(|e| format_err(n, e))?;

        let classifier = match algorithm {
            Algorithm::Ib1 | Algorithm::Ib1Ig => {
                let (n, count) = header("entries")?;
                let count: usize = count.parse().map_err(|_| format_err(n, "bad entry count"))?;
                let mut builder = InstanceBaseBuilder::new(schema);
                for _ in 0..count {
                    let (n, line) = lines
                        .next()
                        .ok_or_else(|| format_err(0, "fewer entries than declared"))?;
                    let (features, dist) = line
                        .split_once('\t')
                        .ok_or_else(|| format_err(n, "entry needs FEATURES<TAB>DISTRIBUTION"))?;
                    let symbols = parse_symbols(features).ok_or_else(|| format_err(n, "bad feature vector"))?;
                    if symbols.len() != schema.width() {
                        return Err(format_err(n, "feature vector width does not match the window"));
                    }
                    let dist = ClassDistribution::parse(dist).map_err(|e| format_err(n, e))?;
                    builder.add_distribution(&symbols, &dist);
                }
                let base = builder.build();
                if base.global() != &global {
                    return Err(format_err(0, "entry distributions do not sum to the class totals"));
                }
                let weighting = if algorithm == Algorithm::Ib1 {
                    Weighting::Uniform
                } else {
                    Weighting::Gain
                };
                Classifier::Memory(MemoryClassifier::with_weights(base, weights, weighting))
            }
            Algorithm::IgTree => {
                let (n, order) = header("order")?;
                let order: Vec<usize> = order
                    .split(' ')
                    .map(|v| v.parse().map_err(|_| format_err(n, "bad feature index")))
                    .collect::<Result<_, _>>()?;
                if order.len() != schema.width() {
                    return Err(format_err(n, "feature order does not match the window"));
                }
                let (n, unique) = header("unique-vectors")?;
                let unique: usize = unique.parse().map_err(|_| format_err(n, "bad vector count"))?;
                let (n, nodes) = header("nodes")?;
                let nodes: usize = nodes.parse().map_err(|_| format_err(n, "bad node count"))?;
                let mut rest = lines.map(|(_, l)| l);
                let tree = IgTree::read_nodes(order, unique, &mut rest)?;
                if tree.node_count() != nodes {
                    return Err(format_err(n, "node count does not match the node list"));
                }
                Classifier::Tree { tree, gains: weights }
            }
        };
        Ok(Self {
            algorithm,
            schema,
            global,
            classifier,
        })
    }
}

fn parse_symbols(text: &str) -> Option<Vec<char>> {
    text.split(' ')
        .map(|s| {
            let mut cs = s.chars();
            match (cs.next(), cs.next()) {
                (Some(c), None) => Some(c),
                _ => None,
            }
        })
        .collect()
}
