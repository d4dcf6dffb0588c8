//! Segmentation of raw words with a trained model.

use std::fmt;

use thiserror::Error;

use crate::corpus::{check_surface, split_at_boundaries, window_symbols, Label, WordError};
use crate::model::Model;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnalyzeError {
    #[error("word {index}: {source}")]
    Word {
        index: usize,
        #[source]
        source: WordError,
    },
}

/// A predicted segmentation of one surface word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segmentation {
    surface: String,
    /// (symbol position, boundary label), strictly increasing, first at 0.
    boundaries: Vec<(usize, Label)>,
    /// The model predicted no boundary at position 0 and one was forced.
    coerced: bool,
}

impl Segmentation {
    pub fn surface(&self) -> &str {
        &self.surface
    }

    pub fn boundaries(&self) -> &[(usize, Label)] {
        &self.boundaries
    }

    pub fn coerced(&self) -> bool {
        self.coerced
    }

    /// Per-position labels, `0` between boundaries.
    pub fn labels(&self) -> Vec<Label> {
        let mut labels = vec![Label::Null; self.surface.chars().count()];
        for &(p, l) in &self.boundaries {
            labels[p] = l;
        }
        labels
    }

    /// Morpheme texts with their boundary labels.
    pub fn segments(&self) -> Vec<(String, Label)> {
        let symbols: Vec<char> = self.surface.chars().collect();
        split_at_boundaries(&symbols, &self.labels())
    }
}

impl fmt::Display for Segmentation {
    /// Lexicon grammar: `surface<TAB>seg/label seg/label ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t", self.surface)?;
        for (i, (text, label)) in self.segments().iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{text}/{label}")?;
        }
        Ok(())
    }
}

/// Classifies every position of `surface` and reads boundaries off the
/// non-null labels. A null prediction at position 0 is replaced by the
/// model's most frequent boundary label and the result is flagged.
pub fn analyze_word(model: &Model, surface: &str) -> Result<Segmentation, WordError> {
    check_surface(surface)?;
    let symbols: Vec<char> = surface.chars().collect();
    let mut boundaries = Vec::new();
    let mut coerced = false;
    for (pos, features) in window_symbols(&symbols, model.window()).iter().enumerate() {
        let mut label = model.classify(features);
        if pos == 0 && !label.is_boundary() {
            label = model
                .global()
                .majority_boundary(model.global())
                .unwrap_or(model.task().labels()[1]);
            coerced = true;
        }
        if label.is_boundary() {
            boundaries.push((pos, label));
        }
    }
    Ok(Segmentation {
        surface: surface.to_string(),
        boundaries,
        coerced,
    })
}

/// Analyzes every word in order; a bad word yields an error record at its
/// index without stopping the batch.
pub fn batch_analyze<S: AsRef<str>>(model: &Model, words: &[S]) -> Vec<Result<Segmentation, AnalyzeError>> {
    words
        .iter()
        .enumerate()
        .map(|(index, w)| analyze_word(model, w.as_ref()).map_err(|source| AnalyzeError::Word { index, source }))
        .collect()
}
