//! k-fold cross-validation over words, word/instance error rates and
//! one-tailed paired t-tests between algorithms.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ContinuousCDF, StudentsT};
use thiserror::Error;

use crate::base::{InstanceBaseBuilder, Schema};
use crate::corpus::{window_word_at, AnnotatedWord, Instance, Label, Task, Window};
use crate::model::{Algorithm, Model};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("fold count must be at least 2, got {0}")]
    TooFewFolds(usize),
    #[error("cannot split {words} words into {k} folds")]
    TooFewWords { words: usize, k: usize },
    #[error("label sequences differ in length: {gold} vs {predicted}")]
    LengthMismatch { gold: usize, predicted: usize },
    #[error("paired samples need equal lengths of at least 2, got {a} and {b}")]
    BadSamples { a: usize, b: usize },
    #[error("no algorithms to evaluate")]
    NoAlgorithms,
}

/// Assignment of word indices to folds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldPlan {
    k: usize,
    seed: u64,
    assignment: Vec<usize>,
}

impl FoldPlan {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn fold_of(&self, word: usize) -> usize {
        self.assignment[word]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Word indices of one test fold, ascending.
    pub fn test_words(&self, fold: usize) -> Vec<usize> {
        (0..self.assignment.len())
            .filter(|&w| self.assignment[w] == fold)
            .collect()
    }

    /// Word indices of the complement of one fold, ascending.
    pub fn train_words(&self, fold: usize) -> Vec<usize> {
        (0..self.assignment.len())
            .filter(|&w| self.assignment[w] != fold)
            .collect()
    }

    pub fn fold_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &f in &self.assignment {
            sizes[f] += 1;
        }
        sizes
    }
}

/// Uniformly random partition of `words` indices into `k` folds whose sizes
/// differ by at most one. Reproducible from `seed`.
pub fn make_folds(words: usize, k: usize, seed: u64) -> Result<FoldPlan, EvalError> {
    if k < 2 {
        return Err(EvalError::TooFewFolds(k));
    }
    if words < k {
        return Err(EvalError::TooFewWords { words, k });
    }
    let mut order: Vec<usize> = (0..words).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut assignment = vec![0; words];
    for (pos, &w) in order.iter().enumerate() {
        assignment[w] = pos % k;
    }
    Ok(FoldPlan { k, seed, assignment })
}

/// A word is processed incorrectly when any of its positions is wrong.
pub fn word_error(gold: &[Label], predicted: &[Label]) -> Result<bool, EvalError> {
    if gold.len() != predicted.len() {
        return Err(EvalError::LengthMismatch {
            gold: gold.len(),
            predicted: predicted.len(),
        });
    }
    Ok(gold.iter().zip(predicted).any(|(g, p)| g != p))
}

/// Windowed instances of one fold: (training, test), with word provenance.
pub fn fold_instances(
    words: &[AnnotatedWord],
    plan: &FoldPlan,
    fold: usize,
    task: Task,
    window: Window,
) -> (Vec<Instance>, Vec<Instance>) {
    let mut train = Vec::new();
    let mut test = Vec::new();
    for (i, word) in words.iter().enumerate() {
        let target = if plan.fold_of(i) == fold { &mut test } else { &mut train };
        target.extend(window_word_at(i, word, task, window));
    }
    (train, test)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldResult {
    /// 1-based fold id.
    pub fold: usize,
    pub algorithm: Algorithm,
    pub task: Task,
    pub instance_errors: usize,
    pub instances: usize,
    pub word_errors: usize,
    pub words: usize,
}

impl FoldResult {
    pub fn instance_error_rate(&self) -> f64 {
        self.instance_errors as f64 / self.instances as f64
    }

    pub fn word_error_rate(&self) -> f64 {
        self.word_errors as f64 / self.words as f64
    }
}

/// Mean and sample standard deviation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeanSd {
    pub mean: f64,
    pub sd: f64,
}

impl MeanSd {
    pub fn of(values: &[f64]) -> Self {
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let sd = if values.len() < 2 {
            0.0
        } else {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        };
        Self { mean, sd }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Summary {
    pub algorithm: Algorithm,
    pub task: Task,
    pub instance_error: MeanSd,
    pub word_error: MeanSd,
}

/// Outcome of a one-tailed paired t-test.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PairedT {
    Statistic { t: f64, p: f64, df: usize },
    /// Every difference is the same nonzero value: zero variance.
    Degenerate { mean: f64, df: usize },
}

/// Paired t-test on `a[i] − b[i]`, one-tailed toward `a > b`.
pub fn paired_t(a: &[f64], b: &[f64]) -> Result<PairedT, EvalError> {
    if a.len() != b.len() || a.len() < 2 {
        return Err(EvalError::BadSamples { a: a.len(), b: b.len() });
    }
    let diffs: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let df = diffs.len() - 1;
    let MeanSd { mean, sd } = MeanSd::of(&diffs);
    if sd == 0.0 {
        if mean == 0.0 {
            return Ok(PairedT::Statistic { t: 0.0, p: 0.5, df });
        }
        return Ok(PairedT::Degenerate { mean, df });
    }
    let t = mean / (sd / (diffs.len() as f64).sqrt());
    Ok(PairedT::Statistic {
        t,
        p: t_upper_tail(t, df),
        df,
    })
}

/// P(T ≥ t) for Student's t with `df` degrees of freedom.
pub fn t_upper_tail(t: f64, df: usize) -> f64 {
    StudentsT::new(0.0, 1.0, df as f64)
        .expect("positive degrees of freedom")
        .sf(t)
}

/// Word-error comparison of two algorithms on one task.
#[derive(Clone, Debug, PartialEq)]
pub struct Comparison {
    /// Algorithm with the lower mean word error.
    pub better: Algorithm,
    pub worse: Algorithm,
    pub task: Task,
    /// Test of `worse − better` per fold.
    pub test: PairedT,
}

#[derive(Clone, Debug, PartialEq)]
pub struct XvalConfig {
    pub task: Task,
    pub window: Window,
    pub k: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvalReport {
    pub config: XvalConfig,
    pub words: usize,
    pub folds: Vec<FoldResult>,
    pub summaries: Vec<Summary>,
    pub comparisons: Vec<Comparison>,
}

impl EvalReport {
    pub fn summary(&self, algorithm: Algorithm) -> Option<&Summary> {
        self.summaries.iter().find(|s| s.algorithm == algorithm)
    }

    pub fn folds_of(&self, algorithm: Algorithm) -> impl Iterator<Item = &FoldResult> + '_ {
        self.folds.iter().filter(move |f| f.algorithm == algorithm)
    }

    /// Tab-separated report: a comment line with the run parameters, the
    /// fold table, then summary and t-test lines.
    pub fn to_tsv(&self) -> String {
        let c = &self.config;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# xval task={} window={},{} k={} seed={} words={}",
            c.task, c.window.left, c.window.right, c.k, c.seed, self.words
        );
        out.push_str("fold\talgorithm\ttask\tinstance_errors\tinstances\tword_errors\twords\n");
        for f in &self.folds {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                f.fold, f.algorithm, f.task, f.instance_errors, f.instances, f.word_errors, f.words
            );
        }
        out.push_str("summary\talgorithm\ttask\tinstance_error_mean\tinstance_error_sd\tword_error_mean\tword_error_sd\n");
        for s in &self.summaries {
            let _ = writeln!(
                out,
                "summary\t{}\t{}\t{:.6}\t{:.6}\t{:.6}\t{:.6}",
                s.algorithm, s.task, s.instance_error.mean, s.instance_error.sd, s.word_error.mean, s.word_error.sd
            );
        }
        if !self.comparisons.is_empty() {
            out.push_str("ttest\tbetter\tworse\ttask\tmetric\tt\tp_one_tailed\tdf\n");
        }
        for cmp in &self.comparisons {
            let (t, p, df) = match cmp.test {
                PairedT::Statistic { t, p, df } => (format!("{t:.6}"), format!("{p:.6}"), df),
                PairedT::Degenerate { df, .. } => ("degenerate".to_string(), "NA".to_string(), df),
            };
            let _ = writeln!(
                out,
                "ttest\t{}\t{}\t{}\tword_error\t{}\t{}\t{}",
                cmp.better, cmp.worse, cmp.task, t, p, df
            );
        }
        out
    }
}

/// k-fold cross-validation of one algorithm.
pub fn run_xval(
    words: &[AnnotatedWord],
    task: Task,
    window: Window,
    algorithm: Algorithm,
    k: usize,
    seed: u64,
) -> Result<EvalReport, EvalError> {
    run_xval_many(words, &XvalConfig { task, window, k, seed }, &[algorithm])
}

/// Cross-validates several algorithms over the same folds and compares
/// every pair with a paired t-test on per-fold word error.
pub fn run_xval_many(
    words: &[AnnotatedWord],
    config: &XvalConfig,
    algorithms: &[Algorithm],
) -> Result<EvalReport, EvalError> {
    if algorithms.is_empty() {
        return Err(EvalError::NoAlgorithms);
    }
    let plan = make_folds(words.len(), config.k, config.seed)?;
    let schema = Schema {
        task: config.task,
        window: config.window,
    };
    let mut per_algo: Vec<Vec<FoldResult>> = vec![Vec::new(); algorithms.len()];
    for fold in 0..plan.k() {
        let (train, test) = fold_instances(words, &plan, fold, config.task, config.window);
        let mut builder = InstanceBaseBuilder::new(schema);
        for inst in &train {
            builder.add(&inst.features, inst.label, 1);
        }
        let base = builder.build();
        for (slot, &algorithm) in algorithms.iter().enumerate() {
            let model = Model::train(base.clone(), algorithm);
            per_algo[slot].push(score_fold(&model, fold, &test));
        }
    }

    let mut summaries = Vec::new();
    for (slot, &algorithm) in algorithms.iter().enumerate() {
        let folds = &per_algo[slot];
        let inst: Vec<f64> = folds.iter().map(FoldResult::instance_error_rate).collect();
        let word: Vec<f64> = folds.iter().map(FoldResult::word_error_rate).collect();
        summaries.push(Summary {
            algorithm,
            task: config.task,
            instance_error: MeanSd::of(&inst),
            word_error: MeanSd::of(&word),
        });
    }

    let mut comparisons = Vec::new();
    for i in 0..algorithms.len() {
        for j in i + 1..algorithms.len() {
            let (mut better, mut worse) = (i, j);
            if summaries[j].word_error.mean < summaries[i].word_error.mean {
                std::mem::swap(&mut better, &mut worse);
            }
            let rates = |s: usize| -> Vec<f64> { per_algo[s].iter().map(FoldResult::word_error_rate).collect() };
            comparisons.push(Comparison {
                better: algorithms[better],
                worse: algorithms[worse],
                task: config.task,
                test: paired_t(&rates(worse), &rates(better))?,
            });
        }
    }

    Ok(EvalReport {
        config: config.clone(),
        words: words.len(),
        folds: per_algo.into_iter().flatten().collect(),
        summaries,
        comparisons,
    })
}

fn score_fold(model: &Model, fold: usize, test: &[Instance]) -> FoldResult {
    let mut result = FoldResult {
        fold: fold + 1,
        algorithm: model.algorithm(),
        task: model.task(),
        instance_errors: 0,
        instances: test.len(),
        word_errors: 0,
        words: 0,
    };
    // instances of one word are contiguous in `test`
    for word in test.chunk_by(|a, b| a.word == b.word) {
        let gold: Vec<Label> = word.iter().map(|i| i.label).collect();
        let predicted: Vec<Label> = word.iter().map(|i| model.classify(&i.features)).collect();
        result.instance_errors += gold.iter().zip(&predicted).filter(|(g, p)| g != p).count();
        result.words += 1;
        if word_error(&gold, &predicted).expect("one prediction per instance") {
            result.word_errors += 1;
        }
    }
    result
}
