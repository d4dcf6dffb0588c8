//! Annotated lexicons, task label projections and windowing.
//!
//! A lexicon line pairs a surface word with its typed morpheme segmentation:
//!
//! ```text
//! abnormalities	ab/1 norm/s al/1 iti/2 es/i
//! ```
//!
//! Corpora are always annotated with the four fine-grained morpheme tags.
//! The coarser tasks are projections of those tags onto smaller label sets,
//! so a single file serves all three tasks.

#![allow(clippy::tabs_in_doc_comments)]

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::base::{InstanceBase, InstanceBaseBuilder, Schema};

/// Reserved symbol filling window positions beyond the word edges.
pub const PAD: char = '-';

/// Class label attached to a focus position.
///
/// The variant order is the fixed tie-break order used everywhere a
/// majority has to be resolved deterministically: `0 < s < 1 < 2 < d < i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Null,
    Stem,
    Neutral,
    Affecting,
    Derivational,
    Inflectional,
}

impl Label {
    pub const COUNT: usize = 6;
    pub const ALL: [Label; Label::COUNT] = [
        Label::Null,
        Label::Stem,
        Label::Neutral,
        Label::Affecting,
        Label::Derivational,
        Label::Inflectional,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_char(self) -> char {
        match self {
            Label::Null => '0',
            Label::Stem => 's',
            Label::Neutral => '1',
            Label::Affecting => '2',
            Label::Derivational => 'd',
            Label::Inflectional => 'i',
        }
    }

    pub fn from_char(c: char) -> Option<Label> {
        Some(match c {
            '0' => Label::Null,
            's' => Label::Stem,
            '1' => Label::Neutral,
            '2' => Label::Affecting,
            'd' => Label::Derivational,
            'i' => Label::Inflectional,
            _ => return None,
        })
    }

    pub fn is_boundary(self) -> bool {
        self != Label::Null
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl FromStr for Label {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => Label::from_char(c).ok_or_else(|| format!("unknown label `{s}`")),
            _ => Err(format!("unknown label `{s}`")),
        }
    }
}

/// Morpheme type as annotated in the lexicon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MorphTag {
    /// Noun or verb stem.
    Stem,
    /// Stress-neutral affix.
    Neutral,
    /// Stress-affecting affix.
    Affecting,
    /// Inflectional morpheme.
    Inflection,
}

impl MorphTag {
    pub fn as_char(self) -> char {
        match self {
            MorphTag::Stem => 's',
            MorphTag::Neutral => '1',
            MorphTag::Affecting => '2',
            MorphTag::Inflection => 'i',
        }
    }

    pub fn from_char(c: char) -> Option<MorphTag> {
        Some(match c {
            's' => MorphTag::Stem,
            '1' => MorphTag::Neutral,
            '2' => MorphTag::Affecting,
            'i' => MorphTag::Inflection,
            _ => return None,
        })
    }
}

/// The three segmentation tasks, from boundary detection only (M1) to full
/// morpheme typing (M3).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Task {
    M1,
    M2,
    M3,
}

impl Task {
    pub const ALL: [Task; 3] = [Task::M1, Task::M2, Task::M3];

    /// Label set of the task, null label first.
    pub fn labels(self) -> &'static [Label] {
        match self {
            Task::M1 => &[Label::Null, Label::Neutral],
            Task::M2 => &[Label::Null, Label::Derivational, Label::Inflectional],
            Task::M3 => &[
                Label::Null,
                Label::Stem,
                Label::Neutral,
                Label::Affecting,
                Label::Inflectional,
            ],
        }
    }

    /// Maps a morpheme tag onto the (non-null) boundary label of this task.
    pub fn project(self, tag: MorphTag) -> Label {
        match self {
            Task::M1 => Label::Neutral,
            Task::M2 => match tag {
                MorphTag::Inflection => Label::Inflectional,
                _ => Label::Derivational,
            },
            Task::M3 => match tag {
                MorphTag::Stem => Label::Stem,
                MorphTag::Neutral => Label::Neutral,
                MorphTag::Affecting => Label::Affecting,
                MorphTag::Inflection => Label::Inflectional,
            },
        }
    }

    pub fn accepts(self, label: Label) -> bool {
        self.labels().contains(&label)
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Task::M1 => "M1",
            Task::M2 => "M2",
            Task::M3 => "M3",
        })
    }
}

impl FromStr for Task {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "M1" => Ok(Task::M1),
            "M2" => Ok(Task::M2),
            "M3" => Ok(Task::M3),
            _ => Err(format!("unknown task `{s}` (expected m1, m2 or m3)")),
        }
    }
}

/// Context widths around the focus symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    pub left: usize,
    pub right: usize,
}

impl Window {
    pub fn new(left: usize, right: usize) -> Self {
        Self { left, right }
    }

    /// Number of features in an instance: left context, focus, right context.
    pub fn width(&self) -> usize {
        self.left + 1 + self.right
    }

    /// Offset of feature `i` relative to the focus position.
    pub fn offset(&self, i: usize) -> isize {
        i as isize - self.left as isize
    }
}

impl Default for Window {
    fn default() -> Self {
        Self { left: 3, right: 3 }
    }
}

impl FromStr for Window {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (l, r) = s
            .split_once(',')
            .ok_or_else(|| format!("window `{s}` must be LEFT,RIGHT"))?;
        let parse = |v: &str| {
            v.trim()
                .parse::<usize>()
                .map_err(|_| format!("window width `{v}` is not a non-negative integer"))
        };
        Ok(Window::new(parse(l)?, parse(r)?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub text: String,
    pub tag: MorphTag,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("surface is empty")]
    EmptySurface,
    #[error("word has no segments")]
    NoSegments,
    #[error("segment {0} is empty")]
    EmptySegment(usize),
    #[error("surface contains the reserved pad symbol `{PAD}`")]
    ContainsPad,
    #[error("surface contains whitespace")]
    ContainsWhitespace,
    #[error("segments concatenate to `{joined}`, not `{surface}`")]
    ConcatenationMismatch { surface: String, joined: String },
}

/// A surface word with its ground-truth morpheme segmentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnotatedWord {
    surface: String,
    segments: Vec<Segment>,
}

impl AnnotatedWord {
    pub fn new(surface: impl Into<String>, segments: Vec<Segment>) -> Result<Self, WordError> {
        let surface = surface.into();
        check_surface(&surface)?;
        if segments.is_empty() {
            return Err(WordError::NoSegments);
        }
        if let Some(i) = segments.iter().position(|s| s.text.is_empty()) {
            return Err(WordError::EmptySegment(i + 1));
        }
        let joined: String = segments.iter().map(|s| s.text.as_str()).collect();
        if joined != surface {
            return Err(WordError::ConcatenationMismatch { surface, joined });
        }
        Ok(Self { surface, segments })
    }

    pub fn surface(&self) -> &str {
        &self.surface
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn symbols(&self) -> Vec<char> {
        self.surface.chars().collect()
    }

    /// Number of symbols (not bytes) in the surface.
    pub fn len(&self) -> usize {
        self.surface.chars().count()
    }

    pub fn is_empty(&self) -> bool {
        self.surface.is_empty()
    }

    fn lowercased(&self) -> Self {
        Self {
            surface: self.surface.to_lowercase(),
            segments: self
                .segments
                .iter()
                .map(|s| Segment {
                    text: s.text.to_lowercase(),
                    tag: s.tag,
                })
                .collect(),
        }
    }
}

impl fmt::Display for AnnotatedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t", self.surface)?;
        for (i, seg) in self.segments.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}/{}", seg.text, seg.tag.as_char())?;
        }
        Ok(())
    }
}

/// Validates a raw surface: non-empty, no pad symbol, no whitespace.
pub fn check_surface(surface: &str) -> Result<(), WordError> {
    if surface.is_empty() {
        return Err(WordError::EmptySurface);
    }
    if surface.contains(PAD) {
        return Err(WordError::ContainsPad);
    }
    if surface.chars().any(char::is_whitespace) {
        return Err(WordError::ContainsWhitespace);
    }
    Ok(())
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: missing tab between surface and segmentation")]
    MissingTab { line: usize },
    #[error("line {line}: segment `{segment}` has no `/tag`")]
    MissingTag { line: usize, segment: String },
    #[error("line {line}: unknown tag `{tag}` (expected s, 1, 2 or i)")]
    UnknownTag { line: usize, tag: String },
    #[error("line {line}: {source}")]
    Word {
        line: usize,
        #[source]
        source: WordError,
    },
}

/// Parses a lexicon document, verbatim case.
pub fn parse_lexicon(text: &str) -> Result<Vec<AnnotatedWord>, ParseError> {
    parse_lexicon_with(text, false)
}

/// Parses a lexicon document, optionally lowercasing every word on ingestion.
pub fn parse_lexicon_with(text: &str, lowercase: bool) -> Result<Vec<AnnotatedWord>, ParseError> {
    let mut words = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim_end_matches('\r');
        if trimmed.trim().is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let word = parse_line(trimmed, line)?;
        words.push(if lowercase { word.lowercased() } else { word });
    }
    Ok(words)
}

fn parse_line(text: &str, line: usize) -> Result<AnnotatedWord, ParseError> {
    let (surface, analysis) = text
        .split_once('\t')
        .ok_or(ParseError::MissingTab { line })?;
    let mut segments = Vec::new();
    for item in analysis.split_whitespace() {
        let (seg, tag) = item.rsplit_once('/').ok_or_else(|| ParseError::MissingTag {
            line,
            segment: item.to_string(),
        })?;
        if tag.is_empty() {
            return Err(ParseError::MissingTag {
                line,
                segment: item.to_string(),
            });
        }
        let mut tag_chars = tag.chars();
        let tag = match (tag_chars.next().and_then(MorphTag::from_char), tag_chars.next()) {
            (Some(t), None) => t,
            _ => {
                return Err(ParseError::UnknownTag {
                    line,
                    tag: tag.to_string(),
                })
            }
        };
        segments.push(Segment {
            text: seg.to_string(),
            tag,
        });
    }
    AnnotatedWord::new(surface, segments).map_err(|source| ParseError::Word { line, source })
}

/// One class label per surface position: the projected tag where a segment
/// starts, `0` elsewhere.
pub fn project_labels(word: &AnnotatedWord, task: Task) -> Vec<Label> {
    let mut labels = vec![Label::Null; word.len()];
    let mut pos = 0;
    for seg in &word.segments {
        labels[pos] = task.project(seg.tag);
        pos += seg.text.chars().count();
    }
    labels
}

/// A fixed-width window around one focus symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub features: Vec<char>,
    pub label: Label,
    /// Index of the source word in its word list.
    pub word: usize,
    /// Focus position inside the source word.
    pub focus: usize,
}

impl Instance {
    /// Features rendered the way the lexicon tables show them, space separated.
    pub fn render_features(&self) -> String {
        render_symbols(&self.features)
    }
}

pub fn render_symbols(symbols: &[char]) -> String {
    let mut out = String::with_capacity(symbols.len() * 2);
    for (i, c) in symbols.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push(*c);
    }
    out
}

/// Windows over every position of `symbols`, padding beyond the edges.
pub fn window_symbols(symbols: &[char], window: Window) -> Vec<Vec<char>> {
    let len = symbols.len() as isize;
    (0..symbols.len())
        .map(|focus| {
            let focus = focus as isize;
            (focus - window.left as isize..=focus + window.right as isize)
                .map(|p| if p < 0 || p >= len { PAD } else { symbols[p as usize] })
                .collect()
        })
        .collect()
}

/// Expands a word into one labelled instance per surface position.
pub fn window_word(word: &AnnotatedWord, task: Task, window: Window) -> Vec<Instance> {
    window_word_at(0, word, task, window)
}

/// Like [`window_word`], recording `index` as the provenance word index.
pub fn window_word_at(index: usize, word: &AnnotatedWord, task: Task, window: Window) -> Vec<Instance> {
    let labels = project_labels(word, task);
    window_symbols(&word.symbols(), window)
        .into_iter()
        .zip(labels)
        .enumerate()
        .map(|(focus, (features, label))| Instance {
            features,
            label,
            word: index,
            focus,
        })
        .collect()
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("cannot build an instance base from an empty word list")]
    Empty,
}

/// Windows every word and stores the instances, merging identical vectors.
pub fn build_instance_base(
    words: &[AnnotatedWord],
    task: Task,
    window: Window,
) -> Result<InstanceBase, BuildError> {
    build_instance_base_from(words.iter(), task, window)
}

/// [`build_instance_base`] over any iterator of words (e.g. a training fold).
pub fn build_instance_base_from<'a>(
    words: impl IntoIterator<Item = &'a AnnotatedWord>,
    task: Task,
    window: Window,
) -> Result<InstanceBase, BuildError> {
    let mut builder = InstanceBaseBuilder::new(Schema { task, window });
    for word in words {
        for inst in window_word(word, task, window) {
            builder.add(&inst.features, inst.label, 1);
        }
    }
    if builder.is_empty() {
        return Err(BuildError::Empty);
    }
    Ok(builder.build())
}

/// Splits a surface before each boundary label, pairing each piece with its
/// label. Inverse of [`project_labels`] on well-formed label sequences.
pub fn split_at_boundaries(symbols: &[char], labels: &[Label]) -> Vec<(String, Label)> {
    let mut out: Vec<(String, Label)> = Vec::new();
    for (c, l) in symbols.iter().zip(labels) {
        match out.last_mut() {
            Some(last) if !l.is_boundary() => last.0.push(*c),
            _ => out.push((c.to_string(), *l)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abnormalities() -> AnnotatedWord {
        parse_lexicon("abnormalities\tab/1 norm/s al/1 iti/2 es/i").unwrap().remove(0)
    }

    fn labels(s: &str) -> Vec<Label> {
        s.split(' ').map(|t| t.parse().unwrap()).collect()
    }

    #[test]
    fn parses_table_word() {
        let w = abnormalities();
        let tags: String = w.segments().iter().map(|s| s.tag.as_char()).collect();
        assert_eq!(tags, "1s12i");
        assert_eq!(w.segments().len(), 5);
        assert_eq!(w.to_string(), "abnormalities\tab/1 norm/s al/1 iti/2 es/i");
    }

    #[test]
    fn parses_minimal_word_and_skips_comments() {
        let words = parse_lexicon("# header\n\na\ta/s\n").unwrap();
        assert_eq!(words.len(), 1);
        assert_eq!(words[0].segments().len(), 1);
    }

    #[test]
    fn duplicates_are_kept() {
        let words = parse_lexicon("a\ta/s\na\ta/s\n").unwrap();
        assert_eq!(words.len(), 2);
    }

    #[test]
    fn parse_errors_name_the_line() {
        let err = parse_lexicon("ok\tok/s\nabnormalities\tab/1 normal/s al/1 iti/2 es/i").unwrap_err();
        assert!(matches!(
            err,
            ParseError::Word {
                line: 2,
                source: WordError::ConcatenationMismatch { .. }
            }
        ));
        assert!(err.to_string().starts_with("line 2:"));

        assert_eq!(
            parse_lexicon("ab\tab").unwrap_err(),
            ParseError::MissingTag { line: 1, segment: "ab".into() }
        );
        assert_eq!(
            parse_lexicon("ab\tab/x").unwrap_err(),
            ParseError::UnknownTag { line: 1, tag: "x".into() }
        );
        assert_eq!(
            parse_lexicon("ab\tab/").unwrap_err(),
            ParseError::MissingTag { line: 1, segment: "ab/".into() }
        );
        assert_eq!(parse_lexicon("ab ab/s").unwrap_err(), ParseError::MissingTab { line: 1 });
        assert!(matches!(
            parse_lexicon("a-b\ta-b/s").unwrap_err(),
            ParseError::Word { source: WordError::ContainsPad, .. }
        ));
        assert!(matches!(
            parse_lexicon("ab\t/s ab/s").unwrap_err(),
            ParseError::Word { source: WordError::EmptySegment(1), .. }
        ));
    }

    #[test]
    fn lowercasing_is_optional() {
        let text = "Rome\tRome/s";
        assert_eq!(parse_lexicon(text).unwrap()[0].surface(), "Rome");
        let low = parse_lexicon_with(text, true).unwrap();
        assert_eq!(low[0].surface(), "rome");
        assert_eq!(low[0].segments()[0].text, "rome");
    }

    #[test]
    fn projections_match_table() {
        let w = abnormalities();
        assert_eq!(project_labels(&w, Task::M3), labels("1 0 s 0 0 0 1 0 2 0 0 i 0"));
        assert_eq!(project_labels(&w, Task::M2), labels("d 0 d 0 0 0 d 0 d 0 0 i 0"));
        assert_eq!(project_labels(&w, Task::M1), labels("1 0 1 0 0 0 1 0 1 0 0 1 0"));
    }

    #[test]
    fn projections_stay_in_task_label_sets() {
        for task in Task::ALL {
            for tag in [MorphTag::Stem, MorphTag::Neutral, MorphTag::Affecting, MorphTag::Inflection] {
                let l = task.project(tag);
                assert!(l.is_boundary());
                assert!(task.accepts(l));
            }
        }
    }

    #[test]
    fn windows_table_rows() {
        let w = abnormalities();
        let m1 = window_word(&w, Task::M1, Window::new(3, 3));
        assert_eq!(m1.len(), 13);
        assert_eq!(m1[0].render_features(), "- - - a b n o");
        assert_eq!(m1[0].label, Label::Neutral);
        let m3 = window_word(&w, Task::M3, Window::new(3, 3));
        assert_eq!(m3[11].render_features(), "i t i e s - -");
        assert_eq!(m3[11].label, Label::Inflectional);
    }

    #[test]
    fn single_letter_word_is_all_pad() {
        let w = parse_lexicon("a\ta/s").unwrap().remove(0);
        let inst = window_word(&w, Task::M3, Window::default());
        assert_eq!(inst.len(), 1);
        assert_eq!(inst[0].render_features(), "- - - a - - -");
        assert_eq!(inst[0].label, Label::Stem);
    }

    #[test]
    fn zero_width_window_keeps_focus_only() {
        let w = abnormalities();
        let inst = window_word(&w, Task::M1, Window::new(0, 0));
        assert_eq!(inst.len(), 13);
        assert!(inst.iter().all(|i| i.features.len() == 1));
        assert_eq!(inst[4].features, vec!['r']);
    }

    #[test]
    fn window_parsing() {
        assert_eq!("3,3".parse::<Window>().unwrap(), Window::new(3, 3));
        assert_eq!("0, 2".parse::<Window>().unwrap(), Window::new(0, 2));
        assert!("3".parse::<Window>().is_err());
        assert!("-1,2".parse::<Window>().is_err());
    }

    #[test]
    fn empty_word_list_is_an_error() {
        assert_eq!(
            build_instance_base(&[], Task::M1, Window::default()).unwrap_err(),
            BuildError::Empty
        );
    }

    #[test]
    fn duplicate_words_double_counts() {
        let words = parse_lexicon("walked\twalk/s ed/i").unwrap();
        let once = build_instance_base(&words, Task::M3, Window::default()).unwrap();
        let twice_words: Vec<_> = words.iter().chain(words.iter()).cloned().collect();
        let twice = build_instance_base(&twice_words, Task::M3, Window::default()).unwrap();
        assert_eq!(once.len(), twice.len());
        assert_eq!(twice.global().total(), 2 * once.global().total());
        for i in 0..once.len() {
            let j = twice.lookup(once.vector_symbols(i).as_slice()).unwrap();
            for l in Label::ALL {
                assert_eq!(twice.distribution(j).get(l), 2 * once.distribution(i).get(l));
            }
        }
    }

    #[test]
    fn colliding_vectors_merge_into_one_distribution() {
        // With a 0/0 window the focus symbol alone is the vector: the `t` of
        // "tie" starts a stem while the `t` of "at" does not.
        let words = parse_lexicon("tie\ttie/s\nat\tat/s").unwrap();
        let base = build_instance_base(&words, Task::M3, Window::new(0, 0)).unwrap();
        // Vectors: t (s, 0), i (0), e (0), a (s).
        assert_eq!(base.len(), 4);
        let t = base.lookup(&['t']).unwrap();
        let d = base.distribution(t);
        assert_eq!(d.get(Label::Stem), 1);
        assert_eq!(d.get(Label::Null), 1);
        assert_eq!(d.total(), 2);
    }

    #[test]
    fn split_inverts_projection() {
        let w = abnormalities();
        let pieces = split_at_boundaries(&w.symbols(), &project_labels(&w, Task::M3));
        let rendered: Vec<String> = pieces.iter().map(|(t, l)| format!("{t}/{l}")).collect();
        assert_eq!(rendered.join(" "), "ab/1 norm/s al/1 iti/2 es/i");
    }
}
