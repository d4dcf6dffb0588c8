//! Memory-based morphological segmentation.
//!
//! Words are expanded into fixed-width letter windows, one per position,
//! each labelled with the morpheme boundary (if any) that starts at its
//! focus letter. Three classifiers learn the mapping:
//!
//! * IB1: 1-nearest neighbour under the overlap distance,
//! * IB1-IG: the same with information-gain feature weights,
//! * IGTree: a trie over the features in gain order, with default labels.
//!
//! ```
//! use morphseg::corpus::{build_instance_base, parse_lexicon, Task, Window};
//! use morphseg::model::{Algorithm, Model};
//! use morphseg::analyzer::analyze_word;
//!
//! let words = parse_lexicon("walked\twalk/s ed/i\ntalking\ttalk/s ing/i\n").unwrap();
//! let base = build_instance_base(&words, Task::M3, Window::default()).unwrap();
//! let model = Model::train(base, Algorithm::Ib1Ig);
//! let seg = analyze_word(&model, "walked").unwrap();
//! assert_eq!(seg.to_string(), "walked\twalk/s ed/i");
//! ```

pub mod analyzer;
pub mod base;
pub mod cli;
pub mod corpus;
pub mod eval;
pub mod igtree;
pub mod info;
pub mod mbl;
pub mod model;
