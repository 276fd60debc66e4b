//! Aligns step-by-step recipe text to timestamped speech transcripts of
//! cooking videos, labels clips with (action, object) pairs, refines clip
//! boundaries against visual detector tracks, and ranks clips with an
//! affordance-based confidence model.

pub mod align;
pub mod classifier;
pub mod clips;
pub mod confidence;
pub mod config;
pub mod corpus_io;
pub mod error;
pub mod interval;
pub mod lexicon;
pub mod parser;
pub mod refine;
pub mod synth;
pub mod words;

pub use error::Error;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
