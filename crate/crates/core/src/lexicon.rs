//! Word-similarity service backed by the embedding table, used by the
//! alignment emission model and by ingredient canonicalization.

use crate::corpus_io::EmbeddingTable;
use crate::words::edit_distance;

/// How to score word pairs when one or both words are missing from the table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OovMode {
    /// 1 - normalized Levenshtein distance. ASR errors often produce
    /// near-spellings of recipe words, so this recovers some signal.
    EditDistanceFallback,
    ZeroSimilarity,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilarityConfig {
    pub oov_mode: OovMode,
    pub distance_scale: f64,
}

impl Default for SimilarityConfig {
    fn default() -> Self {
        SimilarityConfig {
            oov_mode: OovMode::EditDistanceFallback,
            distance_scale: 1.0,
        }
    }
}

/// Similarity in [0,1]. Identical strings score exactly 1; in-vocabulary
/// pairs score 1/(1 + d/scale) on Euclidean distance d; out-of-vocabulary
/// pairs fall back per [`OovMode`]. Symmetric by construction.
pub fn word_similarity(a: &str, b: &str, table: &EmbeddingTable, cfg: &SimilarityConfig) -> f64 {
    let a_folded = a.to_lowercase();
    let b_folded = b.to_lowercase();
    if a_folded == b_folded {
        return 1.0;
    }
    match (table.get(&a_folded), table.get(&b_folded)) {
        (Some(va), Some(vb)) => {
            let d = euclidean(va, vb);
            1.0 / (1.0 + d / cfg.distance_scale)
        }
        _ => match cfg.oov_mode {
            OovMode::ZeroSimilarity => 0.0,
            OovMode::EditDistanceFallback => {
                let d = edit_distance(&a_folded, &b_folded) as f64;
                let max_len = a_folded.chars().count().max(b_folded.chars().count()) as f64;
                if max_len == 0.0 {
                    1.0
                } else {
                    1.0 - d / max_len
                }
            }
        },
    }
}

/// `max` of [`word_similarity`] over a word set; empty set scores 0.
pub fn max_similarity<'a, I>(y: &str, words: I, table: &EmbeddingTable, cfg: &SimilarityConfig) -> f64
where
    I: IntoIterator<Item = &'a str>,
{
    words
        .into_iter()
        .map(|x| word_similarity(y, x, table, cfg))
        .fold(0.0, f64::max)
}

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}
