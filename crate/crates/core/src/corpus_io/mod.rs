//! External data formats: transcripts, detector tracks, embedding tables,
//! and the labeled clip corpus, plus the recipe-link extraction heuristic.

mod clip_corpus;
mod detector;
mod embedding;
mod links;
mod transcript;

pub use clip_corpus::{read_clip_corpus, write_clip_corpus, ClipCorpus};
pub use detector::{load_detector_track, DetectorTrack};
pub use embedding::{load_embeddings, EmbeddingTable};
pub use links::extract_recipe_links;
pub use transcript::{load_transcript, write_transcript, TimedToken, Transcript};

/// A video's descriptive text plus any recipe pages linked from it.
#[derive(Debug, Clone, PartialEq)]
pub struct RecipeDocument {
    pub video_id: String,
    pub description_sentences: Vec<String>,
    pub linked_texts: Vec<String>,
}

impl RecipeDocument {
    pub fn new(video_id: impl Into<String>, description_sentences: Vec<String>) -> Self {
        RecipeDocument {
            video_id: video_id.into(),
            description_sentences,
            linked_texts: Vec::new(),
        }
    }
}
