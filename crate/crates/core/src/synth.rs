//! Synthetic evaluation harness: generates transcripts with a known ground
//! truth alignment (filler padding + word-substitution noise) and scores
//! predicted alignments against that truth.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::align::{self, AlignmentPath};
use crate::corpus_io::{TimedToken, Transcript};
use crate::interval::Interval;
use crate::parser::{ParsedRecipe, RecipeStep};
use crate::words;
use crate::{Error, Result};

pub const TOKEN_DURATION: f64 = 0.5;

/// Noise model for generated transcripts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthNoise {
    /// Probability of replacing each spoken content word with a filler.
    pub word_error_rate: f64,
    /// Number of background filler tokens inserted across the transcript.
    pub background_pad: usize,
    pub seed: u64,
}

/// A generated case: the recipe, its spoken transcript, and the true path.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthCase {
    pub recipe: ParsedRecipe,
    pub transcript: Transcript,
    pub truth: AlignmentPath,
}

/// Builds a recipe of `k` steps with `words_per_step` distinct invented
/// content words each, so the steps are separable by construction. The
/// words are random letter strings: unlike a shared numbered scheme, they
/// stay dissimilar under edit-distance similarity fallbacks.
pub fn synth_recipe(k: usize, words_per_step: usize, seed: u64) -> ParsedRecipe {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut verbs: Vec<&String> = words::cooking_verbs().iter().collect();
    verbs.sort();
    let mut used: BTreeSet<String> = BTreeSet::new();
    let mut random_word = |rng: &mut ChaCha8Rng| loop {
        let word: String = (0..7).map(|_| rng.gen_range(b'a'..=b'z') as char).collect();
        if used.insert(word.clone()) {
            return word;
        }
    };
    let mut steps = Vec::new();
    for step in 1..=k {
        let action = verbs[rng.gen_range(0..verbs.len())].clone();
        let mut step_words = BTreeSet::from([action.clone()]);
        let mut entities = Vec::new();
        while step_words.len() < words_per_step.max(1) {
            let word = random_word(&mut rng);
            entities.push(word.clone());
            step_words.insert(word);
        }
        let mut source: Vec<String> = step_words.iter().cloned().collect();
        source.sort();
        steps.push(RecipeStep {
            index: step,
            action,
            entities,
            source_text: source.join(" "),
            words: step_words,
        });
    }
    ParsedRecipe {
        ingredients: Vec::new(),
        steps,
    }
}

/// Walks the steps in order emitting their content words (truth B=0, R=k),
/// inserts `background_pad` filler tokens at random positions (truth B=1,
/// R carried from the preceding spoken word), and corrupts each content
/// word to a random filler with probability `word_error_rate` (truth keeps
/// B=0: the step was being spoken, the recognizer merely misheard).
/// Timestamps are uniform at 0.5 s per token. Deterministic given the seed.
pub fn synth_generate(recipe: &ParsedRecipe, noise: &SynthNoise, video_id: &str) -> SynthCase {
    let mut rng = ChaCha8Rng::seed_from_u64(noise.seed);
    let fillers = words::fillers();

    // (token text, truth state)
    let mut emitted: Vec<(String, (usize, u8))> = Vec::new();
    for step in &recipe.steps {
        for word in &step.words {
            let text = if rng.gen_bool(noise.word_error_rate.clamp(0.0, 1.0)) {
                fillers.choose(&mut rng).expect("filler lexicon").clone()
            } else {
                word.clone()
            };
            emitted.push((text, (step.index, 0)));
        }
    }
    for _ in 0..noise.background_pad {
        let slot = rng.gen_range(0..=emitted.len());
        let r = if slot == 0 { 1 } else { emitted[slot - 1].1 .0 };
        let filler = fillers.choose(&mut rng).expect("filler lexicon").clone();
        emitted.insert(slot, (filler, (r, 1)));
    }

    let tokens = emitted
        .iter()
        .enumerate()
        .map(|(i, (text, _))| TimedToken {
            text: text.clone(),
            start: i as f64 * TOKEN_DURATION,
            duration: TOKEN_DURATION,
        })
        .collect();
    SynthCase {
        recipe: recipe.clone(),
        transcript: Transcript {
            video_id: video_id.to_string(),
            tokens,
        },
        truth: AlignmentPath {
            states: emitted.into_iter().map(|(_, s)| s).collect(),
        },
    }
}

/// Alignment quality scores against ground truth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlignMetrics {
    /// Fraction of tokens whose full (R, B) state matches the truth.
    pub token_accuracy: f64,
    /// Mean over truth steps of the hull-interval IoU (missing hull = 0).
    pub mean_step_iou: f64,
    /// Fraction of recipe steps with at least one predicted segment.
    pub coverage: f64,
}

pub fn evaluate_alignment(
    predicted: &AlignmentPath,
    truth: &AlignmentPath,
    recipe: &ParsedRecipe,
    transcript: &Transcript,
) -> Result<AlignMetrics> {
    let predicted_segments = align::extract_segments(predicted, recipe, transcript);
    let truth_segments = align::extract_segments(truth, recipe, transcript);
    evaluate_segments(
        predicted,
        truth,
        &predicted_segments,
        &truth_segments,
        recipe.step_count(),
    )
}

/// Same scores from pre-extracted segments, for callers holding serialized
/// alignments rather than the recipe.
pub fn evaluate_segments(
    predicted: &AlignmentPath,
    truth: &AlignmentPath,
    predicted_segments: &[align::AlignedSegment],
    truth_segments: &[align::AlignedSegment],
    step_count: usize,
) -> Result<AlignMetrics> {
    if predicted.states.len() != truth.states.len() {
        return Err(Error::invalid(format!(
            "path length mismatch: predicted {} states, truth {}",
            predicted.states.len(),
            truth.states.len()
        )));
    }
    let t = truth.states.len();
    let correct = predicted
        .states
        .iter()
        .zip(&truth.states)
        .filter(|(p, t)| p == t)
        .count();
    let token_accuracy = if t == 0 { 1.0 } else { correct as f64 / t as f64 };

    let predicted_hulls = align::step_hull_intervals(predicted_segments);
    let truth_hulls = align::step_hull_intervals(truth_segments);
    let empty = Interval::new(0.0, 0.0);
    let mean_step_iou = if truth_hulls.is_empty() {
        1.0
    } else {
        truth_hulls
            .iter()
            .map(|(step, hull)| predicted_hulls.get(step).unwrap_or(&empty).iou(hull))
            .sum::<f64>()
            / truth_hulls.len() as f64
    };

    Ok(AlignMetrics {
        token_accuracy,
        mean_step_iou,
        coverage: align::coverage(predicted_segments, step_count),
    })
}
