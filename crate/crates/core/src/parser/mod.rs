//! Converts classified recipe sentences into a [`ParsedRecipe`]: heuristic
//! POS tagging, micro-step splitting at verb-phrase conjunctions, action and
//! object extraction, ingredient canonicalization, and zero-anaphora
//! resolution.

mod format;

pub use format::{read_recipe, write_recipe};

use std::collections::BTreeSet;
use std::collections::HashSet;

use crate::corpus_io::EmbeddingTable;
use crate::lexicon::{self, SimilarityConfig};
use crate::words::{self, lemmatize, lemmatize_phrase, tokenize};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pos {
    Verb,
    Noun,
    Conjunction,
    Preposition,
    Other,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnnotatedToken {
    pub text: String,
    pub lemma: String,
    pub pos: Pos,
}

/// One recipe micro step: an action lemma plus its entity list.
#[derive(Debug, Clone, PartialEq)]
pub struct RecipeStep {
    /// 1-based, contiguous across the recipe.
    pub index: usize,
    pub action: String,
    pub entities: Vec<String>,
    pub source_text: String,
    /// Lemmatized content words of the step, used by the alignment emission model.
    pub words: BTreeSet<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedRecipe {
    pub ingredients: Vec<String>,
    pub steps: Vec<RecipeStep>,
}

impl ParsedRecipe {
    pub fn step_count(&self) -> usize {
        self.steps.len()
    }
}

/// Options for [`parse_recipe`].
#[derive(Debug, Clone)]
pub struct ParserConfig {
    pub canonicalization_threshold: f64,
    pub similarity: SimilarityConfig,
}

impl Default for ParserConfig {
    fn default() -> Self {
        ParserConfig {
            canonicalization_threshold: 0.75,
            similarity: SimilarityConfig::default(),
        }
    }
}

const CONJUNCTIONS: &[&str] = &["and", "or", "but", "then"];
const PREPOSITIONS: &[&str] = &[
    "in", "on", "of", "to", "with", "until", "for", "from", "at", "into", "onto", "over", "under",
    "about", "after", "before", "during", "through", "without", "by",
];

/// Heuristic POS tagger. A sentence-initial token matching the cooking-verb
/// lexicon is forced to `Verb`, since imperative recipe sentences confuse
/// taggers trained on declarative text.
pub fn tag_tokens(sentence: &str, cooking_verbs: &HashSet<String>) -> Vec<AnnotatedToken> {
    let raw = tokenize(sentence);
    let mut out = Vec::with_capacity(raw.len());
    for (i, text) in raw.iter().enumerate() {
        let lemma = lemmatize(text);
        let pos = if i == 0 && cooking_verbs.contains(&lemma) {
            Pos::Verb
        } else {
            heuristic_pos(text, &lemma, cooking_verbs)
        };
        out.push(AnnotatedToken {
            text: text.clone(),
            lemma,
            pos,
        });
    }
    out
}

fn heuristic_pos(text: &str, lemma: &str, cooking_verbs: &HashSet<String>) -> Pos {
    if CONJUNCTIONS.contains(&text) {
        return Pos::Conjunction;
    }
    if PREPOSITIONS.contains(&text) {
        return Pos::Preposition;
    }
    if cooking_verbs.contains(lemma) {
        return Pos::Verb;
    }
    if words::stopwords().contains(text) || text.chars().all(|c| c.is_ascii_digit()) {
        return Pos::Other;
    }
    if text.len() > 4 && (text.ends_with("ing") || text.ends_with("ed")) {
        return Pos::Verb;
    }
    Pos::Noun
}

/// Splits a tagged sentence into micro steps at conjunction tokens.
///
/// Stand-in for the constituency-parse rule: split at a conjunction only if
/// the next non-Other token is a verb, which is when the conjunct joins two
/// verb phrases rather than two nouns. The conjunction token is dropped.
pub fn split_micro_steps(tokens: &[AnnotatedToken]) -> Vec<Vec<AnnotatedToken>> {
    let mut fragments = Vec::new();
    let mut current: Vec<AnnotatedToken> = Vec::new();
    for (i, tok) in tokens.iter().enumerate() {
        if tok.pos == Pos::Conjunction {
            let next_meaningful = tokens[i + 1..].iter().find(|t| t.pos != Pos::Other);
            if matches!(next_meaningful, Some(t) if t.pos == Pos::Verb) && !current.is_empty() {
                fragments.push(std::mem::take(&mut current));
                continue;
            }
        }
        current.push(tok.clone());
    }
    if !current.is_empty() {
        fragments.push(current);
    }
    fragments
}

/// Lemma of the first verb in the micro step, if any.
pub fn extract_action(step_tokens: &[AnnotatedToken]) -> Option<String> {
    step_tokens
        .iter()
        .find(|t| t.pos == Pos::Verb)
        .map(|t| t.lemma.clone())
}

/// Noun chunks after the action. Maximal runs of nouns form chunks; a chunk
/// linked by "of" to a preceding chunk replaces it ("cup of flour" -> "flour").
pub fn extract_objects(step_tokens: &[AnnotatedToken]) -> Vec<String> {
    let action_pos = step_tokens.iter().position(|t| t.pos == Pos::Verb);
    let Some(start) = action_pos else {
        return Vec::new();
    };
    let rest = &step_tokens[start + 1..];

    // (chunk text, index in `rest` just after the chunk)
    let mut chunks: Vec<(String, usize)> = Vec::new();
    let mut i = 0;
    while i < rest.len() {
        if rest[i].pos == Pos::Noun {
            let begin = i;
            while i < rest.len() && rest[i].pos == Pos::Noun {
                i += 1;
            }
            let text = rest[begin..i]
                .iter()
                .map(|t| t.text.as_str())
                .collect::<Vec<_>>()
                .join(" ");
            chunks.push((text, i));
        } else {
            i += 1;
        }
    }

    // "of"-linking: when chunk A is followed by "of" then chunk B, keep B only.
    let mut keep = vec![true; chunks.len()];
    for w in 1..chunks.len() {
        let prev_end = chunks[w - 1].1;
        let between = &rest[prev_end..];
        let next_is_of = between
            .iter()
            .take_while(|t| t.pos != Pos::Noun)
            .any(|t| t.text == "of" && t.pos == Pos::Preposition);
        if next_is_of {
            keep[w - 1] = false;
        }
    }
    chunks
        .into_iter()
        .zip(keep)
        .filter_map(|((text, _), k)| k.then_some(text))
        .collect()
}

/// Maps each object to the most similar ingredient when similarity clears
/// the threshold, otherwise to its stemmed form. An exact (case-folded)
/// string match always maps to the ingredient.
pub fn canonicalize_entities(
    objects: &[String],
    ingredients: &[String],
    embeddings: &EmbeddingTable,
    threshold: f64,
    similarity: &SimilarityConfig,
) -> Vec<String> {
    objects
        .iter()
        .map(|object| {
            let folded = object.to_lowercase();
            if let Some(exact) = ingredients.iter().find(|i| i.to_lowercase() == folded) {
                return exact.clone();
            }
            let mut best: Option<(&String, f64)> = None;
            for ingredient in ingredients {
                let sim = phrase_similarity(object, ingredient, embeddings, similarity);
                if best.map(|(_, s)| sim > s).unwrap_or(true) {
                    best = Some((ingredient, sim));
                }
            }
            match best {
                Some((ingredient, sim)) if sim >= threshold => ingredient.clone(),
                _ => lemmatize_phrase(object),
            }
        })
        .collect()
}

/// Phrase similarity = max pairwise content-word similarity.
fn phrase_similarity(
    a: &str,
    b: &str,
    embeddings: &EmbeddingTable,
    cfg: &SimilarityConfig,
) -> f64 {
    let stop = words::stopwords();
    let content = |p: &str| -> Vec<String> {
        tokenize(p).into_iter().filter(|t| !stop.contains(t)).collect()
    };
    let mut best = 0.0f64;
    for wa in content(a) {
        for wb in content(b) {
            best = best.max(lexicon::word_similarity(&wa, &wb, embeddings, cfg));
        }
    }
    best
}

/// Recency heuristic for elided objects: a step with no entities inherits a
/// copy of the previous step's (post-propagation) entities. Step 1 never
/// inherits.
pub fn resolve_zero_anaphora(mut steps: Vec<RecipeStep>) -> Vec<RecipeStep> {
    for k in 1..steps.len() {
        if steps[k].entities.is_empty() {
            steps[k].entities = steps[k - 1].entities.clone();
        }
    }
    steps
}

/// Full parsing pipeline: tag, split into micro steps, extract actions and
/// objects, drop verbless steps, canonicalize against the ingredient list,
/// and resolve zero anaphora.
pub fn parse_recipe(
    ingredients: &[String],
    step_sentences: &[String],
    embeddings: &EmbeddingTable,
    config: &ParserConfig,
) -> Result<ParsedRecipe> {
    let verbs = words::cooking_verbs();
    let stop = words::stopwords();
    let mut steps = Vec::new();
    for sentence in step_sentences {
        let tokens = tag_tokens(sentence, verbs);
        for fragment in split_micro_steps(&tokens) {
            let Some(action) = extract_action(&fragment) else {
                continue; // verbless micro step is noise
            };
            let objects = extract_objects(&fragment);
            let entities = canonicalize_entities(
                &objects,
                ingredients,
                embeddings,
                config.canonicalization_threshold,
                &config.similarity,
            );
            let source_text = fragment
                .iter()
                .map(|t| t.text.as_str())
                .collect::<Vec<_>>()
                .join(" ");
            let step_words: BTreeSet<String> = fragment
                .iter()
                .filter(|t| !stop.contains(&t.text))
                .map(|t| t.lemma.clone())
                .collect();
            steps.push(RecipeStep {
                index: steps.len() + 1,
                action,
                entities,
                source_text,
                words: step_words,
            });
        }
    }
    if steps.is_empty() {
        return Err(Error::invalid("no usable steps: every step is verbless"));
    }
    Ok(ParsedRecipe {
        ingredients: ingredients.to_vec(),
        steps: resolve_zero_anaphora(steps),
    })
}
