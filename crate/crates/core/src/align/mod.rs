//! Factored input-output HMM that aligns recipe steps to transcript tokens.
//!
//! The hidden state at token t is the pair (R(t), B(t)): R is the recipe
//! step number, monotone non-decreasing with +1 increments, and B flags
//! whether the token came from the background. The model is flattened to a
//! 2K-state chain and decoded with Viterbi.

mod format;

pub use format::{read_alignment, write_alignment, Alignment, StepHull};

use std::collections::{BTreeMap, HashMap};

use crate::corpus_io::{EmbeddingTable, Transcript};
use crate::interval::Interval;
use crate::lexicon::{self, SimilarityConfig};
use crate::parser::ParsedRecipe;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct AlignConfig {
    /// Stay probability of the background chain.
    pub gamma: f64,
    /// Softmax temperature of the foreground emission model.
    pub tau: f64,
    pub similarity: SimilarityConfig,
}

impl Default for AlignConfig {
    fn default() -> Self {
        AlignConfig {
            gamma: 0.7,
            tau: 1.0,
            similarity: SimilarityConfig::default(),
        }
    }
}

/// The flattened alignment HMM for one (recipe, transcript) pair.
#[derive(Debug, Clone)]
pub struct AlignmentHmm {
    pub k: usize,
    pub t: usize,
    /// Step-advance probability, K/T (clamped to 1 when K > T).
    pub alpha: f64,
    pub gamma: f64,
    pub tau: f64,
    /// True when K > T forced alpha to 1.
    pub alpha_clamped: bool,
    /// Distinct case-folded transcript vocabulary.
    vocab: Vec<String>,
    /// Token position -> vocabulary index.
    token_vocab: Vec<usize>,
    /// Background log p(word), add-one smoothed, indexed by vocabulary.
    background_log: Vec<f64>,
    /// Foreground log p(word | step), `[vocab][step]`, softmax-normalized
    /// over the vocabulary.
    foreground_log: Vec<Vec<f64>>,
}

/// MAP state sequence: one (R, B) pair per token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignmentPath {
    pub states: Vec<(usize, u8)>,
}

/// A maximal run of foreground tokens assigned to one recipe step.
#[derive(Debug, Clone, PartialEq)]
pub struct AlignedSegment {
    pub step_index: usize,
    /// Inclusive token index range.
    pub token_span: (usize, usize),
    pub time_interval: Interval,
    pub action: String,
    pub entities: Vec<String>,
}

fn log_sum_exp(values: impl Iterator<Item = f64>) -> f64 {
    let vals: Vec<f64> = values.collect();
    let m = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    m + vals.iter().map(|v| (v - m).exp()).sum::<f64>().ln()
}

/// Builds the model: alpha = K/T, background unigram from the transcript,
/// and a temperature-softmax foreground emission over the observed
/// vocabulary with per-step scores max-similarity(token, step words).
pub fn build_model(
    recipe: &ParsedRecipe,
    transcript: &Transcript,
    embeddings: &EmbeddingTable,
    config: &AlignConfig,
) -> Result<AlignmentHmm> {
    let k = recipe.step_count();
    let t = transcript.tokens.len();
    if k == 0 {
        return Err(Error::invalid("empty recipe"));
    }
    if t == 0 {
        return Err(Error::invalid("empty transcript"));
    }
    if !(0.0..1.0).contains(&config.gamma) || config.gamma <= 0.0 {
        return Err(Error::invalid(format!("gamma {} outside (0,1)", config.gamma)));
    }

    let alpha_raw = k as f64 / t as f64;
    let alpha_clamped = alpha_raw > 1.0;
    let alpha = alpha_raw.min(1.0);

    // distinct case-folded vocabulary and per-token indices
    let mut vocab: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut token_vocab = Vec::with_capacity(t);
    let mut counts: Vec<usize> = Vec::new();
    for token in &transcript.tokens {
        let folded = token.text.to_lowercase();
        let vi = *index.entry(folded.clone()).or_insert_with(|| {
            vocab.push(folded.clone());
            counts.push(0);
            vocab.len() - 1
        });
        counts[vi] += 1;
        token_vocab.push(vi);
    }
    let v = vocab.len();

    // add-one smoothed empirical unigram
    let denom = (t + v) as f64;
    let background_log: Vec<f64> = counts.iter().map(|c| ((*c + 1) as f64 / denom).ln()).collect();

    // foreground: score/tau - logZ_k, normalized over the vocabulary
    let mut scores = vec![vec![0.0f64; k]; v];
    for (vi, word) in vocab.iter().enumerate() {
        for (ki, step) in recipe.steps.iter().enumerate() {
            scores[vi][ki] = lexicon::max_similarity(
                word,
                step.words.iter().map(|w| w.as_str()),
                embeddings,
                &config.similarity,
            );
        }
    }
    let mut foreground_log = vec![vec![0.0f64; k]; v];
    for ki in 0..k {
        let log_z = log_sum_exp((0..v).map(|vi| scores[vi][ki] / config.tau));
        for vi in 0..v {
            foreground_log[vi][ki] = scores[vi][ki] / config.tau - log_z;
        }
    }

    Ok(AlignmentHmm {
        k,
        t,
        alpha,
        gamma: config.gamma,
        tau: config.tau,
        alpha_clamped,
        vocab,
        token_vocab,
        background_log,
        foreground_log,
    })
}

impl AlignmentHmm {
    pub fn vocabulary(&self) -> &[String] {
        &self.vocab
    }

    /// Foreground log-emission for vocabulary entry `vi` under step `k` (1-based).
    pub fn foreground_logprob(&self, vi: usize, k: usize) -> f64 {
        self.foreground_log[vi][k - 1]
    }

    /// Background log-probability of vocabulary entry `vi`.
    pub fn background_logprob(&self, vi: usize) -> f64 {
        self.background_log[vi]
    }

    /// Log-emission for token position `t` in state (r, b).
    pub fn emission_logprob(&self, t: usize, r: usize, b: u8) -> f64 {
        let vi = self.token_vocab[t];
        if b == 0 {
            self.foreground_log[vi][r - 1]
        } else {
            self.background_log[vi]
        }
    }

    /// Log transition probability for (r,b) -> (r',b'); impossible moves
    /// return -inf.
    pub fn transition_logprob(&self, from: (usize, u8), to: (usize, u8)) -> f64 {
        let (r, b) = from;
        let (r2, b2) = to;
        let pr = if r2 == r + 1 && r2 <= self.k {
            self.alpha
        } else if r2 == r {
            1.0 - self.alpha
        } else {
            0.0
        };
        let pb = if b2 == b { self.gamma } else { 1.0 - self.gamma };
        let p = pr * pb;
        if p <= 0.0 {
            f64::NEG_INFINITY
        } else {
            p.ln()
        }
    }

    /// Initial log score: R(1) = 1 with probability 1, B(1) uniform.
    pub fn initial_logprob(&self, r: usize, _b: u8) -> f64 {
        if r == 1 {
            (0.5f64).ln()
        } else {
            f64::NEG_INFINITY
        }
    }

    fn state(&self, s: usize) -> (usize, u8) {
        (s / 2 + 1, (s % 2) as u8)
    }

    fn num_states(&self) -> usize {
        self.k * 2
    }
}

/// MAP decoding over the flattened state space.
///
/// Ties are broken deterministically: among all optimal paths, returns the
/// one that is lexicographically smallest left-to-right under the state
/// order (lower R first, then B=0 before B=1). This is done by a backward
/// pass computing best suffix scores followed by a greedy forward
/// reconstruction that always picks the smallest state achieving the
/// optimal continuation. Scores within `TIE_EPS` count as tied so that
/// summation-order float noise cannot flip the tie-break.
pub const TIE_EPS: f64 = 1e-9;

pub fn viterbi_align(model: &AlignmentHmm) -> AlignmentPath {
    let t = model.t;
    let n = model.num_states();

    // suffix[ti][s]: best score of transitions+emissions for tokens ti+1..T
    // given state s at token ti
    let mut suffix = vec![vec![0.0f64; n]; t];
    for ti in (0..t - 1).rev() {
        for s in 0..n {
            let from = model.state(s);
            let mut best = f64::NEG_INFINITY;
            // reachable: same r or r+1, either b
            for s2 in [s, s + 2] {
                if s2 >= n {
                    continue;
                }
                for b2 in 0..2usize {
                    let s2b = (s2 / 2) * 2 + b2;
                    let to = model.state(s2b);
                    let score = model.transition_logprob(from, to)
                        + model.emission_logprob(ti + 1, to.0, to.1)
                        + suffix[ti + 1][s2b];
                    if score > best {
                        best = score;
                    }
                }
            }
            suffix[ti][s] = best;
        }
    }

    // greedy forward reconstruction in state-preference order
    let mut states = Vec::with_capacity(t);
    let mut current = 0usize;
    let mut best = f64::NEG_INFINITY;
    for s in 0..n {
        let (r, b) = model.state(s);
        let score = model.initial_logprob(r, b) + model.emission_logprob(0, r, b) + suffix[0][s];
        if score > best + TIE_EPS {
            best = score;
            current = s;
        }
    }
    states.push(model.state(current));
    for ti in 1..t {
        let from = model.state(current);
        let mut chosen = current;
        let mut best = f64::NEG_INFINITY;
        for s2 in 0..n {
            let to = model.state(s2);
            let score = model.transition_logprob(from, to)
                + model.emission_logprob(ti, to.0, to.1)
                + suffix[ti][s2];
            if score > best + TIE_EPS {
                best = score;
                chosen = s2;
            }
        }
        current = chosen;
        states.push(model.state(current));
    }
    AlignmentPath { states }
}

/// Maximal runs with constant R and B=0 become segments; background runs
/// produce nothing.
pub fn extract_segments(
    path: &AlignmentPath,
    recipe: &ParsedRecipe,
    transcript: &Transcript,
) -> Vec<AlignedSegment> {
    let mut segments = Vec::new();
    let toks = &transcript.tokens;
    let mut run_start: Option<usize> = None;
    let mut run_step = 0usize;
    let flush = |segments: &mut Vec<AlignedSegment>, first: usize, last: usize, step: usize| {
        let start = toks[first].start;
        let end = segment_end(transcript, last);
        let recipe_step = &recipe.steps[step - 1];
        segments.push(AlignedSegment {
            step_index: step,
            token_span: (first, last),
            time_interval: Interval::new(start, end),
            action: recipe_step.action.clone(),
            entities: recipe_step.entities.clone(),
        });
    };
    for (i, &(r, b)) in path.states.iter().enumerate() {
        match run_start {
            Some(first) if b != 0 || r != run_step => {
                flush(&mut segments, first, i - 1, run_step);
                run_start = None;
            }
            _ => {}
        }
        if b == 0 && run_start.is_none() {
            run_start = Some(i);
            run_step = r;
        }
    }
    if let Some(first) = run_start {
        flush(&mut segments, first, path.states.len() - 1, run_step);
    }
    segments
}

/// End time of the token at `index`: start + duration, falling back to the
/// next token's start (or +0.5 s at transcript end) for zero durations.
fn segment_end(transcript: &Transcript, index: usize) -> f64 {
    let tok = &transcript.tokens[index];
    if tok.duration > 0.0 {
        tok.start + tok.duration
    } else if index + 1 < transcript.tokens.len() {
        transcript.tokens[index + 1].start
    } else {
        tok.start + 0.5
    }
}

/// Per step, the smallest single interval covering all of that step's
/// segments. Steps with no segment are absent.
pub fn step_hull_intervals(segments: &[AlignedSegment]) -> BTreeMap<usize, Interval> {
    let mut hulls: BTreeMap<usize, Interval> = BTreeMap::new();
    for seg in segments {
        hulls
            .entry(seg.step_index)
            .and_modify(|hull| {
                hull.start = hull.start.min(seg.time_interval.start);
                hull.end = hull.end.max(seg.time_interval.end);
            })
            .or_insert(seg.time_interval);
    }
    hulls
}

/// Fraction of recipe steps with at least one foreground segment.
pub fn coverage(segments: &[AlignedSegment], k: usize) -> f64 {
    if k == 0 {
        return 0.0;
    }
    let distinct: std::collections::HashSet<usize> =
        segments.iter().map(|s| s.step_index).collect();
    distinct.len() as f64 / k as f64
}
