//! Labeled clip production: keyword spotting over the transcript and the
//! hybrid method that takes actions from keyword hits but objects from the
//! HMM alignment.

use std::collections::HashSet;

use crate::align::{coverage, AlignedSegment};
use crate::corpus_io::Transcript;
use crate::interval::Interval;
use crate::parser::{self, AnnotatedToken, Pos};
use crate::words;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Keyword,
    Hmm,
    Hybrid,
    HybridFallback,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::Keyword => "keyword",
            Provenance::Hmm => "hmm",
            Provenance::Hybrid => "hybrid",
            Provenance::HybridFallback => "hybrid-fallback",
        }
    }

    pub fn parse(s: &str) -> Option<Provenance> {
        Some(match s {
            "keyword" => Provenance::Keyword,
            "hmm" => Provenance::Hmm,
            "hybrid" => Provenance::Hybrid,
            "hybrid-fallback" => Provenance::HybridFallback,
            _ => return None,
        })
    }
}

/// One labeled video clip.
#[derive(Debug, Clone, PartialEq)]
pub struct ClipLabel {
    pub clip_id: String,
    pub video_id: String,
    pub action: String,
    pub objects: Vec<String>,
    pub interval: Interval,
    pub provenance: Provenance,
    /// Mean detector score recorded by visual refinement.
    pub visual_score: Option<f64>,
    pub confidence: Option<f64>,
}

/// A whitelisted verb spotted in the transcript.
#[derive(Debug, Clone, PartialEq)]
pub struct KeywordHit {
    pub action: String,
    pub token_index: usize,
    pub time: f64,
}

/// Seconds of clip taken before/after a spotted keyword.
pub const WINDOW_BEFORE: f64 = 2.0;
pub const WINDOW_AFTER: f64 = 6.0;
/// How many tokens after the action are scanned for object nouns.
const OBJECT_TOKEN_WINDOW: usize = 5;

/// Tags the transcript's token stream with the recipe tagger.
pub fn tag_transcript(transcript: &Transcript) -> Vec<AnnotatedToken> {
    let joined = transcript
        .tokens
        .iter()
        .map(|t| t.text.as_str())
        .collect::<Vec<_>>()
        .join(" ");
    parser::tag_tokens(&joined, words::cooking_verbs())
}

/// One hit per token whose lemma is whitelisted AND which the tagger marked
/// as a verb, in time order.
pub fn spot_keywords(
    transcript: &Transcript,
    tagged: &[AnnotatedToken],
    whitelist: &HashSet<String>,
) -> Vec<KeywordHit> {
    transcript
        .tokens
        .iter()
        .zip(tagged)
        .enumerate()
        .filter(|(_, (_, tag))| tag.pos == Pos::Verb && whitelist.contains(&tag.lemma))
        .map(|(i, (tok, tag))| KeywordHit {
            action: tag.lemma.clone(),
            token_index: i,
            time: tok.start,
        })
        .collect()
}

/// The 8-second window [t-2, t+6], clipped to [0, video_duration].
pub fn keyword_window(hit_time: f64, video_duration: f64) -> Interval {
    Interval::new(
        (hit_time - WINDOW_BEFORE).max(0.0),
        (hit_time + WINDOW_AFTER).min(video_duration),
    )
}

/// Nouns among the 5 tokens following the hit, in transcript order,
/// duplicates kept.
pub fn asr_objects(tagged: &[AnnotatedToken], hit: &KeywordHit) -> Vec<String> {
    tagged
        .iter()
        .skip(hit.token_index + 1)
        .take(OBJECT_TOKEN_WINDOW)
        .filter(|t| t.pos == Pos::Noun)
        .map(|t| t.text.clone())
        .collect()
}

/// Keyword-spotting corpus: one fixed-window clip per hit, objects from the
/// ASR token window.
pub fn label_keyword(
    transcript: &Transcript,
    whitelist: &HashSet<String>,
    video_duration: f64,
) -> Vec<ClipLabel> {
    label_by_keywords(transcript, whitelist, video_duration, Provenance::Keyword)
}

fn label_by_keywords(
    transcript: &Transcript,
    whitelist: &HashSet<String>,
    video_duration: f64,
    provenance: Provenance,
) -> Vec<ClipLabel> {
    let tagged = tag_transcript(transcript);
    spot_keywords(transcript, &tagged, whitelist)
        .iter()
        .enumerate()
        .map(|(i, hit)| ClipLabel {
            clip_id: format!("{}-kw-{:04}", transcript.video_id, i),
            video_id: transcript.video_id.clone(),
            action: hit.action.clone(),
            objects: asr_objects(&tagged, hit),
            interval: keyword_window(hit.time, video_duration),
            provenance,
            visual_score: None,
            confidence: None,
        })
        .collect()
}

/// Hybrid corpus: keyword hits supply the actions and windows, the HMM
/// alignment supplies the objects. When fewer than half the recipe steps
/// were aligned, backs off to plain keyword spotting (provenance
/// `HybridFallback`).
pub fn label_hybrid(
    transcript: &Transcript,
    whitelist: &HashSet<String>,
    video_duration: f64,
    segments: &[AlignedSegment],
    step_count: usize,
) -> Vec<ClipLabel> {
    if coverage(segments, step_count) < 0.5 {
        return label_by_keywords(transcript, whitelist, video_duration, Provenance::HybridFallback);
    }
    let tagged = tag_transcript(transcript);
    spot_keywords(transcript, &tagged, whitelist)
        .iter()
        .enumerate()
        .map(|(i, hit)| {
            let objects = segment_for_time(segments, hit.time)
                .map(|seg| seg.entities.clone())
                .unwrap_or_default();
            ClipLabel {
                clip_id: format!("{}-hy-{:04}", transcript.video_id, i),
                video_id: transcript.video_id.clone(),
                action: hit.action.clone(),
                objects,
                interval: keyword_window(hit.time, video_duration),
                provenance: Provenance::Hybrid,
                visual_score: None,
                confidence: None,
            }
        })
        .collect()
}

/// The segment containing `time`, else the nearest preceding segment, else
/// the nearest following one.
fn segment_for_time(segments: &[AlignedSegment], time: f64) -> Option<&AlignedSegment> {
    if let Some(seg) = segments.iter().find(|s| s.time_interval.contains(time)) {
        return Some(seg);
    }
    let preceding = segments
        .iter()
        .filter(|s| s.time_interval.end <= time)
        .max_by(|a, b| a.time_interval.end.partial_cmp(&b.time_interval.end).unwrap());
    if preceding.is_some() {
        return preceding;
    }
    segments
        .iter()
        .filter(|s| s.time_interval.start >= time)
        .min_by(|a, b| a.time_interval.start.partial_cmp(&b.time_interval.start).unwrap())
}

/// Pure-HMM corpus: each foreground segment becomes a clip labeled from its
/// recipe step.
pub fn label_hmm(segments: &[AlignedSegment], video_id: &str) -> Vec<ClipLabel> {
    segments
        .iter()
        .enumerate()
        .map(|(i, seg)| ClipLabel {
            clip_id: format!("{video_id}-hmm-{:04}", i),
            video_id: video_id.to_string(),
            action: seg.action.clone(),
            objects: seg.entities.clone(),
            interval: seg.time_interval,
            provenance: Provenance::Hmm,
            visual_score: None,
            confidence: None,
        })
        .collect()
}
