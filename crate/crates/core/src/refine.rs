//! Refines candidate clip intervals against detector score tracks: matches
//! objects to detector classes, scores segments by mean frame score, and
//! translates windows (up to 3 s either way) to maximize the object score.

use std::collections::BTreeSet;

use crate::clips::ClipLabel;
use crate::corpus_io::DetectorTrack;
use crate::interval::Interval;
use crate::words::{self, lemmatize, tokenize};
use crate::{Error, Result};

pub const DEFAULT_MAX_SHIFT: f64 = 3.0;

/// Detector classes matched to one object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetectorMatch {
    pub object: String,
    pub class_indices: BTreeSet<usize>,
}

fn content_lemmas(text: &str) -> BTreeSet<String> {
    let stop = words::stopwords();
    tokenize(text)
        .into_iter()
        .filter(|t| !stop.contains(t))
        .map(|t| lemmatize(&t))
        .collect()
}

/// A class matches when any lemmatized non-stopword token of the object
/// equals any lemmatized non-stopword token of the class name.
pub fn match_detectors(object: &str, class_names: &[String]) -> DetectorMatch {
    let object_lemmas = content_lemmas(object);
    let class_indices = class_names
        .iter()
        .enumerate()
        .filter(|(_, name)| !content_lemmas(name).is_disjoint(&object_lemmas))
        .map(|(i, _)| i)
        .collect();
    DetectorMatch {
        object: object.to_string(),
        class_indices,
    }
}

/// Max score over the matched classes for one frame; empty match scores 0.
pub fn frame_score(track: &DetectorTrack, frame: usize, matched: &DetectorMatch) -> Result<f64> {
    if frame >= track.num_frames() {
        return Err(Error::invalid(format!(
            "frame {frame} out of range ({} frames)",
            track.num_frames()
        )));
    }
    Ok(matched
        .class_indices
        .iter()
        .map(|&c| track.scores[frame][c])
        .fold(0.0, f64::max))
}

/// Mean frame score over frames overlapping the interval with positive
/// measure; zero overlapping frames scores 0.
pub fn segment_score(track: &DetectorTrack, interval: &Interval, matched: &DetectorMatch) -> f64 {
    let mut total = 0.0;
    let mut count = 0usize;
    for f in 0..track.num_frames() {
        let (fs, fe) = track.frame_interval(f);
        if fs < interval.end && fe > interval.start {
            total += frame_score(track, f, matched).expect("frame in range");
            count += 1;
        }
    }
    if count == 0 {
        0.0
    } else {
        total / count as f64
    }
}

/// Scans all translations of the window at frame granularity within
/// `±max_shift` seconds and returns the best-scoring shifted interval.
/// Shifts that would push the window outside the track are not considered
/// (the unshifted window always is), so the window length is preserved.
/// Ties prefer the smallest |shift|, then the negative one, so a flat
/// track leaves the window in place. Scores within `TIE_EPS` count as
/// tied: off-boundary shifts change how many frames a window overlaps, and
/// the resulting means of identical values can differ in the last ulp.
pub const TIE_EPS: f64 = 1e-9;

pub fn refine_interval(
    track: &DetectorTrack,
    interval: &Interval,
    matched: &DetectorMatch,
    max_shift: f64,
) -> (Interval, f64) {
    let step = 1.0 / track.fps;
    let max_steps = (max_shift * track.fps).floor() as i64;
    let mut best_shift = 0.0f64;
    let mut best_score = segment_score(track, interval, matched);
    for magnitude in 1..=max_steps {
        for sign in [-1i64, 1] {
            let shift = (sign * magnitude) as f64 * step;
            let shifted = Interval::new(interval.start + shift, interval.end + shift);
            if shifted.start < 0.0 || shifted.end > track.duration() {
                continue;
            }
            let score = segment_score(track, &shifted, matched);
            if score > best_score + TIE_EPS {
                best_score = score;
                best_shift = shift;
            }
        }
    }
    let refined = Interval::new(interval.start + best_shift, interval.end + best_shift);
    (refined, best_score)
}

/// Refines one clip: union of detector matches over its objects, best
/// window translation, and the resulting visual score recorded on the clip.
pub fn refine_clip(track: &DetectorTrack, clip: &ClipLabel, max_shift: f64) -> ClipLabel {
    let mut class_indices = BTreeSet::new();
    for object in &clip.objects {
        class_indices.extend(match_detectors(object, &track.class_names).class_indices);
    }
    let matched = DetectorMatch {
        object: clip.objects.join(" "),
        class_indices,
    };
    let (interval, score) = refine_interval(track, &clip.interval, &matched, max_shift);
    let mut refined = clip.clone();
    refined.interval = interval;
    refined.visual_score = Some(score.max(0.0));
    refined
}
