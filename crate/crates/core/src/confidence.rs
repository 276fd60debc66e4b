//! Affordance model over (action, object) pairs: TF-IDF co-occurrence
//! matrix, truncated-SVD low-rank approximation, row-softmax probabilities,
//! and the linear confidence combination used to rank clips.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use nalgebra::DMatrix;

use crate::clips::ClipLabel;
use crate::{Error, Result};

/// Raw action/object co-occurrence counts (actions as documents).
#[derive(Debug, Clone, PartialEq)]
pub struct CooccurrenceCounts {
    pub actions: Vec<String>,
    pub objects: Vec<String>,
    /// `counts[action][object]`
    pub counts: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AffordanceModel {
    pub actions: Vec<String>,
    pub objects: Vec<String>,
    pub rank: usize,
    /// SVD-truncated TF-IDF matrix, `[action][object]`.
    pub lowrank: DMatrix<f64>,
    /// P(object | action), rows summing to 1.
    pub probs: DMatrix<f64>,
}

/// Counts (action, object) co-occurrences over a clip corpus. A clip with
/// several objects increments one cell per object.
pub fn build_counts(clips: &[ClipLabel]) -> Result<CooccurrenceCounts> {
    let mut actions: Vec<String> = Vec::new();
    let mut objects: Vec<String> = Vec::new();
    let mut pair_counts: BTreeMap<(String, String), u64> = BTreeMap::new();
    for clip in clips {
        if clip.action.is_empty() || clip.objects.is_empty() {
            continue;
        }
        if !actions.contains(&clip.action) {
            actions.push(clip.action.clone());
        }
        for object in &clip.objects {
            if !objects.contains(object) {
                objects.push(object.clone());
            }
            *pair_counts
                .entry((clip.action.clone(), object.clone()))
                .or_default() += 1;
        }
    }
    if actions.is_empty() {
        return Err(Error::invalid("no clips with both an action and an object"));
    }
    let counts = actions
        .iter()
        .map(|a| {
            objects
                .iter()
                .map(|o| {
                    pair_counts
                        .get(&(a.clone(), o.clone()))
                        .copied()
                        .unwrap_or(0)
                })
                .collect()
        })
        .collect();
    Ok(CooccurrenceCounts {
        actions,
        objects,
        counts,
    })
}

/// TF-IDF: tf normalized per action row, idf with +1 smoothing and a floor
/// of 1: `idf(o) = ln((1+A)/(1+df(o))) + 1`.
pub fn idf_matrix(counts: &CooccurrenceCounts) -> DMatrix<f64> {
    let a = counts.actions.len();
    let o = counts.objects.len();
    let df: Vec<usize> = (0..o)
        .map(|oi| (0..a).filter(|&ai| counts.counts[ai][oi] > 0).count())
        .collect();
    let idf: Vec<f64> = df
        .iter()
        .map(|&d| ((1 + a) as f64 / (1 + d) as f64).ln() + 1.0)
        .collect();
    DMatrix::from_fn(a, o, |ai, oi| {
        let row_total: u64 = counts.counts[ai].iter().sum();
        if row_total == 0 {
            0.0
        } else {
            counts.counts[ai][oi] as f64 / row_total as f64 * idf[oi]
        }
    })
}

/// Best rank-r approximation in Frobenius norm via truncated SVD.
pub fn lowrank(matrix: &DMatrix<f64>, rank: usize) -> Result<DMatrix<f64>> {
    let max_rank = matrix.nrows().min(matrix.ncols());
    if rank < 1 || rank > max_rank {
        return Err(Error::invalid(format!(
            "rank {rank} out of range [1, {max_rank}]"
        )));
    }
    let svd = matrix.clone().svd(true, true);
    let u = svd.u.as_ref().expect("u requested");
    let vt = svd.v_t.as_ref().expect("v_t requested");
    let mut truncated = DMatrix::zeros(matrix.nrows(), matrix.ncols());
    // singular values from nalgebra are sorted descending
    for i in 0..rank {
        let sigma = svd.singular_values[i];
        let ui = u.column(i);
        let vi = vt.row(i);
        for r in 0..matrix.nrows() {
            for c in 0..matrix.ncols() {
                truncated[(r, c)] += sigma * ui[r] * vi[c];
            }
        }
    }
    Ok(truncated)
}

/// Row-wise softmax: P(object | action) proportional to exponentiated
/// entries of the low-rank matrix.
pub fn affordance_probs(lowrank: &DMatrix<f64>) -> DMatrix<f64> {
    let mut probs = lowrank.clone();
    for mut row in probs.row_iter_mut() {
        let m = row.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let mut total = 0.0;
        for v in row.iter_mut() {
            *v = (*v - m).exp();
            total += *v;
        }
        for v in row.iter_mut() {
            *v /= total;
        }
    }
    probs
}

impl AffordanceModel {
    /// Default rank: min(50, min(A, O)).
    pub fn default_rank(counts: &CooccurrenceCounts) -> usize {
        50.min(counts.actions.len().min(counts.objects.len()))
    }

    pub fn build(counts: &CooccurrenceCounts, rank: usize) -> Result<AffordanceModel> {
        let idf = idf_matrix(counts);
        let truncated = lowrank(&idf, rank)?;
        let probs = affordance_probs(&truncated);
        Ok(AffordanceModel {
            actions: counts.actions.clone(),
            objects: counts.objects.clone(),
            rank,
            lowrank: truncated,
            probs,
        })
    }

    /// P(object | action); unknown labels give None.
    pub fn probability(&self, action: &str, object: &str) -> Option<f64> {
        let ai = self.actions.iter().position(|a| a == action)?;
        let oi = self.objects.iter().position(|o| o == object)?;
        Some(self.probs[(ai, oi)])
    }

    /// Matrix CSV of P(object | action) for external plotting.
    pub fn heatmap_csv(&self) -> String {
        let mut out = String::new();
        writeln!(out, "action,{}", self.objects.join(",")).unwrap();
        for (ai, action) in self.actions.iter().enumerate() {
            let row: Vec<String> = (0..self.objects.len())
                .map(|oi| self.probs[(ai, oi)].to_string())
                .collect();
            writeln!(out, "{action},{}", row.join(",")).unwrap();
        }
        out
    }
}

/// Linear confidence combination; weights must be non-negative and sum to 1.
pub fn clip_confidence(visual_score: f64, affordance: f64, weights: (f64, f64)) -> f64 {
    weights.0 * visual_score + weights.1 * affordance
}

/// Clips with confidence >= threshold, sorted by confidence descending
/// (ties by clip id), plus the retained fraction.
pub fn filter_by_confidence(clips: &[ClipLabel], threshold: f64) -> (Vec<ClipLabel>, f64) {
    let mut retained: Vec<ClipLabel> = clips
        .iter()
        .filter(|c| c.confidence.unwrap_or(0.0) >= threshold)
        .cloned()
        .collect();
    retained.sort_by(|a, b| {
        b.confidence
            .unwrap_or(0.0)
            .partial_cmp(&a.confidence.unwrap_or(0.0))
            .unwrap()
            .then_with(|| a.clip_id.cmp(&b.clip_id))
    });
    let fraction = if clips.is_empty() {
        0.0
    } else {
        retained.len() as f64 / clips.len() as f64
    };
    (retained, fraction)
}

const HEADER: &str = "affordance v1";

pub fn write_affordance(model: &AffordanceModel, path: &Path) -> Result<()> {
    let mut out = String::new();
    writeln!(out, "{HEADER}").unwrap();
    writeln!(out, "rank\t{}", model.rank).unwrap();
    writeln!(out, "actions\t{}", model.actions.join(",")).unwrap();
    writeln!(out, "objects\t{}", model.objects.join(",")).unwrap();
    for kind in ["lowrank", "probs"] {
        let matrix = if kind == "lowrank" {
            &model.lowrank
        } else {
            &model.probs
        };
        for ai in 0..model.actions.len() {
            let row: Vec<String> = (0..model.objects.len())
                .map(|oi| matrix[(ai, oi)].to_string())
                .collect();
            writeln!(out, "{kind}\t{}", row.join(" ")).unwrap();
        }
    }
    std::fs::write(path, out)?;
    Ok(())
}

pub fn read_affordance(path: &Path) -> Result<AffordanceModel> {
    let content = std::fs::read_to_string(path)?;
    parse_affordance(&content, &path.display().to_string())
}

pub(crate) fn parse_affordance(content: &str, name: &str) -> Result<AffordanceModel> {
    let mut lines = content.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h == HEADER => {}
        other => {
            return Err(Error::Version {
                path: name.to_string(),
                expected: HEADER.to_string(),
                found: other.map(|(_, h)| h.to_string()).unwrap_or_default(),
            })
        }
    }
    let mut rank = None;
    let mut actions: Vec<String> = Vec::new();
    let mut objects: Vec<String> = Vec::new();
    let mut lowrank_rows: Vec<Vec<f64>> = Vec::new();
    let mut probs_rows: Vec<Vec<f64>> = Vec::new();
    for (i, line) in lines {
        let lineno = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let (tag, rest) = line
            .split_once('\t')
            .ok_or_else(|| Error::format(name, lineno, "missing tab separator"))?;
        match tag {
            "rank" => {
                rank = Some(rest.parse().map_err(|_| {
                    Error::format(name, lineno, format!("bad rank `{rest}`"))
                })?)
            }
            "actions" => actions = rest.split(',').map(|s| s.to_string()).collect(),
            "objects" => objects = rest.split(',').map(|s| s.to_string()).collect(),
            "lowrank" | "probs" => {
                let row: Vec<f64> = rest
                    .split_whitespace()
                    .map(|v| {
                        v.parse::<f64>().map_err(|_| {
                            Error::format(name, lineno, format!("bad number `{v}`"))
                        })
                    })
                    .collect::<Result<_>>()?;
                if row.len() != objects.len() {
                    return Err(Error::format(name, lineno, "row length mismatch"));
                }
                if tag == "lowrank" {
                    lowrank_rows.push(row);
                } else {
                    probs_rows.push(row);
                }
            }
            other => {
                return Err(Error::format(name, lineno, format!("unknown record `{other}`")));
            }
        }
    }
    let rank = rank.ok_or_else(|| Error::invalid(format!("{name}: missing rank")))?;
    if lowrank_rows.len() != actions.len() || probs_rows.len() != actions.len() {
        return Err(Error::invalid(format!("{name}: matrix row count mismatch")));
    }
    let a = actions.len();
    let o = objects.len();
    Ok(AffordanceModel {
        actions,
        objects,
        rank,
        lowrank: DMatrix::from_fn(a, o, |r, c| lowrank_rows[r][c]),
        probs: DMatrix::from_fn(a, o, |r, c| probs_rows[r][c]),
    })
}
