//! Versioned structured-text serialization of an alignment result:
//! per-token (time, token, R, B) plus per-step hull intervals.

use std::fmt::Write as _;
use std::path::Path;

use super::{step_hull_intervals, AlignedSegment, AlignmentPath};
use crate::corpus_io::{TimedToken, Transcript};
use crate::interval::Interval;
use crate::parser::ParsedRecipe;
use crate::{Error, Result};

const HEADER: &str = "alignment v1";

#[derive(Debug, Clone, PartialEq)]
pub struct StepHull {
    pub step_index: usize,
    pub interval: Interval,
    pub action: String,
    pub entities: Vec<String>,
}

/// Self-contained alignment output for one video.
#[derive(Debug, Clone, PartialEq)]
pub struct Alignment {
    pub video_id: String,
    pub step_count: usize,
    /// Token plus its decoded (R, B) state.
    pub tokens: Vec<(TimedToken, usize, u8)>,
    pub hulls: Vec<StepHull>,
}

impl Alignment {
    pub fn from_parts(
        recipe: &ParsedRecipe,
        transcript: &Transcript,
        path: &AlignmentPath,
        segments: &[AlignedSegment],
    ) -> Self {
        let hulls = step_hull_intervals(segments)
            .into_iter()
            .map(|(step_index, interval)| {
                let step = &recipe.steps[step_index - 1];
                StepHull {
                    step_index,
                    interval,
                    action: step.action.clone(),
                    entities: step.entities.clone(),
                }
            })
            .collect();
        Alignment {
            video_id: transcript.video_id.clone(),
            step_count: recipe.step_count(),
            tokens: transcript
                .tokens
                .iter()
                .zip(&path.states)
                .map(|(tok, &(r, b))| (tok.clone(), r, b))
                .collect(),
            hulls,
        }
    }

    pub fn path(&self) -> AlignmentPath {
        AlignmentPath {
            states: self.tokens.iter().map(|&(_, r, b)| (r, b)).collect(),
        }
    }

    pub fn transcript(&self) -> Transcript {
        Transcript {
            video_id: self.video_id.clone(),
            tokens: self.tokens.iter().map(|(t, _, _)| t.clone()).collect(),
        }
    }

    /// Rebuilds the foreground segments from the stored token states.
    pub fn segments(&self) -> Vec<AlignedSegment> {
        let transcript = self.transcript();
        let mut segments = Vec::new();
        let mut run: Option<(usize, usize)> = None; // (first index, step)
        let states: Vec<(usize, u8)> = self.tokens.iter().map(|&(_, r, b)| (r, b)).collect();
        for (i, &(r, b)) in states.iter().enumerate() {
            if let Some((first, step)) = run {
                if b != 0 || r != step {
                    segments.push(self.make_segment(first, i - 1, step, &transcript));
                    run = None;
                }
            }
            if b == 0 && run.is_none() {
                run = Some((i, r));
            }
        }
        if let Some((first, step)) = run {
            segments.push(self.make_segment(first, states.len() - 1, step, &transcript));
        }
        segments
    }

    fn make_segment(
        &self,
        first: usize,
        last: usize,
        step: usize,
        transcript: &Transcript,
    ) -> AlignedSegment {
        let (action, entities) = self
            .hulls
            .iter()
            .find(|h| h.step_index == step)
            .map(|h| (h.action.clone(), h.entities.clone()))
            .unwrap_or_default();
        AlignedSegment {
            step_index: step,
            token_span: (first, last),
            time_interval: Interval::new(
                transcript.tokens[first].start,
                super::segment_end(transcript, last),
            ),
            action,
            entities,
        }
    }
}

pub fn write_alignment(alignment: &Alignment, path: &Path) -> Result<()> {
    let mut out = String::new();
    writeln!(out, "{HEADER}").unwrap();
    writeln!(out, "video\t{}", alignment.video_id).unwrap();
    writeln!(out, "steps\t{}", alignment.step_count).unwrap();
    for (tok, r, b) in &alignment.tokens {
        writeln!(out, "token\t{}\t{}\t{}\t{}\t{}", tok.start, tok.duration, tok.text, r, b).unwrap();
    }
    for hull in &alignment.hulls {
        writeln!(
            out,
            "hull\t{}\t{}\t{}\t{}\t{}",
            hull.step_index,
            hull.interval.start,
            hull.interval.end,
            hull.action,
            hull.entities.join(","),
        )
        .unwrap();
    }
    std::fs::write(path, out)?;
    Ok(())
}

pub fn read_alignment(path: &Path) -> Result<Alignment> {
    let content = std::fs::read_to_string(path)?;
    parse_alignment(&content, &path.display().to_string())
}

pub(crate) fn parse_alignment(content: &str, name: &str) -> Result<Alignment> {
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
    let mut video_id = None;
    let mut step_count = None;
    let mut tokens = Vec::new();
    let mut hulls = Vec::new();
    for (i, line) in lines {
        let lineno = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        match fields[0] {
            "video" if fields.len() == 2 => video_id = Some(fields[1].to_string()),
            "steps" if fields.len() == 2 => {
                step_count = Some(fields[1].parse().map_err(|_| {
                    Error::format(name, lineno, format!("bad step count `{}`", fields[1]))
                })?);
            }
            "token" if fields.len() == 6 => {
                let parse_f = |v: &str| {
                    v.parse::<f64>()
                        .map_err(|_| Error::format(name, lineno, format!("bad number `{v}`")))
                };
                let parse_u = |v: &str| {
                    v.parse::<usize>()
                        .map_err(|_| Error::format(name, lineno, format!("bad integer `{v}`")))
                };
                tokens.push((
                    TimedToken {
                        start: parse_f(fields[1])?,
                        duration: parse_f(fields[2])?,
                        text: fields[3].to_string(),
                    },
                    parse_u(fields[4])?,
                    parse_u(fields[5])? as u8,
                ));
            }
            "hull" if fields.len() == 6 => {
                let parse_f = |v: &str| {
                    v.parse::<f64>()
                        .map_err(|_| Error::format(name, lineno, format!("bad number `{v}`")))
                };
                let entities = if fields[5].is_empty() {
                    Vec::new()
                } else {
                    fields[5].split(',').map(|s| s.to_string()).collect()
                };
                hulls.push(StepHull {
                    step_index: fields[1].parse().map_err(|_| {
                        Error::format(name, lineno, format!("bad step index `{}`", fields[1]))
                    })?,
                    interval: Interval::new(parse_f(fields[2])?, parse_f(fields[3])?),
                    action: fields[4].to_string(),
                    entities,
                });
            }
            other => {
                return Err(Error::format(name, lineno, format!("unknown record `{other}`")));
            }
        }
    }
    Ok(Alignment {
        video_id: video_id.ok_or_else(|| Error::invalid(format!("{name}: missing video record")))?,
        step_count: step_count
            .ok_or_else(|| Error::invalid(format!("{name}: missing steps record")))?,
        tokens,
        hulls,
    })
}
