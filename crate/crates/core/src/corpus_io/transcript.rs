use std::fmt::Write as _;
use std::path::Path;

use crate::{Error, Result};

/// One ASR token with its timestamp.
#[derive(Debug, Clone, PartialEq)]
pub struct TimedToken {
    pub text: String,
    pub start: f64,
    pub duration: f64,
}

/// Ordered sequence of timestamped ASR tokens for one video.
#[derive(Debug, Clone, PartialEq)]
pub struct Transcript {
    pub video_id: String,
    pub tokens: Vec<TimedToken>,
}

impl Transcript {
    /// End time of the last token, i.e. the spoken duration of the video.
    pub fn end_time(&self) -> f64 {
        self.tokens
            .last()
            .map(|t| t.start + t.duration)
            .unwrap_or(0.0)
    }

    pub fn token_texts(&self) -> Vec<&str> {
        self.tokens.iter().map(|t| t.text.as_str()).collect()
    }
}

/// Reads the line-delimited `start<TAB>duration<TAB>token` transcript format.
pub fn load_transcript(path: &Path) -> Result<Transcript> {
    let content = std::fs::read_to_string(path)?;
    let name = path.display().to_string();
    let video_id = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let transcript = parse_transcript(&content, &name, video_id)?;
    Ok(transcript)
}

pub(crate) fn parse_transcript(content: &str, name: &str, video_id: String) -> Result<Transcript> {
    let mut tokens = Vec::new();
    let mut prev_start = f64::NEG_INFINITY;
    for (i, line) in content.lines().enumerate() {
        let lineno = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 3 {
            return Err(Error::format(
                name,
                lineno,
                format!("expected 3 tab-separated fields, found {}", fields.len()),
            ));
        }
        let start: f64 = fields[0]
            .parse()
            .map_err(|_| Error::format(name, lineno, format!("bad start time `{}`", fields[0])))?;
        let duration: f64 = fields[1].parse().map_err(|_| {
            Error::format(name, lineno, format!("bad duration `{}`", fields[1]))
        })?;
        if start < 0.0 {
            return Err(Error::format(name, lineno, "negative start time"));
        }
        if duration < 0.0 {
            return Err(Error::format(name, lineno, "negative duration"));
        }
        let text = fields[2].trim();
        if text.is_empty() {
            return Err(Error::format(name, lineno, "empty token text"));
        }
        if start < prev_start {
            return Err(Error::format(
                name,
                lineno,
                format!("decreasing start time at token {}", tokens.len()),
            ));
        }
        prev_start = start;
        tokens.push(TimedToken {
            text: text.to_string(),
            start,
            duration,
        });
    }
    if tokens.is_empty() {
        return Err(Error::invalid(format!("{name}: empty transcript")));
    }
    Ok(Transcript { video_id, tokens })
}

pub fn write_transcript(transcript: &Transcript, path: &Path) -> Result<()> {
    let mut out = String::new();
    for t in &transcript.tokens {
        writeln!(out, "{}\t{}\t{}", t.start, t.duration, t.text).unwrap();
    }
    std::fs::write(path, out)?;
    Ok(())
}
