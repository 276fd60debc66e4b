use std::path::Path;

use crate::{Error, Result};

/// Per-frame score vectors over named visual classes at a fixed frame rate.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectorTrack {
    pub video_id: String,
    pub fps: f64,
    pub class_names: Vec<String>,
    /// `scores[frame][class]`, each in [0,1].
    pub scores: Vec<Vec<f64>>,
}

impl DetectorTrack {
    pub fn num_frames(&self) -> usize {
        self.scores.len()
    }

    /// Duration covered by the track in seconds.
    pub fn duration(&self) -> f64 {
        self.scores.len() as f64 / self.fps
    }

    /// Time interval covered by frame `f`: `[f/fps, (f+1)/fps)`.
    pub fn frame_interval(&self, frame: usize) -> (f64, f64) {
        (frame as f64 / self.fps, (frame + 1) as f64 / self.fps)
    }
}

/// Reads the `fps=<f> classes=<c1,c2,...>` header + one score row per frame.
pub fn load_detector_track(path: &Path) -> Result<DetectorTrack> {
    let content = std::fs::read_to_string(path)?;
    let name = path.display().to_string();
    let video_id = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    parse_detector_track(&content, &name, video_id)
}

pub(crate) fn parse_detector_track(
    content: &str,
    name: &str,
    video_id: String,
) -> Result<DetectorTrack> {
    let mut lines = content.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::format(name, 1, "missing header line"))?;

    let mut fps = None;
    let mut class_names = None;
    for field in header.split_whitespace() {
        if let Some(v) = field.strip_prefix("fps=") {
            let f: f64 = v
                .parse()
                .map_err(|_| Error::format(name, 1, format!("bad fps `{v}`")))?;
            if f <= 0.0 {
                return Err(Error::format(name, 1, "fps must be > 0"));
            }
            fps = Some(f);
        } else if let Some(v) = field.strip_prefix("classes=") {
            let names: Vec<String> = v.split(',').map(|s| s.to_string()).collect();
            if names.iter().any(|n| n.is_empty()) {
                return Err(Error::format(name, 1, "empty class name"));
            }
            class_names = Some(names);
        }
    }
    let fps = fps.ok_or_else(|| Error::format(name, 1, "header missing fps="))?;
    let class_names = class_names.ok_or_else(|| Error::format(name, 1, "header missing classes="))?;

    let mut scores = Vec::new();
    for (i, line) in lines {
        let lineno = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let row: Vec<f64> = line
            .split_whitespace()
            .map(|v| {
                v.parse::<f64>()
                    .map_err(|_| Error::format(name, lineno, format!("bad score `{v}`")))
            })
            .collect::<Result<_>>()?;
        if row.len() != class_names.len() {
            return Err(Error::format(
                name,
                lineno,
                format!(
                    "row has {} entries, header declares {} classes",
                    row.len(),
                    class_names.len()
                ),
            ));
        }
        if let Some(bad) = row.iter().find(|s| !(0.0..=1.0).contains(*s)) {
            return Err(Error::format(
                name,
                lineno,
                format!("score {bad} outside [0,1]"),
            ));
        }
        scores.push(row);
    }
    Ok(DetectorTrack {
        video_id,
        fps,
        class_names,
        scores,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ten_frame_track() -> String {
        let mut s = String::from("fps=5 classes=egg,flour,bacon\n");
        for _ in 0..10 {
            s.push_str("0.1 0.2 0.3\n");
        }
        s
    }

    #[test]
    fn ten_frames_at_fps_5_span_two_seconds() {
        let t = parse_detector_track(&ten_frame_track(), "d", "v".into()).unwrap();
        assert_eq!(t.num_frames(), 10);
        assert!((t.duration() - 2.0).abs() < 1e-12);
        assert_eq!(t.frame_interval(3), (0.6, 0.8));
    }

    #[test]
    fn header_only_track_is_valid_and_empty() {
        let t = parse_detector_track("fps=5 classes=egg\n", "d", "v".into()).unwrap();
        assert_eq!(t.num_frames(), 0);
    }

    #[test]
    fn short_row_is_an_error() {
        let err =
            parse_detector_track("fps=5 classes=a,b,c\n0.1 0.2\n", "d", "v".into()).unwrap_err();
        assert!(err.to_string().contains("2 entries"), "{err}");
    }

    #[test]
    fn out_of_range_score_is_an_error() {
        let err =
            parse_detector_track("fps=5 classes=a\n1.5\n", "d", "v".into()).unwrap_err();
        assert!(err.to_string().contains("outside [0,1]"));
    }
}
