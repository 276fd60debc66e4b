use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::clips::{ClipLabel, Provenance};
use crate::interval::Interval;
use crate::{Error, Result};

const HEADER: &str = "clipcorpus v1";

/// Labeled clip corpus with an (action, object) -> clip-id index.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ClipCorpus {
    pub clips: Vec<ClipLabel>,
    index: BTreeMap<(String, String), Vec<String>>,
}

impl ClipCorpus {
    pub fn new(clips: Vec<ClipLabel>) -> Result<Self> {
        let mut ids = std::collections::HashSet::new();
        for clip in &clips {
            if !ids.insert(&clip.clip_id) {
                return Err(Error::invalid(format!("duplicate clip id `{}`", clip.clip_id)));
            }
            if clip.interval.end <= clip.interval.start {
                return Err(Error::invalid(format!(
                    "clip `{}` has empty interval",
                    clip.clip_id
                )));
            }
        }
        let mut index: BTreeMap<(String, String), Vec<String>> = BTreeMap::new();
        for clip in &clips {
            for object in &clip.objects {
                index
                    .entry((clip.action.clone(), object.clone()))
                    .or_default()
                    .push(clip.clip_id.clone());
            }
        }
        Ok(ClipCorpus { clips, index })
    }

    pub fn lookup(&self, action: &str, object: &str) -> &[String] {
        self.index
            .get(&(action.to_string(), object.to_string()))
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    pub fn len(&self) -> usize {
        self.clips.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clips.is_empty()
    }
}

fn encode_objects(objects: &[String]) -> Result<String> {
    for o in objects {
        if o.contains(['\t', '\n', ',']) {
            return Err(Error::invalid(format!("object `{o}` contains a reserved character")));
        }
    }
    Ok(objects.join(","))
}

pub fn write_clip_corpus(corpus: &ClipCorpus, path: &Path) -> Result<()> {
    let mut out = String::new();
    writeln!(out, "{HEADER}").unwrap();
    writeln!(out, "clips\t{}", corpus.clips.len()).unwrap();
    for clip in &corpus.clips {
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_else(|| "-".into());
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            clip.clip_id,
            clip.video_id,
            clip.action,
            encode_objects(&clip.objects)?,
            clip.interval.start,
            clip.interval.end,
            clip.provenance.as_str(),
            opt(clip.visual_score),
            opt(clip.confidence),
        )
        .unwrap();
    }
    std::fs::write(path, out)?;
    Ok(())
}

pub fn read_clip_corpus(path: &Path) -> Result<ClipCorpus> {
    let content = std::fs::read_to_string(path)?;
    parse_clip_corpus(&content, &path.display().to_string())
}

pub(crate) fn parse_clip_corpus(content: &str, name: &str) -> Result<ClipCorpus> {
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
    let (_, count_line) = lines
        .next()
        .ok_or_else(|| Error::format(name, 2, "missing clip count"))?;
    let declared: usize = count_line
        .strip_prefix("clips\t")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| Error::format(name, 2, "bad clip count line"))?;

    let mut clips = Vec::new();
    for (i, line) in lines {
        let lineno = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 9 {
            return Err(Error::format(
                name,
                lineno,
                format!("expected 9 fields, found {}", fields.len()),
            ));
        }
        let parse_f = |v: &str| {
            v.parse::<f64>()
                .map_err(|_| Error::format(name, lineno, format!("bad number `{v}`")))
        };
        let parse_opt = |v: &str| -> Result<Option<f64>> {
            if v == "-" {
                Ok(None)
            } else {
                parse_f(v).map(Some)
            }
        };
        let objects: Vec<String> = if fields[3].is_empty() {
            Vec::new()
        } else {
            fields[3].split(',').map(|s| s.to_string()).collect()
        };
        clips.push(ClipLabel {
            clip_id: fields[0].to_string(),
            video_id: fields[1].to_string(),
            action: fields[2].to_string(),
            objects,
            interval: Interval::new(parse_f(fields[4])?, parse_f(fields[5])?),
            provenance: Provenance::parse(fields[6]).ok_or_else(|| {
                Error::format(name, lineno, format!("unknown provenance `{}`", fields[6]))
            })?,
            visual_score: parse_opt(fields[7])?,
            confidence: parse_opt(fields[8])?,
        });
    }
    if clips.len() != declared {
        return Err(Error::invalid(format!(
            "{name}: truncated corpus: header declares {declared} clips, found {}",
            clips.len()
        )));
    }
    ClipCorpus::new(clips)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clip(id: &str, action: &str, objects: &[&str]) -> ClipLabel {
        ClipLabel {
            clip_id: id.into(),
            video_id: "v".into(),
            action: action.into(),
            objects: objects.iter().map(|o| o.to_string()).collect(),
            interval: Interval::new(1.0, 9.0),
            provenance: Provenance::Keyword,
            visual_score: Some(0.25),
            confidence: None,
        }
    }

    fn tmp(name: &str) -> std::path::PathBuf {
        let dir = std::env::temp_dir().join("cookalign-corpus-tests");
        std::fs::create_dir_all(&dir).unwrap();
        dir.join(name)
    }

    #[test]
    fn round_trips_one_clip() {
        let corpus = ClipCorpus::new(vec![clip("c1", "peel", &["garlic", "red onion"])]).unwrap();
        let path = tmp("one.clips");
        write_clip_corpus(&corpus, &path).unwrap();
        let back = read_clip_corpus(&path).unwrap();
        assert_eq!(corpus, back);
        assert_eq!(back.lookup("peel", "garlic"), ["c1"]);
    }

    #[test]
    fn empty_corpus_is_valid() {
        let corpus = ClipCorpus::new(vec![]).unwrap();
        let path = tmp("empty.clips");
        write_clip_corpus(&corpus, &path).unwrap();
        assert!(read_clip_corpus(&path).unwrap().is_empty());
    }

    #[test]
    fn truncated_file_is_an_error() {
        let corpus =
            ClipCorpus::new(vec![clip("c1", "peel", &["garlic"]), clip("c2", "chop", &[])]).unwrap();
        let path = tmp("trunc.clips");
        write_clip_corpus(&corpus, &path).unwrap();
        let content = std::fs::read_to_string(&path).unwrap();
        let truncated: String = content.lines().take(3).collect::<Vec<_>>().join("\n");
        std::fs::write(&path, truncated).unwrap();
        let err = read_clip_corpus(&path).unwrap_err();
        assert!(err.to_string().contains("truncated"), "{err}");
    }

    #[test]
    fn unknown_version_is_an_error() {
        let err = parse_clip_corpus("clipcorpus v99\nclips\t0\n", "c").unwrap_err();
        assert!(err.to_string().contains("unknown format version"));
    }

    #[test]
    fn duplicate_ids_are_rejected() {
        let err = ClipCorpus::new(vec![clip("c1", "a", &[]), clip("c1", "b", &[])]).unwrap_err();
        assert!(err.to_string().contains("duplicate"));
    }
}
