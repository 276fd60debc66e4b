//! 3-class naive Bayes sentence classifier (recipe step / ingredient /
//! background) used to carve a recipe out of free text.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;
use std::path::Path;

use crate::words::tokenize;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SentenceLabel {
    RecipeStep,
    Ingredient,
    Background,
}

impl SentenceLabel {
    pub const ALL: [SentenceLabel; 3] = [
        SentenceLabel::RecipeStep,
        SentenceLabel::Ingredient,
        SentenceLabel::Background,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SentenceLabel::RecipeStep => "step",
            SentenceLabel::Ingredient => "ingredient",
            SentenceLabel::Background => "background",
        }
    }

    pub fn parse(s: &str) -> Option<SentenceLabel> {
        Some(match s {
            "step" => SentenceLabel::RecipeStep,
            "ingredient" => SentenceLabel::Ingredient,
            "background" => SentenceLabel::Background,
            _ => return None,
        })
    }

    fn idx(&self) -> usize {
        match self {
            SentenceLabel::RecipeStep => 0,
            SentenceLabel::Ingredient => 1,
            SentenceLabel::Background => 2,
        }
    }
}

/// Trained bag-of-words naive Bayes model.
#[derive(Debug, Clone, PartialEq)]
pub struct NbModel {
    pub smoothing: f64,
    priors: [f64; 3],
    /// Per class, log p(token | class) over the shared vocabulary.
    likelihoods: [HashMap<String, f64>; 3],
    /// Per class, log-likelihood of the shared unknown-token bucket.
    unk: [f64; 3],
    vocabulary: HashSet<String>,
}

/// Trains with add-`smoothing` over vocabulary + a single UNK bucket per
/// class. Every class must be represented.
pub fn train(examples: &[(String, SentenceLabel)], smoothing: f64) -> Result<NbModel> {
    if smoothing <= 0.0 {
        return Err(Error::invalid("smoothing must be > 0"));
    }
    let mut class_counts = [0usize; 3];
    let mut token_counts: [HashMap<String, usize>; 3] = Default::default();
    let mut vocabulary = HashSet::new();
    for (sentence, label) in examples {
        class_counts[label.idx()] += 1;
        for token in tokenize(sentence) {
            vocabulary.insert(token.clone());
            *token_counts[label.idx()].entry(token).or_default() += 1;
        }
    }
    let missing: Vec<&str> = SentenceLabel::ALL
        .iter()
        .filter(|l| class_counts[l.idx()] == 0)
        .map(|l| l.as_str())
        .collect();
    if !missing.is_empty() {
        return Err(Error::invalid(format!(
            "missing training examples for classes: {}",
            missing.join(", ")
        )));
    }

    let total = examples.len() as f64;
    let priors = [
        class_counts[0] as f64 / total,
        class_counts[1] as f64 / total,
        class_counts[2] as f64 / total,
    ];
    let v = vocabulary.len() as f64;
    let mut likelihoods: [HashMap<String, f64>; 3] = Default::default();
    let mut unk = [0.0f64; 3];
    for label in SentenceLabel::ALL {
        let ci = label.idx();
        let class_total: usize = token_counts[ci].values().sum();
        // vocabulary plus the UNK bucket
        let denom = class_total as f64 + smoothing * (v + 1.0);
        for token in &vocabulary {
            let count = token_counts[ci].get(token).copied().unwrap_or(0) as f64;
            likelihoods[ci].insert(token.clone(), ((count + smoothing) / denom).ln());
        }
        unk[ci] = (smoothing / denom).ln();
    }
    Ok(NbModel {
        smoothing,
        priors,
        likelihoods,
        unk,
        vocabulary,
    })
}

/// Posterior over the three classes; the label is the argmax with ties
/// broken in the fixed order step < ingredient < background.
pub fn classify(model: &NbModel, sentence: &str) -> (SentenceLabel, BTreeMap<SentenceLabel, f64>) {
    let tokens = tokenize(sentence);
    let mut log_scores = [0.0f64; 3];
    for label in SentenceLabel::ALL {
        let ci = label.idx();
        let mut score = model.priors[ci].ln();
        for token in &tokens {
            score += model.likelihoods[ci].get(token).copied().unwrap_or(model.unk[ci]);
        }
        log_scores[ci] = score;
    }
    // normalize in probability space
    let m = log_scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = log_scores.iter().map(|s| (s - m).exp()).collect();
    let total: f64 = exps.iter().sum();
    let mut posteriors = BTreeMap::new();
    let mut best = SentenceLabel::RecipeStep;
    let mut best_p = f64::NEG_INFINITY;
    for label in SentenceLabel::ALL {
        let p = exps[label.idx()] / total;
        posteriors.insert(label, p);
        if p > best_p {
            best_p = p;
            best = label;
        }
    }
    (best, posteriors)
}

/// Routes a document's sentences by classification and applies the keep
/// rule: at least one ingredient sentence and at least one step sentence.
pub fn filter_document(
    model: &NbModel,
    sentences: &[String],
) -> (Vec<String>, Vec<String>, bool) {
    let mut ingredients = Vec::new();
    let mut steps = Vec::new();
    for sentence in sentences {
        match classify(model, sentence).0 {
            SentenceLabel::Ingredient => ingredients.push(sentence.clone()),
            SentenceLabel::RecipeStep => steps.push(sentence.clone()),
            SentenceLabel::Background => {}
        }
    }
    let kept = !ingredients.is_empty() && !steps.is_empty();
    (ingredients, steps, kept)
}

/// Per-class precision, recall, and F1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

pub fn evaluate(
    model: &NbModel,
    examples: &[(String, SentenceLabel)],
) -> BTreeMap<SentenceLabel, ClassMetrics> {
    let mut tp = [0usize; 3];
    let mut fp = [0usize; 3];
    let mut fn_ = [0usize; 3];
    for (sentence, truth) in examples {
        let predicted = classify(model, sentence).0;
        if predicted == *truth {
            tp[truth.idx()] += 1;
        } else {
            fp[predicted.idx()] += 1;
            fn_[truth.idx()] += 1;
        }
    }
    SentenceLabel::ALL
        .iter()
        .map(|&label| {
            let ci = label.idx();
            let precision = if tp[ci] + fp[ci] == 0 {
                0.0
            } else {
                tp[ci] as f64 / (tp[ci] + fp[ci]) as f64
            };
            let recall = if tp[ci] + fn_[ci] == 0 {
                0.0
            } else {
                tp[ci] as f64 / (tp[ci] + fn_[ci]) as f64
            };
            let f1 = if precision + recall == 0.0 {
                0.0
            } else {
                2.0 * precision * recall / (precision + recall)
            };
            (
                label,
                ClassMetrics {
                    precision,
                    recall,
                    f1,
                },
            )
        })
        .collect()
}

const HEADER: &str = "nbmodel v1";

pub fn write_model(model: &NbModel, path: &Path) -> Result<()> {
    let mut out = String::new();
    writeln!(out, "{HEADER}").unwrap();
    writeln!(out, "smoothing\t{}", model.smoothing).unwrap();
    for label in SentenceLabel::ALL {
        writeln!(out, "prior\t{}\t{}", label.as_str(), model.priors[label.idx()]).unwrap();
    }
    for label in SentenceLabel::ALL {
        writeln!(out, "unk\t{}\t{}", label.as_str(), model.unk[label.idx()]).unwrap();
        let mut tokens: Vec<&String> = model.likelihoods[label.idx()].keys().collect();
        tokens.sort();
        for token in tokens {
            writeln!(
                out,
                "likelihood\t{}\t{}\t{}",
                label.as_str(),
                token,
                model.likelihoods[label.idx()][token]
            )
            .unwrap();
        }
    }
    std::fs::write(path, out)?;
    Ok(())
}

pub fn read_model(path: &Path) -> Result<NbModel> {
    let content = std::fs::read_to_string(path)?;
    parse_model(&content, &path.display().to_string())
}

pub(crate) fn parse_model(content: &str, name: &str) -> Result<NbModel> {
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
    let mut smoothing = 1.0;
    let mut priors = [0.0f64; 3];
    let mut likelihoods: [HashMap<String, f64>; 3] = Default::default();
    let mut unk = [0.0f64; 3];
    let mut vocabulary = HashSet::new();
    for (i, line) in lines {
        let lineno = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let parse_f = |v: &str| {
            v.parse::<f64>()
                .map_err(|_| Error::format(name, lineno, format!("bad number `{v}`")))
        };
        let parse_label = |v: &str| {
            SentenceLabel::parse(v)
                .ok_or_else(|| Error::format(name, lineno, format!("unknown class `{v}`")))
        };
        match fields[0] {
            "smoothing" if fields.len() == 2 => smoothing = parse_f(fields[1])?,
            "prior" if fields.len() == 3 => {
                priors[parse_label(fields[1])?.idx()] = parse_f(fields[2])?
            }
            "unk" if fields.len() == 3 => unk[parse_label(fields[1])?.idx()] = parse_f(fields[2])?,
            "likelihood" if fields.len() == 4 => {
                let label = parse_label(fields[1])?;
                vocabulary.insert(fields[2].to_string());
                likelihoods[label.idx()].insert(fields[2].to_string(), parse_f(fields[3])?);
            }
            other => {
                return Err(Error::format(name, lineno, format!("unknown record `{other}`")));
            }
        }
    }
    Ok(NbModel {
        smoothing,
        priors,
        likelihoods,
        unk,
        vocabulary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_corpus() -> Vec<(String, SentenceLabel)> {
        vec![
            ("mix the flour".into(), SentenceLabel::RecipeStep),
            ("two cups flour".into(), SentenceLabel::Ingredient),
            ("thanks for watching".into(), SentenceLabel::Background),
        ]
    }

    #[test]
    fn priors_are_count_ratios() {
        let examples = vec![
            ("stir it".into(), SentenceLabel::RecipeStep),
            ("mix it".into(), SentenceLabel::RecipeStep),
            ("one egg".into(), SentenceLabel::Ingredient),
            ("hello there".into(), SentenceLabel::Background),
        ];
        let model = train(&examples, 1.0).unwrap();
        let (_, posteriors) = classify(&model, "");
        assert!((posteriors[&SentenceLabel::RecipeStep] - 0.5).abs() < 1e-9);
        assert!((posteriors[&SentenceLabel::Ingredient] - 0.25).abs() < 1e-9);
        assert!((posteriors[&SentenceLabel::Background] - 0.25).abs() < 1e-9);
    }

    #[test]
    fn missing_class_lists_it() {
        let examples = vec![
            ("stir it".into(), SentenceLabel::RecipeStep),
            ("one egg".into(), SentenceLabel::Ingredient),
        ];
        let err = train(&examples, 1.0).unwrap_err();
        assert!(err.to_string().contains("background"), "{err}");
    }

    // Hand-computed posterior oracle for the tiny corpus (smoothing 1, V=8):
    // "mix the sugar": step likelihoods (2/12)(2/12)(1/12) with prior 1/3,
    // ingredient and background (1/12)^3 each; step wins.
    #[test]
    fn hand_computed_step_classification() {
        let model = train(&tiny_corpus(), 1.0).unwrap();
        let (label, posteriors) = classify(&model, "mix the sugar");
        assert_eq!(label, SentenceLabel::RecipeStep);
        // posterior ratio step : others = 4 : 1 : 1
        assert!((posteriors[&SentenceLabel::RecipeStep] - 4.0 / 6.0).abs() < 1e-9);
    }

    #[test]
    fn hand_computed_ingredient_classification() {
        let model = train(&tiny_corpus(), 1.0).unwrap();
        let (label, _) = classify(&model, "two cups sugar");
        assert_eq!(label, SentenceLabel::Ingredient);
    }

    #[test]
    fn unknown_only_sentence_falls_back_to_priors() {
        let model = train(&tiny_corpus(), 1.0).unwrap();
        let (_, posteriors) = classify(&model, "zzz qqq");
        // priors are uniform here, but the UNK likelihood differs per class
        // only through class token totals, which are equal in this corpus
        for label in SentenceLabel::ALL {
            assert!((posteriors[&label] - 1.0 / 3.0).abs() < 1e-9);
        }
    }

    #[test]
    fn posteriors_normalize() {
        let model = train(&tiny_corpus(), 1.0).unwrap();
        for sentence in ["mix", "two cups flour please", "zzz", ""] {
            let (_, posteriors) = classify(&model, sentence);
            let total: f64 = posteriors.values().sum();
            assert!((total - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn duplicating_training_set_keeps_decisions() {
        let mut doubled = tiny_corpus();
        doubled.extend(tiny_corpus());
        let model = train(&tiny_corpus(), 1.0).unwrap();
        let model2 = train(&doubled, 1.0).unwrap();
        for sentence in ["mix the sugar", "two cups sugar", "thanks everyone", ""] {
            assert_eq!(classify(&model, sentence).0, classify(&model2, sentence).0);
        }
    }

    #[test]
    fn filter_document_keep_rule() {
        let model = train(&tiny_corpus(), 1.0).unwrap();
        let (ingredients, steps, kept) = filter_document(
            &model,
            &[
                "two cups flour".into(),
                "mix the flour".into(),
                "mix the flour again".into(),
                "thanks for watching".into(),
            ],
        );
        assert!(kept);
        assert_eq!(ingredients.len(), 1);
        assert_eq!(steps.len(), 2);

        let (i, s, kept) = filter_document(&model, &["thanks for watching".into()]);
        assert!(!kept);
        assert!(i.is_empty() && s.is_empty());

        // steps but no ingredients -> not kept
        let (_, _, kept) = filter_document(&model, &["mix the flour".into()]);
        assert!(!kept);
    }

    #[test]
    fn likelihoods_sum_to_one_with_unk() {
        let model = train(&tiny_corpus(), 1.0).unwrap();
        for label in SentenceLabel::ALL {
            let ci = label.idx();
            let total: f64 = model.likelihoods[ci].values().map(|l| l.exp()).sum::<f64>()
                + model.unk[ci].exp();
            assert!((total - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn model_round_trips() {
        let model = train(&tiny_corpus(), 0.5).unwrap();
        let dir = std::env::temp_dir().join("cookalign-nb-rt");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("m.nbmodel");
        write_model(&model, &path).unwrap();
        let back = read_model(&path).unwrap();
        assert_eq!(model, back);
    }
}
