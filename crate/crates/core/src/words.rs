//! Built-in word lists, tokenization, and a rule-based lemmatizer.

use std::collections::HashSet;
use std::sync::OnceLock;

const COOKING_VERBS: &str = include_str!("../data/cooking_verbs.txt");
const STOPWORDS: &str = include_str!("../data/stopwords.txt");
const FILLERS: &str = include_str!("../data/fillers.txt");

fn word_set(raw: &str) -> HashSet<String> {
    raw.lines()
        .map(|l| l.trim().to_lowercase())
        .filter(|l| !l.is_empty())
        .collect()
}

/// Shipped whitelist of transitive cooking verbs, shared by the recipe
/// tagger override and keyword spotting.
pub fn cooking_verbs() -> &'static HashSet<String> {
    static SET: OnceLock<HashSet<String>> = OnceLock::new();
    SET.get_or_init(|| word_set(COOKING_VERBS))
}

/// Shipped list of English function words.
pub fn stopwords() -> &'static HashSet<String> {
    static SET: OnceLock<HashSet<String>> = OnceLock::new();
    SET.get_or_init(|| word_set(STOPWORDS))
}

/// Background filler lexicon used by the synthetic harness.
pub fn fillers() -> &'static Vec<String> {
    static LIST: OnceLock<Vec<String>> = OnceLock::new();
    LIST.get_or_init(|| {
        let mut v: Vec<String> = word_set(FILLERS).into_iter().collect();
        v.sort();
        v
    })
}

/// Case-fold and split on non-alphanumeric characters, dropping empties.
pub fn tokenize(text: &str) -> Vec<String> {
    text.to_lowercase()
        .split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(|t| t.to_string())
        .collect()
}

fn irregular(word: &str) -> Option<&'static str> {
    Some(match word {
        "is" | "are" | "was" | "were" | "been" | "being" | "am" => "be",
        "has" | "had" | "having" => "have",
        "made" | "making" => "make",
        "done" | "did" | "doing" => "do",
        "took" | "taken" | "taking" => "take",
        "got" | "gotten" | "getting" => "get",
        "put" | "putting" => "put",
        "cut" | "cutting" => "cut",
        "set" | "setting" => "set",
        "let" | "letting" => "let",
        "left" => "leave",
        "kept" => "keep",
        "gave" | "given" | "giving" => "give",
        "went" | "gone" | "going" => "go",
        "came" | "coming" => "come",
        "brought" => "bring",
        "broke" | "broken" => "break",
        "froze" | "frozen" => "freeze",
        "lay" | "laid" | "laying" => "lay",
        _ => return None,
    })
}

fn is_vowel(c: u8) -> bool {
    matches!(c, b'a' | b'e' | b'i' | b'o' | b'u')
}

/// Rule-based suffix-stripping lemmatizer: handles s/es/ies, ed/ied, ing,
/// consonant-doubling repair, and a small irregular-verb table.
pub fn lemmatize(word: &str) -> String {
    let w = word.to_lowercase();
    if let Some(base) = irregular(&w) {
        return base.to_string();
    }
    let b = w.as_bytes();
    let n = b.len();

    // -ing / -ed with doubling repair ("chopping" -> "chop", "stirred" -> "stir")
    for (suffix, keep_e) in [("ing", false), ("ed", false)] {
        if n > suffix.len() + 2 && w.ends_with(suffix) {
            let stem = &w[..n - suffix.len()];
            let sb = stem.as_bytes();
            let m = sb.len();
            if m >= 3 && sb[m - 1] == sb[m - 2] && !is_vowel(sb[m - 1]) && sb[m - 1] != b'l' {
                return stem[..m - 1].to_string();
            }
            if w.ends_with(&format!("i{suffix}")) && m >= 2 {
                // "fried" -> "fry"
                return format!("{}y", &stem[..m - 1]);
            }
            // "baked" -> "bake": restore trailing e after a single consonant
            if m >= 2 && !is_vowel(sb[m - 1]) && is_vowel(sb[m - 2]) && !keep_e {
                let with_e = format!("{stem}e");
                if cooking_verbs().contains(&with_e) {
                    return with_e;
                }
            }
            return stem.to_string();
        }
    }

    // plural / third person: -ies, -es, -s
    if n > 4 && w.ends_with("ies") {
        return format!("{}y", &w[..n - 3]);
    }
    if n > 3
        && (w.ends_with("ches")
            || w.ends_with("shes")
            || w.ends_with("xes")
            || w.ends_with("sses")
            || w.ends_with("zes"))
    {
        return w[..n - 2].to_string();
    }
    if n > 2 && w.ends_with('s') && !w.ends_with("ss") && !w.ends_with("us") {
        return w[..n - 1].to_string();
    }
    w
}

/// Lemmatize every word of a phrase, keeping single spaces between words.
pub fn lemmatize_phrase(phrase: &str) -> String {
    tokenize(phrase)
        .iter()
        .map(|t| lemmatize(t))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Levenshtein edit distance.
pub fn edit_distance(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    if a.is_empty() {
        return b.len();
    }
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut curr = vec![0usize; b.len() + 1];
    for (i, ca) in a.iter().enumerate() {
        curr[0] = i + 1;
        for (j, cb) in b.iter().enumerate() {
            let cost = usize::from(ca != cb);
            curr[j + 1] = (prev[j] + cost).min(prev[j + 1] + 1).min(curr[j] + 1);
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    prev[b.len()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicons_load() {
        assert!(cooking_verbs().len() >= 190, "{}", cooking_verbs().len());
        assert!(stopwords().len() >= 110);
        assert!(!fillers().is_empty());
    }

    #[test]
    fn tokenize_folds_and_splits() {
        assert_eq!(tokenize("Mix the FLOUR, well!"), ["mix", "the", "flour", "well"]);
        assert!(tokenize("  ").is_empty());
    }

    #[test]
    fn lemmatizer_rules() {
        assert_eq!(lemmatize("chopping"), "chop");
        assert_eq!(lemmatize("stirred"), "stir");
        assert_eq!(lemmatize("fried"), "fry");
        assert_eq!(lemmatize("baked"), "bake");
        assert_eq!(lemmatize("eggs"), "egg");
        assert_eq!(lemmatize("dishes"), "dish");
        assert_eq!(lemmatize("berries"), "berry");
        assert_eq!(lemmatize("made"), "make");
        assert_eq!(lemmatize("mix"), "mix");
    }

    #[test]
    fn edit_distance_basics() {
        assert_eq!(edit_distance("", "abc"), 3);
        assert_eq!(edit_distance("kitten", "sitting"), 3);
        assert_eq!(edit_distance("same", "same"), 0);
    }
}
