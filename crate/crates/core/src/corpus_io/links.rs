use crate::words::tokenize;

const LINK_KEYWORDS: &[&str] = &["recipe", "steps", "cook", "procedure", "preparation", "method"];

/// Finds recipe URLs: any URL mentioned in a description sentence that also
/// contains one of the fixed recipe keywords. Order of first appearance,
/// exact-string deduplicated.
pub fn extract_recipe_links(description_sentences: &[String]) -> Vec<String> {
    let mut seen = std::collections::HashSet::new();
    let mut urls = Vec::new();
    for sentence in description_sentences {
        let has_keyword = tokenize(sentence)
            .iter()
            .any(|t| LINK_KEYWORDS.contains(&t.as_str()));
        if !has_keyword {
            continue;
        }
        for url in find_urls(sentence) {
            if seen.insert(url.clone()) {
                urls.push(url);
            }
        }
    }
    urls
}

/// Maximal substrings starting with `http://` or `https://` followed by
/// non-whitespace characters.
fn find_urls(sentence: &str) -> Vec<String> {
    let lower = sentence.to_lowercase();
    let mut urls = Vec::new();
    let mut search_from = 0;
    while search_from < lower.len() {
        let rel = lower[search_from..].find("http://").map(|i| (i, 7)).into_iter()
            .chain(lower[search_from..].find("https://").map(|i| (i, 8)))
            .min_by_key(|(i, _)| *i);
        let Some((rel_start, _)) = rel else { break };
        let start = search_from + rel_start;
        let end = sentence[start..]
            .find(char::is_whitespace)
            .map(|i| start + i)
            .unwrap_or(sentence.len());
        urls.push(sentence[start..end].to_string());
        search_from = end;
    }
    urls
}
