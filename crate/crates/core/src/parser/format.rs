//! Versioned structured-text serialization of [`ParsedRecipe`].

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use super::{ParsedRecipe, RecipeStep};
use crate::{Error, Result};

const HEADER: &str = "recipe v1";

pub fn write_recipe(recipe: &ParsedRecipe, path: &Path) -> Result<()> {
    let mut out = String::new();
    writeln!(out, "{HEADER}").unwrap();
    for ingredient in &recipe.ingredients {
        writeln!(out, "ingredient\t{ingredient}").unwrap();
    }
    for step in &recipe.steps {
        writeln!(
            out,
            "step\t{}\t{}\t{}\t{}\t{}",
            step.index,
            step.action,
            step.entities.join(","),
            step.words.iter().cloned().collect::<Vec<_>>().join(" "),
            step.source_text,
        )
        .unwrap();
    }
    std::fs::write(path, out)?;
    Ok(())
}

pub fn read_recipe(path: &Path) -> Result<ParsedRecipe> {
    let content = std::fs::read_to_string(path)?;
    parse_recipe_file(&content, &path.display().to_string())
}

pub(crate) fn parse_recipe_file(content: &str, name: &str) -> Result<ParsedRecipe> {
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
    let mut ingredients = Vec::new();
    let mut steps = Vec::new();
    for (i, line) in lines {
        let lineno = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        match fields[0] {
            "ingredient" if fields.len() == 2 => ingredients.push(fields[1].to_string()),
            "step" if fields.len() == 6 => {
                let index: usize = fields[1].parse().map_err(|_| {
                    Error::format(name, lineno, format!("bad step index `{}`", fields[1]))
                })?;
                if index != steps.len() + 1 {
                    return Err(Error::format(name, lineno, "non-contiguous step index"));
                }
                let entities: Vec<String> = if fields[3].is_empty() {
                    Vec::new()
                } else {
                    fields[3].split(',').map(|e| e.to_string()).collect()
                };
                let words: BTreeSet<String> =
                    fields[4].split_whitespace().map(|w| w.to_string()).collect();
                steps.push(RecipeStep {
                    index,
                    action: fields[2].to_string(),
                    entities,
                    words,
                    source_text: fields[5].to_string(),
                });
            }
            other => {
                return Err(Error::format(name, lineno, format!("unknown record `{other}`")));
            }
        }
    }
    if steps.is_empty() {
        return Err(Error::invalid(format!("{name}: recipe has no steps")));
    }
    Ok(ParsedRecipe { ingredients, steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus_io::EmbeddingTable;
    use crate::parser::{parse_recipe, ParserConfig};

    #[test]
    fn round_trips() {
        let recipe = parse_recipe(
            &["flour".into(), "tomato sauce".into()],
            &["Add a cup of flour and mix well".into(), "pour the tomato sauce".into()],
            &EmbeddingTable::empty(),
            &ParserConfig::default(),
        )
        .unwrap();
        let dir = std::env::temp_dir().join("cookalign-recipe-rt");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("r.recipe");
        write_recipe(&recipe, &path).unwrap();
        let back = read_recipe(&path).unwrap();
        assert_eq!(recipe, back);
    }

    #[test]
    fn wrong_version_is_rejected() {
        let err = parse_recipe_file("recipe v9\n", "r").unwrap_err();
        assert!(err.to_string().contains("unknown format version"));
    }
}
