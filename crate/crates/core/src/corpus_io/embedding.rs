use std::collections::HashMap;
use std::path::Path;

use crate::{Error, Result};

/// Word -> vector lookup table; lookups are case-folded.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingTable {
    pub dimension: usize,
    entries: HashMap<String, Vec<f64>>,
}

impl EmbeddingTable {
    /// An empty table; every lookup misses.
    pub fn empty() -> Self {
        EmbeddingTable {
            dimension: 0,
            entries: HashMap::new(),
        }
    }

    pub fn from_entries(entries: Vec<(String, Vec<f64>)>) -> Result<Self> {
        let mut table = EmbeddingTable::empty();
        for (word, vector) in entries {
            table.insert(&word, vector)?;
        }
        Ok(table)
    }

    fn insert(&mut self, word: &str, vector: Vec<f64>) -> Result<()> {
        if self.entries.is_empty() {
            self.dimension = vector.len();
        } else if vector.len() != self.dimension {
            return Err(Error::invalid(format!(
                "embedding for `{word}` has dimension {}, table has {}",
                vector.len(),
                self.dimension
            )));
        }
        self.entries.insert(word.to_lowercase(), vector);
        Ok(())
    }

    pub fn get(&self, word: &str) -> Option<&Vec<f64>> {
        self.entries.get(&word.to_lowercase())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Reads the `word v1 v2 ... vd` one-line-per-word embedding format.
/// Unknown words are simply absent from the table.
pub fn load_embeddings(path: &Path) -> Result<EmbeddingTable> {
    let content = std::fs::read_to_string(path)?;
    parse_embeddings(&content, &path.display().to_string())
}

pub(crate) fn parse_embeddings(content: &str, name: &str) -> Result<EmbeddingTable> {
    let mut table = EmbeddingTable::empty();
    for (i, line) in content.lines().enumerate() {
        let lineno = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let word = fields
            .next()
            .ok_or_else(|| Error::format(name, lineno, "missing word"))?;
        let vector: Vec<f64> = fields
            .map(|v| {
                v.parse::<f64>()
                    .map_err(|_| Error::format(name, lineno, format!("bad component `{v}`")))
            })
            .collect::<Result<_>>()?;
        if vector.is_empty() {
            return Err(Error::format(name, lineno, "embedding has no components"));
        }
        table
            .insert(word, vector)
            .map_err(|e| Error::format(name, lineno, e.to_string()))?;
    }
    Ok(table)
}
