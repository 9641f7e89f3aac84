//! On-disk cache of character tables keyed by group label, e.g. `SL(3,3)`.
//!
//! The file is JSON. Each table lists its classes (representative matrix
//! entries, size, element order, inverse class) and each character value
//! as a conductor with integer coefficients on `1, zeta, zeta^2, ...`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::finlab::chartab::CharacterTable;

pub const CACHE_FORMAT: &str = "depthzero-character-tables/1";

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCache {
    #[serde(default = "format_tag")]
    pub format: String,
    pub tables: BTreeMap<String, CharacterTable>,
}

fn format_tag() -> String {
    CACHE_FORMAT.to_string()
}

impl TableCache {
    pub fn get(&self, label: &str) -> Option<&CharacterTable> {
        self.tables.get(label)
    }

    pub fn insert(&mut self, table: CharacterTable) {
        if self.format.is_empty() {
            self.format = format_tag();
        }
        self.tables.insert(table.label.clone(), table);
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cache: Self = serde_json::from_str(text)?;
        if cache.format != CACHE_FORMAT {
            return Err(crate::Error::Io(format!("unknown cache format {:?}", cache.format)));
        }
        Ok(cache)
    }

    /// Loads a cache file, or returns an empty cache if the file is absent.
    pub fn load(path: &Path) -> Result<Self> {
        if !path.exists() {
            return Ok(Self {
                format: format_tag(),
                ..Self::default()
            });
        }
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }
}
