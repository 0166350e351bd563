//! Built-in configurations.

use crate::config::{ConfigError, ConfigFile, LoadedConfig};

pub const ENTRIES: &[(&str, &str)] = &[
    ("sl2-split", include_str!("../catalog/sl2-split.json")),
    ("sl2xsl2-swap", include_str!("../catalog/sl2xsl2-swap.json")),
    ("sl3-split", include_str!("../catalog/sl3-split.json")),
    ("sp4-split", include_str!("../catalog/sp4-split.json")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    ENTRIES.iter().map(|(n, _)| *n)
}

pub fn source(name: &str) -> Option<&'static str> {
    ENTRIES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn load(name: &str) -> Option<Result<LoadedConfig, ConfigError>> {
    source(name).map(|text| ConfigFile::from_json(text).and_then(ConfigFile::validate))
}

/// A catalog name, or otherwise a path to a config file.
pub fn resolve(group: &str) -> Result<LoadedConfig, ConfigError> {
    match load(group) {
        Some(r) => r,
        None => ConfigFile::load(std::path::Path::new(group)),
    }
}
