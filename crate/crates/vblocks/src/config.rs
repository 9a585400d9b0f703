use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use crate::Failure;

const KNOWN_KEYS: &[&str] = &[
    "command",
    "check",
    "kind",
    "format",
    "out",
    "check-oracle",
    "ell",
    "g",
    "n",
    "i",
    "k",
    "d",
    "gamma",
    "weights",
    "labels",
    "profile",
    "parts",
    "jmax",
    "limit",
    "max-curves",
];

/// Key = value pairs read from --config. Keys mirror the long flag names;
/// a flag given on the command line always wins over the file.
pub struct Settings {
    map: BTreeMap<String, String>,
}

impl Settings {
    pub fn empty() -> Settings {
        Settings { map: BTreeMap::new() }
    }

    pub fn load(path: &Path) -> Result<Settings, Failure> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Failure::usage(format!("cannot read config {}: {}", path.display(), e))
        })?;
        let mut map = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Failure::usage(format!(
                    "config {} line {}: expected key = value, got {:?}",
                    path.display(),
                    lineno + 1,
                    line
                ))
            })?;
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(Failure::usage(format!(
                    "config {} line {}: unknown key {:?}",
                    path.display(),
                    lineno + 1,
                    key
                )));
            }
            if map.insert(key.clone(), value).is_some() {
                return Err(Failure::usage(format!(
                    "config {} line {}: duplicate key {:?}",
                    path.display(),
                    lineno + 1,
                    key
                )));
            }
        }
        Ok(Settings { map })
    }

    pub fn get_str(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(|s| s.as_str())
    }

    pub fn get_parsed<T: FromStr>(&self, key: &str) -> Result<Option<T>, Failure>
    where
        T::Err: Display,
    {
        match self.map.get(key) {
            None => Ok(None),
            Some(raw) => raw.parse::<T>().map(Some).map_err(|e| {
                Failure::usage(format!("config {} = {}: {}", key, raw, e))
            }),
        }
    }

    pub fn get_bool(&self, key: &str) -> Result<bool, Failure> {
        match self.map.get(key).map(|s| s.as_str()) {
            None => Ok(false),
            Some("true") => Ok(true),
            Some("false") => Ok(false),
            Some(other) => Err(Failure::usage(format!(
                "config {} = {}: expected true or false",
                key, other
            ))),
        }
    }
}
