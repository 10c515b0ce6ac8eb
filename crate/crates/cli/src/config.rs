//! Flat `key=value` files.

use std::collections::BTreeMap;

use linindel_core::{Error, Result};

/// Ordered `key=value` pairs; later assignments win.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KeyValues(BTreeMap<String, String>);

impl KeyValues {
    pub fn parse(text: &str) -> Result<Self> {
        let mut kv = KeyValues::default();
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            kv.assign(line).map_err(|_| Error::Parse(format!("line {}: expected key=value, got {line:?}", no + 1)))?;
        }
        Ok(kv)
    }

    /// Applies one `key=value` assignment.
    pub fn assign(&mut self, item: &str) -> Result<()> {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got {item:?}")))?;
        let k = k.trim();
        if k.is_empty() {
            return Err(Error::Parse(format!("empty key in {item:?}")));
        }
        self.0.insert(k.to_string(), v.trim().to_string());
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        self.0.insert(key.to_string(), value.to_string());
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    pub fn require(&self, key: &str) -> Result<&str> {
        self.get(key).ok_or_else(|| Error::InvalidParameters(format!("missing key {key:?}")))
    }

    pub fn parsed<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        let v = self.require(key)?;
        v.parse().map_err(|_| Error::Parse(format!("bad value for {key}: {v:?}")))
    }

    /// Comma-separated values of `key`.
    pub fn list(&self, key: &str) -> Result<Vec<&str>> {
        Ok(self.require(key)?.split(',').map(str::trim).filter(|s| !s.is_empty()).collect())
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(String::as_str)
    }

    pub fn to_text(&self) -> String {
        self.0.iter().map(|(k, v)| format!("{k}={v}\n")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_override() {
        let mut kv = KeyValues::parse("# c\n n = 240\nk=120\n\ndelta=0.1, 0.05\n").unwrap();
        assert_eq!(kv.parsed::<usize>("n").unwrap(), 240);
        assert_eq!(kv.list("delta").unwrap(), vec!["0.1", "0.05"]);
        kv.assign("n=60").unwrap();
        assert_eq!(kv.get("n"), Some("60"));
        assert!(kv.require("q").is_err());
        assert!(KeyValues::parse("novalue").is_err());
        assert_eq!(KeyValues::parse(&kv.to_text()).unwrap(), kv);
    }
}
