use std::path::{Path, PathBuf};

use parahoric_core::notation::parse_index_list;
use parahoric_core::CartanDatum;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// Session settings read from a JSON file. Every field mirrors a command-line
/// flag; flags take precedence.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SessionConfig {
    pub datum: Option<String>,
    pub facet: Option<IndexList>,
    pub levi: Option<IndexList>,
    pub prime: Option<u64>,
    pub interval_cap: Option<usize>,
    pub length_cap: Option<usize>,
    pub chain_cap: Option<usize>,
    pub cache_dir: Option<PathBuf>,
    pub no_cache: Option<bool>,
}

/// An index list written either as a JSON array or as `"1,2"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IndexList {
    List(Vec<usize>),
    Text(String),
}

impl IndexList {
    pub fn resolve(&self) -> CliResult<Vec<usize>> {
        match self {
            IndexList::List(v) => Ok(v.clone()),
            IndexList::Text(s) => Ok(parse_index_list(s)?),
        }
    }
}

impl SessionConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::io(format!("reading config {}", path.display()), e))?;
        let config: SessionConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> CliResult<()> {
        if let Some(d) = &self.datum {
            let parsed = CartanDatum::parse(d)?;
            let canonical = parsed.canonical_string();
            if CartanDatum::parse(&canonical)? != parsed {
                return Err(CliError::Usage(format!("datum '{d}' does not round-trip")));
            }
        }
        for (name, cap) in [
            ("interval_cap", self.interval_cap),
            ("length_cap", self.length_cap),
            ("chain_cap", self.chain_cap),
        ] {
            if cap == Some(0) {
                return Err(CliError::Usage(format!("{name} must be positive")));
            }
        }
        if let Some(f) = &self.facet {
            f.resolve()?;
        }
        if let Some(l) = &self.levi {
            l.resolve()?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_list_forms() {
        let c: SessionConfig =
            serde_json::from_str(r#"{"datum":"A2","facet":"1,2","levi":[1],"prime":3}"#).unwrap();
        assert_eq!(c.facet.unwrap().resolve().unwrap(), vec![1, 2]);
        assert_eq!(c.levi.unwrap().resolve().unwrap(), vec![1]);
    }

    #[test]
    fn rejects_unknown_fields_and_zero_caps() {
        assert!(serde_json::from_str::<SessionConfig>(r#"{"colour":1}"#).is_err());
        let c = SessionConfig {
            interval_cap: Some(0),
            ..Default::default()
        };
        assert!(c.validate().is_err());
        let c = SessionConfig {
            datum: Some("Q7".into()),
            ..Default::default()
        };
        assert!(c.validate().is_err());
    }
}
