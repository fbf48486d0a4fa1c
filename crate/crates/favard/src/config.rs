//! Config files are flat TOML tables whose keys are the long flag names
//! (`K`, `A`, `n-max`, ...). Flags given on the command line win.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{CliError, CliResult};

pub type Table = Map<String, Value>;

pub fn load(path: &Path) -> CliResult<Table> {
    let text = std::fs::read_to_string(path)?;
    let parsed: toml::Table = toml::from_str(&text).map_err(|e| CliError::Config(e.to_string()))?;
    match serde_json::to_value(parsed)? {
        Value::Object(map) => Ok(map),
        _ => Err(CliError::Config("config root must be a table".into())),
    }
}

/// Fills every unset field of `cli` from `file`. A field is unset when it
/// serializes to `null` or `false`.
pub fn merge<T: Serialize + DeserializeOwned>(cli: T, file: Option<&Table>) -> CliResult<T> {
    let Some(file) = file else {
        return Ok(cli);
    };
    let mut value = serde_json::to_value(&cli)?;
    let Value::Object(map) = &mut value else {
        return Ok(cli);
    };
    for (key, v) in file {
        let unset = matches!(map.get(key), None | Some(Value::Null) | Some(Value::Bool(false)));
        if unset {
            map.insert(key.clone(), v.clone());
        }
    }
    serde_json::from_value(value).map_err(|e| CliError::Config(e.to_string()))
}

/// Accepts a TOML string or number for fields parsed as text (slopes,
/// thresholds).
pub mod text_or_number {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Text(String),
        Int(i64),
        Float(f64),
    }

    pub fn serialize<S: Serializer>(v: &Option<String>, s: S) -> Result<S::Ok, S::Error> {
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<String>, D::Error> {
        Ok(Option::<Raw>::deserialize(d)?.map(|raw| match raw {
            Raw::Text(s) => s,
            Raw::Int(i) => i.to_string(),
            Raw::Float(f) => f.to_string(),
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde::Deserialize;

    #[derive(Debug, Serialize, Deserialize, PartialEq)]
    struct Probe {
        a: Option<u32>,
        b: Option<u32>,
        flag: bool,
        #[serde(default, with = "text_or_number")]
        t: Option<String>,
    }

    #[test]
    fn flags_win_over_file() {
        let file: Table = serde_json::from_str(r#"{"a": 1, "b": 2, "flag": true, "t": 2}"#).unwrap();
        let cli = Probe {
            a: Some(7),
            b: None,
            flag: false,
            t: None,
        };
        let merged = merge(cli, Some(&file)).unwrap();
        assert_eq!(
            merged,
            Probe {
                a: Some(7),
                b: Some(2),
                flag: true,
                t: Some("2".into())
            }
        );
    }
}
