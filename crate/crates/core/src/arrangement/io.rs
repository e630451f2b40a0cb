use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{Arrangement, Hyperplane};
use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational};

/// On-disk form of an arrangement; rationals are exact `"p/q"` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementFile {
    pub d: usize,
    pub hyperplanes: Vec<HyperplaneFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperplaneFile {
    pub normal: Vec<String>,
    pub offset: String,
}

impl From<&Arrangement> for ArrangementFile {
    fn from(arr: &Arrangement) -> Self {
        ArrangementFile {
            d: arr.dim(),
            hyperplanes: arr
                .hyperplanes()
                .iter()
                .map(|h| HyperplaneFile {
                    normal: h.normal.iter().map(format_rational).collect(),
                    offset: format_rational(&h.offset),
                })
                .collect(),
            labels: Some(arr.labels().to_vec()),
        }
    }
}

impl TryFrom<ArrangementFile> for Arrangement {
    type Error = Error;

    fn try_from(file: ArrangementFile) -> Result<Self> {
        let hs = file
            .hyperplanes
            .iter()
            .map(|h| {
                let normal = h.normal.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
                Hyperplane::new(normal, parse_rational(&h.offset)?)
            })
            .collect::<Result<Vec<_>>>()?;
        match file.labels {
            Some(labels) => Arrangement::with_labels(file.d, hs, labels),
            None => Arrangement::new(file.d, hs),
        }
    }
}

impl Arrangement {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ArrangementFile::from(self)).expect("arrangement serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ArrangementFile = serde_json::from_str(text)?;
        file.try_into()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }

    /// SHA-256 of the canonical JSON form, hex encoded.
    pub fn content_hash(&self) -> String {
        let digest = Sha256::digest(self.to_json().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let text =
            r#"{"d":2,"hyperplanes":[{"normal":["1/2","-3"],"offset":"0"},{"normal":["0","1"],"offset":"7/3"}]}"#;
        let arr = Arrangement::from_json(text).unwrap();
        assert_eq!(arr.labels(), ["H1", "H2"]);
        let again = Arrangement::from_json(&arr.to_json()).unwrap();
        assert_eq!(again.hyperplanes(), arr.hyperplanes());
        assert_eq!(again.content_hash(), arr.content_hash());
        assert!(arr.to_json().contains("\"-3/1\""));
    }

    #[test]
    fn malformed_input_rejected() {
        assert!(Arrangement::from_json(r#"{"d":2,"hyperplanes":[{"normal":["0","0"],"offset":"1"}]}"#).is_err());
        assert!(Arrangement::from_json(r#"{"d":2,"hyperplanes":[{"normal":["0.5","1"],"offset":"1"}]}"#).is_err());
        assert!(Arrangement::from_json(r#"{"d":2,"hyperplanes":[{"normal":["1"],"offset":"1"}]}"#).is_err());
        assert!(Arrangement::from_json(r#"{"d":2,"hyperplanes":[]}"#).is_err());
    }
}
