use super::{Elem, FinitePoset};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// On-disk form of posets and structures.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDocument {
    pub elements: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covers: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub le: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upset: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<String>,
}

impl PosetDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::MalformedDocument(e.to_string()))
    }

    pub fn to_poset(&self) -> Result<FinitePoset> {
        let pairs = match (&self.covers, &self.le) {
            (Some(_), Some(_)) => {
                return Err(Error::MalformedDocument("give either `covers` or `le`, not both".into()))
            }
            (Some(p), None) | (None, Some(p)) => p.as_slice(),
            (None, None) => &[],
        };
        let mut seen = std::collections::HashMap::new();
        for (i, name) in self.elements.iter().enumerate() {
            if seen.insert(name.as_str(), i).is_some() {
                return Err(Error::DuplicateElement(name.clone()));
            }
        }
        let lookup = |name: &String| -> Result<Elem> {
            seen.get(name.as_str()).copied().ok_or_else(|| Error::UnknownElementName(name.clone()))
        };
        let idx: Vec<(Elem, Elem)> =
            pairs.iter().map(|(a, b)| Ok((lookup(a)?, lookup(b)?))).collect::<Result<_>>()?;
        FinitePoset::new(self.elements.clone(), &idx)
    }

    pub fn from_poset(p: &FinitePoset) -> Self {
        PosetDocument {
            elements: p.names().to_vec(),
            covers: Some(
                p.covers().iter().map(|&(a, b)| (p.name(a).to_string(), p.name(b).to_string())).collect(),
            ),
            le: None,
            upset: None,
            signature: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serialisable document")
    }
}

pub fn parse_poset(text: &str) -> Result<FinitePoset> {
    PosetDocument::from_json(text)?.to_poset()
}

pub fn poset_to_json(p: &FinitePoset) -> String {
    PosetDocument::from_poset(p).to_json()
}
