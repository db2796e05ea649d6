use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{Ipomset, IpomsetError, Label, RawPomset};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventDoc {
    pub id: String,
    pub label: Label,
}

/// JSON form of a pomset. Events are referenced by id; `alphabet` is
/// optional and, when non-empty, restricts the allowed labels.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PomsetDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<u32>,
    #[serde(default)]
    pub alphabet: Vec<Label>,
    #[serde(default)]
    pub events: Vec<EventDoc>,
    #[serde(default)]
    pub precedence: Vec<(String, String)>,
    #[serde(default)]
    pub event_order: Vec<(String, String)>,
    #[serde(default)]
    pub sources: Vec<String>,
    #[serde(default)]
    pub targets: Vec<String>,
}

impl PomsetDoc {
    pub fn to_ipomset(&self) -> Result<Ipomset, IpomsetError> {
        let mut index = HashMap::new();
        for (i, e) in self.events.iter().enumerate() {
            if index.insert(e.id.as_str(), i).is_some() {
                return Err(IpomsetError::DuplicateEvent(e.id.clone()));
            }
            if !self.alphabet.is_empty() && !self.alphabet.contains(&e.label) {
                return Err(IpomsetError::UnknownLabel(e.label.to_string()));
            }
        }
        let id = |s: &String| {
            index.get(s.as_str()).copied().ok_or_else(|| IpomsetError::UnknownEvent(s.clone()))
        };
        let pairs = |v: &[(String, String)]| -> Result<Vec<(usize, usize)>, IpomsetError> {
            v.iter().map(|(a, b)| Ok((id(a)?, id(b)?))).collect()
        };
        let raw = RawPomset {
            names: self.events.iter().map(|e| e.id.clone()).collect(),
            labels: self.events.iter().map(|e| e.label.clone()).collect(),
            precedence: pairs(&self.precedence)?,
            event_order: pairs(&self.event_order)?,
            sources: self.sources.iter().map(id).collect::<Result<_, _>>()?,
            targets: self.targets.iter().map(id).collect::<Result<_, _>>()?,
        };
        Ipomset::validate(raw)
    }
}

impl Ipomset {
    /// Precedence is written as its Hasse diagram.
    pub fn to_doc(&self) -> PomsetDoc {
        let name = |i: usize| self.names()[i].clone();
        let mut alphabet = self.labels().to_vec();
        alphabet.sort();
        alphabet.dedup();
        PomsetDoc {
            version: None,
            alphabet,
            events: (0..self.len())
                .map(|i| EventDoc { id: name(i), label: self.label(i).clone() })
                .collect(),
            precedence: self.hasse_edges().into_iter().map(|(a, b)| (name(a), name(b))).collect(),
            event_order: self
                .event_order_edges()
                .into_iter()
                .map(|(a, b)| (name(a), name(b)))
                .collect(),
            sources: self.source_events().into_iter().map(name).collect(),
            targets: self.target_events().into_iter().map(name).collect(),
        }
    }
}

impl Serialize for Ipomset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_doc().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Ipomset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        PomsetDoc::deserialize(d)?.to_ipomset().map_err(serde::de::Error::custom)
    }
}
