use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{StAutomaton, StError};
use crate::ipomset::{Conclist, StLetter};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StStateDoc {
    pub id: String,
    pub conclist: Conclist,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StTransitionDoc {
    pub from: String,
    pub letter: StLetter,
    pub to: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StAutomatonDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<u32>,
    pub states: Vec<StStateDoc>,
    #[serde(default)]
    pub initial: Vec<String>,
    #[serde(default, rename = "final")]
    pub finals: Vec<String>,
    #[serde(default)]
    pub transitions: Vec<StTransitionDoc>,
}

impl StAutomatonDoc {
    pub fn to_automaton(&self) -> Result<StAutomaton, StError> {
        let index: HashMap<&str, usize> =
            self.states.iter().enumerate().map(|(i, s)| (s.id.as_str(), i)).collect();
        let id = |n: &String| index.get(n.as_str()).copied().ok_or_else(|| StError::UnknownState(n.clone()));
        let transitions = self
            .transitions
            .iter()
            .map(|t| Ok((id(&t.from)?, t.letter.clone(), id(&t.to)?)))
            .collect::<Result<_, StError>>()?;
        StAutomaton::new(
            self.states.iter().map(|s| (s.id.clone(), s.conclist.clone())).collect(),
            self.initial.iter().map(id).collect::<Result<_, _>>()?,
            self.finals.iter().map(id).collect::<Result<_, _>>()?,
            transitions,
        )
    }
}

impl StAutomaton {
    pub fn to_doc(&self) -> StAutomatonDoc {
        let name = |q: usize| self.name(q).to_string();
        StAutomatonDoc {
            version: Some(1),
            states: (0..self.len())
                .map(|q| StStateDoc { id: name(q), conclist: self.label(q).clone() })
                .collect(),
            initial: self.initial().iter().map(|&q| name(q)).collect(),
            finals: self.finals().iter().map(|&q| name(q)).collect(),
            transitions: self
                .transitions()
                .map(|(p, l, q)| StTransitionDoc { from: name(p), letter: l.clone(), to: name(q) })
                .collect(),
        }
    }
}

impl Serialize for StAutomaton {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_doc().serialize(s)
    }
}

impl<'de> Deserialize<'de> for StAutomaton {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        StAutomatonDoc::deserialize(d)?.to_automaton().map_err(serde::de::Error::custom)
    }
}
