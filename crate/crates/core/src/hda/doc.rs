use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Hda, HdaBuilder, HdaError};
use crate::ipomset::Conclist;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellDoc {
    pub id: String,
    pub conclist: Conclist,
}

/// JSON form of an HDA. Faces are keyed by cell id, then by event index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HdaDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<u32>,
    pub cells: Vec<CellDoc>,
    #[serde(default)]
    pub lower: BTreeMap<String, BTreeMap<usize, String>>,
    #[serde(default)]
    pub upper: BTreeMap<String, BTreeMap<usize, String>>,
    #[serde(default)]
    pub initial: Vec<String>,
    #[serde(default)]
    pub accepting: Vec<String>,
}

impl HdaDoc {
    pub fn to_hda(&self) -> Result<Hda, HdaError> {
        let mut b = HdaBuilder::new();
        for c in &self.cells {
            b.cell(&c.id, c.conclist.clone());
        }
        for (upper, table) in [(false, &self.lower), (true, &self.upper)] {
            for (cell, faces) in table {
                let x = b.id(cell)?;
                for (&e, face) in faces {
                    let f = b.id(face)?;
                    b.face(x, e, upper, f);
                }
            }
        }
        for c in &self.initial {
            let x = b.id(c)?;
            b.initial(x);
        }
        for c in &self.accepting {
            let x = b.id(c)?;
            b.accepting(x);
        }
        b.build()
    }
}

impl Hda {
    pub fn to_doc(&self) -> HdaDoc {
        let faces = |upper: bool| {
            self.cells()
                .filter(|&x| !self.conclist(x).is_empty())
                .map(|x| {
                    let row = (0..self.conclist(x).len())
                        .map(|e| (e, self.name(self.single_face(x, e, upper)).to_string()))
                        .collect();
                    (self.name(x).to_string(), row)
                })
                .collect()
        };
        HdaDoc {
            version: Some(1),
            cells: self
                .cells()
                .map(|x| CellDoc { id: self.name(x).to_string(), conclist: self.conclist(x).clone() })
                .collect(),
            lower: faces(false),
            upper: faces(true),
            initial: self.initial().iter().map(|&x| self.name(x).to_string()).collect(),
            accepting: self.accepting().iter().map(|&x| self.name(x).to_string()).collect(),
        }
    }
}

impl Serialize for Hda {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_doc().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Hda {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        HdaDoc::deserialize(d)?.to_hda().map_err(serde::de::Error::custom)
    }
}
