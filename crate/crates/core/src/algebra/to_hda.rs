use std::collections::BTreeMap;

use super::presentation::Presentation;
use super::AlgebraError;
use crate::hda::{CellId, Hda, HdaBuilder};
use crate::ipomset::{Conclist, StLetter, Subset};

/// The HDA whose cells are the elements of a coherent presentation, with
/// `δ⁰_A(m) = m − A` and `δ¹_A(m) = m · T{U}{A}`, restricted to cells on
/// accepting paths.
pub fn presentation_to_hda(p: &Presentation) -> Result<Hda, AlgebraError> {
    Ok(presentation_to_hda_untrimmed(p)?.trim())
}

/// As [`presentation_to_hda`] but keeping every element. Undefined faces
/// go to a dead cell of the right type, one per conclist.
pub fn presentation_to_hda_untrimmed(p: &Presentation) -> Result<Hda, AlgebraError> {
    if let Some(e) = p.elements().iter().find(|e| !e.src.is_empty()) {
        return Err(AlgebraError::SourceNotEmpty(e.name.clone()));
    }
    if !p.has_lower_faces() {
        return Err(AlgebraError::NotCoherent("no lower faces".into()));
    }
    let mut b = HdaBuilder::new();
    let cells: Vec<CellId> =
        p.elements().iter().map(|e| b.cell(&e.name, e.tgt.clone())).collect();
    let mut dead: BTreeMap<Conclist, CellId> = BTreeMap::new();
    let mut pending = Vec::new();
    let mut cell_of = |m: Option<usize>, u: Conclist, b: &mut HdaBuilder, pending: &mut Vec<Conclist>| match m {
        Some(m) => cells[m],
        None => *dead.entry(u.clone()).or_insert_with(|| {
            pending.push(u.clone());
            b.cell(&format!("dead{u}"), u)
        }),
    };
    for (m, e) in p.elements().iter().enumerate() {
        let u = &e.tgt;
        for i in 0..u.len() {
            let a = Subset::singleton(i);
            let face = u.remove(a);
            let lo = cell_of(p.lower_face(Some(m), a), face.clone(), &mut b, &mut pending);
            let up = cell_of(p.act(Some(m), &StLetter::terminator(u.clone(), a)), face, &mut b, &mut pending);
            b.lower(cells[m], i, lo).upper(cells[m], i, up);
        }
    }
    while let Some(u) = pending.pop() {
        let x = cell_of(None, u.clone(), &mut b, &mut pending);
        for i in 0..u.len() {
            let d = cell_of(None, u.remove(Subset::singleton(i)), &mut b, &mut pending);
            b.lower(x, i, d).upper(x, i, d);
        }
    }
    if let Some(i) = p.initial(&Conclist::empty()) {
        b.initial(cells[i]);
    }
    for &m in p.accepting() {
        b.accepting(cells[m]);
    }
    Ok(b.build()?)
}
