use std::collections::HashMap;

use super::category::FiniteCategory;
use crate::hda::{CellId, Hda};
use crate::ipomset::{Conclist, Ipomset, StKind, StLetter};
use crate::relation::{Relation, RelationClosure};

/// The finite category of relations `t(P) ⊆ X[U] × X[V]` of an HDA `X`,
/// where `(x, y) ∈ t(P)` iff some path from `x` to `y` recognizes `P`.
///
/// Objects are the cell types of `X`. Each pair of objects also gets the
/// empty relation, the value of every pomset with no path.
#[derive(Clone, Debug)]
pub struct TransitionCategory {
    pub closure: RelationClosure,
    pub category: FiniteCategory,
    /// Membership of each morphism in `K`: relations meeting `⊥ × ⊤`.
    pub accepting: Vec<bool>,
    cells: Vec<Vec<CellId>>,
    letters: HashMap<StLetter, usize>,
}

pub fn transition_category(x: &Hda) -> TransitionCategory {
    let closure = x.relation_closure();
    let category = FiniteCategory::from_closure(&closure);
    let cells: Vec<Vec<CellId>> =
        closure.objects.iter().map(|u| x.cells_of_type(u).to_vec()).collect();
    let accepting = closure
        .morphisms
        .iter()
        .map(|m| {
            m.rel.pairs().any(|(i, j)| {
                x.initial().contains(&cells[m.src][i]) && x.accepting().contains(&cells[m.tgt][j])
            })
        })
        .collect();
    let letters = closure
        .generators
        .iter()
        .map(|g| {
            let id = closure.lookup(g.src, g.tgt, &g.rel).expect("generators are morphisms");
            (g.letter.clone(), id)
        })
        .collect();
    TransitionCategory { closure, category, accepting, cells, letters }
}

impl TransitionCategory {
    pub fn object(&self, u: &Conclist) -> Option<usize> {
        self.closure.object_index(u)
    }

    pub fn cells(&self, object: usize) -> &[CellId] {
        &self.cells[object]
    }

    pub fn relation(&self, m: usize) -> &Relation {
        &self.closure.morphisms[m].rel
    }

    fn zero(&self, u: usize, v: usize) -> usize {
        let empty = Relation::empty(self.closure.sizes[u], self.closure.sizes[v]);
        self.closure.lookup(u, v, &empty).expect("zero morphisms are present")
    }

    /// Image of a single letter, or `None` when one of its interfaces is
    /// not a cell type.
    pub fn letter(&self, l: &StLetter) -> Option<usize> {
        let (u, v) = (self.object(&l.source())?, self.object(&l.target())?);
        if l.kind() == StKind::Identity {
            return Some(self.category.identity(u));
        }
        Some(self.letters.get(l).copied().unwrap_or_else(|| self.zero(u, v)))
    }

    pub fn eval_word(&self, source: &Conclist, letters: &[StLetter]) -> Option<usize> {
        let start = self.category.identity(self.object(source)?);
        letters.iter().try_fold(start, |m, l| {
            let g = self.letter(l)?;
            self.category.compose(m, g)
        })
    }

    /// `F(P)`, evaluated along the sparse decomposition.
    pub fn eval(&self, p: &Ipomset) -> Option<usize> {
        let w = p.st_decompose_sparse();
        self.eval_word(w.source(), w.letters())
    }

    pub fn in_k(&self, m: usize) -> bool {
        self.accepting[m]
    }

    pub fn recognizes(&self, p: &Ipomset) -> bool {
        self.eval(p).is_some_and(|m| self.accepting[m])
    }
}
