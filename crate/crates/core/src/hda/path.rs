use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{CellId, Hda, HdaError};
use crate::ipomset::{glue_st, Ipomset, StLetter, Subset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `↑A`: start the events `A` of the next cell.
    Up,
    /// `↓A`: terminate the events `A` of the current cell.
    Down,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub dir: Direction,
    /// Positions in the conclist of the higher-dimensional cell of the step.
    pub subset: Subset,
    pub to: CellId,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub start: CellId,
    pub steps: Vec<Step>,
}

impl Path {
    pub fn empty(start: CellId) -> Self {
        Path { start, steps: Vec::new() }
    }

    pub fn end(&self) -> CellId {
        self.steps.last().map_or(self.start, |s| s.to)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

impl Hda {
    pub fn check_path(&self, path: &Path) -> Result<(), HdaError> {
        let mut cur = path.start;
        for (k, step) in path.steps.iter().enumerate() {
            if step.subset.is_empty() {
                return Err(HdaError::InvalidPath(format!("step {k} has an empty event set")));
            }
            let ok = match step.dir {
                Direction::Up => {
                    step.subset.is_subset_of(self.conclist(step.to).full())
                        && self.lower_face(step.to, step.subset) == cur
                }
                Direction::Down => {
                    step.subset.is_subset_of(self.conclist(cur).full())
                        && self.upper_face(cur, step.subset) == step.to
                }
            };
            if !ok {
                return Err(HdaError::InvalidPath(format!("step {k} does not match the faces")));
            }
            cur = step.to;
        }
        Ok(())
    }

    /// The letters read along a path.
    pub fn path_letters(&self, path: &Path) -> Vec<StLetter> {
        let mut cur = path.start;
        let mut out = Vec::with_capacity(path.len());
        for step in &path.steps {
            out.push(match step.dir {
                Direction::Up => StLetter::starter(self.conclist(step.to).clone(), step.subset),
                Direction::Down => StLetter::terminator(self.conclist(cur).clone(), step.subset),
            });
            cur = step.to;
        }
        out
    }

    /// `ev(α)`: the pomset recognized by a path.
    pub fn ev_path(&self, path: &Path) -> Result<Ipomset, HdaError> {
        self.check_path(path)?;
        Ok(glue_st(self.conclist(path.start), &self.path_letters(path))
            .expect("letters along a valid path are well typed"))
    }

    /// Merges runs of same-direction steps. The result alternates between
    /// up and down steps and has the same endpoints and event pomset.
    pub fn normalize_path(&self, path: &Path) -> Path {
        let mut steps: Vec<Step> = Vec::new();
        let mut cur = path.start;
        let mut before_last = path.start;
        for step in &path.steps {
            match steps.last_mut() {
                Some(last) if last.dir == step.dir => {
                    match step.dir {
                        // δ⁰_A(δ⁰_B(z)) = δ⁰_{B ∪ A'}(z), A' = A shifted past B
                        Direction::Up => {
                            let rest = self.conclist(step.to).full().minus(step.subset);
                            last.subset = step.subset.union(last.subset.expand(rest));
                        }
                        // δ¹_B(δ¹_A(x)) = δ¹_{A ∪ B'}(x)
                        Direction::Down => {
                            let rest = self.conclist(before_last).full().minus(last.subset);
                            last.subset = last.subset.union(step.subset.expand(rest));
                        }
                    }
                    last.to = step.to;
                }
                _ => {
                    before_last = cur;
                    steps.push(step.clone());
                }
            }
            cur = step.to;
        }
        Path { start: path.start, steps }
    }

    /// Calls `f` on every path of at most `max_steps` steps from `start`
    /// (depth first, including the empty path).
    pub fn visit_paths(&self, start: CellId, max_steps: usize, f: &mut impl FnMut(&Path)) {
        let cofaces = self.lower_cofaces();
        let mut path = Path::empty(start);
        self.visit_rec(&cofaces, &mut path, max_steps, f);
    }

    fn visit_rec(
        &self,
        cofaces: &BTreeMap<CellId, Vec<(Subset, CellId)>>,
        path: &mut Path,
        budget: usize,
        f: &mut impl FnMut(&Path),
    ) {
        f(path);
        if budget == 0 {
            return;
        }
        let x = path.end();
        let ups = cofaces.get(&x).into_iter().flatten().map(|&(subset, to)| Step {
            dir: Direction::Up,
            subset,
            to,
        });
        let downs = self.conclist(x).full().subsets().filter(|a| !a.is_empty()).map(|a| Step {
            dir: Direction::Down,
            subset: a,
            to: self.upper_face(x, a),
        });
        for step in ups.chain(downs).collect::<Vec<_>>() {
            path.steps.push(step);
            self.visit_rec(cofaces, path, budget - 1, f);
            path.steps.pop();
        }
    }

    /// For each cell `c`, the pairs `(A, y)` with `A ≠ ∅` and `δ⁰_A(y) = c`.
    pub fn lower_cofaces(&self) -> BTreeMap<CellId, Vec<(Subset, CellId)>> {
        let mut out: BTreeMap<CellId, Vec<(Subset, CellId)>> = BTreeMap::new();
        for y in self.cells() {
            for a in self.conclist(y).full().subsets().filter(|a| !a.is_empty()) {
                out.entry(self.lower_face(y, a)).or_default().push((a, y));
            }
        }
        out
    }
}
