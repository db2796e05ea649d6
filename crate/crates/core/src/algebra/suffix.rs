use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use super::presentation::{ElemId, Element, Presentation};
use crate::hda::{CellSet, Hda};
use crate::ipomset::Conclist;
use crate::st::StAutomaton;

/// The presentation of `P ↦ P\L` for the language `L` of an HDA, together
/// with the map from reachable cell sets to elements.
#[derive(Clone, Debug)]
pub struct SuffixPresentation {
    pub presentation: Presentation,
    classes: HashMap<(Conclist, CellSet), ElemId>,
}

impl SuffixPresentation {
    /// The element reached by pomsets with source `src` whose runs end in
    /// exactly `cells`; `None` for unreachable sets and dead suffixes.
    pub fn element_of(&self, src: &Conclist, cells: &CellSet) -> Option<ElemId> {
        self.classes.get(&(src.clone(), cells.clone())).copied()
    }

    /// Every reachable live cell set with its source and element.
    pub fn classes(&self) -> impl Iterator<Item = (&Conclist, &CellSet, ElemId)> {
        self.classes.iter().map(|((u, s), &m)| (u, s, m))
    }
}

/// States of the determinized ST-automaton, merged when they accept the
/// same sparse suffixes. Sets with no accepted suffix are dead.
pub fn suffix_presentation(x: &Hda) -> SuffixPresentation {
    let a = StAutomaton::from_hda(x);
    let det = a.determinize_reachable();
    let d = &det.automaton;
    let empty = CellSet::new();
    let live: Vec<bool> =
        det.subsets.iter().map(|s| a.distinguish_sets(s, &empty).is_some()).collect();

    let mut class = vec![usize::MAX; d.len()];
    let mut reps: Vec<usize> = Vec::new();
    for i in (0..d.len()).filter(|&i| live[i]) {
        let found = reps.iter().position(|&r| {
            d.label(r) == d.label(i) && a.distinguish_sets(&det.subsets[r], &det.subsets[i]).is_none()
        });
        class[i] = found.unwrap_or_else(|| {
            reps.push(i);
            reps.len() - 1
        });
    }

    let multi_source = d.initial().iter().map(|&q| d.label(q)).collect::<BTreeSet<_>>().len() > 1;
    let mut ids: BTreeMap<(Conclist, usize), ElemId> = BTreeMap::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut elements: Vec<Element> = Vec::new();
    let mut classes = HashMap::new();
    let mut actions = BTreeMap::new();
    let mut initials = BTreeMap::new();
    let mut accepting = BTreeSet::new();
    for &start in d.initial() {
        let src = d.label(start).clone();
        let mut elem = |i: usize, elements: &mut Vec<Element>, members: &mut Vec<Vec<usize>>| {
            *ids.entry((src.clone(), class[i])).or_insert_with(|| {
                elements.push(Element { name: String::new(), src: src.clone(), tgt: d.label(i).clone() });
                members.push(Vec::new());
                elements.len() - 1
            })
        };
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            if !live[i] {
                continue;
            }
            let m = elem(i, &mut elements, &mut members);
            if !members[m].contains(&i) {
                members[m].push(i);
            }
            classes.insert((src.clone(), det.subsets[i].clone()), m);
            if d.finals().contains(&i) {
                accepting.insert(m);
            }
            if i == start {
                initials.insert(src.clone(), m);
            }
            for (l, targets) in d.transitions().filter(|t| t.0 == i).map(|(_, l, j)| (l.clone(), j)) {
                let j = targets;
                if live[j] {
                    let n = elem(j, &mut elements, &mut members);
                    actions.insert((m, l), n);
                }
                if seen.insert(j) {
                    queue.push_back(j);
                }
            }
        }
    }
    for (m, e) in elements.iter_mut().enumerate() {
        let names: Vec<&str> = members[m].iter().map(|&i| d.name(i)).collect();
        e.name = names.join("|");
        if multi_source {
            e.name = format!("{}/{}", e.src, e.name);
        }
    }
    let presentation = Presentation::new(elements, actions, initials, accepting, None)
        .expect("determinized transitions are typed");
    SuffixPresentation { presentation, classes }
}
