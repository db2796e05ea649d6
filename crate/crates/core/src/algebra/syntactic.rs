use std::collections::HashMap;

use super::category::FiniteCategory;
use super::transition::TransitionCategory;
use crate::ipomset::Ipomset;

/// The quotient of a transition category by the two-sided context
/// congruence of its accepting set.
#[derive(Clone, Debug)]
pub struct SyntacticCategory {
    pub category: FiniteCategory,
    pub accepting: Vec<bool>,
    /// Class of each transition-category morphism.
    pub projection: Vec<usize>,
}

/// `m ~ m'` iff `c;m;d ∈ K ⇔ c;m';d ∈ K` for all composable contexts; the
/// contexts range over the finite transition category, onto which every
/// pomset maps.
pub fn syntactic_category(t: &TransitionCategory) -> SyntacticCategory {
    let cat = &t.category;
    let n_obj = cat.objects().len();
    let into: Vec<Vec<usize>> = (0..n_obj)
        .map(|u| (0..cat.len()).filter(|&c| cat.morphisms()[c].tgt == u).collect())
        .collect();
    let out_of: Vec<Vec<usize>> = (0..n_obj)
        .map(|v| (0..cat.len()).filter(|&d| cat.morphisms()[d].src == v).collect())
        .collect();
    let mut classes: HashMap<(usize, usize, Vec<u64>), usize> = HashMap::new();
    let mut projection = Vec::with_capacity(cat.len());
    for m in 0..cat.len() {
        let (u, v) = (cat.morphisms()[m].src, cat.morphisms()[m].tgt);
        let size = into[u].len() * out_of[v].len();
        let mut sig = vec![0u64; size.div_ceil(64)];
        let mut k = 0;
        for &c in &into[u] {
            let cm = cat.compose(c, m).expect("typed");
            for &d in &out_of[v] {
                let cmd = cat.compose(cm, d).expect("typed");
                if t.accepting[cmd] {
                    sig[k / 64] |= 1 << (k % 64);
                }
                k += 1;
            }
        }
        let next = classes.len();
        projection.push(*classes.entry((u, v, sig)).or_insert(next));
    }
    let category = cat.quotient(&projection).expect("context equivalence is a congruence");
    let mut accepting = vec![false; category.len()];
    for (m, &c) in projection.iter().enumerate() {
        accepting[c] |= t.accepting[m];
    }
    SyntacticCategory { category, accepting, projection }
}

impl SyntacticCategory {
    pub fn recognizes(&self, t: &TransitionCategory, p: &Ipomset) -> bool {
        t.eval(p).is_some_and(|m| self.accepting[self.projection[m]])
    }
}
