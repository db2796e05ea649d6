use crate::ipomset::Conclist;
use crate::relation::RelationClosure;

const UNDEFINED: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismInfo {
    pub src: usize,
    pub tgt: usize,
    pub name: String,
}

/// A finite category with conclists as objects and composition given by a
/// table. Composition is written diagrammatically: `compose(f, g)` is
/// `f` followed by `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<Conclist>,
    morphisms: Vec<MorphismInfo>,
    identities: Vec<usize>,
    table: Vec<u32>,
}

/// Stabilization data of an endomorphism whose powers cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryWitness {
    pub morphism: usize,
    pub object: Conclist,
    pub index: usize,
    pub period: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AperiodicityReport {
    /// Largest exponent `n` needed for `xⁿ = xⁿ⁺¹` over all endomorphisms
    /// with period one.
    pub index: usize,
    pub witness: Option<CategoryWitness>,
}

impl AperiodicityReport {
    pub fn is_aperiodic(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CategoryLawViolation {
    Identity { morphism: usize },
    Associativity { f: usize, g: usize, h: usize },
    Typing { f: usize, g: usize },
}

impl FiniteCategory {
    /// Builds a category from morphisms and a composition function defined
    /// on every composable pair.
    pub fn from_fn(
        objects: Vec<Conclist>,
        morphisms: Vec<MorphismInfo>,
        identities: Vec<usize>,
        compose: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let m = morphisms.len();
        let mut table = vec![UNDEFINED; m * m];
        for f in 0..m {
            for g in 0..m {
                if morphisms[f].tgt == morphisms[g].src {
                    table[f * m + g] = compose(f, g) as u32;
                }
            }
        }
        FiniteCategory { objects, morphisms, identities, table }
    }

    /// The category of all relations in a closure; composition is relational
    /// composition looked up in the closure.
    pub fn from_closure(c: &RelationClosure) -> Self {
        let morphisms = c
            .morphisms
            .iter()
            .enumerate()
            .map(|(i, m)| MorphismInfo {
                src: m.src,
                tgt: m.tgt,
                name: match &m.word {
                    None => format!("0:{}→{}", c.objects[m.src], c.objects[m.tgt]),
                    Some(w) if w.is_empty() => format!("id{}", c.objects[m.src]),
                    Some(_) => {
                        let letters: Vec<String> =
                            c.word_letters(i).iter().map(ToString::to_string).collect();
                        letters.join(" ")
                    }
                },
            })
            .collect();
        let identities = (0..c.objects.len())
            .map(|u| {
                c.lookup(u, u, &crate::relation::Relation::identity(c.sizes[u]))
                    .expect("identity present")
            })
            .collect();
        FiniteCategory::from_fn(c.objects.clone(), morphisms, identities, |f, g| {
            let (mf, mg) = (&c.morphisms[f], &c.morphisms[g]);
            c.lookup(mf.src, mg.tgt, &mf.rel.then(&mg.rel))
                .expect("closure is closed under composition")
        })
    }

    /// A category with only identity morphisms.
    pub fn discrete(objects: Vec<Conclist>) -> Self {
        let morphisms = (0..objects.len())
            .map(|u| MorphismInfo { src: u, tgt: u, name: format!("id{}", objects[u]) })
            .collect();
        let identities = (0..objects.len()).collect();
        FiniteCategory::from_fn(objects, morphisms, identities, |f, _| f)
    }

    pub fn objects(&self) -> &[Conclist] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[MorphismInfo] {
        &self.morphisms
    }

    pub fn len(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.morphisms.is_empty()
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identities[object]
    }

    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        let v = self.table[f * self.len() + g];
        (v != UNDEFINED).then_some(v as usize)
    }

    pub fn hom(&self, u: usize, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&m| self.morphisms[m].src == u && self.morphisms[m].tgt == v)
    }

    pub fn endomorphisms(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&m| self.morphisms[m].src == self.morphisms[m].tgt)
    }

    pub fn power_cycle(&self, x: usize) -> (usize, usize) {
        let mut seen = std::collections::HashMap::new();
        let mut cur = x;
        let mut k = 1;
        loop {
            if let Some(&j) = seen.get(&cur) {
                return (j, k - j);
            }
            seen.insert(cur, k);
            cur = self.compose(cur, x).expect("endomorphisms compose");
            k += 1;
        }
    }

    /// Whether every endomorphism satisfies `xⁿ = xⁿ⁺¹` for some `n`.
    pub fn aperiodicity(&self) -> AperiodicityReport {
        let mut index = 1;
        for x in self.endomorphisms() {
            let (n, period) = self.power_cycle(x);
            if period > 1 {
                return AperiodicityReport {
                    index: n,
                    witness: Some(CategoryWitness {
                        morphism: x,
                        object: self.objects[self.morphisms[x].src].clone(),
                        index: n,
                        period,
                    }),
                };
            }
            index = index.max(n);
        }
        AperiodicityReport { index, witness: None }
    }

    pub fn is_aperiodic(&self) -> bool {
        self.aperiodicity().is_aperiodic()
    }

    /// Identity, typing and associativity over all composable triples.
    pub fn check_laws(&self) -> Result<(), CategoryLawViolation> {
        for f in 0..self.len() {
            let MorphismInfo { src, tgt, .. } = self.morphisms[f];
            if self.compose(self.identities[src], f) != Some(f)
                || self.compose(f, self.identities[tgt]) != Some(f)
            {
                return Err(CategoryLawViolation::Identity { morphism: f });
            }
        }
        for f in 0..self.len() {
            for g in 0..self.len() {
                let Some(fg) = self.compose(f, g) else { continue };
                if self.morphisms[fg].src != self.morphisms[f].src
                    || self.morphisms[fg].tgt != self.morphisms[g].tgt
                {
                    return Err(CategoryLawViolation::Typing { f, g });
                }
                for h in 0..self.len() {
                    let Some(fg_h) = self.compose(fg, h) else { continue };
                    let gh = self.compose(g, h).expect("typed");
                    if self.compose(f, gh) != Some(fg_h) {
                        return Err(CategoryLawViolation::Associativity { f, g, h });
                    }
                }
            }
        }
        Ok(())
    }

    /// Quotient by a partition of the morphisms into classes `class[m]`,
    /// assumed to be a congruence (checked on every composable pair).
    pub fn quotient(&self, class: &[usize]) -> Option<FiniteCategory> {
        let k = class.iter().max().map_or(0, |m| m + 1);
        let mut rep = vec![usize::MAX; k];
        for (m, &c) in class.iter().enumerate() {
            if rep[c] == usize::MAX {
                rep[c] = m;
            }
        }
        for f in 0..self.len() {
            for g in 0..self.len() {
                if let Some(fg) = self.compose(f, g) {
                    let r = self.compose(rep[class[f]], rep[class[g]])?;
                    if class[r] != class[fg] {
                        return None;
                    }
                }
            }
        }
        let morphisms = rep.iter().map(|&r| self.morphisms[r].clone()).collect();
        let identities = self.identities.iter().map(|&i| class[i]).collect();
        Some(FiniteCategory::from_fn(self.objects.clone(), morphisms, identities, |f, g| {
            class[self.compose(rep[f], rep[g]).expect("typed")]
        }))
    }
}
