//! Boolean relations between finite sets and their closure under
//! composition with a set of generators.

use std::collections::HashMap;
use std::fmt;

use crate::ipomset::{Conclist, StLetter};

/// A relation `R ⊆ {0..rows} × {0..cols}` stored as packed bit rows.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    rows: usize,
    cols: usize,
    bits: Vec<u64>,
}

impl Relation {
    pub fn empty(rows: usize, cols: usize) -> Self {
        Relation { rows, cols, bits: vec![0; rows * cols.div_ceil(64)] }
    }

    pub fn identity(n: usize) -> Self {
        let mut r = Self::empty(n, n);
        for i in 0..n {
            r.insert(i, i);
        }
        r
    }

    fn stride(&self) -> usize {
        self.cols.div_ceil(64)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn insert(&mut self, i: usize, j: usize) {
        let s = self.stride();
        self.bits[i * s + j / 64] |= 1 << (j % 64);
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        let s = self.stride();
        self.bits[i * s + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.rows).flat_map(move |i| (0..self.cols).filter(move |&j| self.contains(i, j)).map(move |j| (i, j)))
    }

    /// Relational composition `self ; other` (first `self`, then `other`).
    pub fn then(&self, other: &Relation) -> Relation {
        assert_eq!(self.cols, other.rows, "relation shapes do not compose");
        let mut out = Relation::empty(self.rows, other.cols);
        let (s, t) = (self.stride(), other.stride());
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.bits[i * s + k / 64] >> (k % 64) & 1 == 1 {
                    for w in 0..t {
                        out.bits[i * t + w] |= other.bits[k * t + w];
                    }
                }
            }
        }
        out
    }

    /// Image of a set of row indices.
    pub fn image(&self, from: impl IntoIterator<Item = usize>) -> Vec<usize> {
        let mut hit = vec![false; self.cols];
        for i in from {
            for (j, h) in hit.iter_mut().enumerate() {
                *h |= self.contains(i, j);
            }
        }
        (0..self.cols).filter(|&j| hit[j]).collect()
    }

    /// Stabilization data of the power sequence `r, r², r³, ...`: the least
    /// `n ≥ 1` with `rⁿ` on the cycle and the cycle length.
    pub fn power_cycle(&self) -> (usize, usize) {
        assert_eq!(self.rows, self.cols, "powers need an endorelation");
        let mut seen: HashMap<Relation, usize> = HashMap::new();
        let mut cur = self.clone();
        let mut k = 1;
        loop {
            if let Some(&j) = seen.get(&cur) {
                return (j, k - j);
            }
            let next = cur.then(self);
            seen.insert(cur, k);
            cur = next;
            k += 1;
        }
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

/// A generating relation between two objects of a [`RelationClosure`].
#[derive(Clone, Debug)]
pub struct Generator {
    pub letter: StLetter,
    pub src: usize,
    pub tgt: usize,
    pub rel: Relation,
}

#[derive(Clone, Debug)]
pub struct Morphism {
    pub src: usize,
    pub tgt: usize,
    pub rel: Relation,
    /// Generator indices whose composite is this relation; empty for
    /// identities, `None` for the added zero relations.
    pub word: Option<Vec<usize>>,
}

/// All relations obtained by composing generators, starting from the
/// identity at each object, plus the empty relation between every pair of
/// objects.
#[derive(Clone, Debug)]
pub struct RelationClosure {
    pub objects: Vec<Conclist>,
    pub sizes: Vec<usize>,
    pub generators: Vec<Generator>,
    pub morphisms: Vec<Morphism>,
    index: HashMap<(usize, usize, Relation), usize>,
}

/// A non-trivial power cycle found among the morphisms of a closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterWitness {
    pub object: Conclist,
    pub word: Vec<StLetter>,
    /// Least exponent on the cycle.
    pub index: usize,
    pub period: usize,
}

impl RelationClosure {
    pub fn build(objects: Vec<Conclist>, sizes: Vec<usize>, generators: Vec<Generator>) -> Self {
        let mut c = RelationClosure {
            objects,
            sizes,
            generators,
            morphisms: Vec::new(),
            index: HashMap::new(),
        };
        let mut by_src: Vec<Vec<usize>> = vec![Vec::new(); c.objects.len()];
        for (g, gen) in c.generators.iter().enumerate() {
            by_src[gen.src].push(g);
        }
        for u in 0..c.objects.len() {
            let start = c.morphisms.len();
            c.add(u, u, Relation::identity(c.sizes[u]), Some(Vec::new()));
            let mut queue = start;
            while queue < c.morphisms.len() {
                let m = c.morphisms[queue].clone();
                queue += 1;
                for &g in &by_src[m.tgt] {
                    let gen = &c.generators[g];
                    let rel = m.rel.then(&gen.rel);
                    let tgt = gen.tgt;
                    let mut word = m.word.clone().expect("closure words are defined");
                    word.push(g);
                    c.add(u, tgt, rel, Some(word));
                }
            }
        }
        for u in 0..c.objects.len() {
            for v in 0..c.objects.len() {
                c.add(u, v, Relation::empty(c.sizes[u], c.sizes[v]), None);
            }
        }
        c
    }

    fn add(&mut self, src: usize, tgt: usize, rel: Relation, word: Option<Vec<usize>>) -> usize {
        let key = (src, tgt, rel);
        if let Some(&id) = self.index.get(&key) {
            return id;
        }
        let id = self.morphisms.len();
        self.morphisms.push(Morphism { src, tgt, rel: key.2.clone(), word });
        self.index.insert(key, id);
        id
    }

    pub fn lookup(&self, src: usize, tgt: usize, rel: &Relation) -> Option<usize> {
        self.index.get(&(src, tgt, rel.clone())).copied()
    }

    pub fn object_index(&self, c: &Conclist) -> Option<usize> {
        self.objects.iter().position(|o| o == c)
    }

    pub fn word_letters(&self, m: usize) -> Vec<StLetter> {
        self.morphisms[m]
            .word
            .iter()
            .flatten()
            .map(|&g| self.generators[g].letter.clone())
            .collect()
    }

    /// The first endomorphism (in discovery order) whose powers cycle with
    /// period greater than one.
    pub fn counter(&self) -> Option<CounterWitness> {
        self.morphisms.iter().enumerate().find_map(|(id, m)| {
            if m.src != m.tgt {
                return None;
            }
            let (index, period) = m.rel.power_cycle();
            (period > 1).then(|| CounterWitness {
                object: self.objects[m.src].clone(),
                word: self.word_letters(id),
                index,
                period,
            })
        })
    }
}
