use std::collections::HashMap;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("table is not square or has an out-of-range entry")]
    Malformed,
    #[error("unit law fails at element {0}")]
    Unit(usize),
    #[error("associativity fails at ({0}, {1}, {2})")]
    Associativity(usize, usize, usize),
    #[error("partition is not a congruence: ({0}, {1}) and ({2}, {3}) are related but their products are not")]
    NotCongruence(usize, usize, usize, usize),
}

/// An element whose powers cycle with period above one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidWitness {
    pub element: usize,
    pub index: usize,
    pub period: usize,
}

/// A finite monoid given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMonoid {
    table: Vec<Vec<usize>>,
    unit: usize,
    /// Generator words reaching each element (generator indices), when the
    /// monoid was built from generators.
    words: Vec<Vec<usize>>,
}

impl FiniteMonoid {
    pub fn from_table(table: Vec<Vec<usize>>, unit: usize) -> Result<Self, MonoidError> {
        let n = table.len();
        if unit >= n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(MonoidError::Malformed);
        }
        let m = FiniteMonoid { words: vec![Vec::new(); n], table, unit };
        m.check()?;
        Ok(m)
    }

    /// The cyclic group `ℤ/n`.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteMonoid { table, unit: 0, words: vec![Vec::new(); n] }
    }

    /// The monoid of maps on `0..points` generated by `gens` under
    /// left-to-right composition (`f·g` applies `f` first).
    pub fn from_transformations(points: usize, gens: &[Vec<usize>]) -> Self {
        let id: Vec<usize> = (0..points).collect();
        let mut elems = vec![id.clone()];
        let mut words = vec![Vec::new()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut i = 0;
        while i < elems.len() {
            for (g, gen) in gens.iter().enumerate() {
                let next: Vec<usize> = elems[i].iter().map(|&q| gen[q]).collect();
                if !index.contains_key(&next) {
                    index.insert(next.clone(), elems.len());
                    let mut w = words[i].clone();
                    w.push(g);
                    words.push(w);
                    elems.push(next);
                }
            }
            i += 1;
        }
        let table = elems
            .iter()
            .map(|f| {
                elems
                    .iter()
                    .map(|g| index[&f.iter().map(|&q| g[q]).collect::<Vec<_>>()])
                    .collect()
            })
            .collect();
        FiniteMonoid { table, unit: 0, words }
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn word(&self, a: usize) -> &[usize] {
        &self.words[a]
    }

    /// Unit and associativity laws over the whole table.
    pub fn check(&self) -> Result<(), MonoidError> {
        let n = self.len();
        for a in 0..n {
            if self.mul(self.unit, a) != a || self.mul(a, self.unit) != a {
                return Err(MonoidError::Unit(a));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(MonoidError::Associativity(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    /// Least `n ≥ 1` with `xⁿ` on the cycle of powers, and the cycle length.
    pub fn power_cycle(&self, x: usize) -> (usize, usize) {
        let mut seen = HashMap::new();
        let mut cur = x;
        let mut k = 1;
        loop {
            if let Some(&j) = seen.get(&cur) {
                return (j, k - j);
            }
            seen.insert(cur, k);
            cur = self.mul(cur, x);
            k += 1;
        }
    }

    /// `Ok(n)` with the largest stabilization index if every element
    /// satisfies `xⁿ = xⁿ⁺¹`, otherwise the first element with a longer cycle.
    pub fn aperiodicity(&self) -> Result<usize, MonoidWitness> {
        let mut worst = 1;
        for x in 0..self.len() {
            let (index, period) = self.power_cycle(x);
            if period > 1 {
                return Err(MonoidWitness { element: x, index, period });
            }
            worst = worst.max(index);
        }
        Ok(worst)
    }

    pub fn is_aperiodic(&self) -> bool {
        self.aperiodicity().is_ok()
    }

    /// Quotient by the partition `class[x]`, which must be a congruence.
    pub fn quotient(&self, class: &[usize]) -> Result<FiniteMonoid, MonoidError> {
        let k = class.iter().max().map_or(0, |m| m + 1);
        let mut rep = vec![usize::MAX; k];
        for (x, &c) in class.iter().enumerate() {
            if rep[c] == usize::MAX {
                rep[c] = x;
            }
        }
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                let (ra, rb) = (rep[class[a]], rep[class[b]]);
                if class[self.mul(a, b)] != class[self.mul(ra, rb)] {
                    return Err(MonoidError::NotCongruence(a, b, ra, rb));
                }
            }
        }
        let table = (0..k)
            .map(|c| (0..k).map(|d| class[self.mul(rep[c], rep[d])]).collect())
            .collect();
        let words = rep.iter().map(|&r| self.words[r].clone()).collect();
        Ok(FiniteMonoid { table, unit: class[self.unit], words })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_group_is_not_aperiodic() {
        let z2 = FiniteMonoid::cyclic(2);
        z2.check().unwrap();
        assert_eq!(z2.aperiodicity(), Err(MonoidWitness { element: 1, index: 1, period: 2 }));
        assert!(FiniteMonoid::cyclic(1).is_aperiodic());
    }

    #[test]
    fn transformation_closure() {
        // a constant map and a swap on two points
        let m = FiniteMonoid::from_transformations(2, &[vec![0, 0], vec![1, 0]]);
        m.check().unwrap();
        assert_eq!(m.len(), 4);
        assert!(!m.is_aperiodic());
        let flat = FiniteMonoid::from_transformations(2, &[vec![0, 0]]);
        assert!(flat.is_aperiodic());
    }

    #[test]
    fn quotient_requires_congruence() {
        let z4 = FiniteMonoid::cyclic(4);
        let z2 = z4.quotient(&[0, 1, 0, 1]).unwrap();
        assert_eq!(z2.len(), 2);
        assert!(matches!(z4.quotient(&[0, 1, 1, 0]), Err(MonoidError::NotCongruence(..))));
    }

    #[test]
    fn table_validation() {
        assert!(FiniteMonoid::from_table(vec![vec![0, 1], vec![1, 0]], 0).is_ok());
        assert!(matches!(
            FiniteMonoid::from_table(vec![vec![0, 1], vec![1, 1]], 1),
            Err(MonoidError::Unit(_))
        ));
    }
}
