use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::Quandle;
use crate::error::{Error, Result};

/// Largest quandle for which the full congruence lattice is computed.
pub const CONGRUENCE_CAP: usize = 64;

/// A partition of `0..n`, classes numbered in order of their least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Congruence {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl Congruence {
    /// Normalizes any class labelling.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut renum = std::collections::HashMap::new();
        let mut class_of = Vec::with_capacity(labels.len());
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (x, &l) in labels.iter().enumerate() {
            let c = *renum.entry(l).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            class_of.push(c);
            classes[c].push(x);
        }
        Congruence { class_of, classes }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Self {
        let mut labels = vec![usize::MAX; n];
        for (i, b) in blocks.iter().enumerate() {
            for &x in b {
                labels[x] = i;
            }
        }
        // Uncovered points become singletons.
        for (x, l) in labels.iter_mut().enumerate() {
            if *l == usize::MAX {
                *l = blocks.len() + x;
            }
        }
        Congruence::from_labels(&labels)
    }

    pub fn discrete(n: usize) -> Self {
        Congruence::from_labels(&(0..n).collect::<Vec<_>>())
    }

    pub fn total(n: usize) -> Self {
        Congruence::from_labels(&vec![0; n])
    }

    pub fn size(&self) -> usize {
        self.class_of.len()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn labels(&self) -> &[usize] {
        &self.class_of
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    pub fn block(&self, x: usize) -> &[usize] {
        &self.classes[self.class_of[x]]
    }

    pub fn is_discrete(&self) -> bool {
        self.classes.len() == self.size()
    }

    pub fn is_total(&self) -> bool {
        self.classes.len() <= 1
    }

    /// Sorted multiset of block sizes.
    pub fn block_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.classes.iter().map(Vec::len).collect();
        v.sort_unstable();
        v
    }

    /// `self ≤ other`: every block of `self` sits inside a block of `other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        self.classes
            .iter()
            .all(|b| b.iter().all(|&x| other.related(x, b[0])))
    }

    pub fn meet(&self, other: &Congruence) -> Congruence {
        let labels: Vec<usize> = (0..self.size())
            .map(|x| self.class_of[x] * other.num_classes() + other.class_of[x])
            .collect();
        Congruence::from_labels(&labels)
    }

    pub fn join(&self, other: &Congruence) -> Congruence {
        let mut uf = UnionFind::new(self.size());
        for b in self.classes.iter().chain(other.classes.iter()) {
            for &x in &b[1..] {
                uf.union(b[0], x);
            }
        }
        uf.into_congruence()
    }

    /// Compatibility with `∗` and `\` in both arguments.
    pub fn is_congruence_of(&self, q: &Quandle) -> bool {
        self.compatibility_failure(q).is_none()
    }

    pub(crate) fn compatibility_failure(&self, q: &Quandle) -> Option<String> {
        if self.size() != q.size() {
            return Some("size mismatch".into());
        }
        for b in &self.classes {
            let a0 = b[0];
            for &a in &b[1..] {
                for c in 0..q.size() {
                    if !self.related(q.op(a0, c), q.op(a, c)) {
                        return Some(format!("{a0}∗{c} vs {a}∗{c}"));
                    }
                    if !self.related(q.op(c, a0), q.op(c, a)) {
                        return Some(format!("{c}∗{a0} vs {c}∗{a}"));
                    }
                    if !self.related(q.ldiv(a0, c), q.ldiv(a, c)) {
                        return Some(format!("{a0}\\{c} vs {a}\\{c}"));
                    }
                    if !self.related(q.ldiv(c, a0), q.ldiv(c, a)) {
                        return Some(format!("{c}\\{a0} vs {c}\\{a}"));
                    }
                }
            }
        }
        None
    }

    pub fn validate(&self, q: &Quandle) -> Result<()> {
        match self.compatibility_failure(q) {
            Some(w) => Err(Error::NotCongruence(w)),
            None => Ok(()),
        }
    }

    /// Smallest congruence containing the pair `(a, b)`.
    pub fn principal(q: &Quandle, a: usize, b: usize) -> Congruence {
        Congruence::generated(q, &[(a, b)])
    }

    /// Smallest congruence containing all `pairs`.
    pub fn generated(q: &Quandle, pairs: &[(usize, usize)]) -> Congruence {
        let n = q.size();
        let mut uf = UnionFind::new(n);
        let mut queue: Vec<(usize, usize)> = Vec::new();
        for &(a, b) in pairs {
            if uf.union(a, b) {
                queue.push((a, b));
            }
        }
        while let Some((x, y)) = queue.pop() {
            for c in 0..n {
                let pairs = [
                    (q.op(c, x), q.op(c, y)),
                    (q.op(x, c), q.op(y, c)),
                    (q.ldiv(c, x), q.ldiv(c, y)),
                    (q.ldiv(x, c), q.ldiv(y, c)),
                ];
                for (u, v) in pairs {
                    if uf.union(u, v) {
                        queue.push((u, v));
                    }
                }
            }
        }
        uf.into_congruence()
    }
}

/// The whole congruence lattice, sorted.
pub fn all_congruences(q: &Quandle) -> Result<Vec<Congruence>> {
    let n = q.size();
    if n > CONGRUENCE_CAP {
        return Err(Error::SizeCap {
            n,
            cap: CONGRUENCE_CAP,
        });
    }
    let mut lattice: BTreeSet<Congruence> = BTreeSet::new();
    lattice.insert(Congruence::discrete(n));
    let mut principal = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let c = Congruence::principal(q, a, b);
            if lattice.insert(c.clone()) {
                principal.push(c);
            }
        }
    }
    // Every congruence is a join of principal ones.
    let mut frontier: Vec<Congruence> = lattice.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for p in &principal {
                let j = x.join(p);
                if !lattice.contains(&j) {
                    lattice.insert(j.clone());
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    Ok(lattice.into_iter().collect())
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    pub fn into_congruence(mut self) -> Congruence {
        let labels: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Congruence::from_labels(&labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_quandle_has_every_partition() {
        let q = Quandle::trivial(3);
        assert_eq!(all_congruences(&q).unwrap().len(), 5);
    }

    #[test]
    fn lattice_operations() {
        let a = Congruence::from_labels(&[0, 0, 1, 1]);
        let b = Congruence::from_labels(&[0, 1, 1, 2]);
        assert_eq!(a.meet(&b), Congruence::discrete(4));
        let c = Congruence::from_labels(&[0, 1, 2, 2]);
        assert_eq!(a.meet(&c), c);
        assert!(a.join(&b).is_total());
        assert!(Congruence::discrete(4).refines(&a));
        assert!(!a.refines(&b));
        assert_eq!(a.block_profile(), vec![2, 2]);
    }

    #[test]
    fn size_cap() {
        let q = Quandle::trivial(65);
        assert!(matches!(all_congruences(&q), Err(Error::SizeCap { .. })));
    }
}
