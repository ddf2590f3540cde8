//! Index-based view of a finite group, shared by pc groups and permutation
//! groups so coset constructions can run over either.

use std::collections::VecDeque;

/// A finite group whose elements are the indices `0..order()`.
pub trait FiniteGroup {
    fn order(&self) -> usize;
    fn identity(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;

    /// A generating set; every non-identity element unless overridden.
    fn generator_indices(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&x| x != self.identity())
            .collect()
    }

    fn pow(&self, a: usize, n: i64) -> usize {
        let base = if n < 0 { self.inv(a) } else { a };
        let mut e = n.unsigned_abs();
        let mut acc = self.identity();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }
}

impl<T: FiniteGroup + ?Sized> FiniteGroup for &T {
    fn order(&self) -> usize {
        (**self).order()
    }
    fn identity(&self) -> usize {
        (**self).identity()
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        (**self).mul(a, b)
    }
    fn inv(&self, a: usize) -> usize {
        (**self).inv(a)
    }
    fn generator_indices(&self) -> Vec<usize> {
        (**self).generator_indices()
    }
}

impl<T: FiniteGroup + ?Sized> FiniteGroup for std::sync::Arc<T> {
    fn order(&self) -> usize {
        (**self).order()
    }
    fn identity(&self) -> usize {
        (**self).identity()
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        (**self).mul(a, b)
    }
    fn inv(&self, a: usize) -> usize {
        (**self).inv(a)
    }
    fn generator_indices(&self) -> Vec<usize> {
        (**self).generator_indices()
    }
}

/// A subgroup stored as a sorted list of element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn trivial<G: FiniteGroup>(g: &G) -> Self {
        Subgroup {
            elements: vec![g.identity()],
        }
    }

    pub fn whole<G: FiniteGroup>(g: &G) -> Self {
        Subgroup {
            elements: (0..g.order()).collect(),
        }
    }

    /// Closure of `seeds` under multiplication.
    pub fn generated<G: FiniteGroup>(g: &G, seeds: &[usize]) -> Self {
        let mut member = vec![false; g.order()];
        let id = g.identity();
        member[id] = true;
        let mut elems = vec![id];
        let mut gens: Vec<usize> = Vec::new();
        for &s in seeds {
            if member[s] {
                continue;
            }
            gens.push(s);
            let new_gen = gens.len() - 1;
            let mut queue: VecDeque<(usize, bool)> = elems.iter().map(|&e| (e, false)).collect();
            while let Some((e, all)) = queue.pop_front() {
                let range = if all {
                    0..gens.len()
                } else {
                    new_gen..new_gen + 1
                };
                for gi in range {
                    let y = g.mul(e, gens[gi]);
                    if !member[y] {
                        member[y] = true;
                        elems.push(y);
                        queue.push_back((y, true));
                    }
                }
            }
        }
        elems.sort_unstable();
        Subgroup { elements: elems }
    }

    /// Trusts that `elements` is closed; used for fixed-point sets.
    pub(crate) fn from_sorted_unchecked(mut elements: Vec<usize>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        Subgroup { elements }
    }

    /// Checks closure under multiplication (enough for finite groups).
    pub fn from_elements<G: FiniteGroup>(g: &G, elements: Vec<usize>) -> Option<Self> {
        let s = Subgroup::from_sorted_unchecked(elements);
        if !s.contains(g.identity()) {
            return None;
        }
        for &a in &s.elements {
            for &b in &s.elements {
                if !s.contains(g.mul(a, b)) {
                    return None;
                }
            }
        }
        Some(s)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup {
            elements: self
                .elements
                .iter()
                .copied()
                .filter(|&x| other.contains(x))
                .collect(),
        }
    }

    pub fn is_normal_in<G: FiniteGroup>(&self, g: &G) -> bool {
        (0..g.order()).all(|y| {
            let yi = g.inv(y);
            self.elements
                .iter()
                .all(|&x| self.contains(g.mul(g.mul(yi, x), y)))
        })
    }

    pub fn is_abelian<G: FiniteGroup>(&self, g: &G) -> bool {
        self.elements
            .iter()
            .all(|&a| self.elements.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }
}

/// Center of an index group, by brute force over `generators`.
pub fn center_of<G: FiniteGroup>(g: &G, generators: &[usize]) -> Subgroup {
    let elems = (0..g.order())
        .filter(|&z| generators.iter().all(|&x| g.mul(z, x) == g.mul(x, z)))
        .collect();
    Subgroup::from_sorted_unchecked(elems)
}

/// `[A, B]` where both are normal: closure of all commutators, then the
/// normal closure under `generators`.
pub fn commutator_subgroup<G: FiniteGroup>(
    g: &G,
    a: &Subgroup,
    b: &Subgroup,
    generators: &[usize],
) -> Subgroup {
    let mut seeds = Vec::new();
    for &x in a.elements() {
        for &y in b.elements() {
            seeds.push(g.commutator(x, y));
        }
    }
    seeds.sort_unstable();
    seeds.dedup();
    normal_closure(g, &seeds, generators)
}

/// `[A, B]` for normal `A` and `B = ⟨b_gens⟩`: normal closure of the
/// commutators `[a, b]` with `a ∈ A` and `b` a generator of `B`.
pub fn commutator_subgroup_gens<G: FiniteGroup>(
    g: &G,
    a: &Subgroup,
    b_gens: &[usize],
    generators: &[usize],
) -> Subgroup {
    let mut seeds: Vec<usize> = a
        .elements()
        .iter()
        .flat_map(|&x| b_gens.iter().map(move |&y| (x, y)))
        .map(|(x, y)| g.commutator(x, y))
        .collect();
    seeds.sort_unstable();
    seeds.dedup();
    normal_closure(g, &seeds, generators)
}

pub fn normal_closure<G: FiniteGroup>(g: &G, seeds: &[usize], generators: &[usize]) -> Subgroup {
    let mut n = Subgroup::generated(g, seeds);
    loop {
        let mut extra = Vec::new();
        for &x in n.elements() {
            for &y in generators {
                let c = g.mul(g.mul(g.inv(y), x), y);
                if !n.contains(c) {
                    extra.push(c);
                }
            }
        }
        if extra.is_empty() {
            return n;
        }
        let mut all = n.elements().to_vec();
        all.extend(extra);
        n = Subgroup::generated(g, &all);
    }
}
