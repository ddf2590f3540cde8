//! Permutations of `{0..n-1}` and fully enumerated permutation groups.
//!
//! Every group here carries its complete element list, so subgroup queries
//! are plain set computations. The groups we care about have at most a few
//! thousand elements; closures are guarded by an element cap.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

pub const DEFAULT_CAP: usize = 1_000_000;

/// A bijection on `0..degree`, stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Box<[u32]>,
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "()");
        }
        for cycle in self.cycles() {
            if cycle.len() > 1 {
                write!(f, "(")?;
                for (i, x) in cycle.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")?;
            }
        }
        Ok(())
    }
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::NotAPermutation { degree: n });
            }
            seen[x] = true;
        }
        Ok(Perm {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    /// Caller guarantees `images` is a bijection.
    pub(crate) fn from_u32_unchecked(images: Vec<u32>) -> Self {
        Perm {
            images: images.into_boxed_slice(),
        }
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1, 2]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree || touched[x] {
                    return Err(Error::NotAPermutation { degree });
                }
                touched[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Perm::from_images(images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `(self ∘ other)(x) = self(other(x))`; degrees must agree.
    pub(crate) fn mul(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other
                .images
                .iter()
                .map(|&x| self.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm::from_u32_unchecked(inv)
    }

    pub fn pow(&self, n: i64) -> Perm {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            e >>= 1;
        }
        acc
    }

    /// Commutator `[self, other] = self⁻¹ other⁻¹ self other`.
    pub fn commutator(&self, other: &Perm) -> Perm {
        self.inverse().mul(&other.inverse()).mul(self).mul(other)
    }

    /// `other⁻¹ self other`.
    pub fn conjugate_by(&self, other: &Perm) -> Perm {
        other.inverse().mul(self).mul(other)
    }

    pub fn fixes(&self, x: usize) -> bool {
        self.images[x] as usize == x
    }

    pub fn has_fixed_point(&self) -> bool {
        self.images.iter().enumerate().any(|(i, &x)| i as u32 == x)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Sorted multiset of cycle lengths.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable();
        t
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().map(Vec::len).fold(1, lcm)
    }
}

/// `(p ∘ q)(x) = p(q(x))`.
pub fn compose(p: &Perm, q: &Perm) -> Result<Perm> {
    if p.degree() != q.degree() {
        return Err(Error::DegreeMismatch {
            left: p.degree(),
            right: q.degree(),
        });
    }
    Ok(p.mul(q))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// A permutation group given by generators together with its complete
/// element list. Index 0 is always the identity.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("gens", &self.gens)
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionProfile {
    pub orbits: Vec<Vec<usize>>,
    pub transitive: bool,
    pub semiregular: bool,
    pub regular: bool,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        let id = Perm::identity(degree);
        let mut index = HashMap::new();
        index.insert(id.clone(), 0);
        PermGroup {
            degree,
            gens: Vec::new(),
            elements: vec![id],
            index,
        }
    }

    /// Smallest group containing `gens`. Generators already in the group
    /// built so far are dropped, so the stored generating set stays small.
    pub fn generate(degree: usize, gens: &[Perm], cap: usize) -> Result<Self> {
        let mut g = PermGroup::trivial(degree);
        for x in gens {
            if x.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: x.degree(),
                });
            }
            g.extend(x, cap)?;
        }
        Ok(g)
    }

    /// Adds `x` as a generator and extends the closure. Returns whether the
    /// group grew.
    pub fn extend(&mut self, x: &Perm, cap: usize) -> Result<bool> {
        if self.index.contains_key(x) {
            return Ok(false);
        }
        self.gens.push(x.clone());
        let new_gen = self.gens.len() - 1;
        let old_len = self.elements.len();
        // Old elements are closed under the old generators; only the new
        // generator needs to be applied to them.
        let mut queue: VecDeque<(usize, bool)> = (0..old_len).map(|i| (i, false)).collect();
        while let Some((i, all)) = queue.pop_front() {
            let range = if all {
                0..self.gens.len()
            } else {
                new_gen..new_gen + 1
            };
            for gi in range {
                let y = self.elements[i].mul(&self.gens[gi]);
                if !self.index.contains_key(&y) {
                    if self.elements.len() >= cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    let idx = self.elements.len();
                    self.index.insert(y.clone(), idx);
                    self.elements.push(y);
                    queue.push_back((idx, true));
                }
            }
        }
        Ok(true)
    }

    /// Wraps an element list already known to be a subgroup; a small
    /// generating set is recovered greedily.
    pub(crate) fn from_closed_elements(degree: usize, mut elems: Vec<Perm>) -> Self {
        elems.sort();
        let mut g = PermGroup::trivial(degree);
        for x in &elems {
            if !g.contains(x) {
                g.extend(x, usize::MAX).expect("uncapped");
            }
        }
        debug_assert_eq!(g.order(), elems.len());
        g
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn gens(&self) -> &[Perm] {
        &self.gens
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn contains(&self, x: &Perm) -> bool {
        self.index.contains_key(x)
    }

    pub fn index_of(&self, x: &Perm) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.order() <= other.order() && self.elements.iter().all(|x| other.contains(x))
    }

    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .enumerate()
            .all(|(i, a)| self.gens[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
    }

    /// Normal in `g`: closed under conjugation by the generators of `g`.
    pub fn is_normal_in(&self, g: &PermGroup) -> bool {
        self.is_subgroup_of(g)
            && self
                .gens
                .iter()
                .all(|x| g.gens.iter().all(|y| self.contains(&x.conjugate_by(y))))
    }

    pub fn exponent(&self) -> usize {
        self.elements.iter().fold(1, |acc, x| lcm(acc, x.order()))
    }

    pub fn filter(&self, mut keep: impl FnMut(&Perm) -> bool) -> PermGroup {
        let elems: Vec<Perm> = self.elements.iter().filter(|x| keep(x)).cloned().collect();
        PermGroup::from_closed_elements(self.degree, elems)
    }

    pub fn intersection(&self, other: &PermGroup) -> PermGroup {
        self.filter(|x| other.contains(x))
    }

    /// Subgroup generated by `self` and `other`.
    pub fn join(&self, other: &PermGroup) -> Result<PermGroup> {
        let mut g = self.clone();
        for x in other.gens() {
            g.extend(x, DEFAULT_CAP)?;
        }
        Ok(g)
    }

    /// Orbit of `x` as a sorted list.
    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut stack = vec![x];
        seen[x] = true;
        while let Some(y) = stack.pop() {
            for g in &self.gens {
                let z = g.apply(y);
                if !seen[z] {
                    seen[z] = true;
                    stack.push(z);
                }
            }
        }
        (0..self.degree).filter(|&i| seen[i]).collect()
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree {
            if !seen[x] {
                let o = self.orbit(x);
                for &y in &o {
                    seen[y] = true;
                }
                out.push(o);
            }
        }
        out
    }

    /// Set-wise stabilizer of `block`.
    pub fn setwise_stabilizer(&self, block: &[usize]) -> PermGroup {
        let set: HashSet<usize> = block.iter().copied().collect();
        self.filter(|g| block.iter().all(|&x| set.contains(&g.apply(x))))
    }

    /// Normal closure of `seeds` under conjugation by `self`.
    pub fn normal_closure(&self, seeds: &[Perm]) -> Result<PermGroup> {
        let mut n = PermGroup::generate(self.degree, seeds, DEFAULT_CAP)?;
        loop {
            let mut grew = false;
            let gens = n.gens.clone();
            for x in &gens {
                for y in &self.gens {
                    let c = x.conjugate_by(y);
                    if n.extend(&c, DEFAULT_CAP)? {
                        grew = true;
                    }
                }
            }
            if !grew {
                return Ok(n);
            }
        }
    }

    /// `[n, self]` for a normal subgroup `n`: the normal closure of the
    /// commutators of generators.
    pub fn commutator_with(&self, n: &PermGroup) -> Result<PermGroup> {
        let mut seeds = Vec::new();
        for x in n.gens() {
            for y in &self.gens {
                let c = x.commutator(y);
                if !c.is_identity() {
                    seeds.push(c);
                }
            }
        }
        self.normal_closure(&seeds)
    }

    pub fn derived_subgroup(&self) -> Result<PermGroup> {
        self.commutator_with(self)
    }

    /// Elements of `self` commuting with every element of `other`.
    pub fn centralizer_of(&self, other: &[Perm]) -> PermGroup {
        self.filter(|x| other.iter().all(|y| x.mul(y) == y.mul(x)))
    }
}

impl FiniteGroup for PermGroup {
    fn order(&self) -> usize {
        self.elements.len()
    }
    fn identity(&self) -> usize {
        0
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].mul(&self.elements[b])]
    }
    fn inv(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse()]
    }
    fn generator_indices(&self) -> Vec<usize> {
        self.gens.iter().map(|g| self.index[g]).collect()
    }
}

/// Smallest group containing `gens`, with the default element cap.
pub fn close_group(degree: usize, gens: &[Perm]) -> Result<PermGroup> {
    PermGroup::generate(degree, gens, DEFAULT_CAP)
}

pub fn close_group_with_cap(degree: usize, gens: &[Perm], cap: usize) -> Result<PermGroup> {
    PermGroup::generate(degree, gens, cap)
}

pub fn action_profile(g: &PermGroup) -> ActionProfile {
    let orbits = g.orbits();
    let transitive = orbits.len() <= 1;
    let semiregular = g
        .elements()
        .iter()
        .all(|x| x.is_identity() || !x.has_fixed_point());
    ActionProfile {
        orbits,
        transitive,
        semiregular,
        regular: transitive && semiregular,
    }
}

/// Point stabilizer `{g ∈ G : g(x) = x}`.
pub fn stabilizer(g: &PermGroup, x: usize) -> PermGroup {
    g.filter(|h| h.fixes(x))
}

pub fn center(g: &PermGroup) -> PermGroup {
    let gens = g.gens().to_vec();
    g.centralizer_of(&gens)
}

/// `γ₀(G) = G`, `γ_{i+1} = [γ_i, G]`, up to the first repeated term.
pub fn lower_central_series(g: &PermGroup) -> Result<Vec<PermGroup>> {
    let mut series = vec![g.clone()];
    loop {
        let last = series.last().expect("non-empty");
        let next = g.commutator_with(last)?;
        if next.order() == last.order() {
            return Ok(series);
        }
        series.push(next);
    }
}

/// `Φ(G) = G^p [G, G]` for a p-group.
pub fn frattini_p_group(g: &PermGroup, p: u32) -> Result<PermGroup> {
    if !is_power_of(g.order(), p as usize) {
        return Err(Error::NotAPGroup {
            order: g.order(),
            p,
        });
    }
    let mut seeds: Vec<Perm> = g
        .elements()
        .iter()
        .map(|x| x.pow(p as i64))
        .filter(|x| !x.is_identity())
        .collect();
    seeds.sort();
    seeds.dedup();
    let derived = g.derived_subgroup()?;
    seeds.extend(derived.gens().iter().cloned());
    PermGroup::generate(g.degree(), &seeds, DEFAULT_CAP)
}

pub(crate) fn is_power_of(mut n: usize, p: usize) -> bool {
    if n == 0 || p < 2 {
        return false;
    }
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}
