use std::fmt;
use std::sync::Arc;

use super::{Derivation, PcElement, PcGroup};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

/// Automorphism of a pc group, stored as the images of every pc generator.
#[derive(Clone)]
pub struct GroupAut {
    group: Arc<PcGroup>,
    images: Vec<u32>,
    /// `powers[i][e]` = index of `f(g_i)^e`.
    powers: Vec<Vec<u32>>,
}

impl fmt::Debug for GroupAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imgs: Vec<Vec<u32>> = self
            .images()
            .into_iter()
            .map(|e| e.exps().to_vec())
            .collect();
        write!(f, "GroupAut({:?})", imgs)
    }
}

impl PartialEq for GroupAut {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
    }
}

impl Eq for GroupAut {}

impl std::hash::Hash for GroupAut {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.images.hash(state);
    }
}

/// Validated automorphism from generator images. Accepts either one image
/// per top generator (the rest are derived from the relations) or one
/// image per pc generator.
pub fn pc_aut(group: &Arc<PcGroup>, images: &[PcElement]) -> Result<GroupAut> {
    for x in images {
        group.check(x)?;
    }
    let idx: Vec<usize> = images.iter().map(|x| group.index(x)).collect();
    let full = if images.len() == group.rank {
        idx
    } else if images.len() == group.top.len() {
        derive_images(group, &idx)
    } else {
        return Err(Error::RankMismatch {
            expected: group.top.len(),
            got: images.len(),
        });
    };
    let f = GroupAut::from_full_unchecked(group.clone(), &full);
    if let Some(rel) = f.violated_relation() {
        return Err(Error::RelationViolated(rel));
    }
    if !f.is_bijective() {
        return Err(Error::NotBijective);
    }
    Ok(f)
}

/// Fills in non-top generator images from the top ones.
pub(crate) fn derive_images(group: &PcGroup, top_images: &[usize]) -> Vec<usize> {
    let mut full = vec![0usize; group.rank];
    for (&t, &img) in group.top.iter().zip(top_images) {
        full[t] = img;
    }
    for &(t, d) in &group.derived {
        full[t] = match d {
            Derivation::Commutator(a, b) => group.commutator(full[a], full[b]),
            Derivation::Power(a) => group.pow(full[a], group.p as i64),
        };
    }
    full
}

impl GroupAut {
    pub(crate) fn from_full_unchecked(group: Arc<PcGroup>, full: &[usize]) -> Self {
        let p = group.p as usize;
        let powers = full
            .iter()
            .map(|&img| {
                let mut row = Vec::with_capacity(p);
                let mut acc = 0usize;
                for _ in 0..p {
                    row.push(acc as u32);
                    acc = group.mul(acc, img);
                }
                row
            })
            .collect();
        GroupAut {
            images: full.iter().map(|&x| x as u32).collect(),
            powers,
            group,
        }
    }

    /// From top-generator images, trusting the caller that the result is
    /// an automorphism. Used by exhaustive searches after a cheap filter.
    pub(crate) fn from_top_unchecked(group: &Arc<PcGroup>, top_images: &[usize]) -> Self {
        let full = derive_images(group, top_images);
        GroupAut::from_full_unchecked(group.clone(), &full)
    }

    pub fn identity(group: &Arc<PcGroup>) -> Self {
        let full = group.generator_indices();
        GroupAut::from_full_unchecked(group.clone(), &full)
    }

    pub fn group(&self) -> &Arc<PcGroup> {
        &self.group
    }

    pub fn images(&self) -> Vec<PcElement> {
        self.images
            .iter()
            .map(|&x| self.group.element(x as usize))
            .collect()
    }

    /// Images of the top generators only.
    pub fn top_images(&self) -> Vec<PcElement> {
        self.group
            .top
            .iter()
            .map(|&t| self.group.element(self.images[t] as usize))
            .collect()
    }

    pub fn image_indices(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        let p = self.group.p as usize;
        let mut rest = x;
        let mut digits = [0usize; 8];
        let k = self.group.rank;
        for i in (0..k).rev() {
            digits[i] = rest % p;
            rest /= p;
        }
        let mut acc = 0usize;
        for (i, &d) in digits[..k].iter().enumerate() {
            if d != 0 {
                acc = self.group.mul(acc, self.powers[i][d] as usize);
            }
        }
        acc
    }

    pub fn apply_elem(&self, x: &PcElement) -> PcElement {
        self.group.element(self.apply(self.group.index(x)))
    }

    pub fn full_map(&self) -> Vec<u32> {
        (0..self.group.order())
            .map(|x| self.apply(x) as u32)
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| x as usize == self.group.gen_index(i))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GroupAut) -> GroupAut {
        let full: Vec<usize> = other
            .images
            .iter()
            .map(|&x| self.apply(x as usize))
            .collect();
        GroupAut::from_full_unchecked(self.group.clone(), &full)
    }

    pub fn inverse(&self) -> GroupAut {
        let map = self.full_map();
        let mut inv = vec![0usize; map.len()];
        for (x, &y) in map.iter().enumerate() {
            inv[y as usize] = x;
        }
        let full: Vec<usize> = self
            .group
            .generator_indices()
            .iter()
            .map(|&g| inv[g])
            .collect();
        GroupAut::from_full_unchecked(self.group.clone(), &full)
    }

    /// `h⁻¹ ∘ self ∘ h`.
    pub fn conjugate_by(&self, h: &GroupAut) -> GroupAut {
        h.inverse().compose(&self.compose(h))
    }

    pub fn commutes_with(&self, other: &GroupAut) -> bool {
        other
            .images
            .iter()
            .zip(&self.images)
            .all(|(&o, &s)| self.apply(o as usize) == other.apply(s as usize))
    }

    /// Evaluates a normal-form word at the generator images.
    fn eval_word(&self, w: &[u32]) -> usize {
        let mut acc = 0usize;
        for (i, &e) in w.iter().enumerate() {
            if e != 0 {
                acc = self.group.mul(acc, self.powers[i][e as usize] as usize);
            }
        }
        acc
    }

    pub(crate) fn violated_relation(&self) -> Option<String> {
        let g = &self.group;
        let img = |i: usize| self.images[i] as usize;
        for i in 0..g.rank {
            let lhs = g.pow(img(i), g.p as i64);
            if lhs != self.eval_word(&g.power[i]) {
                return Some(format!("g{}^{} = {:?}", i + 1, g.p, g.power[i]));
            }
            for j in i + 1..g.rank {
                let lhs = g.mul(g.mul(g.inv(img(i)), img(j)), img(i));
                if lhs != self.eval_word(&g.conj[i][j]) {
                    return Some(format!(
                        "g{}^-1 g{} g{} = {:?}",
                        i + 1,
                        j + 1,
                        i + 1,
                        g.conj[i][j]
                    ));
                }
            }
        }
        None
    }

    fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.group.order()];
        (0..self.group.order()).all(|x| {
            let y = self.apply(x);
            !std::mem::replace(&mut seen[y], true)
        })
    }

    /// Images of the top generators as a matrix over Z_p on `G/Φ(G)`;
    /// column j holds the top exponents of `f(g_{top_j})`.
    pub fn frattini_matrix(&self) -> Vec<Vec<u32>> {
        let top = &self.group.top;
        let cols: Vec<Vec<u32>> = top
            .iter()
            .map(|&t| self.group.decode(self.images[t] as usize))
            .collect();
        top.iter()
            .map(|&r| cols.iter().map(|c| c[r]).collect())
            .collect()
    }
}

/// Fixed points of `f`.
pub fn aut_fix(f: &GroupAut) -> Subgroup {
    let elems = (0..f.group.order()).filter(|&x| f.apply(x) == x).collect();
    Subgroup::from_sorted_unchecked(elems)
}

/// `[G, f] = ⟨g f(g)⁻¹⟩`.
pub fn aut_twisted_subgroup(g: &PcGroup, f: &GroupAut) -> Subgroup {
    let mut seeds: Vec<usize> = (0..g.order())
        .map(|x| g.mul(x, g.inv(f.apply(x))))
        .collect();
    seeds.sort_unstable();
    seeds.dedup();
    Subgroup::generated(g, &seeds)
}

/// The map `xN ↦ f(x)N` on `G/N`.
#[derive(Clone, Debug)]
pub struct InducedAut {
    /// Coset label of every element.
    pub labels: Vec<usize>,
    /// Minimal element of each coset, in label order.
    pub reps: Vec<usize>,
    /// Action on coset labels.
    pub map: Vec<usize>,
    /// Present when `G/N` is elementary abelian: coordinates of the images
    /// of the chosen basis, one column per basis vector.
    pub matrix: Option<Vec<Vec<u32>>>,
    /// Pc generators whose cosets form the basis behind `matrix`.
    pub basis: Vec<usize>,
}

pub fn aut_induced(g: &PcGroup, f: &GroupAut, n: &Subgroup) -> Result<InducedAut> {
    let gens = g.generator_indices();
    let normal = n.elements().iter().all(|&x| {
        gens.iter()
            .all(|&y| n.contains(g.mul(g.mul(g.inv(y), x), y)))
    });
    if !normal {
        return Err(Error::NotNormal);
    }
    if !n.elements().iter().all(|&x| n.contains(f.apply(x))) {
        return Err(Error::NotInvariant);
    }
    let order = g.order();
    let mut rep_of = vec![usize::MAX; order];
    for x in 0..order {
        if rep_of[x] != usize::MAX {
            continue;
        }
        // x is the smallest element of its coset since we sweep upwards.
        for &m in n.elements() {
            rep_of[g.mul(x, m)] = x;
        }
    }
    let mut reps: Vec<usize> = (0..order).filter(|&x| rep_of[x] == x).collect();
    reps.sort_unstable();
    let mut label_of_rep = vec![usize::MAX; order];
    for (i, &r) in reps.iter().enumerate() {
        label_of_rep[r] = i;
    }
    let labels: Vec<usize> = (0..order).map(|x| label_of_rep[rep_of[x]]).collect();
    let map: Vec<usize> = reps.iter().map(|&r| labels[f.apply(r)]).collect();

    let p = g.p() as usize;
    let abelian_quotient = gens
        .iter()
        .all(|&a| gens.iter().all(|&b| n.contains(g.commutator(a, b))));
    let exponent_p = gens.iter().all(|&a| n.contains(g.pow(a, p as i64)));
    let mut basis = Vec::new();
    let mut matrix = None;
    if abelian_quotient && exponent_p {
        let mut span = n.clone();
        for i in 0..g.rank() {
            let gi = g.gen_index(i);
            if !span.contains(gi) {
                basis.push(gi);
                let mut seeds = span.elements().to_vec();
                seeds.push(gi);
                span = Subgroup::generated(g, &seeds);
            }
        }
        let r = basis.len();
        let mut coords = vec![Vec::new(); reps.len()];
        for code in 0..p.pow(r as u32) {
            let mut c = vec![0u32; r];
            let mut rest = code;
            for slot in c.iter_mut().rev() {
                *slot = (rest % p) as u32;
                rest /= p;
            }
            let x = c
                .iter()
                .zip(&basis)
                .fold(0usize, |acc, (&e, &b)| g.mul(acc, g.pow(b, e as i64)));
            coords[labels[x]] = c;
        }
        let cols: Vec<&Vec<u32>> = basis.iter().map(|&b| &coords[labels[f.apply(b)]]).collect();
        matrix = Some(
            (0..r)
                .map(|row| cols.iter().map(|c| c[row]).collect())
                .collect(),
        );
    }
    Ok(InducedAut {
        labels,
        reps,
        map,
        matrix,
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcgroup::{FamilyTag, GroupFamily};

    fn group(tag: FamilyTag) -> Arc<PcGroup> {
        Arc::new(PcGroup::new(GroupFamily::new(tag, 5)).unwrap())
    }

    #[test]
    fn identity_images_give_identity() {
        let g = group(FamilyTag::G7);
        let imgs: Vec<PcElement> = (0..2).map(|i| g.generator(i)).collect();
        let f = pc_aut(&g, &imgs).unwrap();
        assert!(f.is_identity());
        assert_eq!(aut_fix(&f).order(), 625);
        assert_eq!(aut_twisted_subgroup(&g, &f).order(), 1);
    }

    #[test]
    fn heis_diagonal() {
        let g = group(FamilyTag::Heis);
        let f = pc_aut(&g, &[g.elem(&[2, 0, 0]), g.elem(&[0, 3, 0])]).unwrap();
        assert_eq!(f.images()[2].exps(), &[0, 0, 1]);
        let fix = aut_fix(&f);
        assert_eq!(fix.order(), 5);
        assert!(fix.contains(g.gen_index(2)));
    }

    #[test]
    fn violated_relation_rejected() {
        let g = group(FamilyTag::G7);
        let mut imgs: Vec<PcElement> = (0..4).map(|i| g.generator(i)).collect();
        imgs[2] = g.elem(&[0, 0, 2, 0]);
        assert!(matches!(pc_aut(&g, &imgs), Err(Error::RelationViolated(_))));
    }

    #[test]
    fn non_bijective_rejected() {
        let g = group(FamilyTag::ElemAbelian(2));
        let r = pc_aut(&g, &[g.elem(&[1, 0]), g.elem(&[2, 0])]);
        assert_eq!(r.unwrap_err(), Error::NotBijective);
    }

    #[test]
    fn induced_on_frattini_quotient() {
        let g = group(FamilyTag::Heis);
        let f = pc_aut(&g, &[g.elem(&[1, 2, 0]), g.elem(&[3, 4, 1])]).unwrap();
        let ind = aut_induced(&g, &f, &g.derived_subgroup()).unwrap();
        assert_eq!(ind.matrix.unwrap(), vec![vec![1, 3], vec![2, 4]]);
        assert_eq!(ind.map.len(), 25);
    }

    #[test]
    fn induced_on_whole_group() {
        let g = group(FamilyTag::G8);
        let f = GroupAut::identity(&g);
        let ind = aut_induced(&g, &f, &Subgroup::whole(&*g)).unwrap();
        assert_eq!(ind.map, vec![0]);
    }

    #[test]
    fn induced_needs_invariance() {
        let g = group(FamilyTag::ElemAbelian(2));
        let f = pc_aut(&g, &[g.elem(&[0, 1]), g.elem(&[1, 0])]).unwrap();
        let n = Subgroup::generated(&*g, &[g.gen_index(0)]);
        assert_eq!(aut_induced(&g, &f, &n).unwrap_err(), Error::NotInvariant);
    }

    #[test]
    fn compose_and_inverse() {
        let g = group(FamilyTag::G7);
        let f = pc_aut(&g, &[g.elem(&[2, 1, 0, 0]), g.elem(&[0, 3, 1, 0])]).unwrap();
        let h = pc_aut(&g, &[g.elem(&[1, 0, 0, 0]), g.elem(&[0, 2, 0, 0])]).unwrap();
        assert!(f.compose(&f.inverse()).is_identity());
        let fh = f.compose(&h);
        for x in 0..g.order() {
            assert_eq!(fh.apply(x), f.apply(h.apply(x)));
        }
    }
}
