//! p-groups given by power-conjugate presentations.
//!
//! Elements are exponent vectors `(e_1, …, e_k)` standing for the normal
//! form `g_1^{e_1} ⋯ g_k^{e_k}`. The element index is the base-p number
//! with `e_1` most significant, so index order is lexicographic order of
//! exponent vectors and the identity has index 0.
//!
//! Conventions used throughout: `[x, y] = x⁻¹y⁻¹xy` and `x^g = g⁻¹xg`.

mod aut;
mod family;

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

pub use aut::{aut_fix, aut_induced, aut_twisted_subgroup, pc_aut, GroupAut, InducedAut};
pub(crate) use family::Derivation;
pub use family::{FamilyTag, GroupFamily};

use crate::arith::{binom2_mod, inv_mod, reduce};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::perm::{Perm, PermGroup, DEFAULT_CAP};

/// Groups up to this order get a full Cayley table on first use.
pub const TABLE_CAP: usize = 2401;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PcElement {
    exps: Vec<u32>,
}

impl PcElement {
    pub fn new(exps: Vec<u32>) -> Self {
        PcElement { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn rank(&self) -> usize {
        self.exps.len()
    }
}

pub struct PcGroup {
    family: GroupFamily,
    p: u32,
    rank: usize,
    order: usize,
    power: Vec<Vec<u32>>,
    conj: Vec<Vec<Vec<u32>>>,
    top: Vec<usize>,
    derived: Vec<(usize, Derivation)>,
    gen_table: Vec<u32>,
    inverse: Vec<u32>,
    table: OnceLock<Vec<u32>>,
}

impl std::fmt::Debug for PcGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "PcGroup({}, p={}, order={})",
            self.family, self.p, self.order
        )
    }
}

pub fn pc_make(family: GroupFamily) -> Result<PcGroup> {
    PcGroup::new(family)
}

pub fn pc_mul(g: &PcGroup, x: &PcElement, y: &PcElement) -> Result<PcElement> {
    g.check(x)?;
    g.check(y)?;
    Ok(PcElement::new(g.mul_exps(&x.exps, &y.exps)))
}

pub fn pc_pow(g: &PcGroup, x: &PcElement, n: i64) -> Result<PcElement> {
    g.check(x)?;
    Ok(g.pow_elem(x, n))
}

/// Left regular representation: `g ↦ (x ↦ g·x)`.
pub fn pc_to_perm(g: &PcGroup) -> Result<PermGroup> {
    if g.order() > DEFAULT_CAP {
        return Err(Error::CapExceeded { cap: DEFAULT_CAP });
    }
    let gens: Vec<Perm> = (0..g.rank)
        .map(|i| {
            let gi = g.gen_index(i);
            Perm::from_u32_unchecked((0..g.order()).map(|x| g.mul(gi, x) as u32).collect())
        })
        .collect();
    crate::perm::close_group(g.order(), &gens)
}

impl PcGroup {
    pub fn new(family: GroupFamily) -> Result<Self> {
        family.validate()?;
        let pres = family.presentation();
        let p = family.p;
        let rank = pres.rank;
        let order = (p as usize)
            .checked_pow(rank as u32)
            .filter(|&o| o <= 1 << 26)
            .ok_or(Error::SizeCap {
                n: usize::MAX,
                cap: 1 << 26,
            })?;
        let mut g = PcGroup {
            family,
            p,
            rank,
            order,
            power: pres.power,
            conj: pres.conj,
            top: pres.top,
            derived: pres.derived,
            gen_table: Vec::new(),
            inverse: Vec::new(),
            table: OnceLock::new(),
        };
        let mut gen_table = vec![0u32; order * rank];
        let mut inverse = vec![0u32; order];
        for x in 0..order {
            let ex = g.decode(x);
            for j in 0..rank {
                let mut e = ex.clone();
                g.mul_gen(&mut e, j);
                gen_table[x * rank + j] = g.encode(&e) as u32;
            }
            inverse[x] = g.encode(&g.inverse_exps(&ex)) as u32;
        }
        g.gen_table = gen_table;
        g.inverse = inverse;
        Ok(g)
    }

    pub fn family(&self) -> GroupFamily {
        self.family
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Indices of the generators an automorphism is determined by.
    pub fn top_generators(&self) -> &[usize] {
        &self.top
    }

    pub fn encode(&self, exps: &[u32]) -> usize {
        exps.iter()
            .fold(0usize, |acc, &e| acc * self.p as usize + e as usize)
    }

    pub fn decode(&self, mut idx: usize) -> Vec<u32> {
        let mut v = vec![0u32; self.rank];
        for slot in v.iter_mut().rev() {
            *slot = (idx % self.p as usize) as u32;
            idx /= self.p as usize;
        }
        v
    }

    pub fn element(&self, idx: usize) -> PcElement {
        PcElement::new(self.decode(idx))
    }

    pub fn index(&self, x: &PcElement) -> usize {
        self.encode(&x.exps)
    }

    /// Element from signed exponents, reduced mod p.
    pub fn elem(&self, exps: &[i64]) -> PcElement {
        let mut v = vec![0u32; self.rank];
        for (slot, &e) in v.iter_mut().zip(exps) {
            *slot = reduce(e, self.p);
        }
        PcElement::new(v)
    }

    pub fn identity_elem(&self) -> PcElement {
        PcElement::new(vec![0; self.rank])
    }

    pub fn generator(&self, i: usize) -> PcElement {
        let mut v = vec![0u32; self.rank];
        v[i] = 1;
        PcElement::new(v)
    }

    pub fn gen_index(&self, i: usize) -> usize {
        (self.p as usize).pow((self.rank - 1 - i) as u32)
    }

    fn check(&self, x: &PcElement) -> Result<()> {
        if x.exps.len() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                got: x.exps.len(),
            });
        }
        if x.exps.iter().any(|&e| e >= self.p) {
            return Err(Error::InvalidFamily(format!(
                "exponent out of range [0, {})",
                self.p
            )));
        }
        Ok(())
    }

    /// `x ← x · g_j` by collection.
    fn mul_gen(&self, x: &mut [u32], j: usize) {
        let tail: Vec<u32> = x[j + 1..].to_vec();
        for e in x[j + 1..].iter_mut() {
            *e = 0;
        }
        x[j] += 1;
        if x[j] == self.p {
            x[j] = 0;
            x[j + 1..].copy_from_slice(&self.power[j][j + 1..]);
        }
        // g_j⁻¹ g_l g_j for each moved tail generator.
        for (off, &t) in tail.iter().enumerate() {
            let l = j + 1 + off;
            for _ in 0..t {
                self.mul_word(x, &self.conj[j][l]);
            }
        }
    }

    fn mul_word(&self, x: &mut [u32], w: &[u32]) {
        for (i, &e) in w.iter().enumerate() {
            for _ in 0..e {
                self.mul_gen(x, i);
            }
        }
    }

    pub(crate) fn mul_exps(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        if self.order <= TABLE_CAP {
            return self.decode(self.mul(self.encode(x), self.encode(y)));
        }
        let mut acc = x.to_vec();
        self.mul_word(&mut acc, y);
        acc
    }

    fn inverse_exps(&self, x: &[u32]) -> Vec<u32> {
        // Peel off the leading generator: if x = g_j^e · r then
        // x⁻¹ = r⁻¹ · g_j^{-e}; build y with x·y = 1 digit by digit.
        let mut cur = x.to_vec();
        let mut y = vec![0u32; self.rank];
        for j in 0..self.rank {
            while cur[j] != 0 {
                self.mul_gen(&mut cur, j);
                self.mul_gen(&mut y, j);
            }
        }
        debug_assert!(cur.iter().all(|&e| e == 0));
        y
    }

    pub(crate) fn pow_elem(&self, x: &PcElement, n: i64) -> PcElement {
        if matches!(self.family.tag, FamilyTag::G7) {
            return self.g7_pow(x, n);
        }
        self.element(self.pow(self.index(x), n))
    }

    /// Closed form `(g1^a g2^b g3^c g4^d)^n` in G7.
    fn g7_pow(&self, x: &PcElement, n: i64) -> PcElement {
        let p = self.p as u64;
        let [a, b, c, d] = [x.exps[0], x.exps[1], x.exps[2], x.exps[3]].map(|e| e as u64);
        let nn = reduce(n, self.p) as u64;
        let c2 = binom2_mod(n, self.p) as u64;
        let rho = rho_mod(a, n, self.p) as u64;
        PcElement::new(vec![
            (a * nn % p) as u32,
            (b * nn % p) as u32,
            ((c * nn + a * b % p * c2) % p) as u32,
            ((a * c % p * c2 + b * rho + d * nn) % p) as u32,
        ])
    }

    fn table(&self) -> &[u32] {
        self.table.get_or_init(|| {
            let n = self.order;
            let mut t = vec![0u32; n * n];
            for x in 0..n {
                let row = &mut t[x * n..(x + 1) * n];
                row[0] = x as u32;
                for y in 1..n {
                    // y = y' · g_m with m the last non-zero digit of y.
                    let mut m = self.rank - 1;
                    let mut step = 1usize;
                    while (y / step).is_multiple_of(self.p as usize) {
                        m -= 1;
                        step *= self.p as usize;
                    }
                    let prev = row[y - step] as usize;
                    row[y] = self.gen_table[prev * self.rank + m];
                }
            }
            t
        })
    }

    /// Center, by testing against the generators.
    pub fn center(&self) -> Subgroup {
        let gens: Vec<usize> = (0..self.rank).map(|i| self.gen_index(i)).collect();
        crate::group::center_of(self, &gens)
    }

    /// `[G, G]`.
    pub fn derived_subgroup(&self) -> Subgroup {
        let gens = self.generator_indices();
        let whole = Subgroup::whole(self);
        crate::group::commutator_subgroup_gens(self, &whole, &gens, &gens)
    }

    /// `γ_0 = G, γ_1 = [G,G], …` down to the stable term.
    pub fn lower_central_series(&self) -> Vec<Subgroup> {
        let gens = self.generator_indices();
        let mut series = vec![Subgroup::whole(self)];
        loop {
            let last = series.last().unwrap();
            let next = crate::group::commutator_subgroup_gens(self, last, &gens, &gens);
            if next.order() == last.order() {
                return series;
            }
            series.push(next);
        }
    }

    /// `Φ(G) = G^p [G, G]`.
    pub fn frattini(&self) -> Subgroup {
        let mut seeds: Vec<usize> = (0..self.order)
            .map(|x| self.pow(x, self.p as i64))
            .collect();
        seeds.extend(self.derived_subgroup().elements().iter().copied());
        seeds.sort_unstable();
        seeds.dedup();
        Subgroup::generated(self, &seeds)
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order)
            .map(|x| self.element_order(x))
            .max()
            .unwrap_or(1)
    }
}

impl FiniteGroup for PcGroup {
    fn order(&self) -> usize {
        self.order
    }

    fn identity(&self) -> usize {
        0
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        if self.order <= TABLE_CAP {
            return self.table()[a * self.order + b] as usize;
        }
        let mut x = self.decode(a);
        let y = self.decode(b);
        self.mul_word(&mut x, &y);
        self.encode(&x)
    }

    fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    fn generator_indices(&self) -> Vec<usize> {
        (0..self.rank).map(|i| self.gen_index(i)).collect()
    }
}

/// `ρ(a, n) = (a/2)·C(n,2)·(a(2n−1)/3 − 1)` mod p, for p > 3.
pub fn rho_mod(a: u64, n: i64, p: u32) -> u32 {
    let pm = p as u64;
    let a = a % pm;
    let c2 = binom2_mod(n, p) as u64;
    let two_n_minus_1 = reduce(2 * n - 1, p) as u64;
    let inner = (a * two_n_minus_1 % pm * inv_mod(3, pm) % pm + pm - 1) % pm;
    (a * inv_mod(2, pm) % pm * c2 % pm * inner % pm) as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(tag: FamilyTag) -> PcGroup {
        pc_make(GroupFamily::new(tag, 5)).unwrap()
    }

    #[test]
    fn g7_exchange() {
        let g7 = g(FamilyTag::G7);
        let prod = pc_mul(&g7, &g7.generator(1), &g7.generator(0)).unwrap();
        assert_eq!(prod.exps(), &[1, 1, 1, 0]);
    }

    #[test]
    fn g8_carry() {
        let g8 = g(FamilyTag::G8);
        let x = g8.elem(&[4, 0, 0, 0]);
        let prod = pc_mul(&g8, &x, &g8.generator(0)).unwrap();
        assert_eq!(prod.exps(), &[0, 0, 0, 1]);
        assert_eq!(
            pc_pow(&g8, &g8.generator(0), 5).unwrap().exps(),
            &[0, 0, 0, 1]
        );
    }

    #[test]
    fn rank_mismatch() {
        let g7 = g(FamilyTag::G7);
        let bad = PcElement::new(vec![1, 0, 0]);
        assert!(matches!(
            pc_mul(&g7, &bad, &g7.generator(0)),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn inverses() {
        let g9 = g(FamilyTag::G9);
        for x in 0..g9.order() {
            assert_eq!(g9.mul(x, g9.inv(x)), 0);
        }
    }

    #[test]
    fn invalid_families() {
        assert!(pc_make(GroupFamily::new(FamilyTag::G7, 3)).is_err());
        assert!(pc_make(GroupFamily::new(FamilyTag::Heis, 9)).is_err());
        assert!(pc_make(GroupFamily::new(FamilyTag::G10 { w: 4 }, 5)).is_err());
    }
}
