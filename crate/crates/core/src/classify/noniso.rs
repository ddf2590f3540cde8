use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use super::{Built, Level};
use crate::arith::det_mod;
use crate::construct::{coset_iso, AutUniverse};
use crate::error::Result;
use crate::group::{FiniteGroup, Subgroup};
use crate::oracle::{aut_bruteforce, iso_bruteforce, AUT_SEARCH_CAP};
use crate::pcgroup::{aut_induced, GroupAut, PcGroup};
use crate::perm::Perm;
use crate::quandle::{center_congruence, gamma1_quandle, lambda_congruence};

/// Cheap isomorphism invariants of a connected quandle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Invariants {
    pub dis_order: usize,
    /// Element orders in `Dis(Q)`, with multiplicities.
    pub dis_element_orders: Vec<(usize, usize)>,
    pub flags: (bool, bool, bool),
    /// Cycle types of all left translations, with multiplicities.
    pub translations: Vec<(Vec<usize>, usize)>,
    /// Cycle types of `L_0 L_b` over all b, with multiplicities. An
    /// invariant for connected quandles since automorphisms act
    /// transitively.
    pub pairs: Vec<(Vec<usize>, usize)>,
    pub gamma1_blocks: Vec<usize>,
    pub zeta_blocks: Vec<usize>,
    pub lambda_blocks: Vec<usize>,
    pub aut: AutInvariants,
}

/// Conjugacy invariants of an automorphism f of a p-group. By the
/// isomorphism theorem for coset quandles with `Dis(Q) = G`, these are
/// quandle invariants too.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AutInvariants {
    pub order: usize,
    /// Cycle type of f as a permutation of G.
    pub cycle_type: Vec<usize>,
    /// Trace and determinant of f on `G/Φ(G)` and whether it is scalar.
    pub frattini: (u32, u32, bool),
    /// The scalar by which f acts on `G/C_G(G')`, when that has order p.
    pub top_scalar: Option<u32>,
    /// The scalar by which f acts on `Z(G)`, when that has order p.
    pub center_scalar: Option<u32>,
}

impl AutInvariants {
    pub fn of(f: &GroupAut) -> Result<Self> {
        let g = f.group();
        let p = g.p();
        let map = f.full_map();
        let perm = Perm::from_images(map.iter().map(|&x| x as usize).collect())?;
        let phi = g.frattini();
        let m = aut_induced(g, f, &phi)?
            .matrix
            .expect("G/Φ(G) is elementary abelian");
        let (trace, det, scalar) = match m.len() {
            2 => (
                (m[0][0] + m[1][1]) % p,
                det_mod(&m, p),
                m[0][1] == 0 && m[1][0] == 0 && m[0][0] == m[1][1],
            ),
            _ => (
                m.iter().enumerate().map(|(i, r)| r[i]).sum::<u32>() % p,
                det_mod(&m, p),
                false,
            ),
        };
        let derived = g.derived_subgroup();
        let cent: Vec<usize> = (0..g.order())
            .filter(|&x| {
                derived
                    .elements()
                    .iter()
                    .all(|&y| g.mul(x, y) == g.mul(y, x))
            })
            .collect();
        let cent = Subgroup::generated(&**g, &cent);
        let top_scalar = if g.order() / cent.order() == p as usize {
            let ind = aut_induced(g, f, &cent)?;
            Some(scalar_on_cyclic(&ind.map, &ind.labels, &ind.reps, g, p))
        } else {
            None
        };
        let z = g.center();
        let center_scalar = if z.order() == p as usize {
            let x = z.elements()[1];
            let fx = f.apply(x);
            (1..p).find(|&k| g.pow(x, k as i64) == fx)
        } else {
            None
        };
        Ok(AutInvariants {
            order: perm.order(),
            cycle_type: perm.cycle_type(),
            frattini: (trace, det, scalar),
            top_scalar,
            center_scalar,
        })
    }
}

/// f acts on a cyclic quotient of order p by some `x ↦ x^k`; returns k.
fn scalar_on_cyclic(map: &[usize], labels: &[usize], reps: &[usize], g: &PcGroup, p: u32) -> u32 {
    let x = reps[1];
    let target = map[1];
    (1..p)
        .find(|&k| labels[g.pow(x, k as i64)] == target)
        .expect("induced map is an automorphism of Z_p")
}

fn multiset(items: impl Iterator<Item = Vec<usize>>) -> Vec<(Vec<usize>, usize)> {
    let mut m: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for x in items {
        *m.entry(x).or_insert(0) += 1;
    }
    m.into_iter().collect()
}

impl Invariants {
    pub fn of(b: &Built) -> Result<Self> {
        let q = &b.quandle;
        let dis = q.dis()?;
        let l0 = q.left_translation(0);
        Ok(Invariants {
            dis_order: dis.order(),
            dis_element_orders: {
                let mut m: BTreeMap<usize, usize> = BTreeMap::new();
                for x in dis.elements() {
                    *m.entry(x.order()).or_insert(0) += 1;
                }
                m.into_iter().collect()
            },
            flags: (
                q.is_latin(),
                q.is_faithful(),
                q.is_connected() && dis.order() == q.size(),
            ),
            translations: multiset((0..q.size()).map(|a| q.left_translation(a).cycle_type())),
            pairs: multiset((0..q.size()).map(|b| l0.mul(&q.left_translation(b)).cycle_type())),
            gamma1_blocks: gamma1_quandle(q)?.block_profile(),
            zeta_blocks: center_congruence(q)?.block_profile(),
            lambda_blocks: lambda_congruence(q).block_profile(),
            aut: AutInvariants::of(&b.coset.aut)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonIsoReport {
    pub level: Level,
    pub records: usize,
    pub pairs: usize,
    pub by_invariants: usize,
    pub by_coset_iso: usize,
    pub by_bruteforce: usize,
    /// Pairs that collide on invariants and were not searched, which only
    /// happens at the quick level.
    pub unresolved: Vec<(usize, usize)>,
    /// Pairs found isomorphic.
    pub isomorphic: Vec<(usize, usize)>,
}

impl NonIsoReport {
    /// No isomorphic pair; at the full level also nothing left undecided.
    pub fn passed(&self) -> bool {
        self.isomorphic.is_empty() && (self.level == Level::Quick || self.unresolved.is_empty())
    }

    /// Records not involved in any isomorphic or unresolved pair.
    pub fn separated(&self) -> usize {
        let bad: HashSet<usize> = self
            .isomorphic
            .iter()
            .chain(&self.unresolved)
            .flat_map(|&(i, j)| [i, j])
            .collect();
        self.records - bad.len()
    }
}

/// Decides pairwise isomorphism of built records. Invariants separate most
/// pairs. At the full level, colliding pairs over the same group go through
/// the conjugacy test against the exhaustive automorphism group, and the
/// rest (different groups, or groups too large to enumerate `Aut(G)`)
/// through a direct isomorphism search.
pub fn pairwise_noniso(built: &[Built], level: Level) -> Result<NonIsoReport> {
    let inv: Vec<Invariants> = built
        .par_iter()
        .map(Invariants::of)
        .collect::<Result<_>>()?;
    let mut report = NonIsoReport {
        level,
        records: built.len(),
        pairs: 0,
        by_invariants: 0,
        by_coset_iso: 0,
        by_bruteforce: 0,
        unresolved: Vec::new(),
        isomorphic: Vec::new(),
    };
    let mut colliding = Vec::new();
    for i in 0..built.len() {
        for j in i + 1..built.len() {
            report.pairs += 1;
            if inv[i] != inv[j] {
                report.by_invariants += 1;
            } else {
                colliding.push((i, j));
            }
        }
    }
    if level == Level::Quick {
        report.unresolved = colliding;
        return Ok(report);
    }
    let mut universes: HashMap<String, AutUniverse> = HashMap::new();
    for &(i, j) in &colliding {
        let (gi, gj) = (built[i].coset.group(), built[j].coset.group());
        if gi.family() == gj.family() && gi.order() <= AUT_SEARCH_CAP {
            let key = format!("{:?}", gi.family());
            if !universes.contains_key(&key) {
                let auts = aut_bruteforce(gi)?;
                universes.insert(
                    key.clone(),
                    AutUniverse {
                        auts,
                        complete: true,
                    },
                );
            }
        }
    }
    let outcomes: Vec<(bool, bool)> = colliding
        .par_iter()
        .map(|&(i, j)| {
            let (a, b) = (&built[i], &built[j]);
            let key = format!("{:?}", a.coset.group().family());
            if let (true, Some(u)) = (
                a.coset.group().family() == b.coset.group().family(),
                universes.get(&key),
            ) {
                let r = coset_iso(&a.coset, &b.coset, u)?;
                Ok((r.witness.is_some(), true))
            } else {
                Ok((iso_bruteforce(&a.quandle, &b.quandle)?.is_some(), false))
            }
        })
        .collect::<Result<_>>()?;
    for (&(i, j), &(iso, same_group)) in colliding.iter().zip(&outcomes) {
        if iso {
            report.isomorphic.push((i, j));
        } else if same_group {
            report.by_coset_iso += 1;
        } else {
            report.by_bruteforce += 1;
        }
    }
    Ok(report)
}

/// `|C(f)|` within the given automorphism list.
pub fn centralizer_order(f: &GroupAut, auts: &[GroupAut]) -> usize {
    auts.par_iter().filter(|h| h.commutes_with(f)).count()
}

/// Size of the conjugacy class of f, conjugating by every listed automorphism.
pub fn conjugacy_class_size(f: &GroupAut, auts: &[GroupAut]) -> usize {
    let set: HashSet<Vec<u32>> = auts
        .par_iter()
        .map(|h| f.conjugate_by(h).image_indices().to_vec())
        .collect();
    set.len()
}
