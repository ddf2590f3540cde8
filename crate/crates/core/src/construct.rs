//! Coset and affine quandles, connectedness via the Frattini quotient,
//! minimal representations and the isomorphism test for coset quandles.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::det_mod;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::pcgroup::{aut_fix, aut_induced, GroupAut, PcGroup};
use crate::perm::{stabilizer, PermGroup};
use crate::quandle::Quandle;

/// The triple `(G, H, f)` with `H ≤ Fix(f)`; `aut` maps element indices.
#[derive(Clone, Debug)]
pub struct CosetSpec<G> {
    pub group: G,
    pub subgroup: Subgroup,
    pub aut: Vec<u32>,
}

impl<G: FiniteGroup> CosetSpec<G> {
    /// Checks that `aut` is an automorphism, `H` a subgroup and
    /// `H ≤ Fix(f)`.
    pub fn new(group: G, subgroup: Subgroup, aut: Vec<u32>) -> Result<Self> {
        let n = group.order();
        if aut.len() != n {
            return Err(Error::NotBijective);
        }
        let mut seen = vec![false; n];
        if aut
            .iter()
            .any(|&y| y as usize >= n || std::mem::replace(&mut seen[y as usize], true))
        {
            return Err(Error::NotBijective);
        }
        let gens = group.generator_indices();
        for x in 0..n {
            for &s in &gens {
                let lhs = aut[group.mul(x, s)] as usize;
                let rhs = group.mul(aut[x] as usize, aut[s] as usize);
                if lhs != rhs {
                    return Err(Error::RelationViolated(format!(
                        "f is not a homomorphism at ({x}, {s})"
                    )));
                }
            }
        }
        let h = subgroup.elements();
        if !subgroup.contains(group.identity()) {
            return Err(Error::NotSubgroup);
        }
        for &a in h {
            for &b in h {
                if !subgroup.contains(group.mul(a, b)) {
                    return Err(Error::NotSubgroup);
                }
            }
        }
        if h.iter().any(|&x| aut[x] as usize != x) {
            return Err(Error::NotInFix);
        }
        Ok(CosetSpec {
            group,
            subgroup,
            aut,
        })
    }

    pub fn apply(&self, x: usize) -> usize {
        self.aut[x] as usize
    }
}

/// A coset spec over a pc group, keeping the automorphism itself so that
/// conjugacy questions can be asked about it.
#[derive(Clone, Debug)]
pub struct PcCoset {
    pub aut: GroupAut,
    pub subgroup: Subgroup,
}

impl PcCoset {
    pub fn new(aut: GroupAut, subgroup: Subgroup) -> Result<Self> {
        let fix = aut_fix(&aut);
        if !subgroup.is_subset_of(&fix) {
            return Err(Error::NotInFix);
        }
        let g = aut.group().clone();
        if Subgroup::generated(&*g, subgroup.elements()).order() != subgroup.order() {
            return Err(Error::NotSubgroup);
        }
        Ok(PcCoset { aut, subgroup })
    }

    /// `H = Fix(f)`.
    pub fn with_fix(aut: GroupAut) -> Self {
        let subgroup = aut_fix(&aut);
        PcCoset { aut, subgroup }
    }

    /// `H = 1`: the principal quandle of `f`.
    pub fn principal(aut: GroupAut) -> Self {
        let subgroup = Subgroup::trivial(&**aut.group());
        PcCoset { aut, subgroup }
    }

    pub fn group(&self) -> &Arc<PcGroup> {
        self.aut.group()
    }

    pub fn spec(&self) -> CosetSpec<Arc<PcGroup>> {
        CosetSpec {
            group: self.group().clone(),
            subgroup: self.subgroup.clone(),
            aut: self.aut.full_map(),
        }
    }

    pub fn quandle(&self) -> (Quandle, CosetLabels) {
        coset_quandle(&self.spec())
    }
}

/// Cosets labelled by their least element; labels are in increasing order
/// of that element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetLabels {
    /// Least element of each coset.
    pub reps: Vec<usize>,
    /// Coset label of every group element.
    pub label_of: Vec<usize>,
}

/// `aH ∗ bH = a f(a⁻¹ b) H`.
pub fn coset_quandle<G: FiniteGroup>(spec: &CosetSpec<G>) -> (Quandle, CosetLabels) {
    let g = &spec.group;
    let order = g.order();
    let mut label_of = vec![usize::MAX; order];
    let mut reps = Vec::new();
    for x in 0..order {
        if label_of[x] != usize::MAX {
            continue;
        }
        let l = reps.len();
        reps.push(x);
        for &h in spec.subgroup.elements() {
            label_of[g.mul(x, h)] = l;
        }
    }
    let n = reps.len();
    let mut table = vec![0u32; n * n];
    for (i, &a) in reps.iter().enumerate() {
        let a_inv = g.inv(a);
        for (j, &b) in reps.iter().enumerate() {
            let c = g.mul(a, spec.apply(g.mul(a_inv, b)));
            table[i * n + j] = label_of[c] as u32;
        }
    }
    (
        Quandle::from_flat_trusted(n, table),
        CosetLabels { reps, label_of },
    )
}

/// `a ∗ b = (1 − f)(a) + f(b)`, written multiplicatively as `a f(a)⁻¹ f(b)`.
pub fn affine_quandle(f: &GroupAut) -> Result<Quandle> {
    let g = f.group();
    let gens = g.generator_indices();
    if !gens
        .iter()
        .all(|&a| gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    {
        return Err(Error::NotAbelian);
    }
    let n = g.order();
    let map = f.full_map();
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        let d = g.mul(a, g.inv(map[a] as usize));
        for b in 0..n {
            table[a * n + b] = g.mul(d, map[b] as usize) as u32;
        }
    }
    Ok(Quandle::from_flat_trusted(n, table))
}

/// `Aff(Z_n, m)`: `a ∗ b = (1 − m)a + mb mod n`.
pub fn affine_cyclic(n: usize, m: usize) -> Result<Quandle> {
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = (((n + 1 - m % n) * a + m * b) % n) as u32;
        }
    }
    Quandle::from_flat(n, table)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DecidedBy {
    /// `f` induces a map without eigenvalue 1 on `G/Φ(G)`.
    FrattiniCriterion,
    /// Direct orbit computation on the built quandle.
    Direct,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Connectedness {
    pub connected: bool,
    pub decided_by: DecidedBy,
}

/// Connectedness of a coset quandle over a p-group. If `f` acts on
/// `G/Φ(G)` without eigenvalue 1 the quandle is connected; otherwise the
/// quandle is built and checked directly.
pub fn connectedness_frattini(spec: &PcCoset) -> Result<Connectedness> {
    let g = spec.group();
    let phi = g.frattini();
    let induced = aut_induced(g, &spec.aut, &phi)?;
    let m = induced.matrix.expect("G/Φ(G) is elementary abelian");
    let p = g.p();
    let shifted: Vec<Vec<u32>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, &x)| if i == j { (x + p - 1) % p } else { x })
                .collect()
        })
        .collect();
    if !shifted.is_empty() && det_mod(&shifted, p) != 0 {
        return Ok(Connectedness {
            connected: true,
            decided_by: DecidedBy::FrattiniCriterion,
        });
    }
    let (q, _) = spec.quandle();
    Ok(Connectedness {
        connected: q.is_connected(),
        decided_by: DecidedBy::Direct,
    })
}

/// `Q ≅ Q_Hom(Dis(Q), Dis(Q)_a, conjugation by L_a)`.
#[derive(Clone, Debug)]
pub struct MinimalRepresentation {
    pub spec: CosetSpec<PermGroup>,
    pub quandle: Quandle,
    /// Coset label → element of Q, via `gH ↦ g(a)`.
    pub witness: Vec<usize>,
}

pub fn minimal_representation(q: &Quandle, a: usize) -> Result<MinimalRepresentation> {
    if !q.is_connected() {
        return Err(Error::NotConnected);
    }
    let dis = q.dis()?.clone();
    let la = q.left_translation(a);
    let la_inv = la.inverse();
    let aut: Vec<u32> = dis
        .elements()
        .iter()
        .map(|g| {
            let c = la.mul(&g.mul(&la_inv));
            dis.index_of(&c).expect("Dis(Q) is normal in Lmlt(Q)") as u32
        })
        .collect();
    let stab = stabilizer(&dis, a);
    let h: Vec<usize> = stab
        .elements()
        .iter()
        .map(|x| dis.index_of(x).expect("stabilizer lies in Dis(Q)"))
        .collect();
    let subgroup = Subgroup::from_sorted_unchecked(h);
    let spec = CosetSpec::new(dis, subgroup, aut)?;
    let (rebuilt, labels) = coset_quandle(&spec);
    let witness: Vec<usize> = labels
        .reps
        .iter()
        .map(|&r| spec.group.element(r).apply(a))
        .collect();
    if !rebuilt.is_isomorphism_to(q, &witness) {
        return Err(Error::Verification(
            "minimal representation witness is not an isomorphism".into(),
        ));
    }
    Ok(MinimalRepresentation {
        spec,
        quandle: rebuilt,
        witness,
    })
}

/// A list of automorphisms to search, with a flag saying whether it is
/// known to be all of `Aut(G)`.
#[derive(Clone, Debug)]
pub struct AutUniverse {
    pub auts: Vec<GroupAut>,
    pub complete: bool,
}

#[derive(Clone, Debug)]
pub struct CosetIso {
    pub witness: Option<GroupAut>,
    /// True when a witness was found or the universe was complete, so a
    /// missing witness means the quandles are not isomorphic.
    pub definitive: bool,
}

/// Searches `h` with `f2 = h⁻¹ f1 h` and `h(H2) = H1`.
pub fn coset_iso(s1: &PcCoset, s2: &PcCoset, universe: &AutUniverse) -> Result<CosetIso> {
    let g = s1.group();
    if !Arc::ptr_eq(g, s2.group()) && g.family() != s2.group().family() {
        return Err(Error::GroupMismatch);
    }
    if universe
        .auts
        .iter()
        .any(|h| h.group().family() != g.family())
    {
        return Err(Error::GroupMismatch);
    }
    if s1.subgroup.order() != s2.subgroup.order() {
        return Ok(CosetIso {
            witness: None,
            definitive: universe.complete,
        });
    }
    let gens = g.generator_indices();
    let f1 = &s1.aut;
    let f2 = &s2.aut;
    for h in &universe.auts {
        let conj = gens
            .iter()
            .all(|&x| h.apply(f2.apply(x)) == f1.apply(h.apply(x)));
        if !conj {
            continue;
        }
        if s2
            .subgroup
            .elements()
            .iter()
            .all(|&x| s1.subgroup.contains(h.apply(x)))
        {
            return Ok(CosetIso {
                witness: Some(h.clone()),
                definitive: true,
            });
        }
    }
    Ok(CosetIso {
        witness: None,
        definitive: universe.complete,
    })
}
