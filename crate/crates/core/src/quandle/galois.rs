//! The congruence/subgroup Galois connection and centrality.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{Congruence, Quandle};
use crate::error::{Error, Result};
use crate::perm::{center, Perm, PermGroup, DEFAULT_CAP};

/// `N ∈ Norm(Q)`: a subgroup of `Dis(Q)`, normal in it, and invariant under
/// conjugation by every left translation.
pub fn check_norm(q: &Quandle, n: &PermGroup) -> Result<()> {
    let dis = q.dis()?;
    if n.degree() != q.size() {
        return Err(Error::DegreeMismatch {
            left: q.size(),
            right: n.degree(),
        });
    }
    if !n.is_subgroup_of(dis) {
        return Err(Error::NotInNorm("not contained in Dis(Q)".into()));
    }
    if !n.is_normal_in(dis) {
        return Err(Error::NotInNorm("not normal in Dis(Q)".into()));
    }
    for a in 0..q.size() {
        let la = q.left_translation(a);
        if !n.gens().iter().all(|x| n.contains(&x.conjugate_by(&la))) {
            return Err(Error::NotInNorm(format!(
                "not invariant under conjugation by L_{a}"
            )));
        }
    }
    Ok(())
}

/// `O_N`: the orbits of N.
pub fn orbit_congruence(q: &Quandle, n: &PermGroup) -> Result<Congruence> {
    check_norm(q, n)?;
    Ok(orbits_of(q.size(), n))
}

pub(crate) fn orbits_of(size: usize, n: &PermGroup) -> Congruence {
    Congruence::from_blocks(size, &n.orbits())
}

/// `Con(N) = {(a, b) : L_a L_b⁻¹ ∈ N}`.
pub fn con_subgroup(q: &Quandle, n: &PermGroup) -> Result<Congruence> {
    check_norm(q, n)?;
    Ok(con_unchecked(q, n))
}

pub(crate) fn con_unchecked(q: &Quandle, n: &PermGroup) -> Congruence {
    let mut reps: Vec<(usize, Perm)> = Vec::new();
    let mut labels = vec![0usize; q.size()];
    for a in 0..q.size() {
        let la = q.left_translation(a);
        let hit = reps
            .iter()
            .find(|(_, rinv)| n.contains(&la.mul(rinv)))
            .map(|(c, _)| *c);
        labels[a] = match hit {
            Some(c) => c,
            None => {
                reps.push((reps.len(), la.inverse()));
                reps.len() - 1
            }
        };
    }
    Congruence::from_labels(&labels)
}

/// `Dis_α = ⟨L_a L_b⁻¹ : a α b⟩`.
pub fn dis_alpha(q: &Quandle, alpha: &Congruence) -> Result<PermGroup> {
    alpha.validate(q)?;
    let mut g = PermGroup::trivial(q.size());
    for block in alpha.classes() {
        let r_inv = q.left_translation(block[0]).inverse();
        for &a in &block[1..] {
            g.extend(&q.left_translation(a).mul(&r_inv), DEFAULT_CAP)?;
        }
    }
    Ok(g)
}

/// `Dis^α`: elements of `Dis(Q)` fixing every block of α.
pub fn dis_ker(q: &Quandle, alpha: &Congruence) -> Result<PermGroup> {
    alpha.validate(q)?;
    let dis = q.dis()?;
    Ok(dis.filter(|h| (0..q.size()).all(|x| alpha.related(h.apply(x), x))))
}

/// `Q/α` together with the projection `Q → Q/α`.
pub fn quotient_quandle(q: &Quandle, alpha: &Congruence) -> Result<(Quandle, Vec<usize>)> {
    alpha.validate(q)?;
    let m = alpha.num_classes();
    let mut t = vec![0u32; m * m];
    for (i, bi) in alpha.classes().iter().enumerate() {
        for (j, bj) in alpha.classes().iter().enumerate() {
            t[i * m + j] = alpha.class_of(q.op(bi[0], bj[0])) as u32;
        }
    }
    let proj = alpha.labels().to_vec();
    Ok((Quandle::from_flat_trusted(m, t), proj))
}

/// `λ_Q`: equal left translations.
pub fn lambda_congruence(q: &Quandle) -> Congruence {
    let mut seen: HashMap<&[u32], usize> = HashMap::new();
    let labels: Vec<usize> = (0..q.size())
        .map(|a| {
            let next = seen.len();
            *seen.entry(q.row(a)).or_insert(next)
        })
        .collect();
    Congruence::from_labels(&labels)
}

/// `γ₁(Q) = O_{γ₁(Dis Q)}` for connected Q.
pub fn gamma1_quandle(q: &Quandle) -> Result<Congruence> {
    if !q.is_connected() {
        return Err(Error::NotConnected);
    }
    let derived = q.dis()?.derived_subgroup()?;
    Ok(orbits_of(q.size(), &derived))
}

/// `σ_Q`: equal point stabilizers in `Dis(Q)`.
pub fn sigma_congruence(q: &Quandle) -> Result<Congruence> {
    let dis = q.dis()?;
    let stabs = stabilizer_sets(q.size(), dis);
    let mut seen: HashMap<&Vec<usize>, usize> = HashMap::new();
    let labels: Vec<usize> = stabs
        .iter()
        .map(|s| {
            let next = seen.len();
            *seen.entry(s).or_insert(next)
        })
        .collect();
    Ok(Congruence::from_labels(&labels))
}

fn stabilizer_sets(n: usize, g: &PermGroup) -> Vec<Vec<usize>> {
    let mut stabs = vec![Vec::new(); n];
    for (i, h) in g.elements().iter().enumerate() {
        for (x, s) in stabs.iter_mut().enumerate() {
            if h.fixes(x) {
                s.push(i);
            }
        }
    }
    stabs
}

/// `ζ_Q = Con(Z(Dis Q)) ∩ σ_Q`.
pub fn center_congruence(q: &Quandle) -> Result<Congruence> {
    let z = center(q.dis()?);
    Ok(con_unchecked(q, &z).meet(&sigma_congruence(q)?))
}

/// α is central iff `Dis_α` is central in `Dis(Q)` and stabilizers are
/// constant on blocks.
pub fn is_central(q: &Quandle, alpha: &Congruence) -> Result<bool> {
    let da = dis_alpha(q, alpha)?;
    let dis = q.dis()?;
    let commutes = da
        .gens()
        .iter()
        .all(|x| dis.gens().iter().all(|y| x.mul(y) == y.mul(x)));
    if !commutes {
        return Ok(false);
    }
    let stabs = stabilizer_sets(q.size(), dis);
    Ok(alpha
        .classes()
        .iter()
        .all(|b| b.iter().all(|&x| stabs[x] == stabs[b[0]])))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilpotencyCertificate {
    pub length: usize,
    /// Block sizes of `γ₁(Q)` when the length is 2.
    pub gamma1_blocks: Vec<usize>,
    /// `|Dis(Q/γ₁(Q))|`, abelian when the length is 2.
    pub quotient_dis_order: usize,
}

/// Certifies nilpotency length 0, 1 or 2 for a connected quandle.
pub fn nilpotency_length2_certificate(q: &Quandle) -> Result<NilpotencyCertificate> {
    if q.size() <= 1 {
        return Ok(NilpotencyCertificate {
            length: 0,
            gamma1_blocks: vec![q.size()],
            quotient_dis_order: 1,
        });
    }
    if !q.is_connected() {
        return Err(Error::NotConnected);
    }
    let dis = q.dis()?;
    if dis.is_abelian() {
        return Ok(NilpotencyCertificate {
            length: 1,
            gamma1_blocks: vec![1; q.size()],
            quotient_dis_order: dis.order(),
        });
    }
    let g1 = gamma1_quandle(q)?;
    if g1.is_discrete() {
        return Err(Error::Hypothesis(
            "γ₁(Q) is trivial for non-abelian Dis".into(),
        ));
    }
    let (quot, _) = quotient_quandle(q, &g1)?;
    let qd = quot.dis()?;
    if !qd.is_abelian() {
        return Err(Error::Hypothesis("Q/γ₁(Q) is not abelian".into()));
    }
    if !is_central(q, &g1)? {
        return Err(Error::Hypothesis("γ₁(Q) is not central".into()));
    }
    Ok(NilpotencyCertificate {
        length: 2,
        gamma1_blocks: g1.block_profile(),
        quotient_dis_order: qd.order(),
    })
}
