use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use super::{build_all, Built, ClassRecord, Family};
use crate::error::Result;
use crate::group::FiniteGroup;
use crate::pcgroup::PcGroup;
use crate::perm::{center, stabilizer, Perm, PermGroup};
use crate::quandle::{nilpotency_length2_certificate, Quandle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Quick,
    /// Adds the explicit isomorphism between `Dis(Q)` and the record's group.
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecordReport {
    pub family: Family,
    pub params: Vec<u32>,
    pub checks: Vec<Check>,
}

impl RecordReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

pub fn verify_record(rec: &ClassRecord, level: Level) -> Result<RecordReport> {
    let built = build_all(std::slice::from_ref(rec))?.remove(0);
    Ok(verify_built(&built, level))
}

fn check(name: &'static str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name,
        passed,
        detail: detail.into(),
    }
}

/// Every property the tables claim for the record, each as a named check.
/// Checks that cannot run because an earlier one failed are reported as
/// failures with the reason.
pub fn verify_built(b: &Built, level: Level) -> RecordReport {
    let rec = &b.record;
    let q = &b.quandle;
    let p = rec.p as usize;
    let mut checks = Vec::new();

    let axioms = Quandle::from_flat(q.size(), q.flat_table().to_vec());
    checks.push(check(
        "axioms",
        axioms.is_ok(),
        axioms.err().map_or(String::new(), |e| e.to_string()),
    ));
    checks.push(check(
        "size",
        q.size() == rec.size && q.size() == p.pow(3),
        format!("{}", q.size()),
    ));
    let connected = q.is_connected();
    checks.push(check("connected", connected, ""));

    let dis = match q.dis() {
        Ok(d) => d,
        Err(e) => {
            checks.push(check("dis", false, e.to_string()));
            return report(rec, checks);
        }
    };
    let flags = (
        q.is_latin(),
        q.is_faithful(),
        connected && dis.order() == q.size(),
    );
    let want = (rec.flags.latin, rec.flags.faithful, rec.flags.principal);
    checks.push(check(
        "flags",
        flags == want,
        format!("latin/faithful/principal = {flags:?}, expected {want:?}"),
    ));
    checks.push(check(
        "dis_order",
        dis.order() == rec.dis_order,
        format!("{} (expected {})", dis.order(), rec.dis_order),
    ));
    let z = center(dis);
    checks.push(check(
        "z_order",
        z.order() == rec.z_order,
        format!("{} (expected {})", z.order(), rec.z_order),
    ));
    checks.push(check(
        "dis_bound",
        dis.order() <= p.pow(4),
        format!("{} ≤ {}", dis.order(), p.pow(4)),
    ));
    if !connected {
        return report(rec, checks);
    }
    match nilpotency_length2_certificate(q) {
        Ok(c) => checks.push(check(
            "nilpotency_length",
            c.length == 2,
            format!("length {}", c.length),
        )),
        Err(e) => checks.push(check("nilpotency_length", false, e.to_string())),
    }
    match dis.derived_subgroup() {
        Ok(d) => {
            let stab = stabilizer(dis, 0);
            checks.push(check(
                "stabilizer_in_derived",
                stab.is_subgroup_of(&d),
                format!("|Dis_0| = {}, |γ₁(Dis)| = {}", stab.order(), d.order()),
            ));
        }
        Err(e) => checks.push(check("stabilizer_in_derived", false, e.to_string())),
    }
    if level == Level::Full {
        checks.push(dis_family_check(b, dis));
    }
    report(rec, checks)
}

fn report(rec: &ClassRecord, checks: Vec<Check>) -> RecordReport {
    RecordReport {
        family: rec.family,
        params: rec.params.clone(),
        checks,
    }
}

/// `Dis(Q)` against the record's group: matching order, exponent, centre
/// and derived subgroup orders, then an explicit isomorphism given by the
/// action of G on the cosets of H.
fn dis_family_check(b: &Built, dis: &PermGroup) -> Check {
    let g = b.coset.group();
    let mut problems = Vec::new();
    let derived = dis.derived_subgroup().map(|d| d.order()).unwrap_or(0);
    let ours = (dis.order(), dis.exponent(), center(dis).order(), derived);
    let theirs = (
        g.order(),
        g.exponent(),
        g.center().order(),
        g.derived_subgroup().order(),
    );
    if ours != theirs {
        problems.push(format!(
            "order/exponent/|Z|/|G'| = {ours:?}, group has {theirs:?}"
        ));
    } else if let Err(e) = coset_action_iso(g, b, dis) {
        problems.push(e);
    }
    check(
        "dis_family",
        problems.is_empty(),
        if problems.is_empty() {
            format!("Dis(Q) ≅ {}", g.family().name())
        } else {
            problems.join("; ")
        },
    )
}

fn coset_action_iso(
    g: &Arc<PcGroup>,
    b: &Built,
    dis: &PermGroup,
) -> std::result::Result<(), String> {
    let reps = &b.labels.reps;
    let act = |x: usize| -> Perm {
        Perm::from_u32_unchecked(
            reps.iter()
                .map(|&r| b.labels.label_of[g.mul(x, r)] as u32)
                .collect(),
        )
    };
    let images: Vec<Perm> = (0..g.order()).map(act).collect();
    for x in 0..g.order() {
        for s in g.generator_indices() {
            if images[g.mul(x, s)] != images[x].mul(&images[s]) {
                return Err(format!("coset action is not a homomorphism at ({x}, {s})"));
            }
        }
    }
    let distinct: HashSet<&Perm> = images.iter().collect();
    if distinct.len() != g.order() {
        return Err("coset action is not faithful".into());
    }
    if let Some(x) = images.iter().position(|h| !dis.contains(h)) {
        return Err(format!("image of element {x} is not in Dis(Q)"));
    }
    if dis.order() != g.order() {
        return Err("orders differ".into());
    }
    Ok(())
}
