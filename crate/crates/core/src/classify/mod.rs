//! Non-affine connected quandles of order p³ for primes p > 3: the
//! representative automorphisms, their counts and their verification.
//!
//! Principal quandles live over `Heis = Z_p² ⋊ Z_p` with `H = 1`;
//! non-principal ones over `G7`–`G10` with `H = Fix(f)`. The involutory
//! latin ones are listed separately.

mod noniso;
mod verify;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::arith::{inv_mod, is_prime, quadratic_irreducible, smallest_nonresidue};
use crate::construct::{CosetLabels, PcCoset};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::pcgroup::{pc_aut, FamilyTag, GroupAut, GroupFamily, PcElement, PcGroup};
use crate::quandle::Quandle;

pub use noniso::{
    centralizer_order, conjugacy_class_size, pairwise_noniso, Invariants, NonIsoReport,
};
pub use verify::{verify_built, verify_record, Check, Level, RecordReport};

/// Number of Bruck loops of order p³: the four non-associative ones from
/// the involutory list plus the three abelian groups of order p³.
pub const BRUCK_TOTAL: usize = 7;

/// Which list a record comes from and its row there.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Principal quandles over Heis, rows 1 to 6.
    Principal(u8),
    /// Non-principal quandles over G7 to G10, rows 1 to 9.
    NonPrincipal(u8),
    /// Involutory latin quandles, rows 1 to 4.
    Involutory(u8),
}

impl Family {
    pub fn all() -> Vec<Family> {
        let mut v: Vec<Family> = (1..=6).map(Family::Principal).collect();
        v.extend((1..=9).map(Family::NonPrincipal));
        v.extend((1..=4).map(Family::Involutory));
        v
    }

    pub fn row(self) -> u8 {
        match self {
            Family::Principal(r) | Family::NonPrincipal(r) | Family::Involutory(r) => r,
        }
    }

    pub fn tag(self) -> String {
        let table = match self {
            Family::NonPrincipal(_) => 1,
            Family::Principal(_) => 2,
            Family::Involutory(_) => 3,
        };
        format!("table{table}.row{}", self.row())
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::all()
            .into_iter()
            .find(|f| f.tag() == s)
            .ok_or_else(|| Error::InvalidFamily(format!("unknown record family {s:?}")))
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.tag())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub latin: bool,
    pub faithful: bool,
    pub principal: bool,
}

/// One representative together with the properties the tables assert.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRecord {
    pub family: Family,
    pub params: Vec<u32>,
    #[serde(serialize_with = "group_name")]
    pub group: GroupFamily,
    pub p: u32,
    /// Exponent vectors of the images of the top generators `g1, g2`.
    pub aut_images: Vec<Vec<u32>>,
    pub flags: Flags,
    pub dis_order: usize,
    pub z_order: usize,
    pub size: usize,
}

fn group_name<S: Serializer>(g: &GroupFamily, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&g.name())
}

impl ClassRecord {
    pub fn tsv_header() -> &'static str {
        "family\tparams\tgroup\tp\taut_images\tlatin\tfaithful\tprincipal\tdis_order\tz_order"
    }

    pub fn tsv_row(&self) -> String {
        let params: Vec<String> = self.params.iter().map(u32::to_string).collect();
        let images: Vec<String> = self
            .aut_images
            .iter()
            .map(|e| {
                let v: Vec<String> = e.iter().map(u32::to_string).collect();
                format!("({})", v.join(","))
            })
            .collect();
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.family,
            params.join(","),
            self.group.name(),
            self.p,
            images.join(" "),
            self.flags.latin,
            self.flags.faithful,
            self.flags.principal,
            self.dis_order,
            self.z_order
        )
    }

    /// The record's automorphism inside `g`, which must be its group.
    pub fn automorphism(&self, g: &Arc<PcGroup>) -> Result<GroupAut> {
        if g.family() != self.group {
            return Err(Error::GroupMismatch);
        }
        let images: Vec<PcElement> = self
            .aut_images
            .iter()
            .map(|e| PcElement::new(e.clone()))
            .collect();
        pc_aut(g, &images)
    }

    /// `(G, 1, f)` for principal records, `(G, Fix(f), f)` otherwise.
    pub fn coset(&self, g: &Arc<PcGroup>) -> Result<PcCoset> {
        let f = self.automorphism(g)?;
        Ok(if self.flags.principal {
            PcCoset::principal(f)
        } else {
            PcCoset::with_fix(f)
        })
    }
}

/// A record with its group, coset data and quandle.
#[derive(Clone, Debug)]
pub struct Built {
    pub record: ClassRecord,
    pub coset: PcCoset,
    pub quandle: Quandle,
    pub labels: CosetLabels,
}

/// Shares one `PcGroup` per family among records.
#[derive(Default)]
pub struct GroupCache {
    groups: BTreeMap<String, Arc<PcGroup>>,
}

impl GroupCache {
    pub fn get(&mut self, fam: GroupFamily) -> Result<Arc<PcGroup>> {
        let key = format!("{:?}", fam);
        if let Some(g) = self.groups.get(&key) {
            return Ok(g.clone());
        }
        let g = Arc::new(PcGroup::new(fam)?);
        self.groups.insert(key, g.clone());
        Ok(g)
    }
}

pub fn build_record(rec: &ClassRecord) -> Result<Quandle> {
    let g = Arc::new(PcGroup::new(rec.group)?);
    Ok(build_in(rec, &g)?.quandle)
}

fn build_in(rec: &ClassRecord, g: &Arc<PcGroup>) -> Result<Built> {
    let coset = rec.coset(g)?;
    let (quandle, labels) = coset.quandle();
    Ok(Built {
        record: rec.clone(),
        coset,
        quandle,
        labels,
    })
}

/// Builds every record, in parallel, keeping the input order.
pub fn build_all(records: &[ClassRecord]) -> Result<Vec<Built>> {
    let mut cache = GroupCache::default();
    let groups: Vec<Arc<PcGroup>> = records
        .iter()
        .map(|r| cache.get(r.group))
        .collect::<Result<_>>()?;
    records
        .par_iter()
        .zip(groups.par_iter())
        .map(|(r, g)| build_in(r, g))
        .collect()
}

/// p must be a prime greater than 3.
pub fn check_prime(p: u32) -> Result<()> {
    if p <= 3 || !is_prime(p as u64) {
        return Err(Error::BadPrime(p));
    }
    Ok(())
}

/// All principal and non-principal records, principal first, each list in
/// row order and then by parameters. `w` is the smallest non-residue.
pub fn classify_p3(p: u32) -> Result<Vec<ClassRecord>> {
    check_prime(p)?;
    classify_p3_with_w(p, smallest_nonresidue(p))
}

/// As [`classify_p3`] with a chosen non-residue `w`, used both as the
/// parameter of G10 and as the residue-class marker in the G7 and G8 rows.
pub fn classify_p3_with_w(p: u32, w: u32) -> Result<Vec<ClassRecord>> {
    check_prime(p)?;
    GroupFamily::new(FamilyTag::G10 { w }, p).validate()?;
    let mut out = principal_records(p)?;
    out.extend(nonprincipal_records(p, w)?);
    Ok(out)
}

struct Maker {
    p: u32,
    group: Arc<PcGroup>,
}

impl Maker {
    fn new(fam: GroupFamily) -> Result<Self> {
        Ok(Maker {
            p: fam.p,
            group: Arc::new(PcGroup::new(fam)?),
        })
    }

    /// Product of generator powers, computed in the group so that negative
    /// and large exponents mean genuine powers.
    fn word(&self, parts: &[(usize, i64)]) -> Vec<u32> {
        let g = &self.group;
        let x = parts.iter().fold(g.identity(), |acc, &(i, e)| {
            g.mul(acc, g.pow(g.gen_index(i), e))
        });
        g.decode(x)
    }

    fn record(
        &self,
        family: Family,
        params: Vec<u32>,
        images: [&[(usize, i64)]; 2],
    ) -> ClassRecord {
        let p = self.p as usize;
        let principal = matches!(family, Family::Principal(_));
        let faithful = !matches!(family, Family::Principal(4..=6));
        ClassRecord {
            family,
            params,
            group: self.group.family(),
            p: self.p,
            aut_images: images.iter().map(|w| self.word(w)).collect(),
            flags: Flags {
                latin: faithful,
                faithful,
                principal,
            },
            dis_order: if principal { p.pow(3) } else { p.pow(4) },
            z_order: p,
            size: p.pow(3),
        }
    }
}

/// Monic irreducible `x² + bx + a` as `(b, a)` pairs in lexicographic order.
fn irreducible_quadratics(p: u32) -> Vec<(u32, u32)> {
    let mut v = Vec::new();
    for b in 0..p {
        for a in 1..p {
            if quadratic_irreducible(b, a, p) {
                v.push((b, a));
            }
        }
    }
    v
}

fn principal_records(p: u32) -> Result<Vec<ClassRecord>> {
    let m = Maker::new(GroupFamily::heis(p))?;
    let inv = |x: u32| inv_mod(x as u64, p as u64) as u32;
    let mut out = Vec::new();
    for l in 2..p {
        for mu in l..p {
            if (l as u64 * mu as u64) % p as u64 != 1 {
                let (li, mi) = (l as i64, mu as i64);
                out.push(m.record(Family::Principal(1), vec![l, mu], [&[(0, li)], &[(1, mi)]]));
            }
        }
    }
    for l in 2..p - 1 {
        let li = l as i64;
        out.push(m.record(
            Family::Principal(2),
            vec![l],
            [&[(0, li)], &[(0, 1), (1, li)]],
        ));
    }
    for (b, a) in irreducible_quadratics(p) {
        if a != 1 {
            let (ai, bi) = (a as i64, b as i64);
            out.push(m.record(
                Family::Principal(3),
                vec![b, a],
                [&[(1, 1)], &[(0, -ai), (1, -bi)]],
            ));
        }
    }
    for l in 2..p {
        if l < inv(l) || l == p - 1 {
            let (li, lv) = (l as i64, inv(l) as i64);
            out.push(m.record(Family::Principal(4), vec![l], [&[(0, li)], &[(1, lv)]]));
        }
    }
    out.push(m.record(
        Family::Principal(5),
        vec![],
        [&[(0, -1)], &[(0, 1), (1, -1)]],
    ));
    for (b, a) in irreducible_quadratics(p) {
        if a == 1 {
            let bi = b as i64;
            out.push(m.record(
                Family::Principal(6),
                vec![b],
                [&[(1, 1)], &[(0, -1), (1, -bi)]],
            ));
        }
    }
    Ok(out)
}

fn nonprincipal_records(p: u32, w: u32) -> Result<Vec<ClassRecord>> {
    let g7 = Maker::new(GroupFamily::new(FamilyTag::G7, p))?;
    let g8 = Maker::new(GroupFamily::new(FamilyTag::G8, p))?;
    let g9 = Maker::new(GroupFamily::new(FamilyTag::G9, p))?;
    let g10 = Maker::new(GroupFamily::new(FamilyTag::G10 { w }, p))?;
    let last = p as i64 - 1;
    let mut out = Vec::new();
    // G7 with f|_M = F_{a,0}.
    for a in 2..p - 1 {
        let ai = inv_mod(a as u64, p as u64) as i64;
        for b in 0..2u32 {
            out.push(g7.record(
                Family::NonPrincipal(1),
                vec![a, b],
                [&[(0, a as i64), (1, b as i64)], &[(1, ai)]],
            ));
        }
    }
    for (b, c) in [(0u32, 0u32), (1, 0), (0, 1)] {
        out.push(g7.record(
            Family::NonPrincipal(2),
            vec![b, c],
            [&[(0, -1), (1, b as i64), (3, c as i64)], &[(1, -1)]],
        ));
    }
    for (s, b) in [(1, 0u32), (1, 1), (w, 0), (w, 1)] {
        out.push(g7.record(
            Family::NonPrincipal(3),
            vec![s, b],
            [&[(0, -1), (1, b as i64)], &[(1, -1), (3, s as i64)]],
        ));
    }
    // G8 with f|_M = G_{a,k}.
    for a in 2..p - 1 {
        let ai = inv_mod(a as u64, p as u64) as i64;
        for b in 0..p {
            out.push(g8.record(
                Family::NonPrincipal(4),
                vec![a, b],
                [&[(0, a as i64), (3, b as i64)], &[(1, ai)]],
            ));
        }
    }
    for k in 0..p {
        for s in [1, w] {
            out.push(g8.record(
                Family::NonPrincipal(5),
                vec![k, s],
                [&[(0, last), (1, s as i64)], &[(1, -1), (3, k as i64)]],
            ));
        }
    }
    for k in [1, w] {
        out.push(g8.record(
            Family::NonPrincipal(6),
            vec![k],
            [&[(0, last)], &[(1, -1), (3, k as i64)]],
        ));
    }
    for k in 0..p {
        out.push(g8.record(
            Family::NonPrincipal(7),
            vec![k],
            [&[(0, last), (3, k as i64)], &[(1, -1)]],
        ));
    }
    // G9 and G10 with f|_M = F = diag(1, −1).
    for (row, m) in [(8u8, &g9), (9, &g10)] {
        for k in 0..2u32 {
            for s in 0..p {
                out.push(m.record(
                    Family::NonPrincipal(row),
                    vec![k, s],
                    [&[(0, -1), (2, k as i64)], &[(1, -1), (3, s as i64)]],
                ));
            }
        }
    }
    Ok(out)
}

/// The four involutory latin records.
pub fn involutory_records(p: u32) -> Result<Vec<ClassRecord>> {
    check_prime(p)?;
    let fams = [
        FamilyTag::G7,
        FamilyTag::G8,
        FamilyTag::G9,
        FamilyTag::G10 {
            w: smallest_nonresidue(p),
        },
    ];
    fams.iter()
        .zip(1u8..)
        .map(|(&tag, row)| {
            let m = Maker::new(GroupFamily::new(tag, p))?;
            Ok(m.record(Family::Involutory(row), vec![], [&[(0, -1)], &[(1, -1)]]))
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct InvolutoryReps {
    pub records: Vec<ClassRecord>,
    pub bruck_total: usize,
}

/// The involutory latin records, each checked to be involutory and latin.
pub fn involutory_reps(p: u32) -> Result<InvolutoryReps> {
    let records = involutory_records(p)?;
    for b in build_all(&records)? {
        if !b.quandle.is_involutory() || !b.quandle.is_latin() {
            return Err(Error::Verification(format!(
                "{} is not an involutory latin quandle",
                b.record.family
            )));
        }
    }
    Ok(InvolutoryReps {
        records,
        bruck_total: BRUCK_TOTAL,
    })
}

/// Closed-form counts from the tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountFormulas {
    pub latin_principal: usize,
    pub nonfaithful: usize,
    pub principal: usize,
    pub nonprincipal: usize,
    pub total: usize,
    pub per_family: BTreeMap<String, usize>,
}

pub fn count_formulas(p: u32) -> Result<CountFormulas> {
    check_prime(p)?;
    let q = p as usize;
    let principal = [
        (q - 1) * (q - 3) / 2,
        q - 3,
        (q - 1) * (q - 1) / 2,
        (q - 1) / 2,
        1,
        (q - 1) / 2,
    ];
    let nonprincipal = [2 * (q - 3), 3, 4, q * (q - 3), 2 * q, 2, q, 2 * q, 2 * q];
    let mut per_family = BTreeMap::new();
    for (i, &c) in principal.iter().enumerate() {
        per_family.insert(Family::Principal(i as u8 + 1).tag(), c);
    }
    for (i, &c) in nonprincipal.iter().enumerate() {
        per_family.insert(Family::NonPrincipal(i as u8 + 1).tag(), c);
    }
    let np: usize = nonprincipal.iter().sum();
    let pr: usize = principal.iter().sum();
    Ok(CountFormulas {
        latin_principal: q * q - 2 * q - 1,
        nonfaithful: q,
        principal: pr,
        nonprincipal: np,
        total: pr + np,
        per_family,
    })
}

/// Record counts per family tag.
pub fn family_counts(records: &[ClassRecord]) -> BTreeMap<String, usize> {
    let mut m = BTreeMap::new();
    for r in records {
        *m.entry(r.family.tag()).or_insert(0) += 1;
    }
    m
}

/// `γ₁(G) = Fix(f) × Z(G)` with both factors of order p.
pub fn condition_a(f: &GroupAut) -> bool {
    let g = f.group();
    let p = g.p() as usize;
    let fix = crate::pcgroup::aut_fix(f);
    let z = g.center();
    let derived = g.derived_subgroup();
    if fix.order() != p || z.order() != p || fix.intersection(&z).order() != 1 {
        return false;
    }
    let mut product: Vec<usize> = fix
        .elements()
        .iter()
        .flat_map(|&a| z.elements().iter().map(move |&b| g.mul(a, b)))
        .collect();
    product.sort_unstable();
    product.dedup();
    product == derived.elements()
}

/// Fixed points of f on `G/γ₁(G)` are trivial.
pub fn fix_trivial_mod_derived(f: &GroupAut) -> Result<bool> {
    let g = f.group();
    let induced = crate::pcgroup::aut_induced(g, f, &g.derived_subgroup())?;
    Ok((0..induced.reps.len()).all(|c| c == 0 || induced.map[c] != c))
}

/// Fix(f) as a subgroup.
pub fn fix_subgroup(f: &GroupAut) -> Subgroup {
    crate::pcgroup::aut_fix(f)
}

/// Outcome of the check that no principal quandle over `Z_p² ⋊ Z_p` is
/// connected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ModMaxReport {
    pub automorphisms: usize,
    pub connected: usize,
}

/// Builds the principal quandle of every automorphism of `Z_p² ⋊ Z_p`
/// and counts the connected ones.
pub fn modmax_exclusion(p: u32) -> Result<ModMaxReport> {
    let g = Arc::new(PcGroup::new(GroupFamily::new(FamilyTag::ModMax, p))?);
    let auts = crate::oracle::aut_bruteforce(&g)?;
    let connected = auts
        .par_iter()
        .filter(|f| PcCoset::principal((*f).clone()).quandle().0.is_connected())
        .count();
    Ok(ModMaxReport {
        automorphisms: auts.len(),
        connected,
    })
}
