//! Finite quandles as Cayley tables, their multiplication groups and
//! congruences.

mod congruence;
mod galois;
mod generators;

use std::fmt::Write as _;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{Perm, PermGroup, DEFAULT_CAP};

pub use congruence::{all_congruences, Congruence, CONGRUENCE_CAP};
pub use galois::{
    center_congruence, check_norm, con_subgroup, dis_alpha, dis_ker, gamma1_quandle, is_central,
    lambda_congruence, nilpotency_length2_certificate, orbit_congruence, quotient_quandle,
    sigma_congruence, NilpotencyCertificate,
};
pub use generators::{minimal_generating_size, subquandle_closure, GeneratingSize};

/// A quandle on `0..n`; `table[a*n + b] = a ∗ b`.
#[derive(Clone)]
pub struct Quandle {
    n: usize,
    table: Vec<u32>,
    ldiv: Vec<u32>,
    lmlt: OnceLock<Result<PermGroup>>,
    dis: OnceLock<Result<PermGroup>>,
}

impl std::fmt::Debug for Quandle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Quandle(n={})", self.n)
    }
}

impl PartialEq for Quandle {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
    }
}

impl Eq for Quandle {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Predicates {
    pub connected: bool,
    pub latin: bool,
    pub faithful: bool,
    pub principal: bool,
}

/// Validates the quandle axioms on a square table.
pub fn quandle_from_table(rows: &[Vec<usize>]) -> Result<Quandle> {
    let n = rows.len();
    let mut flat = Vec::with_capacity(n * n);
    for (a, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Parse {
                line: a + 2,
                msg: format!("row {a} has {} entries, expected {n}", row.len()),
            });
        }
        for (b, &x) in row.iter().enumerate() {
            if x >= n {
                return Err(Error::EntryOutOfRange { row: a, col: b });
            }
            flat.push(x as u32);
        }
    }
    Quandle::from_flat(n, flat)
}

impl Quandle {
    pub fn from_flat(n: usize, table: Vec<u32>) -> Result<Self> {
        assert_eq!(table.len(), n * n, "table must be n×n");
        if let Some(pos) = table.iter().position(|&x| x as usize >= n) {
            return Err(Error::EntryOutOfRange {
                row: pos / n,
                col: pos % n,
            });
        }
        let q = Quandle::build(n, table)?;
        for a in 0..n {
            if q.op(a, a) != a {
                return Err(Error::NotIdempotent(a));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = q.op(a, b);
                for c in 0..n {
                    if q.op(a, q.op(b, c)) != q.op(ab, q.op(a, c)) {
                        return Err(Error::NotLeftDistributive(a, b, c));
                    }
                }
            }
        }
        Ok(q)
    }

    /// Fills in left division; only checks that rows are permutations.
    fn build(n: usize, table: Vec<u32>) -> Result<Self> {
        let mut ldiv = vec![u32::MAX; n * n];
        for a in 0..n {
            for b in 0..n {
                let c = table[a * n + b] as usize;
                if ldiv[a * n + c] != u32::MAX {
                    return Err(Error::RowNotPermutation { row: a });
                }
                ldiv[a * n + c] = b as u32;
            }
        }
        Ok(Quandle {
            n,
            table,
            ldiv,
            lmlt: OnceLock::new(),
            dis: OnceLock::new(),
        })
    }

    /// For tables that satisfy the axioms by construction; the axioms are
    /// still checked in debug builds.
    pub(crate) fn from_flat_trusted(n: usize, table: Vec<u32>) -> Self {
        if cfg!(debug_assertions) && n <= 64 {
            return Quandle::from_flat(n, table).expect("constructed table is a quandle");
        }
        Quandle::build(n, table).expect("constructed table has permutation rows")
    }

    /// One-point quandle, trivial quandles and the like.
    pub fn trivial(n: usize) -> Self {
        let table = (0..n * n).map(|i| (i % n) as u32).collect();
        Quandle::from_flat_trusted(n, table)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    pub fn ldiv(&self, a: usize, b: usize) -> usize {
        self.ldiv[a * self.n + b] as usize
    }

    pub fn row(&self, a: usize) -> &[u32] {
        &self.table[a * self.n..(a + 1) * self.n]
    }

    pub fn flat_table(&self) -> &[u32] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|a| self.row(a).iter().map(|&x| x as usize).collect())
            .collect()
    }

    pub fn left_translation(&self, a: usize) -> Perm {
        Perm::from_u32_unchecked(self.row(a).to_vec())
    }

    pub fn lmlt(&self) -> Result<&PermGroup> {
        self.lmlt
            .get_or_init(|| {
                let mut g = self.dis()?.clone();
                if self.n > 0 {
                    g.extend(&self.left_translation(0), DEFAULT_CAP)?;
                }
                Ok(g)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// `Dis(Q) = ⟨L_a L_0⁻¹⟩`, which equals `⟨L_a L_b⁻¹⟩`.
    pub fn dis(&self) -> Result<&PermGroup> {
        self.dis
            .get_or_init(|| {
                let mut g = PermGroup::trivial(self.n);
                if self.n == 0 {
                    return Ok(g);
                }
                let l0_inv = self.left_translation(0).inverse();
                for a in 1..self.n {
                    let x = self.left_translation(a).mul(&l0_inv);
                    g.extend(&x, DEFAULT_CAP)?;
                }
                Ok(g)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Transitivity of `Lmlt(Q)`, by a search over left translations.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut stack = vec![0usize];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for a in 0..self.n {
                for y in [self.op(a, x), self.ldiv(a, x)] {
                    if !seen[y] {
                        seen[y] = true;
                        count += 1;
                        stack.push(y);
                    }
                }
            }
        }
        count == self.n
    }

    pub fn is_latin(&self) -> bool {
        (0..self.n).all(|b| {
            let mut seen = vec![false; self.n];
            (0..self.n).all(|a| !std::mem::replace(&mut seen[self.op(a, b)], true))
        })
    }

    pub fn is_faithful(&self) -> bool {
        let mut rows: Vec<&[u32]> = (0..self.n).map(|a| self.row(a)).collect();
        rows.sort_unstable();
        rows.windows(2).all(|w| w[0] != w[1])
    }

    /// Connected with trivial point stabilizers in `Dis(Q)`.
    pub fn is_principal(&self) -> Result<bool> {
        Ok(self.is_connected() && self.dis()?.order() == self.n)
    }

    /// `L_a ∘ L_a = id` for every a.
    pub fn is_involutory(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.op(a, self.op(a, b)) == b))
    }

    pub fn predicates(&self) -> Result<Predicates> {
        Ok(Predicates {
            connected: self.is_connected(),
            latin: self.is_latin(),
            faithful: self.is_faithful(),
            principal: self.is_principal()?,
        })
    }

    /// Sorted cycle type of every left translation, sorted; an isomorphism
    /// invariant.
    pub fn cycle_type_profile(&self) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = (0..self.n)
            .map(|a| self.left_translation(a).cycle_type())
            .collect();
        v.sort();
        v
    }

    /// Applies a relabelling `phi` (old → new) to get an isomorphic table.
    pub fn relabel(&self, phi: &[usize]) -> Quandle {
        let n = self.n;
        let mut t = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                t[phi[a] * n + phi[b]] = phi[self.op(a, b)] as u32;
            }
        }
        Quandle::build(n, t).expect("relabelled rows stay permutations")
    }

    /// `phi` is a homomorphism onto `other` and injective.
    pub fn is_isomorphism_to(&self, other: &Quandle, phi: &[usize]) -> bool {
        if phi.len() != self.n || other.n != self.n {
            return false;
        }
        let mut seen = vec![false; self.n];
        if phi
            .iter()
            .any(|&x| x >= self.n || std::mem::replace(&mut seen[x], true))
        {
            return false;
        }
        (0..self.n).all(|a| (0..self.n).all(|b| phi[self.op(a, b)] == other.op(phi[a], phi[b])))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{}", self.n).unwrap();
        for a in 0..self.n {
            let row: Vec<String> = self.row(a).iter().map(|x| x.to_string()).collect();
            writeln!(s, "{}", row.join(" ")).unwrap();
        }
        s
    }

    /// Parses the text format: the size on the first line, then one row per
    /// line of space-separated 0-based entries.
    pub fn parse(text: &str) -> Result<Quandle> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (first, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "empty input".into(),
        })?;
        let n: usize = header.parse().map_err(|_| Error::Parse {
            line: first,
            msg: format!("expected the size, found {header:?}"),
        })?;
        let mut rows = Vec::with_capacity(n);
        for (line, l) in lines.by_ref() {
            if rows.len() == n {
                return Err(Error::Parse {
                    line,
                    msg: "more rows than the declared size".into(),
                });
            }
            let row: std::result::Result<Vec<usize>, _> =
                l.split_whitespace().map(str::parse).collect();
            let row = row.map_err(|e| Error::Parse {
                line,
                msg: format!("{e}"),
            })?;
            if row.len() != n {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected {n} entries, found {}", row.len()),
                });
            }
            rows.push(row);
        }
        if rows.len() != n {
            return Err(Error::Parse {
                line: first + rows.len() + 1,
                msg: format!("expected {n} rows, found {}", rows.len()),
            });
        }
        quandle_from_table(&rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dihedral(n: usize) -> Quandle {
        let rows: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| (2 * a + n - b) % n).collect())
            .collect();
        quandle_from_table(&rows).unwrap()
    }

    #[test]
    fn axioms() {
        assert!(quandle_from_table(&[vec![0, 1, 2], vec![0, 1, 2], vec![0, 1, 2]]).is_ok());
        assert_eq!(dihedral(3).op(1, 2), 0);
        let bad = quandle_from_table(&[vec![0, 0, 1], vec![0, 1, 2], vec![0, 1, 2]]);
        assert_eq!(bad.unwrap_err(), Error::RowNotPermutation { row: 0 });
        let not_idem = quandle_from_table(&[vec![1, 0], vec![0, 1]]);
        assert_eq!(not_idem.unwrap_err(), Error::NotIdempotent(0));
    }

    #[test]
    fn left_distributivity_witness() {
        // Rows are permutations and idempotent, but 0∗(1∗2) ≠ (0∗1)∗(0∗2).
        let rows = vec![
            vec![0, 2, 1, 3],
            vec![0, 1, 3, 2],
            vec![0, 1, 2, 3],
            vec![0, 1, 2, 3],
        ];
        assert!(matches!(
            quandle_from_table(&rows),
            Err(Error::NotLeftDistributive(..))
        ));
    }

    #[test]
    fn predicates_of_small_quandles() {
        let r3 = dihedral(3);
        let pr = r3.predicates().unwrap();
        assert!(pr.connected && pr.latin && pr.faithful && pr.principal);
        assert_eq!(r3.dis().unwrap().order(), 3);
        let t = Quandle::trivial(3);
        let pt = t.predicates().unwrap();
        assert!(!pt.connected && !pt.latin && !pt.faithful && !pt.principal);
        assert!(t.dis().unwrap().is_trivial());
        assert!(!dihedral(4).is_faithful());
    }

    #[test]
    fn text_round_trip() {
        let q = dihedral(5);
        let back = Quandle::parse(&q.to_text()).unwrap();
        assert_eq!(q, back);
        assert!(matches!(
            Quandle::parse("3\n0 1 2\n0 1\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            Quandle::parse("x"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn relabel_gives_isomorphic_copy() {
        let q = dihedral(5);
        let phi = vec![3, 0, 4, 1, 2];
        let r = q.relabel(&phi);
        assert!(q.is_isomorphism_to(&r, &phi));
        assert!(Quandle::from_flat(5, r.flat_table().to_vec()).is_ok());
    }
}
