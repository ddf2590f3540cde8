use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quandle::Quandle;

/// Largest order [`enumerate_quandles`] accepts.
pub const ENUMERATION_CAP: usize = 6;

const UNSET: u8 = u8::MAX;

/// Every quandle of order `n` up to isomorphism, each in canonical form
/// (the lexicographically least table over all relabellings), sorted.
pub fn enumerate_quandles(n: usize) -> Result<Vec<Quandle>> {
    Ok(canonical_tables(n)?
        .into_iter()
        .map(|t| table_to_quandle(n, &t))
        .collect())
}

fn canonical_tables(n: usize) -> Result<BTreeSet<Vec<u8>>> {
    if n > ENUMERATION_CAP {
        return Err(Error::SizeCap {
            n,
            cap: ENUMERATION_CAP,
        });
    }
    if n == 0 {
        return Ok(BTreeSet::from([Vec::new()]));
    }
    let mut labelled = Vec::new();
    let mut t = vec![UNSET; n * n];
    for a in 0..n {
        t[a * n + a] = a as u8;
    }
    fill(n, &mut t, 0, &mut labelled);
    let perms = permutations(n);
    Ok(labelled
        .par_iter()
        .map(|t| canonical_form(n, t, &perms))
        .collect::<Vec<_>>()
        .into_iter()
        .collect())
}

fn table_to_quandle(n: usize, t: &[u8]) -> Quandle {
    Quandle::from_flat(n, t.iter().map(|&x| x as u32).collect())
        .expect("enumerated tables satisfy the axioms")
}

/// Backtracking over cells in row-major order. Each row is a permutation
/// fixing its index; left distributivity is checked on every triple whose
/// entries are all known.
fn fill(n: usize, t: &mut [u8], cell: usize, out: &mut Vec<Vec<u8>>) {
    if cell == n * n {
        out.push(t.to_vec());
        return;
    }
    let (a, b) = (cell / n, cell % n);
    if a == b {
        fill(n, t, cell + 1, out);
        return;
    }
    for c in 0..n as u8 {
        if c as usize == a || t[a * n..a * n + b].contains(&c) {
            continue;
        }
        t[cell] = c;
        if distributive_so_far(n, t) {
            fill(n, t, cell + 1, out);
        }
    }
    t[cell] = UNSET;
}

fn distributive_so_far(n: usize, t: &[u8]) -> bool {
    let get = |x: usize, y: usize| t[x * n + y];
    for x in 0..n {
        for y in 0..n {
            let xy = get(x, y);
            if xy == UNSET {
                continue;
            }
            for z in 0..n {
                let (yz, xz) = (get(y, z), get(x, z));
                if yz == UNSET || xz == UNSET {
                    continue;
                }
                let (lhs, rhs) = (get(x, yz as usize), get(xy as usize, xz as usize));
                if lhs != UNSET && rhs != UNSET && lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    permute(&mut cur, 0, &mut out);
    out
}

fn permute(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == cur.len() {
        out.push(cur.clone());
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        permute(cur, k + 1, out);
        cur.swap(k, i);
    }
}

/// Least relabelled table; `phi` maps old labels to new ones.
fn canonical_form(n: usize, t: &[u8], perms: &[Vec<usize>]) -> Vec<u8> {
    let mut best = t.to_vec();
    let mut cand = vec![0u8; n * n];
    for phi in perms {
        for a in 0..n {
            for b in 0..n {
                cand[phi[a] * n + phi[b]] = phi[t[a * n + b] as usize] as u8;
            }
        }
        if cand < best {
            best.copy_from_slice(&cand);
        }
    }
    best
}

/// Canonical form of an arbitrary quandle of order at most the cap.
pub fn canonical_quandle(q: &Quandle) -> Result<Quandle> {
    let n = q.size();
    if n > ENUMERATION_CAP {
        return Err(Error::SizeCap {
            n,
            cap: ENUMERATION_CAP,
        });
    }
    let t: Vec<u8> = q.flat_table().iter().map(|&x| x as u8).collect();
    Ok(table_to_quandle(
        n,
        &canonical_form(n, &t, &permutations(n)),
    ))
}

/// Every affine quandle `Aff(A, f)` of order n up to isomorphism, over all
/// abelian groups A of order n.
pub fn affine_quandles(n: usize) -> Result<Vec<Quandle>> {
    if n > ENUMERATION_CAP {
        return Err(Error::SizeCap {
            n,
            cap: ENUMERATION_CAP,
        });
    }
    let perms = permutations(n);
    let mut found = BTreeSet::new();
    for moduli in abelian_types(n) {
        let group = ProductGroup::new(moduli);
        for f in group.automorphisms() {
            let mut t = vec![0u8; n * n];
            for a in 0..n {
                let d = group.sub(a, f[a]);
                for b in 0..n {
                    t[a * n + b] = group.add(d, f[b]) as u8;
                }
            }
            found.insert(canonical_form(n, &t, &perms));
        }
    }
    Ok(found.into_iter().map(|t| table_to_quandle(n, &t)).collect())
}

/// Invariant factor lists `d_1 | d_2 | … | d_k` with product n.
fn abelian_types(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 1 {
            out.push(cur.clone());
            return;
        }
        for d in min.max(2)..=rest {
            if rest.is_multiple_of(d) && cur.last().is_none_or(|&l| d % l == 0) {
                cur.push(d);
                go(rest / d, d, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, 2, &mut Vec::new(), &mut out);
    out
}

/// `Z_{d_1} × ⋯ × Z_{d_k}` with elements numbered in mixed radix.
struct ProductGroup {
    moduli: Vec<usize>,
    order: usize,
}

impl ProductGroup {
    fn new(moduli: Vec<usize>) -> Self {
        let order = moduli.iter().product();
        ProductGroup { moduli, order }
    }

    fn digits(&self, mut x: usize) -> Vec<usize> {
        let mut d = vec![0; self.moduli.len()];
        for (i, &m) in self.moduli.iter().enumerate().rev() {
            d[i] = x % m;
            x /= m;
        }
        d
    }

    fn number(&self, d: &[usize]) -> usize {
        d.iter()
            .zip(&self.moduli)
            .fold(0, |acc, (&x, &m)| acc * m + x)
    }

    fn add(&self, a: usize, b: usize) -> usize {
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<usize> = (0..self.moduli.len())
            .map(|i| (da[i] + db[i]) % self.moduli[i])
            .collect();
        self.number(&s)
    }

    fn sub(&self, a: usize, b: usize) -> usize {
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<usize> = (0..self.moduli.len())
            .map(|i| (da[i] + self.moduli[i] - db[i]) % self.moduli[i])
            .collect();
        self.number(&s)
    }

    fn scale(&self, x: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.add(acc, x))
    }

    /// All automorphisms as image arrays, by trying every image tuple for
    /// the standard basis.
    fn automorphisms(&self) -> Vec<Vec<usize>> {
        let k = self.moduli.len();
        let basis: Vec<usize> = (0..k)
            .map(|i| {
                let mut d = vec![0; k];
                d[i] = 1;
                self.number(&d)
            })
            .collect();
        let mut out = Vec::new();
        let mut images = Vec::new();
        self.extend_auts(&basis, &mut images, &mut out);
        out
    }

    fn extend_auts(&self, basis: &[usize], images: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let i = images.len();
        if i == basis.len() {
            let map: Vec<usize> = (0..self.order)
                .map(|x| {
                    let d = self.digits(x);
                    d.iter()
                        .zip(images.iter())
                        .fold(0, |acc, (&c, &y)| self.add(acc, self.scale(y, c)))
                })
                .collect();
            let mut seen = vec![false; self.order];
            if map.iter().all(|&y| !std::mem::replace(&mut seen[y], true)) {
                out.push(map);
            }
            return;
        }
        for y in 0..self.order {
            // The image must have order dividing the basis element's order.
            if self.scale(y, self.moduli[i]) != 0 {
                continue;
            }
            images.push(y);
            self.extend_auts(basis, images, out);
            images.pop();
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub n: usize,
    pub all: usize,
    pub connected: usize,
    pub affine: usize,
}

/// Counts of quandles, connected quandles and affine quandles of order n,
/// all up to isomorphism.
pub fn census(n: usize) -> Result<Census> {
    let all = enumerate_quandles(n)?;
    let affine: BTreeSet<Vec<u32>> = affine_quandles(n)?
        .iter()
        .map(|q| q.flat_table().to_vec())
        .collect();
    Ok(Census {
        n,
        all: all.len(),
        connected: all.iter().filter(|q| q.is_connected()).count(),
        affine: all
            .iter()
            .filter(|q| affine.contains(q.flat_table()))
            .count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=4)
            .map(|n| enumerate_quandles(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 3, 7]);
        assert!(matches!(enumerate_quandles(7), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn abelian_group_types() {
        assert_eq!(abelian_types(4), vec![vec![2, 2], vec![4]]);
        assert_eq!(abelian_types(6), vec![vec![6]]);
        assert_eq!(ProductGroup::new(vec![2, 2]).automorphisms().len(), 6);
        assert_eq!(ProductGroup::new(vec![5]).automorphisms().len(), 4);
    }
}
