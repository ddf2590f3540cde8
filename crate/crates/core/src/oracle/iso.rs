use crate::error::{Error, Result};
use crate::quandle::{minimal_generating_size, Quandle};

/// Largest order accepted by [`iso_bruteforce`].
pub const ISO_SEARCH_CAP: usize = 343;

/// Colour of an element: cycle type of its left translation and the number
/// of solutions of `y ∗ x = x`. Isomorphisms preserve both.
fn colours(q: &Quandle) -> Vec<(Vec<usize>, usize)> {
    (0..q.size())
        .map(|x| {
            let right_fixed = (0..q.size()).filter(|&y| q.op(y, x) == x).count();
            (q.left_translation(x).cycle_type(), right_fixed)
        })
        .collect()
}

#[derive(Clone)]
struct Partial {
    map: Vec<usize>,
    used: Vec<bool>,
    domain: Vec<usize>,
}

const UNSET: usize = usize::MAX;

impl Partial {
    fn new(n: usize) -> Self {
        Partial {
            map: vec![UNSET; n],
            used: vec![false; n],
            domain: Vec::new(),
        }
    }

    /// Adds `x ↦ y` and closes the map under `∗`. False on a clash.
    fn assign(&mut self, q1: &Quandle, q2: &Quandle, x: usize, y: usize) -> bool {
        if !self.set(x, y) {
            return false;
        }
        let mut next = self.domain.len() - 1;
        while next < self.domain.len() {
            let z = self.domain[next];
            next += 1;
            let mut i = 0;
            while i < self.domain.len() {
                let u = self.domain[i];
                i += 1;
                let pairs = [
                    (q1.op(z, u), q2.op(self.map[z], self.map[u])),
                    (q1.op(u, z), q2.op(self.map[u], self.map[z])),
                ];
                for (a, b) in pairs {
                    if !self.set(a, b) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn set(&mut self, x: usize, y: usize) -> bool {
        match self.map[x] {
            UNSET => {
                if self.used[y] {
                    return false;
                }
                self.map[x] = y;
                self.used[y] = true;
                self.domain.push(x);
                true
            }
            old => old == y,
        }
    }
}

/// An isomorphism `Q1 → Q2` as an image array, or `None`.
///
/// The search assigns images to a small generating set of Q1 one at a
/// time, propagating each choice through the generated subquandle. When
/// both quandles are connected the first generator is sent to 0, since
/// left translations of Q2 are automorphisms acting transitively.
pub fn iso_bruteforce(q1: &Quandle, q2: &Quandle) -> Result<Option<Vec<usize>>> {
    let n = q1.size();
    if n > ISO_SEARCH_CAP || q2.size() > ISO_SEARCH_CAP {
        return Err(Error::SizeCap {
            n: n.max(q2.size()),
            cap: ISO_SEARCH_CAP,
        });
    }
    if n != q2.size() {
        return Ok(None);
    }
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    if q1.is_connected() != q2.is_connected() || q1.cycle_type_profile() != q2.cycle_type_profile()
    {
        return Ok(None);
    }
    let c1 = colours(q1);
    let c2 = colours(q2);
    let mut s1 = c1.clone();
    let mut s2 = c2.clone();
    s1.sort();
    s2.sort();
    if s1 != s2 {
        return Ok(None);
    }
    let gens = minimal_generating_size(q1).witness;
    let pin_first = q1.is_connected();
    let found = search(q1, q2, &gens, &c1, &c2, pin_first, Partial::new(n));
    Ok(found.map(|p| p.map))
}

fn search(
    q1: &Quandle,
    q2: &Quandle,
    gens: &[usize],
    c1: &[(Vec<usize>, usize)],
    c2: &[(Vec<usize>, usize)],
    pin_first: bool,
    state: Partial,
) -> Option<Partial> {
    let Some(pos) = gens.iter().position(|&g| state.map[g] == UNSET) else {
        return (state.domain.len() == q1.size()).then_some(state);
    };
    let x = gens[pos];
    let candidates: Vec<usize> = if pin_first && state.domain.is_empty() {
        vec![0]
    } else {
        (0..q2.size()).filter(|&y| !state.used[y]).collect()
    };
    for y in candidates {
        if c1[x] != c2[y] {
            continue;
        }
        let mut next = state.clone();
        if next.assign(q1, q2, x, y) {
            if let Some(done) = search(q1, q2, gens, c1, c2, pin_first, next) {
                return Some(done);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::affine_cyclic;

    #[test]
    fn finds_relabelling() {
        let q = affine_cyclic(7, 3).unwrap();
        let phi = vec![3, 0, 6, 1, 5, 2, 4];
        let r = q.relabel(&phi);
        let w = iso_bruteforce(&q, &r).unwrap().unwrap();
        assert!(q.is_isomorphism_to(&r, &w));
    }

    #[test]
    fn rejects_non_isomorphic() {
        let a = affine_cyclic(5, 2).unwrap();
        let b = affine_cyclic(5, 4).unwrap();
        assert_eq!(iso_bruteforce(&a, &b).unwrap(), None);
        assert_eq!(iso_bruteforce(&a, &Quandle::trivial(5)).unwrap(), None);
        assert!(matches!(
            iso_bruteforce(&Quandle::trivial(344), &Quandle::trivial(344)),
            Err(Error::SizeCap { .. })
        ));
    }
}
