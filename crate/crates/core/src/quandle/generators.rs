use serde::{Deserialize, Serialize};

use super::Quandle;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratingSize {
    pub size: usize,
    /// False when only a greedy upper bound was found.
    pub exact: bool,
    pub witness: Vec<usize>,
}

/// Subquandle generated by `seeds`. Closure under `∗` is enough: in a
/// finite quandle `a\b` is a power of `L_a` applied to b.
pub fn subquandle_closure(q: &Quandle, seeds: &[usize]) -> Vec<usize> {
    let mut member = vec![false; q.size()];
    let mut list = Vec::new();
    for &s in seeds {
        add_closed(q, &mut member, &mut list, s);
    }
    list.sort_unstable();
    list
}

fn add_closed(q: &Quandle, member: &mut [bool], list: &mut Vec<usize>, x: usize) {
    if member[x] {
        return;
    }
    member[x] = true;
    list.push(x);
    let mut next = list.len() - 1;
    while next < list.len() {
        let z = list[next];
        next += 1;
        let mut i = 0;
        while i < list.len() {
            let y = list[i];
            i += 1;
            for w in [q.op(z, y), q.op(y, z)] {
                if !member[w] {
                    member[w] = true;
                    list.push(w);
                }
            }
        }
    }
}

/// Exhaustive search for a generating set of size `k`, optionally forcing
/// element 0 into it.
fn search(q: &Quandle, k: usize, fix_zero: bool, budget: &mut u64) -> Option<Vec<usize>> {
    let n = q.size();
    let member = vec![false; n];
    let mut chosen = Vec::new();
    let start: Vec<usize> = if fix_zero { vec![0] } else { (0..n).collect() };
    for s in start {
        let mut m = member.clone();
        let mut list = Vec::new();
        add_closed(q, &mut m, &mut list, s);
        chosen.push(s);
        if rec(q, k, s + 1, &m, &list, &mut chosen, budget) {
            return Some(chosen);
        }
        chosen.pop();
        if *budget == 0 {
            return None;
        }
    }
    None
}

fn rec(
    q: &Quandle,
    k: usize,
    from: usize,
    member: &[bool],
    list: &[usize],
    chosen: &mut Vec<usize>,
    budget: &mut u64,
) -> bool {
    if list.len() == q.size() {
        return true;
    }
    if chosen.len() == k || *budget == 0 {
        return false;
    }
    for x in from..q.size() {
        if member[x] {
            continue;
        }
        *budget = budget.saturating_sub(1);
        let mut m = member.to_vec();
        let mut l = list.to_vec();
        add_closed(q, &mut m, &mut l, x);
        chosen.push(x);
        if rec(q, k, x + 1, &m, &l, chosen, budget) {
            return true;
        }
        chosen.pop();
        if *budget == 0 {
            return false;
        }
    }
    false
}

/// Size of a smallest generating set. Exact for n ≤ 64; for larger
/// quandles exact up to size 4 within a work budget, otherwise a greedy
/// upper bound.
pub fn minimal_generating_size(q: &Quandle) -> GeneratingSize {
    let n = q.size();
    if n == 0 {
        return GeneratingSize {
            size: 0,
            exact: true,
            witness: vec![],
        };
    }
    // Left translations are automorphisms, so for connected Q any
    // generating set can be moved to contain 0.
    let fix_zero = q.is_connected();
    let max_k = if n <= 64 { n } else { 4 };
    let mut budget: u64 = 2_000_000;
    for k in 1..=max_k {
        if let Some(w) = search(q, k, fix_zero, &mut budget) {
            return GeneratingSize {
                size: k,
                exact: true,
                witness: w,
            };
        }
        if budget == 0 {
            break;
        }
    }
    let mut member = vec![false; n];
    let mut list = Vec::new();
    let mut witness = Vec::new();
    for x in 0..n {
        if !member[x] {
            witness.push(x);
            add_closed(q, &mut member, &mut list, x);
        }
    }
    GeneratingSize {
        size: witness.len(),
        exact: false,
        witness,
    }
}
