use std::sync::Arc;

use rayon::prelude::*;

use crate::arith::det_mod;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::pcgroup::{GroupAut, PcGroup};

/// Largest group the exhaustive automorphism search accepts.
pub const AUT_SEARCH_CAP: usize = 625;

/// Every automorphism of `g`, found by trying all images of the top
/// generators. A candidate is kept when its images span `G/Φ(G)` and
/// satisfy every defining relation, which makes it a surjective
/// endomorphism. Output is sorted by the images of the pc generators.
pub fn aut_bruteforce(g: &Arc<PcGroup>) -> Result<Vec<GroupAut>> {
    if g.order() > AUT_SEARCH_CAP {
        return Err(Error::SizeCap {
            n: g.order(),
            cap: AUT_SEARCH_CAP,
        });
    }
    let top = g.top_generators().to_vec();
    let r = top.len();
    let n = g.order();
    if n.checked_pow(r as u32).is_none_or(|s| s > 50_000_000) {
        return Err(Error::CapExceeded { cap: 50_000_000 });
    }
    let p = g.p();
    // Only elements outside Φ(G) can be images of top generators.
    let candidates: Vec<usize> = (0..n)
        .filter(|&x| {
            let e = g.decode(x);
            top.iter().any(|&t| e[t] != 0)
        })
        .collect();
    let mut found: Vec<GroupAut> = candidates
        .par_iter()
        .flat_map_iter(|&first| {
            let mut out = Vec::new();
            let mut tuple = vec![first];
            extend(g, &candidates, &top, p, &mut tuple, &mut out);
            out
        })
        .collect();
    found.sort_by(|a, b| a.image_indices().cmp(b.image_indices()));
    Ok(found)
}

fn extend(
    g: &Arc<PcGroup>,
    candidates: &[usize],
    top: &[usize],
    p: u32,
    tuple: &mut Vec<usize>,
    out: &mut Vec<GroupAut>,
) {
    if tuple.len() == top.len() {
        let m: Vec<Vec<u32>> = top
            .iter()
            .map(|&row| tuple.iter().map(|&x| g.decode(x)[row]).collect())
            .collect();
        if det_mod(&m, p) == 0 {
            return;
        }
        let f = GroupAut::from_top_unchecked(g, tuple);
        if f.violated_relation().is_none() {
            out.push(f);
        }
        return;
    }
    for &c in candidates {
        tuple.push(c);
        extend(g, candidates, top, p, tuple, out);
        tuple.pop();
    }
}
