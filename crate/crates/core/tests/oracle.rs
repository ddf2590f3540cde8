use std::sync::Arc;

use quandle_core::oracle::{
    affine_quandles, aut_bruteforce, canonical_quandle, census, enumerate_quandles, iso_bruteforce,
};
use quandle_core::*;

fn group(tag: FamilyTag, p: u32) -> Arc<PcGroup> {
    Arc::new(pc_make(GroupFamily::new(tag, p)).unwrap())
}

#[test]
fn census_counts() {
    let all: Vec<usize> = (1..=6)
        .map(|n| enumerate_quandles(n).unwrap().len())
        .collect();
    assert_eq!(all, vec![1, 1, 3, 7, 22, 73]);
    let connected: Vec<usize> = (1..=6).map(|n| census(n).unwrap().connected).collect();
    assert_eq!(connected, vec![1, 0, 1, 1, 3, 2]);
    assert!(matches!(
        enumerate_quandles(7),
        Err(Error::SizeCap { n: 7, cap: 6 })
    ));
}

#[test]
fn small_connected_quandles() {
    let three: Vec<Quandle> = enumerate_quandles(3)
        .unwrap()
        .into_iter()
        .filter(|q| q.is_connected())
        .collect();
    assert_eq!(three.len(), 1);
    let r3 = affine_cyclic(3, 2).unwrap();
    assert!(iso_bruteforce(&three[0], &r3).unwrap().is_some());

    let five: Vec<Quandle> = enumerate_quandles(5)
        .unwrap()
        .into_iter()
        .filter(|q| q.is_connected())
        .collect();
    assert_eq!(five.len(), 3);
    for q in &five {
        assert!(
            (2..5).any(|m| iso_bruteforce(q, &affine_cyclic(5, m).unwrap())
                .unwrap()
                .is_some())
        );
    }
}

#[test]
fn enumeration_is_canonical_and_stable() {
    let a = enumerate_quandles(5).unwrap();
    assert_eq!(a, enumerate_quandles(5).unwrap());
    for q in &a {
        assert_eq!(&canonical_quandle(q).unwrap(), q);
        let shuffled = q.relabel(&[4, 2, 0, 3, 1]);
        assert_eq!(&canonical_quandle(&shuffled).unwrap(), q);
    }
}

#[test]
fn affine_census() {
    assert_eq!(affine_quandles(5).unwrap().len(), 4);
    assert_eq!(census(5).unwrap().affine, 4);
    // Trivial, R_4 = Aff(Z4, −1) ≅ Aff(Z2², transvection), and the
    // tetrahedral quandle.
    assert_eq!(census(4).unwrap().affine, 3);
}

/// Reflexive, symmetric through inverse witnesses and transitive through
/// composed witnesses, and never relating distinct census entries.
#[test]
fn iso_search_is_an_equivalence() {
    let shuffles: [&[usize]; 3] = [&[1, 2, 3, 4, 0], &[4, 3, 2, 1, 0], &[2, 0, 4, 1, 3]];
    let all = enumerate_quandles(5).unwrap();
    for q in &all {
        let w = iso_bruteforce(q, q).unwrap().unwrap();
        assert!(q.is_isomorphism_to(q, &w));
        let r1 = q.relabel(shuffles[0]);
        let r2 = r1.relabel(shuffles[1]);
        let w1 = iso_bruteforce(q, &r1).unwrap().unwrap();
        let w2 = iso_bruteforce(&r1, &r2).unwrap().unwrap();
        let composed: Vec<usize> = w1.iter().map(|&x| w2[x]).collect();
        assert!(q.is_isomorphism_to(&r2, &composed));
        let mut inverse = vec![0; 5];
        for (x, &y) in w1.iter().enumerate() {
            inverse[y] = x;
        }
        assert!(r1.is_isomorphism_to(q, &inverse));
        assert!(iso_bruteforce(&r1, q).unwrap().is_some());
    }
    for (i, a) in all.iter().enumerate() {
        for b in &all[i + 1..] {
            let b = b.relabel(shuffles[2]);
            assert!(iso_bruteforce(a, &b).unwrap().is_none());
        }
    }
}

#[test]
fn iso_search_examples() {
    let q = affine_cyclic(5, 2).unwrap();
    let w = iso_bruteforce(&q, &q).unwrap().unwrap();
    assert!(q.is_isomorphism_to(&q, &w));
    assert!(iso_bruteforce(&q, &Quandle::trivial(5)).unwrap().is_none());
    assert!(iso_bruteforce(&q, &Quandle::trivial(4)).unwrap().is_none());

    // Aff(Z5, 2) against Aff(Z5, 3), decided by both engines.
    let z5 = group(FamilyTag::ElemAbelian(1), 5);
    let universe = AutUniverse {
        auts: aut_bruteforce(&z5).unwrap(),
        complete: true,
    };
    let spec = |m: u32| PcCoset::principal(pc_aut(&z5, &[PcElement::new(vec![m])]).unwrap());
    for (a, b) in [(2, 3), (2, 2), (3, 4)] {
        let by_conj = coset_iso(&spec(a), &spec(b), &universe).unwrap();
        let by_search = iso_bruteforce(
            &affine_cyclic(5, a as usize).unwrap(),
            &affine_cyclic(5, b as usize).unwrap(),
        )
        .unwrap();
        assert!(by_conj.definitive);
        assert_eq!(by_conj.witness.is_some(), by_search.is_some(), "{a} {b}");
        assert_eq!(by_search.is_some(), a == b);
    }
}

#[test]
fn automorphism_counts() {
    assert_eq!(
        aut_bruteforce(&group(FamilyTag::ElemAbelian(1), 5))
            .unwrap()
            .len(),
        4
    );
    assert_eq!(
        aut_bruteforce(&group(FamilyTag::Heis, 5)).unwrap().len(),
        12000
    );
    assert_eq!(
        aut_bruteforce(&group(FamilyTag::G7, 5)).unwrap().len(),
        50000
    );
    assert!(matches!(
        aut_bruteforce(&group(FamilyTag::G7, 7)),
        Err(Error::SizeCap { .. })
    ));
}
