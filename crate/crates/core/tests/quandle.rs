mod common;

use std::sync::Arc;

use common::{latin_principal, non_faithful, non_principal, p5};
use quandle_core::quandle::{
    all_congruences, center_congruence, con_subgroup, dis_alpha, dis_ker, gamma1_quandle,
    is_central, lambda_congruence, minimal_generating_size, nilpotency_length2_certificate,
    orbit_congruence, quotient_quandle,
};
use quandle_core::*;

fn dihedral3() -> Quandle {
    let rows: Vec<Vec<usize>> = (0..3)
        .map(|a| (0..3).map(|b| (2 * b + 3 - a) % 3).collect())
        .collect();
    quandle_from_table(&rows).unwrap()
}

#[test]
fn tables_are_validated() {
    let trivial: Vec<Vec<usize>> = (0..3).map(|_| (0..3).collect()).collect();
    assert!(quandle_from_table(&trivial).is_ok());
    assert_eq!(dihedral3().op(0, 1), 2);
    let bad = vec![vec![0, 0, 1], vec![0, 1, 2], vec![0, 1, 2]];
    assert!(matches!(
        quandle_from_table(&bad),
        Err(Error::RowNotPermutation { row: 0 })
    ));
    // Rows are permutations and idempotent, but distributivity fails.
    let bad = vec![vec![0, 2, 1], vec![2, 1, 0], vec![0, 1, 2]];
    assert!(matches!(
        quandle_from_table(&bad),
        Err(Error::NotLeftDistributive(..))
    ));
    let bad = vec![vec![1, 0], vec![0, 1]];
    assert!(matches!(
        quandle_from_table(&bad),
        Err(Error::NotIdempotent(0))
    ));
}

#[test]
fn displacement_groups() {
    assert!(Quandle::trivial(4).dis().unwrap().is_trivial());
    let q = affine_cyclic(5, 2).unwrap();
    let dis = q.dis().unwrap();
    assert_eq!(dis.order(), 5);
    assert!(dis.is_abelian());
    assert!(action_profile(dis).regular);
    assert!(dis.is_normal_in(q.lmlt().unwrap()));
    assert_eq!(non_principal().quandle.dis().unwrap().order(), 625);
}

#[test]
fn predicates_of_examples() {
    let p = affine_cyclic(5, 2).unwrap().predicates().unwrap();
    assert!(p.connected && p.latin && p.faithful && p.principal);
    let t = Quandle::trivial(3);
    assert!(!t.is_connected() && !t.is_latin() && !t.is_faithful());
    let q = &non_faithful().quandle;
    assert!(q.is_connected());
    assert!(q.is_principal().unwrap());
    assert!(!q.is_faithful());
    assert!(!q.is_latin());
}

#[test]
fn orbit_and_con_congruences() {
    let b = latin_principal();
    let q = &b.quandle;
    let dis = q.dis().unwrap();
    let one = PermGroup::trivial(q.size());
    assert!(orbit_congruence(q, &one).unwrap().is_discrete());
    assert!(orbit_congruence(q, dis).unwrap().is_total());
    assert!(con_subgroup(q, &one).unwrap().is_discrete());
    assert!(con_subgroup(q, dis).unwrap().is_total());
    for b in [latin_principal(), non_principal()] {
        let q = &b.quandle;
        let z = center(q.dis().unwrap());
        let orbits = orbit_congruence(q, &z).unwrap();
        assert_eq!(orbits.block_profile(), vec![5; 25]);
        assert_eq!(con_subgroup(q, &z).unwrap(), orbits);
    }
}

#[test]
fn subgroups_outside_norm_rejected() {
    let q = &latin_principal().quandle;
    let dis = q.dis().unwrap();
    // A subgroup generated by one displacement that is not normal.
    let x = dis
        .elements()
        .iter()
        .find(|x| {
            !close_group(q.size(), &[(*x).clone()])
                .unwrap()
                .is_normal_in(dis)
        })
        .unwrap();
    let n = close_group(q.size(), std::slice::from_ref(x)).unwrap();
    assert!(matches!(orbit_congruence(q, &n), Err(Error::NotInNorm(_))));
}

#[test]
fn relative_displacement_groups() {
    let q = &non_principal().quandle;
    let n = q.size();
    let zero = Congruence::discrete(n);
    assert!(dis_alpha(q, &zero).unwrap().is_trivial());
    assert!(dis_ker(q, &zero).unwrap().is_trivial());
    let total = Congruence::total(n);
    assert!(dis_alpha(q, &total)
        .unwrap()
        .same_elements(q.dis().unwrap()));

    let zeta = center_congruence(q).unwrap();
    let z = center(q.dis().unwrap());
    assert!(dis_alpha(q, &zeta).unwrap().same_elements(&z));
    let ker = dis_ker(q, &zeta).unwrap();
    assert_eq!(ker.order(), z.order() * stabilizer(&ker, 0).order());
}

#[test]
fn quotients() {
    let q = &latin_principal().quandle;
    let (same, proj) = quotient_quandle(q, &Congruence::discrete(q.size())).unwrap();
    assert!(q.is_isomorphism_to(&same, &proj));
    let (point, _) = quotient_quandle(q, &Congruence::total(q.size())).unwrap();
    assert_eq!(point.size(), 1);

    for b in p5() {
        let q = &b.quandle;
        let (top, proj) = quotient_quandle(q, &gamma1_quandle(q).unwrap()).unwrap();
        assert_eq!(top.size(), 25);
        let dis = top.dis().unwrap();
        assert!(top.is_connected() && dis.is_abelian() && dis.order() == 25);
        for x in 0..q.size() {
            for y in 0..q.size() {
                assert_eq!(proj[q.op(x, y)], top.op(proj[x], proj[y]));
            }
        }
    }
}

#[test]
fn lambda_congruence_examples() {
    assert!(lambda_congruence(&latin_principal().quandle).is_discrete());
    assert!(lambda_congruence(&Quandle::trivial(4)).is_total());

    // Blocks are the cosets of Fix(f) in the principal representation.
    let b = non_faithful();
    let lambda = lambda_congruence(&b.quandle);
    assert_eq!(lambda.block_profile(), vec![5; 25]);
    let g = b.coset.group();
    let fix = aut_fix(&b.coset.aut);
    let reps = &b.labels.reps;
    for x in 0..b.quandle.size() {
        for y in 0..b.quandle.size() {
            let quotient = g.mul(g.inv(reps[x]), reps[y]);
            assert_eq!(lambda.related(x, y), fix.contains(quotient));
        }
    }
}

#[test]
fn gamma1_and_center() {
    let aff = affine_cyclic(5, 2).unwrap();
    assert!(gamma1_quandle(&aff).unwrap().is_discrete());
    assert!(center_congruence(&aff).unwrap().is_total());
    assert!(center_congruence(&Quandle::trivial(2)).unwrap().is_total());
    assert!(matches!(
        gamma1_quandle(&Quandle::trivial(2)),
        Err(Error::NotConnected)
    ));

    for b in p5() {
        let q = &b.quandle;
        let g1 = gamma1_quandle(q).unwrap();
        assert_eq!(g1.block_profile(), vec![5; 25]);
        if q.is_faithful() {
            assert_eq!(g1, center_congruence(q).unwrap());
        } else {
            assert_eq!(g1, lambda_congruence(q));
        }
    }
}

#[test]
fn centrality() {
    let aff = affine_cyclic(5, 2).unwrap();
    assert!(is_central(&aff, &Congruence::discrete(5)).unwrap());
    assert!(is_central(&aff, &Congruence::total(5)).unwrap());
    for b in p5() {
        let q = &b.quandle;
        assert!(is_central(q, &center_congruence(q).unwrap()).unwrap());
        assert!(!is_central(q, &Congruence::total(q.size())).unwrap());
    }
}

#[test]
fn nilpotency_certificates() {
    let g = Arc::new(pc_make(GroupFamily::new(FamilyTag::ElemAbelian(3), 5)).unwrap());
    let images: Vec<PcElement> = (0..3)
        .map(|i| {
            let mut e = vec![0; 3];
            e[i] = 2;
            PcElement::new(e)
        })
        .collect();
    let f = pc_aut(&g, &images).unwrap();
    let q = affine_quandle(&f).unwrap();
    assert!(q.is_latin());
    assert_eq!(nilpotency_length2_certificate(&q).unwrap().length, 1);
    assert_eq!(
        nilpotency_length2_certificate(&Quandle::trivial(1))
            .unwrap()
            .length,
        0
    );
    assert_eq!(
        nilpotency_length2_certificate(&non_principal().quandle)
            .unwrap()
            .length,
        2
    );
}

#[test]
fn congruence_lattices() {
    assert_eq!(
        all_congruences(&affine_cyclic(5, 2).unwrap())
            .unwrap()
            .len(),
        2
    );
    assert_eq!(all_congruences(&Quandle::trivial(3)).unwrap().len(), 5);
    let q = affine_cyclic(25, 2).unwrap();
    let mod5 = Congruence::from_labels(&(0..25).map(|x| x % 5).collect::<Vec<_>>());
    assert!(all_congruences(&q).unwrap().contains(&mod5));
    assert!(matches!(
        all_congruences(&Quandle::trivial(65)),
        Err(Error::SizeCap { .. })
    ));
}

#[test]
fn generating_sizes() {
    assert_eq!(
        minimal_generating_size(&affine_cyclic(5, 2).unwrap()).size,
        2
    );
    assert_eq!(minimal_generating_size(&Quandle::trivial(1)).size, 1);
    for b in [latin_principal(), non_faithful(), non_principal()] {
        let m = minimal_generating_size(&b.quandle);
        assert!(m.size <= 4, "{}", m.size);
        let closure = quandle::subquandle_closure(&b.quandle, &m.witness);
        assert_eq!(closure.len(), b.quandle.size());
    }
}

#[test]
fn text_format() {
    let q = dihedral3();
    assert_eq!(Quandle::parse(&q.to_text()).unwrap(), q);
    assert!(matches!(
        Quandle::parse("3\n0 1 2\n0 x 2\n0 1 2\n"),
        Err(Error::Parse { line: 3, .. })
    ));
    assert!(Quandle::parse("").is_err());
    assert!(matches!(
        Quandle::parse("2\n1 0\n0 1\n"),
        Err(Error::NotIdempotent(0))
    ));
}
