use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use quandle_core::oracle::{enumerate_quandles, iso_bruteforce};
use quandle_core::quandle::{center_congruence, lambda_congruence};
use quandle_core::*;

fn perm_of(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(v).unwrap())
}

fn two_perms() -> impl Strategy<Value = (Perm, Perm, Perm)> {
    (1usize..9).prop_flat_map(|n| (perm_of(n), perm_of(n), perm_of(n)))
}

fn census_up_to_5() -> &'static [Quandle] {
    static CELL: OnceLock<Vec<Quandle>> = OnceLock::new();
    CELL.get_or_init(|| {
        (1..=5)
            .flat_map(|n| enumerate_quandles(n).unwrap())
            .collect()
    })
}

fn groups() -> &'static [Arc<PcGroup>] {
    static CELL: OnceLock<Vec<Arc<PcGroup>>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut v = Vec::new();
        for p in [5, 7] {
            for tag in [
                FamilyTag::Cyclic(3),
                FamilyTag::Heis,
                FamilyTag::ModMax,
                FamilyTag::G7,
                FamilyTag::G8,
                FamilyTag::G9,
                FamilyTag::G10 { w: 2 },
            ] {
                if tag == (FamilyTag::G10 { w: 2 }) && p == 7 {
                    continue;
                }
                v.push(Arc::new(pc_make(GroupFamily::new(tag, p)).unwrap()));
            }
        }
        v.push(Arc::new(
            pc_make(GroupFamily::new(FamilyTag::G10 { w: 3 }, 7)).unwrap(),
        ));
        v
    })
}

fn relabelling_of(q: &Quandle) -> impl Strategy<Value = Vec<usize>> {
    Just((0..q.size()).collect::<Vec<usize>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn perm_group_laws((x, y, z) in two_perms()) {
        let xy = compose(&x, &y).unwrap();
        prop_assert_eq!(
            compose(&xy, &z).unwrap(),
            compose(&x, &compose(&y, &z).unwrap()).unwrap()
        );
        prop_assert!(compose(&x, &x.inverse()).unwrap().is_identity());
        prop_assert!(x.pow(x.order() as i64).is_identity());
        prop_assert_eq!(x.pow(-1), x.inverse());
        prop_assert_eq!(x.cycle_type().iter().sum::<usize>(), x.degree());
        // [x,y] = x⁻¹y⁻¹xy.
        let expected = compose(&compose(&x.inverse(), &y.inverse()).unwrap(), &xy).unwrap();
        prop_assert_eq!(x.commutator(&y), expected);
    }

    #[test]
    fn pc_pow_matches_iterated_multiplication(
        gi in 0usize..14,
        seed in any::<u64>(),
        n in -30i64..30,
    ) {
        let g = &groups()[gi];
        let x = g.element((seed % g.order() as u64) as usize);
        let mut acc = g.identity_elem();
        let step = if n >= 0 { x.clone() } else { pc_pow(g, &x, -1).unwrap() };
        for _ in 0..n.unsigned_abs() {
            acc = pc_mul(g, &acc, &step).unwrap();
        }
        prop_assert_eq!(pc_pow(g, &x, n).unwrap(), acc);
    }

    #[test]
    fn relabelling_preserves_invariants(
        (i, phi) in (0usize..34).prop_flat_map(|i| {
            let q = &census_up_to_5()[i];
            (Just(i), relabelling_of(q))
        })
    ) {
        let q = &census_up_to_5()[i];
        let r = q.relabel(&phi);
        prop_assert!(q.is_isomorphism_to(&r, &phi));
        prop_assert_eq!(q.predicates().unwrap(), r.predicates().unwrap());
        prop_assert_eq!(q.dis().unwrap().order(), r.dis().unwrap().order());
        prop_assert_eq!(q.lmlt().unwrap().order(), r.lmlt().unwrap().order());
        prop_assert_eq!(
            center_congruence(q).unwrap().block_profile(),
            center_congruence(&r).unwrap().block_profile()
        );
        prop_assert_eq!(
            lambda_congruence(q).block_profile(),
            lambda_congruence(&r).block_profile()
        );
        let w = iso_bruteforce(q, &r).unwrap();
        prop_assert!(w.is_some_and(|w| q.is_isomorphism_to(&r, &w)));
    }

    #[test]
    fn generated_congruences_are_congruences(
        m in 2usize..25,
        pairs in proptest::collection::vec((0usize..25, 0usize..25), 0..3),
    ) {
        let q = affine_cyclic(25, m).unwrap_or_else(|_| Quandle::trivial(25));
        let c = Congruence::generated(&q, &pairs);
        prop_assert!(c.is_congruence_of(&q));
        for &(a, b) in &pairs {
            prop_assert!(c.related(a, b));
        }
        // Congruence joins are transitive closures, so joining principal
        // congruences gives the least congruence again.
        let joined = pairs
            .iter()
            .fold(Congruence::discrete(25), |acc, &(a, b)| acc.join(&Congruence::principal(&q, a, b)));
        prop_assert_eq!(c, joined);
    }
}
