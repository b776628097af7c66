use std::collections::BTreeSet;

use arquiver_core::meshhom::hom_matrix;
use arquiver_core::ztrans::{arrows_in, arrows_out, phi, serre, sigma, tau, AffineAutomorphism};
use arquiver_core::{
    cluster_quiver, hammock, is_isomorphic, shape_classify, DynkinDiagram, Family,
    TranslationQuiver, Twist, ZVertex,
};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn diagram() -> impl Strategy<Value = DynkinDiagram> {
    prop_oneof![
        (1u32..=8).prop_map(|n| DynkinDiagram::new(Family::A, n).unwrap()),
        (4u32..=8).prop_map(|n| DynkinDiagram::new(Family::D, n).unwrap()),
        (6u32..=8).prop_map(|n| DynkinDiagram::new(Family::E, n).unwrap()),
    ]
}

fn small_diagram() -> impl Strategy<Value = DynkinDiagram> {
    prop_oneof![
        (1u32..=4).prop_map(|n| DynkinDiagram::new(Family::A, n).unwrap()),
        (4u32..=5).prop_map(|n| DynkinDiagram::new(Family::D, n).unwrap()),
    ]
}

fn cluster(d: &DynkinDiagram, u: u32) -> TranslationQuiver {
    cluster_quiver(d.family(), d.rank(), u).unwrap().0
}

fn vertex(d: &DynkinDiagram) -> impl Strategy<Value = ZVertex> {
    (-20i64..20, 1..=d.rank()).prop_map(|(i, j)| ZVertex::new(i, j))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sigma_is_an_automorphism((d, v) in diagram().prop_flat_map(|d| { let v = vertex(&d); (Just(d), v) })) {
        let s = sigma(&d);
        prop_assert!(s.preserves_arrows(&d));
        prop_assert_eq!(s.power(2), AffineAutomorphism::translation(&d, i64::from(d.coxeter_number())));
        prop_assert_eq!(s.apply(tau(v)), tau(s.apply(v)));
        prop_assert_eq!(s.apply_inverse(s.apply(v)), v);
        let mut image: Vec<_> = arrows_out(&d, v).into_iter().map(|w| s.apply(w)).collect();
        image.sort();
        prop_assert_eq!(image, arrows_out(&d, s.apply(v)));
    }

    #[test]
    fn mesh_in_z_delta((d, v) in diagram().prop_flat_map(|d| { let v = vertex(&d); (Just(d), v) })) {
        prop_assert_eq!(arrows_in(&d, v), arrows_out(&d, tau(v)));
    }

    #[test]
    fn cluster_quivers_are_valid(d in diagram(), u in 1u32..=5) {
        let (q, spec) = cluster_quiver(d.family(), d.rank(), u).unwrap();
        prop_assert!(shape_classify(&q, &spec).is_ok());
        if spec.twist == Twist::None {
            let (len, one) = spec.rectangle_length();
            prop_assert_eq!(one, 1);
            prop_assert_eq!(q.len() as u64, u64::from(d.rank()) * len);
        }
        let report = q.validate();
        prop_assert!(report.mesh_ok());
        prop_assert!(report.connected);
        if d.family() == Family::A {
            let n = d.rank() as usize;
            let orbits = if u % 2 == 1 { n.div_ceil(2) } else { n };
            prop_assert_eq!(q.tau_orbits().len(), orbits);
        }
        if d.family() == Family::E && d.rank() == 7 {
            prop_assert_eq!(phi(&d, u).as_translation(), Some(9 * i64::from(u) + 1));
        }
    }

    #[test]
    fn relabelling_preserves_structure(
        (d, u, perm) in (small_diagram(), 1u32..=3).prop_flat_map(|(d, u)| {
            let n = cluster(&d, u).len();
            (Just(d), Just(u), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        })
    ) {
        let q = cluster(&d, u);
        let r = q.relabel(&perm).unwrap();
        let w = is_isomorphic(&q, &r).expect("a relabelled copy is isomorphic");
        for (a, b) in q.arrows() {
            prop_assert!(r.has_arrow(w[a], w[b]));
        }
        for v in 0..q.len() {
            prop_assert_eq!(w[q.tau(v)], r.tau(w[v]));
        }
        prop_assert_eq!(hom_matrix(&r).unwrap(), hom_matrix(&q).unwrap().permuted(&perm));
    }

    #[test]
    fn hom_matrix_is_translation_invariant(d in small_diagram(), u in 1u32..=3) {
        let q = cluster(&d, u);
        let m = hom_matrix(&q).unwrap();
        for x in 0..q.len() {
            prop_assert_eq!(m.get(x, x), 1);
            for y in 0..q.len() {
                prop_assert_eq!(m.get(q.tau(x), q.tau(y)), m.get(x, y));
            }
        }
    }

    #[test]
    fn hammock_support((d, x) in diagram().prop_flat_map(|d| { let v = vertex(&d); (Just(d), v) })) {
        let f = hammock(&d, x);
        let h = i64::from(d.coxeter_number());
        prop_assert_eq!(f.value(x), 1);
        prop_assert_eq!(f.value(serre(&d, x)), 1);
        for (y, value) in f.support() {
            prop_assert!(value > 0);
            prop_assert!(y.i >= x.i && y.i <= x.i + 2 * h);
        }
    }

    #[test]
    fn orbit_sum_ignores_representative(d in small_diagram(), u in 1u32..=3, shift in 1u32..=3) {
        // summing the hammock of φ^k(x) over the orbit of y gives the same
        // number as summing the hammock of x
        let q = cluster(&d, u);
        let f = phi(&d, u);
        let m = hom_matrix(&q).unwrap();
        let cover = q.covering().unwrap();
        for x in 0..q.len() {
            let lift = f.power(shift).apply(q.label(x).unwrap());
            let g = hammock(&d, lift);
            let mut row = vec![0; q.len()];
            for (y, value) in g.support() {
                row[cover.class_of(y).unwrap()] += value;
            }
            prop_assert_eq!(&row[..], &m.rows()[x][..]);
        }
    }

    #[test]
    fn deleting_orbit_unions(
        (d, u, chosen) in (small_diagram(), 1u32..=3).prop_flat_map(|(d, u)| {
            let k = cluster(&d, u).tau_orbits().len();
            (Just(d), Just(u), subsequence((0..k).collect::<Vec<_>>(), 0..=k))
        })
    ) {
        let q = cluster(&d, u);
        let orbits = q.tau_orbits();
        let deleted: BTreeSet<usize> = chosen.iter().flat_map(|&o| orbits[o].iter().copied()).collect();
        let del = q.delete_tau_stable(&deleted).unwrap();
        prop_assert_eq!(del.quiver.len(), q.len() - deleted.len());
        prop_assert!(!del.quiver.meta().mesh_validated);
        // whole τ-orbits take their meshes with them
        prop_assert!(del.quiver.validate().mesh_ok());
        for (k, &v) in del.kept.iter().enumerate() {
            prop_assert_eq!(del.kept[del.quiver.tau(k)], q.tau(v));
        }
    }

    #[test]
    fn deleting_part_of_an_orbit_fails(d in small_diagram(), u in 1u32..=3, pick in any::<prop::sample::Index>()) {
        let q = cluster(&d, u);
        let orbits = q.tau_orbits();
        let orbit = &orbits[pick.index(orbits.len())];
        prop_assume!(orbit.len() > 1);
        let partial: BTreeSet<usize> = orbit[1..].iter().copied().collect();
        prop_assert!(q.delete_tau_stable(&partial).is_err());
    }
}
