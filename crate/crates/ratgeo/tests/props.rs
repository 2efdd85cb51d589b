//! Structural invariants of the cone algebra, checked on random instances.

use proptest::prelude::*;
use ratgeo::dd::{h_to_v_with, v_to_h_with, DdOpts};
use ratgeo::rational::{rat, BigInt, Rat};
use ratgeo::{contains_point_exact, fm_eliminate, remove_redundant, Exec, FmOpts, HCone, VCone};
use std::collections::BTreeSet;

fn lenient() -> DdOpts {
    DdOpts {
        exec: Exec::Sequential,
        allow_lineality: true,
    }
}

fn int_rows(dim: usize, max_rows: usize) -> impl Strategy<Value = Vec<Vec<BigInt>>> {
    prop::collection::vec(
        prop::collection::vec(-3i64..=3, dim).prop_map(|r| {
            r.into_iter().map(BigInt::from).collect::<Vec<BigInt>>()
        }),
        1..=max_rows,
    )
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    // canonical(h_to_v(v_to_h(V))) = canonical(V) on random generating sets:
    // the recovered rays are the extremal subset of the input hull.
    #[test]
    fn round_trip_v_h_v(dim in 2usize..=8, rows in int_rows(8, 12)) {
        let rays: Vec<Vec<BigInt>> = rows
            .into_iter()
            .map(|r| r[..dim].to_vec())
            .filter(|r| r.iter().any(|x| !num_traits::Zero::is_zero(x)))
            .collect();
        prop_assume!(!rays.is_empty());
        let v = VCone::new(dim, rays).unwrap().canonical();
        let h = v_to_h_with(&v, &lenient()).unwrap();
        let back = h_to_v_with(&h, &lenient()).unwrap().canonical();
        // Every recovered ray is in the hull, every input ray is spanned.
        for r in &back.rays {
            let pt: Vec<Rat> = r.iter().map(|x| Rat::from_integer(x.clone())).collect();
            prop_assert!(ratgeo::in_conic_hull(&v, &pt).unwrap().is_some());
        }
        let mut vv = v.clone();
        vv.lineality = back.lineality.clone();
        for r in &v.rays {
            let pt: Vec<Rat> = r.iter().map(|x| Rat::from_integer(x.clone())).collect();
            prop_assert!(ratgeo::in_conic_hull(&back, &pt).unwrap().is_some());
        }
        // Idempotence: converting the recovered V-cone again is stable.
        let h2 = v_to_h_with(&back, &lenient()).unwrap();
        prop_assert_eq!(h.eqs, h2.eqs);
        prop_assert_eq!(h.ineqs, h2.ineqs);
    }

    // Projection consistency: FM elimination agrees with deleting coordinates
    // from the ray representation.
    #[test]
    fn fm_matches_ray_projection(dim in 3usize..=6, rows in int_rows(6, 12), drop_at in 0usize..6) {
        let rows: Vec<Vec<BigInt>> = rows.into_iter().map(|r| r[..dim].to_vec()).collect();
        let cone = HCone::new(dim, vec![], rows).unwrap();
        let drop = BTreeSet::from([drop_at % dim]);
        let opts = FmOpts { exec: Exec::Sequential, ..FmOpts::default() };
        let fm = fm_eliminate(&cone, &drop, &opts).unwrap();
        let fm = remove_redundant(&fm);

        let v = h_to_v_with(&cone, &lenient()).unwrap();
        let projected = v.delete_coords(&drop);
        let ray_route = if projected.rays.is_empty() && projected.lineality.is_empty() {
            // Projection of the origin.
            let mut eqs = Vec::new();
            for i in 0..projected.dim {
                let mut e = vec![BigInt::from(0); projected.dim];
                e[i] = BigInt::from(1);
                eqs.push(e);
            }
            HCone::new(projected.dim, eqs, vec![]).unwrap().canonical()
        } else {
            v_to_h_with(&projected, &lenient()).unwrap()
        };
        let ray_route = remove_redundant(&ray_route);
        prop_assert_eq!(fm.eqs, ray_route.eqs);
        prop_assert_eq!(fm.ineqs, ray_route.ineqs);
    }

    // remove_redundant preserves the solution set (sampled rational points)
    // and is idempotent.
    #[test]
    fn redundancy_preserves_solutions(dim in 2usize..=6, rows in int_rows(6, 14), seed in any::<u64>()) {
        let rows: Vec<Vec<BigInt>> = rows.into_iter().map(|r| r[..dim].to_vec()).collect();
        let cone = HCone::new(dim, vec![], rows).unwrap();
        let reduced = remove_redundant(&cone);
        let again = remove_redundant(&reduced);
        prop_assert_eq!(&reduced, &again);

        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..100 {
            let pt: Vec<Rat> = (0..dim)
                .map(|_| rat(rng.gen_range(-12i64..=12), rng.gen_range(1i64..=4)))
                .collect();
            let a = contains_point_exact(&cone, &pt).unwrap();
            let b = contains_point_exact(&reduced, &pt).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    // Tolerance-zero float membership agrees with exact evaluation on
    // integer-valued points.
    #[test]
    fn float_membership_matches_exact(dim in 2usize..=5, rows in int_rows(5, 8), pt in prop::collection::vec(-4i64..=4, 5)) {
        let rows: Vec<Vec<BigInt>> = rows.into_iter().map(|r| r[..dim].to_vec()).collect();
        let cone = HCone::new(dim, vec![], rows).unwrap();
        let exact: Vec<Rat> = pt[..dim].iter().map(|&x| Rat::from_integer(BigInt::from(x))).collect();
        let floats: Vec<f64> = pt[..dim].iter().map(|&x| x as f64).collect();
        let a = contains_point_exact(&cone, &exact).unwrap();
        let b = ratgeo::contains_point(&cone, &floats, 0.0).unwrap().inside;
        prop_assert_eq!(a, b);
    }
}

#[test]
fn parallel_and_sequential_fm_agree() {
    // Determinism contract: canonical outputs are schedule independent.
    let rows: Vec<Vec<BigInt>> = vec![
        vec![2, 0, -1, 1],
        vec![0, 2, -1, 0],
        vec![0, 0, 1, -1],
        vec![1, 1, 1, 1],
        vec![-1, 2, 0, 1],
        vec![0, -1, 2, 1],
    ]
    .into_iter()
    .map(|r| r.into_iter().map(BigInt::from).collect())
    .collect();
    let cone = HCone::new(4, vec![], rows).unwrap();
    let elim = BTreeSet::from([1, 3]);
    let seq = fm_eliminate(
        &cone,
        &elim,
        &FmOpts {
            exec: Exec::Sequential,
            ..FmOpts::default()
        },
    )
    .unwrap();
    let par = fm_eliminate(
        &cone,
        &elim,
        &FmOpts {
            exec: Exec::Parallel,
            ..FmOpts::default()
        },
    )
    .unwrap();
    assert_eq!(seq, par);
}
