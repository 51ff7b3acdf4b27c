use proptest::prelude::*;
use qorep::qarith::ShiftedArg;
use qorep::so22::{classify, decompose, interior_indices, ladder_rep, so22_rep, so22_rep_primed, LadderTag, RepParams, StarStatus};
use qorep::verify::{check_equivalence, check_star, Ansatz, Restriction, StarForm};
use qorep::{GenMatrixSet, Generator, HalfInt, QContext, C64};

const Q: f64 = 1.3;

fn ctx() -> QContext {
    QContext::new(Q).unwrap().with_tolerances(1e-9, 1e-12).unwrap()
}

fn generic() -> impl Strategy<Value = C64> {
    (0.55f64..2.5, 0.1f64..1.5).prop_map(|(re, im)| C64::new(re, im))
}

fn max_diff(a: &GenMatrixSet, b: &GenMatrixSet) -> f64 {
    [Generator::I21, Generator::I32, Generator::I43]
        .iter()
        .map(|&g| (a.get(g) - b.get(g)).iter().map(|z| z.norm()).fold(0.0, f64::max))
        .fold(0.0, f64::max)
}

fn off_diagonal(m: &qorep::CMat) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if i != j {
                worst = worst.max(m[(i, j)].norm());
            }
        }
    }
    worst
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn symbolic_period_is_exact(eps in 0u8..2, b in generic(), c in generic()) {
        let ctx = ctx();
        let k = HalfInt::int(6);
        let p = RepParams::plain(eps, b, c).unwrap();
        let shifted = RepParams::new(eps, ShiftedArg::new(b, 4), ShiftedArg::new(c, 4)).unwrap();
        prop_assert_eq!(max_diff(&so22_rep(&p, k, &ctx).unwrap(), &so22_rep(&shifted, k, &ctx).unwrap()), 0.0);
    }

    #[test]
    fn sign_gauge_is_diagonal(eps in 0u8..2, b in generic(), c in generic()) {
        let ctx = ctx();
        let k = HalfInt::int(6);
        let p = RepParams::plain(eps, b, c).unwrap();
        let g = RepParams::new(eps, ShiftedArg::new(b, 2), ShiftedArg::new(c, 0)).unwrap();
        let t = check_equivalence(&so22_rep(&p, k, &ctx).unwrap(), &so22_rep(&g, k, &ctx).unwrap(), Ansatz::Diagonal, &ctx).unwrap();
        prop_assert!(t.residual <= 1e-9);
    }

    #[test]
    fn cartan_generators_are_diagonal(eps in 0u8..2, b in generic(), c in generic()) {
        let ctx = ctx();
        let p = RepParams::plain(eps, b, c).unwrap();
        let set = so22_rep(&p, HalfInt::int(5), &ctx).unwrap();
        prop_assert_eq!(off_diagonal(set.get(Generator::I21)), 0.0);
        prop_assert_eq!(off_diagonal(set.get(Generator::I43)), 0.0);
    }

    #[test]
    fn generic_points_are_irreducible(eps in 0u8..2, b in generic(), c in generic()) {
        let ctx = ctx();
        let p = RepParams::plain(eps, b, c).unwrap();
        let report = decompose(&p, p.default_window(), &ctx).unwrap();
        prop_assert!(report.irreducible);
        prop_assert_eq!(report.components.len(), 1);
    }

    #[test]
    fn components_partition_the_window(eps in 0u8..2, b2 in 1i32..6, im in 0.1f64..1.2, real_b in any::<bool>()) {
        let ctx = ctx();
        let wall = ShiftedArg::real(f64::from(2 * b2 - 1 + eps as i32) / 2.0);
        let other = ShiftedArg::new(C64::new(0.6, im), 0);
        let p = if real_b { RepParams::new(eps, wall, other) } else { RepParams::new(eps, other, wall) }.unwrap();
        let report = decompose(&p, p.default_window(), &ctx).unwrap();
        let dim = so22_rep_primed(&report.params, report.window, &ctx).unwrap().set.dim();
        let mut seen = vec![0u32; dim];
        for comp in &report.components {
            prop_assert!(comp.leakage <= 1e-12);
            for &i in &comp.indices {
                seen[i] += 1;
            }
        }
        prop_assert!(seen.iter().all(|&n| n == 1));
    }

    #[test]
    fn d0_ladder_is_a_block(eps in Just(0u8), c in generic()) {
        let ctx = ctx();
        let p = RepParams::new(eps, ShiftedArg::real(1.0), ShiftedArg::new(c, 0)).unwrap();
        let k = HalfInt::int(7);
        let chain = ladder_rep(LadderTag::D0, &p, k, &ctx).unwrap();
        let full = so22_rep_primed(&p, k, &ctx).unwrap().set;
        let idx: Vec<usize> = chain.basis.iter().map(|b| full.index_of(b).unwrap()).collect();
        let t = check_equivalence(&chain, &full.restrict(&idx), Ansatz::Diagonal, &ctx).unwrap();
        prop_assert!(t.residual <= 1e-9);
    }

    #[test]
    fn certified_components_pass_the_star_check(eps in 0u8..2, bi in -2.0f64..2.0, ci in -2.0f64..2.0, principal in any::<bool>()) {
        let ctx = QContext::new(Q).unwrap().with_tolerances(1e-10, 1e-12).unwrap();
        let b = C64::new(0.5, bi);
        let c = if principal { C64::new(0.5, ci) } else { C64::new(1.0 + ci.abs(), ci) };
        let p = RepParams::plain(eps, b, c).unwrap();
        let report = classify(&p, p.default_window(), &ctx).unwrap();
        let set = so22_rep_primed(&report.params, report.window, &ctx).unwrap().set;
        let r = Restriction::subset(interior_indices(&set, 3), "interior(3)");
        let worst = check_star(&set, StarForm::So22, &ctx, &r).iter().map(|x| x.residual).fold(0.0, f64::max);
        let certified = report.star.iter().all(|s| s.status == StarStatus::Certified);
        prop_assert_eq!(certified, principal);
        prop_assert_eq!(worst <= 1e-10, principal);
    }
}
