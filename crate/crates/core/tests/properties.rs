use std::f64::consts::FRAC_PI_2;

use curvlike::ambient::AmbientModel;
use curvlike::gauss::{
    check_bound, chen_ricci_bound, classify_all_equality, corollary_triple, gauss_tensor, improved_bound,
    is_totally_symmetric, BoundMode, EqualityClass,
};
use curvlike::instance::Instance;
use curvlike::linalg::{self, Matrix};
use curvlike::optim::{max_ricci, symmetric_eigen, ConstrainedQuadratic, LemmaKind};
use curvlike::sampling::Sampler;
use curvlike::structures::{
    construct_family, umbilical_rigidity_witness, FamilyParams, RigidityVerdict, SlantStructure,
};
use curvlike::tensor::{BundleValuedForm, Dimensions, UnitVector};
use proptest::prelude::*;

/// Direct quadruple loop over the Gauss expression.
fn naive_gauss(zeta: &BundleValuedForm, i: usize, j: usize, k: usize, l: usize) -> f64 {
    (0..zeta.bundle_dim())
        .map(|r| zeta.get(r, i, l) * zeta.get(r, j, k) - zeta.get(r, i, k) * zeta.get(r, j, l))
        .sum()
}

/// `Ric_T(X) = ¼|tr|² − Σ_j |ζ(X, Y_j)|² − ¼|2ζ(X,X) − tr|²` over an
/// orthonormal basis `Y_j` of `X⊥`.
fn ricci_oracle(zeta: &BundleValuedForm, x: &[f64]) -> f64 {
    let tr = zeta.trace();
    let off: f64 = linalg::orthogonal_complement(x)
        .iter()
        .map(|y| linalg::norm(&zeta.apply(x, y)).powi(2))
        .sum();
    let diag = linalg::sub(&linalg::scale(&zeta.apply(x, x), 2.0), &tr);
    0.25 * linalg::dot(&tr, &tr) - off - 0.25 * linalg::dot(&diag, &diag)
}

fn general_case() -> impl Strategy<Value = (u64, usize, usize)> {
    (any::<u64>(), 2usize..=6).prop_flat_map(|(seed, n)| (Just(seed), Just(n), 1usize..=2 * n + 2))
}

fn general_form((seed, n, m): (u64, usize, usize)) -> BundleValuedForm {
    Sampler::new(seed).random_general(Dimensions::new(n, m).unwrap())
}

fn symmetric_form(seed: u64, n: usize, extra: usize) -> BundleValuedForm {
    Sampler::new(seed).random_symmetric(Dimensions::new(n, n + extra).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn built_tensor_matches_naive_expansion(case in general_case()) {
        let zeta = general_form(case);
        let t = gauss_tensor(&zeta);
        let n = zeta.n();
        let scale = zeta.norm_sq().max(1.0);
        for i in 0..n { for j in 0..n { for k in 0..n { for l in 0..n {
            prop_assert!((t.get(i, j, k, l) - naive_gauss(&zeta, i, j, k, l)).abs() <= 1e-13 * scale);
        }}}}
        let sym = t.validate_symmetries(1e-12 * scale);
        prop_assert!(sym.passed);
        prop_assert!(sym.pair_exchange <= 1e-12 * scale);
    }

    #[test]
    fn scalar_and_trace_identities(case in general_case()) {
        let zeta = general_form(case);
        let t = gauss_tensor(&zeta);
        let tau = t.scalar().unwrap();
        prop_assert!((tau - 0.5 * zeta.trace_norm_sq() + 0.5 * zeta.norm_sq()).abs() <= 1e-10);
        let n = zeta.n();
        let ricci_sum: f64 = (0..n).map(|i| t.ricci(&UnitVector::basis(n, i)).unwrap()).sum();
        prop_assert!((ricci_sum - 2.0 * tau).abs() <= 1e-10);
    }

    #[test]
    fn ricci_matches_completed_square_oracle(case in general_case(), dir_seed in any::<u64>()) {
        let zeta = general_form(case);
        let t = gauss_tensor(&zeta);
        let mut s = Sampler::new(dir_seed);
        for _ in 0..5 {
            let x = s.random_unit(zeta.n());
            prop_assert!((t.ricci(&x).unwrap() - ricci_oracle(&zeta, x.as_slice())).abs() <= 1e-10);
        }
    }

    #[test]
    fn sectional_is_symmetric_in_its_arguments(case in general_case(), dir_seed in any::<u64>()) {
        let zeta = general_form(case);
        let t = gauss_tensor(&zeta);
        let mut s = Sampler::new(dir_seed);
        let q = s.random_orthogonal(zeta.n());
        let x = UnitVector::normalize(&q.column(0)).unwrap();
        let y = UnitVector::normalize(&q.column(1)).unwrap();
        prop_assert!((t.sectional(&x, &y).unwrap() - t.sectional(&y, &x).unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn eigen_solver_bounds_sampled_ricci(case in general_case(), dir_seed in any::<u64>()) {
        let zeta = general_form(case);
        let s_t = gauss_tensor(&zeta).ricci_form().unwrap();
        let (lambda, v) = max_ricci(&s_t).unwrap();
        prop_assert!((s_t.quadratic_form(v.as_slice()) - lambda).abs() <= 1e-9);
        let av = s_t.matvec(v.as_slice());
        let residual = linalg::norm(&linalg::sub(&av, &linalg::scale(v.as_slice(), lambda)));
        prop_assert!(residual <= 1e-10 * s_t.frobenius_norm().max(1.0));
        let mut s = Sampler::new(dir_seed);
        for _ in 0..200 {
            let x = s.random_unit(zeta.n());
            prop_assert!(s_t.quadratic_form(x.as_slice()) <= lambda + 1e-9);
        }
    }

    #[test]
    fn general_bound_holds(case in general_case()) {
        let zeta = general_form(case);
        let r = check_bound(&zeta, BoundMode::General, 1e-9).unwrap();
        prop_assert!(r.ricci_max <= chen_ricci_bound(&zeta) + 1e-9);
        prop_assert!(r.holds());
    }

    #[test]
    fn improved_bound_holds_for_symmetric_forms(seed in any::<u64>(), n in 2usize..=6, extra in 0usize..=3) {
        let zeta = symmetric_form(seed, n, extra);
        let r = check_bound(&zeta, BoundMode::Improved, 1e-9).unwrap();
        prop_assert!(r.symmetry_certified);
        prop_assert!(r.ricci_max <= improved_bound(&zeta) + 1e-9);
    }

    #[test]
    fn frame_changes_preserve_invariants(case in general_case(), rot_seed in any::<u64>()) {
        let zeta = general_form(case);
        let mut s = Sampler::new(rot_seed);
        let qt = s.random_orthogonal(zeta.n());
        let qb = s.random_orthogonal(zeta.bundle_dim());
        let rotated = zeta.rotate_frame(&qt, &qb).unwrap();
        prop_assert!((rotated.norm_sq() - zeta.norm_sq()).abs() <= 1e-10);
        prop_assert!((rotated.trace_norm_sq() - zeta.trace_norm_sq()).abs() <= 1e-10);
        // S_T transforms as a bilinear form
        let s0 = gauss_tensor(&zeta).ricci_form().unwrap();
        let s1 = gauss_tensor(&rotated).ricci_form().unwrap();
        let expected = qt.matmul(&s0).unwrap().matmul(&qt.transpose()).unwrap();
        prop_assert!(s1.max_abs_diff(&expected) <= 1e-10 * zeta.norm_sq().max(1.0));
        let back = rotated.rotate_frame(&qt.transpose(), &qb.transpose()).unwrap();
        for r in 0..zeta.bundle_dim() { for i in 0..zeta.n() { for j in 0..zeta.n() {
            prop_assert!((back.get(r, i, j) - zeta.get(r, i, j)).abs() <= 1e-12 * zeta.max_abs().max(1.0));
        }}}
    }

    #[test]
    fn null_space_vectors_annihilate(seed in any::<u64>(), n in 2usize..=6, m in 1usize..=4, kill in 1usize..=3) {
        // zero out the first `kill` tangent directions so the kernel is nontrivial
        let mut s = Sampler::new(seed);
        let kill = kill.min(n);
        let base = s.random_general(Dimensions::new(n, m).unwrap());
        let zeta = BundleValuedForm::from_fn(base.dims(), |r, i, j| if i < kill || j < kill { 0.0 } else { base.get(r, i, j) });
        let basis = zeta.null_space(1e-9);
        prop_assert!(basis.len() >= kill);
        for v in &basis {
            for _ in 0..50 {
                let y = s.random_unit(n);
                prop_assert!(linalg::norm(&zeta.apply(v.as_slice(), y.as_slice())) <= 1e-8 * zeta.max_abs().max(1.0));
            }
        }
        for a in 0..basis.len() { for b in 0..basis.len() {
            let expected = if a == b { 1.0 } else { 0.0 };
            prop_assert!((linalg::dot(basis[a].as_slice(), basis[b].as_slice()) - expected).abs() <= 1e-12);
        }}
    }

    #[test]
    fn corollary_verdict_always_true(case in general_case(), dir_seed in any::<u64>(), traceless in any::<bool>()) {
        let mut zeta = general_form(case);
        if traceless {
            // subtract the trace part so statement (b) holds
            let tr = zeta.trace();
            let n = zeta.n() as f64;
            zeta = BundleValuedForm::from_fn(zeta.dims(), |r, i, j| zeta.get(r, i, j) - if i == j { tr[r] / n } else { 0.0 });
        }
        let mut s = Sampler::new(dir_seed);
        for _ in 0..5 {
            prop_assert!(corollary_triple(&zeta, &s.random_unit(zeta.n()), 1e-9).verified);
        }
    }

    #[test]
    fn classification_is_frame_independent(rot_seed in any::<u64>(), mu in 0.1f64..5.0) {
        let zeta = construct_family(&FamilyParams::HUmbilical { n: 2, lambda: 3.0 * mu, mu }).unwrap();
        let rotated = Sampler::new(rot_seed).random_rotation(&zeta).unwrap();
        match classify_all_equality(&rotated, BoundMode::Improved, 1e-9).unwrap() {
            EqualityClass::HUmbilicalSurface { mu: found, .. } => prop_assert!((found - mu).abs() <= 1e-9),
            other => prop_assert!(false, "lost class: {:?}", other),
        }
    }

    #[test]
    fn lemma_maxima_dominate_feasible_points(n in 2usize..=8, sum in -10.0f64..10.0, seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        for kind in [LemmaKind::F1, LemmaKind::F2] {
            let q = ConstrainedQuadratic::new(kind, n, sum).unwrap();
            let closed = q.closed_form();
            prop_assert!(q.constraint_residual(&closed.argmax) <= 1e-12);
            prop_assert!((q.value(&closed.argmax).unwrap() - closed.max).abs() <= 1e-12 * sum.abs().max(1.0).powi(2));
            for _ in 0..100 {
                let mut a: Vec<f64> = (0..n).map(|_| s.normal() * sum.abs().max(1.0)).collect();
                let tail: f64 = a[1..].iter().sum();
                a[0] = sum - tail;
                prop_assert!(q.value(&a).unwrap() <= closed.max + 1e-9);
            }
        }
    }

    #[test]
    fn eigen_residual_on_random_symmetric(n in 1usize..=16, seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let raw = Matrix::from_fn(n, n, |_, _| s.normal());
        let a = Matrix::from_fn(n, n, |i, j| raw[(i, j)] + raw[(j, i)]);
        let eig = symmetric_eigen(&a).unwrap();
        for k in 0..n {
            let v = eig.vector(k);
            let r = linalg::sub(&a.matvec(&v), &linalg::scale(&v, eig.values[k]));
            prop_assert!(linalg::norm(&r) <= 1e-10 * a.frobenius_norm().max(1.0));
        }
    }

    #[test]
    fn instance_json_round_trip_is_exact(case in general_case(), c in -10.0f64..10.0) {
        let inst = Instance::new(general_form(case)).with_ambient(AmbientModel::RealSpaceForm { c });
        prop_assert_eq!(Instance::from_json(&inst.to_json()).unwrap(), inst);
    }

    #[test]
    fn slant_invariants(half in 1usize..=8, theta in 1e-3f64..FRAC_PI_2) {
        let s = SlantStructure::build(2 * half, theta).unwrap();
        prop_assert!(s.residuals().max() <= 1e-12);
    }

    #[test]
    fn rigidity_never_symmetric_nonzero(n in 2usize..=6, seed in any::<u64>()) {
        let h0 = Sampler::new(seed).normal_vec(n);
        prop_assert_eq!(umbilical_rigidity_witness(n, &h0).unwrap(), RigidityVerdict::ForcedGeodesic);
    }

    #[test]
    fn ambient_bounds_hold(seed in any::<u64>(), n in 2usize..=6, c in -5.0f64..5.0, half_theta in 0.01f64..FRAC_PI_2) {
        let zeta = symmetric_form(seed, n, 1);
        let even = n % 2 == 0;
        let mut models = vec![
            AmbientModel::ComplexLagrangian { c },
            AmbientModel::SasakianCTotallyReal { c },
            AmbientModel::RealSpaceForm { c },
        ];
        if even {
            models.push(AmbientModel::ComplexSlant { c, theta: half_theta });
        }
        for model in models {
            let (ric, _) = model.intrinsic_ricci_max(&zeta).unwrap();
            prop_assert!(ric <= model.application_bound(&zeta).unwrap() + 1e-9);
            prop_assert!(model.bound_identity_residual(&zeta).unwrap().abs() <= 1e-12 * zeta.trace_norm_sq().max(1.0));
        }
        let lag = AmbientModel::ComplexLagrangian { c };
        let deg = AmbientModel::ComplexSlant { c, theta: FRAC_PI_2 };
        prop_assert_eq!(lag.application_bound(&zeta).unwrap(), deg.application_bound(&zeta).unwrap());
        prop_assert_eq!(lag.intrinsic_ricci_max(&zeta).unwrap(), deg.intrinsic_ricci_max(&zeta).unwrap());
    }

    #[test]
    fn symmetric_sampler_certifies(seed in any::<u64>(), n in 2usize..=6, extra in 0usize..=4) {
        prop_assert!(is_totally_symmetric(&symmetric_form(seed, n, extra), 0.0).unwrap().holds);
    }
}

#[test]
fn general_sampler_is_almost_never_symmetric() {
    let mut violated = 0;
    for k in 0..1000 {
        let mut s = Sampler::for_instance(17, k);
        let n = s.range(2, 6);
        let m = s.range(n, 2 * n + 2);
        if !is_totally_symmetric(&s.random_general(Dimensions::new(n, m).unwrap()), 1e-9)
            .unwrap()
            .holds
        {
            violated += 1;
        }
    }
    assert!(violated >= 990, "only {violated} of 1000 violated symmetry");
}
