mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wedgent::wedge::family_rank;
use wedgent::*;

const DIM_CHOICES: [&[usize]; 6] = [&[2, 2], &[2, 3], &[3, 3], &[2, 2, 2], &[2, 2, 3], &[3, 2, 2, 2]];

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reassembly_is_exact(seed in any::<u64>(), dims_ix in 0..DIM_CHOICES.len(), mask in 1usize..15, measure_a in any::<bool>()) {
        let mut r = rng(seed);
        let s = random_state(&mut r, DIM_CHOICES[dims_ix]);
        let n = s.num_sites();
        let block: Vec<usize> = (0..n).filter(|k| mask >> k & 1 == 1).collect();
        prop_assume!(!block.is_empty() && block.len() < n);
        let cut = Bipartition::new(s.dims(), &block).unwrap();
        let side = if measure_a { Side::A } else { Side::B };
        let fam = post_measurement_vectors(&s, &cut, Some(side)).unwrap();
        prop_assert_eq!(fam.reassemble(s.dims()), s.amplitudes().to_vec());
        let total: f64 = fam.norms_sqr().iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        prop_assert_eq!(fam.len(), cut.dim(side));
    }

    #[test]
    fn local_unitaries_preserve_norm_and_measures(seed in any::<u64>(), dims_ix in 0..DIM_CHOICES.len()) {
        let mut r = rng(seed);
        let s = random_state(&mut r, DIM_CHOICES[dims_ix]);
        let lu = random_local_unitary(&mut r, s.dims());
        let t = apply_local_unitary(&s, &lu).unwrap();
        prop_assert!((t.norm() - 1.0).abs() < 1e-12);
        let before = global_entanglement(&s).unwrap();
        let after = global_entanglement(&t).unwrap();
        prop_assert!((before.global_e - after.global_e).abs() < 1e-10);
        for (x, y) in before.cuts.iter().zip(&after.cuts) {
            prop_assert!((x.concurrence.c_wedge - y.concurrence.c_wedge).abs() < 1e-10);
        }
        if let (Some(a), Some(b)) = (before.tangle, after.tangle) {
            prop_assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn wedge_is_bilinear_and_antisymmetric(seed in any::<u64>(), n in 1usize..10, re in -3.0f64..3.0, im in -3.0f64..3.0) {
        let mut r = rng(seed);
        let a = random_vector(&mut r, n);
        let b = random_vector(&mut r, n);
        let alpha = Complex64::new(re, im);
        let scaled: Vec<Complex64> = a.iter().map(|z| z * alpha).collect();
        let lhs = wedge2(&scaled, &b).unwrap();
        let rhs = wedge2(&a, &b).unwrap().scale(alpha);
        for (x, y) in lhs.coefficients().iter().zip(rhs.coefficients()) {
            prop_assert!((x - y).norm() < 1e-12);
        }
        let ab = wedge2(&a, &b).unwrap();
        let ba = wedge2(&b, &a).unwrap();
        prop_assert!((&ab + &ba).magnitude_sq() < 1e-24);
    }

    #[test]
    fn wedge_magnitude_is_unitarily_invariant(seed in any::<u64>(), n in 2usize..9) {
        let mut r = rng(seed);
        let a = random_vector(&mut r, n);
        let b = random_vector(&mut r, n);
        let u = random_unitary(&mut r, n);
        let apply = |v: &[Complex64]| (0..n).map(|i| (0..n).map(|j| u[(i, j)] * v[j]).sum()).collect::<Vec<Complex64>>();
        let before = wedge_magnitude_sq(&a, &b).unwrap();
        let after = wedge_magnitude_sq(&apply(&a), &apply(&b)).unwrap();
        prop_assert!((before - after).abs() < 1e-10 * before.max(1.0));
    }

    #[test]
    fn tangle_is_permutation_invariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_state(&mut r, &[2, 2, 2]);
        let tau = three_tangle(&s).unwrap();
        for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            let t = three_tangle(&permute_sites(&s, &perm)).unwrap();
            prop_assert!((tau - t).abs() < 1e-10, "perm {:?}: {} vs {}", perm, tau, t);
        }
    }
}

#[test]
fn lagrange_identity_on_random_pairs() {
    let mut r = rng(11);
    let mut worst = 0.0f64;
    for k in 0..1000 {
        let n = 2 + k % 15;
        let a = random_vector(&mut r, n);
        let b = random_vector(&mut r, n);
        let by_coeffs = wedge2(&a, &b).unwrap().magnitude_sq();
        let by_lagrange = wedge_magnitude_sq(&a, &b).unwrap();
        worst = worst.max((by_coeffs - by_lagrange).abs() / by_coeffs.max(1.0));
    }
    assert!(worst < 1e-12, "worst relative gap {worst:e}");
}

#[test]
fn gram_volume_positive_iff_independent() {
    let mut r = rng(12);
    for trial in 0..500 {
        let n = 2 + trial % 5;
        let k = 1 + trial % n;
        let mut vs: Vec<Vec<Complex64>> = (0..k).map(|_| random_vector(&mut r, n)).collect();
        let dependent = trial % 2 == 0 && k >= 2;
        if dependent {
            let combo: Vec<Complex64> =
                (0..n).map(|i| vs[..k - 1].iter().map(|v| v[i] * Complex64::new(0.3, -1.7)).sum()).collect();
            vs[k - 1] = combo;
        }
        let vol = kvector_magnitude_sq(&vs).unwrap();
        let rank = family_rank(&vs).unwrap();
        assert!(vol >= 0.0);
        if dependent {
            assert!(rank < k, "trial {trial}");
            assert!(vol < 1e-9, "trial {trial}: {vol}");
        } else {
            assert_eq!(rank, k, "trial {trial}");
            assert!(vol > 1e-9, "trial {trial}: {vol}");
        }
    }
}

#[test]
fn kvector_of_two_is_wedge_and_orthogonal_is_product() {
    let mut r = rng(13);
    for _ in 0..50 {
        let a = random_vector(&mut r, 5);
        let b = random_vector(&mut r, 5);
        let k2 = kvector_magnitude_sq(&[a.clone(), b.clone()]).unwrap();
        assert!((k2 - wedge_magnitude_sq(&a, &b).unwrap()).abs() < 1e-10 * k2.max(1.0));
    }
    let u = random_unitary(&mut r, 4);
    let scales = [0.5, 2.0, 1.5];
    let cols: Vec<Vec<Complex64>> = (0..3).map(|j| (0..4).map(|i| u[(i, j)] * scales[j]).collect()).collect();
    let expected: f64 = scales.iter().map(|s| s * s).product();
    assert!((kvector_magnitude_sq(&cols).unwrap() - expected).abs() < 1e-12);
}

#[test]
fn tangle_matches_hyperdeterminant() {
    let mut r = rng(14);
    for _ in 0..1000 {
        let s = random_state(&mut r, &[2, 2, 2]);
        let tau = three_tangle(&s).unwrap();
        assert!((tau - hyperdeterminant_tangle(&s)).abs() < 1e-12);
    }
}

#[test]
fn method_equivalence_and_rdm_oracle() {
    let mut r = rng(15);
    let dims: [&[usize]; 5] = [&[2, 2], &[2, 3], &[3, 3], &[2, 2, 2], &[2, 2, 3]];
    for _ in 0..1000 {
        let d = *pick(&mut r, &dims);
        let s = random_state(&mut r, d);
        for cut in enumerate_bipartitions(s.dims()).unwrap() {
            let w = concurrence_wedge(&s, &cut).unwrap();
            let p = concurrence_purity(&s, &cut).unwrap();
            assert!((w - p).abs() < 1e-10);
            assert!(w <= concurrence::max_concurrence(cut.d_small()) + 1e-12);
            let rho = rdm_overlap(&s, &cut, cut.smaller_side()).unwrap();
            assert!((2.0 * (1.0 - rho.purity()) - w * w).abs() < 1e-10);
        }
    }
}

#[test]
fn rdm_oracle_up_to_256() {
    let mut r = rng(16);
    let dims: [&[usize]; 4] = [&[4, 4, 4, 4], &[2, 2, 2, 2, 2, 2, 2, 2], &[3, 5], &[2, 3, 4, 2]];
    for d in dims {
        let s = random_state(&mut r, d);
        for cut in enumerate_bipartitions(s.dims()).unwrap().iter().take(6) {
            for side in [Side::A, Side::B] {
                let a = rdm_overlap(&s, cut, side).unwrap();
                let b = rdm_trace_oracle(&s, cut, side).unwrap();
                assert!(a.matrix().max_abs_diff(b.matrix()) < 1e-12, "{cut} {side:?}");
            }
        }
    }
}

#[test]
fn separability_propagates_and_caps_global_e() {
    let mut r = rng(17);
    let mut checked = 0;
    for k in 0..1000 {
        // a ⊗ ψ_BC with ψ_BC a product half of the time, sites shuffled
        let a = random_state(&mut r, &[2]);
        let bc = if k % 2 == 0 { random_product(&mut r, &[2, 2]) } else { random_state(&mut r, &[2, 2]) };
        let perms = [[0, 1, 2], [1, 0, 2], [1, 2, 0]];
        let s = permute_sites(&a.tensor(&bc), pick(&mut r, &perms));
        let cuts = enumerate_bipartitions(s.dims()).unwrap();
        let certs: Vec<_> = cuts.iter().map(|c| certify(&s, c, 1e-9).unwrap()).collect();
        let separable: Vec<usize> = (0..3).filter(|&i| certs[i].verdict == Verdict::Separable).collect();
        assert!(!separable.is_empty());
        assert!(global_entanglement(&s).unwrap().global_e <= 2.0 + 1e-9);
        if separable.len() >= 2 {
            checked += 1;
            assert_eq!(separable.len(), 3, "two separable cuts force the third: {k} {certs:?}");
        }
    }
    assert!(checked >= 400, "only {checked} doubly separable samples");
}

#[test]
fn certified_maximal_cuts_hit_bound_and_mixed_reduction() {
    let states = [
        states::ghz(3).unwrap(),
        states::ghz_like(2).unwrap(),
        states::generalized_bell(4).unwrap(),
        states::ghz(5).unwrap(),
    ];
    for s in &states {
        for cut in enumerate_bipartitions(s.dims()).unwrap() {
            let cert = certify(s, &cut, 1e-12).unwrap();
            if cert.is_maximal() {
                let c = concurrence_wedge(s, &cut).unwrap();
                assert!((c - concurrence::max_concurrence(cut.d_small())).abs() < 1e-10);
                let rho = rdm_overlap(s, &cut, cut.smaller_side()).unwrap();
                assert!(rho.distance_from_maximally_mixed() < 1e-10);
            }
        }
    }
}

#[test]
fn complementarity_on_two_qudits() {
    let mut r = rng(18);
    for k in 0..500 {
        let da = 2 + k % 4;
        let db = 2 + (k / 4) % 4;
        let s = random_state(&mut r, &[da, db]);
        let cut = Bipartition::new(s.dims(), &[0]).unwrap();
        let c = concurrence_wedge(&s, &cut).unwrap();
        for side in [Side::A, Side::B] {
            let d = cut.dim(side) as f64;
            let p = intrinsic_coherence(&s, &cut, side).unwrap();
            assert!((0.0..=1.0).contains(&p));
            assert!((p * p + d / (d - 1.0) * c * c / 2.0 - 1.0).abs() < 1e-10);
        }
    }
}

#[test]
fn search_is_sound_and_consistent() {
    let mut cfg = SearchConfig::new(SiteDims::new(vec![2, 3]).unwrap(), Objective::MinimizeConstraintResidual);
    cfg.restarts = 4;
    let res = maximize(&cfg).unwrap();
    assert!(res.certified);
    assert!(certify_absolutely_maximal(&res.best_state, cfg.tol).unwrap().absolutely_maximal);
    assert!((res.best_state.norm() - 1.0).abs() < 1e-12);

    let mut cfg = SearchConfig::new(SiteDims::qubits(3).unwrap(), Objective::MaximizeGlobalE);
    cfg.restarts = 2;
    cfg.max_iters = 200;
    let res = maximize(&cfg).unwrap();
    let e = global_entanglement(&res.best_state).unwrap().global_e;
    assert!((res.best_objective - e).abs() < 1e-12);
    for r in &res.restarts {
        assert!(r.trace.windows(2).all(|w| w[1] >= w[0]), "restart {} not monotone", r.index);
    }
}
