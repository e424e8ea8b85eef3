//! Property tests over seeded random fields: transform and projector
//! invariants that must hold for any input.

use gvlc_core::dyadic::DyadicDecomposition;
use gvlc_core::halfline::half_line_project;
use gvlc_core::norms::{besov_norm, lp_norm, BesovIndex};
use gvlc_core::ops::{divergence_sup, leray_project};
use gvlc_core::transform::{forward_transform, inverse_transform_real};
use gvlc_core::{GridSpec, SpectralField};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn random_scalar(spec: GridSpec, seed: u64) -> SpectralField {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let phys: Vec<f64> = (0..spec.points()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let mut f = forward_transform(&phys, spec).unwrap();
    f.dealias_in_place();
    f.zero_mean();
    f
}

fn random_vector(spec: GridSpec, seed: u64) -> SpectralField {
    let parts: Vec<SpectralField> =
        (0..spec.dim).map(|c| random_scalar(spec, seed.wrapping_add(c as u64))).collect();
    SpectralField::from_components(&parts)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn round_trip_is_identity(seed in any::<u64>(), dim in 1usize..=3) {
        let spec = GridSpec::torus(dim, 16).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let phys: Vec<f64> = (0..spec.points()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let f = forward_transform(&phys, spec).unwrap();
        let back = inverse_transform_real(&f);
        let err = phys.iter().zip(&back).map(|(a, b)| (a - b).abs()).fold(0.0f64, f64::max);
        prop_assert!(err <= 1e-12);
    }

    #[test]
    fn parseval_identity(seed in any::<u64>()) {
        let spec = GridSpec::torus(3, 16).unwrap();
        let f = random_scalar(spec, seed);
        let grid = lp_norm(&f, 2.0);
        let coeff = (f.coeffs().iter().map(|z| z.norm_sqr()).sum::<f64>()
            * spec.box_length.powi(3)).sqrt();
        prop_assert!((grid - coeff).abs() <= 1e-12 * coeff.max(1e-12));
    }

    #[test]
    fn norms_absolutely_homogeneous(seed in any::<u64>(), lam in -4.0f64..4.0) {
        prop_assume!(lam.abs() > 1e-3);
        let spec = GridSpec::torus(3, 16).unwrap();
        let dec = DyadicDecomposition::build_cutoffs(spec).unwrap();
        let f = random_scalar(spec, seed);
        let idx = BesovIndex::new(0.5, 2.0, 1.0);
        let a = besov_norm(&f.scaled(lam), idx, &dec);
        let b = besov_norm(&f, idx, &dec) * lam.abs();
        prop_assert!((a - b).abs() <= 1e-11 * b.max(1e-12));
    }

    #[test]
    fn leray_is_an_idempotent_divergence_annihilator(seed in any::<u64>()) {
        let spec = GridSpec::torus(3, 16).unwrap();
        let u = random_vector(spec, seed);
        let pu = leray_project(&u).unwrap();
        prop_assert!(divergence_sup(&pu).unwrap() <= 1e-13);
        let ppu = leray_project(&pu).unwrap();
        prop_assert!(ppu.sub(&pu).max_coeff_abs() <= 1e-13);
        let e = |f: &SpectralField| f.coeffs().iter().map(|z| z.norm_sqr()).sum::<f64>();
        prop_assert!(e(&pu) <= e(&u) * (1.0 + 1e-14));
    }

    #[test]
    fn half_line_partition(seed in any::<u64>(), axis in 0usize..3) {
        let spec = GridSpec::torus(3, 16).unwrap();
        let f = random_scalar(spec, seed);
        let sum = half_line_project(&f, axis, 1).add(&half_line_project(&f, axis, -1));
        prop_assert!(sum.sub(&f).max_coeff_abs() <= 1e-13 * f.max_coeff_abs().max(1e-12));
    }

    #[test]
    fn blocks_reconstruct(seed in any::<u64>()) {
        let spec = GridSpec::torus(3, 16).unwrap();
        let dec = DyadicDecomposition::build_cutoffs(spec).unwrap();
        let f = random_scalar(spec, seed);
        let mut sum = SpectralField::zeros(spec, 1);
        for (_, b) in dec.block_series(&f) {
            sum.add_assign_scaled(&b, 1.0);
        }
        prop_assert!(sum.sub(&f).max_coeff_abs() <= 1e-12 * f.max_coeff_abs().max(1e-12));
    }

    #[test]
    fn dealias_is_idempotent(seed in any::<u64>()) {
        let spec = GridSpec::torus(2, 16).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let phys: Vec<f64> = (0..spec.points()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let f = forward_transform(&phys, spec).unwrap();
        let once = f.dealias();
        let twice = once.dealias();
        prop_assert_eq!(once.coeffs(), twice.coeffs());
    }

    #[test]
    fn snapshot_round_trip(seed in any::<u64>(), dim in 1usize..=3, comps in 1usize..=3) {
        let spec = GridSpec::torus(dim, 8).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let phys: Vec<gvlc_core::Complex64> = (0..comps * spec.points())
            .map(|_| gvlc_core::Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let f = gvlc_core::transform::forward_transform_complex(&phys, spec, comps).unwrap();
        let mut bytes = Vec::new();
        gvlc_core::snapshot::write_snapshot(&mut bytes, &f).unwrap();
        let g = gvlc_core::snapshot::read_snapshot(&mut bytes.as_slice()).unwrap();
        prop_assert_eq!(f.coeffs(), g.coeffs());
    }
}
