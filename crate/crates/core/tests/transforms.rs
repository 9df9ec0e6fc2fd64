mod common;

use arrival_core::repspace::{spectral_derivative, to_momentum, to_position, SpatialGrid, WaveFunction};
use arrival_core::Complex64;
use common::{max_abs_diff, naive_momentum, naive_position, random_amplitudes};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn fft_matches_quadratic_oracle() {
    let g = SpatialGrid::new(64, -5.3, 0.17).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let amp = random_amplitudes(&mut rng, 64);
        let psi = WaveFunction::position(g, amp.clone()).unwrap();
        let phi = to_momentum(&psi).unwrap();
        assert!(max_abs_diff(phi.amplitudes(), &naive_momentum(&g, &amp)) < 1e-10);

        let back = WaveFunction::momentum(g, amp.clone()).unwrap();
        let x = to_position(&back).unwrap();
        assert!(max_abs_diff(x.amplitudes(), &naive_position(&g, &amp)) < 1e-10);
    }
}

#[test]
fn derivative_of_gaussian() {
    let g = SpatialGrid::spanning(512, -20.0, 20.0).unwrap();
    let psi = WaveFunction::from_fn(g, |x| Complex64::new((-x * x / 2.0).exp(), 0.0));
    let d = spectral_derivative(&psi);
    for (j, v) in d.iter().enumerate() {
        let x = g.x(j);
        assert!((v - Complex64::new(-x * (-x * x / 2.0).exp(), 0.0)).norm() < 1e-11);
    }
}

fn arbitrary_state() -> impl Strategy<Value = WaveFunction> {
    (3u32..9, -10.0..10.0f64, 0.01..1.0f64, any::<u64>()).prop_map(|(log_n, x_min, dx, seed)| {
        let n = 1usize << log_n;
        let g = SpatialGrid::new(n, x_min, dx).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        WaveFunction::position(g, random_amplitudes(&mut rng, n))
            .unwrap()
            .normalized()
            .unwrap()
    })
}

proptest! {
    #[test]
    fn transforms_are_unitary(psi in arbitrary_state()) {
        let phi = to_momentum(&psi).unwrap();
        prop_assert!((phi.norm_sqr() - 1.0).abs() < 1e-12);
        let back = to_position(&phi).unwrap();
        prop_assert!(back.distance(&psi).unwrap() < 1e-12);
    }

    #[test]
    fn inner_products_survive(a in arbitrary_state(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = WaveFunction::position(*a.grid(), random_amplitudes(&mut rng, a.grid().n())).unwrap();
        let before = a.inner(&b).unwrap();
        let after = to_momentum(&a).unwrap().inner(&to_momentum(&b).unwrap()).unwrap();
        prop_assert!((before - after).norm() < 1e-12 * (1.0 + before.norm()) * b.norm_sqr().sqrt());
    }
}
