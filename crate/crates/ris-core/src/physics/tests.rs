use super::*;
use crate::config::RisConfiguration;
use crate::rng::seeded_rng;
use crate::scenario::{build_environment, Scenario, BUILTIN_TINY_N4};
use rand::Rng;

pub(crate) fn tiny_env() -> Environment {
    build_environment(&Scenario::builtin(BUILTIN_TINY_N4).unwrap()).unwrap()
}

fn random_config(n: usize, rng: &mut impl Rng) -> RisConfiguration {
    RisConfiguration::new((0..n).map(|_| rng.gen_range(0..=1u8)).collect()).unwrap()
}

#[test]
fn interaction_matrix_is_symmetric() {
    let env = tiny_env();
    let mut rng = seeded_rng(21);
    for _ in 0..5 {
        let config = random_config(env.n_ris(), &mut rng);
        let state = PerturberState::new(rng.gen::<f64>() * TAU);
        let f = 0.95 + 0.1 * rng.gen::<f64>();
        let m = interaction_matrix(&env, &config, state, f).unwrap();
        assert!(m.asymmetry() < 1e-12, "asymmetry {}", m.asymmetry());
    }
}

#[test]
fn one_bit_flip_changes_only_that_diagonal_entry() {
    let env = tiny_env();
    let state = PerturberState::new(1.0);
    let f = 1.0;
    let a = interaction_matrix(&env, &RisConfiguration::new(vec![0, 0, 0, 0]).unwrap(), state, f).unwrap();
    let b = interaction_matrix(&env, &RisConfiguration::new(vec![0, 0, 1, 0]).unwrap(), state, f).unwrap();
    let flipped = env.ris_index(2);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let diff = (a.get(i, j) - b.get(i, j)).norm();
            if i == flipped && j == flipped {
                assert!(diff > 1e-9, "flipped diagonal entry did not change");
            } else {
                assert_eq!(diff, 0.0, "entry ({i},{j}) changed");
            }
        }
    }
}

#[test]
fn rotation_is_periodic() {
    let env = tiny_env();
    let config = RisConfiguration::new(vec![1, 0, 1, 0]).unwrap();
    let theta = 0.7;
    let a = interaction_matrix(&env, &config, PerturberState::new(theta), 1.0).unwrap();
    let b = interaction_matrix(&env, &config, PerturberState::new(theta + TAU), 1.0).unwrap();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let denom = a.get(i, j).norm().max(1e-30);
            assert!(
                (a.get(i, j) - b.get(i, j)).norm() / denom < 1e-12,
                "entry ({i},{j}) differs across a full turn"
            );
        }
    }
}

#[test]
fn rejects_nonpositive_frequency() {
    let env = tiny_env();
    let config = RisConfiguration::zeros(4);
    let state = PerturberState::new(0.0);
    assert!(interaction_matrix(&env, &config, state, 0.0).is_err());
    assert!(interaction_matrix(&env, &config, state, -1.0).is_err());
}

#[test]
fn rejects_wrong_config_length() {
    let env = tiny_env();
    let state = PerturberState::new(0.0);
    assert!(interaction_matrix(&env, &RisConfiguration::zeros(3), state, 1.0).is_err());
    assert!(channel_response(&env, &RisConfiguration::zeros(5), state).is_err());
}

#[test]
fn channel_response_is_deterministic() {
    let env = tiny_env();
    let config = RisConfiguration::new(vec![1, 1, 0, 1]).unwrap();
    let state = PerturberState::new(2.13);
    let a = channel_response(&env, &config, state).unwrap();
    let b = channel_response(&env, &config, state).unwrap();
    assert_eq!(a, b);
}

#[test]
fn static_environment_ignores_orientation() {
    let env = tiny_env().without_perturber();
    let config = RisConfiguration::new(vec![0, 1, 0, 1]).unwrap();
    let a = channel_response(&env, &config, PerturberState::new(0.3)).unwrap();
    let b = channel_response(&env, &config, PerturberState::new(4.9)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn flipping_all_bits_moves_the_channel() {
    let env = tiny_env();
    let state = PerturberState::new(0.9);
    let zeros = RisConfiguration::zeros(4);
    let ones = zeros.complement();
    let a = channel_response(&env, &zeros, state).unwrap();
    let b = channel_response(&env, &ones, state).unwrap();
    let max_rel = a
        .squared_magnitudes()
        .iter()
        .zip(b.squared_magnitudes())
        .map(|(&x, y)| (x - y).abs() / x.max(y).max(1e-300))
        .fold(0.0f64, f64::max);
    assert!(max_rel > 1e-6, "RIS state barely affects the channel: {max_rel:.3e}");
}

#[test]
fn fast_path_matches_dense_path() {
    let env = tiny_env();
    let mut rng = seeded_rng(7);
    for _ in 0..4 {
        let state = PerturberState::new(rng.gen::<f64>() * TAU);
        let base = AngleFactorization::new(&env, state).unwrap();
        for _ in 0..8 {
            let config = random_config(env.n_ris(), &mut rng);
            let dense = channel_response(&env, &config, state).unwrap();
            let fast = channel_response_fast(&base, &config).unwrap();
            for (d, f) in dense.response().iter().zip(fast.response()) {
                assert!((d - f).norm() / d.norm().max(1e-300) < 1e-10);
            }
        }
    }
}

#[test]
fn fast_path_rejects_wrong_config_length() {
    let env = tiny_env();
    let base = AngleFactorization::new(&env, PerturberState::new(0.0)).unwrap();
    assert!(channel_response_fast(&base, &RisConfiguration::zeros(5)).is_err());
}

#[test]
fn config_solver_matches_dense_path() {
    let env = tiny_env();
    let mut rng = seeded_rng(13);
    for _ in 0..4 {
        let config = random_config(env.n_ris(), &mut rng);
        let solver = ConfigSolver::new(&env, &config).unwrap();
        for _ in 0..6 {
            let state = PerturberState::new(rng.gen::<f64>() * TAU);
            let dense = channel_response(&env, &config, state).unwrap();
            let bordered = solver.response(state).unwrap();
            for (d, f) in dense.response().iter().zip(bordered.response()) {
                assert!((d - f).norm() / d.norm().max(1e-300) < 1e-10);
            }
        }
    }
}

#[test]
fn config_solver_handles_empty_perturber() {
    let env = tiny_env().without_perturber();
    let config = RisConfiguration::new(vec![1, 0, 0, 1]).unwrap();
    let solver = ConfigSolver::new(&env, &config).unwrap();
    let a = solver.response(PerturberState::new(0.1)).unwrap();
    let b = solver.response(PerturberState::new(3.3)).unwrap();
    assert_eq!(a, b);
    let dense = channel_response(&env, &config, PerturberState::new(0.1)).unwrap();
    for (d, f) in dense.response().iter().zip(a.response()) {
        assert!((d - f).norm() / d.norm().max(1e-300) < 1e-10);
    }
}

#[test]
fn sample_moments_basics() {
    let env = tiny_env();
    let config = RisConfiguration::new(vec![1, 0, 1, 0]).unwrap();
    let mut rng = seeded_rng(3);
    let m = sample_moments(&env, &config, 50, &mut rng).unwrap();
    assert_eq!(m.len(), env.bins());
    assert!(m.values().iter().all(|&x| x > 0.0));

    let mut rng2 = seeded_rng(3);
    let m2 = sample_moments(&env, &config, 50, &mut rng2).unwrap();
    assert_eq!(m, m2);
}

#[test]
fn static_moments_equal_single_realization() {
    let env = tiny_env().without_perturber();
    let config = RisConfiguration::new(vec![0, 1, 1, 0]).unwrap();
    let mut rng = seeded_rng(9);
    let m = sample_moments(&env, &config, 17, &mut rng).unwrap();
    let single = channel_response(&env, &config, PerturberState::new(0.0)).unwrap();
    for (a, b) in m.values().iter().zip(single.squared_magnitudes()) {
        assert!((a - b).abs() <= 1e-15 * b.abs().max(1.0), "{a} vs {b}");
    }
}

#[test]
fn moment_estimates_converge() {
    let env = tiny_env();
    let config = RisConfiguration::new(vec![1, 1, 0, 0]).unwrap();
    let solver = ConfigSolver::new(&env, &config).unwrap();

    // Mean and standard error per bin at 10_000 angles, vs the mean at 100.
    let mut rng = seeded_rng(31);
    let n_big = 10_000;
    let bins = env.bins();
    let mut sums = vec![0.0; bins];
    let mut sq_sums = vec![0.0; bins];
    for _ in 0..n_big {
        let state = PerturberState::new(rng.gen::<f64>() * TAU);
        let sample = solver.response(state).unwrap();
        for (bin, h) in sample.response().iter().enumerate() {
            let x = h.norm_sqr();
            sums[bin] += x;
            sq_sums[bin] += x * x;
        }
    }

    let mut rng_small = seeded_rng(77);
    let small = sample_moments(&env, &config, 100, &mut rng_small).unwrap();

    for bin in 0..bins {
        let mean_big = sums[bin] / n_big as f64;
        let var = (sq_sums[bin] / n_big as f64 - mean_big * mean_big).max(0.0);
        // Standard error of the 100-angle mean.
        let se_small = (var / 100.0).sqrt();
        let diff = (small.values()[bin] - mean_big).abs();
        assert!(
            diff <= 5.0 * se_small + 1e-12,
            "bin {bin}: |{} - {}| > 5·{}",
            small.values()[bin],
            mean_big,
            se_small
        );
    }
}

#[test]
fn perturber_state_wraps_into_range() {
    assert!((PerturberState::new(-1.0).angle() - (TAU - 1.0)).abs() < 1e-12);
    assert!(PerturberState::new(TAU).angle().abs() < 1e-12);
    let s = PerturberState::new(1.5);
    assert_eq!(s.angle(), 1.5);
}
