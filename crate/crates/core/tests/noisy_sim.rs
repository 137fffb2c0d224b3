mod common;

use common::*;
use proptest::prelude::*;
use stabci::cws::{build_code, verify_distance, ErrorClass, WordSearch};
use stabci::noise::{
    build_prep_circuit, build_syndrome_circuit, dense_run, dense_run_from, run_trajectories,
    simulate, trajectory_rng, Backend, Circuit, IdealState, NoiseModel, Op, TrajectoryConfig,
};
use stabci::sci::{
    enumerate_excitation_sets, full_sci, replay, OrbitalSpace, SciConfig, SearchResult,
};
use stabci::{PauliString, StabilizerTableau, StateVector};

fn search(name: &str) -> SearchResult<f64> {
    let h = fixture(name);
    let hf = StabilizerTableau::basis_state(&h.hf_bits());
    full_sci(&h, &hf, &SciConfig::default()).unwrap()
}

fn steps(r: &SearchResult<f64>) -> Vec<(PauliString, bool)> {
    r.trace().map(|(e, l)| (e.clone(), l)).collect()
}

fn prep_for(r: &SearchResult<f64>) -> Circuit {
    build_prep_circuit(&r.reference.basis_bits().unwrap(), &steps(r), None).unwrap()
}

fn dense_of(s: &StabilizerTableau) -> StateVector {
    StateVector::from_amplitudes(s.n_qubits(), s.to_statevector().unwrap()).unwrap()
}

fn fidelity(a: &StateVector, b: &StateVector) -> f64 {
    a.inner(b).norm_sqr()
}

fn cfg(n_traj: usize, seed: u64) -> TrajectoryConfig {
    TrajectoryConfig {
        n_traj,
        seed,
        ..TrajectoryConfig::default()
    }
}

fn quiet() -> NoiseModel {
    NoiseModel::new(0.0).unwrap()
}

#[test]
fn h2_prep_reproduces_the_search_state() {
    let r = search("h2_3.00.json");
    let prep = prep_for(&r);
    let want = dense_of(&r.state);
    for forced in [[false], [true]] {
        let out = dense_run(&prep, &mut trajectory_rng(1, 0), Some(&forced)).unwrap();
        assert!(
            (fidelity(&want, &out.state) - 1.0).abs() < 1e-12,
            "{forced:?}"
        );
    }
    let ideal = IdealState::Stabilizer(r.state.clone());
    for backend in [Backend::Frame, Backend::Dense] {
        let c = TrajectoryConfig {
            backend,
            ..cfg(50, 3)
        };
        let rep = run_trajectories(&prep, None, &quiet(), &ideal, &c).unwrap();
        assert_eq!(rep.n_kept, 50);
        assert!((rep.mean_overlap - 1.0).abs() < 1e-12);
    }
}

#[test]
fn every_enumerated_set_prepares_its_state() {
    let space = OrbitalSpace::from_counts(4, 4).unwrap();
    let reference = space.reference_bits();
    let hf = StabilizerTableau::basis_state(&reference);
    for set in enumerate_excitation_sets(4, 4, None)
        .unwrap()
        .step_by(7)
        .take(60)
    {
        let target = replay(&hf, &set).unwrap();
        let st: Vec<(PauliString, bool)> = set.steps().map(|(e, l)| (e.clone(), l)).collect();
        let prep = build_prep_circuit(&reference, &st, None).unwrap();
        let mut rng = trajectory_rng(11, 0);
        let out = dense_run(&prep, &mut rng, None).unwrap();
        assert!((fidelity(&dense_of(&target), &out.state) - 1.0).abs() < 1e-10);
    }
}

#[test]
fn quarter_turn_matches_the_unbiased_circuit() {
    let r = search("h4_3.00.json");
    let reference = r.reference.basis_bits().unwrap();
    let plain = build_prep_circuit(&reference, &steps(&r), None).unwrap();
    let turned =
        build_prep_circuit(&reference, &steps(&r), Some(std::f64::consts::FRAC_PI_2)).unwrap();
    assert!(turned.has_rotations());
    let a = dense_run(&plain, &mut trajectory_rng(0, 0), None)
        .unwrap()
        .state;
    let b = dense_run(&turned, &mut trajectory_rng(0, 1), None)
        .unwrap()
        .state;
    assert!((fidelity(&a, &b) - 1.0).abs() < 1e-12);
}

#[test]
fn generalized_h4_superposition_amplitudes() {
    let n = 8;
    let theta = 2.0 * 0.5879f64.atan2(0.3928);
    let st = vec![(p("X1X2X3X4X5X6X7X8", n), false), (p("X3X4X7X8", n), true)];
    let prep = build_prep_circuit(&bits("11110000"), &st, Some(theta)).unwrap();
    for forced in [[false, false], [true, true], [false, true]] {
        let out = dense_run(&prep, &mut trajectory_rng(0, 0), Some(&forced)).unwrap();
        let amps = out.state.amplitudes();
        let phase = amps[0b1111_0000] / amps[0b1111_0000].norm();
        for (b, want) in [
            (0b1111_0000, 0.3928),
            (0b1100_0011, -0.5879),
            (0b0011_1100, -0.5879),
            (0b0000_1111, 0.3928),
        ] {
            let got = amps[b] / phase;
            assert!(
                (got.re - want).abs() < 1e-4 && got.im.abs() < 1e-12,
                "{b:08b}: {got}"
            );
        }
        assert!(out.state.norm_sqr() > 1.0 - 1e-12);
    }
}

#[test]
fn syndromes_are_quiet_on_the_codespace() {
    for name in ["h2_3.00.json", "h4_3.00.json"] {
        let r = search(name);
        let code = build_code(&r.state, &WordSearch::default()).unwrap().code;
        let syn = build_syndrome_circuit(&code).unwrap();
        assert_eq!(syn.n_ancilla(), code.n_qubits() - 1);
        let ideal = IdealState::Stabilizer(r.state.clone());
        for backend in [Backend::Frame, Backend::Dense] {
            let c = TrajectoryConfig {
                backend,
                ..cfg(20, 5)
            };
            let rep = run_trajectories(&prep_for(&r), Some(&syn), &quiet(), &ideal, &c).unwrap();
            assert_eq!(rep.discard_rate, 0.0, "{name}");
            assert!((rep.mean_overlap - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn every_single_qubit_error_on_h4_is_caught() {
    let r = search("h4_3.00.json");
    let built = build_code(&r.state, &WordSearch::default()).unwrap();
    let syn = build_syndrome_circuit(&built.code).unwrap();
    let ideal = IdealState::Stabilizer(r.state.clone());
    let report = verify_distance(&built.code);
    for (e, class) in &report.entries {
        let mut prep = prep_for(&r);
        prep.push(Op::Pauli(e.clone())).unwrap();
        let rep = run_trajectories(&prep, Some(&syn), &quiet(), &ideal, &cfg(4, 0)).unwrap();
        match class {
            ErrorClass::Detectable => assert_eq!(rep.n_kept, 0, "{e}"),
            ErrorClass::Trivial => assert_eq!((rep.n_kept, rep.mean_overlap), (4, 1.0), "{e}"),
            ErrorClass::Undetectable => panic!("{e} is undetectable"),
        }
    }
    for g in built.code.generators() {
        let mut prep = prep_for(&r);
        prep.push(Op::Pauli(g.clone())).unwrap();
        let rep = run_trajectories(&prep, Some(&syn), &quiet(), &ideal, &cfg(4, 0)).unwrap();
        assert_eq!((rep.n_kept, rep.mean_overlap), (4, 1.0), "{g}");
    }
}

#[test]
fn reports_depend_only_on_the_seed() {
    let r = search("h4_3.00.json");
    let code = build_code(&r.state, &WordSearch::default()).unwrap().code;
    let syn = build_syndrome_circuit(&code).unwrap();
    let ideal = IdealState::Stabilizer(r.state.clone());
    let noise = NoiseModel::new(0.05).unwrap();
    let run = |jobs, seed| {
        let c = TrajectoryConfig {
            jobs: Some(jobs),
            ..cfg(300, seed)
        };
        run_trajectories(&prep_for(&r), Some(&syn), &noise, &ideal, &c).unwrap()
    };
    assert_eq!(run(1, 9), run(4, 9));
    assert_ne!(run(2, 9), run(2, 10));
}

#[test]
fn frame_and_dense_paths_agree() {
    let noise = NoiseModel::new(0.05).unwrap();
    for name in ["h2_3.00.json", "h4_3.00.json"] {
        let r = search(name);
        let code = build_code(&r.state, &WordSearch::default()).unwrap().code;
        let syn = build_syndrome_circuit(&code).unwrap();
        let ideal = IdealState::Stabilizer(r.state.clone());
        for s in [None, Some(&syn)] {
            let go = |backend| {
                let c = TrajectoryConfig {
                    backend,
                    ..cfg(1500, 21)
                };
                run_trajectories(&prep_for(&r), s, &noise, &ideal, &c).unwrap()
            };
            let (f, d) = (go(Backend::Frame), go(Backend::Dense));
            let sigma = (f.stderr.powi(2) + d.stderr.powi(2)).sqrt().max(1e-3);
            assert!(
                (f.mean_overlap - d.mean_overlap).abs() <= 3.0 * sigma,
                "{name}: {f:?} {d:?}"
            );
            let pd = (f.discard_rate * (1.0 - f.discard_rate) / 1500.0)
                .sqrt()
                .max(1e-3);
            assert!(
                (f.discard_rate - d.discard_rate).abs() <= 3.0 * 2f64.sqrt() * pd,
                "{name}"
            );
        }
    }
}

#[test]
fn unprotected_overlap_falls_with_noise() {
    let r = search("h4_3.00.json");
    let ideal = IdealState::Stabilizer(r.state.clone());
    let prep = prep_for(&r);
    let reports: Vec<_> = [0.001, 0.005, 0.01, 0.02, 0.05]
        .iter()
        .map(|&p| {
            run_trajectories(
                &prep,
                None,
                &NoiseModel::new(p).unwrap(),
                &ideal,
                &cfg(1000, 4),
            )
            .unwrap()
        })
        .collect();
    for w in reports.windows(2) {
        let slack = 3.0 * (w[0].stderr.powi(2) + w[1].stderr.powi(2)).sqrt();
        assert!(w[1].mean_overlap <= w[0].mean_overlap + slack);
        assert_eq!(w[0].discard_rate, 0.0);
    }
    assert!(reports[4].mean_overlap < reports[0].mean_overlap);
}

#[test]
fn dense_width_is_capped() {
    let n = 17;
    let mut c = Circuit::new(n);
    let a = c.add_ancilla();
    c.push(Op::H(a)).unwrap();
    c.measure(a, None).unwrap();
    let ideal = IdealState::Stabilizer(StabilizerTableau::zero_state(n));
    let dense = TrajectoryConfig {
        backend: Backend::Dense,
        ..cfg(1, 0)
    };
    let err = simulate(&c, &ideal, &dense).unwrap_err();
    assert_eq!(err.kind(), stabci::ErrorKind::Resource);
    // the frame path has no such limit
    assert_eq!(simulate(&c, &ideal, &cfg(3, 0)).unwrap().n_kept, 3);
}

#[test]
fn malformed_circuits_are_rejected() {
    let mut c = Circuit::new(2);
    assert!(c.push(Op::H(2)).is_err());
    let a = c.add_ancilla();
    assert!(c
        .push(Op::Conditional {
            key: 0,
            when: true,
            pauli: p("X1", 2)
        })
        .is_err());
    assert!(c.push(Op::Measure { qubit: a, key: 3 }).is_err());
    assert!(c
        .push(Op::Cnot {
            control: a,
            target: a
        })
        .is_err());
    assert!(c.push(Op::Depolarize { qubit: 0, p: 1.5 }).is_err());
    c.push(Op::H(a)).unwrap();
    assert!(c.validate().is_err());
    c.measure(a, Some(false)).unwrap();
    c.validate().unwrap();
    c.push(Op::H(a)).unwrap();
    assert!(c.validate().is_err());
    assert!(NoiseModel::new(-0.1).is_err());
    assert_eq!(NoiseModel::new(0.02).unwrap().p_bitflip, 0.01);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Each ancilla of the syndrome circuit reads the generator's sign,
    /// flipped exactly when the error anticommutes with it. Random codes
    /// cover generators with Y factors.
    #[test]
    fn syndrome_ancillas_read_commutation(s in arb_state_n(5, 30), err in arb_pauli(5)) {
        if let Ok(built) = build_code(&s, &WordSearch::default()) {
            let syn = build_syndrome_circuit(&built.code).unwrap();
            let mut start = dense_of(&s);
            start.apply_pauli(&err);
            let out = dense_run_from(&syn, start, &mut trajectory_rng(0, 0), None).unwrap();
            for (k, g) in built.code.generators().iter().enumerate() {
                prop_assert_eq!(out.record[k], g.is_negative() != g.anticommutes_with(&err), "{} vs {}", g, err);
            }
        }
    }
}
