//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stabci::cws::{
    build_code, codespace_contains, verify_distance, CodeConstruction, ErrorClass, StabilizerCode,
    WordSearch,
};
use stabci::hamiltonian::{brute_force_ground, energy_stabilizer, MoleculeMeta, QubitHamiltonian};
use stabci::noise::{
    build_prep_circuit, build_syndrome_circuit, dense_run, prep_for_result, run_trajectories,
    sweep, trajectory_rng, IdealState, NoiseModel, Op, Protection, TrajectoryConfig,
};
use stabci::sci::{adaptive_sci, full_sci, generalized_refine, SciConfig, SearchResult};
use stabci::{
    sum_stabilizers, CliffordCircuit, CliffordGate, Hamiltonian, PauliGroup, PauliString,
    StabilizerTableau,
};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn hf_of(h: &Hamiltonian) -> StabilizerTableau {
    StabilizerTableau::basis_state(&h.hf_bits())
}

fn search(h: &Hamiltonian) -> SearchResult<f64> {
    full_sci(h, &hf_of(h), &SciConfig::default()).unwrap()
}

fn code_of(state: &StabilizerTableau) -> CodeConstruction {
    build_code(state, &WordSearch::default()).unwrap()
}

fn group(list: &[&str], n: usize) -> PauliGroup {
    let gens: Vec<PauliString> = list.iter().map(|s| p(s, n)).collect();
    PauliGroup::from_generators(n, &gens).unwrap()
}

fn equivalent(code: &StabilizerCode, a: &PauliString, b: &PauliString) -> bool {
    code.group().membership(&a.multiply(b).unwrap()).is_some()
}

/// Logical pair equal to `(x, z)` modulo stabilizers, in either role.
fn logicals_match(code: &StabilizerCode, x: &str, z: &str) -> bool {
    let n = code.n_qubits();
    let (x, z) = (p(x, n), p(z, n));
    let direct = equivalent(code, &code.logical_x, &x) && equivalent(code, &code.logical_z, &z);
    let swapped = equivalent(code, &code.logical_x, &z) && equivalent(code, &code.logical_z, &x);
    direct || swapped
}

fn golden_codes() -> Outcome {
    let t = Instant::now();
    let h2 = code_of(&search(&fixture("h2_3.00.json")).state).code;
    ensure!(
        h2.group() == group(&["-Z1Z3", "-Z2Z4", "-X1X2X3X4"], 4),
        "H2 group {:?}",
        h2.generators()
    );
    ensure!(
        logicals_match(&h2, "-X1X3", "Z3Z4"),
        "H2 logicals {} {}",
        h2.logical_x,
        h2.logical_z
    );

    let h4 = code_of(&search(&fixture("h4_3.00.json")).state).code;
    let want = group(
        &[
            "-Z1Z6",
            "-Z2Z6",
            "-Z3Z8",
            "-Z4Z8",
            "Z5Z6",
            "Z7Z8",
            "X1X2X3X4X5X6X7X8",
        ],
        8,
    );
    ensure!(h4.group() == want, "H4 group {:?}", h4.generators());
    ensure!(
        logicals_match(&h4, "Z6Z8", "-X1X2X5X6"),
        "H4 logicals {} {}",
        h4.logical_x,
        h4.logical_z
    );
    let dt = t.elapsed();
    ensure!(dt < Duration::from_secs(1), "took {dt:?}");
    Ok("H2 [[4,1]] and H4 [[8,1]] groups equal".into())
}

fn amplitudes_equal(s: &StabilizerTableau, want: &[(&str, f64)]) -> Result<(), String> {
    let a = s.amplitudes::<f64>().map_err(|e| e.to_string())?;
    ensure!(
        a.len() == want.len(),
        "support {} vs {}",
        a.len(),
        want.len()
    );
    for (b, v) in want {
        let got = a.get(b).ok_or_else(|| format!("{b} missing"))?;
        ensure!(
            (got.re - v).abs() < 1e-15 && got.im == 0.0,
            "{b}: {got} vs {v}"
        );
    }
    Ok(())
}

fn golden_states() -> Outcome {
    let t = Instant::now();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    // (|1100⟩ - |0011⟩)/√2, gauge puts 0011 positive
    amplitudes_equal(
        &search(&fixture("h2_3.00.json")).state,
        &[("0011", s), ("1100", -s)],
    )?;
    amplitudes_equal(
        &search(&fixture("h4_3.00.json")).state,
        &[
            ("00001111", 0.5),
            ("00111100", -0.5),
            ("11000011", -0.5),
            ("11110000", 0.5),
        ],
    )?;
    let dt = t.elapsed();
    ensure!(dt < Duration::from_secs(60), "took {dt:?}");
    Ok("H2 two-term and H4 four-term states exact".into())
}

struct Energies {
    name: String,
    hf: f64,
    stab: f64,
    gen: f64,
    fci: f64,
}

fn fixture_energies() -> Vec<Energies> {
    all_fixtures()
        .into_iter()
        .map(|(name, h)| {
            let r = search(&h);
            let g = generalized_refine(&h, &r).unwrap();
            Energies {
                name,
                hf: energy_stabilizer(&h, &hf_of(&h)).unwrap(),
                stab: r.energy,
                gen: g.energy,
                fci: brute_force_ground(&h).unwrap().energy,
            }
        })
        .collect()
}

fn sandwich(rows: &[Energies]) -> Outcome {
    let slack = 1e-9;
    for e in rows {
        ensure!(
            e.fci <= e.gen + slack && e.gen <= e.stab + slack && e.stab <= e.hf + slack,
            "{}: FCI {} gen {} stab {} HF {}",
            e.name,
            e.fci,
            e.gen,
            e.stab,
            e.hf
        );
    }
    Ok(format!("{} fixtures", rows.len()))
}

fn h2_generalized_accuracy(rows: &[Energies]) -> Outcome {
    let mut worst = 0.0f64;
    let mut count = 0;
    for e in rows.iter().filter(|e| e.name.starts_with("h2_")) {
        let err = (e.gen - e.fci).abs();
        ensure!(err < 1e-3, "{}: |E_gen - E_FCI| = {err:.3e}", e.name);
        worst = worst.max(err);
        count += 1;
    }
    ensure!(count > 0, "no H2 fixtures");
    Ok(format!("{count} bond lengths, worst {worst:.2e} Ha"))
}

fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn arb_hamiltonian(n: usize) -> impl Strategy<Value = Hamiltonian> {
    prop::collection::vec((-1.0f64..1.0, arb_pauli(n)), 0..12).prop_map(move |ts| {
        QubitHamiltonian::new(
            n,
            ts.into_iter()
                .map(|(c, q)| (c, q.unsigned().with_sign(false)))
                .filter(|(_, q)| q.is_hermitian()),
            MoleculeMeta::synthetic(n, 0),
        )
        .unwrap()
    })
}

fn arb_excitation_run(
    max_n: usize,
) -> impl Strategy<Value = (Vec<bool>, Vec<(PauliString, bool)>)> {
    (2..=max_n).prop_flat_map(|n| {
        (
            prop::collection::vec(any::<bool>(), n),
            prop::collection::vec((arb_hermitian(n), any::<bool>()), 1..5),
        )
    })
}

fn oracle_equivalence() -> Outcome {
    let strategy = (1usize..=8).prop_flat_map(|n| (arb_state_n(n, 24), arb_hermitian(n)));
    runner(1000)
        .run(&strategy, |(s, q)| {
            let want = oracle_expectation(&oracle_state(&s), &q);
            let got = s.expectation(&q).unwrap();
            prop_assert!(
                want.im.abs() < 1e-9 && (want.re - got as f64).abs() < 1e-9,
                "{} on {:?}",
                q,
                s.generators()
            );
            Ok(())
        })
        .map_err(|e| format!("expectation: {e}"))?;

    let strategy = (1usize..=8).prop_flat_map(|n| (arb_hamiltonian(n), arb_state_n(n, 20)));
    runner(1000)
        .run(&strategy, |(h, s)| {
            let v = oracle_state(&s);
            let dense = inner(&v, &matvec(&hamiltonian_matrix(&h), &v)).re;
            prop_assert!((energy_stabilizer(&h, &s).unwrap() - dense).abs() < 1e-10);
            Ok(())
        })
        .map_err(|e| format!("energy: {e}"))?;

    runner(200)
        .run(&arb_excitation_run(10), |(b, run)| {
            let n = b.len();
            let mut state = StabilizerTableau::basis_state(&b);
            let mut c = CliffordCircuit::new(n);
            let xs: Vec<usize> = (0..n).filter(|&q| b[q]).collect();
            if !xs.is_empty() {
                c.push(CliffordGate::Pauli(PauliString::x_on(n, xs)))
                    .unwrap();
            }
            for (e, l) in run {
                if state.expectation(&e).unwrap() != 0 {
                    prop_assert!(
                        state.project_excitation(&e, l).is_err()
                            && sum_stabilizers(&c, &e, l).is_err()
                    );
                    continue;
                }
                let next = state.project_excitation(&e, l).unwrap();
                let (gens, c_next) = sum_stabilizers(&c, &e, l).unwrap();
                prop_assert_eq!(
                    &PauliGroup::from_generators(n, &gens).unwrap(),
                    next.group()
                );
                state = next;
                c = c_next;
            }
            Ok(())
        })
        .map_err(|e| format!("sum rule: {e}"))?;
    Ok("1000 expectation, 1000 energy, 200 projection sequences".into())
}

fn distance_two() -> Outcome {
    let t = Instant::now();
    let mut codes = 0;
    let mut swept = 0;
    for (name, h) in all_fixtures() {
        let r = search(&h);
        if r.excitations.is_empty() {
            continue;
        }
        let built = code_of(&r.state);
        let report = verify_distance(&built.code);
        ensure!(report.passes(), "{name}: undetectable single-qubit errors");
        codes += 1;

        let syn = build_syndrome_circuit(&built.code).unwrap();
        let ideal = IdealState::Stabilizer(r.state.clone());
        let quiet = NoiseModel::new(0.0).unwrap();
        let cfg = TrajectoryConfig {
            n_traj: 2,
            ..TrajectoryConfig::default()
        };
        let mut injected: Vec<(PauliString, ErrorClass)> = report.entries.clone();
        injected.extend(
            built
                .code
                .generators()
                .iter()
                .map(|g| (g.clone(), ErrorClass::Trivial)),
        );
        for (e, class) in injected {
            let mut prep = prep_for_result(&r).unwrap();
            prep.push(Op::Pauli(e.clone())).unwrap();
            let rep = run_trajectories(&prep, Some(&syn), &quiet, &ideal, &cfg).unwrap();
            match class {
                ErrorClass::Detectable => ensure!(rep.n_kept == 0, "{name}: {e} not discarded"),
                ErrorClass::Trivial => {
                    ensure!(
                        rep.n_kept == 2 && rep.mean_overlap == 1.0,
                        "{name}: {e} kept {} overlap {}",
                        rep.n_kept,
                        rep.mean_overlap
                    )
                }
                ErrorClass::Undetectable => return Err(format!("{name}: {e} undetectable")),
            }
            swept += 1;
        }
    }

    let s = std::f64::consts::FRAC_1_SQRT_2;
    let larger: [&[(&str, f64)]; 2] = [
        &[("11111100000000", s), ("11110011000000", -s)],
        &[
            ("1111111111111100000000000000", 0.5),
            ("1111111111110011000000000000", -0.5),
            ("1111111111001100110000000000", -0.5),
            ("1111111111000011110000000000", 0.5),
        ],
    ];
    for listing in larger {
        let state = state_from_listing(listing);
        let built = code_of(&state);
        ensure!(
            verify_distance(&built.code).passes(),
            "{}-qubit listing",
            state.n_qubits()
        );
        ensure!(
            codespace_contains(&built.code, &state).unwrap(),
            "listing state outside its code"
        );
        codes += 1;
    }
    let dt = t.elapsed();
    ensure!(dt < Duration::from_secs(60), "took {dt:?}");
    Ok(format!("{codes} codes, {swept} injected errors"))
}

fn noise_reproduction() -> Outcome {
    let r = search(&fixture("h4_3.00.json"));
    let code = code_of(&r.state).code;
    let prep = prep_for_result(&r).unwrap();
    let syn = build_syndrome_circuit(&code).unwrap();
    let ideal = IdealState::Stabilizer(r.state.clone());
    let cfg = TrajectoryConfig {
        n_traj: 1000,
        ..TrajectoryConfig::default()
    };

    let point = run_trajectories(
        &prep,
        Some(&syn),
        &NoiseModel::with_bitflip(0.01, 0.005).unwrap(),
        &ideal,
        &cfg,
    )
    .unwrap();
    let sigma = (0.2f64 * 0.8 / cfg.n_traj as f64).sqrt();
    ensure!(
        point.mean_overlap >= 0.95,
        "overlap {:.4} at p = 0.01",
        point.mean_overlap
    );
    ensure!(
        point.discard_rate <= 0.20 + 3.0 * sigma,
        "discard {:.4} at p = 0.01",
        point.discard_rate
    );

    let noises: Vec<NoiseModel> = [0.001, 0.005, 0.01, 0.02, 0.05]
        .iter()
        .map(|&p| NoiseModel::new(p).unwrap())
        .collect();
    let rows = sweep(
        &prep,
        &syn,
        &ideal,
        &noises,
        &[Protection::Protected, Protection::Unprotected],
        &cfg,
    )
    .unwrap();
    for pair in rows.chunks(2) {
        let (prot, unprot) = (&pair[0], &pair[1]);
        ensure!(
            prot.mode == Protection::Protected && unprot.mode == Protection::Unprotected,
            "row order"
        );
        let slack = 3.0 * (prot.report.stderr.powi(2) + unprot.report.stderr.powi(2)).sqrt();
        ensure!(
            prot.report.mean_overlap + slack >= unprot.report.mean_overlap,
            "p = {}: protected {:.4} < unprotected {:.4}",
            prot.noise.p_depol,
            prot.report.mean_overlap,
            unprot.report.mean_overlap
        );
    }
    Ok(format!(
        "p = 0.01: overlap {:.4}, discard {:.3}; protected >= unprotected at 5 rates",
        point.mean_overlap, point.discard_rate
    ))
}

fn generalized_preparation() -> Outcome {
    let n = 8;
    let theta = 2.0 * 0.5879f64.atan2(0.3928);
    let all = p("X1X2X3X4X5X6X7X8", n);
    let e = p("X3X4X7X8", n);
    let prep = build_prep_circuit(
        &bits("11110000"),
        &[(all.clone(), false), (e.clone(), true)],
        Some(theta),
    )
    .unwrap();
    let want = [
        ("11110000", 0.3928),
        ("11000011", -0.5879),
        ("00111100", -0.5879),
        ("00001111", 0.3928),
    ];
    for i in 0..8 {
        let out = dense_run(&prep, &mut trajectory_rng(1, i), None).map_err(|e| e.to_string())?;
        let amps = out.state.amplitudes();
        let r = index_of("11110000");
        let phase = amps[r] / amps[r].norm();
        let mut total = 0.0;
        for (b, v) in want {
            let got = amps[index_of(b)] / phase;
            ensure!(
                (got.re - v).abs() < 1e-4 && got.im.abs() < 1e-9,
                "{b}: {got} vs {v}"
            );
            total += got.norm_sqr();
        }
        ensure!(
            (total - 1.0).abs() < 1e-9,
            "weight outside the listed support"
        );
    }

    let code = code_of(&search(&fixture("h4_3.00.json")).state).code;
    let alpha = StabilizerTableau::basis_state(&bits("11110000"))
        .project_excitation(&all, false)
        .unwrap();
    let beta = alpha.apply_pauli(&e);
    ensure!(
        codespace_contains(&code, &alpha).unwrap(),
        "alpha outside the H4 code"
    );
    ensure!(
        codespace_contains(&code, &beta).unwrap(),
        "beta outside the H4 code"
    );
    Ok("amplitudes to 1e-4 on 8 trajectories, alpha and beta in the code".into())
}

/// 36 qubits, 18 electrons: random Z and ZZ terms plus one double excitation.
fn synthetic_36() -> Hamiltonian {
    let n = 36;
    let mut rng = ChaCha8Rng::seed_from_u64(36);
    let mut terms: Vec<(f64, PauliString)> = Vec::new();
    for q in 0..n {
        terms.push((rng.gen_range(-1.0..1.0), PauliString::z_on(n, [q])));
    }
    for _ in 0..60 {
        let a = rng.gen_range(0..n);
        let b = (a + rng.gen_range(1..n)) % n;
        terms.push((rng.gen_range(-0.5..0.5), PauliString::z_on(n, [a, b])));
    }
    terms.push((-0.8, PauliString::x_on(n, [16, 17, 18, 19])));
    QubitHamiltonian::new(n, terms, MoleculeMeta::synthetic(n, 18)).unwrap()
}

fn scaling_smoke() -> Outcome {
    let h = synthetic_36();
    let hf = hf_of(&h);
    let t = Instant::now();
    let r = adaptive_sci(&h, &hf, &SciConfig::default()).map_err(|e| e.to_string())?;
    let dt = t.elapsed();
    ensure!(dt < Duration::from_secs(600), "took {dt:?}");
    ensure!(r.state.validate().is_ok(), "invalid tableau");
    ensure!(r.replay().unwrap() == r.state, "trace does not replay");
    let e_ref = energy_stabilizer(&h, &hf).unwrap();
    let e = energy_stabilizer(&h, &r.state).unwrap();
    ensure!(
        (e - r.energy).abs() < 1e-9,
        "reported {} vs evaluated {e}",
        r.energy
    );
    ensure!(
        r.energy <= e_ref + 1e-12,
        "energy {} above reference {e_ref}",
        r.energy
    );
    Ok(format!(
        "{} steps, E {:.6} <= E_ref {:.6}, {:.1} s",
        r.excitations.len(),
        r.energy,
        e_ref,
        dt.as_secs_f64()
    ))
}

fn main() {
    let energies = AssertUnwindSafe(std::cell::OnceCell::new());
    let rows = || energies.get_or_init(fixture_energies);
    let criteria: Vec<Criterion> = vec![
        ("golden codes", Box::new(golden_codes)),
        ("golden states", Box::new(golden_states)),
        ("variational sandwich", Box::new(|| sandwich(rows()))),
        (
            "H2 generalized accuracy",
            Box::new(|| h2_generalized_accuracy(rows())),
        ),
        ("oracle equivalence", Box::new(oracle_equivalence)),
        ("distance-2 property", Box::new(distance_two)),
        ("noise reproduction", Box::new(noise_reproduction)),
        ("generalized preparation", Box::new(generalized_preparation)),
        ("36-qubit adaptive smoke", Box::new(scaling_smoke)),
    ];
    let mut failed = 0;
    for (name, f) in &criteria {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail} ({secs:.1} s)"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why} ({secs:.1} s)");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
