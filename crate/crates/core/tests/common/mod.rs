#![allow(dead_code)]

use std::path::PathBuf;

use num_complex::Complex64 as C;
use proptest::prelude::*;
use stabci::{CliffordCircuit, CliffordGate, Pauli, PauliString, StabilizerTableau};

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn fixture(name: &str) -> stabci::Hamiltonian {
    stabci::Hamiltonian::load(fixtures_dir().join(name)).expect("fixture loads")
}

pub fn all_fixtures() -> Vec<(String, stabci::Hamiltonian)> {
    let mut names: Vec<String> = std::fs::read_dir(fixtures_dir())
        .unwrap()
        .filter_map(|e| e.ok())
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".json"))
        .collect();
    names.sort();
    names
        .into_iter()
        .map(|n| (n.clone(), fixture(&n)))
        .collect()
}

pub fn p(s: &str, n: usize) -> PauliString {
    PauliString::parse(s, n).unwrap()
}

pub fn bits(s: &str) -> Vec<bool> {
    s.chars().map(|c| c == '1').collect()
}

/// Dense matrix as rows, qubit 1 is the most significant index bit.
pub type Mat = Vec<Vec<C>>;

fn letter_matrix(l: Pauli) -> [[C; 2]; 2] {
    let (o, z, i) = (C::new(1.0, 0.0), C::new(0.0, 0.0), C::new(0.0, 1.0));
    match l {
        Pauli::I => [[o, z], [z, o]],
        Pauli::X => [[z, o], [o, z]],
        Pauli::Y => [[z, -i], [i, z]],
        Pauli::Z => [[o, z], [z, -o]],
    }
}

/// Kronecker product of the letters times the scalar coefficient, computed
/// from `Display` so no internal representation is shared.
pub fn pauli_matrix(ps: &PauliString) -> Mat {
    let n = ps.n_qubits();
    let text = ps.to_string();
    let coeff = if text.starts_with("-i") {
        C::new(0.0, -1.0)
    } else if text.starts_with('-') {
        C::new(-1.0, 0.0)
    } else if text.starts_with('i') {
        C::new(0.0, 1.0)
    } else {
        C::new(1.0, 0.0)
    };
    let mut m: Mat = vec![vec![coeff]];
    for q in 0..n {
        let l = letter_matrix(ps.letter(q));
        let d = m.len();
        let mut out = vec![vec![C::new(0.0, 0.0); 2 * d]; 2 * d];
        for r in 0..d {
            for c in 0..d {
                for a in 0..2 {
                    for b in 0..2 {
                        out[2 * r + a][2 * c + b] = m[r][c] * l[a][b];
                    }
                }
            }
        }
        m = out;
    }
    m
}

pub fn matvec(m: &Mat, v: &[C]) -> Vec<C> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut out = vec![vec![C::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] != C::new(0.0, 0.0) {
                for j in 0..n {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    out
}

pub fn inner(a: &[C], b: &[C]) -> C {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn normalize(v: &mut [C]) {
    let s: f64 = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= s);
}

/// Statevector of a stabilizer state by applying every projector
/// `(I + g)/2` to a generic vector.
pub fn oracle_state(t: &StabilizerTableau) -> Vec<C> {
    let n = t.n_qubits();
    let dim = 1 << n;
    // pseudo-random start; a structured one can be orthogonal to the state
    let mut seed = 0x9e37_79b9_7f4a_7c15u64;
    let mut next = || {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        (seed >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    };
    let mut v: Vec<C> = (0..dim).map(|_| C::new(next(), next())).collect();
    for g in t.generators() {
        let gv = matvec(&pauli_matrix(g), &v);
        v = v.iter().zip(&gv).map(|(a, b)| (a + b) * 0.5).collect();
    }
    normalize(&mut v);
    v
}

/// `|⟨a|b⟩| ≈ 1`.
pub fn same_ray(a: &[C], b: &[C], tol: f64) -> bool {
    (inner(a, b).norm() - 1.0).abs() < tol
}

pub fn oracle_expectation(v: &[C], ps: &PauliString) -> C {
    inner(v, &matvec(&pauli_matrix(ps), v))
}

pub fn hamiltonian_matrix(h: &stabci::Hamiltonian) -> Mat {
    let dim = 1 << h.n_qubits();
    let mut m = vec![vec![C::new(0.0, 0.0); dim]; dim];
    for t in h.terms() {
        let pm = pauli_matrix(&t.pauli);
        for i in 0..dim {
            for j in 0..dim {
                m[i][j] += pm[i][j] * t.coeff;
            }
        }
    }
    m
}

/// Fix the global phase so the first nonzero entry (by index) is real
/// positive.
pub fn gauge(v: &[C]) -> Vec<C> {
    let first = v.iter().find(|a| a.norm() > 1e-9).copied().unwrap();
    let ph = first.conj() / first.norm();
    v.iter().map(|a| a * ph).collect()
}

pub fn index_of(bits: &str) -> usize {
    bits.bytes()
        .fold(0, |acc, b| (acc << 1) | (b == b'1') as usize)
}

/// Stabilizer state with the listed `±` amplitudes on an affine support,
/// built by X-type projections from the first string; the listing is
/// checked against the result.
pub fn state_from_listing(listing: &[(&str, f64)]) -> StabilizerTableau {
    let n = listing[0].0.len();
    let b0 = bits(listing[0].0);
    let diffs: Vec<Vec<bool>> = listing
        .iter()
        .map(|(s, _)| bits(s).iter().zip(&b0).map(|(a, b)| a ^ b).collect())
        .collect();
    // greedy GF(2) basis of the differences
    let mut basis: Vec<(Vec<bool>, usize)> = Vec::new();
    for (i, d) in diffs.iter().enumerate() {
        let mut r = d.clone();
        for (v, _) in &basis {
            let lead = v.iter().position(|&b| b).unwrap();
            if r[lead] {
                r.iter_mut().zip(v).for_each(|(a, b)| *a ^= b);
            }
        }
        if r.iter().any(|&b| b) {
            basis.push((r, i));
        }
    }
    let mut s = StabilizerTableau::basis_state(&b0);
    for (_, i) in &basis {
        let e = PauliString::x_on(n, (0..n).filter(|&q| diffs[*i][q]));
        let negative = listing[*i].1 * listing[0].1 < 0.0;
        s = s.project_excitation(&e, negative).unwrap();
    }
    let a = s.amplitudes::<f64>().unwrap();
    assert_eq!(a.len(), listing.len());
    let sign0 = listing[0].1.signum();
    let first = a.get(listing[0].0).unwrap().re.signum();
    for (b, v) in listing {
        let got = a.get(b).unwrap().re;
        assert!((got * first - v * sign0).abs() < 1e-12, "{b}: {got} vs {v}");
    }
    s
}

// ---- random inputs ----

pub fn arb_gate(n: usize) -> impl Strategy<Value = CliffordGate> {
    let single = (0..n, 0..3u8).prop_map(|(q, k)| match k {
        0 => CliffordGate::H(q),
        1 => CliffordGate::S(q),
        _ => CliffordGate::Sdg(q),
    });
    if n < 2 {
        return single.boxed();
    }
    let cnot = (0..n, 1..n).prop_map(move |(c, d)| CliffordGate::Cnot {
        control: c,
        target: (c + d) % n,
    });
    prop_oneof![2 => single, 1 => cnot].boxed()
}

pub fn arb_circuit(n: usize, len: usize) -> impl Strategy<Value = CliffordCircuit> {
    prop::collection::vec(arb_gate(n), 0..len).prop_map(move |gates| {
        let mut c = CliffordCircuit::new(n);
        for g in gates {
            c.push(g).unwrap();
        }
        c
    })
}

pub fn arb_pauli(n: usize) -> impl Strategy<Value = PauliString> {
    (prop::collection::vec(0..4u8, n), 0..4u8).prop_map(|(ls, k)| {
        let letters: Vec<Pauli> = ls
            .into_iter()
            .map(|l| [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][l as usize])
            .collect();
        PauliString::from_letters(&letters).times_i_power(k)
    })
}

pub fn arb_hermitian(n: usize) -> impl Strategy<Value = PauliString> {
    (arb_pauli(n), any::<bool>()).prop_map(|(p, neg)| p.with_sign(neg))
}

/// Random stabilizer state: random basis state, then a random Clifford.
pub fn arb_state(max_n: usize, depth: usize) -> impl Strategy<Value = StabilizerTableau> {
    (1..=max_n).prop_flat_map(move |n| {
        (
            prop::collection::vec(any::<bool>(), n),
            arb_circuit(n, depth),
        )
            .prop_map(|(b, c)| {
                StabilizerTableau::basis_state(&b)
                    .apply_clifford(&c)
                    .unwrap()
            })
    })
}

pub fn arb_state_n(n: usize, depth: usize) -> impl Strategy<Value = StabilizerTableau> {
    (
        prop::collection::vec(any::<bool>(), n),
        arb_circuit(n, depth),
    )
        .prop_map(|(b, c)| {
            StabilizerTableau::basis_state(&b)
                .apply_clifford(&c)
                .unwrap()
        })
}
