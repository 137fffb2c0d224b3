#!/usr/bin/env python3
"""Generate qubit-Hamiltonian fixtures (STO-3G, RHF orbitals, Jordan-Wigner).

Spin-orbital layout: qubit 2m (0-based) is the alpha spin-orbital of MO m,
qubit 2m+1 the beta spin-orbital; MOs are in RHF energy order so the
Hartree-Fock determinant is a contiguous block of ones.

Usage: python3 tools/export_fixtures.py [OUT_DIR]
"""
import json
import sys
from pathlib import Path

import numpy as np
from pyscf import ao2mo, fci, gto, scf

ORDERING = "interleaved-spin-occupied-first"

# Single-qubit Pauli products: (a, b) -> (phase, c)
_MUL = {
    ("I", "I"): (1, "I"), ("I", "X"): (1, "X"), ("I", "Y"): (1, "Y"), ("I", "Z"): (1, "Z"),
    ("X", "I"): (1, "X"), ("X", "X"): (1, "I"), ("X", "Y"): (1j, "Z"), ("X", "Z"): (-1j, "Y"),
    ("Y", "I"): (1, "Y"), ("Y", "X"): (-1j, "Z"), ("Y", "Y"): (1, "I"), ("Y", "Z"): (1j, "X"),
    ("Z", "I"): (1, "Z"), ("Z", "X"): (1j, "Y"), ("Z", "Y"): (-1j, "X"), ("Z", "Z"): (1, "I"),
}


def pmul(a, b):
    phase = 1
    out = []
    for p, q in zip(a, b):
        f, r = _MUL[(p, q)]
        phase *= f
        out.append(r)
    return phase, "".join(out)


def op_mul(a, b):
    out = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            f, k = pmul(ka, kb)
            out[k] = out.get(k, 0) + f * va * vb
    return out


def ladder(j, n, dagger):
    z = "Z" * j
    pad = "I" * (n - j - 1)
    sign = -1j if dagger else 1j
    return {z + "X" + pad: 0.5, z + "Y" + pad: 0.5 * sign}


def qubit_hamiltonian(h1, eri, e_nuc):
    """h1[p,q] and chemist eri[p,q,r,s] over spatial MOs."""
    norb = h1.shape[0]
    n = 2 * norb
    cre = [ladder(j, n, True) for j in range(n)]
    ann = [ladder(j, n, False) for j in range(n)]
    ham = {"I" * n: e_nuc}

    def add(op, c):
        for k, v in op.items():
            ham[k] = ham.get(k, 0) + c * v

    pair = {}
    for p in range(n):
        for q in range(n):
            pair[(p, q)] = op_mul(cre[p], ann[q])
    for p in range(n):
        for q in range(n):
            if p % 2 != q % 2:
                continue
            c = h1[p // 2, q // 2]
            if abs(c) > 1e-12:
                add(pair[(p, q)], c)
    # 1/2 sum <pq|rs> a+_p a+_q a_s a_r, <pq|rs> = (pr|qs)
    for p in range(n):
        for q in range(n):
            if p == q:
                continue
            cc = op_mul(cre[p], cre[q])
            for r in range(n):
                if r % 2 != p % 2:
                    continue
                for s in range(n):
                    if s % 2 != q % 2 or r == s:
                        continue
                    c = 0.5 * eri[p // 2, r // 2, q // 2, s // 2]
                    if abs(c) < 1e-12:
                        continue
                    add(op_mul(cc, op_mul(ann[s], ann[r])), c)
    terms = []
    for k, v in ham.items():
        assert abs(v.imag) < 1e-10 if isinstance(v, complex) else True
        re = v.real if isinstance(v, complex) else v
        if abs(re) > 1e-10:
            terms.append((k, re))
    return terms


def sparse(label):
    parts = [f"{p}{i + 1}" for i, p in enumerate(label) if p != "I"]
    return "".join(parts) if parts else "I"


def dense_matrix(terms, n):
    mats = {
        "I": np.eye(2),
        "X": np.array([[0, 1], [1, 0]], dtype=complex),
        "Y": np.array([[0, -1j], [1j, 0]]),
        "Z": np.diag([1.0, -1.0]).astype(complex),
    }
    dim = 2 ** n
    h = np.zeros((dim, dim), dtype=complex)
    for label, c in terms:
        m = np.array([[1.0]], dtype=complex)
        for ch in label:
            m = np.kron(m, mats[ch])
        h += c * m
    return h


def export(name, atoms, bond_length, out_dir, tag):
    mol = gto.M(atom=atoms, basis="sto-3g", unit="Angstrom", verbose=0)
    mf = scf.RHF(mol)
    mf.conv_tol = 1e-12
    mf.max_cycle = 500
    mf.kernel()
    if not mf.converged:
        mf = scf.newton(mf)
        mf.kernel()
    c = mf.mo_coeff
    h1 = c.T @ mf.get_hcore() @ c
    norb = c.shape[1]
    eri = ao2mo.restore(1, ao2mo.kernel(mol, c), norb)
    e_fci = fci.FCI(mf).kernel()[0]
    terms = qubit_hamiltonian(h1, eri, mol.energy_nuc())
    n = 2 * norb
    nelec = mol.nelectron
    if n <= 12:
        h = dense_matrix(terms, n)
        idx = [b for b in range(2 ** n) if bin(b).count("1") == nelec]
        sub = h[np.ix_(idx, idx)]
        e_sector = np.linalg.eigvalsh(sub)[0]
        assert abs(e_sector - e_fci) < 1e-7, (e_sector, e_fci)
        hf_bits = int("1" * nelec + "0" * (n - nelec), 2)
        e_hf_jw = h[hf_bits, hf_bits].real
        assert abs(e_hf_jw - mf.e_tot) < 1e-7, (e_hf_jw, mf.e_tot)
    doc = {
        "format_version": 1,
        "n_qubits": n,
        "molecule": name,
        "bond_length_angstrom": bond_length,
        "n_electrons": nelec,
        "ordering": ORDERING,
        "hf_energy": float(mf.e_tot),
        "fci_energy": float(e_fci),
        "terms": [{"coeff": float(v), "pauli": sparse(k)} for k, v in sorted(terms, key=lambda t: (sum(ch != "I" for ch in t[0]), t[0]))],
    }
    path = out_dir / f"{tag}.json"
    path.write_text(json.dumps(doc, indent=1) + "\n")
    print(f"{path}: n={n} terms={len(terms)} hf={mf.e_tot:.8f} fci={e_fci:.8f}")


def main():
    out_dir = Path(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "fixtures")
    out_dir.mkdir(parents=True, exist_ok=True)
    for r in np.arange(0.5, 3.01, 0.25):
        r = round(float(r), 2)
        export("H2", f"H 0 0 0; H 0 0 {r}", r, out_dir, f"h2_{r:.2f}")
    r = 3.0
    export("H4", f"H 0 0 0; H {r} 0 0; H {r} {r} 0; H 0 {r} 0", r, out_dir, "h4_3.00")
    export("LiH", f"Li 0 0 0; H 0 0 {r}", r, out_dir, "lih_3.00")


if __name__ == "__main__":
    main()
