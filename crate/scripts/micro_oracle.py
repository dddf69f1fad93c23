#!/usr/bin/env python3
"""Brute-force recomputation of the hand-checked micro cases.

Every value here is computed from first principles with dense numpy
linear algebra, independent of the Rust implementation. The Rust test
suite freezes the printed values (see crates/core/tests/micro_cases.rs).
"""
import itertools
import json

import numpy as np


def chi(n, a, x):
    return np.exp(2j * np.pi * a * x / n)


def z4_delta0():
    # G = Z4, H = {0, 2} ~ Z2 via 2 -> 1, cosets {0,2} -> rep 0, {1,3} -> rep 1
    f = np.zeros(4, complex)
    f[0] = 1
    H = [0, 2]
    reps = [0, 1]
    wH = 1.0
    zak = np.zeros((2, 2), complex)
    for alpha in range(2):
        for c, g in enumerate(reps):
            for k, xi in enumerate(H):
                # character of Z2 at k, evaluated at xi^{-1}
                zak[alpha, c] += f[(xi + g) % 4] * chi(2, alpha, -k) * wH
    fhat = np.array([sum(f[x] * chi(4, a, -x) for x in range(4)) for a in range(4)])
    # translates of delta_0 by H, frame operator on C^4
    vecs = [np.roll(f, xi) for xi in H]
    S = sum(np.outer(v, v.conj()) for v in vecs)
    ev = np.linalg.eigvalsh(S)
    nz = ev[ev > 1e-10 * ev.max()]
    S2 = 2 * S  # duplicated family
    ev2 = np.linalg.eigvalsh(S2)
    nz2 = ev2[ev2 > 1e-10 * ev2.max()]
    # translation bracket [f,f](alpha) = <Zf(-alpha), Zf(-alpha)>
    br = [np.vdot(zak[(-a) % 2], zak[(-a) % 2]).real for a in range(2)]
    # defining identity at xi = 2 (local index 1)
    lhs = np.vdot(np.roll(f, 2), f)  # <f, L_2 f> = sum f conj(L_2 f)
    rhs = sum(br[a] * np.conj(chi(2, a, 1)) * 0.5 for a in range(2))
    return {
        "zak": [[[v.real, v.imag] for v in row] for row in zak],
        "fhat": [[v.real, v.imag] for v in fhat],
        "frame_A": float(nz.min()), "frame_B": float(nz.max()), "span_dim": int(len(nz)),
        "dup_A": float(nz2.min()), "dup_B": float(nz2.max()),
        "bracket": br, "bracket_identity": [abs(lhs), abs(rhs)],
    }


def swap_rep():
    swap = np.array([[0, 1], [1, 0]], complex)
    I = np.eye(2)
    pi = [I, swap]
    w_dual = 0.5
    P = [sum(np.conj(chi(2, a, x)) * pi[x] for x in range(2)) / 2 for a in range(2)]
    e = np.eye(2)

    def bracket(phi, psi):
        return [np.vdot(psi, P[a] @ phi) / w_dual for a in range(2)]

    table = [[[complex(v).real for v in bracket(e[i], e[j])] for j in range(2)] for i in range(2)]
    # generator theta = e1, T(e1)(alpha) = [e1,e1]/sqrt([e1,e1])
    b11 = bracket(e[0], e[0])
    T = [b11[a] / np.sqrt(b11[a]) for a in range(2)]
    # orbit frame of e1 + e2
    phi = e[0] + e[1]
    S = sum(np.outer(p, p.conj()) for p in (pi[x] @ phi for x in range(2)))
    ev = np.linalg.eigvalsh(S)
    nz = ev[ev > 1e-10 * ev.max()]
    # orbit frame of e1
    S1 = sum(np.outer(p, p.conj()) for p in (pi[x] @ e[0] for x in range(2)))
    ev1 = np.linalg.eigvalsh(S1)
    return {
        "bracket_table": table,
        "T_e1": [complex(t).real for t in T],
        "P_chi0": [[P[0][i, j].real for j in range(2)] for i in range(2)],
        "orbit_e1_bounds": [float(ev1.min()), float(ev1.max())],
        "orbit_sum_bounds": [float(nz.min()), float(nz.max())],
    }


def z2_gabor():
    # G = H = Z2, H* = {chi_0}, weights 1; Zak of delta_0 with w_H = 1
    f = np.array([1, 0], complex)
    zak = [sum(f[x] * chi(2, a, -x) for x in range(2)) for a in range(2)]
    vecs = [np.roll(f, xi) for xi in range(2)]
    S = sum(np.outer(v, v.conj()) for v in vecs)
    ev = np.linalg.eigvalsh(S)
    return {"S": [abs(z) ** 2 for z in zak], "direct": [float(ev.min()), float(ev.max())]}


def small_facts():
    out = {}
    out["z4_chi1_at_1"] = [chi(4, 1, 1).real, chi(4, 1, 1).imag]
    out["z6_4_plus_5"] = (4 + 5) % 6
    # order-3 multipliers mod 7
    out["axb_7_3_multipliers"] = sorted({pow(a, 1, 7) for a in range(1, 7) if pow(a, 3, 7) == 1})
    # inverse Fourier of delta_chi0 on Z2 with dual weight 1/2
    out["z2_inverse_delta"] = [0.5 * chi(2, 0, x).real for x in range(2)]
    out["z2_fourier_ones"] = [sum(chi(2, a, -x) for x in range(2)).real for a in range(2)]
    return out


if __name__ == "__main__":
    print(json.dumps({
        "z4_delta0": z4_delta0(),
        "swap_rep": swap_rep(),
        "z2_gabor": z2_gabor(),
        "facts": small_facts(),
    }, indent=1, default=float))
