"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line
(run with `pytest -s tests/test_acceptance.py` to see them stream)."""

import math
import time

import numpy as np
import pytest

from hahnchain import hahn, qhahn
from hahnchain.chain import (ChainSpec, analytic_eigensystem, build_couplings,
                             interaction_matrix)
from hahnchain.dynamics import (amplitude_at_halfpi, amplitude_at_pi,
                                correlation, correlation_matrix, end_to_end,
                                q_end_to_end)
from hahnchain.dynamics import _sine_sum_2f1
from hahnchain.hahn import orthonormal_table
from hahnchain.oracle import match_eigensystems, tridiag_eigen
from hahnchain.qhahn import q_orthonormal_table

CLASSICAL_MS = (1, 2, 5, 10, 25, 50)
CLASSICAL_ALPHAS = (-0.9, -0.5, 0.0, 0.37, 2.0)
CLASSICAL_PAIRS = [(-0.9, 0.1), (-0.5, 0.5), (0.0, 1.0), (0.37, 2.4), (2.0, 3.0)]
Q_GRID = [(q, a, b) for q in (0.3, 0.5, 0.9) for a in (0.2, 0.8) for b in (0.3, 0.9)]


def classical_grid():
    for m in CLASSICAL_MS:
        for a in CLASSICAL_ALPHAS:
            for b in (0.1, 0.5, 1.0, a + 1.0, 2.4):
                yield ChainSpec(m, a, b)


def _report(num, name, ok, detail):
    print(f"criterion {num} ({name}): {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {num} ({name}) failed: {detail}"


def test_criterion_1_eigendecomposition_identity():
    analytic_eigensystem.cache_clear()
    orthonormal_table.cache_clear()
    q_orthonormal_table.cache_clear()
    t0 = time.time()
    worst_mu = worst_orth = 0.0
    count = 0
    for spec in classical_grid():
        count += 1
        es = analytic_eigensystem(spec)
        mat = interaction_matrix(build_couplings(spec)).to_dense()
        emax = np.max(np.abs(es.eigenvalues))
        worst_mu = max(worst_mu, np.max(np.abs(mat @ es.U - es.U * es.eigenvalues[None, :])) / emax)
        worst_orth = max(worst_orth, np.max(np.abs(es.U.T @ es.U - np.eye(es.dimension))))
    elapsed = time.time() - t0
    ok = worst_mu <= 1e-10 and worst_orth <= 1e-10 and elapsed < 10.0
    _report(1, "eigendecomposition identity", ok,
            f"{count} specs, max|MU-UD|/max|e|={worst_mu:.2e}, max|UtU-I|={worst_orth:.2e}, "
            f"{elapsed:.1f}s")


def test_criterion_2_oracle_equivalence():
    worst_eig = worst_overlap = 0.0
    for spec in classical_grid():
        es = analytic_eigensystem(spec)
        numeric = tridiag_eigen(interaction_matrix(build_couplings(spec)))
        matched = match_eigensystems(es, numeric)
        worst_eig = max(worst_eig, matched.max_eigenvalue_rel_diff)
        worst_overlap = max(worst_overlap, matched.max_overlap_deviation)
    ok = worst_eig <= 1e-10 and worst_overlap <= 1e-9
    _report(2, "oracle equivalence", ok,
            f"max eig rel diff={worst_eig:.2e}, max overlap dev={worst_overlap:.2e}")


def test_criterion_3_difference_identities():
    worst = 0.0
    for m in (5, 12, 20):
        for a, b in CLASSICAL_PAIRS:
            p = hahn.HahnParams(a, b, m)
            sh = p.shifted()
            for n in range(m + 1):
                for x in range(m):
                    q0 = hahn.hahn_Q(n, x, p)
                    q1 = hahn.hahn_Q(n, x + 1, p)
                    s0 = hahn.hahn_Q(n, x, sh)
                    s1 = hahn.hahn_Q(n, x + 1, sh)
                    t1 = (m + b - x) * q0
                    t2 = (m - x) * q1
                    t3 = (n + a + 1.0) * (n + b) / (a + 1.0) * s0
                    scale = max(abs(t1), abs(t2), abs(t3), 1.0)
                    worst = max(worst, abs(t1 - t2 - t3) / scale)
                    u1 = (x + 1.0) * s0
                    u2 = (a + x + 2.0) * s1
                    u3 = (a + 1.0) * q1
                    scale = max(abs(u1), abs(u2), abs(u3), 1.0)
                    worst = max(worst, abs(u1 - u2 + u3) / scale)
    worst_q = 0.0
    for m in (6, 20):
        for q, a, b in Q_GRID:
            p = qhahn.QHahnParams(a, b, q, m)
            sh = p.shifted()
            for n in range(m + 1):
                for x in range(m):
                    q0 = qhahn.q_hahn_Q(n, x, p)
                    q1 = qhahn.q_hahn_Q(n, x + 1, p)
                    s0 = qhahn.q_hahn_Q(n, x, sh)
                    s1 = qhahn.q_hahn_Q(n, x + 1, sh)
                    t1 = (1.0 - b * q ** (m - x)) * q0
                    t2 = (1.0 - q ** (m - x)) * q1
                    t3 = ((1.0 - a * q ** (n + 1)) * (1.0 - b * q ** n)
                          * q ** (m - n - x) / (1.0 - a * q)) * s0
                    scale = max(abs(t1), abs(t2), abs(t3), 1.0)
                    worst_q = max(worst_q, abs(t1 - t2 - t3) / scale)
                    u1 = (1.0 - q ** (x + 1)) * a * q * s0
                    u2 = (1.0 - a * q ** (x + 2)) * s1
                    u3 = (1.0 - a * q) * q1
                    scale = max(abs(u1), abs(u2), abs(u3), 1.0)
                    worst_q = max(worst_q, abs(u1 - u2 + u3) / scale)
    ok = worst <= 1e-11 and worst_q <= 1e-11
    _report(3, "difference identities", ok,
            f"max rel residual plain={worst:.2e}, deformed={worst_q:.2e}")


def test_criterion_4_orthogonality():
    worst = 0.0
    for m in (5, 20):
        for a, b in CLASSICAL_PAIRS:
            p = hahn.HahnParams(a, b, m)
            tab = hahn.polynomial_table(p, rel=1e-15)
            w = hahn.weight_vector(p)
            h = hahn.norm_vector(p)
            gram = (tab * w[None, :]) @ tab.T
            worst = max(worst, float(np.max(np.abs(gram - np.diag(h)) / h[None, :])))
        for q, a, b in Q_GRID:
            p = qhahn.QHahnParams(a, b, q, m)
            tab = qhahn.q_polynomial_table(p, rel=1e-15)
            w = qhahn.q_weight_vector(p)
            h = qhahn.q_norm_vector(p)
            gram = (tab * w[None, :]) @ tab.T
            worst = max(worst, float(np.max(np.abs(gram - np.diag(h)) / h[None, :])))
    ok = worst <= 1e-10
    _report(4, "orthogonality", ok, f"max |sum w Q Q - h|/h = {worst:.2e}")


def test_criterion_5_perfect_state_transfer():
    worst = 0.0
    for a in (-0.5, 0.5, 1.5, 2.5):
        for m in range(1, 11):
            spec = ChainSpec(m, a, a + 1.0)
            es = analytic_eigensystem(spec)
            amp_eig = correlation(es, 2 * m + 1, 0, math.pi / 2.0).amplitude
            worst = max(worst, abs(abs(amp_eig) - 1.0),
                        abs(abs(amplitude_at_halfpi(spec)) - 1.0))
    worst_frac = 0.0
    for m in range(1, 11):
        spec = ChainSpec(m, -1.0 / 6.0, -1.0 / 6.0 + 1.0)
        es = analytic_eigensystem(spec)
        t = 3.0 * math.pi / 2.0
        worst_frac = max(worst_frac,
                         abs(abs(correlation(es, 2 * m + 1, 0, t).amplitude) - 1.0),
                         abs(abs(end_to_end(spec, t).amplitude) - 1.0))
    ok = worst <= 1e-10 and worst_frac <= 1e-10
    _report(5, "perfect state transfer", ok,
            f"half-integer dev={worst:.2e}, fractional dev={worst_frac:.2e}")


def test_criterion_6_closed_form_agreement():
    worst_k = worst_g = 0.0
    alphas = [-0.9 + (3.8 / 19.0) * i for i in range(20)]
    for m in (1, 7, 20):
        for a in alphas:
            spec = ChainSpec(m, a, a + 1.0)
            worst_k = max(worst_k, abs(_sine_sum_2f1(m, a, math.pi / 2.0)
                                       - amplitude_at_halfpi(spec)))
            worst_g = max(worst_g, abs(_sine_sum_2f1(m, a, math.pi)
                                       - amplitude_at_pi(spec)))
    ok = worst_k <= 1e-12 and worst_g <= 1e-12
    _report(6, "closed-form agreement", ok,
            f"half-pi collapse={worst_k:.2e}, pi collapse={worst_g:.2e}")


def test_criterion_7_deformed_chain():
    worst = 0.0
    for q, a, b in Q_GRID:
        for m in (1, 5, 15, 30):
            spec = ChainSpec(m, a, b, q)
            es = analytic_eigensystem(spec)
            mat = interaction_matrix(build_couplings(spec)).to_dense()
            emax = np.max(np.abs(es.eigenvalues))
            worst = max(worst, np.max(np.abs(mat @ es.U - es.U * es.eigenvalues[None, :])) / emax)
    worst_cf = 0.0
    for m, a, q in [(4, 0.8, 0.5), (8, 0.5, 0.3), (12, 1.05, 0.9)]:
        spec = ChainSpec(m, a, q * a, q)
        es = analytic_eigensystem(spec)
        prod = es.U[2 * m + 1] * es.U[0]
        for t in np.linspace(0.0, 4.0 * math.pi, 100):
            ref = complex(np.dot(prod, np.exp(-1j * float(t) * es.eigenvalues)))
            worst_cf = max(worst_cf, abs(q_end_to_end(spec, float(t)) - ref))
    ok = worst <= 1e-10 and worst_cf <= 1e-10
    _report(7, "deformed chain", ok,
            f"max|MU-UD|/max|e|={worst:.2e}, closed-form diff={worst_cf:.2e}")


def test_criterion_8_unitarity():
    rng = np.random.default_rng(20260810)
    worst_u = worst_id = 0.0
    for draw in range(20):
        m = int(rng.integers(1, 13))
        if draw % 2 == 0:
            spec = ChainSpec(m, float(rng.uniform(-0.95, 2.5)), float(rng.uniform(0.05, 3.0)))
        else:
            q = float(rng.uniform(0.2, 0.95))
            spec = ChainSpec(m, float(rng.uniform(0.05, 0.95 / q)),
                             float(rng.uniform(0.05, 0.95)), q)
        t = float(rng.uniform(0.0, 10.0))
        es = analytic_eigensystem(spec)
        eye = np.eye(es.dimension)
        f = correlation_matrix(es, t)
        worst_u = max(worst_u, float(np.max(np.abs(f @ f.conj().T - eye))))
        worst_id = max(worst_id, float(np.max(np.abs(correlation_matrix(es, 0.0) - eye))))
    ok = worst_u <= 1e-10 and worst_id <= 1e-10
    _report(8, "unitarity", ok,
            f"max unitarity defect={worst_u:.2e}, max |F(0)-I|={worst_id:.2e}")


def test_criterion_9_uniform_reduction():
    worst = 0.0
    exact = True
    for m in range(1, 26):
        n = 2 * m + 1
        j = build_couplings(ChainSpec(m, -0.5, 0.5)).values
        ref = np.sqrt([(k + 1.0) * (n - k) for k in range(n)])
        exact = exact and np.array_equal(j, ref)
        eig = analytic_eigensystem(ChainSpec(m, -0.5, 0.5)).eigenvalues
        worst = max(worst, float(np.max(np.abs(eig - (-n + 2.0 * np.arange(n + 1))))))
    ok = exact and worst <= 1e-12
    _report(9, "uniform-coupling reduction", ok,
            f"couplings exact={exact}, spectrum dev={worst:.2e}")
