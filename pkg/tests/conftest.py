import functools

import mpmath
import numpy as np
import pytest

from quasispec import ModelParams, build_hamiltonian, diagnose_spectrum, eigenpairs


@functools.lru_cache(maxsize=None)
def model_spectrum(L, V, bc="open", alpha=None, phase=0.0):
    kw = dict(L=L, V=V, bc=bc, phase=phase)
    if alpha is not None:
        kw["alpha"] = alpha
    p = ModelParams(**kw)
    pairs = eigenpairs(build_hamiltonian(p))
    return p, pairs, diagnose_spectrum(pairs, p)


@pytest.fixture(scope="session")
def spectrum_cache():
    return model_spectrum


def charpoly_roots(H, dps=50):
    """Eigenvalues of a small tridiagonal matrix from its characteristic
    polynomial (three-term recurrence, exact coefficient arithmetic in
    mpmath) and mpmath's Durand-Kerner root finder."""
    mpmath.mp.dps = dps
    n = H.shape[0]
    # p_k(x) = (d_k - x) p_{k-1} - b_{k-1} c_{k-1} p_{k-2}; coefficient lists, highest degree first
    def poly_mul_linear(p, d):
        # (d - x) * p
        out = [mpmath.mpc(0)] * (len(p) + 1)
        for i, c in enumerate(p):
            out[i] -= c
            out[i + 1] += d * c
        return out

    def poly_sub(a, b):
        width = max(len(a), len(b))
        a = [mpmath.mpc(0)] * (width - len(a)) + a
        b = [mpmath.mpc(0)] * (width - len(b)) + b
        return [x - y for x, y in zip(a, b)]

    prev = [mpmath.mpc(1)]
    cur = poly_mul_linear(prev, mpmath.mpc(H[0, 0]))
    for k in range(1, n):
        coupling = mpmath.mpc(H[k, k - 1]) * mpmath.mpc(H[k - 1, k])
        nxt = poly_sub(poly_mul_linear(cur, mpmath.mpc(H[k, k])), [coupling * c for c in prev])
        prev, cur = cur, nxt
    roots = mpmath.polyroots(cur, maxsteps=500, extraprec=200)
    return np.array([complex(r) for r in roots])


def multiset_distance(a, b):
    """Max over a of distance to a matched element of b (greedy, one-to-one)."""
    b = list(b)
    worst = 0.0
    for x in sorted(a, key=lambda z: (z.real, z.imag)):
        k = int(np.argmin([abs(x - y) for y in b]))
        worst = max(worst, abs(x - b[k]))
        b.pop(k)
    return worst


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import REPORT
    except ImportError:
        return
    if REPORT:
        terminalreporter.section("acceptance criteria")
        for line in sorted(REPORT, key=lambda l: int(l.split("#")[1].split()[0])):
            terminalreporter.write_line(line)
