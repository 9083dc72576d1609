"""Dense eigensolver for general complex matrices.

Pipeline: diagonal balancing, Householder reduction to Hessenberg form,
implicitly shifted single-shift complex QR to Schur form, eigenvectors by
back-substitution on the triangular factor. The QR sweep and the
back-substitution are compiled with numba; everything else is plain numpy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from quasispec.errors import DegenerateEigenvector, NoConvergence

RADIX = 2.0
DEFLATION_TOL = 1e-14
PIVOT_TOL = 1e-14
MAX_SWEEPS = 40
GAUGE_TOL = 1e-8


@dataclass(frozen=True)
class SchurDecomposition:
    T: np.ndarray
    Z: np.ndarray

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.diag(self.T).copy()


@dataclass(frozen=True)
class Eigenpair:
    value: complex
    vector: np.ndarray


def balance(A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal similarity ``B = D^-1 A D`` with power-of-two entries.

    Returns ``(B, d)`` with ``d`` the diagonal of D. Scaling by powers of the
    radix is exact in binary floating point, so the transform is exactly
    invertible. Eigenvectors of ``B`` map back as ``x = d * y``.
    """
    B = np.array(A, dtype=np.complex128, copy=True)
    n = B.shape[0]
    d = np.ones(n)
    sqrdx = RADIX * RADIX
    converged = False
    while not converged:
        converged = True
        for i in range(n):
            absb_col = np.abs(B[:, i].real) + np.abs(B[:, i].imag)
            absb_row = np.abs(B[i, :].real) + np.abs(B[i, :].imag)
            c = absb_col.sum() - absb_col[i]
            r = absb_row.sum() - absb_row[i]
            if c == 0.0 or r == 0.0:
                continue
            s = c + r
            f = 1.0
            g = r / RADIX
            while c < g:
                f *= RADIX
                c *= sqrdx
            g = r * RADIX
            while c >= g:
                f /= RADIX
                c /= sqrdx
            if (c + r) / f < 0.95 * s:
                converged = False
                d[i] *= f
                B[i, :] /= f
                B[:, i] *= f
    return B, d


def hessenberg(A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Householder reduction ``A = Q H Q*``.

    Columns that are already zero below the subdiagonal are skipped, so a
    tridiagonal input comes back unchanged with ``Q = I``.
    """
    H = np.array(A, dtype=np.complex128, copy=True)
    n = H.shape[0]
    Q = np.eye(n, dtype=np.complex128)
    for k in range(n - 2):
        x = H[k + 1:, k].copy()
        tail = np.linalg.norm(x[1:])
        if tail == 0.0:
            continue
        alpha = np.linalg.norm(x)
        x0 = x[0]
        phase = x0 / abs(x0) if x0 != 0 else 1.0
        v = x
        v[0] = x0 + phase * alpha
        v /= np.linalg.norm(v)
        # H <- P H P with P = I - 2 v v*
        blk = H[k + 1:, k:]
        blk -= 2.0 * np.outer(v, v.conj() @ blk)
        blk = H[:, k + 1:]
        blk -= 2.0 * np.outer(blk @ v, v.conj())
        blk = Q[:, k + 1:]
        blk -= 2.0 * np.outer(blk @ v, v.conj())
        H[k + 1, k] = -phase * alpha
        H[k + 2:, k] = 0.0
    return H, Q


@numba.njit(cache=True)
def _givens(a, b):
    # returns c (real), s (complex), r with [[c, s], [-conj(s), c]] @ [a, b] = [r, 0]
    absa = abs(a)
    absb = abs(b)
    if absb == 0.0:
        return 1.0, 0j, a
    if absa == 0.0:
        return 0.0, 1.0 + 0j, b
    norm = np.hypot(absa, absb)
    c = absa / norm
    ph = a / absa
    s = ph * np.conj(b) / norm
    return c, s, ph * norm


@numba.njit(cache=True)
def _rot_rows(H, k, c, s, j0, j1):
    for j in range(j0, j1):
        t1 = H[k, j]
        t2 = H[k + 1, j]
        H[k, j] = c * t1 + s * t2
        H[k + 1, j] = -np.conj(s) * t1 + c * t2


@numba.njit(cache=True)
def _rot_cols(H, k, c, s, i0, i1):
    sc = np.conj(s)
    for i in range(i0, i1):
        t1 = H[i, k]
        t2 = H[i, k + 1]
        H[i, k] = c * t1 + sc * t2
        H[i, k + 1] = -s * t1 + c * t2


@numba.njit(cache=True)
def _cabs1(z):
    return abs(z.real) + abs(z.imag)


@numba.njit(cache=True)
def _wilkinson(a, b, c, d):
    # eigenvalue of [[a, b], [c, d]] closest to d
    half = 0.5 * (a - d)
    disc = np.sqrt(half * half + b * c)
    m1 = d + half + disc
    m2 = d + half - disc
    if abs(m1 - d) <= abs(m2 - d):
        return m1
    return m2


@numba.njit(cache=True)
def _schur_kernel(H, Zt, max_sweeps, tol):
    """In-place complex Schur form; ``Zt`` holds the transposed transform.

    Returns (status, total_iterations); status is -1 on success, else the
    index of the eigenvalue that failed to deflate."""
    n = H.shape[0]
    smallnum = 1e-300
    hi = n - 1
    its = 0
    total = 0
    while hi >= 0:
        # search for a negligible subdiagonal entry
        lo = hi
        while lo > 0:
            sub = abs(H[lo, lo - 1])
            scale = abs(H[lo - 1, lo - 1]) + abs(H[lo, lo])
            if sub <= tol * scale or sub < smallnum:
                H[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            hi -= 1
            its = 0
            continue
        if its >= max_sweeps:
            return hi, total
        its += 1
        total += 1

        if its == 10 or its == 20:
            # exceptional shift to break cycles
            mu = H[hi, hi] + 0.75 * _cabs1(H[hi, hi - 1])
        else:
            mu = _wilkinson(H[hi - 1, hi - 1], H[hi - 1, hi], H[hi, hi - 1], H[hi, hi])

        # implicit single-shift QR step on the active block lo..hi
        x = H[lo, lo] - mu
        y = H[lo + 1, lo]
        for k in range(lo, hi):
            c, s, r = _givens(x, y)
            if k > lo:
                H[k, k - 1] = r
                H[k + 1, k - 1] = 0.0
            _rot_rows(H, k, c, s, k, n)
            imax = k + 3 if k + 3 < hi + 1 else hi + 1
            _rot_cols(H, k, c, s, 0, imax)
            # rows of Zt are columns of Z: contiguous access
            _rot_rows(Zt, k, c, np.conj(s), 0, n)
            if k < hi - 1:
                x = H[k + 1, k]
                y = H[k + 2, k]
    return -1, total


def schur(H: np.ndarray, max_sweeps: int = MAX_SWEEPS, tol: float = DEFLATION_TOL,
          Z: np.ndarray | None = None) -> SchurDecomposition:
    """Schur form of an upper Hessenberg matrix by implicit single-shift QR.

    ``Z`` optionally seeds the accumulated transform (e.g. the Hessenberg
    ``Q``), in which case the result satisfies ``A = Z T Z*`` for the matrix
    ``A`` that ``Q`` reduced.
    """
    T = np.array(H, dtype=np.complex128, copy=True)
    n = T.shape[0]
    Zt = np.eye(n, dtype=np.complex128) if Z is None else np.array(np.transpose(Z), dtype=np.complex128, order="C")
    if n > 1:
        failed, _ = _schur_kernel(T, Zt, max_sweeps, tol)
        if failed >= 0:
            raise NoConvergence(int(failed), max_sweeps)
    T[np.tril_indices(n, -1)] = 0.0
    return SchurDecomposition(T=T, Z=np.ascontiguousarray(Zt.T))


@numba.njit(cache=True)
def _triangular_eigvecs(T, pivot_floor):
    """Columns of X solve (T - T[k,k]) x = 0 with x[k] = 1, x[i>k] = 0.
    Returns (X, bad) where bad is -1 or the first non-finite column."""
    n = T.shape[0]
    X = np.zeros((n, n), dtype=np.complex128)
    big = 1e150
    for k in range(n):
        lam = T[k, k]
        X[k, k] = 1.0
        for i in range(k - 1, -1, -1):
            acc = 0j
            for j in range(i + 1, k + 1):
                acc += T[i, j] * X[j, k]
            d = T[i, i] - lam
            if abs(d) < pivot_floor:
                d = pivot_floor + 0j
            xi = -acc / d
            X[i, k] = xi
            if abs(xi) > big:
                for j in range(i, k + 1):
                    X[j, k] /= big
        for i in range(k + 1):
            if not (np.isfinite(X[i, k].real) and np.isfinite(X[i, k].imag)):
                return X, k
    return X, -1


def triangular_eigenvectors(T: np.ndarray) -> np.ndarray:
    tmax = float(np.max(np.abs(T))) if T.size else 0.0
    floor = PIVOT_TOL * max(tmax, np.finfo(float).tiny)
    X, bad = _triangular_eigvecs(np.ascontiguousarray(T), floor)
    if bad >= 0:
        raise DegenerateEigenvector(int(bad))
    return X


def _canonical_order(values: np.ndarray) -> np.ndarray:
    return np.lexsort((values.imag, values.real))


def _gauge(v: np.ndarray) -> np.ndarray:
    v = v / np.linalg.norm(v)
    mags = np.abs(v)
    k = int(np.argmax(mags > GAUGE_TOL * mags.max()))
    v = v * (np.conj(v[k]) / mags[k])
    v[k] = mags[k]
    return v


def decompose(A: np.ndarray, balanced: bool = True, max_sweeps: int = MAX_SWEEPS,
              tol: float = DEFLATION_TOL) -> tuple[SchurDecomposition, np.ndarray]:
    """Balance, reduce and triangularise. Returns the Schur form of the
    balanced matrix together with the balancing diagonal."""
    A = np.asarray(A, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if balanced:
        B, d = balance(A)
    else:
        B, d = A.copy(), np.ones(A.shape[0])
    Hs, Q = hessenberg(B)
    return schur(Hs, max_sweeps=max_sweeps, tol=tol, Z=Q), d


def eigenvalues(A: np.ndarray, balanced: bool = True) -> np.ndarray:
    """Eigenvalues in canonical (Re, Im) ascending order."""
    dec, _ = decompose(A, balanced=balanced)
    w = dec.eigenvalues
    return w[_canonical_order(w)]


def eigenpairs(A: np.ndarray, balanced: bool = True) -> list[Eigenpair]:
    """All eigenpairs, sorted by (Re E, Im E), vectors unit-norm with the
    first non-negligible entry real and positive."""
    dec, d = decompose(A, balanced=balanced)
    X = triangular_eigenvectors(dec.T)
    vecs = d[:, None] * (dec.Z @ X)
    w = dec.eigenvalues
    order = _canonical_order(w)
    return [Eigenpair(complex(w[k]), _gauge(vecs[:, k])) for k in order]


def stack_pairs(pairs: list[Eigenpair]) -> tuple[np.ndarray, np.ndarray]:
    """Stack a list of eigenpairs into (values, vectors-as-columns)."""
    values = np.array([p.value for p in pairs], dtype=np.complex128)
    vectors = np.column_stack([p.vector for p in pairs])
    return values, vectors
