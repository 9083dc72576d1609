"""Fourier dual of lattice states and the residual of the dual equation.

``f(theta_m) = L^{-1/2} sum_{n=1}^{L} exp(i theta_m n) psi_n`` on the grid
``theta_m = 2 pi m / L``. With a rational frequency ``p/L`` a shift of theta by
``2 pi alpha`` is a cyclic shift of the grid by ``p`` points.

Writing ``i cot(x) = -(e^{2ix} + 1) / (e^{2ix} - 1)`` with
``x = pi (alpha n + phase)`` and transforming the eigen-equation gives, for a
periodic chain exactly and for an open chain up to boundary terms,

    e^{2 pi i phase} [cos(theta + 2 pi alpha) - (E + V)/2] f(theta + 2 pi alpha)
        = [cos(theta) - (E - V)/2] f(theta)

which is what :func:`dual_residual` measures by default. ``form="printed"``
evaluates the symmetric two-shift variant

    [cos(theta + 2 pi alpha) + V/2 - E/2] f(theta + 2 pi alpha)
        = [-cos(theta - 2 pi alpha) + V/2 + E/2] f(theta - 2 pi alpha)

kept for comparison; eigenstates of this model do not satisfy it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from quasispec.errors import GridMismatch


@dataclass(frozen=True)
class DualState:
    values: np.ndarray
    norm: float

    @property
    def L(self) -> int:
        return self.values.shape[0]

    @property
    def theta(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.L) / self.L


def fourier_dual(psi: np.ndarray) -> DualState:
    psi = np.asarray(psi, dtype=np.complex128)
    L = psi.shape[0]
    if psi.ndim != 1 or L < 2:
        raise ValueError(f"need a 1-d state with L >= 2, got shape {psi.shape}")
    # sum_n e^{2 pi i m n / L} psi_n over n = 1..L, i.e. L * ifft of psi shifted so n=L sits at index 0
    shifted = np.roll(psi, 1)
    f = np.fft.ifft(shifted) * np.sqrt(L)
    return DualState(values=f, norm=float(np.linalg.norm(f)))


def inverse_dual(f: DualState) -> np.ndarray:
    L = f.L
    shifted = np.fft.fft(f.values) / np.sqrt(L)
    return np.roll(shifted, -1)


def fibonacci_approximant(L: int) -> Fraction:
    """``F_{k-1}/F_k`` with ``F_k == L``; GridMismatch if L is not a Fibonacci number >= 2."""
    a, b = 1, 2
    while b < L:
        a, b = b, a + b
    if b != L:
        raise GridMismatch(f"L={L} is not a Fibonacci number; rational approximant p/L of the golden mean needs one")
    return Fraction(a, b)


def dual_residual(
    f: DualState,
    E: complex,
    V: float,
    alpha_rational: Fraction,
    phase: float | None = None,
    form: str = "derived",
) -> float:
    """Relative 2-norm residual of the dual equation on the theta grid.

    Normalised by ``||f||`` and by the largest coefficient magnitude so values
    are comparable across L and V. ``phase`` defaults to ``1/(2L)``.
    """
    alpha_rational = Fraction(alpha_rational)
    L = f.L
    if alpha_rational.denominator != L:
        raise GridMismatch(
            f"rational frequency {alpha_rational} has denominator {alpha_rational.denominator}, grid has L={L}"
        )
    if f.norm == 0.0:
        return 0.0
    shift = alpha_rational.numerator
    theta = f.theta
    two_pi_alpha = 2.0 * np.pi * float(alpha_rational)
    # f(theta_m + 2 pi p / L) == f[m + p]
    f_plus = np.roll(f.values, -shift)
    E = complex(E)
    if form == "derived":
        if phase is None:
            phase = 1.0 / (2.0 * L)
        c_plus = np.exp(2j * np.pi * phase) * (np.cos(theta + two_pi_alpha) - (E + V) / 2.0)
        c_here = np.cos(theta) - (E - V) / 2.0
        r = c_plus * f_plus - c_here * f.values
        scale = max(np.abs(c_plus).max(), np.abs(c_here).max())
    elif form == "printed":
        f_minus = np.roll(f.values, shift)
        c_plus = np.cos(theta + two_pi_alpha) + V / 2.0 - E / 2.0
        c_minus = -np.cos(theta - two_pi_alpha) + V / 2.0 + E / 2.0
        r = c_plus * f_plus - c_minus * f_minus
        scale = max(np.abs(c_plus).max(), np.abs(c_minus).max())
    else:
        raise ValueError(f"form must be 'derived' or 'printed', got {form!r}")
    return float(np.linalg.norm(r) / (f.norm * scale))
