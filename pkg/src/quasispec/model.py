"""Lattice Hamiltonian with unit hopping and the complex cotangent potential.

Sites are indexed n = 1..L. The on-site term at site n is
``V * i * cot(pi * (alpha * n + phase))``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from quasispec.errors import SingularPotential

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class Boundary(str, enum.Enum):
    OPEN = "open"
    PERIODIC = "periodic"


@dataclass(frozen=True)
class ModelParams:
    L: int = 610
    V: float = 1.0
    alpha: float = GOLDEN
    phase: float = 0.0
    bc: Boundary = Boundary.OPEN
    singular_eps: float = 1e-12

    def __post_init__(self):
        if isinstance(self.L, bool) or int(self.L) != self.L:
            raise ValueError(f"L must be an integer, got {self.L!r}")
        object.__setattr__(self, "L", int(self.L))
        object.__setattr__(self, "bc", Boundary(self.bc))
        for name in ("V", "alpha", "phase", "singular_eps"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        if self.L < 2:
            raise ValueError(f"L must satisfy L >= 2, got L={self.L}")
        if self.V < 0:
            raise ValueError(f"V must satisfy V >= 0, got V={self.V}")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got alpha={self.alpha}")
        if not 0.0 <= self.phase < 1.0:
            raise ValueError(f"phase must lie in [0, 1), got phase={self.phase}")
        if self.singular_eps <= 0:
            raise ValueError(f"singular_eps must be > 0, got {self.singular_eps}")

    def with_(self, **changes) -> ModelParams:
        return replace(self, **changes)


def _sin_cos(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # reduce mod 1 before multiplying by pi: keeps sin(pi * k) exactly 0 for integer k
    frac = np.mod(x, 1.0)
    return np.sin(np.pi * frac), np.cos(np.pi * frac)


def potential_array(sites: np.ndarray, V: float, alpha: float, phase: float, singular_eps: float) -> np.ndarray:
    """Vectorised on-site potential for arbitrary integer sites.

    Raises SingularPotential for the first site whose ``|sin|`` falls below
    ``singular_eps``.
    """
    sites = np.asarray(sites)
    s, c = _sin_cos(alpha * sites + phase)
    bad = np.abs(s) < singular_eps
    if bad.any():
        k = int(np.argmax(bad))
        raise SingularPotential(int(sites[k]), float(abs(s[k])), singular_eps)
    return 1j * V * (c / s)


def potential(n: int, p: ModelParams) -> complex:
    if not 1 <= n <= p.L:
        raise ValueError(f"site index must satisfy 1 <= n <= L={p.L}, got n={n}")
    value = potential_array(np.array([n]), p.V, p.alpha, p.phase, p.singular_eps)[0]
    return complex(0.0, value.imag)


def onsite(p: ModelParams) -> np.ndarray:
    """Diagonal of the Hamiltonian, sites 1..L."""
    v = potential_array(np.arange(1, p.L + 1), p.V, p.alpha, p.phase, p.singular_eps)
    # exact zero real part; avoids -0.0 noise from 1j * finite
    return 1j * v.imag


def build_hamiltonian(p: ModelParams) -> np.ndarray:
    """Dense complex-symmetric Hamiltonian of shape (L, L)."""
    L = p.L
    h = np.zeros((L, L), dtype=np.complex128)
    h[np.arange(L), np.arange(L)] = onsite(p)
    idx = np.arange(L - 1)
    h[idx, idx + 1] = 1.0
    h[idx + 1, idx] = 1.0
    if p.bc is Boundary.PERIODIC:
        # assignment, not addition: for L == 2 the corner is the bond itself
        h[0, L - 1] = 1.0
        h[L - 1, 0] = 1.0
    return h


def duality_phase(L: int) -> float:
    """Phase offset used with rational approximants: keeps alpha*n + phase off the integers."""
    return 1.0 / (2.0 * L)
