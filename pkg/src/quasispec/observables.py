"""Inverse participation ratio and real-band / imaginary-axis classification."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from quasispec.eigen import Eigenpair
from quasispec.errors import NotNormalized
from quasispec.lyapunov import band_interval, le_analytic
from quasispec.model import ModelParams

NORM_TOL = 1e-10
DEFAULT_RE_TOL = 1e-6
DEFAULT_IM_TOL = 1e-6


class ClassTag(str, enum.Enum):
    REAL_BAND = "RealBand"
    IMAGINARY_AXIS = "ImaginaryAxis"
    OTHER = "Other"


@dataclass(frozen=True)
class SpectralClass:
    tag: ClassTag
    re_tol: float
    im_tol: float


@dataclass(frozen=True)
class StateDiagnostics:
    ipr: float
    spectral_class: SpectralClass
    gamma_analytic: float
    value: complex


def ipr(psi: np.ndarray) -> float:
    psi = np.asarray(psi)
    w = np.abs(psi) ** 2
    norm = float(np.sqrt(w.sum()))
    if abs(norm - 1.0) > NORM_TOL:
        raise NotNormalized(f"IPR needs a unit vector, got norm {norm!r}")
    return float(np.sum(w * w))


def classify(E: complex, V: float, re_tol: float = DEFAULT_RE_TOL, im_tol: float = DEFAULT_IM_TOL) -> SpectralClass:
    if re_tol <= 0 or im_tol <= 0:
        raise ValueError(f"tolerances must be > 0, got re_tol={re_tol}, im_tol={im_tol}")
    E = complex(E)
    band = band_interval(V)
    if abs(E.imag) <= im_tol and band is not None and band[0] - re_tol <= E.real <= band[1] + re_tol:
        tag = ClassTag.REAL_BAND
    elif abs(E.real) <= re_tol and abs(E.imag) > im_tol:
        tag = ClassTag.IMAGINARY_AXIS
    else:
        tag = ClassTag.OTHER
    return SpectralClass(tag, re_tol, im_tol)


def diagnose_spectrum(
    pairs: list[Eigenpair],
    p: ModelParams,
    re_tol: float = DEFAULT_RE_TOL,
    im_tol: float = DEFAULT_IM_TOL,
) -> list[StateDiagnostics]:
    return [
        StateDiagnostics(
            ipr=ipr(pair.vector),
            spectral_class=classify(pair.value, p.V, re_tol, im_tol),
            gamma_analytic=le_analytic(pair.value, p.V),
            value=pair.value,
        )
        for pair in pairs
    ]


def class_counts(diags: list[StateDiagnostics]) -> dict[ClassTag, int]:
    counts = {tag: 0 for tag in ClassTag}
    for d in diags:
        counts[d.spectral_class.tag] += 1
    return counts
