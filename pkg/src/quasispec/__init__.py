"""Spectra, Lyapunov exponents and localization diagnostics for the
non-Hermitian quasiperiodic chain with on-site potential ``V i cot(pi (alpha n + phase))``."""

from quasispec._version import __version__
from quasispec.errors import (
    DegenerateEigenvector,
    DomainError,
    GridMismatch,
    NoConvergence,
    NotNormalized,
    QuasispecError,
    SingularPotential,
)
from quasispec.model import GOLDEN, Boundary, ModelParams, build_hamiltonian, potential
from quasispec.eigen import Eigenpair, SchurDecomposition, eigenpairs, eigenvalues
from quasispec.lyapunov import LyapunovEstimate, band_interval, le_analytic, le_transfer
from quasispec.observables import ClassTag, SpectralClass, StateDiagnostics, classify, diagnose_spectrum, ipr


__all__ = [
    "__version__",
    "GOLDEN",
    "Boundary",
    "ModelParams",
    "build_hamiltonian",
    "potential",
    "Eigenpair",
    "SchurDecomposition",
    "eigenpairs",
    "eigenvalues",
    "LyapunovEstimate",
    "band_interval",
    "le_analytic",
    "le_transfer",
    "ClassTag",
    "SpectralClass",
    "StateDiagnostics",
    "classify",
    "diagnose_spectrum",
    "ipr",
    "QuasispecError",
    "SingularPotential",
    "NoConvergence",
    "DegenerateEigenvector",
    "DomainError",
    "NotNormalized",
    "GridMismatch",
]
