"""Exception hierarchy. Validation errors subclass ValueError, numerical
failures subclass ArithmeticError so the CLI can map them to exit codes."""


class QuasispecError(Exception):
    pass


class SingularPotential(QuasispecError, ArithmeticError):
    def __init__(self, site: int, sin_value: float, eps: float):
        self.site = site
        self.sin_value = sin_value
        self.eps = eps
        super().__init__(
            f"cot potential singular at site n={site}: |sin| = {sin_value:.3e} < singular_eps = {eps:.1e}"
        )


class NoConvergence(QuasispecError, ArithmeticError):
    def __init__(self, index: int, sweeps: int):
        self.index = index
        self.sweeps = sweeps
        super().__init__(f"QR iteration did not deflate eigenvalue {index} within {sweeps} sweeps")


class DegenerateEigenvector(QuasispecError, ArithmeticError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"back-substitution failed for eigenvector {index} even after pivot perturbation")


class DomainError(QuasispecError, ArithmeticError):
    pass


class NotNormalized(QuasispecError, ValueError):
    pass


class GridMismatch(QuasispecError, ValueError):
    pass
