"""Exception types raised across the package."""


class UnsupportedWeightError(ValueError):
    """Weight (or index, or type) outside the supported generality:
    even integral weight, integral index, trivial type."""


class PrecisionError(ValueError):
    """Requested precision is too small for truncation to be injective."""


class PrecisionCapError(RuntimeError):
    """The precision escalation loop hit its hard cap."""

    def __init__(self, weight, cap, last_dim, target_dim):
        self.weight = weight
        self.cap = cap
        self.last_dim = last_dim
        self.target_dim = target_dim
        if last_dim is None:
            detail = "before any precision could be tried"
        else:
            detail = f"with dim FM_B={last_dim} != dim M_k={target_dim}"
        super().__init__(f"weight {weight}: precision cap B={cap} reached {detail}")


class SymmetryError(ValueError):
    """A formal Fourier-Jacobi truncation violates c(phi_m; n, r) = c(phi_n; m, r)."""

    def __init__(self, triple, left, right):
        self.triple = triple
        super().__init__(f"symmetry violated at (n, r, m) = {triple}: {left} != {right}")


class ParseError(ValueError):
    def __init__(self, lineno, message):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")
