from __future__ import annotations


class PreconditionError(ValueError):
    """An operation was called outside its documented domain."""


class NotInvertible(PreconditionError):
    def __init__(self, value: int, modulus: int, gcd: int) -> None:
        super().__init__(f"{value} is not invertible modulo {modulus} (gcd {gcd})")
        self.gcd = gcd


class NotAUnit(PreconditionError):
    def __init__(self, value: int, modulus: int, gcd: int) -> None:
        super().__init__(f"{value} is a non-unit modulo {modulus}: gcd {gcd}")
        self.gcd = gcd


class NotCoprime(PreconditionError):
    def __init__(self, n: int, s: int, gcd: int) -> None:
        super().__init__(f"N = {n} and s = {s} are not coprime (gcd {gcd})")
        self.gcd = gcd


class ConditionViolated(PreconditionError):
    """The lattice size condition does not hold for the requested interval."""


class DegenerateLattice(PreconditionError):
    """The basis rows are linearly dependent."""


class OracleCapExceeded(PreconditionError):
    """A reference oracle was asked for an input above its size cap."""


class ParamsDegenerate(ValueError):
    """Lattice parameters collapsed (G <= 1); the caller scans the range instead."""


class InvariantError(RuntimeError):
    """An internal invariant failed; this signals a bug, not bad input."""
