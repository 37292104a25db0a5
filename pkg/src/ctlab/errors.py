"""Exception taxonomy and computation budgets shared by every subsystem."""

from __future__ import annotations

import os
from dataclasses import dataclass


class CTLabError(Exception):
    """Base class for all library errors."""


# permutation / group layer
class InvalidPermutation(CTLabError):
    pass


class NotASubgroup(CTLabError):
    pass


class NotNormal(CTLabError):
    pass


class NotSolvable(CTLabError):
    pass


class NotAHomomorphism(CTLabError):
    pass


class Timeout(CTLabError):
    """A search exceeded its node budget."""


class BudgetExceeded(CTLabError):
    pass


# exact arithmetic layer
class LiftInconsistent(CTLabError):
    pass


class NotAlgebraicInteger(CTLabError):
    pass


# modular layer
class AmbiguousBasicSet(CTLabError):
    pass


class NonIntegralDecomposition(CTLabError):
    pass


class NotCentralPPrime(CTLabError):
    pass


class NoSuchBlock(CTLabError):
    pass


class MissingDefectGroup(CTLabError):
    pass


class NotCentral(CTLabError):
    pass


# constructions
class UnsupportedFamily(CTLabError):
    pass


class ActionNotWellDefined(CTLabError):
    pass


class InvalidWitness(CTLabError):
    pass


class ActionKernelMismatch(CTLabError):
    pass


class DegenerateStep(CTLabError):
    """Raised when a tower step hits the abelian q = p corner where the
    construction cannot produce a faithful witness."""

    def __init__(self, message, level=None):
        super().__init__(message)
        self.level = level


class NotRegularOnIBr(CTLabError):
    pass


class TrivialQAction(CTLabError):
    pass


class HypothesisFails(CTLabError):
    """Stabilizer inequality fails; carries a witness orbit representative."""

    def __init__(self, message, witness=None, orbit_size=None, stab_order=None):
        super().__init__(message)
        self.witness = witness
        self.orbit_size = orbit_size
        self.stab_order = stab_order


# parsing
class ParseError(CTLabError):
    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class ArityError(ParseError):
    pass


@dataclass(frozen=True)
class Budget:
    """Cost guards for the exact engines.

    ``max_order`` caps character-table computations, ``max_classes`` the
    class count fed to the eigenvalue splitting, ``scan_limit`` the element
    scans used by normalizer/centralizer searches.
    """

    max_order: int = 20_000
    max_classes: int = 150
    scan_limit: int = 60_000

    @staticmethod
    def from_env() -> "Budget":
        raw = os.environ.get("CTLAB_BUDGET")
        if not raw:
            return Budget()
        return Budget(max_order=int(raw))


DEFAULT_BUDGET = Budget.from_env()
