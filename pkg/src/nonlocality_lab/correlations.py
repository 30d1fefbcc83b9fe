"""Phenomenological layer for binary-input/binary-output boxes.

A two-party box is described by its conditional outcome distribution
P(a, b | x, y) with settings x, y and outcomes a, b all in {0, 1}.  This
module provides the probability-table container, the correlation functional,
the CHSH combination with its three-way classification (local / quantum
nonlocal / superquantum), and formal checkers for no-signaling, outcome
independence (OI), parameter independence (PI) and full locality.

Sign convention, used everywhere in the toolkit: bit 0 maps to +1 and bit 1
maps to -1, i.e. sign = 1 - 2*bit.  A correlation is then
E(x, y) = P(equal signs | x, y) - P(unequal signs | x, y).

All values are immutable after construction and safe to share between
threads or processes.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ATOL",
    "TSIRELSON_BOUND",
    "NonlocalityClass",
    "BoxTable",
    "CorrelationSet",
    "ChshReport",
    "OutcomeWitness",
    "ParameterWitness",
    "NoSignalingResult",
    "IndependenceResult",
    "sign_of_bit",
    "correlation_from_table",
    "classify_chsh",
    "chsh_value",
    "check_no_signaling",
    "check_outcome_independence",
    "check_parameter_independence",
    "locality_check",
]

#: Default absolute tolerance for table-level equality checks.  Tables built
#: from Monte Carlo estimates should pass an explicit looser tolerance.
ATOL = 1e-12

#: Quantum-mechanical maximum of |F|.
TSIRELSON_BOUND = 2.0 * math.sqrt(2.0)

BITS = (0, 1)


class NonlocalityClass(enum.Enum):
    """Classification of a CHSH value |f|: local (<= 2), quantum nonlocal
    (<= 2*sqrt(2)) or superquantum (anything beyond, up to the algebraic 4).

    Boundary values fall in the weaker class: both bounds are non-strict.
    """

    LOCAL = "local"
    QUANTUM_NONLOCAL = "quantum_nonlocal"
    SUPERQUANTUM = "superquantum"

    def __str__(self) -> str:  # CSV / CLI friendly
        return self.value


def sign_of_bit(bit: int) -> int:
    """Map an outcome bit to its sign: 0 -> +1, 1 -> -1."""
    if bit not in BITS:
        raise ValueError(f"outcome bit must be 0 or 1, got {bit!r}")
    return 1 - 2 * bit


class BoxTable:
    """Conditional outcome distribution P(a, b | x, y), all indices binary.

    The table is stored as a read-only array of shape (2, 2, 2, 2) indexed
    [x, y, a, b].  Construction validates that every entry lies in [0, 1]
    and that each setting row sums to 1 within ``ATOL``.
    """

    __slots__ = ("_probs",)

    def __init__(self, probs: np.ndarray):
        arr = np.asarray(probs, dtype=float)
        if arr.shape != (2, 2, 2, 2):
            raise ValueError(f"expected shape (2, 2, 2, 2), got {arr.shape}")
        if np.any(arr < -ATOL) or np.any(arr > 1.0 + ATOL):
            raise ValueError("probabilities must lie in [0, 1]")
        row_sums = arr.sum(axis=(2, 3))
        if np.any(np.abs(row_sums - 1.0) > ATOL):
            raise ValueError(f"setting rows must sum to 1, got {row_sums!r}")
        arr = arr.copy()
        arr.flags.writeable = False
        self._probs = arr

    @property
    def probs(self) -> np.ndarray:
        return self._probs

    def prob(self, x: int, y: int, a: int, b: int) -> float:
        return float(self._probs[x, y, a, b])

    def marginal_a(self, x: int, y: int, a: int) -> float:
        """P(a | x, y)."""
        return float(self._probs[x, y, a, :].sum())

    def marginal_b(self, x: int, y: int, b: int) -> float:
        """P(b | x, y)."""
        return float(self._probs[x, y, :, b].sum())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BoxTable):
            return NotImplemented
        return bool(np.array_equal(self._probs, other._probs))

    def __hash__(self) -> int:
        return hash(self._probs.tobytes())

    def __repr__(self) -> str:
        return f"BoxTable({self._probs.tolist()!r})"

    # -- JSON wire format: {"x,y": [P(0,0), P(0,1), P(1,0), P(1,1)], ...} --

    def to_json(self) -> str:
        obj = {
            f"{x},{y}": [self.prob(x, y, a, b) for a in BITS for b in BITS]
            for x in BITS
            for y in BITS
        }
        return json.dumps(obj)

    @classmethod
    def from_json(cls, text: str) -> "BoxTable":
        obj = json.loads(text)
        arr = np.empty((2, 2, 2, 2))
        for x in BITS:
            for y in BITS:
                row = obj[f"{x},{y}"]
                if len(row) != 4:
                    raise ValueError(f"row {x},{y} must have 4 entries")
                arr[x, y] = np.asarray(row, dtype=float).reshape(2, 2)
        return cls(arr)


@dataclass(frozen=True)
class CorrelationSet:
    """The four correlations entering the CHSH combination."""

    e_ab: float
    e_ab_prime: float
    e_a_prime_b: float
    e_a_prime_b_prime: float

    def __post_init__(self):
        for name, value in self.__dict__.items():
            if not -1.0 - 1e-9 <= value <= 1.0 + 1e-9:
                raise ValueError(f"{name} = {value} outside [-1, 1]")


@dataclass(frozen=True)
class ChshReport:
    f: float
    nonlocality: NonlocalityClass


@dataclass(frozen=True)
class OutcomeWitness:
    """First tuple violating outcome independence.

    ``party`` is the side whose conditional changed ("a" or "b"), ``given``
    the conditioning outcome on the other side.
    """

    party: str
    x: int
    y: int
    given: int
    outcome: int
    conditional: float
    marginal: float


@dataclass(frozen=True)
class ParameterWitness:
    """First marginal found to depend on the remote setting."""

    party: str
    setting: int
    outcome: int
    prob_remote0: float
    prob_remote1: float


@dataclass(frozen=True)
class NoSignalingResult:
    ok: bool
    max_deviation: float


@dataclass(frozen=True)
class IndependenceResult:
    ok: bool
    max_deviation: float
    witness: OutcomeWitness | ParameterWitness | None


def correlation_from_table(table: BoxTable, x: int, y: int) -> float:
    """Correlation E(x, y) of sign-mapped outcomes for one setting pair.

    Returns P(equal signs | x, y) - P(unequal signs | x, y), in [-1, 1].
    """
    value = 0.0
    for a in BITS:
        for b in BITS:
            value += sign_of_bit(a) * sign_of_bit(b) * table.prob(x, y, a, b)
    return value


def classify_chsh(f: float) -> NonlocalityClass:
    if abs(f) <= 2.0:
        return NonlocalityClass.LOCAL
    if abs(f) <= TSIRELSON_BOUND:
        return NonlocalityClass.QUANTUM_NONLOCAL
    return NonlocalityClass.SUPERQUANTUM


def chsh_value(corr: CorrelationSet) -> ChshReport:
    """CHSH combination f = E(a,b) + E(a,b') + E(a',b) - E(a',b')."""
    f = corr.e_ab + corr.e_ab_prime + corr.e_a_prime_b - corr.e_a_prime_b_prime
    return ChshReport(f=f, nonlocality=classify_chsh(f))


def check_no_signaling(table: BoxTable, atol: float = ATOL) -> NoSignalingResult:
    """Marginals of each party must not depend on the remote setting."""
    deviation = 0.0
    for x in BITS:
        for a in BITS:
            deviation = max(
                deviation,
                abs(table.marginal_a(x, 0, a) - table.marginal_a(x, 1, a)),
            )
    for y in BITS:
        for b in BITS:
            deviation = max(
                deviation,
                abs(table.marginal_b(0, y, b) - table.marginal_b(1, y, b)),
            )
    return NoSignalingResult(ok=deviation <= atol, max_deviation=deviation)


def check_outcome_independence(
    table: BoxTable, atol: float = ATOL
) -> IndependenceResult:
    """P(a | x, y, b) = P(a | x, y) and symmetrically, wherever defined.

    Conditionals on zero-probability outcomes are skipped, not treated as
    violations.  The witness reports the first violating tuple in scan order
    (x, y, conditioning outcome, outcome), party "a" first.
    """
    witness = None
    deviation = 0.0
    for x in BITS:
        for y in BITS:
            for party in ("a", "b"):
                for given in BITS:
                    if party == "a":
                        denom = table.marginal_b(x, y, given)
                    else:
                        denom = table.marginal_a(x, y, given)
                    if denom <= atol:
                        continue
                    for outcome in BITS:
                        if party == "a":
                            joint = table.prob(x, y, outcome, given)
                            marginal = table.marginal_a(x, y, outcome)
                        else:
                            joint = table.prob(x, y, given, outcome)
                            marginal = table.marginal_b(x, y, outcome)
                        conditional = joint / denom
                        gap = abs(conditional - marginal)
                        deviation = max(deviation, gap)
                        if gap > atol and witness is None:
                            witness = OutcomeWitness(
                                party, x, y, given, outcome, conditional, marginal
                            )
    return IndependenceResult(
        ok=witness is None, max_deviation=deviation, witness=witness
    )


def check_parameter_independence(
    table: BoxTable, atol: float = ATOL
) -> IndependenceResult:
    """P(a | x, y) = P(a | x) and symmetrically.

    At the table level this coincides with marginal invariance under the
    remote setting (the no-signaling condition), but it additionally reports
    a witness for the first violating marginal.
    """
    witness = None
    deviation = 0.0
    for x in BITS:
        for a in BITS:
            p0 = table.marginal_a(x, 0, a)
            p1 = table.marginal_a(x, 1, a)
            gap = abs(p0 - p1)
            deviation = max(deviation, gap)
            if gap > atol and witness is None:
                witness = ParameterWitness("a", x, a, p0, p1)
    for y in BITS:
        for b in BITS:
            p0 = table.marginal_b(0, y, b)
            p1 = table.marginal_b(1, y, b)
            gap = abs(p0 - p1)
            deviation = max(deviation, gap)
            if gap > atol and witness is None:
                witness = ParameterWitness("b", y, b, p0, p1)
    return IndependenceResult(
        ok=witness is None, max_deviation=deviation, witness=witness
    )


def locality_check(table: BoxTable, atol: float = ATOL) -> bool:
    """True iff P(a, b | x, y) factorizes as P(a | x) P(b | y).

    Candidate marginals are read off the table itself (at remote setting 0);
    if the table factorizes at all, these are the factors.  Equivalent to
    the conjunction of outcome and parameter independence.
    """
    pa = np.array([[table.marginal_a(x, 0, a) for a in BITS] for x in BITS])
    pb = np.array([[table.marginal_b(0, y, b) for b in BITS] for y in BITS])
    for x in BITS:
        for y in BITS:
            for a in BITS:
                for b in BITS:
                    if abs(table.prob(x, y, a, b) - pa[x, a] * pb[y, b]) > atol:
                        return False
    return True
