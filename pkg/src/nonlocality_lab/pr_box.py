"""The Popescu-Rohrlich box and its deterministic hidden-variable model.

The PR box is the extremal no-signaling device: binary inputs x, y and
binary outputs a, b constrained by a + b = x*y (mod 2), with uniformly
random outputs.  It saturates the algebraic CHSH maximum F = 4.  A single
hidden bit reproduces the box deterministically:

    a = (x + lam) mod 2,    b = (x + lam - x*y) mod 2.

The output b depends on the remote input x, which is where the nonlocality
of the realization sits.
"""

from __future__ import annotations

import numpy as np

from .correlations import (
    ATOL,
    BITS,
    BoxTable,
    ChshReport,
    CorrelationSet,
    chsh_value,
    correlation_from_table,
)

__all__ = [
    "pr_relation_holds",
    "pr_hidden_outputs",
    "pr_ideal_table",
    "pr_table_from_hidden",
    "pr_chsh",
]


def pr_relation_holds(x: int, y: int, a: int, b: int) -> bool:
    """The defining constraint a + b = x*y (mod 2)."""
    return (a + b) % 2 == (x * y) % 2


def _check_bit(name: str, value: int) -> int:
    if value not in BITS:
        raise ValueError(f"{name} must be 0 or 1, got {value!r}")
    return value


def pr_hidden_outputs(x: int, y: int, lam: int) -> tuple[int, int]:
    """Deterministic outputs of the one-bit hidden-variable model."""
    _check_bit("x", x)
    _check_bit("y", y)
    _check_bit("lam", lam)
    a = (x + lam) % 2
    b = (x + lam - x * y) % 2
    return a, b


def pr_ideal_table() -> BoxTable:
    """The ideal PR box: the two pairs allowed by the constraint get 1/2 each."""
    probs = np.zeros((2, 2, 2, 2))
    for x in BITS:
        for y in BITS:
            for a in BITS:
                for b in BITS:
                    if pr_relation_holds(x, y, a, b):
                        probs[x, y, a, b] = 0.5
    return BoxTable(probs)


def pr_table_from_hidden(prior: tuple[float, float] = (0.5, 0.5)) -> BoxTable:
    """Box table obtained by averaging the deterministic model over lam.

    ``prior`` is (P(lam=0), P(lam=1)); with the fair prior this reproduces
    ``pr_ideal_table`` exactly.  Degenerate priors give deterministic tables
    that still satisfy the PR constraint but leak the remote input into the
    marginals (parameter independence fails).
    """
    p0, p1 = float(prior[0]), float(prior[1])
    if p0 < 0.0 or p1 < 0.0 or abs(p0 + p1 - 1.0) > ATOL:
        raise ValueError(f"prior must be non-negative and sum to 1, got {prior!r}")
    probs = np.zeros((2, 2, 2, 2))
    for x in BITS:
        for y in BITS:
            for lam, weight in ((0, p0), (1, p1)):
                a, b = pr_hidden_outputs(x, y, lam)
                probs[x, y, a, b] += weight
    return BoxTable(probs)


def pr_chsh() -> ChshReport:
    """CHSH report of the ideal box: f = 4 exactly, superquantum."""
    table = pr_ideal_table()
    corr = CorrelationSet(
        e_ab=correlation_from_table(table, 0, 0),
        e_ab_prime=correlation_from_table(table, 0, 1),
        e_a_prime_b=correlation_from_table(table, 1, 0),
        e_a_prime_b_prime=correlation_from_table(table, 1, 1),
    )
    return chsh_value(corr)
