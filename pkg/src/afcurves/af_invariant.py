"""Abelianized invariant of a stationary AF-algebra.

Given a nonnegative unimodular incidence matrix A (some power strictly
positive) and an integer polynomial p with p(0) = +-1, the invariant is the
finitely generated abelian group Z^n / p(A) Z^n, read off the Smith normal
form of p(A).  The group is unchanged by GL_n(Z) conjugation of A, which the
probe harness checks empirically on random conjugates.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .exact_linalg import (
    IntMatrix,
    IntPolynomial,
    determinant,
    is_unimodular,
    mat_poly_eval,
    random_glnz,
    snf,
    unimodular_inverse,
)


class NotUnimodular(ValueError):
    pass


class NegativeEntry(ValueError):
    pass


class NeverStrictlyPositive(ValueError):
    pass


class BadConstantTerm(ValueError):
    pass


BOWEN_FRANKS_POLY = IntPolynomial([-1, 1])  # x - 1


@dataclass(frozen=True)
class AbelianGroup:
    """Normal form of a finitely generated abelian group.

    torsion is the divisibility chain of elementary divisors (each >= 2,
    each dividing the next, factors equal to 1 dropped); free_rank counts
    the Z summands.  Structural equality of (torsion, free_rank) is group
    equality because this form is canonical.
    """

    torsion: tuple
    free_rank: int = 0

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        object.__setattr__(self, "torsion", tuple(int(g) for g in self.torsion))
        for g in self.torsion:
            if g < 2:
                raise ValueError("elementary divisors must be >= 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError("elementary divisors must form a divisibility chain")

    @classmethod
    def from_smith_diagonal(cls, d) -> "AbelianGroup":
        torsion = tuple(x for x in d if x > 1)
        free_rank = sum(1 for x in d if x == 0)
        return cls(torsion, free_rank)

    @property
    def is_trivial(self) -> bool:
        return not self.torsion and self.free_rank == 0

    def order(self):
        """Group order, or None when the group is infinite."""
        if self.free_rank > 0:
            return None
        n = 1
        for g in self.torsion:
            n *= g
        return n

    def exponent(self):
        """Largest elementary divisor (lcm of all, by the chain), 1 if free/trivial."""
        return self.torsion[-1] if self.torsion else 1

    def __str__(self):
        parts = [f"Z_{g}" for g in self.torsion]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "trivial"


@dataclass(frozen=True)
class IncidenceMatrix:
    """Validated incidence matrix: nonnegative, unimodular, primitive.

    positivity_power is the least k >= 1 with every entry of m^k >= 1.
    """

    m: IntMatrix
    positivity_power: int

    @property
    def n(self) -> int:
        return self.m.n


def validate_incidence(m: IntMatrix, power_bound: int | None = None) -> IncidenceMatrix:
    """Wrap m as an IncidenceMatrix, or reject it.

    Raises NegativeEntry, NotUnimodular, or NeverStrictlyPositive (the last
    when no power up to power_bound, default 2*n^2, is strictly positive).
    """
    if not m.is_nonnegative():
        raise NegativeEntry(f"incidence matrix entries must be nonnegative: {m.rows}")
    if not is_unimodular(m):
        raise NotUnimodular(f"|det| must be 1, got det = {determinant(m)}")
    if power_bound is None:
        power_bound = 2 * m.n * m.n
    power = m
    for k in range(1, power_bound + 1):
        if power.is_strictly_positive():
            return IncidenceMatrix(m, k)
        power = power @ m
    raise NeverStrictlyPositive(
        f"no power up to {power_bound} is strictly positive; matrix is not primitive"
    )


def quotient_group(m: IntMatrix, p: IntPolynomial) -> AbelianGroup:
    """Z^n / p(m) Z^n for an arbitrary square integer matrix m.

    Defined for any m (the incidence constraints matter for the AF-algebra
    interpretation, not for the quotient itself); requires p(0) = +-1.
    """
    if p.constant_term not in (1, -1):
        raise BadConstantTerm(
            f"constant term must be +1 or -1, got {p.constant_term}"
        )
    return AbelianGroup.from_smith_diagonal(snf(mat_poly_eval(p, m)).d)


def abelianize(a: IncidenceMatrix, p: IntPolynomial) -> AbelianGroup:
    """The invariant Z^n / p(A) Z^n of the AF-algebra with incidence matrix A."""
    return quotient_group(a.m, p)


def bowen_franks(a: IncidenceMatrix) -> AbelianGroup:
    """Z^n / (A - I) Z^n; its order equals |det(A - I)| when that is nonzero."""
    return abelianize(a, BOWEN_FRANKS_POLY)


@dataclass(frozen=True)
class ProbeReport:
    """Outcome of a similarity-invariance probe.

    failures counts trials where the conjugated invariant differed from the
    base one; invariance predicts 0.  mismatches lists (trial, group) pairs
    for any failures, for diagnosis.
    """

    matrix: IntMatrix
    polynomial: IntPolynomial
    trials: int
    failures: int
    group: AbelianGroup
    seed: int
    mismatches: tuple = ()


def invariance_probe(
    a: IncidenceMatrix,
    p: IntPolynomial,
    trials: int = 100,
    seed: int = 0,
    steps: int = 20,
) -> ProbeReport:
    """Check Z^n/p(A')Z^n = Z^n/p(A)Z^n over random conjugates A' = B A B^-1.

    B is drawn from random_glnz, so |det B| = 1 and the exact inverse comes
    from the adjugate.  The conjugate may have negative entries; the
    quotient group is still defined and must match.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    base = quotient_group(a.m, p)
    rng = random.Random(seed)
    failures = 0
    mismatches = []
    for trial in range(trials):
        b = random_glnz(a.n, steps=steps, seed=rng.randrange(2**63))
        conjugate = (b @ a.m) @ unimodular_inverse(b)
        group = quotient_group(conjugate, p)
        if group != base:
            failures += 1
            mismatches.append((trial, group))
    return ProbeReport(
        matrix=a.m,
        polynomial=p,
        trials=trials,
        failures=failures,
        group=base,
        seed=seed,
        mismatches=tuple(mismatches),
    )
