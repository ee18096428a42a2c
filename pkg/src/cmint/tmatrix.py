"""Positive definite 2×2 matrices attached to admissible (m, n, μ) triples.

For 0 < n < m√D̃ with D | m²D̃ − n², the linear conditions

    det T = (m²D̃ − n²)/(Dm²),
    Δ  = (2μn₁ − Dc − (2b + Dc)√D)/2          (n₁ = n/m),
    −μn₁ = a + Db + (D² − D)/4 · c,

have a unique solution T = [[a, b], [b, c]]; the triple is admissible when
m·T is integral and T is positive definite. For D ∤ n exactly one sign μ is
admissible; for D | n both are.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cmfield import CMFieldData
from .errors import InputError, InternalConsistencyError


@dataclass(frozen=True)
class TMatrix:
    a: Fraction
    b: Fraction
    c: Fraction
    m: int
    n: int
    mu: int

    @property
    def det(self) -> Fraction:
        return self.a * self.c - self.b * self.b

    @property
    def entries(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c)


def t_matrix(field: CMFieldData, m: int, n: int, mu: int) -> TMatrix | None:
    """The matrix for (m, n, μ), or None when the triple is inadmissible."""
    if m < 1 or mu not in (1, -1):
        raise InputError("need m >= 1 and mu = ±1")
    if n <= 0 or n * n >= m * m * field.dtilde:
        raise InputError("need 0 < n < m·√D̃")
    if (m * m * field.dtilde - n * n) % field.D:
        raise InputError("need D | m²·D̃ − n²")
    D = field.D
    d0 = Fraction(field.delta.x, field.delta.den)
    d1 = Fraction(field.delta.y, field.delta.den)
    n1 = Fraction(n, m)
    c = (2 * mu * n1 - 2 * d0) / D
    b = -d1 - D * c / 2
    a = -mu * n1 - D * b - Fraction(D * D - D, 4) * c
    if a <= 0:
        return None
    if any((m * v).denominator != 1 for v in (a, b, c)):
        return None
    T = TMatrix(a, b, c, m, n, mu)
    if T.det != Fraction(m * m * field.dtilde - n * n, D * m * m):
        raise InternalConsistencyError("determinant identity failed")
    return T


def mu_candidates(field: CMFieldData, m: int, n: int) -> tuple[int, ...]:
    """The admissible signs for (m, n): (1, -1) when D | n, one sign otherwise."""
    ok = tuple(mu for mu in (1, -1) if t_matrix(field, m, n, mu) is not None)
    if n % field.D == 0:
        if ok != (1, -1):
            raise InternalConsistencyError(
                f"both signs must be admissible when D | n; got {ok} for (m={m}, n={n})"
            )
    elif len(ok) != 1:
        raise InternalConsistencyError(
            f"exactly one sign must be admissible when D ∤ n; got {ok} for (m={m}, n={n})"
        )
    return ok
