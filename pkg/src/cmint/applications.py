"""Humbert surface intersections, bad-reduction primes, denominator bounds."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .bm import bm_full
from .cmfield import CMFieldData
from .errors import InputError, InternalConsistencyError
from .logcombo import LogCombo
from .numutil import is_perfect_square


def humbert_intersection(field: CMFieldData, m: int) -> LogCombo:
    """Intersection with the m-th Humbert surface: ½·Σ b_{(Dm−n²)/4}."""
    if m < 1:
        raise InputError("need m >= 1")
    if is_perfect_square(field.D * m):
        raise InputError("D*m must not be a perfect square")
    total = LogCombo()
    for n in range(1, isqrt(field.D * m) + 1):
        num = field.D * m - n * n
        if num % 4 == 0:
            total = total + bm_full(field, num // 4)
    return total.scaled(Fraction(1, 2))


@dataclass(frozen=True)
class BadReductionCertificate:
    field: CMFieldData
    indices: tuple[int, ...]
    per_prime: tuple[tuple[int, int], ...]
    bad_primes: tuple[int, ...]
    bound: Fraction


def _genus_two_sum(field: CMFieldData) -> LogCombo:
    total = LogCombo()
    for n in range(1, isqrt(field.D - 1) + 1, 2):
        total = total + bm_full(field, (field.D - n * n) // 4)
    return total


def bad_reduction_primes(field: CMFieldData) -> BadReductionCertificate:
    """Primes where the CM abelian surfaces degenerate to a product."""
    if field.mode != "strict":
        raise InputError("bad-reduction certificates require strict mode")
    indices = tuple((field.D - n * n) // 4 for n in range(1, isqrt(field.D - 1) + 1, 2))
    total = _genus_two_sum(field)
    bound = Fraction(field.D * field.dtilde, 64)
    bad = []
    for l, c in total.coeffs:
        if c:
            if l > bound:
                raise InternalConsistencyError(
                    f"certified prime {l} exceeds the bound {bound}"
                )
            bad.append(l)
    return BadReductionCertificate(
        field,
        indices,
        tuple((l, int(c)) for l, c in total.coeffs),
        tuple(bad),
        bound,
    )


def igusa_denominator_bounds(field: CMFieldData) -> dict[str, dict[int, int]]:
    """Prime-exponent bounds for the denominators of I1, I2, I3 at the CM point."""
    if field.mode != "strict":
        raise InputError("denominator bounds require strict mode")
    total = _genus_two_sum(field)
    out: dict[str, dict[int, int]] = {}
    for name, k in (("A1", 3), ("A2", 2), ("A3", 2)):
        exps: dict[int, int] = {}
        for p, c in total.coeffs:
            e = k * field.w_k * c
            if Fraction(e).denominator != 1:
                raise InternalConsistencyError(
                    f"non-integral exponent {e} at p={p} in {name}"
                )
            if e:
                exps[p] = int(e)
        out[name] = exps
    return out
