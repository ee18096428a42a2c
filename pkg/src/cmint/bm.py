"""The multiplicities b_m(p) by two independent routes.

Route (a) is the definitional ideal count: sum over signed n with
t = (n + m√D̃)/(2D) in the inverse relative different, of local terms at the
non-split spots over p. Route (b) is the closed product formula over primes
dividing (m²D̃ − n²)/(4D), valid for squarefree m coprime to 2DD̃p. Whenever
route (b) applies, the two are compared and a mismatch is a hard error.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from .cmfield import CMFieldData, classify_in_reflex_cm, rho
from .errors import InputError, InternalConsistencyError
from .localdensity import LocalFactorInput, b_l_factor
from .logcombo import LogCombo
from .numutil import is_prime, is_squarefree, ord_p, prime_factors
from .quadfield import QuadElem, ord_at, splitting
from .tmatrix import mu_candidates, t_matrix


@dataclass(frozen=True)
class BmEntry:
    p: int
    b: int
    route_a: int
    route_b: int | None
    per_n: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class BmReport:
    field: CMFieldData
    m: int
    entries: tuple[BmEntry, ...]
    flags: tuple[str, ...]


@dataclass(frozen=True)
class _RouteA:
    totals: tuple[tuple[int, int], ...]
    per_n: tuple[tuple[int, int, int], ...]  # (p, signed n, term)
    flags: tuple[str, ...]
    dyadic_relaxed: bool


@lru_cache(maxsize=None)
def _kind(field: CMFieldData, spot) -> str:
    return classify_in_reflex_cm(field, spot)


@lru_cache(maxsize=4096)
def _route_a(field: CMFieldData, m: int) -> _RouteA:
    """One scan over signed n computing every prime's definitional terms."""
    D, Dt = field.D, field.dtilde
    Ft = field.reflex
    rel = dict(field.rel_diff)
    rel_primes = {s.l for s in rel}
    dyadic_relaxed = 2 in rel_primes
    fourD = 4 * D
    m2dt = m * m * Dt
    nmax = isqrt(m2dt - 1)
    totals: dict[int, int] = {}
    per_n: list[tuple[int, int, int]] = []
    passing: dict[int, set[int]] = {}
    for n in range(-nmax, nmax + 1):
        big_n = m2dt - n * n
        # membership forces 4D | m²D̃ − n² while the different is odd; only
        # the D-part survives when a dyadic entry relaxes the constraint at 2
        if big_n % (D if dyadic_relaxed else fourD):
            continue
        e = QuadElem(Ft, n, m, 1)
        vec: dict = {}
        ok = True
        for l in sorted(set(prime_factors(big_n)) | {2, D} | rel_primes):
            o2d = ord_p(2 * D, l)
            for spot in splitting(Ft, l):
                exp = ord_at(e, spot) - o2d * spot.e + rel.get(spot, 0)
                if exp < 0:
                    ok = False
                    break
                if exp:
                    vec[spot] = exp
            if not ok:
                break
        if not ok:
            continue
        if n:
            passing.setdefault(abs(n), set()).add(1 if n > 0 else -1)
        for spot, exp in vec.items():
            if _kind(field, spot) == "split":
                continue
            ordt = exp - rel.get(spot, 0)
            adj = dict(vec)
            adj[spot] = exp - 1
            r = rho(field, tuple(adj.items()))
            if r == 0:
                continue
            term = (ordt + 1) * r * spot.f
            p = spot.l
            totals[p] = totals.get(p, 0) + term
            per_n.append((p, n, term))
    flags = tuple(
        f"dual-membership:|n|={k}"
        for k in sorted(passing)
        if k % D and len(passing[k]) == 2
    )
    return _RouteA(
        tuple(sorted(totals.items())),
        tuple(per_n),
        flags,
        dyadic_relaxed,
    )


@lru_cache(maxsize=None)
def support_primes(field: CMFieldData, m: int) -> tuple[int, ...]:
    """Primes dividing (m²D̃ − n²)/(4D) for some 0 <= n < m√D̃."""
    if m < 1:
        raise InputError("need m >= 1")
    D, Dt = field.D, field.dtilde
    out: set[int] = set()
    for n in range(isqrt(m * m * Dt - 1) + 1):
        big_n = m * m * Dt - n * n
        if big_n % (4 * D) == 0:
            out |= set(prime_factors(big_n // (4 * D)))
    return tuple(sorted(out))


def bm_p_definition(field: CMFieldData, m: int, p: int) -> int:
    """b_m(p) straight from the definitional ideal count."""
    if m < 1 or not is_prime(p):
        raise InputError("need m >= 1 and p prime")
    return dict(_route_a(field, m).totals).get(p, 0)


def bm_p_product(field: CMFieldData, m: int, p: int) -> int | None:
    """b_m(p) from the product formula; None when the guards fail."""
    if m < 1 or not is_prime(p):
        raise InputError("need m >= 1 and p prime")
    if not is_squarefree(m) or gcd(m, 2 * field.D * field.dtilde * p) != 1:
        return None
    D, Dt = field.D, field.dtilde
    fourD = 4 * D
    total = 0
    for n in range(1, isqrt(m * m * Dt - 1) + 1):
        big_n = m * m * Dt - n * n
        if big_n % fourD:
            continue
        quot = big_n // fourD
        if quot % p:
            continue
        mu_sum = 0
        for mu in mu_candidates(field, m, n):
            T = t_matrix(field, m, n, mu)
            prod = 1
            for l in prime_factors(quot):
                t_l = ord_p(quot, l) - 2 * ord_p(m, l)
                prod *= b_l_factor(LocalFactorInput(field, T, p, l, t_l))
                if prod == 0:
                    break
            mu_sum += prod
        total += (ord_p(quot, p) + 1) * mu_sum
    return total


@lru_cache(maxsize=4096)
def bm_report(field: CMFieldData, m: int) -> BmReport:
    """Both routes for every support prime, cross-checked."""
    ra = _route_a(field, m)
    totals = dict(ra.totals)
    support = support_primes(field, m)
    if not ra.dyadic_relaxed:
        stray = {p for p, v in totals.items() if v and p not in support}
        if stray:
            raise InternalConsistencyError(
                f"nonzero multiplicity outside the support primes: {sorted(stray)}"
            )
    entries = []
    for p in support:
        a_val = totals.get(p, 0)
        b_val = bm_p_product(field, m, p)
        if b_val is not None and b_val != a_val:
            raise InternalConsistencyError(
                f"route disagreement at p={p}, m={m}: {a_val} (definition) vs {b_val} (product)"
            )
        entries.append(
            BmEntry(p, a_val, a_val, b_val, tuple((n, t) for q, n, t in ra.per_n if q == p))
        )
    return BmReport(field, m, tuple(entries), ra.flags)


def bm_full(field: CMFieldData, m: int) -> LogCombo:
    """b_m = Σ_p b_m(p)·log p with the opportunistic route cross-check."""
    rep = bm_report(field, m)
    return LogCombo.from_dict({e.p: e.b for e in rep.entries})


def intersection_number(field: CMFieldData, m: int) -> LogCombo:
    """The arithmetic intersection multiplicity, ½·b_m."""
    return bm_full(field, m).scaled(Fraction(1, 2))


def report_json_obj(rep: BmReport) -> dict:
    f = rep.field
    return {
        "D": f.D,
        "delta": {"x": f.delta.x, "y": f.delta.y, "den": f.delta.den},
        "mode": f.mode,
        "m": rep.m,
        "entries": [
            {
                "p": e.p,
                "b": e.b,
                "route_a": e.route_a,
                "route_b": "inapplicable" if e.route_b is None else e.route_b,
                "per_n": [{"n": n, "term": t} for n, t in e.per_n],
            }
            for e in rep.entries
        ],
        "flags": list(rep.flags),
    }
