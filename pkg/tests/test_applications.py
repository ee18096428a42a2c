from fractions import Fraction

import pytest

from cmint.applications import (
    bad_reduction_primes,
    humbert_intersection,
    igusa_denominator_bounds,
)
from cmint.cmfield import build_cm_field
from cmint.errors import InputError
from cmint.quadfield import QuadElem, QuadField

F5 = QuadField(5)


def field41():
    return build_cm_field(5, QuadElem(F5, -13, 1, 2))


def test_humbert_worked_instance():
    f = field41()
    assert humbert_intersection(f, 1).as_dict() == {2: Fraction(1)}


def test_humbert_rejects_square_discriminant_product():
    f = field41()
    with pytest.raises(InputError):
        humbert_intersection(f, 5)  # D·m = 25
    with pytest.raises(InputError):
        humbert_intersection(f, 0)


def test_humbert_sums_indices():
    f = field41()
    # D·m = 20: n ∈ {2, 4} give indices (20−4)/4 = 4 and (20−16)/4 = 1
    from cmint.bm import bm_full

    want = (bm_full(f, 4) + bm_full(f, 1)).scaled(Fraction(1, 2)).as_dict()
    assert humbert_intersection(f, 4).as_dict() == want


def test_bad_reduction_worked_instance():
    cert = bad_reduction_primes(field41())
    assert cert.indices == (1,)
    assert cert.bad_primes == (2,)
    assert cert.per_prime == ((2, 2),)
    assert cert.bound == Fraction(205, 64)


def test_bad_reduction_other_discriminants():
    f13 = build_cm_field(13, QuadElem(QuadField(13), -21, -2, 1))
    cert = bad_reduction_primes(f13)
    assert cert.indices == (3, 1)
    assert cert.bad_primes == (5, 7, 13, 41)
    assert cert.per_prime == ((5, 4), (7, 6), (13, 4), (41, 2))
    assert cert.bound == Fraction(13 * 389, 64)
    assert all(l <= cert.bound for l in cert.bad_primes)

    f17 = build_cm_field(17, QuadElem(QuadField(17), -21, -2, 1))
    cert = bad_reduction_primes(f17)
    assert cert.indices == (4, 2)
    assert cert.bad_primes == (3, 7, 83)


def test_igusa_worked_instance():
    got = igusa_denominator_bounds(field41())
    assert got == {"A1": {2: 12}, "A2": {2: 8}, "A3": {2: 8}}


def test_igusa_scaling_relation():
    f13 = build_cm_field(13, QuadElem(QuadField(13), -21, -2, 1))
    got = igusa_denominator_bounds(f13)
    assert got["A2"] == got["A3"]
    assert set(got["A1"]) == set(got["A2"])
    for p, e in got["A1"].items():
        assert e * 2 == got["A2"][p] * 3  # exponents scale like 3·W_K : 2·W_K


def test_strict_mode_required():
    f = build_cm_field(5, QuadElem(F5, -25, -3, 2), mode="permissive")
    with pytest.raises(InputError):
        bad_reduction_primes(f)
    with pytest.raises(InputError):
        igusa_denominator_bounds(f)
    # the Humbert sum itself is still defined
    assert humbert_intersection(f, 1) is not None
