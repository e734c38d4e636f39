"""Weyl algebra arithmetic against an independent rewriting oracle."""

import random

import pytest

from oracles import oracle_mul, oracle_power, random_poly
from weylift import BracketFlavor, Field, QQ
from weylift.errors import (
    ExpansionBoundExceeded,
    NotCentral,
    PositiveCharacteristic,
    WeyliftError,
)
from weylift.flavors import HAUG, SKEW, STANDARD, Grading
from weylift.weyl import (
    WeylElt,
    bounded_power,
    center_coordinates,
    from_center_coordinates,
    is_central,
    pth_power,
    weyl_commutator,
    weyl_structure,
)


def gens(field, flavor):
    return [WeylElt.generator(field, flavor, i) for i in range(flavor.main_count)]


def test_reordering_fixtures():
    fl = BracketFlavor(STANDARD, 1)
    x, d = gens(QQ, fl)
    assert str(d * d * x * x) == "x1^2*p1^2 + 4*x1*p1 + 2"
    hfl = BracketFlavor(HAUG, 1)
    xh, dh = gens(QQ, hfl)
    assert str(dh * dh * xh * xh) == "x1^2*p1^2 + 4*x1*p1*h + 2*h^2"


@pytest.mark.parametrize("kind", [STANDARD, HAUG])
def test_reordering_matches_rewriting_oracle(kind):
    # d^b x^c for all small exponents, checked against one-step rewriting.
    fl = BracketFlavor(kind, 1)
    x, d = gens(QQ, fl)
    for b in range(7):
        for c in range(7):
            lhs = bounded_power(d, b) * bounded_power(x, c)
            assert lhs == oracle_mul(bounded_power(d, b), bounded_power(x, c))


@pytest.mark.parametrize(
    "flavor",
    [
        BracketFlavor(STANDARD, 1),
        BracketFlavor(STANDARD, 2),
        BracketFlavor(HAUG, 1),
        BracketFlavor(HAUG, 2),
        BracketFlavor(SKEW, 2),
        BracketFlavor(SKEW, 3),
    ],
    ids=lambda f: f"{f.kind}{f.n}",
)
def test_random_products_match_oracle(flavor):
    rng = random.Random(hash((flavor.kind, flavor.n)) & 0xFFFF)
    for _ in range(25):
        a = random_poly(rng, QQ, flavor, cls=WeylElt)
        b = random_poly(rng, QQ, flavor, cls=WeylElt)
        assert a * b == oracle_mul(a, b)


def test_associativity_random():
    for flavor in (BracketFlavor(STANDARD, 2), BracketFlavor(SKEW, 3)):
        rng = random.Random(5)
        for _ in range(15):
            a = random_poly(rng, QQ, flavor, cls=WeylElt, max_deg=2)
            b = random_poly(rng, QQ, flavor, cls=WeylElt, max_deg=2)
            c = random_poly(rng, QQ, flavor, cls=WeylElt, max_deg=2)
            assert (a * b) * c == a * (b * c)


def test_skew_one_step():
    fl = BracketFlavor(SKEW, 1)
    a, b = gens(QQ, fl)
    hk = WeylElt.h_power(QQ, fl, 1) * WeylElt.k_symbol(QQ, fl, 0, 1)
    assert b * a == a * b - hk
    assert weyl_commutator(a, b) == hk


def test_commutator_fixtures():
    fl = BracketFlavor(STANDARD, 1)
    x, d = gens(QQ, fl)
    assert weyl_commutator(d, x) == WeylElt.one(QQ, fl)
    assert weyl_commutator(d, x) == weyl_structure(fl, QQ, 1, 0)
    hfl = BracketFlavor(HAUG, 1)
    xh, dh = gens(QQ, hfl)
    assert weyl_commutator(dh, xh) == WeylElt.h_power(QQ, hfl, 1)


def test_commutator_with_central_power():
    # [d, x^p] = p x^(p-1) vanishes mod p, so x^p is central.
    f3 = Field("Fp", 3)
    fl = BracketFlavor(STANDARD, 1)
    x, d = gens(f3, fl)
    cube = bounded_power(x, 3)
    assert weyl_commutator(d, cube).is_zero
    assert is_central(cube)
    assert not is_central(x)
    assert not is_central(bounded_power(x, 2))


def test_is_central_over_q():
    fl = BracketFlavor(STANDARD, 1)
    x, d = gens(QQ, fl)
    assert is_central(WeylElt.one(QQ, fl))
    assert not is_central(bounded_power(x, 5))
    hfl = BracketFlavor(HAUG, 1)
    assert is_central(WeylElt.h_power(QQ, hfl, 1))


def test_pth_power_fixture():
    f2 = Field("Fp", 2)
    fl = BracketFlavor(STANDARD, 1)
    x, d = gens(f2, fl)
    sq = pth_power(x + d)
    assert sq == (x + d) * (x + d)
    assert str(center_coordinates(sq)) == "z1 + w1 + 1"


def test_pth_power_requires_positive_characteristic():
    fl = BracketFlavor(STANDARD, 1)
    x, _ = gens(QQ, fl)
    with pytest.raises(PositiveCharacteristic):
        pth_power(x)


def test_pth_power_matches_oracle():
    fl = BracketFlavor(STANDARD, 1)
    for p in (2, 3):
        field = Field("Fp", p)
        rng = random.Random(p)
        for _ in range(6):
            a = random_poly(rng, field, fl, cls=WeylElt, max_terms=3, max_deg=2)
            assert pth_power(a) == oracle_power(a, p)


def test_pth_power_of_linear_is_central():
    # ad of a degree-one element is nilpotent, so its p-th power is central.
    # Higher degree fails in general: (xd)^p is not central.
    fl = BracketFlavor(STANDARD, 1)
    for p in (2, 3, 5):
        field = Field("Fp", p)
        rng = random.Random(p + 10)
        for _ in range(6):
            a = random_poly(rng, field, fl, cls=WeylElt, max_terms=3, max_deg=1)
            assert is_central(pth_power(a))
    f3 = Field("Fp", 3)
    x, d = gens(f3, fl)
    assert not is_central(bounded_power(x * d, 3))


def test_center_coordinates_round_trip():
    f3 = Field("Fp", 3)
    fl = BracketFlavor(STANDARD, 2)
    rng = random.Random(8)
    for _ in range(8):
        a = random_poly(rng, f3, fl, cls=WeylElt, max_terms=2, max_deg=1)
        b = random_poly(rng, f3, fl, cls=WeylElt, max_terms=2, max_deg=1)
        central = pth_power(a) * pth_power(b)
        c = center_coordinates(central)
        assert from_center_coordinates(c, fl, 3) == central


def test_center_coordinates_rejects_noncentral():
    fl = BracketFlavor(STANDARD, 1)
    x, _ = gens(Field("Fp", 3), fl)
    with pytest.raises(NotCentral):
        center_coordinates(x)
    xq, _ = gens(QQ, fl)
    with pytest.raises(PositiveCharacteristic):
        center_coordinates(xq)


def test_truncated_product_guard():
    fl = BracketFlavor(STANDARD, 1)
    x, d = gens(QQ, fl)
    with pytest.raises(WeyliftError):
        x.mul_truncated(d, 3)


def test_truncated_product_haug():
    hfl = BracketFlavor(HAUG, 2)
    gr = Grading.default_for(hfl)
    rng = random.Random(2)
    for _ in range(12):
        a = random_poly(rng, QQ, hfl, cls=WeylElt)
        b = random_poly(rng, QQ, hfl, cls=WeylElt)
        for maxdeg in (1, 2, 3):
            assert a.mul_truncated(b, maxdeg, gr) == (a * b).truncate(maxdeg, gr)


def test_truncated_product_skew():
    sfl = BracketFlavor(SKEW, 2)
    gr = Grading.default_for(sfl)
    rng = random.Random(4)
    for _ in range(12):
        a = random_poly(rng, QQ, sfl, cls=WeylElt, max_deg=2)
        b = random_poly(rng, QQ, sfl, cls=WeylElt, max_deg=2)
        for maxdeg in (1, 2, 3):
            assert a.mul_truncated(b, maxdeg, gr) == (a * b).truncate(maxdeg, gr)


def test_expansion_bound():
    fl = BracketFlavor(STANDARD, 1)
    x, d = gens(QQ, fl)
    with pytest.raises(ExpansionBoundExceeded):
        bounded_power(x + d, 40, bound=10)
