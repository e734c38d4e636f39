"""Curve conjugation, pole scanning, and the lifting pipeline."""

from fractions import Fraction

import pytest

from weylift import (
    BracketFlavor,
    Endo,
    QQ,
    check_symplecto,
    endo_rank,
    parse_element,
)
from weylift.errors import DimensionMismatch, InsufficientK
from weylift.flavors import Grading
from weylift.singlift import (
    DiagonalCurve,
    conjugate_by_curve,
    curve_order,
    extend_to_aux,
    h_weight_conjugate,
    hn_scan,
    lift,
    lifted_commutation_check,
    pole_order,
    position_reduction,
    twist_conjugate,
    twist_psi_lambda,
)
from weylift.tame import ElementaryGen, TameWord, evaluate
from weylift.weyl import WeylElt, weyl_commutator

FL1 = BracketFlavor("standard", 1)
AUX1 = BracketFlavor("standard", 1, aux=True)


def pelt(text, flavor=FL1):
    return parse_element(text, QQ, flavor, "P")


def shear():
    return Endo("P", FL1, QQ, [pelt("x1 + p1^2"), pelt("p1")])


def test_curve_order():
    assert curve_order(DiagonalCurve((1, 1))) == 1
    assert curve_order(DiagonalCurve((3, 1))) == 3
    assert curve_order(DiagonalCurve((5, 2))) == 2


def test_curve_requires_positive_weights():
    with pytest.raises(Exception):
        DiagonalCurve((0, 1))


def test_conjugate_by_curve():
    sh = shear()
    flat = conjugate_by_curve(sh, DiagonalCurve((2, 1)))
    assert [str(i) for i in flat.images] == ["p1^2 + x1", "p1"]
    assert pole_order(flat) == 0

    poled = conjugate_by_curve(sh, DiagonalCurve((3, 1)))
    assert str(poled.images[0]) == "p1^2*t^-1 + x1"
    assert pole_order(poled) == 1

    lin = Endo("P", FL1, QQ, [pelt("x1 + p1"), pelt("p1")])
    same = conjugate_by_curve(lin, DiagonalCurve((4, 4)))
    assert same.images == lin.images


def test_conjugate_dimension_guard():
    with pytest.raises(DimensionMismatch):
        conjugate_by_curve(shear(), DiagonalCurve((1, 1, 1)))


def test_pole_order_of_identity():
    ident = Endo.identity("P", FL1, QQ)
    for weights in ((1, 1), (3, 1), (5, 2)):
        assert pole_order(conjugate_by_curve(ident, DiagonalCurve(weights))) == 0


def test_hn_scan_shear():
    sh = shear()
    v3 = hn_scan(sh, 3)
    assert v3.kind == "pole" and not v3.consistent
    assert v3.curve.weights == (3, 1)
    v2 = hn_scan(sh, 2)
    assert v2.kind == "pole"
    assert v2.curve.weights == (5, 2)
    v1 = hn_scan(sh, 1)
    assert v1.kind == "consistent" and v1.consistent


def test_hn_scan_matches_rank():
    # rank r deviation passes every scan with N < r and fails at N = r
    quartic = Endo("P", FL1, QQ, [pelt("x1 + p1^4"), pelt("p1")])
    assert endo_rank(quartic) == 4
    for n in (1, 2, 3):
        assert hn_scan(quartic, n).consistent
    assert not hn_scan(quartic, 4).consistent


def test_hn_scan_witness_satisfies_inequality():
    sh = shear()
    for n in (2, 3):
        verdict = hn_scan(sh, n)
        m1, m2 = verdict.curve.weights[0], min(verdict.curve.weights[1:] or (verdict.curve.weights[0],))
        assert (n + 1) * m2 >= m1 >= n * m2


def test_hn_scan_identity():
    ident = Endo.identity("P", FL1, QQ)
    assert hn_scan(ident, 7).consistent


def test_hn_scan_random_curves():
    sh = shear()
    verdict = hn_scan(sh, 3, sample_curves=10, seed=5)
    assert verdict.kind == "pole"


def test_extend_to_aux():
    ext = extend_to_aux(shear())
    assert ext.flavor == AUX1
    assert [str(i) for i in ext.images] == ["p1^2 + x1", "u", "p1", "v"]
    assert check_symplecto(ext, raise_on_fail=False)


def test_special_position_needs_reduction():
    # every monomial of the deviation contains the image's own generator,
    # so plain curves see no pole; the (u, v) shift exposes one
    sp = Endo("P", AUX1, QQ, [
        pelt("x1 + x1*p1^2", AUX1), pelt("u", AUX1), pelt("p1", AUX1), pelt("v", AUX1),
    ])
    assert hn_scan(sp, 2).consistent
    v3 = hn_scan(sp, 3)
    assert v3.kind == "pole"
    assert v3.curve.weights == (7, 2, 2, 2)
    assert v3.reduction == (0, 1, 1)

    direct = conjugate_by_curve(sp, DiagonalCurve((7, 2, 2, 2)))
    assert pole_order(direct) == 0
    reduced = position_reduction(sp, 0, Fraction(1), Fraction(1))
    assert str(reduced.images[0]) == "x1*p1^2 + u*p1^2 + p1^2*v + x1"
    assert pole_order(conjugate_by_curve(reduced, DiagonalCurve((7, 2, 2, 2)))) == 1


def test_lift_shear_certificate():
    lifted, cert = lift(shear(), 4, primes=(2, 3, 5))
    assert cert["pass"]
    assert cert["representation"] == "exact"
    assert cert["stabilization"] == "pass"
    assert cert["canonicity"] == "pass"
    assert cert["commutation"] == "pass"
    assert cert["primes"]["2"]["status"] == "exact"
    assert cert["primes"]["3"]["status"] == "fixture_match"
    assert cert["primes"]["5"]["status"] == "exact"
    assert all(v.get("reduction_consistency") == "pass" for v in cert["primes"].values())
    assert [str(i) for i in lifted.images] == ["p1^2 + x1", "p1"]


def test_lift_images_satisfy_weyl_relations():
    lifted, cert = lift(shear(), 4)
    assert cert["commutation_violations"] == 0
    report = lifted_commutation_check(list(lifted.images), FL1)
    assert report["ok"]
    x_img, d_img = lifted.images
    assert weyl_commutator(d_img, x_img) == WeylElt.one(QQ, FL1)


def test_lift_composite_word():
    comp = shear().compose(Endo("P", FL1, QQ, [pelt("x1"), pelt("p1 + x1^2")]))
    lifted, cert = lift(comp, 5, primes=(2, 3, 5, 7))
    assert cert["pass"]
    assert cert["word_length"] == 6
    statuses = {k: v["status"] for k, v in cert["primes"].items()}
    assert statuses == {"2": "exact", "3": "fixture_match", "5": "exact", "7": "exact"}


def test_lift_skips_non_integral_primes():
    third = Endo("P", FL1, QQ, [pelt("x1 + 1/3*p1^2"), pelt("p1")])
    _, cert = lift(third, 4, primes=(2, 3))
    assert cert["primes"]["2"]["status"] == "exact"
    assert cert["primes"]["3"]["status"] == "inapplicable_not_p_integral"
    assert cert["pass"]


def test_lift_low_order_stabilization_trivial():
    _, cert = lift(shear(), 2)
    assert cert["stabilization"] == "trivial"
    assert cert["pass"]


def test_lifted_commutation_check_reports_violations():
    x, d = WeylElt.generator(QQ, FL1, 0), WeylElt.generator(QQ, FL1, 1)
    bad = lifted_commutation_check([x + x, d], FL1)
    assert not bad["ok"]
    assert bad["violations"]
    i, j, diff = bad["violations"][0]
    assert (i, j) == (0, 1)


def test_twist_psi_lambda():
    hafl = BracketFlavor("haug", 1, aux=True)
    psi = twist_psi_lambda(0, 1, hafl, QQ)
    assert [str(i) for i in psi.images] == ["x1", "x1*h + u", "p1 - v*h", "v"]
    assert check_symplecto(psi, raise_on_fail=False)
    psi3 = twist_psi_lambda(0, 3, hafl, QQ)
    assert str(psi3.images[1]) == "x1*h^3 + u"
    assert check_symplecto(psi3, raise_on_fail=False)


def test_twist_psi_lambda_guards():
    hafl = BracketFlavor("haug", 1, aux=True)
    with pytest.raises(Exception):
        twist_psi_lambda(0, 0, hafl, QQ)
    with pytest.raises(Exception):
        twist_psi_lambda(0, 1, FL1, QQ)


def test_twist_conjugate():
    hafl = BracketFlavor("haug", 1, aux=True)
    psi = twist_psi_lambda(0, 1, hafl, QQ)
    ext = Endo("P", hafl, QQ, [
        pelt("x1 + p1^2*h^3", hafl), pelt("u", hafl), pelt("p1", hafl), pelt("v", hafl),
    ])
    out = twist_conjugate(ext, psi, order=4)
    assert str(out.images[0]) == "p1^2*h^3 + x1"
    assert str(out.images[1]) == "p1^2*h^4 + x1*h + u"


def test_twist_conjugate_insufficient_k():
    hafl = BracketFlavor("haug", 1, aux=True)
    dev = Endo("P", hafl, QQ, [
        pelt("x1 + p1^2*h", hafl), pelt("u", hafl), pelt("p1", hafl), pelt("v", hafl),
    ])
    laurent = h_weight_conjugate(dev, (2, 0, 0, 0))
    assert str(laurent.images[0]) == "p1^2*h^-1 + x1"
    psi = twist_psi_lambda(0, 1, hafl, QQ)
    with pytest.raises(InsufficientK):
        twist_conjugate(laurent, psi, phi_inv=Endo.identity("P", hafl, QQ))


def test_h_weight_conjugate():
    hfl = BracketFlavor("haug", 1)
    e = Endo("P", hfl, QQ, [pelt("x1 + p1^2*h", hfl), pelt("p1", hfl)])
    up = h_weight_conjugate(e, (-3, 0))
    assert str(up.images[0]) == "p1^2*h^4 + x1"
    with pytest.raises(DimensionMismatch):
        h_weight_conjugate(e, (1,))
