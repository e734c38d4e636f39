"""Reduction to the center of the ordered algebra at a fixed prime.

Over F_p the p-th powers of the paired generators are central, and any
endomorphism restricts to the polynomial algebra they generate.  The
restriction is read in coordinates z_i = x_i^p, w_i = d_i^p, composed
with the inverse Frobenius on coefficients so the result is additive in
the original coefficients.  The center also carries a bracket: lift two
central elements to characteristic zero, take the commutator, divide by
p, reduce, and read back; the sign is chosen so {w_i, z_i} = 1 matches
the paired convention on the plain commutative side.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .elements import term_sort_key
from .endo import Endo
from .errors import (
    Ambiguous,
    InternalCentralityFailure,
    NoRoot,
    NotDivisibleByP,
    NotFiniteField,
    PositiveCharacteristic,
    SideMismatch,
    WeyliftError,
)
from .fields import QQ
from .flavors import HAUG, STANDARD, BracketFlavor
from .poly import Poly
from .weyl import (
    WeylElt,
    center_coordinates,
    from_center_coordinates,
    is_central,
    pth_power,
)

#: Largest candidate count the exhaustive root search will walk.
EXHAUSTIVE_BOUND = 4096


def reduce_endo_mod_p(endo, field):
    """Clear denominators prime to p; NotPIntegral when p divides one."""
    if field.char == 0:
        raise NotFiniteField("reduction target must have positive characteristic")
    src = endo.field

    def red(c):
        return field.from_fraction(c if isinstance(c, Fraction) else Fraction(c))

    if src.char != 0:
        raise PositiveCharacteristic("endo is already in positive characteristic")
    return endo.map_coefficients(red, field)


def restrict_to_center(endo):
    """Read phi on the central coordinates z_i = x_i^p, w_i = d_i^p."""
    if endo.side != "W":
        raise SideMismatch("center restriction reads ordered images")
    field, flavor = endo.field, endo.flavor
    if field.char == 0:
        raise PositiveCharacteristic("center restriction needs a finite field")
    if flavor.kind not in (STANDARD, HAUG):
        raise WeyliftError("center restriction is defined for paired flavors")
    target = flavor.center_flavor()
    images = []
    for i, img in enumerate(endo.images):
        power = pth_power(img)
        if not is_central(power):
            raise InternalCentralityFailure(
                f"p-th power of image {i} failed to be central"
            )
        coords = center_coordinates(power, check=False)
        coords.flavor = target
        images.append(coords)
    h_image = None
    if flavor.has_h:
        h_image = Poly(field, target)
        h_image.terms = dict(endo.h_image.terms)
    return Endo("P", target, field, images, h_image, allow_free_term=True)


def frobenius_twist(endo):
    """Apply the inverse coefficient Frobenius to every image."""
    field = endo.field
    if field.char == 0:
        raise PositiveCharacteristic("Frobenius twist needs a finite field")
    return endo.map_coefficients(lambda c: field.frobenius(c, inverse=True))


def phi_p(endo, field=None):
    """The center morphism at p: reduce, restrict, untwist.

    Accepts an ordered-side endo over Q (with a target field) or over a
    finite field directly.  The h-augmented flavor is specialized at
    h = 1 first.
    """
    if endo.field.char == 0:
        if field is None:
            raise NotFiniteField("phi_p over Q needs a target finite field")
        endo = reduce_endo_mod_p(endo, field)
    if endo.flavor.kind == HAUG:
        endo = endo.specialize_h()
    return frobenius_twist(restrict_to_center(endo))


def _lift_coefficient(field, c, shift):
    return Fraction(int(c) + field.p * shift)


def _lift_center(poly, shifts=None):
    """Integral characteristic-zero lift in ordered coordinates."""
    field = poly.field
    w_flavor = BracketFlavor(STANDARD, poly.flavor.pairs)
    lifted = Poly(QQ, poly.flavor)
    lifted.terms = {
        key: _lift_coefficient(field, c, (shifts or {}).get(key, 0))
        for key, c in poly.terms.items()
    }
    return from_center_coordinates(lifted, w_flavor, p=field.p, cls=WeylElt)


def center_bracket(a, b, shifts=None):
    """Divided-commutator bracket on the center.

    Lift both elements integrally, commute, divide by p, reduce, read
    coordinates, and negate.  The value does not depend on the lift;
    shifts = (dict, dict) nudges coefficients by multiples of p to let
    callers check that.
    """
    field = a.field
    if field.char == 0:
        raise PositiveCharacteristic("center bracket needs a finite field")
    if field.k != 1:
        raise NotFiniteField("center bracket lifts through the prime field")
    if a.flavor != b.flavor or a.flavor.kind != STANDARD:
        raise WeyliftError("center bracket expects plain paired coordinates")
    p = field.p
    sa, sb = shifts if shifts is not None else (None, None)
    la, lb = _lift_center(a, sa), _lift_center(b, sb)
    comm = la * lb - lb * la
    divided = {}
    for key, c in comm.terms.items():
        if c.denominator != 1 or c.numerator % p:
            raise NotDivisibleByP(f"commutator coefficient {c} is not divisible by {p}")
        divided[key] = Fraction(c.numerator // p)
    reduced = WeylElt(field, la.flavor)
    reduced.terms = {
        key: field.from_fraction(c)
        for key, c in divided.items()
        if not field.is_zero(field.from_fraction(c))
    }
    coords = center_coordinates(reduced)
    coords.flavor = a.flavor
    return -coords


def _center_degree(flavor, key):
    return sum(flavor.main_exponents(key))


def central_pth_root(h, exhaustive_bound=None):
    """Ordered element g with g^p central and coordinates matching h.

    Matching is up to the coefficient Frobenius used by the center
    morphism: center_coordinates(g^p) equals h with every coefficient
    raised to the p-th power.  Greedy diagonal solve from the top
    monomial down, with an exhaustive search over bounded supports as a
    fallback; NoRoot and Ambiguous are only raised when proven.
    """
    field = h.field
    if field.char == 0:
        raise PositiveCharacteristic("root search needs a finite field")
    if h.flavor.kind != STANDARD:
        raise WeyliftError("root search expects plain paired coordinates")
    p = field.char
    w_flavor = BracketFlavor(STANDARD, h.flavor.pairs)
    twisted = h.map_coefficients(lambda c: field.frobenius(c))
    twisted.flavor = h.flavor
    target = from_center_coordinates(twisted, w_flavor, cls=WeylElt)
    degree = max(
        (_center_degree(h.flavor, key) for key in h.terms), default=0
    )
    g = w_flavor.main_count
    cap = 16 + 4 * len(list(_support_keys(w_flavor, degree)))
    cand = WeylElt.zero(field, w_flavor)
    for _ in range(cap):
        residual = target - pth_power(cand)
        if residual.is_zero:
            return _verified(cand, h)
        key = max(residual.terms, key=lambda k: term_sort_key(w_flavor, k))
        exps = w_flavor.main_exponents(key)
        if any(e % p for e in exps):
            break
        r = residual.terms[key]
        inc_key = tuple(e // p for e in exps) + key[g:]
        inc = WeylElt(field, w_flavor)
        inc.terms = {inc_key: field.frobenius(r, inverse=True)}
        cand = cand + inc
    return _exhaustive_root(h, target, degree, exhaustive_bound)


def _support_keys(flavor, degree):
    g = flavor.main_count
    for exps in itertools.product(range(degree + 1), repeat=g):
        if sum(exps) <= degree:
            yield tuple(exps) + (0,) * (flavor.key_len - g)


def _verified(cand, h):
    power = pth_power(cand)
    if not is_central(power):
        raise InternalCentralityFailure("root verification lost centrality")
    coords = center_coordinates(power, check=False)
    coords.flavor = h.flavor
    want = h.map_coefficients(lambda c: h.field.frobenius(c))
    want.flavor = h.flavor
    if coords != want:
        raise WeyliftError("root verification failed")
    return cand


def _exhaustive_root(h, target, degree, exhaustive_bound):
    field = h.field
    w_flavor = target.flavor
    keys = list(_support_keys(w_flavor, degree))
    limit = EXHAUSTIVE_BOUND if exhaustive_bound is None else exhaustive_bound
    total = field.order ** len(keys)
    if total > limit:
        raise WeyliftError(
            f"greedy search stalled and {total} candidates exceed the "
            f"exhaustive bound {limit}"
        )
    values = list(field.elements())
    found = None
    for assignment in itertools.product(values, repeat=len(keys)):
        cand = WeylElt(field, w_flavor)
        cand.terms = {
            k: v for k, v in zip(keys, assignment) if not field.is_zero(v)
        }
        if pth_power(cand) == target:
            if found is not None:
                raise Ambiguous("two distinct roots share the target coordinates")
            found = cand
    if found is None:
        raise NoRoot(f"no ordered element has p-th power coordinates {h}")
    return _verified(found, h)
