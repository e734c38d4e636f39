"""Normal-ordered Weyl elements for all three bracket flavors.

The basis for paired flavors is x^K d^L (every x left of every d) with
relations [d_i, x_j] = delta_ij (standard) or h delta_ij (h-augmented).
Products use the closed reordering formula

    d^b x^c = sum_k k! C(b,k) C(c,k) mu^k x^(c-k) d^(b-k),   mu in {1, h},

applied independently per index, which is valid because generators with
distinct indices commute.  The skew flavor has no closed form here;
products move one generator at a time through the normal form using
xi_j xi_i = xi_i xi_j - h k_ij (i < j), whose corrections are central.
"""

from __future__ import annotations

from math import comb, factorial

from .elements import SparseElement
from .errors import (
    ExpansionBoundExceeded,
    NotCentral,
    NotInPthPowerForm,
    PositiveCharacteristic,
    WeyliftError,
)
from .flavors import HAUG, SKEW, Grading
from .poly import Poly, structure_element

#: Default cap on intermediate term counts in repeated products.
EXPANSION_BOUND = 200_000


class WeylElt(SparseElement):
    """Element of the Weyl algebra in normal-ordered coordinates."""

    __slots__ = ()

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(self.field.from_int(other))
        self._check_compatible(other)
        if self.flavor.kind == SKEW:
            return _skew_mul(self, other, None, None)
        return _paired_mul(self, other, None, None)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(self.field.from_int(other))
        return NotImplemented

    def mul_truncated(self, other, maxdeg, grading=None):
        """Graded-truncated product; needs a weight the reordering preserves."""
        self._check_compatible(other)
        g = grading or Grading.default_for(self.flavor)
        _require_graded(self.flavor, g)
        if self.flavor.kind == SKEW:
            return _skew_mul(self, other, maxdeg, g)
        return _paired_mul(self, other, maxdeg, g)


def _require_graded(flavor, grading):
    if flavor.kind == HAUG:
        ok = grading.h == 2 * grading.main
    elif flavor.kind == SKEW:
        ok = grading.h == 0 and grading.k == 2 * grading.main
    else:
        ok = False
    if not ok:
        raise WeyliftError(
            "truncated Weyl products need the reordering-invariant grading"
        )


def _paired_mul(a: WeylElt, b: WeylElt, maxdeg, grading):
    flavor, field = a.flavor, a.field
    add, mul, is_zero, from_int = field.add, field.mul, field.is_zero, field.from_int
    m = flavor.pairs
    haug = flavor.kind == HAUG
    h_slot = flavor.h_slot
    terms = {}
    weights = None
    if maxdeg is not None:
        weights = (
            {k: grading.weight(flavor, k) for k in a.terms},
            {k: grading.weight(flavor, k) for k in b.terms},
        )
    for k1, c1 in a.terms.items():
        if maxdeg is not None and weights[0][k1] > maxdeg:
            continue
        for k2, c2 in b.terms.items():
            if maxdeg is not None and weights[0][k1] + weights[1][k2] > maxdeg:
                continue
            base = mul(c1, c2)
            if is_zero(base):
                continue
            # Contract the d-block of k1 against the x-block of k2.
            caps = [min(k1[m + i], k2[i]) for i in range(m)]
            stack = [(0, [], 1)]
            while stack:
                idx, chosen, factor = stack.pop()
                if idx == m:
                    key = list(k1)
                    for i in range(m):
                        c = chosen[i]
                        key[i] = k1[i] + k2[i] - c
                        key[m + i] = k1[m + i] + k2[m + i] - c
                    total = sum(chosen)
                    for s in range(2 * m, flavor.key_len):
                        key[s] = k1[s] + k2[s]
                    if haug and total:
                        key[h_slot] += total
                    key = tuple(key)
                    c = mul(base, from_int(factor)) if factor != 1 else base
                    if key in terms:
                        c = add(terms[key], c)
                    if is_zero(c):
                        terms.pop(key, None)
                    else:
                        terms[key] = c
                    continue
                b_exp, c_exp = k1[m + idx], k2[idx]
                for c in range(caps[idx] + 1):
                    f = factor
                    if c:
                        f = factor * factorial(c) * comb(b_exp, c) * comb(c_exp, c)
                    stack.append((idx + 1, chosen + [c], f))
    out = WeylElt(field, flavor)
    out.terms = terms
    return out


def _skew_times_gen(elt: WeylElt, i: int) -> WeylElt:
    """Right-multiply a normal form by generator i.

    xi^C xi_i = xi^(C + e_i) - h * sum_{j > i, C_j > 0} C_j k_ij xi^(C - e_j).
    """
    flavor, field = elt.flavor, elt.field
    add, mul, is_zero, from_int = field.add, field.mul, field.is_zero, field.from_int
    g = flavor.main_count
    h_slot = flavor.h_slot
    terms = {}

    def put(key, c):
        if key in terms:
            c = add(terms[key], c)
        if is_zero(c):
            terms.pop(key, None)
        else:
            terms[key] = c

    for key, c in elt.terms.items():
        put(key[:i] + (key[i] + 1,) + key[i + 1 :], c)
        for j in range(i + 1, g):
            e = key[j]
            if e == 0:
                continue
            k_slot = flavor.k_slot(i, j)
            new_key = list(key)
            new_key[j] -= 1
            new_key[h_slot] += 1
            new_key[k_slot] += 1
            put(tuple(new_key), mul(c, from_int(-e)))
    out = WeylElt(field, flavor)
    out.terms = terms
    return out


def _skew_mul(a: WeylElt, b: WeylElt, maxdeg, grading):
    flavor, field = a.flavor, a.field
    g = flavor.main_count
    out = WeylElt.zero(field, flavor)
    for keyB, cB in b.terms.items():
        part = a
        if maxdeg is not None:
            wB = grading.weight(flavor, keyB)
            part = part.truncate(maxdeg - wB, grading)
        for i in range(g):
            for _ in range(keyB[i]):
                part = _skew_times_gen(part, i)
        central = (0,) * g + keyB[g:]
        shifted = WeylElt(field, flavor)
        shifted.terms = {
            tuple(x + y for x, y in zip(k, central)): field.mul(c, cB)
            for k, c in part.terms.items()
        }
        out = out + shifted
    if maxdeg is not None:
        out = out.truncate(maxdeg, grading)
    return out


def weyl_commutator(a: WeylElt, b: WeylElt) -> WeylElt:
    return a * b - b * a


def pth_power(a: WeylElt, bound: int | None = None) -> WeylElt:
    """a^p in the residue characteristic, guarded by a term-count bound."""
    p = a.field.char
    if p == 0:
        raise PositiveCharacteristic("pth_power needs a finite field")
    return bounded_power(a, p, bound)


def bounded_power(a: WeylElt, e: int, bound: int | None = None) -> WeylElt:
    limit = EXPANSION_BOUND if bound is None else bound

    def guard(x):
        if x.num_terms() > limit:
            raise ExpansionBoundExceeded(
                f"intermediate expansion hit {x.num_terms()} terms (bound {limit})"
            )
        return x

    acc = WeylElt.one(a.field, a.flavor)
    base = a
    while e:
        if e & 1:
            acc = guard(acc * base)
        e >>= 1
        if e:
            base = guard(base * base)
    return acc


def is_central(a: WeylElt) -> bool:
    """True when a commutes with every main generator."""
    flavor = a.flavor
    for i in range(flavor.main_count):
        gen = WeylElt.generator(a.field, flavor, i)
        if not (a * gen - gen * a).is_zero:
            return False
    return True


def center_coordinates(a: WeylElt, check: bool = True) -> Poly:
    """Read a central element in the coordinates z_i = x_i^p, w_i = d_i^p.

    The h exponent (if present) and the t exponent pass through unchanged;
    main exponents must all be divisible by p.
    """
    field, flavor = a.field, a.flavor
    p = field.char
    if p == 0:
        raise PositiveCharacteristic("center coordinates need a finite field")
    if not flavor.paired:
        raise WeyliftError("center coordinates are defined for paired flavors")
    if check and not is_central(a):
        raise NotCentral("element does not commute with the generators")
    target = flavor.center_flavor()
    g = flavor.main_count
    terms = {}
    for key, c in a.terms.items():
        main = key[:g]
        if any(e % p for e in main):
            raise NotInPthPowerForm(f"exponents {main} are not all divisible by {p}")
        terms[tuple(e // p for e in main) + key[g:]] = c
    out = Poly(field, target)
    out.terms = terms
    return out


def from_center_coordinates(c: Poly, flavor, p=None, cls=WeylElt) -> WeylElt:
    """Inverse of center_coordinates: z^A w^B h^c goes to x^(pA) d^(pB) h^c."""
    field = c.field
    p = field.char if p is None else p
    if p == 0:
        raise PositiveCharacteristic("center coordinates need a prime")
    g = flavor.main_count
    out = cls(field, flavor)
    out.terms = {
        tuple(e * p for e in key[:g]) + key[g:]: coeff for key, coeff in c.terms.items()
    }
    return out


def weyl_structure(flavor, field, i, j) -> WeylElt:
    """[g_i, g_j] as a normal-ordered element."""
    return structure_element(flavor, field, i, j, cls=WeylElt)
