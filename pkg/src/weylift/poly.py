"""Commutative sparse polynomials with the flavor's Poisson bracket."""

from __future__ import annotations

from .elements import SparseElement
from .errors import IndexOutOfRange, PositiveCharacteristic, WeyliftError
from .flavors import SKEW, STANDARD, BracketFlavor


class Poly(SparseElement):
    """Element of the commutative algebra underlying a bracket flavor."""

    __slots__ = ()

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(self.field.from_int(other))
        self._check_compatible(other)
        field = self.field
        add, mul, is_zero = field.add, field.mul, field.is_zero
        terms = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(k1, k2))
                c = mul(c1, c2)
                if key in terms:
                    c = add(terms[key], c)
                if is_zero(c):
                    terms.pop(key, None)
                else:
                    terms[key] = c
        out = Poly(field, self.flavor)
        out.terms = terms
        return out

    __rmul__ = __mul__

    def mul_truncated(self, other, maxdeg, grading=None):
        """Product with terms of weighted degree above maxdeg dropped."""
        self._check_compatible(other)
        from .flavors import Grading

        g = grading or Grading.default_for(self.flavor)
        field, flavor = self.field, self.flavor
        add, mul, is_zero = field.add, field.mul, field.is_zero
        terms = {}
        for k1, c1 in self.terms.items():
            w1 = g.weight(flavor, k1)
            if w1 > maxdeg:
                continue
            for k2, c2 in other.terms.items():
                if w1 + g.weight(flavor, k2) > maxdeg:
                    continue
                key = tuple(a + b for a, b in zip(k1, k2))
                c = mul(c1, c2)
                if key in terms:
                    c = add(terms[key], c)
                if is_zero(c):
                    terms.pop(key, None)
                else:
                    terms[key] = c
        out = Poly(field, flavor)
        out.terms = terms
        return out

    def partial(self, i: int) -> "Poly":
        """Formal partial derivative in the i-th main generator."""
        flavor = self.flavor
        if not 0 <= i < flavor.main_count:
            raise IndexOutOfRange(f"no main generator {i}")
        field = self.field
        terms = {}
        for key, c in self.terms.items():
            e = key[i]
            if e == 0:
                continue
            v = field.mul(c, field.from_int(e))
            if field.is_zero(v):
                continue
            new_key = key[:i] + (e - 1,) + key[i + 1 :]
            if new_key in terms:
                v = field.add(terms[new_key], v)
                if field.is_zero(v):
                    del terms[new_key]
                    continue
            terms[new_key] = v
        out = Poly(field, flavor)
        out.terms = terms
        return out


def structure_element(flavor: BracketFlavor, field, i: int, j: int, cls=Poly):
    """The bracket (or commutator) of generators i and j as an element."""
    if i == j:
        return cls.zero(field, flavor)
    if flavor.kind == SKEW:
        sign = 1 if i < j else -1
        a, b = (i, j) if i < j else (j, i)
        key = tuple(
            x + y for x, y in zip(flavor.h_key(), flavor.k_key(a, b))
        )
        raw = field.one() if sign == 1 else field.neg(field.one())
        return cls(field, flavor, {key: raw})
    w = flavor.omega(i, j)
    if w == 0:
        return cls.zero(field, flavor)
    raw = field.from_int(w)
    if flavor.has_h:
        return cls(field, flavor, {flavor.h_key(): raw})
    return cls.constant(field, flavor, raw)


def poisson_bracket(f: Poly, g: Poly) -> Poly:
    """{f, g} extended from the structure constants by the Leibniz rule."""
    f._check_compatible(g)
    flavor, field = f.flavor, f.field
    result = Poly.zero(field, flavor)
    partials_f = {}
    partials_g = {}

    def pf(i):
        if i not in partials_f:
            partials_f[i] = f.partial(i)
        return partials_f[i]

    def pg(i):
        if i not in partials_g:
            partials_g[i] = g.partial(i)
        return partials_g[i]

    for i in range(flavor.main_count):
        for j in range(i + 1, flavor.main_count):
            s = structure_element(flavor, field, i, j)
            if s.is_zero:
                continue
            term = pf(i) * pg(j) - pf(j) * pg(i)
            if term.is_zero:
                continue
            result = result + s * term
    return result


def jacobian(images) -> Poly:
    """Determinant of the partial-derivative matrix of a full image list."""
    if not images:
        raise WeyliftError("empty image list")
    first = images[0]
    flavor, field = first.flavor, first.field
    if flavor.kind != STANDARD:
        raise WeyliftError("jacobian is defined over the standard flavor")
    if field.char != 0:
        raise PositiveCharacteristic("jacobian determinant needs characteristic zero")
    g = flavor.main_count
    if len(images) != g:
        raise WeyliftError(f"need {g} images, got {len(images)}")
    rows = [[img.partial(j) for j in range(g)] for img in images]

    # Expansion along the first remaining row, memoized on column subsets.
    memo = {}

    def minor(row: int, cols: tuple) -> Poly:
        if row == g:
            return Poly.one(field, flavor)
        cached = memo.get((row, cols))
        if cached is not None:
            return cached
        acc = Poly.zero(field, flavor)
        for pos, j in enumerate(cols):
            entry = rows[row][j]
            if entry.is_zero:
                continue
            sub = minor(row + 1, cols[:pos] + cols[pos + 1 :])
            term = entry * sub
            acc = acc + term if pos % 2 == 0 else acc - term
        memo[(row, cols)] = acc
        return acc

    return minor(0, tuple(range(g)))
