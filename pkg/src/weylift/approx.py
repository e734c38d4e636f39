"""Staged tame approximation of bracket-preserving maps.

Given an augmentation-preserving symplectomorphism phi of the
commutative paired algebra over Q, produce a tame word agreeing with
phi below a requested degree.  Stage k reads the lowest (degree k)
deviation of the residual, recognizes it as a Hamiltonian field of a
homogeneous potential via the Euler formula, splits the potential into
powers of linear forms, and cancels each power with a conjugated
single-coordinate shift.  Every corrector word evaluates exactly to
the unit shift of its potential, so each stage pushes the residual one
degree higher.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .elements import SparseElement
from .endo import Endo, check_symplecto, jacobian_is_unit, truncated_inverse
from .errors import (
    DeviationNotHamiltonian,
    NotSymplectic,
    PositiveCharacteristic,
    SideMismatch,
    StageStall,
    WeyliftError,
    ZeroCovector,
)
from .fields import QQ
from .flavors import STANDARD, Grading
from .poly import Poly
from .tame import SP, XSHIFT, ElementaryGen, TameWord, gen_endo
from .linalg import identity_matrix, is_symplectic, mat_inv, mat_vec, omega_matrix_raw, transpose


def hamiltonian_field(h):
    """Images [X_h(g_j)] with X_h(g_j) = sum_a omega(a, j) d_a h."""
    flavor, field = h.flavor, h.field
    g = flavor.main_count
    out = []
    for j in range(g):
        a = flavor.conjugate_index(j)
        w = flavor.omega(a, j)
        img = h.partial(a)
        if w == -1:
            img = -img
        out.append(img)
    return out


def hamiltonian_shift_endo(h):
    """The endomorphism g_j -> g_j + X_h(g_j)."""
    flavor, field = h.flavor, h.field
    images = [
        Poly.generator(field, flavor, j) + img
        for j, img in enumerate(hamiltonian_field(h))
    ]
    return Endo("P", flavor, field, images)


def deviation_hamiltonian(deviations, k):
    """Homogeneous degree k+1 potential h with X_h matching the deviations.

    Uses the Euler inversion h = 1/(k+1) sum_j omega(c(j), j) g_c(j) D_j
    and verifies the candidate exactly.
    """
    sample = next((d for d in deviations if not d.is_zero), None)
    if sample is None:
        raise WeyliftError("all deviations are zero; nothing to integrate")
    flavor, field = sample.flavor, sample.field
    h = Poly.zero(field, flavor)
    inv = field.inv(field.from_int(k + 1))
    for j, dev in enumerate(deviations):
        if dev.is_zero:
            continue
        a = flavor.conjugate_index(j)
        w = flavor.omega(a, j)
        term = Poly.generator(field, flavor, a) * dev
        if w == -1:
            term = -term
        h = h + term
    h = h.scale(inv)
    for img, dev in zip(hamiltonian_field(h), deviations):
        if img != dev:
            raise DeviationNotHamiltonian(
                f"degree {k} deviation is not a Hamiltonian vector field"
            )
    return h


class WaringTerm:
    """lam * (covector . generators)^degree with a primitive covector."""

    __slots__ = ("lam", "covector", "degree")

    def __init__(self, lam, covector, degree):
        if all(v == 0 for v in covector):
            raise ZeroCovector("covector must be nonzero")
        self.lam = lam
        self.covector = tuple(int(v) for v in covector)
        self.degree = int(degree)

    def __repr__(self):
        return f"WaringTerm({self.lam}, {self.covector}, {self.degree})"

    def __eq__(self, other):
        if not isinstance(other, WaringTerm):
            return NotImplemented
        return (
            self.lam == other.lam
            and self.covector == other.covector
            and self.degree == other.degree
        )

    def potential(self, field, flavor):
        form = Poly.from_terms(
            field,
            flavor,
            [
                (flavor.gen_key(i, 1), field.from_int(v))
                for i, v in enumerate(self.covector)
                if v
            ],
        )
        return (form ** self.degree).scale(field.from_fraction(self.lam))


def _canonical_covector(vec, d):
    """Primitive vector with positive leading entry; returns (scale, vector)."""
    g = gcd(*[abs(v) for v in vec]) if len(vec) > 1 else abs(vec[0])
    if g == 0:
        return None
    vec = tuple(v // g for v in vec)
    lead = next(v for v in vec if v)
    sign = 1
    if lead < 0:
        sign = -1
        vec = tuple(-v for v in vec)
    return Fraction(sign * g) ** d, vec


def waring_decompose(h, tie_break="lex"):
    """Split a homogeneous form over Q into powers of linear forms.

    Powers of a single generator pass through as one term.  Mixed
    monomials polarize over sign vectors; covectors are canonicalized
    to primitive integer vectors and equal covectors merge.  The
    result re-expands to h exactly (asserted), in a deterministic
    order controlled by tie_break ("lex" or "alt").
    """
    if h.field.char != 0:
        raise PositiveCharacteristic("splitting into powers needs characteristic 0")
    if h.is_zero:
        return []
    flavor, field = h.flavor, h.field
    g = flavor.main_count
    d = h.degree()
    if h.height() != d:
        raise WeyliftError("potential must be homogeneous")
    acc = {}

    def put(vec, lam):
        canon = _canonical_covector(vec, d)
        if canon is None:
            return
        scale, vec = canon
        acc[vec] = acc.get(vec, Fraction(0)) + lam * scale

    for key, coeff in h.terms.items():
        exps = flavor.main_exponents(key)
        lam = Fraction(coeff)
        support = [i for i in range(g) if exps[i]]
        if len(support) == 1:
            vec = [0] * g
            vec[support[0]] = 1
            put(tuple(vec), lam)
            continue
        letters = []
        for i in support:
            letters.extend([i] * exps[i])
        base = Fraction(1, 2 ** (d - 1))
        for i in range(1, d):
            base /= i + 1
        stack = [(1, [1], 1)]
        while stack:
            idx, pattern, sign = stack.pop()
            if idx == d:
                vec = [0] * g
                for pos, s in zip(letters, pattern):
                    vec[pos] += s
                put(tuple(vec), lam * sign * base)
                continue
            stack.append((idx + 1, pattern + [1], sign))
            stack.append((idx + 1, pattern + [-1], -sign))
    terms = [
        WaringTerm(lam, vec, d) for vec, lam in sorted(acc.items()) if lam
    ]
    if tie_break == "alt":
        terms = list(reversed(terms))
    elif tie_break != "lex":
        raise WeyliftError(f"unknown tie break {tie_break!r}")
    total = Poly.zero(field, flavor)
    for t in terms:
        total = total + t.potential(field, flavor)
    if total != h:
        raise WeyliftError("power decomposition failed to re-expand")
    return terms


def symplectic_completion(field, covector, flavor):
    """Matrix A with A symplectic and apply(linear(A), c . g) = first momentum.

    Builds a symplectic basis whose first momentum column is the
    covector, then returns the inverse transpose.
    """
    g = flavor.main_count
    n = flavor.pairs
    j = omega_matrix_raw(field, flavor)
    c = [field.from_int(v) for v in covector]
    if all(field.is_zero(v) for v in c):
        raise ZeroCovector("covector must be nonzero")

    def pairing(a, b):
        jb = mat_vec(field, j, b)
        s = field.zero()
        for x, y in zip(a, jb):
            s = field.add(s, field.mul(x, y))
        return s

    basis_v = [c]
    basis_u = []
    # Candidate pool: standard basis vectors.
    pool = [
        [field.from_int(int(r == s)) for r in range(g)] for s in range(g)
    ]

    def project(z):
        # Strip the span of each completed pair: with <u, v> = -1 the
        # symplectic projection is z + <z,v> u - <z,u> v.
        for u, v in zip(basis_u, basis_v):
            zv = pairing(z, v)
            zu = pairing(z, u)
            z = [
                field.add(a, field.sub(field.mul(zv, b), field.mul(zu, c)))
                for a, b, c in zip(z, u, v)
            ]
        return z

    while len(basis_v) < n or len(basis_u) < n:
        if len(basis_u) < len(basis_v):
            v = basis_v[len(basis_u)]
            w = None
            for cand in pool:
                zc = project(cand)
                if not field.is_zero(pairing(zc, v)):
                    w = zc
                    break
            if w is None:
                raise WeyliftError("failed to complete a symplectic basis")
            scale = field.inv(field.neg(pairing(w, v)))
            basis_u.append([field.mul(scale, a) for a in w])
        else:
            z = None
            for cand in pool:
                zc = project(cand)
                if any(not field.is_zero(a) for a in zc):
                    z = zc
                    break
            if z is None:
                raise WeyliftError("failed to extend a symplectic basis")
            basis_v.append(z)
    b = [[basis_u[s][r] for s in range(n)] for r in range(g)]
    for r in range(g):
        b[r].extend(basis_v[s][r] for s in range(n))
    if not is_symplectic(field, b, j):
        raise WeyliftError("completion produced a non-symplectic basis")
    return transpose(mat_inv(field, b))


def corrector(term, flavor, field=QQ, check=True):
    """Three-generator word evaluating exactly to the unit shift of the term.

    The conjugating matrix moves the covector form onto the first
    momentum, where the potential becomes a single-coordinate shift.
    """
    n = flavor.pairs
    d = term.degree
    if d < 2:
        raise WeyliftError("corrector terms need degree at least 2")
    a = symplectic_completion(field, term.covector, flavor)
    a_fracs = tuple(tuple(Fraction(v) for v in row) for row in a)
    shift = ElementaryGen(XSHIFT, (0, {d - 1: term.lam * d}))
    gen_a = ElementaryGen(SP, a_fracs)
    inv_a = gen_a.inverse()
    gens = [inv_a, shift, gen_a]
    if check:
        acc = gen_endo(gens[2], "P", flavor, field)
        acc = gen_endo(gens[1], "P", flavor, field).compose(acc)
        acc = gen_endo(gens[0], "P", flavor, field).compose(acc)
        expected = hamiltonian_shift_endo(term.potential(field, flavor))
        if acc != expected:
            raise WeyliftError("corrector word failed its exactness check")
    return gens


def approximate(endo, n_target, tie_break="lex"):
    """Tame word agreeing with the endo below degree n_target.

    Returns (word, report).  The report lists the number of corrector
    terms per stage and the final residual height.
    """
    flavor, field = endo.flavor, endo.field
    if endo.side != "P":
        raise SideMismatch("approximation reads commutative images")
    if field.char != 0:
        raise PositiveCharacteristic("approximation runs over characteristic 0")
    if flavor.kind != STANDARD or flavor.aux:
        raise WeyliftError("approximation expects the plain paired flavor")
    check_symplecto(endo)
    jacobian_is_unit(endo)
    gr = Grading.default_for(flavor)
    maxdeg = n_target - 1
    word_gens = []
    residual = Endo(
        "P",
        flavor,
        field,
        [img.truncate(maxdeg, gr) for img in endo.images],
    )
    lin = endo.linear_part()
    ident = identity_matrix(field, flavor.main_count)
    if lin != ident:
        j = omega_matrix_raw(field, flavor)
        if not is_symplectic(field, transpose(lin), j):
            raise NotSymplectic("linear part does not preserve the pairing")
        lin_fracs = tuple(tuple(Fraction(v) for v in row) for row in lin)
        gen_lin = ElementaryGen(SP, lin_fracs)
        word_gens.append(gen_lin)
        inv_endo = gen_endo(gen_lin.inverse(), "P", flavor, field)
        residual = inv_endo.compose(residual, maxdeg, gr)
    report = {"stages": {}, "tie_break": tie_break}
    for k in range(2, n_target):
        devs = [
            (img - Poly.generator(field, flavor, i)).homogeneous_part(k, gr)
            for i, img in enumerate(residual.images)
        ]
        if all(d.is_zero for d in devs):
            report["stages"][k] = 0
            continue
        h = deviation_hamiltonian(devs, k)
        terms = waring_decompose(h, tie_break)
        report["stages"][k] = len(terms)
        for term in terms:
            gens = corrector(term, flavor, field)
            word_gens.extend(gens)
            for gen in gens:
                inv_endo = gen_endo(gen.inverse(), "P", flavor, field)
                residual = inv_endo.compose(residual, maxdeg, gr)
        left = [
            (img - Poly.generator(field, flavor, i)).height(gr)
            for i, img in enumerate(residual.images)
        ]
        if min(left) <= k:
            raise StageStall(f"stage {k} left a degree {min(left)} deviation")
    final = min(
        (img - Poly.generator(field, flavor, i)).height(gr)
        for i, img in enumerate(residual.images)
    )
    report["residual_height"] = None if final == float("inf") else final
    return TameWord("symplectic", flavor.pairs, word_gens), report
