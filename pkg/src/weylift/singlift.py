"""Curve conjugation, pole scanning, and the ordered-side lift.

A diagonal curve rescales generator i by t^(m_i); conjugating an
endomorphism and reading off negative t-exponents detects deviations
below a target height.  Members of H_N stay pole-free under every
curve of order at most N, and a deviation at height under N is exposed
by a witness curve concentrating weight at one position, possibly
after a general-position change mixing that position into the
auxiliary pair.

The lift pipeline runs the commutative staged approximation, rereads
the word on the ordered side, and certifies the result: coefficient
stabilization between consecutive approximation orders, agreement
with the fixed-prime center morphism, canonicity under a different
corrector ordering, and the commutation table.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .approx import approximate
from .charp import phi_p
from .endo import Endo, check_symplecto, jacobian_is_unit, truncated_inverse
from .errors import (
    DimensionMismatch,
    ExpansionBoundExceeded,
    IndexOutOfRange,
    InsufficientK,
    SideMismatch,
    StabilizationFailure,
    WeyliftError,
)
from .fields import Field
from .flavors import HAUG, STANDARD, BracketFlavor, Grading
from .poly import Poly, poisson_bracket
from .tame import LIN, SP, evaluate, gen_endo, transport
from .weyl import weyl_commutator, weyl_structure

STABILIZATION_MARGIN = 2


class DiagonalCurve:
    """Weights m_i >= 1; generator i is rescaled by t^(m_i)."""

    __slots__ = ("weights",)

    def __init__(self, weights):
        weights = tuple(int(m) for m in weights)
        if not weights or any(m < 1 for m in weights):
            raise WeyliftError("curve weights must be positive integers")
        self.weights = weights

    def order(self):
        return max(self.weights) // min(self.weights)

    def __repr__(self):
        return f"DiagonalCurve{self.weights}"

    def __eq__(self, other):
        if not isinstance(other, DiagonalCurve):
            return NotImplemented
        return self.weights == other.weights

    def __hash__(self):
        return hash(self.weights)


def curve_order(curve):
    return curve.order()


def conjugate_by_curve(endo, curve):
    """Exact Laurent conjugate: a monomial with main exponents l in the
    image of generator i picks up t^(sum m_j l_j + k-weights - m_i)."""
    flavor = endo.flavor
    m = curve.weights
    if len(m) != flavor.main_count:
        raise DimensionMismatch(
            f"curve has {len(m)} weights, flavor has {flavor.main_count} generators"
        )
    pair_weight = {}
    if flavor.has_k:
        for idx, (a, b) in enumerate(flavor.k_pairs):
            pair_weight[idx] = m[a] + m[b]

    def monomial_weight(key):
        w = sum(mi * e for mi, e in zip(m, flavor.main_exponents(key)))
        if flavor.has_k:
            for idx, e in enumerate(flavor.k_exponents(key)):
                if e:
                    w += pair_weight[idx] * e
        return w

    def twist(img, base):
        out = type(img)(endo.field, flavor)
        terms = {}
        slot = flavor.t_slot
        for key, c in img.terms.items():
            e = monomial_weight(key) - base
            nk = key[:slot] + (key[slot] + e,) + key[slot + 1 :]
            terms[nk] = c
        out.terms = terms
        return out

    images = [twist(img, m[i]) for i, img in enumerate(endo.images)]
    h_image = twist(endo.h_image, 0) if endo.h_image is not None else None
    k_images = None
    if endo.k_images is not None:
        k_images = [
            twist(img, pair_weight[idx]) for idx, img in enumerate(endo.k_images)
        ]
    return Endo(
        endo.side, flavor, endo.field, images, h_image, k_images, allow_free_term=True
    )


def pole_order(endo):
    """Largest pole at t = 0 across every image; 0 when regular."""
    worst = 0
    for img in endo.all_images():
        worst = max(worst, -img.min_t_exponent())
    return worst


def position_reduction(endo, pos, lam, delta):
    """Conjugate by the change g_pos -> g_pos + lam u + delta v.

    Needs the flavor with the auxiliary pair; on skew flavors the k
    images are recomputed from the bracket so the change stays
    bracket-preserving.
    """
    flavor, field = endo.flavor, endo.field
    if not flavor.aux:
        raise WeyliftError("position reduction needs the auxiliary pair")
    if endo.side != "P":
        raise SideMismatch("position reduction acts on the commutative side")
    g = flavor.main_count
    if flavor.paired:
        u_slot, v_slot = flavor.pairs - 1, 2 * flavor.pairs - 1
    else:
        u_slot, v_slot = g - 2, g - 1
    if pos in (u_slot, v_slot) or not 0 <= pos < g:
        raise IndexOutOfRange(f"position {pos} is not a reducible generator")

    def build(sign):
        images = [Poly.generator(field, flavor, i) for i in range(g)]
        extra = Poly.generator(field, flavor, u_slot).scale(
            field.from_int(sign * lam)
        ) + Poly.generator(field, flavor, v_slot).scale(field.from_int(sign * delta))
        images[pos] = images[pos] + extra
        k_images = None
        if flavor.has_k:
            k_images = [
                poisson_bracket(images[a], images[b]).shift_h(-1)
                for a, b in flavor.k_pairs
            ]
        return Endo("P", flavor, field, images, None, k_images)

    fwd, back = build(1), build(-1)
    return fwd.compose(endo).compose(back)


def _witness_curves(flavor, n, pos):
    g = flavor.main_count
    for m2 in range(1, n + 2):
        for m1 in range(n * m2, (n + 1) * m2):
            if m1 < m2:
                continue
            weights = [m2] * g
            weights[pos] = m1
            yield DiagonalCurve(weights)


class ScanVerdict:
    """Outcome of hn_scan: consistent, or a pole witness."""

    __slots__ = ("kind", "curve", "reduction")

    def __init__(self, kind, curve=None, reduction=None):
        self.kind = kind
        self.curve = curve
        self.reduction = reduction

    @property
    def consistent(self):
        return self.kind == "consistent"

    def __repr__(self):
        if self.consistent:
            return "ScanVerdict(consistent)"
        extra = f", reduction={self.reduction}" if self.reduction else ""
        return f"ScanVerdict(pole, {self.curve}{extra})"


#: (lam, delta) choices tried, in order, for the general-position change.
_REDUCTION_PAIRS = [
    (1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (1, 3), (3, 2), (2, 3), (3, 3)
]


def _special_positions(endo):
    """Generators whose own deviation monomials all contain themselves."""
    out = []
    for i, img in enumerate(endo.images):
        dev = img - Poly.generator(endo.field, endo.flavor, i)
        if dev.is_zero:
            continue
        if all(key[i] > 0 for key in dev.terms):
            out.append(i)
    return out


def hn_scan(endo, n, sample_curves=0, seed=0):
    """Look for a pole under curves of order at most n.

    Walks the deterministic witness family (every position, every
    (m_1, m_2) with m_2 <= n+1 and n m_2 <= m_1 < (n+1) m_2, so the
    order stays at most n), retries special positions after a
    general-position change when the flavor has the auxiliary pair,
    then tries sample_curves random curves.
    """
    flavor = endo.flavor
    g = flavor.main_count
    for pos in range(g):
        for curve in _witness_curves(flavor, n, pos):
            if pole_order(conjugate_by_curve(endo, curve)) > 0:
                return ScanVerdict("pole", curve)
    if flavor.aux and endo.side == "P":
        for pos in _special_positions(endo):
            reduced = None
            chosen = None
            for lam, delta in _REDUCTION_PAIRS:
                try:
                    cand = position_reduction(endo, pos, lam, delta)
                except (WeyliftError, IndexOutOfRange):
                    break
                if pos not in _special_positions(cand):
                    reduced = cand
                    chosen = (pos, lam, delta)
                    break
            if reduced is None:
                continue
            for curve in _witness_curves(flavor, n, pos):
                if pole_order(conjugate_by_curve(reduced, curve)) > 0:
                    return ScanVerdict("pole", curve, chosen)
    rng = random.Random(seed)
    for _ in range(sample_curves):
        m_min = rng.randrange(1, 4)
        weights = [rng.randrange(m_min, (n + 1) * m_min) for _ in range(g)]
        weights[rng.randrange(g)] = m_min
        curve = DiagonalCurve(weights)
        if curve.order() > n:
            continue
        if pole_order(conjugate_by_curve(endo, curve)) > 0:
            return ScanVerdict("pole", curve)
    return ScanVerdict("consistent")


def _word_is_p_integral(word, p):
    for gen in word.gens:
        if gen.kind in (SP, LIN):
            vals = [v for row in gen.data for v in row]
        else:
            vals = list(gen.data[1].values())
        for v in vals:
            if Fraction(v).denominator % p == 0:
                return False
    return True


def lifted_commutation_check(images, flavor):
    """Compare every pairwise commutator with the structure constants."""
    violations = []
    field = images[0].field
    for i in range(len(images)):
        for j in range(i + 1, len(images)):
            got = weyl_commutator(images[i], images[j])
            want = weyl_structure(flavor, field, i, j)
            if got != want:
                violations.append((i, j, got - want))
    return {"ok": not violations, "violations": violations}


def _truncated_commutation_ok(endo, maxdeg, grading):
    """Commutator table of a graded truncation, checked below maxdeg."""
    flavor, field = endo.flavor, endo.field
    g = flavor.main_count
    for i in range(g):
        for j in range(i + 1, g):
            lhs = endo.images[i].mul_truncated(
                endo.images[j], maxdeg, grading
            ) - endo.images[j].mul_truncated(endo.images[i], maxdeg, grading)
            rhs = endo.apply(weyl_structure(flavor, field, i, j), maxdeg, grading)
            if lhs != rhs:
                return False
    return True


def lift(sigma, n, primes=()):
    """Ordered-side lift of a commutative symplectomorphism, with receipts.

    Returns (lifted, certificate).  The lifted endo is the exact
    ordered evaluation of the transported approximation word when the
    expansion stays within budget, else a graded h-truncated
    evaluation; certificate["representation"] records which.  The
    certificate also records stabilization between orders n-1 and n,
    per-prime comparison against the center morphism, canonicity under
    the alternate corrector ordering, and the commutation table.
    """
    flavor, field = sigma.flavor, sigma.field
    if flavor.kind != STANDARD or flavor.aux:
        raise WeyliftError("lift expects the plain paired flavor")
    if n < 2:
        raise WeyliftError("lift needs a target order of at least 2")
    check_symplecto(sigma)
    jacobian_is_unit(sigma)
    lin = sigma.linear_part()
    for i, row in enumerate(lin):
        for j, v in enumerate(row):
            want = field.one() if i == j else field.zero()
            if not field.is_zero(field.sub(v, want)):
                raise WeyliftError(
                    "lift expects identity linear part; peel it with a tame word"
                )
    hflavor = BracketFlavor(HAUG, flavor.pairs)
    hgrading = Grading.default_for(hflavor)
    deg_sigma = max(img.degree() for img in sigma.images)
    stable_height = max(1, min(n - 2, 2 * deg_sigma + STABILIZATION_MARGIN))

    word, report = approximate(sigma, n)
    word_alt, _ = approximate(sigma, n, tie_break="alt")
    wword = transport(word)

    trunc_n = evaluate(wword, "W", hflavor, field, maxdeg=n, grading=hgrading)
    trunc_alt = evaluate(
        transport(word_alt), "W", hflavor, field, maxdeg=n, grading=hgrading
    )

    certificate = {
        "order": n,
        "word_length": len(word),
        "stages": report["stages"],
        "stable_height": stable_height,
    }

    if n >= 3:
        word_prev, _ = approximate(sigma, n - 1)
        trunc_prev = evaluate(
            transport(word_prev), "W", hflavor, field, maxdeg=n, grading=hgrading
        )
        stab_ok = all(
            (a - b).truncate(stable_height, hgrading).is_zero
            for a, b in zip(trunc_n.images, trunc_prev.images)
        )
        certificate["stabilization"] = "pass" if stab_ok else "fail"
        if not stab_ok:
            raise StabilizationFailure(
                f"lifted coefficients at heights up to {stable_height} changed "
                f"between orders {n - 1} and {n}"
            )
    else:
        certificate["stabilization"] = "trivial"

    canon_ok = all(
        (a - b).truncate(n - 1, hgrading).is_zero
        for a, b in zip(trunc_n.images, trunc_alt.images)
    )
    certificate["canonicity"] = "pass" if canon_ok else "fail"

    exact = None
    try:
        exact = evaluate(wword, "W", flavor, field)
        certificate["representation"] = "exact"
    except ExpansionBoundExceeded:
        certificate["representation"] = "truncated_haug"

    if exact is not None:
        comm = lifted_commutation_check(exact.images, flavor)
        certificate["commutation"] = "pass" if comm["ok"] else "fail"
        certificate["commutation_violations"] = len(comm["violations"])
    else:
        ok = _truncated_commutation_ok(trunc_n, n, hgrading)
        certificate["commutation"] = "pass" if ok else "fail"

    certificate["primes"] = {}
    pgrading = Grading.default_for(flavor)
    for p in primes:
        fp = Field("Fp", p)
        entry = {}
        if not _word_is_p_integral(word, p):
            entry["status"] = "inapplicable_not_p_integral"
            certificate["primes"][str(p)] = entry
            continue
        sigma_p = sigma.map_coefficients(fp.from_fraction, fp)
        ev_p = evaluate(wword, "P", flavor, fp, maxdeg=n - 1, grading=pgrading)
        target_p = Endo(
            "P",
            flavor,
            fp,
            [img.truncate(n - 1, pgrading) for img in sigma_p.images],
            allow_free_term=True,
        )
        entry["reduction_consistency"] = "pass" if ev_p == target_p else "fail"
        try:
            lifted_p = evaluate(wword, "W", flavor, fp)
            center = phi_p(lifted_p)
            renamed = Endo(
                "P",
                flavor,
                fp,
                [_reflavor(img, flavor) for img in center.images],
                allow_free_term=True,
            )
            if renamed == sigma_p:
                entry["status"] = "exact"
            else:
                expected = _center_along_word(wword, flavor, fp)
                entry["status"] = (
                    "fixture_match" if center == expected else "mismatch"
                )
        except ExpansionBoundExceeded:
            entry["status"] = "skipped_expansion_budget"
        certificate["primes"][str(p)] = entry
    certificate["pass"] = (
        certificate["stabilization"] != "fail"
        and certificate["canonicity"] == "pass"
        and certificate["commutation"] == "pass"
        and all(
            e.get("status") != "mismatch"
            and e.get("reduction_consistency", "pass") == "pass"
            for e in certificate["primes"].values()
        )
    )
    return (exact if exact is not None else trunc_n), certificate


def _reflavor(img, flavor):
    """Reread an element on a flavor with the identical key layout."""
    out = Poly(img.field, flavor)
    out.terms = dict(img.terms)
    return out


def _center_along_word(wword, flavor, fp):
    """Compose the center morphism generator by generator."""
    acc = None
    for gen in reversed(wword.gens):
        ce = phi_p(gen_endo(gen, "W", flavor, fp))
        acc = ce if acc is None else ce.compose(acc)
    if acc is None:
        acc = Endo.identity("P", flavor.center_flavor(), fp)
    return acc


def twist_psi_lambda(i, k, flavor, field):
    """u -> u + h^k x_i and p_i -> p_i - h^k v on the extended flavor."""
    if flavor.kind != HAUG or not flavor.aux:
        raise WeyliftError("twist needs the h-augmented flavor with the aux pair")
    n = flavor.pairs - 1
    if not 0 <= i < n:
        raise IndexOutOfRange(f"pair index {i} out of range for {n} pairs")
    if k < 1:
        raise WeyliftError("twist exponent k must be positive")
    g = flavor.main_count
    u_slot = flavor.pairs - 1
    v_slot = 2 * flavor.pairs - 1
    images = [Poly.generator(field, flavor, s) for s in range(g)]
    hk = Poly.h_power(field, flavor, k)
    images[u_slot] = images[u_slot] + hk * Poly.generator(field, flavor, i)
    p_slot = flavor.conjugate_index(i)
    images[p_slot] = images[p_slot] - hk * Poly.generator(field, flavor, v_slot)
    endo = Endo("P", flavor, field, images)
    check_symplecto(endo)
    return endo


def extend_to_aux(endo):
    """Reread an endo on the flavor extended by the aux pair, fixing u, v."""
    flavor = endo.flavor
    if not flavor.paired:
        raise WeyliftError("only paired flavors extend by the stable pair")
    target = flavor.extended()
    field = endo.field
    cls = type(endo.images[0])
    n = flavor.pairs

    def widen(img):
        out = cls(field, target)
        terms = {}
        for key, c in img.terms.items():
            main = flavor.main_exponents(key)
            new_main = main[:n] + (0,) + main[n:] + (0,)
            terms[new_main + key[flavor.main_count :]] = c
        out.terms = terms
        return out

    images = [widen(img) for img in endo.images]
    u_img = cls.generator(field, target, n)
    v_img = cls.generator(field, target, 2 * n + 1)
    images = images[:n] + [u_img] + images[n:] + [v_img]
    h_image = widen(endo.h_image) if endo.h_image is not None else None
    return Endo(endo.side, target, field, images, h_image, allow_free_term=True)


def twist_conjugate(phi, psi, phi_inv=None, order=None):
    """phi o psi o phi_inv; InsufficientK when h-poles survive."""
    if phi_inv is None:
        if order is None:
            raise WeyliftError("supply phi_inv or a truncation order")
        phi_inv = truncated_inverse(phi, order)
    out = phi.compose(psi).compose(phi_inv)
    for img in out.all_images():
        if img.min_h_exponent() < 0:
            raise InsufficientK(
                "negative powers of h survive; raise the twist exponent k"
            )
    return out


def h_weight_conjugate(endo, exponents):
    """Conjugate by the diagonal h-rescaling g_i -> h^(e_i) g_i.

    The monomial rule matches conjugate_by_curve with h in place of t,
    so images may pick up negative h powers; useful for building
    h-Laurent subjects for the twist.
    """
    flavor, field = endo.flavor, endo.field
    if not flavor.has_h:
        raise WeyliftError("h rescaling needs an h symbol")
    if len(exponents) != flavor.main_count:
        raise DimensionMismatch("one exponent per main generator required")

    def twist(img, base):
        out = type(img)(field, flavor)
        slot = flavor.h_slot
        terms = {}
        for key, c in img.terms.items():
            e = sum(
                ei * li for ei, li in zip(exponents, flavor.main_exponents(key))
            ) - base
            nk = key[:slot] + (key[slot] + e,) + key[slot + 1 :]
            prev = terms.get(nk)
            terms[nk] = c if prev is None else field.add(prev, c)
        out.terms = {k: v for k, v in terms.items() if not field.is_zero(v)}
        return out

    images = [twist(img, exponents[i]) for i, img in enumerate(endo.images)]
    k_images = None
    if endo.k_images is not None:
        k_images = [
            twist(img, exponents[a] + exponents[b])
            for (a, b), img in zip(flavor.k_pairs, endo.k_images)
        ]
    return Endo(
        endo.side, flavor, field, images, endo.h_image, k_images, allow_free_term=True
    )
