"""Three independent constructions of sigma(log Q) for Q = |xi|**2 + lower order.

All three routes produce the classical part of the logarithmic symbol down to
degree -n, plus the universal 2 log|xi| term:

* `log_via_ch`     -- Campbell-Hausdorff: log_star(1+u) corrected by nested
                      Lie monomials bracketing against log|xi|**2.
* `log_via_taylor` -- noncommutative Taylor expansion in iterated
                      (L_x + Delta_x) applications with universal rational
                      weights.
* `log_via_seeley` -- resolvent recursion with a symbolic spectral parameter,
                      closed-form Cauchy integrals and a z-derivative at 0.

Route agreement on random inputs is the library's main self-check.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .residue import residue_density
from .scalars import PiScalar, Scalar
from .symbols import (
    ClassicalSymbol,
    HomSymbol,
    LogSymbol,
    XPoly,
    _alpha_factorial,
    _poly_add,
    _poly_mul,
    ad_xi2,
    log_bracket,
    neumann_log,
    star,
    star_bracket,
)

# ---------------------------------------------------------------------------
# Campbell-Hausdorff Lie monomials


@lru_cache(maxsize=None)
def lie_words(k: int):
    """Bracket words and rational weights of the degree-k Lie monomial C^(k)(P, Q).

    Derived from the integral form log(e^P e^Q) = P + int_0^1
    psi(e^{ad_P} e^{t ad_Q})(Q) dt with psi(x) = x log x / (x - 1): expanding
    psi(1+u) = 1 + sum_j (-1)^{j+1}/(j(j+1)) u^j and collecting words of total
    ad-length k-1 applied to the trailing Q gives coefficient

        (-1)^{j+1} / ( j (j+1) (1 + sum beta) prod alpha_i! beta_i! )

    for each j-tuple of pairs (alpha_i, beta_i) != (0,0).  Words ending in
    ad_Q drop since ad_Q(Q) = 0.  The enumeration is pinned by exact agreement
    with the classical series through degree 5 (see the test-suite oracle).

    Returns a dict mapping letter strings over {'P','Q'} (outermost first,
    applied to Q) to Fractions.
    """
    if k < 2:
        raise ValueError("Lie monomials start at degree 2")
    words: dict[str, Fraction] = {}
    target = k - 1

    def tuples(remaining, j_left):
        if remaining == 0:
            yield ()
            return
        if j_left == 0:
            return
        for a in range(remaining + 1):
            for b in range(remaining - a + 1):
                if a + b == 0:
                    continue
                for rest in tuples(remaining - a - b, j_left - 1):
                    yield ((a, b),) + rest

    for j in range(1, target + 1):
        outer = Fraction((-1) ** (j + 1), j * (j + 1))
        for tup in tuples(target, j):
            if len(tup) != j:
                continue
            word = "".join("P" * a + "Q" * b for a, b in tup)
            if word.endswith("Q"):
                continue  # ad_Q(Q) = 0
            denom = 1 + sum(b for _, b in tup)
            for a, b in tup:
                denom *= factorial(a) * factorial(b)
            coeff = outer / denom
            words[word] = words.get(word, Fraction(0)) + coeff
    return {w: c for w, c in words.items() if c != 0}


def lie_monomial(k: int, tau: ClassicalSymbol, floor=None) -> ClassicalSymbol:
    """C_star^(k)(log|xi|**2, tau): slot P acts by log_bracket, slot Q by
    star-bracketing with tau."""
    if floor is None:
        floor = tau.floor
    out = ClassicalSymbol.zero(tau.n, tau.dw, tau.order - 1, floor)
    for word, coeff in lie_words(k).items():
        val = tau
        for letter in reversed(word):
            if letter == "P":
                val = log_bracket(val, floor)
            else:
                val = star_bracket(tau, val, floor)
            if val.is_zero():
                break
        if not val.is_zero():
            out = out + val.scale(coeff)
    return out


# ---------------------------------------------------------------------------
# route 1: Campbell-Hausdorff


def _check_generalised_laplacian(q_lower: ClassicalSymbol):
    if q_lower.order >= 2 and not q_lower.is_zero():
        raise ValueError("lower-order part must have order < 2")


def log_via_ch(q_lower: ClassicalSymbol, n: int) -> LogSymbol:
    _check_generalised_laplacian(q_lower)
    floor = -n
    dw = q_lower.dw
    if q_lower.is_zero():
        return LogSymbol(2, ClassicalSymbol.zero(n, dw, -1, floor))
    inv = ClassicalSymbol.xi_power(n, -1, dw, floor=floor - 2)
    u = star(inv, q_lower.truncate(floor), floor)
    v = neumann_log(u, floor)
    out = v
    for k in range(2, n + 1):
        out = out + lie_monomial(k, v, floor)
    return LogSymbol(2, out)


# ---------------------------------------------------------------------------
# route 2: noncommutative Taylor


def _compositions(total, parts):
    """All tuples of `parts` nonnegative integers summing to `total`."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def log_via_taylor(q_lower: ClassicalSymbol, n: int) -> LogSymbol:
    _check_generalised_laplacian(q_lower)
    floor = -n
    dw = q_lower.dw
    if q_lower.is_zero():
        return LogSymbol(2, ClassicalSymbol.zero(n, dw, -1, floor))
    # iterated (L_x + Delta_x) applications, computed once
    max_k = n - 1
    ads = [q_lower]
    for _ in range(max_k):
        ads.append(ad_xi2(ads[-1], 1))
    out = ClassicalSymbol.zero(n, dw, -1, floor)
    for p in range(1, n + 1):
        for total_k in range(0, n - p + 1):
            for ks in _compositions(total_k, p):
                denom = 1
                partial = 0
                for i, ki in enumerate(ks, start=1):
                    denom *= factorial(ki)
                    partial += ki
                    denom *= partial + i
                weight = Fraction(
                    (-1) ** (total_k + p - 1) * factorial(total_k + p - 1), denom
                )
                # the trailing |xi|**(-2(|k|+p)) lowers every degree, so the
                # final p-fold product only needs this coarser floor; the
                # partial products get it loosened by the orders (at most
                # 1 + k_j) of the factors still to come
                part_floor = floor + 2 * (total_k + p)
                suffix = [0] * (p + 1)
                for i in range(p - 1, -1, -1):
                    suffix[i] = suffix[i + 1] + 1 + ks[i]
                prod = ads[ks[0]].truncate(part_floor - suffix[1])
                for i, ki in enumerate(ks[1:], start=1):
                    prod = star(prod, ads[ki], part_floor - suffix[i + 1])
                    if prod.is_zero():
                        break
                if prod.is_zero():
                    continue
                tail = ClassicalSymbol.xi_power(
                    n, -(total_k + p), dw, floor=-2 * (total_k + p)
                )
                term = prod.pointwise_mul(tail, floor).scale(weight)
                out = out + term
    return LogSymbol(2, out)


# ---------------------------------------------------------------------------
# route 3: Seeley resolvent recursion
#
# A resolvent component sigma_{-2-j}(r) is a sum of terms
# C(x, xi) * (|xi|**2 - lambda)**(-1-k) with polynomial C of xi-degree 2k - j.
# Terms are stored as dicts k -> HomSymbol (with M = 0).  The Cauchy integral
#
#     (2 i pi)**(-1) int_Gamma lambda**z (q - lambda)**(-1-k) dlambda
#         = (-1)**k z(z-1)...(z-k+1)/k! * q**(z-k)
#
# (falling factorial; orientation fixed so that k = 0 reproduces q**z) turns
# each term into a z-polynomial times q**(z-k); the z-derivative at 0 yields
# the factor -1/k, and the absence of k = 0 terms for j >= 1 is asserted --
# that is the symbol-level cancellation of all log|xi| contributions.


def _rterm_add(terms, k, h):
    cur = terms.get(k)
    s = h if cur is None else cur + h
    if s.is_zero():
        terms.pop(k, None)
    else:
        terms[k] = s


def _rterm_dxi(terms, a, n, dw):
    out = {}
    for k, h in terms.items():
        dh = h.dxi(a)
        if not dh.is_zero():
            _rterm_add(out, k, dh)
        # derivative of (q - lambda)**(-1-k): factor (-1-k) * 2 xi_a
        shifted = h.mul_xi(a).scale(Fraction(-2 * (1 + k), 1))
        if not shifted.is_zero():
            _rterm_add(out, k + 1, shifted)
    return out


def _rterm_dx(terms, a):
    out = {}
    for k, h in terms.items():
        dh = h.dx(a)
        if not dh.is_zero():
            _rterm_add(out, k, dh)
    return out


def log_via_seeley(q_lower: ClassicalSymbol, n: int) -> LogSymbol:
    _check_generalised_laplacian(q_lower)
    floor = -n
    dw = q_lower.dw
    if q_lower.is_zero():
        return LogSymbol(2, ClassicalSymbol.zero(n, dw, -1, floor))
    one = HomSymbol.xi_power(n, 0, dw)
    # full symbol components sigma_{2-k}(Q) as plain polynomials (M = 0)
    q2 = HomSymbol.xi_power(n, 1, dw)
    sym = {0: q2}
    for d, h in q_lower.comps.items():
        if h.M != 0:
            raise ValueError("generalised-Laplacian input must be polynomial in xi")
        sym[2 - d] = h
    # resolvent components, j = 0 .. n
    res = {0: {0: one}}
    for j in range(1, n + 1):
        acc: dict[int, HomSymbol] = {}
        for kq, hq in sym.items():
            for l, rterms in res.items():
                rem = j - kq - l
                if rem < 0 or l >= j:
                    continue
                # sum over alpha with |alpha| = rem
                for alpha in _multi_indices(n, rem):
                    hq_d = hq
                    for a in range(1, n + 1):
                        for _ in range(alpha[a - 1]):
                            hq_d = hq_d.dxi(a)
                        if hq_d.is_zero():
                            break
                    if hq_d.is_zero():
                        continue
                    terms = rterms
                    for a in range(1, n + 1):
                        for _ in range(alpha[a - 1]):
                            terms = _rterm_dx(terms, a)
                        if not terms:
                            break
                    if not terms:
                        continue
                    coeff = (Scalar(0, -1) ** rem) * Scalar(
                        Fraction(1, _alpha_factorial(alpha))
                    )
                    for k, h in terms.items():
                        _rterm_add(acc, k, (hq_d * h).scale(coeff))
        # multiply by -sigma_{-2}(r) = -(q - lambda)**(-1): shift k by one
        res[j] = {k + 1: (-h) for k, h in acc.items()}
    # Cauchy integral and z-derivative at zero
    comps = {}
    for j in range(1, n + 1):
        total = None
        for k, h in res[j].items():
            if k == 0:
                raise AssertionError(
                    "uncancelled log|xi| term in the Seeley expansion"
                )
            # d/dz [(-1)**k z(z-1)...(z-k+1)/k!] at z=0  ->  -1/k
            piece = HomSymbol(
                h.n, h.dw, h.degree - 2 * k, h.M + k, h.num
            ).scale(Fraction(-1, k))
            total = piece if total is None else total + piece
        if total is not None and not total.is_zero():
            comps[-j] = total
    return LogSymbol(2, ClassicalSymbol(n, dw, -1, floor, comps))


def _multi_indices(n, total):
    if n == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _multi_indices(n - 1, total - first):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# residue of the log

_ROUTES = {"ch": log_via_ch, "taylor": log_via_taylor, "seeley": log_via_seeley}


def log_symbol(q_lower: ClassicalSymbol, n: int, method: str = "taylor") -> LogSymbol:
    try:
        route = _ROUTES[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}; choose from {sorted(_ROUTES)}")
    return route(q_lower, n)


def res_log(
    q_lower: ClassicalSymbol, n: int, method: str = "taylor", trace_kind: str = "tr"
) -> PiScalar:
    """Residue density of log(|xi|**2 + q_lower) at x = 0.

    The 2 log|xi| part carries no degree -n classical component, so only the
    classical part of the chosen route enters.
    """
    sym = log_symbol(q_lower, n, method)
    return residue_density(sym.classical, trace_kind)


def zeta0(res: PiScalar) -> PiScalar:
    """zeta_Q(0) = -(1/2) res(log Q) for a second-order Q."""
    return res * Fraction(-1, 2)
