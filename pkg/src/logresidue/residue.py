"""Exact cosphere integration and the (super-)residue density at the chart center.

The density returned is the coefficient of the volume form at the center of
the normal chart, as a Gaussian rational times a power of pi.  The positive
normalisation

    res_x(A) = (2 pi)**(-n)  *  integral_{|xi|=1} tr(sigma_{-n}(A))

is used uniformly for both tr and str.
"""

from __future__ import annotations

from fractions import Fraction

from .clifford import cl_str, cl_tr
from .scalars import PiScalar, Scalar
from .symbols import ClassicalSymbol


def _double_factorial(k):
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def sphere_volume(n: int) -> PiScalar:
    """vol(S^{n-1}) = 2 pi**p / (p-1)! for n = 2p."""
    if n % 2 != 0 or n <= 0:
        raise ValueError("even positive dimension required")
    p = n // 2
    from math import factorial

    return PiScalar(Scalar(Fraction(2, factorial(p - 1))), p)


def sphere_moment(n: int, alpha) -> PiScalar:
    """Integral of xi**alpha over the unit sphere S^{n-1}, exactly.

    Vanishes when any exponent is odd; otherwise equals
    vol(S^{n-1}) * prod (alpha_i - 1)!! / prod_{j<|alpha|/2} (n + 2j).
    """
    alpha = tuple(alpha)
    if len(alpha) != n:
        raise ValueError("exponent length must equal the dimension")
    if any(a < 0 for a in alpha):
        raise ValueError("exponents must be nonnegative")
    if any(a % 2 == 1 for a in alpha):
        return PiScalar(0)
    half = sum(alpha) // 2
    numer = 1
    for a in alpha:
        numer *= _double_factorial(a - 1)
    denom = 1
    for j in range(half):
        denom *= n + 2 * j
    return sphere_volume(n) * Scalar(Fraction(numer, denom))


def residue_density(s: ClassicalSymbol, trace_kind: str = "tr") -> PiScalar:
    """Residue density of a classical symbol at x = 0.

    Evaluates the degree -n component at the chart center, integrates each
    xi-monomial over the unit cosphere (where the q-denominator drops), takes
    the fibrewise trace or supertrace and multiplies by (2 pi)**(-n).
    """
    n = s.n
    if trace_kind not in ("tr", "str"):
        raise ValueError("trace_kind must be 'tr' or 'str'")
    if s.floor > -n:
        raise ValueError(
            f"symbol truncated above degree {-n}: floor={s.floor}, need floor <= {-n}"
        )
    comp = s.component(-n)
    trace = cl_str if trace_kind == "str" else cl_tr
    total = PiScalar(0)
    for xi_exp, coeff in comp.num.items():
        cliff = coeff.eval0()
        if cliff.is_zero():
            continue
        t = trace(cliff)
        if t.is_zero():
            continue
        moment = sphere_moment(n, xi_exp)
        if moment.is_zero():
            continue
        total = total + moment * t
    norm = PiScalar(Scalar(Fraction(1, 2 ** n)), -n)
    return total * norm
