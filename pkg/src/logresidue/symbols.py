"""Graded algebra of formal polyhomogeneous symbols with Clifford-matrix coefficients.

A homogeneous component of degree d is stored as N(x, xi) / |xi|**(2M) with
an honest polynomial numerator: every xi-monomial of N has total degree
d + 2M, and |xi|**2 is always kept expanded as q = sum_a xi_a**2.  Equality of
components is decided by cross multiplication, so all operations are
representation independent.

The star product is the symbol composition law

    s * t = sum_alpha (-i)**|alpha| / alpha!  d_xi^alpha s  d_x^alpha t,

truncated below an explicit floor degree that every caller supplies.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .clifford import CliffordElem
from .scalars import Scalar, as_scalar, MINUS_I

# ---------------------------------------------------------------------------
# x-polynomials with Clifford coefficients


class XPoly:
    """Polynomial in x_1..x_n with CliffordElem coefficients, finite support."""

    __slots__ = ("n", "dw", "terms")

    def __init__(self, n, dw, terms):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "dw", dw)
        object.__setattr__(
            self, "terms", {e: c for e, c in terms.items() if not c.is_zero()}
        )

    def __setattr__(self, name, value):
        raise AttributeError("XPoly is immutable")

    @classmethod
    def zero(cls, n, dw=1):
        return cls(n, dw, {})

    @classmethod
    def const(cls, c: CliffordElem):
        return cls(c.n, c.dw, {(0,) * c.n: c})

    @classmethod
    def monomial(cls, exp, c: CliffordElem):
        if len(exp) != c.n:
            raise ValueError("x-exponent length must equal the dimension")
        return cls(c.n, c.dw, {tuple(exp): c})

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            cur = out.get(e)
            s = c if cur is None else cur + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return XPoly(self.n, self.dw, out)

    def __neg__(self):
        return XPoly(self.n, self.dw, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Product; Clifford coefficients multiply in left-to-right order."""
        out = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(a + b for a, b in zip(ea, eb))
                c = ca * cb
                cur = out.get(e)
                out[e] = c if cur is None else cur + c
        return XPoly(self.n, self.dw, out)

    def scale(self, c):
        c = as_scalar(c)
        return XPoly(self.n, self.dw, {e: co.scale(c) for e, co in self.terms.items()})

    def dx(self, a):
        """Partial derivative in x_a (1-based)."""
        out = {}
        for e, c in self.terms.items():
            k = e[a - 1]
            if k == 0:
                continue
            e2 = e[: a - 1] + (k - 1,) + e[a:]
            c2 = c.scale(k)
            cur = out.get(e2)
            out[e2] = c2 if cur is None else cur + c2
        return XPoly(self.n, self.dw, out)

    def eval0(self) -> CliffordElem:
        """Value at x = 0."""
        return self.terms.get((0,) * self.n, CliffordElem.zero(self.n, self.dw))

    def xdegree(self):
        """Maximal total x-degree, or -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, XPoly):
            return NotImplemented
        return self.n == other.n and self.dw == other.dw and self.terms == other.terms

    def __repr__(self):
        return f"XPoly({self.terms!r})"


# ---------------------------------------------------------------------------
# xi-polynomial helpers (dict xi-exponent -> XPoly)


def _poly_add(p, q):
    out = dict(p)
    for e, c in q.items():
        cur = out.get(e)
        s = c if cur is None else cur + c
        if s.is_zero():
            out.pop(e, None)
        else:
            out[e] = s
    return out


def _poly_mul(p, q):
    out = {}
    for ea, ca in p.items():
        for eb, cb in q.items():
            e = tuple(a + b for a, b in zip(ea, eb))
            c = ca * cb
            cur = out.get(e)
            s = c if cur is None else cur + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
    return out


def _poly_mul_q(p, n):
    """Multiply a xi-polynomial by q = sum_a xi_a**2."""
    out = {}
    for e, c in p.items():
        for a in range(n):
            e2 = e[:a] + (e[a] + 2,) + e[a + 1 :]
            cur = out.get(e2)
            s = c if cur is None else cur + c
            if s.is_zero():
                out.pop(e2, None)
            else:
                out[e2] = s
    return out


def _poly_divmod_q(p, n):
    """Divide by q = sum xi_a**2 (lex long division); returns (quotient, ok)."""
    rem = dict(p)
    quo = {}
    while rem:
        e = max(rem)  # lex-largest monomial
        if e[0] < 2:
            return None, False
        c = rem.pop(e)
        e0 = (e[0] - 2,) + e[1:]
        cur = quo.get(e0)
        quo[e0] = c if cur is None else cur + c
        # subtract c * q * xi^e0; the a = 0 term is the popped monomial itself
        for a in range(1, n):
            e2 = e0[:a] + (e0[a] + 2,) + e0[a + 1 :]
            cur = rem.get(e2)
            s = (-c) if cur is None else cur - c
            if s.is_zero():
                rem.pop(e2, None)
            else:
                rem[e2] = s
    return quo, True


# ---------------------------------------------------------------------------
# homogeneous components


class HomSymbol:
    """xi-homogeneous component N(x, xi) / q**M of degree d, q = |xi|**2."""

    __slots__ = ("n", "dw", "degree", "M", "num")

    def __init__(self, n, dw, degree, M, num, reduce=True):
        if M < 0:
            raise ValueError("denominator power must be nonnegative")
        num = {e: c for e, c in num.items() if not c.is_zero()}
        for e in num:
            if sum(e) != degree + 2 * M:
                raise ValueError(
                    f"numerator monomial {e} is not homogeneous of degree {degree + 2 * M}"
                )
        if reduce and M > 0 and num:
            num, M = _reduce_num(num, M, n)
        if not num:
            M = 0
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "dw", dw)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "M", M)
        object.__setattr__(self, "num", num)

    def __setattr__(self, name, value):
        raise AttributeError("HomSymbol is immutable")

    @classmethod
    def zero(cls, n, dw, degree):
        return cls(n, dw, degree, 0, {})

    @classmethod
    def xi_power(cls, n, m, dw=1):
        """|xi|**(2m) as a component of degree 2m."""
        one = XPoly.const(CliffordElem.one(n, dw))
        if m >= 0:
            num = {(0,) * n: one}
            for _ in range(m):
                num = _poly_mul_q(num, n)
            return cls(n, dw, 2 * m, 0, num)
        return cls(n, dw, 2 * m, -m, {(0,) * n: one})

    @classmethod
    def from_xpoly(cls, degree, xi_exp, coeff: XPoly):
        return cls(coeff.n, coeff.dw, degree, 0, {tuple(xi_exp): coeff})

    def __add__(self, other):
        if self.degree != other.degree:
            raise ValueError("cannot add components of different degrees")
        a, b = self, other
        num_a, num_b = a.num, b.num
        M = max(a.M, b.M)
        for _ in range(M - a.M):
            num_a = _poly_mul_q(num_a, self.n)
        for _ in range(M - b.M):
            num_b = _poly_mul_q(num_b, self.n)
        return HomSymbol(self.n, self.dw, self.degree, M, _poly_add(num_a, num_b))

    def __neg__(self):
        return HomSymbol(
            self.n, self.dw, self.degree, self.M,
            {e: -c for e, c in self.num.items()}, reduce=False,
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Product of components; Clifford parts multiply left-to-right."""
        return HomSymbol(
            self.n, self.dw, self.degree + other.degree, self.M + other.M,
            _poly_mul(self.num, other.num),
        )

    def scale(self, c):
        c = as_scalar(c)
        return HomSymbol(
            self.n, self.dw, self.degree, self.M,
            {e: co.scale(c) for e, co in self.num.items()}, reduce=False,
        )

    def dxi(self, a):
        """Partial derivative in xi_a (1-based); quotient rule for q powers."""
        dnum = {}
        for e, c in self.num.items():
            k = e[a - 1]
            if k == 0:
                continue
            e2 = e[: a - 1] + (k - 1,) + e[a:]
            c2 = c.scale(k)
            cur = dnum.get(e2)
            dnum[e2] = c2 if cur is None else cur + c2
        if self.M == 0:
            return HomSymbol(self.n, self.dw, self.degree - 1, 0, dnum, reduce=False)
        # (dN q - 2M N xi_a) / q**(M+1)
        part1 = _poly_mul_q(dnum, self.n)
        part2 = {}
        for e, c in self.num.items():
            e2 = e[: a - 1] + (e[a - 1] + 1,) + e[a:]
            part2[e2] = c.scale(-2 * self.M)
        return HomSymbol(
            self.n, self.dw, self.degree - 1, self.M + 1, _poly_add(part1, part2)
        )

    def dx(self, a):
        return HomSymbol(
            self.n, self.dw, self.degree, self.M,
            {e: c.dx(a) for e, c in self.num.items()}, reduce=False,
        )

    def mul_xi(self, a):
        """Multiply by xi_a; degree rises by one."""
        num = {}
        for e, c in self.num.items():
            e2 = e[: a - 1] + (e[a - 1] + 1,) + e[a:]
            num[e2] = c
        return HomSymbol(self.n, self.dw, self.degree + 1, self.M, num, reduce=False)

    def eval_x0(self):
        """Set x = 0 in every coefficient."""
        num = {e: XPoly.const(c.eval0()) for e, c in self.num.items()}
        return HomSymbol(self.n, self.dw, self.degree, self.M, num, reduce=False)

    def xdegree(self):
        return max((c.xdegree() for c in self.num.values()), default=-1)

    def is_zero(self):
        return not self.num

    def semantically_equal(self, other) -> bool:
        if self.degree != other.degree:
            return self.is_zero() and other.is_zero()
        diff = self - other
        return diff.is_zero()

    def __eq__(self, other):
        if not isinstance(other, HomSymbol):
            return NotImplemented
        return self.semantically_equal(other)

    def __repr__(self):
        return f"HomSymbol(deg={self.degree}, M={self.M}, num={self.num!r})"


def _reduce_num(num, M, n):
    """Strip common q factors from a numerator to bound growth."""
    while M > 0:
        quo, ok = _poly_divmod_q(num, n)
        if not ok:
            break
        num, M = quo, M - 1
    return num, M


# ---------------------------------------------------------------------------
# classical symbols


class ClassicalSymbol:
    """Finite graded family of homogeneous components, truncated below `floor`."""

    __slots__ = ("n", "dw", "order", "floor", "comps")

    def __init__(self, n, dw, order, floor, comps):
        comps = {
            d: h for d, h in comps.items() if d >= floor and not h.is_zero()
        }
        for d, h in comps.items():
            if h.degree != d:
                raise ValueError("component degree does not match its key")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "dw", dw)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "floor", floor)
        object.__setattr__(self, "comps", comps)

    def __setattr__(self, name, value):
        raise AttributeError("ClassicalSymbol is immutable")

    @classmethod
    def zero(cls, n, dw=1, order=0, floor=None):
        if floor is None:
            floor = -n
        return cls(n, dw, order, floor, {})

    @classmethod
    def one(cls, n, dw=1, floor=None):
        if floor is None:
            floor = -n
        return cls(n, dw, 0, floor, {0: HomSymbol.xi_power(n, 0, dw)})

    @classmethod
    def xi2(cls, n, dw=1, floor=None):
        if floor is None:
            floor = -n
        return cls(n, dw, 2, floor, {2: HomSymbol.xi_power(n, 1, dw)})

    @classmethod
    def xi_power(cls, n, m, dw=1, floor=None):
        if floor is None:
            floor = -n
        return cls(n, dw, 2 * m, floor, {2 * m: HomSymbol.xi_power(n, m, dw)})

    @classmethod
    def constant(cls, n, c, dw=1, floor=None):
        if floor is None:
            floor = -n
        h = HomSymbol.xi_power(n, 0, dw).scale(c)
        return cls(n, dw, 0, floor, {0: h})

    @classmethod
    def from_components(cls, comps, order=None, floor=None):
        first = next(iter(comps.values()))
        degs = list(comps)
        if order is None:
            order = max(degs)
        if floor is None:
            floor = min(degs + [-first.n])
        return cls(first.n, first.dw, order, floor, dict(comps))

    def component(self, d) -> HomSymbol:
        h = self.comps.get(d)
        if h is None:
            return HomSymbol.zero(self.n, self.dw, d)
        return h

    def __add__(self, other):
        floor = max(self.floor, other.floor)
        out = dict(self.comps)
        for d, h in other.comps.items():
            cur = out.get(d)
            out[d] = h if cur is None else cur + h
        return ClassicalSymbol(
            self.n, self.dw, max(self.order, other.order), floor, out
        )

    def __neg__(self):
        return ClassicalSymbol(
            self.n, self.dw, self.order, self.floor,
            {d: -h for d, h in self.comps.items()},
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = as_scalar(c)
        if c.is_zero():
            return ClassicalSymbol.zero(self.n, self.dw, self.order, self.floor)
        return ClassicalSymbol(
            self.n, self.dw, self.order, self.floor,
            {d: h.scale(c) for d, h in self.comps.items()},
        )

    def pointwise_mul(self, other, floor=None):
        """Plain (non-star) product, valid when one factor is x-independent
        and central, e.g. multiplication by |xi|**(2m)."""
        if floor is None:
            floor = max(self.floor, other.floor)
        out = {}
        for d1, h1 in self.comps.items():
            for d2, h2 in other.comps.items():
                d = d1 + d2
                if d < floor:
                    continue
                h = h1 * h2
                cur = out.get(d)
                out[d] = h if cur is None else cur + h
        return ClassicalSymbol(self.n, self.dw, self.order + other.order, floor, out)

    def eval_x0(self):
        return ClassicalSymbol(
            self.n, self.dw, self.order, self.floor,
            {d: h.eval_x0() for d, h in self.comps.items()},
        )

    def truncate(self, floor):
        return ClassicalSymbol(self.n, self.dw, self.order, floor, self.comps)

    def xdegree(self):
        return max((h.xdegree() for h in self.comps.values()), default=-1)

    def is_zero(self):
        return not self.comps

    def semantically_equal(self, other) -> bool:
        floor = max(self.floor, other.floor)
        degs = set(self.comps) | set(other.comps)
        for d in degs:
            if d < floor:
                continue
            if not self.component(d).semantically_equal(other.component(d)):
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, ClassicalSymbol):
            return NotImplemented
        return self.semantically_equal(other)

    def __repr__(self):
        degs = sorted(self.comps, reverse=True)
        return f"ClassicalSymbol(order={self.order}, floor={self.floor}, degrees={degs})"


class LogSymbol:
    """log_coeff * log|xi| plus a classical symbol."""

    __slots__ = ("log_coeff", "classical")

    def __init__(self, log_coeff, classical: ClassicalSymbol):
        object.__setattr__(self, "log_coeff", as_scalar(log_coeff))
        object.__setattr__(self, "classical", classical)

    def __setattr__(self, name, value):
        raise AttributeError("LogSymbol is immutable")

    def __repr__(self):
        return f"LogSymbol({self.log_coeff!r}*log|xi| + {self.classical!r})"


# ---------------------------------------------------------------------------
# derivative tables


def _xi_derivatives(h: HomSymbol, max_order, n):
    """All d_xi^alpha h with |alpha| <= max_order, keyed by alpha."""
    table = {(0,) * n: h}
    level = [(0,) * n]
    for _ in range(max_order):
        nxt = []
        for alpha in level:
            base = table[alpha]
            for a in range(1, n + 1):
                alpha2 = alpha[: a - 1] + (alpha[a - 1] + 1,) + alpha[a:]
                if alpha2 not in table:
                    table[alpha2] = base.dxi(a)
                    nxt.append(alpha2)
        level = nxt
    return table


def _x_derivatives(h: HomSymbol, max_order, n):
    table = {(0,) * n: h}
    level = [(0,) * n]
    for _ in range(max_order):
        nxt = []
        for alpha in level:
            base = table[alpha]
            if base.is_zero():
                continue
            for a in range(1, n + 1):
                alpha2 = alpha[: a - 1] + (alpha[a - 1] + 1,) + alpha[a:]
                if alpha2 not in table:
                    table[alpha2] = base.dx(a)
                    nxt.append(alpha2)
        level = nxt
    return table


def _alpha_factorial(alpha):
    out = 1
    for a in alpha:
        out *= factorial(a)
    return out


# ---------------------------------------------------------------------------
# star product and friends


def star(s: ClassicalSymbol, t: ClassicalSymbol, floor=None) -> ClassicalSymbol:
    """Symbol composition s * t truncated below `floor`."""
    if s.n != t.n or s.dw != t.dw:
        raise ValueError("symbol dimension mismatch")
    n = s.n
    if floor is None:
        floor = max(s.floor, t.floor)
    out = {}
    for d2, h2 in t.comps.items():
        xdeg2 = h2.xdegree()
        if xdeg2 < 0:
            continue
        dx_table = None
        for d1, h1 in s.comps.items():
            max_a = min(xdeg2, d1 + d2 - floor)
            if max_a < 0:
                continue
            if dx_table is None:
                dx_table = _x_derivatives(h2, xdeg2, n)
            dxi_table = _xi_derivatives(h1, max_a, n)
            for alpha, h1d in dxi_table.items():
                k = sum(alpha)
                if k > max_a or h1d.is_zero():
                    continue
                h2d = dx_table.get(alpha)
                if h2d is None or h2d.is_zero():
                    continue
                d = d1 + d2 - k
                coeff = (MINUS_I ** k) * Scalar(Fraction(1, _alpha_factorial(alpha)))
                term = (h1d * h2d).scale(coeff)
                cur = out.get(d)
                out[d] = term if cur is None else cur + term
    return ClassicalSymbol(n, s.dw, s.order + t.order, floor, out)


def star_bracket(s, t, floor=None):
    return star(s, t, floor) - star(t, s, floor)


def ad_xi2(t: ClassicalSymbol, k: int) -> ClassicalSymbol:
    """(L_x + Delta_x)**k t with L_x = -2i sum xi_a d_{x_a}, Delta_x = -sum d_{x_a}**2."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = t
    for _ in range(k):
        comps = {}
        for d, h in out.comps.items():
            for a in range(1, out.n + 1):
                ha = h.dx(a)
                if not ha.is_zero():
                    # L_x part, degree d + 1
                    term = ha.mul_xi(a).scale(Scalar(0, -2))
                    cur = comps.get(d + 1)
                    comps[d + 1] = term if cur is None else cur + term
                    # Delta_x part, degree d
                    haa = ha.dx(a)
                    if not haa.is_zero():
                        term = -haa
                        cur = comps.get(d)
                        comps[d] = term if cur is None else cur + term
        out = ClassicalSymbol(out.n, out.dw, out.order + 1, out.floor, comps)
    return out


def _log_q_derivatives(n, dw, max_order):
    """d_xi^alpha log|xi|**2 for 1 <= |alpha| <= max_order, as homogeneous symbols."""
    one = CliffordElem.one(n, dw)
    table = {}
    zero_alpha = (0,) * n
    # seed: d_a log q = 2 xi_a / q
    level = []
    for a in range(1, n + 1):
        alpha = zero_alpha[: a - 1] + (1,) + zero_alpha[a:]
        num = {alpha: XPoly.const(one.scale(2))}
        table[alpha] = HomSymbol(n, dw, -1, 1, num)
        level.append(alpha)
    for _ in range(max_order - 1):
        nxt = []
        for alpha in level:
            base = table[alpha]
            for a in range(1, n + 1):
                alpha2 = alpha[: a - 1] + (alpha[a - 1] + 1,) + alpha[a:]
                if alpha2 not in table:
                    table[alpha2] = base.dxi(a)
                    nxt.append(alpha2)
        level = nxt
    return table


def log_bracket(t: ClassicalSymbol, floor=None) -> ClassicalSymbol:
    """{log|xi|**2, t}_star; classical, of order ord(t) - 1."""
    n = t.n
    if floor is None:
        floor = t.floor
    xdeg = t.xdegree()
    if xdeg <= 0:
        return ClassicalSymbol.zero(n, t.dw, t.order - 1, floor)
    max_a = xdeg
    log_table = _log_q_derivatives(n, t.dw, max_a)
    out = {}
    for d2, h2 in t.comps.items():
        dx_table = _x_derivatives(h2, min(xdeg, h2.xdegree()), n)
        for alpha, h2d in dx_table.items():
            k = sum(alpha)
            if k == 0 or h2d.is_zero():
                continue
            d = d2 - k
            if d < floor:
                continue
            coeff = (MINUS_I ** k) * Scalar(Fraction(1, _alpha_factorial(alpha)))
            term = (log_table[alpha] * h2d).scale(coeff)
            cur = out.get(d)
            out[d] = term if cur is None else cur + term
    return ClassicalSymbol(n, t.dw, t.order - 1, floor, out)


def parametrix(s: ClassicalSymbol, floor) -> ClassicalSymbol:
    """Star-inverse of a symbol with scalar leading component |xi|**2."""
    n, dw = s.n, s.dw
    lead = s.component(2)
    if not lead.semantically_equal(HomSymbol.xi_power(n, 1, dw)):
        raise ValueError("parametrix requires leading symbol |xi|**2")
    if s.order != 2:
        raise ValueError("parametrix expects an order-2 symbol")
    inv_lead = HomSymbol.xi_power(n, -1, dw)
    comps = {-2: inv_lead}
    t = ClassicalSymbol(n, dw, -2, floor, comps)
    for j in range(1, -floor - 1):
        d = -2 - j
        if d < floor:
            break
        # a correction at degree d cancels the composition error at d + 2
        err = star(s, t, floor=d + 2).component(d + 2)
        if err.is_zero():
            continue
        comps[d] = -(inv_lead * err)
        t = ClassicalSymbol(n, dw, -2, floor, comps)
    return t


def star_power(u: ClassicalSymbol, j: int, floor) -> ClassicalSymbol:
    out = u.truncate(floor)
    for _ in range(j - 1):
        out = star(out, u, floor)
    return out


def neumann_log(u: ClassicalSymbol, floor) -> ClassicalSymbol:
    """log_star(1 + u) = sum_{j>=1} (-1)**(j+1) u**(star j) / j, truncated."""
    if u.order >= 0 and not u.is_zero():
        raise ValueError("neumann_log requires a symbol of negative order")
    out = ClassicalSymbol.zero(u.n, u.dw, min(u.order, -1), floor)
    if u.is_zero():
        return out
    power = u.truncate(floor)
    for j in range(1, -floor + 1):
        if j > 1:
            power = star(power, u, floor)
        if power.is_zero():
            break
        out = out + power.scale(Fraction((-1) ** (j + 1), j))
    return out


def star_exp(v: ClassicalSymbol, floor) -> ClassicalSymbol:
    """1 + v + v*v/2! + ... for a symbol of negative order (test oracle)."""
    if v.order >= 0 and not v.is_zero():
        raise ValueError("star_exp requires a symbol of negative order")
    out = ClassicalSymbol.one(v.n, v.dw, floor)
    power = ClassicalSymbol.one(v.n, v.dw, floor)
    for j in range(1, -floor + 1):
        power = star(power, v, floor)
        if power.is_zero():
            break
        out = out + power.scale(Fraction(1, factorial(j)))
    return out
