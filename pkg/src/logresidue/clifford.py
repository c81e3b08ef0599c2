"""Finite-dimensional Clifford algebra C(V) tensor End(W) with exact coefficients.

Elements are stored as maps from strictly increasing index words over
{1, .., n} to dense d_W x d_W matrices of Gaussian rationals.  The generators
satisfy

    gamma_i gamma_j + gamma_j gamma_i = -2 delta_ij,

so gamma_i**2 = -1; with this convention the squared Dirac symbol has leading
part +|xi|**2.  The supertrace is the one twisted by the grading
Gamma = i**p gamma_1 ... gamma_n (n = 2p).
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import Scalar, as_scalar, ZERO, ONE

GAMMA_SQUARE = -1  # gamma_i**2, fixed once for the whole library


class MatrixW:
    """Dense square matrix over the Gaussian rationals."""

    __slots__ = ("dim", "rows")

    def __init__(self, rows):
        rows = tuple(tuple(as_scalar(e) for e in row) for row in rows)
        dim = len(rows)
        if any(len(row) != dim for row in rows):
            raise ValueError("MatrixW must be square")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("MatrixW is immutable")

    @classmethod
    def zero(cls, dim):
        return cls([[ZERO] * dim for _ in range(dim)])

    @classmethod
    def identity(cls, dim):
        return cls([[ONE if i == j else ZERO for j in range(dim)] for i in range(dim)])

    @classmethod
    def scalar(cls, dim, c):
        c = as_scalar(c)
        return cls([[c if i == j else ZERO for j in range(dim)] for i in range(dim)])

    def __add__(self, other):
        return MatrixW(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def __neg__(self):
        return MatrixW([[-a for a in row] for row in self.rows])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, MatrixW):
            n = self.dim
            cols = list(zip(*other.rows))
            return MatrixW(
                [
                    [sum((a * b for a, b in zip(row, col)), ZERO) for col in cols]
                    for row in self.rows
                ]
            )
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        c = as_scalar(c)
        return MatrixW([[c * a for a in row] for row in self.rows])

    def trace(self) -> Scalar:
        return sum((self.rows[i][i] for i in range(self.dim)), ZERO)

    def is_zero(self) -> bool:
        return all(a.is_zero() for row in self.rows for a in row)

    def __eq__(self, other):
        if not isinstance(other, MatrixW):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"MatrixW({[[repr(e) for e in row] for row in self.rows]})"


def _mul_words(a, b):
    """Product of sorted index words; returns (sign, word) with gamma**2 = -1."""
    sign = 1
    word = list(a)
    for g in b:
        gt = sum(1 for h in word if h > g)
        if g in word:
            # move g leftwards past the larger letters, then contract the pair
            sign *= (-1) ** gt * GAMMA_SQUARE
            word.remove(g)
        else:
            sign *= (-1) ** gt
            word.insert(len(word) - gt, g)
    return sign, tuple(word)


class CliffordElem:
    """Element of C(V) tensor End(W): map from index words to MatrixW."""

    __slots__ = ("n", "dw", "coeffs")

    def __init__(self, n, dw, coeffs):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "dw", dw)
        object.__setattr__(
            self, "coeffs", {w: m for w, m in coeffs.items() if not m.is_zero()}
        )

    def __setattr__(self, name, value):
        raise AttributeError("CliffordElem is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, n, dw=1):
        return cls(n, dw, {})

    @classmethod
    def one(cls, n, dw=1):
        return cls(n, dw, {(): MatrixW.identity(dw)})

    @classmethod
    def scalar(cls, n, c, dw=1):
        return cls(n, dw, {(): MatrixW.scalar(dw, c)})

    @classmethod
    def from_matrix(cls, n, mat: MatrixW):
        return cls(n, mat.dim, {(): mat})

    @classmethod
    def gamma(cls, n, i, dw=1):
        if not 1 <= i <= n:
            raise ValueError(f"gamma index {i} out of range 1..{n}")
        return cls(n, dw, {(i,): MatrixW.identity(dw)})

    @classmethod
    def gamma_word(cls, n, word, dw=1, mat: MatrixW | None = None):
        out = cls.one(n, dw) if mat is None else cls.from_matrix(n, mat)
        for i in word:
            out = out * cls.gamma(n, i, dw)
        return out

    @classmethod
    def sigma(cls, n, i, j, dw=1):
        """sigma_ij = (1/8)[gamma_i, gamma_j]; equals (1/4) gamma_i gamma_j off diagonal."""
        gi = cls.gamma(n, i, dw)
        gj = cls.gamma(n, j, dw)
        return (gi * gj - gj * gi).scale(Fraction(1, 8))

    # -- ring structure -------------------------------------------------

    def _check(self, other):
        if self.n != other.n or self.dw != other.dw:
            raise ValueError("CliffordElem dimension mismatch")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for w, m in other.coeffs.items():
            cur = out.get(w)
            out[w] = m if cur is None else cur + m
        return CliffordElem(self.n, self.dw, out)

    def __neg__(self):
        return CliffordElem(self.n, self.dw, {w: -m for w, m in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, CliffordElem):
            return self.scale(other)
        self._check(other)
        out = {}
        for wa, ma in self.coeffs.items():
            for wb, mb in other.coeffs.items():
                sign, w = _mul_words(wa, wb)
                m = ma * mb
                if sign != 1:
                    m = m.scale(sign)
                cur = out.get(w)
                out[w] = m if cur is None else cur + m
        return CliffordElem(self.n, self.dw, out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        c = as_scalar(c)
        if c.is_zero():
            return CliffordElem.zero(self.n, self.dw)
        return CliffordElem(self.n, self.dw, {w: m.scale(c) for w, m in self.coeffs.items()})

    def commutator(self, other):
        return self * other - other * self

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, CliffordElem):
            return NotImplemented
        return self.n == other.n and self.dw == other.dw and self.coeffs == other.coeffs

    def __repr__(self):
        if not self.coeffs:
            return "CliffordElem(0)"
        parts = [f"g{list(w)}:{m!r}" for w, m in sorted(self.coeffs.items())]
        return "CliffordElem(" + ", ".join(parts) + ")"


def cl_str(a: CliffordElem) -> Scalar:
    """Supertrace: (-2i)**p tr(M_top) on the top word, zero on all shorter words."""
    if a.n % 2 != 0:
        raise ValueError("supertrace requires even dimension")
    p = a.n // 2
    top = tuple(range(1, a.n + 1))
    m = a.coeffs.get(top)
    if m is None:
        return ZERO
    return (Scalar(0, -2) ** p) * m.trace()


def cl_tr(a: CliffordElem) -> Scalar:
    """Fibrewise trace: 2**p tr(M_empty); products of distinct gammas are traceless."""
    if a.n % 2 != 0:
        raise ValueError("trace requires even dimension")
    p = a.n // 2
    m = a.coeffs.get(())
    if m is None:
        return ZERO
    return Scalar(2 ** p) * m.trace()
