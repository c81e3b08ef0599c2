"""Clifford algebra tests against an explicit gamma-matrix representation.

The oracle represents gamma_a as i*G_a for Hermitian anticommuting G_a built
from Pauli matrices, so gamma_a**2 = -1 matches the library convention, and
checks traces and products against honest matrix arithmetic.
"""

import itertools
import random
from fractions import Fraction

import pytest

from logresidue import CliffordElem, MatrixW, Scalar, cl_str, cl_tr
from logresidue.scalars import I, ONE, ZERO

S0 = MatrixW([[ONE, ZERO], [ZERO, ONE]])
S1 = MatrixW([[ZERO, ONE], [ONE, ZERO]])
S2 = MatrixW([[ZERO, -I], [I, ZERO]])
S3 = MatrixW([[ONE, ZERO], [ZERO, -ONE]])


def kron(a: MatrixW, b: MatrixW) -> MatrixW:
    rows = []
    for ra in a.rows:
        for rb in b.rows:
            rows.append([x * y for x in ra for y in rb])
    return MatrixW(rows)


def gamma_reps(n):
    """Matrices for gamma_1..gamma_n and the grading Gamma = i**p gamma_1...gamma_n."""
    if n == 2:
        gammas = [S1.scale(I), S2.scale(I)]
    elif n == 4:
        gs = [kron(S1, S1), kron(S2, S1), kron(S3, S1), kron(S0, S2)]
        gammas = [g.scale(I) for g in gs]
    else:
        raise ValueError(n)
    grading = gammas[0]
    for g in gammas[1:]:
        grading = grading * g
    grading = grading.scale(I ** (n // 2))
    return gammas, grading


def rep(a: CliffordElem, gammas) -> MatrixW:
    dim = gammas[0].dim
    out = MatrixW.zero(dim)
    for word, mat in a.coeffs.items():
        assert mat.dim == 1
        m = MatrixW([[mat.rows[0][0] if i == j else ZERO for j in range(dim)]
                     for i in range(dim)])
        for idx in word:
            m = m * gammas[idx - 1]
        out = out + m
    return out


def random_elem(n, rng, words=3):
    coeffs = {}
    letters = list(range(1, n + 1))
    for _ in range(words):
        k = rng.randrange(0, n + 1)
        word = tuple(sorted(rng.sample(letters, k)))
        c = Scalar(Fraction(rng.randint(-5, 5)), Fraction(rng.randint(-5, 5)))
        m = MatrixW([[c]])
        cur = coeffs.get(word)
        coeffs[word] = m if cur is None else cur + m
    return CliffordElem(n, 1, coeffs)


def perm_sign(tau):
    sign = 1
    for i in range(len(tau)):
        for j in range(i + 1, len(tau)):
            if tau[i] > tau[j]:
                sign = -sign
    return sign


@pytest.mark.parametrize("n", [2, 4])
def test_anticommutation_relations(n):
    gammas, _ = gamma_reps(n)
    dim = gammas[0].dim
    for i in range(n):
        for j in range(n):
            anti = gammas[i] * gammas[j] + gammas[j] * gammas[i]
            expect = MatrixW.zero(dim) if i != j else MatrixW.scalar(dim, Scalar(-2))
            assert anti == expect
    # the same relations inside the algebra
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            gi = CliffordElem.gamma(n, i)
            gj = CliffordElem.gamma(n, j)
            s = gi * gj + gj * gi
            expect = (
                CliffordElem.zero(n)
                if i != j
                else CliffordElem.scalar(n, Scalar(-2))
            )
            assert (s - expect).is_zero()


@pytest.mark.parametrize("n", [2, 4])
def test_product_matches_representation(n):
    gammas, _ = gamma_reps(n)
    rng = random.Random(12 + n)
    for _ in range(40):
        a = random_elem(n, rng)
        b = random_elem(n, rng)
        assert rep(a * b, gammas) == rep(a, gammas) * rep(b, gammas)


@pytest.mark.parametrize("n", [2, 4])
def test_traces_match_representation(n):
    gammas, grading = gamma_reps(n)
    rng = random.Random(77 + n)
    for _ in range(40):
        a = random_elem(n, rng)
        assert cl_tr(a) == rep(a, gammas).trace()
        assert cl_str(a) == (grading * rep(a, gammas)).trace()


@pytest.mark.parametrize("n", [2, 4])
def test_supertrace_top_word(n):
    p = n // 2
    top = CliffordElem.gamma_word(n, tuple(range(1, n + 1)))
    assert cl_str(top) == Scalar(0, -2) ** p
    # every shorter word dies
    for k in range(n):
        for word in itertools.combinations(range(1, n + 1), k):
            assert cl_str(CliffordElem.gamma_word(n, word)) == ZERO or word == ()
    assert cl_str(CliffordElem.one(n)) == ZERO


@pytest.mark.parametrize("n", [2, 4])
@pytest.mark.parametrize("dw", [1, 2])
def test_supertrace_sigma_products(n, dw):
    p = n // 2
    for tau in itertools.permutations(range(1, n + 1)):
        elem = CliffordElem.one(n, dw)
        for a in range(0, n, 2):
            elem = elem * CliffordElem.sigma(n, tau[a], tau[a + 1], dw)
        expect = (Scalar(0, -1) ** p) * Scalar(Fraction(perm_sign(tau) * dw, 2 ** p))
        assert cl_str(elem) == expect


def test_supertrace_gamma_permutations():
    for n in (2, 4):
        p = n // 2
        for tau in itertools.permutations(range(1, n + 1)):
            elem = CliffordElem.one(n)
            for a in tau:
                elem = elem * CliffordElem.gamma(n, a)
            assert cl_str(elem) == (Scalar(0, -2) ** p) * Scalar(perm_sign(tau))


@pytest.mark.parametrize("n", [2, 4])
def test_trace_cyclicity(n):
    rng = random.Random(5 + n)
    for _ in range(60):
        a = random_elem(n, rng)
        b = random_elem(n, rng)
        assert cl_tr(a * b) == cl_tr(b * a)


def test_sigma_is_quarter_commutator():
    for n in (2, 4):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i == j:
                    continue
                gi = CliffordElem.gamma(n, i)
                gj = CliffordElem.gamma(n, j)
                comm = (gi * gj - gj * gi).scale(Fraction(1, 8))
                half = (gi * gj).scale(Fraction(1, 4))
                assert (CliffordElem.sigma(n, i, j) - comm).is_zero()
                assert (CliffordElem.sigma(n, i, j) - half).is_zero()
