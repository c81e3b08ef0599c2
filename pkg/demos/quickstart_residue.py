"""Quickstart: the residue of log(|xi|**2 + c) computed three ways.

We take the simplest possible generalised Laplacian, |xi|**2 plus a constant,
where everything commutes and the answer is available in closed form: the
classical part of the log symbol is the Mercator series

    log(|xi|**2 + c) = 2 log|xi| + sum_k (-1)**(k+1) c**k |xi|**(-2k) / k,

so on R^2 the degree -2 component is c/|xi|**2 and the residue density is
(2 pi)**(-2) * Vol(S^1) * tr(c) = c / pi  (the plain trace of the identity
on the rank-2 spinor bundle contributes the factor 2).

All three expansion routes — Campbell-Hausdorff, noncommutative Taylor and
the resolvent recursion — must give this exactly, in rational arithmetic.
"""

from fractions import Fraction

from logresidue import ClassicalSymbol, Scalar, log_symbol, res_log, zeta0

n = 2
c = Fraction(3, 5)
q_lower = ClassicalSymbol.constant(n, Scalar(c), floor=-n)

print(f"q_lower = {c} (constant), n = {n}\n")
for method in ("ch", "taylor", "seeley"):
    sym = log_symbol(q_lower, n, method)
    res = res_log(q_lower, n, method, "tr")
    print(f"[{method:6s}] log coefficient: {sym.log_coeff!r}")
    print(f"         degree -2 component: {sym.classical.component(-2)!r}")
    print(f"         res_log = {res!r}   zeta(0) = {zeta0(res)!r}\n")

print("closed form: res_log = c * pi^-1 =", f"{c}/pi")
