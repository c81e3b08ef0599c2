"""The dimension-4 pure Dirac index density, three routes, one rational number.

Feed the engine a random rational curvature tensor with the Riemann
symmetries.  In normal coordinates the squared Dirac operator has symbol
|xi|**2 + Gamma-jet terms, and the supertrace residue of its log is a
rational multiple of pi^-2 proportional to the Pontryagin density:

    sres(log D^2) = pontryagin_density(R) / (96 pi^2).

The constant 1/96 is pinned from three independent directions inside this
package: the Campbell-Hausdorff, Taylor and resolvent expansions agree
component-by-component; the closed-form dGamma residue identities carry the
constants 1/32 and 1/128; and the flat twisted comparator fixes the weight
of the only contested expansion term.  A reduced two-term formula (weights
-1/2 and 1/3 on the two surviving Taylor terms) reproduces the general route
exactly and is checked against it on every call.

This is the slow demo: a full dim-4 expansion takes a few seconds per route.
"""

import random

from logresidue import (
    index_pure_dirac4,
    pontryagin_density,
    random_curvature,
    viancT_reduced_dim4,
)

rng = random.Random(7)
R = random_curvature(4, rng)

print("pontryagin_density(R) =", pontryagin_density(R))
for method in ("taylor", "seeley", "ch"):
    sres, density = index_pure_dirac4(R, method)
    print(f"[{method:6s}] sres = {sres!r}   index density = {density!r}")

reduced = viancT_reduced_dim4(R)
print("reduced two-term formula:", repr(reduced))
