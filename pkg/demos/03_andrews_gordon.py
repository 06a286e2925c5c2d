"""
Andrews-Gordon vectors of level 2k+1
====================================

The k-component vectors (q^{alpha_{k,i}} F_{k,i}) certify as modular, but the
solved S-matrices do not match the closed form printed for them.  The
entries do match 2/sqrt(2k+1) |sin(2 pi i j/(2k+1))| in absolute value.
"""

import math

import numpy as np

from qmodular import certify_family, goodness_check, normalized_vector
from qmodular.certify import OrbitDatum
from qmodular.numerics import IDENTITY, S

np.set_printoptions(precision=6, suppress=True)

for k in (2, 3, 4):
    c = certify_family("AG", k)
    M = 2 * k + 1
    alt = np.array([[2 / math.sqrt(M) * abs(math.sin(2 * math.pi * i * j / M)) for j in range(1, k + 1)]
                    for i in range(1, k + 1)])
    print(f"k={k}: {c.verdict}")
    print("  S^2 dev %.1e, (ST)^3 dev %.1e" % (c.dev_S2, c.dev_ST3))
    print("  printed formula off by %.3f" % c.closed_form_deviation)
    print("  |solved| vs 2/sqrt(M)|sin(2 pi ij/M)|: %.1e" % np.abs(np.abs(c.rho_S_solved) - alt).max())

print(certify_family("AG", 3).rho_S_solved.real)

# local goodness at the cusps infinity (width 1) and 0 (width 7)
rep = goodness_check(normalized_vector("AG", 3, 200), [OrbitDatum(IDENTITY, 1), OrbitDatum(S, 7)])
for d in rep.data:
    print(d.gamma, "exponents", [round(e.real, 8) for e in d.exponents_solved], "expected",
          [round(x, 8) for x in d.exponents_expected])
print(rep.coverage_note)
