"""
Rogers-Ramanujan modularity, numerically
========================================

Sample f = (q^{-1/60} G, q^{11/60} H) on the upper half-plane, solve for
the constant matrices carrying f(tau) to f(tau + 1) and f(-1/tau), and
check that they satisfy the SL2(Z) relations.
"""

import numpy as np

from qmodular import certify_family, eval_vector, normalized_vector, solve_multiplier
from qmodular.numerics import S, T, check_group_relations, solve_symmetric_involution, t_matrix

np.set_printoptions(precision=10, suppress=True)

f = normalized_vector("RR", 2, 200)

# at tau = i both components are real; their ratio is the continued fraction R(e^{-2 pi})
v = eval_vector(f, 1j)
print("f(i) =", v.real, " ratio", (v[1] / v[0]).real)

MT = solve_multiplier(f, T)
MS = solve_multiplier(f, S)
print("rho(T) solved\n", MT.M)
print("rho(S) solved\n", MS.M.real)
print("held-out residual %.1e, window constancy %.1e" % (MS.residual_max, MS.constancy_dev))

rel = check_group_relations(MS.M, t_matrix(f.alphas))
print("S^2 - I: %.1e   (ST)^3 - I: %.1e" % (rel.dev_S2, rel.dev_ST3))

# the same matrix from the relations alone
print("algebraic route\n", solve_symmetric_involution(t_matrix(f.alphas)).real)

# tau = i is fixed by S, so f(i) is a +1 eigenvector
print("|rho(S) f(i) - f(i)| =", np.linalg.norm(MS.M @ v - v))

cert = certify_family("RR", 2)
print("verdict:", cert.verdict)
