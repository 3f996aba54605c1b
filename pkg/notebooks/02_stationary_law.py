"""
Stationary law of the multispecies zero range process
======================================================

Sum tableau weights over each fibre of the projection, then compare with a
plain linear solve of the generator at a rational point.
"""

from fractions import Fraction

import numpy as np

from qzrp.macdonald import htilde
from qzrp.zrp import ZrpParams, enumerate_configs, stationary_exact, tazrp_weights

lam, n = (3, 1, 1), 3
configs = enumerate_configs(lam, n)
print(len(configs), "configurations")

weights = tazrp_weights(lam, n)
for w in configs[:4]:
    print(f"{str(w):>8}  {weights[w].pretty()}")

# The weights add up to the modified Macdonald polynomial at q = 1.
total = sum(weights.values(), next(iter(weights.values())) * 0)
print("sum of weights == H~:", total == htilde(lam, n))

# Exact solve with x = (2, 3, 5), t = 1/3 and the same law from the weights.
p = ZrpParams.exact((2, 3, 5), Fraction(1, 3))
pi = stationary_exact(lam, n, p)
z = sum(weights[w].evaluate(p.t, p.x) for w in configs)
print("exact agreement:", all(pi[w] == weights[w].evaluate(p.t, p.x) / z for w in configs))

# A quick look in floating point.
probs = np.array([float(pi[w]) for w in configs])
order = np.argsort(probs)[::-1]
for i in order[:5]:
    print(f"{str(configs[i]):>8}  {probs[i]:.4f}")
print("entropy:", -(probs * np.log(probs)).sum())
