"""
Densities, currents and a Gillespie run
=======================================

Closed forms from column polynomials, checked symbolically against the
stationary weights and statistically against a long simulation.
"""

from fractions import Fraction

import numpy as np

from qzrp.observables import current_formula, current_symbolic, density_exact, density_formula
from qzrp.shapes import Partition, compress
from qzrp.zrp import ZrpParams, expected_event_rate, simulate, tazrp_weights

lam, n = Partition((3, 1, 1)), 3
lc = compress(lam)                 # species 3, 1 become 2, 1
relabel = dict(zip(lam.parts, lc.parts))
weights = tazrp_weights(lam, n)

for sp in (3, 1):
    same = all(density_exact(lam, n, sp, i, weights) == density_formula(lc, n, relabel[sp], i)
               for i in range(1, n + 1))
    bonds = all(current_symbolic(lam, n, sp, i, weights) == current_formula(lc, n, relabel[sp])
                for i in range(1, n + 1))
    print(f"species {sp}: density formula exact {same}, current equal on every bond {bonds}")

exact = ZrpParams.exact((2, 3, 5), Fraction(1, 2))
horizon = float(Fraction(100_000) / expected_event_rate(lam, n, exact))
tr = simulate(lam, n, ZrpParams((2.0, 3.0, 5.0), 0.5), seed=2024, horizon=horizon)
print(tr.n_events, "events")

dens, se = tr.density(), tr.density_se()
for si, sp in enumerate(tr.species):
    want = np.array([float(density_formula(lc, n, relabel[sp], i).evaluate(exact.t, exact.x))
                     for i in range(1, n + 1)])
    z = (dens[:, si] - want) / se[:, si]
    print(f"species {sp}: simulated {np.round(dens[:, si], 4)}  exact {np.round(want, 4)}  z {np.round(z, 2)}")
