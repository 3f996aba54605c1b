"""
Fillings, queue inversions and the ringing chain
=================================================

A walk through the tableau side: build a filling, read off its weight,
fire a few clocks and check global balance by brute force.
"""

from qzrp.shapes import Partition
from qzrp.tableaux import Filling, enumerate_fillings, proj, quinv, quinv_triples, weight
from qzrp.tabchain import out_transitions, verify_balance, verify_irreducibility

# Rows are given top to bottom.  The bottom row says where each column
# "lives" on the ring of sites, so the filling projects to a ZRP state.
sigma = Filling.from_rows([[1], [1, 3], [3, 2, 3]], 3)
print(sigma.to_text())
print("projects to", proj(sigma))
print("quinv =", quinv(sigma), "triples:", quinv_triples(sigma))
print("weight =", weight(sigma).pretty())

# Every cell whose content differs from the one below carries a clock.
for tr in out_transitions(sigma):
    print(f"fire {tuple(tr.trigger)}  rate {tr.rate.pretty():>10}  ->  {proj(tr.target)}")

# Global balance holds at every state, as a polynomial identity.
lam = Partition((2, 2, 1))
states = list(enumerate_fillings(lam, 3))
print(len(states), "states, balanced everywhere:", all(verify_balance(s) for s in states))
print("irreducible:", verify_irreducibility(lam, 3),
      " irreducible at t=0:", verify_irreducibility(lam, 3, t_zero=True))
