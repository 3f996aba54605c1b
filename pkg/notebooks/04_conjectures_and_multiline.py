"""
Conjecture evidence and multiline diagrams
==========================================
"""

from collections import Counter

from qzrp import macdonald as mac
from qzrp import multiline as ml
from qzrp.shapes import compress, partitions_up_to
from qzrp.tableaux import Filling, weight

# gcd of the stationary weights of compressed shapes
verdicts = Counter()
for lam in partitions_up_to(5):
    if compress(lam) == lam:
        for n in (2, 3):
            verdicts[mac.check_conjecture_compressed(lam, n).verdict] += 1
print(dict(verdicts))

# the extension identity for strict shapes, and where the other placement breaks it
for lam in [(3, 1), (3, 2), (4, 2)]:
    evs = mac.refined_all(lam, 2)
    top = sum(e.details["top_placement_agrees"] for e in evs)
    print(lam, len(evs), "fillings hold;", top, "also hold with the free cells below")

# queue inversions become refusals of a stack of queues
sigma = Filling((4, 3, 1), 5, [[3, 5, 2, 3], [4, 1, 2], [4]])
m = ml.to_multiline(sigma)
print(m.to_text())
print("refusals per row pair:", ml.refusals_by_row(m))
print(ml.multiline_weight(m) == weight(sigma))

# quinv-free filling with prescribed row contents
print(mac.quinv_free_sort([[2, 2, 2, 3, 6], [1, 3, 4, 4, 5, 5]], 6).to_text())
