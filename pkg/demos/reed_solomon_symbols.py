"""
Nonbinary decoding of Reed-Solomon codes
========================================

Over GF(16) a check term can point at a position with any of 15 error
values.  The decoder tallies a vote for every (value, position) pair and
subtracts the strongest one until the syndromes vanish.
"""

import numpy as np

from dualdec.cli import load_spec
from dualdec.cyclicring import CyclicPoly
from dualdec.dualmine import mine_checks
from dualdec.harddec import Status, decode_nonbinary, phi_matrix

spec, _ = load_spec("rs15_11")
checks = mine_checks(spec)
print(f"RS({spec.n},{spec.k}): {checks.L} checks of weight {checks.weight}")

f = spec.symbol_field
e = CyclicPoly.from_terms(f, 15, [(3, 7), (10, 12)])
votes = phi_matrix(e, checks).counts[:-1]  # row i votes for value alpha^i
i, j = np.unravel_index(np.argmax(votes), votes.shape)
print(f"strongest vote: alpha^{i} at position {j}; errors are alpha^{f.log[7]} at 3, alpha^{f.log[12]} at 10")

rep = decode_nonbinary(e, checks, "max")
print("two errors ->", rep.status.value, rep.error == e)

###############################################################################
# Three errors are past half the minimum distance.  The decoder still gets
# a few right; the rest fail or land on another codeword.

rng = np.random.default_rng(3)
hits = 0
trials = 2000
for _ in range(trials):
    supp = rng.choice(15, 3, replace=False)
    e = CyclicPoly.from_terms(f, 15, [(int(p), int(rng.integers(1, 16))) for p in supp])
    rep = decode_nonbinary(e, checks, "max")
    hits += rep.status is Status.CORRECTED and rep.error == e
print(f"three errors corrected: {hits / trials:.2%}")
