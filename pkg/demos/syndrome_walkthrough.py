"""
Syndromes from low-weight dual codewords
========================================

A dual codeword b(x) of a cyclic code kills every codeword when multiplied
modulo x^n - 1, so the product r(x) b(x) depends on the error pattern alone.
Here we take the BCH(63, 24) code, one weight-8 dual word and a weight-3
error, and look at what the product exposes.
"""

import numpy as np

from dualdec.cli import load_spec
from dualdec.codebook import encode
from dualdec.cyclicring import CyclicPoly, format_poly, mul_mod, parse_poly, shift
from dualdec.dualmine import mine_checks
from dualdec.harddec import delta, phi

spec, _ = load_spec("bch63_24")
print(f"code: n={spec.n} k={spec.k} designed d={spec.d_designed}")
print("g(x) =", format_poly(spec.g))

# a dual word of weight 8 and an error of weight 3
b = parse_poly("x^49+x^37+x^34+x^30+x^19+x^12+x^6+1", 63)
e = parse_poly("x^42+x^38+x^11", 63)

# the check annihilates codewords, so r b = e b
rng = np.random.default_rng(0)
info = CyclicPoly.binary(spec.n, np.flatnonzero(rng.integers(0, 2, spec.k)))
c = encode(spec, info)
r = c + e
print("c b == 0:", mul_mod(c, b).weight == 0)
w = mul_mod(r, b)
print(f"syndrome weight {w.weight}:", format_poly(w))

# each error position shows up once per term of b; shifting by one exponent
# of b lines those copies up with the error itself
print("shift by -19 contains the error:", {42, 38, 11} <= set(shift(w, -19).support))

###############################################################################
# With the full set of minimal-weight checks, every position gets a score
# Phi_j: how many check terms land on j across all syndromes.  Error positions
# collect more hits than clean ones.

checks = mine_checks(spec, 8)
print(f"\n{checks.L} checks of weight {checks.weight}")
prof = phi(r, checks)
print("largest Phi:", [(int(j), int(prof.counts[j])) for j in prof.largest(6)])

# flipping j changes the total syndrome weight by L*d - 2 Phi_j
D = delta(r, checks)
print("Delta at the errors:", [int(D[j]) for j in (11, 38, 42)])
print("most negative Delta elsewhere:", int(np.delete(D, [11, 38, 42]).min()))
