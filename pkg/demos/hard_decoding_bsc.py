"""
Hard-decision decoding over a binary symmetric channel
======================================================

The iterative decoder flips the positions with the largest Phi, recomputes
the syndromes, and stops as soon as every syndrome is zero.  We compare its
word error rate on BCH(63, 24) against the bounded-minimum-distance
decoder, which corrects up to 7 errors and nothing more.
"""

from dualdec.cli import load_spec
from dualdec.cyclicring import CyclicPoly
from dualdec.dualmine import mine_checks
from dualdec.harddec import decode_iter_reduce
from dualdec.simkit import ChannelParams, DecoderConfig, bmd_wer, wer_curve

spec, _ = load_spec("bch63_24")
checks = mine_checks(spec, 8)

# one word first: 9 errors, past the designed radius
e = CyclicPoly.binary(63, [2, 9, 17, 23, 30, 41, 47, 55, 60])
rep = decode_iter_reduce(e, checks, mu=7)
print("9 errors ->", rep.status.value, "after", rep.iterations, "rounds,",
      "correct" if rep.error == e else "wrong word")

###############################################################################
# Now a short curve.  Trials are split into seeded chunks, so the numbers do
# not depend on the thread count.

grid = [ChannelParams.bsc(p) for p in (0.04, 0.05, 0.06)]
rows = wer_curve(spec, checks, DecoderConfig("reduce", mu=7), grid, trials=20_000,
                 seed=1, threads=None)
print(f"\n{'p':>6} {'WER':>10} {'95% CI':>22} {'BMD':>10}")
for row in rows:
    lo, hi = row.ci
    print(f"{row.param:6.3f} {row.wer:10.2e}   [{lo:.2e}, {hi:.2e}] "
          f"{bmd_wer(63, 7, row.param):10.2e}")
