"""
Soft decisions and the (u | u+v) construction
==============================================

Soft flipping weighs each check by its least reliable other position, so a
confident bit is hard to overturn.  Below we measure it on BCH(63, 24) over
AWGN, then split an AWGN channel twice with the (u | u+v) map and watch the
four component channels drift apart.
"""

from dualdec.cli import load_spec
from dualdec.dualmine import mine_checks
from dualdec.plotkin import polarization_report, rm_build
from dualdec.simkit import ChannelParams, DecoderConfig, wer_curve

spec, _ = load_spec("bch63_24")
checks = mine_checks(spec, 8)
R = spec.k / spec.n

rows = wer_curve(spec, checks, DecoderConfig("soft-flip", mu=7),
                 [ChannelParams.awgn(eb, R) for eb in (2.0, 3.0, 4.0)], trials=3000,
                 seed=2, threads=None)
for row in rows:
    print(f"Eb/N0 {row.param:.1f} dB: WER {row.wer:.2e}")

###############################################################################
# RM(2, 6) is two nested (u | u+v) levels deep before it hits repetition and
# full-space leaves.

node = rm_build(2, 6)
print("\nRM(2,6) params:", node.params)

###############################################################################
# Genie-aided polarization at rate 1/2 and 2 dB.  p4 is the all-project
# channel (worst), p1 the all-refine channel (best).

for row in polarization_report(2, 0.5, 2.0, trials=200_000, seed=0):
    name = "pc" if row.index == 0 else f"p{row.index}"
    extra = "" if row.analytic is None else f"  closed form {row.analytic:.4f}"
    print(f"{name:>3} {row.path or '-':>3}  BER {row.ber:.4f}{extra}")
