"""Acceptance gate: one PASS/FAIL line per criterion.

Run under pytest (the lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""

import itertools
import math
import sys
import time
from pathlib import Path

import numpy as np
import pytest
from scipy.optimize import brentq

sys.path.insert(0, str(Path(__file__).parent))

from dualdec.codebook import bch_generator, narrow_sense_reps, punctured_rm_generator, rs_generator
from dualdec.cyclicring import CyclicPoly, mul_mod, parse_poly, rotate_mask, shift, square_map
from dualdec.dualmine import binary_low_weight_search, mds_dual_min_weight
from dualdec.galois import make_field
from dualdec.harddec import Status, decode_nonbinary, phi, phi_eq7, phi_matrix
from dualdec.plotkin import polarization_report, qfunc, rm_build, rm_decode, sigma_for
from dualdec.simkit import (
    ChannelParams,
    DecoderConfig,
    bmd_wer,
    measure_phi_table,
    ranking_success,
    wer_curve,
)
from dualdec.stats import count_W

from oracles import brute_W

RESULTS: list[str] = []


def report(num: int, title: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] C{num:<2} {title}: {detail}"
    RESULTS.append(line)
    print(line)


class Fixtures:
    """Codes and checks built once per run."""

    def __init__(self):
        self.gf64 = make_field(6, 0x61)
        self.gf16 = make_field(4)
        self.bch = bch_generator(self.gf64, 63, narrow_sense_reps(63, 6, 15))
        self.rm = punctured_rm_generator(2, 6, self.gf64)
        self.rs5 = rs_generator(self.gf16, 15, 5)
        self.rs11 = rs_generator(self.gf16, 15, 11)
        self._checks = {}

    def checks(self, name):
        if name not in self._checks:
            spec = getattr(self, name)
            if spec.is_binary:
                self._checks[name] = binary_low_weight_search(spec, 8, seed=0)
            else:
                self._checks[name] = mds_dual_min_weight(spec)
        return self._checks[name]


_FX = None


def fx() -> Fixtures:
    global _FX
    if _FX is None:
        _FX = Fixtures()
    return _FX


# -- criteria -----------------------------------------------------------------

def c1_worked_syndrome():
    e = parse_poly("x^42+x^38+x^11", 63)
    b = parse_poly("x^49+x^37+x^34+x^30+x^19+x^12+x^6+1", 63)
    t0 = time.perf_counter()
    w = mul_mod(e, b)
    dt = time.perf_counter() - t0
    expect = {61, 60, 57, 54, 50, 45, 44, 42, 41, 38, 30, 28, 24, 23, 17, 16, 13, 12, 11, 5}
    exposed = {42, 38, 11} <= set(shift(w, -19).support)
    ok = set(w.support) == expect and exposed and dt < 1e-3
    report(1, "worked syndrome", ok, f"{w.weight} terms match={set(w.support) == expect}, "
           f"shift -19 exposes 42,38,11={exposed}, {dt * 1e6:.0f} us")
    return ok


def c2_dual_counts():
    f = fx()
    got, times = {}, {}
    for name, spec in (("bch", f.bch), ("rm", f.rm)):
        t0 = time.perf_counter()
        got[name] = binary_low_weight_search(spec, 8, seed=0).L
        times[name] = time.perf_counter() - t0
    for name in ("rs5", "rs11"):
        t0 = time.perf_counter()
        got[name] = mds_dual_min_weight(getattr(f, name)).L
        times[name] = time.perf_counter() - t0
    want = {"bch": 35, "rm": 155, "rs5": 335, "rs11": 31}
    ok = got == want and max(times["rs5"], times["rs11"]) < 60 and max(times["bch"], times["rm"]) < 600
    report(2, "dual codeword counts", ok,
           ", ".join(f"{k} L={got[k]} (want {want[k]}, {times[k]:.2f}s)" for k in want))
    return ok


def c3_punctured_rm():
    rm = fx().rm
    ok = (rm.coset_reps == (1, 3, 5, 7, 9, 11, 13, 21) and rm.g.degree() == 41
          and rm.k == 22 and rm.d_designed == 15)
    report(3, "punctured RM(2,6)", ok, f"reps={list(rm.coset_reps)} deg g={rm.g.degree()} "
           f"k={rm.k} d={rm.d_designed}")
    return ok


TABLE = {
    "E_omega": (25.2, 27.2, 28.6, 29.6, 30.3),
    "AV_omega": (25.2, 27.2, 28.6, 29.6, 30.3),
    "E_phi_err": (181.5, 163.0, 146.9, 133.3, 121.3),
    "AV_phi_err": (192.2, 179.5, 169.5, 162.3, 156.7),
    "E_phi_ok": (109.5, 118.4, 128.6, 135.7, 153.0),
    "AV_phi_ok": (108.6, 120.1, 125.7, 131.3, 135.6),
}


def c4_table():
    checks = fx().checks("bch")
    rows = [measure_phi_table(checks, tau, 2000, seed=[4, tau]) for tau in range(5, 10)]
    parts = {}
    for key, tol in (("AV_omega", 0.3), ("AV_phi_err", 3.0), ("AV_phi_ok", 3.0)):
        vals = [getattr(r, key) for r in rows]
        parts[key] = (all(abs(v - w) <= tol for v, w in zip(vals, TABLE[key])), vals)
    for key in ("E_omega", "E_phi_err", "E_phi_ok"):
        vals = [getattr(r, key) for r in rows]
        parts[key] = (all(round(v, 1) == w for v, w in zip(vals, TABLE[key])), vals)
    ok = all(p for p, _ in parts.values())
    detail = "; ".join(f"{k} {'ok' if p else 'off'} ({', '.join(f'{v:.1f}' for v in vals)})"
                       for k, (p, vals) in parts.items())
    report(4, f"Phi statistics table, L={checks.L}", ok, detail)
    return ok


def c5_ranking():
    checks = fx().checks("bch")
    rates = {tau: ranking_success(checks, tau, 2000, seed=[5, tau]) for tau in (5, 6, 7, 8)}
    ok = (rates[5] >= 0.998 and rates[6] >= 0.995 and abs(rates[7] - 0.942) <= 0.02
          and abs(rates[8] - 0.415) <= 0.03)
    report(5, "Phi-ranking success", ok, ", ".join(f"tau={t}: {r:.4f}" for t, r in rates.items()))
    return ok


def c6_wer_point():
    f = fx()
    trials = 200_000
    t0 = time.perf_counter()
    row = wer_curve(f.bch, f.checks("bch"), DecoderConfig("reduce", mu=7),
                    [ChannelParams.bsc(0.05)], trials, seed=6, threads=None)[0]
    dt = time.perf_counter() - t0
    bmd = bmd_wer(63, 7, 0.05)
    ok = 4e-4 <= row.wer <= 1.6e-3 and abs(bmd - 0.013) <= 1e-3 and dt <= 1800
    lo, hi = row.ci
    report(6, "WER at BSC p=0.05", ok, f"WER={row.wer:.2e} [{lo:.2e}, {hi:.2e}] over {trials} "
           f"({row.failures} failures, {row.miscorrections} miscorrections), BMD={bmd:.4f}, {dt:.0f}s")
    return ok


def _delta_at(r: CyclicPoly, j: int, checks) -> int:
    tot = 0
    for b in checks.checks:
        w = mul_mod(r, b).mask
        tot += (w ^ rotate_mask(b.mask, j, 63)).bit_count() - w.bit_count()
    return tot


def c7_flip_identity():
    f = fx()
    rng = np.random.default_rng(7)
    bad = 0
    for name in ("bch", "rm"):
        checks = f.checks(name)
        Ld = checks.L * checks.weight
        for _ in range(1000):
            tau = int(rng.integers(0, 16))
            r = CyclicPoly.binary(63, rng.choice(63, tau, replace=False))
            j = int(rng.integers(63))
            bad += Ld - 2 * int(phi(r, checks).counts[j]) != _delta_at(r, j, checks)
    ok = bad == 0
    report(7, "bit-flip identity", ok, f"{2000 - bad}/2000 (error, position) pairs exact")
    return ok


def c8_automorphism():
    f = fx()
    rng = np.random.default_rng(8)
    bad = 0
    for name in ("bch", "rm"):
        checks = f.checks(name)
        for _ in range(100):
            e = CyclicPoly.binary(63, rng.choice(63, int(rng.integers(1, 12)), replace=False))
            g = e
            for _ in range(int(rng.integers(1, 5))):
                g = square_map(g) if rng.random() < 0.5 else shift(g, int(rng.integers(1, 63)))
            bad += sorted(phi(e, checks).counts) != sorted(phi(g, checks).counts)
    ok = bad == 0
    report(8, "automorphism invariance", ok, f"{200 - bad}/200 sorted profiles equal")
    return ok


def c9_rs11():
    f = fx()
    checks = f.checks("rs11")
    rng = np.random.default_rng(9)
    total = good = 0
    for tau in (1, 2):
        for supp in itertools.combinations(range(15), tau):
            e = CyclicPoly.from_terms(f.gf16, 15, [(p, int(rng.integers(1, 16))) for p in supp])
            rep = decode_nonbinary(e, checks, "max")
            total += 1
            good += rep.status is Status.CORRECTED and rep.error == e
    trials = 10_000
    hits = 0
    for _ in range(trials):
        supp = rng.choice(15, 3, replace=False)
        e = CyclicPoly.from_terms(f.gf16, 15, [(int(p), int(rng.integers(1, 16))) for p in supp])
        rep = decode_nonbinary(e, checks, "max")
        hits += rep.status is Status.CORRECTED and rep.error == e
    rate = hits / trials
    ok = good == total and abs(rate - 0.03) <= 0.015
    report(9, "RS(15,11) nonbinary decoding", ok,
           f"weight<=2: {good}/{total}; weight 3: {rate:.2%} over {trials}")
    return ok


def c10_rs5():
    f = fx()
    checks = f.checks("rs5")
    rng = np.random.default_rng(10)
    good = 0
    for _ in range(100):
        supp = sorted(int(p) for p in rng.choice(15, 5, replace=False))
        vals = [int(v) for v in rng.integers(1, 16, 5)]
        P = phi_matrix(CyclicPoly.from_terms(f.gf16, 15, zip(supp, vals)), checks)
        top = sorted(np.argsort(-P.column_max(), kind="stable")[:5].tolist())
        rec = [f.gf16.alpha(int(P.column_argmax()[p])) for p in supp]
        good += top == supp and rec == vals
    ok = good >= 99
    report(10, "RS(15,5) separation", ok, f"{good}/100 instances with exact positions and values")
    return ok


def c11_soft_gain():
    f = fx()
    R = 24 / 63
    target = 6e-3

    def bmd_at(eb):
        return bmd_wer(63, 7, float(qfunc(math.sqrt(2 * R * 10 ** (eb / 10))))) - target

    eb_bmd = brentq(bmd_at, 0.0, 15.0)
    grid = [2.5, 3.0, 3.5, 4.0]
    rows = wer_curve(f.bch, f.checks("bch"), DecoderConfig("soft-flip", mu=7),
                     [ChannelParams.awgn(eb, R) for eb in grid], 10_000, seed=11, threads=None)
    wers = [r.wer for r in rows]
    eb_soft = math.nan
    for (e0, w0), (e1, w1) in zip(zip(grid, wers), zip(grid[1:], wers[1:])):
        if w0 > target >= w1:
            if w1 == 0:
                eb_soft = e1
            else:
                frac = math.log(w0 / target) / math.log(w0 / w1)
                eb_soft = e0 + frac * (e1 - e0)
            break
    if wers[0] <= target:
        eb_soft = grid[0]
    gain = eb_bmd - eb_soft
    ok = gain >= 2.5
    report(11, "soft-decision gain", ok,
           f"BMD reaches 6e-3 at {eb_bmd:.2f} dB; soft WER "
           + ", ".join(f"{e}:{w:.1e}" for e, w in zip(grid, wers))
           + f" -> crossing {eb_soft:.2f} dB, gain {gain:.2f} dB")
    return ok


def c12_polarization():
    rows = {r.path: r for r in polarization_report(2, 0.5, 2.0, 1_000_000, seed=12)}
    want = {"": 0.104, "PP": 0.302, "PR": 0.101, "RP": 0.072, "RR": 0.006}
    ok2 = all(abs(rows[p].ber - w) <= 0.005 for p, w in want.items())
    r1 = {r.path: r for r in polarization_report(1, 0.5, 2.0, 1_000_000, seed=13)}["R"]
    analytic = float(qfunc(1 / (sigma_for(0.5, 2.0) / math.sqrt(2))))  # +3 dB channel
    ok1 = abs(r1.ber - analytic) <= 0.002
    names = {"": "pc", "PP": "p4", "PR": "p3", "RP": "p2", "RR": "p1"}
    report(12, "polarization", ok1 and ok2,
           ", ".join(f"{names[p]}={rows[p].ber:.4f}" for p in want)
           + f"; depth-1 refine {r1.ber:.4f} vs Q {analytic:.4f}")
    return ok1 and ok2


def c13_oracles():
    f = fx()
    mismatches = 0
    cases = 0
    for n in range(1, 16):
        for d in range(1, min(8, n) + 1):
            for tau in range(0, min(6, n) + 1):
                cases += 1
                mismatches += count_W(n, d, tau) != brute_W(n, d, tau)
    rng = np.random.default_rng(13)
    fuzz_bad = 0
    for name in ("bch", "rm"):
        checks = f.checks(name)
        for _ in range(15):
            r = CyclicPoly.binary(63, np.flatnonzero(rng.random(63) < rng.uniform(0, 0.5)))
            fuzz_bad += not (phi(r, checks).counts == phi_eq7(r, checks).counts).all()
    node = rm_build(1, 3)
    info = np.array(list(itertools.product([0, 1], repeat=4)), dtype=np.uint8)
    plot_bad = 0
    for c in node.encode(info):
        for j in range(8):
            r = c.copy()
            r[j] ^= 1
            plot_bad += not (rm_decode(r, node, hard=True) == c).all()
    ok = mismatches == 0 and fuzz_bad == 0 and plot_bad == 0
    report(13, "oracle equivalence", ok, f"count_W {cases - mismatches}/{cases}; "
           f"Phi fuzz {30 - fuzz_bad}/30; RM(1,3) single errors {128 - plot_bad}/128")
    return ok


CRITERIA = [c1_worked_syndrome, c2_dual_counts, c3_punctured_rm, c4_table, c5_ranking,
            c6_wer_point, c7_flip_identity, c8_automorphism, c9_rs11, c10_rs5, c11_soft_gain,
            c12_polarization, c13_oracles]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[c.__name__ for c in CRITERIA])
def test_criterion(criterion):
    assert criterion()


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria pass")
    sys.exit(0 if all(results) else 1)
