"""Channels, error patterns and the Monte-Carlo word-error-rate harness."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .codebook import CodeSpec, encode_array
from .cyclicring import GF2, CyclicPoly
from .dualmine import DualCheckSet
from .galois import Field
from .harddec import Status, decode_info_set, decode_nonbinary, engine_for, iter_reduce_batch
from .softdec import decode_soft_infoset, soft_flip_batch
from .stats import ExpectationTable

__all__ = [
    "ChannelParams",
    "ConfigInvalid",
    "DecoderConfig",
    "WerRow",
    "bmd_wer",
    "decode_batch",
    "measure_phi_table",
    "mixture_wer",
    "random_error",
    "random_error_array",
    "ranking_success",
    "tau_conditional_success",
    "transmit",
    "transmit_array",
    "wer_curve",
    "wilson_ci",
]


class ConfigInvalid(ValueError):
    pass


@dataclass(frozen=True)
class ChannelParams:
    """``kind`` is ``"bsc"`` or ``"qsc"`` (symbol error probability ``p``) or ``"awgn"``."""

    kind: str
    p: float = 0.0
    ebn0_db: float = 0.0
    rate: float = 1.0

    def __post_init__(self):
        if self.kind not in ("bsc", "qsc", "awgn"):
            raise ConfigInvalid(f"unknown channel {self.kind!r}")
        if self.kind != "awgn" and not 0 <= self.p <= 1:
            raise ConfigInvalid(f"p={self.p} outside [0, 1]")
        if self.kind == "awgn" and not 0 < self.rate <= 1:
            raise ConfigInvalid(f"rate={self.rate} outside (0, 1]")

    @classmethod
    def bsc(cls, p: float) -> "ChannelParams":
        return cls("bsc", p=p)

    @classmethod
    def qsc(cls, p: float) -> "ChannelParams":
        return cls("qsc", p=p)

    @classmethod
    def awgn(cls, ebn0_db: float, rate: float) -> "ChannelParams":
        return cls("awgn", ebn0_db=ebn0_db, rate=rate)

    @property
    def sigma2(self) -> float:
        return 1.0 / (2 * self.rate * 10 ** (self.ebn0_db / 10))

    @property
    def sigma(self) -> float:
        return math.sqrt(self.sigma2)

    @property
    def param(self) -> float:
        return self.ebn0_db if self.kind == "awgn" else self.p


def random_error(n: int, tau: int, field: Field = GF2, rng=None) -> CyclicPoly:
    """Uniform support of size tau, nonzero values uniform over the field."""
    rng = np.random.default_rng(rng)
    return CyclicPoly(field, n, coeffs=random_error_array(n, tau, field, 1, rng)[0])


def random_error_array(n: int, tau: int, field: Field, count: int, rng) -> np.ndarray:
    if not 0 <= tau <= n:
        raise ValueError(f"need 0 <= tau <= {n}, got {tau}")
    keys = rng.random((count, n))
    supp = np.argsort(keys, axis=1)[:, :tau]
    E = np.zeros((count, n), dtype=np.int64)
    vals = rng.integers(1, field.q, size=(count, tau)) if field.q > 2 else 1
    np.put_along_axis(E, supp, vals, axis=1)
    return E


def transmit_array(C: np.ndarray, params: ChannelParams, field: Field, rng) -> np.ndarray:
    """Channel output for rows of symbols; AWGN returns reals (0 -> +1, 1 -> -1)."""
    C = np.asarray(C, dtype=np.int64)
    if params.kind == "awgn":
        if field.q != 2:
            raise ConfigInvalid("AWGN/BPSK needs a binary code")
        return (1.0 - 2.0 * C) + params.sigma * rng.standard_normal(C.shape)
    hit = rng.random(C.shape) < params.p
    if params.kind == "bsc" or field.q == 2:
        return C ^ hit
    # replace by one of the other q - 1 symbols
    offs = rng.integers(1, field.q, size=C.shape)
    return np.where(hit, C ^ offs, C)


def transmit(c, params: ChannelParams, rng=None):
    """Send one word; returns a CyclicPoly (symmetric channels) or a float array (AWGN)."""
    rng = np.random.default_rng(rng)
    field = c.field
    out = transmit_array(c.coeffs[None], params, field, rng)[0]
    if params.kind == "awgn":
        return out
    return CyclicPoly(field, c.n, coeffs=out)


def bmd_wer(n: int, t: int, p: float) -> float:
    """WER of a decoder correcting exactly the patterns of weight <= t."""
    ok = sum(math.comb(n, i) * p**i * (1 - p) ** (n - i) for i in range(t + 1))
    return max(0.0, 1.0 - ok)


def wilson_ci(k: int, n: int, z: float = 1.959963984540054) -> tuple[float, float]:
    """95% Wilson score interval for k successes in n trials."""
    if n == 0:
        return 0.0, 1.0
    ph = k / n
    den = 1 + z * z / n
    mid = (ph + z * z / (2 * n)) / den
    half = z * math.sqrt(ph * (1 - ph) / n + z * z / (4 * n * n)) / den
    lo = 0.0 if k == 0 else max(0.0, mid - half)
    hi = 1.0 if k == n else min(1.0, mid + half)
    return lo, hi


@dataclass(frozen=True)
class WerRow:
    param: float
    trials: int
    errors: int
    failures: int = 0
    miscorrections: int = 0

    @property
    def wer(self) -> float:
        return self.errors / self.trials if self.trials else 0.0

    @property
    def ci(self) -> tuple[float, float]:
        return wilson_ci(self.errors, self.trials)

    def to_dict(self) -> dict:
        lo, hi = self.ci
        return {"param": self.param, "trials": self.trials, "errors": self.errors,
                "wer": self.wer, "ci_lo": lo, "ci_hi": hi,
                "failures": self.failures, "miscorrections": self.miscorrections}


_DECODERS = ("reduce", "infoset", "nb-max", "nb-zero", "nb-combined", "soft-flip", "soft-infoset")


@dataclass(frozen=True)
class DecoderConfig:
    name: str = "reduce"
    mu: int = 7
    max_rounds: int = 20
    adaptive: bool = False
    k0: int | None = None
    literal: bool = False
    max_steps: int | None = None

    def __post_init__(self):
        if self.name not in _DECODERS:
            raise ConfigInvalid(f"decoder must be one of {_DECODERS}, got {self.name!r}")
        if self.mu < 1 or self.max_rounds < 1:
            raise ConfigInvalid("mu and max_rounds must be positive")

    @property
    def soft(self) -> bool:
        return self.name.startswith("soft")

    def to_dict(self) -> dict:
        return asdict(self)


def decode_batch(Y: np.ndarray, spec: CodeSpec, checks: DualCheckSet,
                 cfg: DecoderConfig) -> tuple[np.ndarray, np.ndarray]:
    """Decode rows of channel output; returns ``(words, ok)``.

    Words the decoder gave up on (Failed or Ambiguous) have ``ok`` False.
    """
    n = spec.n
    if cfg.name == "reduce":
        R = np.asarray(Y, dtype=np.uint8) & 1
        D, ok, _ = iter_reduce_batch(R, checks, cfg.mu, cfg.max_rounds, cfg.adaptive)
        return D.astype(np.int64), ok
    if cfg.name == "soft-flip":
        D, ok, _ = soft_flip_batch(Y, checks, cfg.mu, cfg.max_rounds, cfg.literal)
        return D.astype(np.int64), ok
    out = np.zeros((len(Y), n), dtype=np.int64)
    ok = np.zeros(len(Y), dtype=bool)
    for b, y in enumerate(Y):
        if cfg.name == "infoset":
            rep = decode_info_set(y, spec, checks, cfg.k0)
        elif cfg.name == "soft-infoset":
            rep = decode_soft_infoset(y, spec, checks, cfg.k0, literal=cfg.literal)
        else:
            rep = decode_nonbinary(y, checks, cfg.name[3:].replace("zero", "zero-row"),
                                   cfg.max_steps)
        if rep.codeword is not None:
            out[b] = rep.codeword.coeffs
        ok[b] = rep.status is Status.CORRECTED
    return out, ok


def _check_config(spec: CodeSpec, checks: DualCheckSet, cfg: DecoderConfig, soft_channel: bool):
    if checks.code is not spec and checks.code.spec_hash() != spec.spec_hash():
        raise ConfigInvalid("checks belong to a different code")
    if cfg.name.startswith("nb-") and spec.is_binary:
        raise ConfigInvalid(f"{cfg.name} needs a nonbinary code")
    if not cfg.name.startswith("nb-") and not spec.is_binary:
        raise ConfigInvalid(f"{cfg.name} needs a binary code")
    if cfg.soft != soft_channel:
        raise ConfigInvalid(f"decoder {cfg.name} does not match the channel type")


def _run_chunk(spec, checks, cfg, params, seed, g, c, size):
    rng = np.random.default_rng([seed, g, c])
    field = spec.symbol_field
    info = rng.integers(0, field.q, size=(size, spec.k))
    C = encode_array(spec, info)
    Y = transmit_array(C, params, field, rng)
    D, ok = decode_batch(Y, spec, checks, cfg)
    wrong = (D != C).any(axis=1) | ~ok
    return int(wrong.sum()), int((~ok).sum()), int((ok & wrong).sum())


def _pool_sum(jobs, threads: int | None):
    if threads is None:
        threads = os.cpu_count() or 1
    if threads <= 1:
        return [job() for job in jobs]
    with ThreadPoolExecutor(threads) as ex:
        return list(ex.map(lambda job: job(), jobs))


def wer_curve(spec: CodeSpec, checks: DualCheckSet, cfg: DecoderConfig, grid,
              trials: int, seed: int = 0, threads: int | None = 1,
              chunk: int = 1000) -> list[WerRow]:
    """WER at each channel setting in ``grid``.

    Trials are split into fixed-size chunks, chunk c of grid point g drawing
    from ``default_rng([seed, g, c])``, so the result does not depend on the
    thread count.
    """
    if trials < 1:
        raise ConfigInvalid("trials must be >= 1")
    rows = []
    for g, params in enumerate(grid):
        _check_config(spec, checks, cfg, params.kind == "awgn")
        sizes = [min(chunk, trials - a) for a in range(0, trials, chunk)]
        jobs = [
            (lambda c=c, s=s: _run_chunk(spec, checks, cfg, params, seed, g, c, s))
            for c, s in enumerate(sizes)
        ]
        res = _pool_sum(jobs, threads)
        e, f, m = (sum(x) for x in zip(*res))
        rows.append(WerRow(params.param, trials, e, f, m))
    return rows


def tau_conditional_success(spec: CodeSpec, checks: DualCheckSet, cfg: DecoderConfig,
                            tau: int, trials: int, seed: int = 0) -> float:
    """Fraction of random weight-tau errors the decoder removes exactly."""
    if tau == 0:
        return 1.0
    if cfg.soft:
        raise ConfigInvalid("tau-conditional runs use hard-decision decoders")
    _check_config(spec, checks, cfg, False)
    rng = np.random.default_rng([seed, tau])
    E = random_error_array(spec.n, tau, spec.symbol_field, trials, rng)
    D, ok = decode_batch(E, spec, checks, cfg)
    return float((ok & ~D.any(axis=1)).mean())


def mixture_wer(n: int, p: float, success: dict[int, float], t_bmd: int = 0) -> float:
    """WER over a symmetric channel from per-weight success rates.

    Weights up to ``t_bmd`` without an entry count as always corrected,
    other missing weights as always failed.
    """
    ok = 0.0
    for t in range(n + 1):
        s = success.get(t, 1.0 if t <= t_bmd else 0.0)
        ok += math.comb(n, t) * p**t * (1 - p) ** (n - t) * s
    return max(0.0, 1.0 - ok)


def _phi_samples(checks: DualCheckSet, tau: int, trials: int, seed):
    eng = engine_for(checks)
    rng = np.random.default_rng(seed)
    E = random_error_array(checks.n, tau, GF2, trials, rng).astype(np.uint8)
    W = eng.syndrome_bits(E)
    return E.astype(bool), W, eng.phi_from_syndromes(W)


def measure_phi_table(checks: DualCheckSet, tau: int, trials: int = 2000,
                      seed: int | None = 0) -> ExpectationTable:
    """Predicted and Monte-Carlo averages of syndrome weight and Phi for weight-tau errors.

    ``AV_omega`` is the mean weight of one syndrome polynomial, the Phi
    averages run over error and over error-free positions separately.
    """
    if not checks.code.is_binary:
        raise ConfigInvalid("Phi statistics need a binary code")
    row = ExpectationTable.predict(checks.n, checks.weight, tau, checks.L)
    err, W, P = _phi_samples(checks, tau, trials, seed)
    row.AV_omega = float(W.sum()) / (trials * checks.L)
    row.AV_phi_err = float(P[err].mean()) if tau else math.nan
    row.AV_phi_ok = float(P[~err].mean())
    row.AV_phi_max = float(P.max(axis=1).mean())
    return row


def ranking_success(checks: DualCheckSet, tau: int, trials: int = 2000,
                    seed: int | None = 0) -> float:
    """Fraction of weight-tau errors whose Phi separates them from all other positions.

    Success needs every error position to score strictly above every
    error-free one, so a tie across the boundary counts as a miss.
    """
    err, _, P = _phi_samples(checks, tau, trials, seed)
    lo = np.where(err, P, np.iinfo(np.int64).max).min(axis=1)
    hi = np.where(err, -1, P).max(axis=1)
    return float((lo > hi).mean())
