"""``dualdec`` command line.

Exit status is 0 on success, 1 on a usage error and 2 when the command
itself fails.  JSON outputs carry a ``meta`` object; CSV outputs start with
``# key: value`` comment lines holding the same metadata.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import os
import sys
from importlib import resources
from pathlib import Path

import numpy as np

from . import __version__
from .codebook import CodeSpec, code_from_dict, encode
from .cyclicring import CyclicPoly, format_poly, parse_poly
from .dualmine import DualCheckSet, load_checks, mine_checks, save_checks
from .harddec import decode_info_set, decode_iter_reduce, decode_nonbinary
from .plotkin import LeafCode, PlotkinNode, polarization_report, rm_build, rm_decode
from .simkit import ChannelParams, DecoderConfig, measure_phi_table, wer_curve
from .softdec import decode_soft_flip, decode_soft_infoset

log = logging.getLogger("dualdec")

FIXTURES = ("bch63_24", "rm2_6", "rs15_5", "rs15_11")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


# -- inputs -----------------------------------------------------------------

def load_spec(arg: str) -> tuple[CodeSpec, dict]:
    """A spec JSON path, or the name of a bundled fixture."""
    if arg in FIXTURES:
        text = resources.files("dualdec").joinpath("data", f"{arg}.json").read_text()
    else:
        text = Path(arg).read_text()
    d = json.loads(text)
    return code_from_dict(d), d


def _sha16(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def checks_hash(checks: DualCheckSet) -> str:
    return _sha16(json.dumps(checks.to_dict()["checks"], sort_keys=True))


def get_checks(spec: CodeSpec, path: str | None, weight: int | None, seed: int) -> DualCheckSet:
    if path:
        return load_checks(path, spec)
    return mine_checks(spec, weight, seed=seed)


def parse_word(text: str, spec: CodeSpec) -> CyclicPoly:
    """Polynomial text (``x^3+x+1``), a ``0x`` bit mask (bit j = x^j), or comma-separated symbols."""
    f = spec.symbol_field
    text = text.strip()
    if text.lower().startswith("0x"):
        if not f.is_binary:
            raise UsageError("hex words are for binary codes")
        return CyclicPoly.binary(spec.n, mask=int(text, 16))
    if "x" in text or "a^" in text:
        return parse_poly(text, spec.n, f)
    vals = [int(v) for v in text.replace(";", ",").split(",") if v.strip()]
    if len(vals) != spec.n:
        raise UsageError(f"word has {len(vals)} symbols, code length is {spec.n}")
    return CyclicPoly(f, spec.n, coeffs=vals)


def parse_reals(text: str) -> np.ndarray:
    p = Path(text)
    if p.exists():
        text = p.read_text()
    return np.array([float(v) for v in text.replace("\n", ",").split(",") if v.strip()])


def parse_range(text: str) -> list[float]:
    """``a:b:step`` (inclusive) or a comma list."""
    if ":" in text:
        a, b, s = (float(v) for v in text.split(":"))
        if s <= 0:
            raise UsageError("range step must be positive")
        count = int(np.floor((b - a) / s + 1e-9)) + 1
        return [round(a + i * s, 12) for i in range(count)]
    return [float(v) for v in text.split(",")]


def parse_taus(text: str) -> list[int]:
    if ".." in text:
        a, b = text.split("..")
        return list(range(int(a), int(b) + 1))
    return [int(v) for v in text.split(",")]


# -- outputs ----------------------------------------------------------------

def meta(spec: CodeSpec | None = None, checks: DualCheckSet | None = None, seed=None, **extra) -> dict:
    m = {"version": __version__}
    if spec is not None:
        m["code"] = spec.label
        m["spec_hash"] = spec.spec_hash()
    if checks is not None:
        m["checks_hash"] = checks_hash(checks)
        m["L"] = checks.L
    if seed is not None:
        m["seed"] = seed
    m.update(extra)
    return m


def write_json(obj: dict, out) -> None:
    text = json.dumps(obj, indent=1)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def write_csv(rows: list[dict], m: dict, out) -> None:
    buf = io.StringIO()
    for k, v in m.items():
        buf.write(f"# {k}: {v}\n")
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    if out:
        Path(out).write_text(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())


def read_csv(text: str) -> tuple[dict, list[dict]]:
    """Inverse of the CSV writer: ``(metadata, rows)`` with values left as strings."""
    m, body = {}, []
    for line in text.splitlines():
        if line.startswith("# "):
            k, _, v = line[2:].partition(": ")
            m[k] = v
        elif line:
            body.append(line)
    return m, list(csv.DictReader(body))


# -- subcommands ------------------------------------------------------------

def cmd_mine(a) -> int:
    spec, _ = load_spec(a.spec)
    checks = mine_checks(spec, a.weight, budget=a.budget, seed=a.seed, use_cache=not a.no_cache)
    checks.validate()
    m = meta(spec, checks, a.seed, budget=a.budget)
    if a.out:
        save_checks(checks, a.out, m)
    else:
        d = checks.to_dict()
        d["meta"] = m
        write_json(d, None)
    print(f"L={checks.L} checks of weight {checks.weight}", file=sys.stderr)
    return 0


def cmd_encode(a) -> int:
    spec, _ = load_spec(a.spec)
    text = a.info.strip()
    if "x" in text or "a^" in text:
        info = parse_word(text, spec)
    else:
        vals = [int(v) for v in text.split(",")]
        if len(vals) > spec.k:
            raise UsageError(f"{len(vals)} information symbols, k is {spec.k}")
        info = CyclicPoly(spec.symbol_field, spec.n, coeffs=vals + [0] * (spec.n - len(vals)))
    c = encode(spec, info)
    write_json({"meta": meta(spec), "codeword": [int(v) for v in c.coeffs],
                "polynomial": format_poly(c)}, a.out)
    return 0


def _report_json(rep, spec, checks, seed, out) -> None:
    d = rep.to_dict()
    if rep.error is not None:
        d["error_polynomial"] = format_poly(rep.error)
    write_json({"meta": meta(spec, checks, seed), "report": d}, out)


def cmd_decode(a) -> int:
    spec, _ = load_spec(a.spec)
    checks = get_checks(spec, a.checks, a.weight, a.seed or 0)
    r = parse_word(a.received, spec)
    if a.strategy == "reduce":
        rep = decode_iter_reduce(r, checks, a.mu, a.max_rounds, a.adaptive, a.seed)
    elif a.strategy == "infoset":
        rep = decode_info_set(r, spec, checks, a.k0, a.seed)
    else:
        strategy = {"nb-max": "max", "nb-zero": "zero-row", "nb-combined": "combined"}[a.strategy]
        rep = decode_nonbinary(r, checks, strategy)
    _report_json(rep, spec, checks, a.seed, a.out)
    return 0


def cmd_decode_soft(a) -> int:
    spec, _ = load_spec(a.spec)
    checks = get_checks(spec, a.checks, a.weight, a.seed or 0)
    y = parse_reals(a.y)
    if len(y) != spec.n:
        raise UsageError(f"y has {len(y)} values, code length is {spec.n}")
    if a.infoset:
        rep = decode_soft_infoset(y, spec, checks, a.k0, a.seed, a.literal)
    else:
        rep = decode_soft_flip(y, spec, checks, a.mu, a.max_rounds, a.literal)
    _report_json(rep, spec, checks, a.seed, a.out)
    return 0


def _tree_rows(node, name="root", depth=0):
    yield {"node": name, "depth": depth, "n": node.n, "k": node.k, "d": node.d,
           "kind": node.kind if isinstance(node, LeafCode) else "plotkin"}
    if isinstance(node, PlotkinNode):
        yield from _tree_rows(node.left, name + ".u", depth + 1)
        yield from _tree_rows(node.right, name + ".v", depth + 1)


def cmd_plotkin(a) -> int:
    try:
        r, m = (int(v) for v in a.rm.split(","))
    except ValueError:
        raise UsageError("--rm takes r,m") from None
    node = rm_build(r, m)
    md = meta(rm=f"{r},{m}", decode=a.decode)
    if a.y is None:
        write_csv(list(_tree_rows(node)), md, a.out)
        return 0
    y = parse_reals(a.y)
    if len(y) != node.n:
        raise UsageError(f"y has {len(y)} values, code length is {node.n}")
    c = rm_decode(y, node, hard=a.decode == "hard")
    write_csv([{"position": j, "y": float(y[j]), "bit": int(b)} for j, b in enumerate(c)], md, a.out)
    return 0


def cmd_polarize(a) -> int:
    rows = polarization_report(a.depth, a.rate, a.ebn0, a.trials, a.seed)
    md = meta(seed=a.seed, depth=a.depth, rate=a.rate, ebn0_db=a.ebn0, trials=a.trials)
    write_csv([r.to_dict() for r in rows], md, a.out)
    return 0


def cmd_simulate(a) -> int:
    spec, _ = load_spec(a.spec)
    checks = get_checks(spec, a.checks, a.weight, a.seed)
    if a.channel == "awgn":
        if a.ebn0 is None:
            raise UsageError("--channel awgn needs --ebn0")
        grid = [ChannelParams.awgn(e, spec.k / spec.n) for e in parse_range(a.ebn0)]
        default = "soft-flip"
    else:
        if a.p is None:
            raise UsageError(f"--channel {a.channel} needs --p")
        grid = [ChannelParams(a.channel, p=p) for p in parse_range(a.p)]
        default = "reduce" if spec.is_binary else "nb-max"
    cfg = DecoderConfig(a.decoder or default, mu=a.mu, max_rounds=a.max_rounds,
                        adaptive=a.adaptive, k0=a.k0)
    rows = wer_curve(spec, checks, cfg, grid, a.trials, a.seed, a.threads)
    md = meta(spec, checks, a.seed, channel=a.channel, decoder=cfg.name, mu=cfg.mu,
              trials=a.trials)
    write_csv([r.to_dict() for r in rows], md, a.out)
    return 0


def cmd_analyze(a) -> int:
    spec, _ = load_spec(a.spec)
    if not spec.is_binary:
        raise UsageError("analyze needs a binary code")
    checks = get_checks(spec, a.checks, a.weight, a.seed)
    rows = []
    for tau in parse_taus(a.tau):
        t = measure_phi_table(checks, tau, a.trials, [a.seed, tau])
        rows.append({"tau": tau,
                     "E_omega": round(t.E_omega, 4), "AV_omega": round(t.AV_omega, 4),
                     "E_phi_err": round(t.E_phi_err, 4), "AV_phi_err": round(t.AV_phi_err, 4),
                     "E_phi_ok": round(t.E_phi_ok, 4), "AV_phi_ok": round(t.AV_phi_ok, 4),
                     "AV_phi_max": round(t.AV_phi_max, 4)})
    write_csv(rows, meta(spec, checks, a.seed, trials=a.trials), a.out)
    return 0


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dualdec", description="Decoding cyclic codes with minimal-weight dual codewords.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def code_args(sp, checks=True):
        sp.add_argument("--spec", required=True, help=f"spec JSON file or one of {', '.join(FIXTURES)}")
        if checks:
            sp.add_argument("--checks", help="checks JSON (mined, or read from the cache, if absent)")
            sp.add_argument("--weight", type=int, help="dual weight to mine for binary codes")
        sp.add_argument("--out", help="output file (default: stdout)")

    sp = sub.add_parser("mine", help="find the minimal-weight dual checks")
    code_args(sp, checks=False)
    sp.add_argument("--weight", type=int)
    sp.add_argument("--budget", type=int, default=4000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--no-cache", action="store_true")
    sp.set_defaults(func=cmd_mine)

    sp = sub.add_parser("encode", help="c(x) = i(x) g(x)")
    code_args(sp, checks=False)
    sp.add_argument("--info", required=True, help="polynomial, 0x mask or comma-separated symbols")
    sp.set_defaults(func=cmd_encode)

    sp = sub.add_parser("decode", help="hard-decision decoding of one word")
    code_args(sp)
    sp.add_argument("--received", required=True)
    sp.add_argument("--strategy", default="reduce",
                    choices=["reduce", "infoset", "nb-max", "nb-zero", "nb-combined"])
    sp.add_argument("--mu", type=int, default=7)
    sp.add_argument("--max-rounds", type=int, default=20)
    sp.add_argument("--adaptive", action="store_true")
    sp.add_argument("--k0", type=int)
    sp.add_argument("--seed", type=int)
    sp.set_defaults(func=cmd_decode)

    sp = sub.add_parser("decode-soft", help="soft-decision decoding of one AWGN output")
    code_args(sp)
    sp.add_argument("--y", required=True, help="comma-separated reals or a file")
    sp.add_argument("--mu", type=int, default=7)
    sp.add_argument("--max-rounds", type=int, default=20)
    sp.add_argument("--infoset", action="store_true")
    sp.add_argument("--k0", type=int)
    sp.add_argument("--literal", action="store_true", help="sign of the other positions only")
    sp.add_argument("--seed", type=int)
    sp.set_defaults(func=cmd_decode_soft)

    sp = sub.add_parser("plotkin", help="RM(r,m) component tree, or decode one word")
    sp.add_argument("--rm", required=True, help="r,m")
    sp.add_argument("--decode", choices=["hard", "soft"], default="soft")
    sp.add_argument("--y", help="channel output to decode (comma-separated reals or a file)")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_plotkin)

    sp = sub.add_parser("polarize", help="genie-aided BER of the split channels")
    sp.add_argument("--depth", type=int, default=2)
    sp.add_argument("--rate", type=float, default=0.5)
    sp.add_argument("--ebn0", type=float, default=2.0)
    sp.add_argument("--trials", type=int, default=1_000_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_polarize)

    sp = sub.add_parser("simulate", help="Monte-Carlo WER curve")
    code_args(sp)
    sp.add_argument("--channel", choices=["bsc", "qsc", "awgn"], default="bsc")
    sp.add_argument("--p", help="a:b:step or comma list")
    sp.add_argument("--ebn0", help="a:b:step or comma list (dB)")
    sp.add_argument("--decoder", choices=["reduce", "infoset", "nb-max", "nb-zero", "nb-combined",
                                          "soft-flip", "soft-infoset"])
    sp.add_argument("--mu", type=int, default=7)
    sp.add_argument("--max-rounds", type=int, default=20)
    sp.add_argument("--adaptive", action="store_true")
    sp.add_argument("--k0", type=int)
    sp.add_argument("--trials", type=int, default=10_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("analyze", help="predicted vs measured syndrome weight and Phi")
    code_args(sp)
    sp.add_argument("--tau", default="5..9", help="a..b or comma list")
    sp.add_argument("--trials", type=int, default=2000)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_analyze)
    return p


def _default_weight(a) -> None:
    # the fixture BCH and RM codes both have dual distance 8
    if getattr(a, "weight", None) is None and getattr(a, "spec", None) in ("bch63_24", "rm2_6"):
        a.weight = 8


def main(argv=None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if a.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    _default_weight(a)
    try:
        return a.func(a)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"dualdec: error: {e}", file=sys.stderr)
        return 1
    except Exception as e:  # noqa: BLE001 - reported, not raised
        log.debug("failure", exc_info=True)
        print(f"dualdec: {type(e).__name__}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
