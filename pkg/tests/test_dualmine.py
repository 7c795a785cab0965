import json

import numpy as np
import pytest

from dualdec.cyclicring import CyclicPoly, mul_mod, parse_poly, shift, square_map
from dualdec.dualmine import (
    DualCheckSet,
    NoneFound,
    binary_low_weight_search,
    cache_dir,
    cyclic_canonical,
    load_checks,
    mine_checks,
    orbit_expand,
    save_checks,
)

from oracles import dual_count, weight_distribution


def test_worked_check_is_found(bch, bch_checks):
    b = parse_poly("x^49+x^37+x^34+x^30+x^19+x^12+x^6+1", 63)
    assert mul_mod(bch.g, b).is_zero()
    assert cyclic_canonical(b) in bch_checks.checks


def test_bch_count_matches_macwilliams(bch, bch_checks):
    bch_checks.validate()
    A8 = dual_count(weight_distribution(bch.gen_rows, 63), 63, 8)
    assert A8 == bch_checks.L * 63 == 35 * 63


def test_rm_count_matches_macwilliams(rm26, rm26_checks):
    A8 = dual_count(weight_distribution(rm26.gen_rows, 63), 63, 8)
    assert A8 == rm26_checks.L * 63 == 155 * 63


def test_rs_counts(rs5_checks, rs11_checks):
    # weight-(k+1) words of an MDS dual: (q-1) C(n, k+1), i.e. C(n, k+1) / n up to shift and scale
    assert rs5_checks.L == 335 and rs5_checks.weight == 6
    assert rs11_checks.L == 31 and rs11_checks.weight == 12
    rs5_checks.validate()
    rs11_checks.validate()


def test_canonical_form_is_shift_invariant(rng, gf16):
    b = CyclicPoly.from_terms(gf16, 15, [(0, 3), (4, 7), (9, 1)])
    c = cyclic_canonical(b)
    for s in rng.integers(0, 15, 5):
        assert cyclic_canonical(shift(b, int(s))) == c
    assert c[0] == 1


def test_orbit_is_closed(bch_checks):
    b = bch_checks.checks[0]
    orb = orbit_expand(b)
    assert all(shift(p, 1) in orb and square_map(p) in orb for p in orb)
    assert len(orb) % 63 == 0


def test_supports_start_at_zero(bch_checks, rs5_checks):
    for cs in (bch_checks, rs5_checks):
        assert (cs.supports[:, 0] == 0).all()
        assert (cs.coeffs[:, 0] == 1).all()


def test_save_load_round_trip(tmp_path, rs5, rs11, rs11_checks):
    p = tmp_path / "c.json"
    save_checks(rs11_checks, p, {"seed": 0})
    back = load_checks(p, rs11)
    assert back.checks == rs11_checks.checks
    assert json.loads(p.read_text())["meta"] == {"seed": 0}
    with pytest.raises(ValueError):
        load_checks(p, rs5)


def test_validate_rejects_duplicates(bch_checks):
    b = bch_checks.checks[0]
    bad = DualCheckSet(bch_checks.code, 8, (b, shift(b, 3)))
    with pytest.raises(ValueError):
        bad.validate()


def test_cache_honours_env(rs11, monkeypatch, tmp_path):
    monkeypatch.setenv("DUALDEC_CACHE", str(tmp_path))
    assert cache_dir() == tmp_path
    a = mine_checks(rs11)
    assert list(tmp_path.glob("*.json"))
    b = mine_checks(rs11)
    assert a.checks == b.checks


def test_impossible_weight_raises(bch):
    with pytest.raises(NoneFound):
        binary_low_weight_search(bch, 2, budget=10)
