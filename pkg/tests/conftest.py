import os

import numpy as np
import pytest

from dualdec.codebook import bch_generator, narrow_sense_reps, punctured_rm_generator, rs_generator
from dualdec.dualmine import binary_low_weight_search, mds_dual_min_weight
from dualdec.galois import make_field

# the worked-example check word annihilates this code only with x^6 + x^5 + 1
BCH_POLY = 0x61


@pytest.fixture(autouse=True, scope="session")
def _private_cache(tmp_path_factory):
    os.environ["DUALDEC_CACHE"] = str(tmp_path_factory.mktemp("cache"))


@pytest.fixture(scope="session")
def gf64():
    return make_field(6, BCH_POLY)


@pytest.fixture(scope="session")
def gf16():
    return make_field(4)


@pytest.fixture(scope="session")
def bch(gf64):
    return bch_generator(gf64, 63, narrow_sense_reps(63, 6, 15))


@pytest.fixture(scope="session")
def bch_checks(bch):
    return binary_low_weight_search(bch, 8, budget=400, seed=1)


@pytest.fixture(scope="session")
def rm26(gf64):
    return punctured_rm_generator(2, 6, gf64)


@pytest.fixture(scope="session")
def rm26_checks(rm26):
    return binary_low_weight_search(rm26, 8, budget=400, seed=1)


@pytest.fixture(scope="session")
def rs5(gf16):
    return rs_generator(gf16, 15, 5)


@pytest.fixture(scope="session")
def rs5_checks(rs5):
    return mds_dual_min_weight(rs5)


@pytest.fixture(scope="session")
def rs11(gf16):
    return rs_generator(gf16, 15, 11)


@pytest.fixture(scope="session")
def rs11_checks(rs11):
    return mds_dual_min_weight(rs11)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
