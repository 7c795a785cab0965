import numpy as np
import pytest

from dualdec.codebook import (
    InfoTooLong,
    NonBinaryCoefficient,
    ParameterOutOfRange,
    bch_generator,
    code_from_dict,
    cyclotomic_cosets,
    encode,
    encode_array,
    is_codeword,
    narrow_sense_reps,
    punctured_rm_generator,
    reencode,
    rs_generator,
)
from dualdec.cyclicring import CyclicPoly, mul_mod
from dualdec.galois import make_field

from oracles import weight_distribution


def test_cyclotomic_cosets_partition():
    cos = cyclotomic_cosets(63, 6)
    assert sorted(j for c in cos.values() for j in c) == list(range(63))
    assert cos[1] == [1, 2, 4, 8, 16, 32]
    assert cos[21] == [21, 42] and cos[9] == [9, 18, 36]
    with pytest.raises(ParameterOutOfRange):
        cyclotomic_cosets(62, 6)


def test_bch_parameters(bch):
    assert (bch.n, bch.k, bch.d_designed) == (63, 24, 15)
    assert bch.g.degree() == 39
    assert mul_mod(bch.g, bch.h).is_zero()


def test_bch_true_minimum_distance(bch):
    dist = weight_distribution(bch.gen_rows, 63)
    assert dist[0] == 1 and dist[1:15].sum() == 0 and dist[15] > 0


def test_punctured_rm(rm26):
    assert rm26.coset_reps == (1, 3, 5, 7, 9, 11, 13, 21)
    assert rm26.g.degree() == 41 and rm26.k == 22 and rm26.d_designed == 15


@pytest.mark.parametrize("r,m,k", [(1, 3, 4), (1, 4, 5), (2, 5, 16), (1, 6, 7)])
def test_punctured_rm_dimensions(r, m, k):
    assert punctured_rm_generator(r, m).k == k


def test_rs_is_mds(gf16):
    for k in (5, 11):
        s = rs_generator(gf16, 15, k)
        assert s.g.degree() == 15 - k and s.d_designed == 16 - k
        # every nonzero multiple of g has at most k - 1 zeros
        rng = np.random.default_rng(k)
        C = encode_array(s, rng.integers(0, 16, size=(200, k)))
        nz = np.count_nonzero(C, axis=1)
        assert nz[nz > 0].min() >= 16 - k


def test_generator_roots_are_negative_powers(gf16):
    s = rs_generator(gf16, 15, 11)
    for j in range(11, 15):
        x = gf16.alpha(-j)
        acc = 0
        for c in reversed(s.g.coeffs.tolist()):
            acc = gf16.mul(acc, x) ^ c
        assert acc == 0


def test_encode_and_membership(bch, rng):
    info = CyclicPoly.binary(63, np.flatnonzero(rng.integers(0, 2, 24)))
    c = encode(bch, info)
    assert is_codeword(bch, c)
    assert not is_codeword(bch, c + CyclicPoly.binary(63, [5]))
    with pytest.raises(InfoTooLong):
        encode(bch, CyclicPoly.binary(63, [24]))


def test_encode_array_matches_scalar(rs5, rng):
    info = rng.integers(0, 16, size=(4, 5))
    C = encode_array(rs5, info)
    for row, c in zip(info, C):
        assert c.tolist() == encode(rs5, CyclicPoly(rs5.symbol_field, 15, coeffs=list(row) + [0] * 10)).coeffs.tolist()


def test_reencode_recovers_codeword(bch, rng):
    c = encode_array(bch, rng.integers(0, 2, 24))
    pos = list(range(24))  # first k positions of a cyclic code form an information set
    assert (reencode(bch, pos, c[pos]) == c).all()


def test_non_conjugate_roots_rejected():
    f = make_field(4)
    with pytest.raises(ParameterOutOfRange):
        bch_generator(f, 15, [2])
    from dualdec.codebook import _binary_cyclic
    with pytest.raises(NonBinaryCoefficient):
        _binary_cyclic(f, 15, {1})


def test_spec_round_trip(bch, rm26, rs5):
    for s in (bch, rm26, rs5):
        t = code_from_dict(s.to_dict())
        assert t.g == s.g and t.spec_hash() == s.spec_hash()


def test_narrow_sense_reps():
    assert narrow_sense_reps(63, 6, 15) == (1, 3, 5, 7, 9, 11, 13)
