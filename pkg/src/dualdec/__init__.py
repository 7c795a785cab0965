"""Decoding cyclic codes with minimal-weight codewords of the dual code."""

__version__ = "0.1.0"

from .galois import Field, make_field
from .cyclicring import GF2, CyclicPoly, format_poly, mul_mod, parse_poly, shift, square_map
from .codebook import (
    CodeSpec,
    bch_generator,
    code_from_dict,
    encode,
    load_code_spec,
    narrow_sense_reps,
    punctured_rm_generator,
    rs_generator,
)
from .dualmine import DualCheckSet, binary_low_weight_search, mds_dual_min_weight, mine_checks
from .harddec import (
    DecodeReport,
    Status,
    decode_info_set,
    decode_iter_reduce,
    decode_nonbinary,
    delta,
    phi,
    phi_matrix,
    syndromes,
)
from .softdec import decode_soft_flip, decode_soft_infoset, varphi
from .plotkin import polarization_report, rm_build, rm_decode
from .simkit import ChannelParams, DecoderConfig, wer_curve
from .stats import ExpectationTable, count_W, expected_weight
