"""Message-passing decoders: QSPA, EMSA, MMA and the simplified min-sum
family (SMSA1 = one LUT pass, SMSA2 = two passes)."""

from .check import fwht, reorder
from .counting import CnWorkspace, OpCounter
from .decoder import (ALGORITHMS, DEFAULT_SCALING, DecodeOutcome,
                      DecoderConfig, EdgeMessages, cn_emsa, cn_mma, cn_qspa,
                      cn_smsa, decode, decode_batch, init_messages, vn_process)
from .fixed import FixedPointFormat, quantize
from .lut import Lut, build_lut
from .oracle import cn_oracle, cn_oracle_pruned

__all__ = [
    "ALGORITHMS", "DEFAULT_SCALING", "CnWorkspace", "DecodeOutcome",
    "DecoderConfig", "EdgeMessages", "FixedPointFormat", "Lut", "OpCounter",
    "build_lut", "cn_emsa", "cn_mma", "cn_oracle", "cn_oracle_pruned",
    "cn_qspa", "cn_smsa", "decode", "decode_batch", "fwht", "init_messages",
    "quantize", "reorder", "vn_process",
]
