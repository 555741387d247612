"""Non-binary LDPC decoding with simplified min-sum check nodes."""

from .gf import GaloisField, gf_build
from .code import (ParityCheckMatrix, qc_expand, random_regular, read_alistq,
                   syndrome, write_alistq)
from .channel import ChannelConfig, ebn0_to_sigma, transmit_llrs
from .decoders import DecoderConfig, FixedPointFormat, build_lut, decode

__version__ = "0.1.0"
