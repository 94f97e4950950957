"""Forward error correction: GF(2^7), BCH(127,106) and the ACPC baseline."""
from .acpc import AcpcResult, acpc_decode, acpc_decode_word, acpc_encode, offset_vector
from .bch import BCH_127_106, BchCode, BchDecodeResult, bch_decode, bch_encode
from .gf import GF128

__all__ = [
    "AcpcResult",
    "acpc_decode",
    "acpc_decode_word",
    "acpc_encode",
    "offset_vector",
    "BCH_127_106",
    "BchCode",
    "BchDecodeResult",
    "bch_decode",
    "bch_encode",
    "GF128",
]
