"""Reed-Muller code laboratory: construction, channels, decoders, analysis."""

from .rmcode import CodeParams, Message, dual_params, encode, is_codeword

__version__ = "0.1.0"

__all__ = ["CodeParams", "Message", "dual_params", "encode", "is_codeword", "__version__"]
