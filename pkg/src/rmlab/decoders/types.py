"""Shared result types and scoring for decoders."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .. import gf2, rmcode


class Undecodable(Exception):
    """Decoder could not produce a unique codeword."""


@dataclass(frozen=True)
class Ambiguous:
    """Erasure decoding hit a solution space of size 2^count_exponent > 1."""

    count_exponent: int


@dataclass
class DecodeResult:
    params: Optional[rmcode.CodeParams]
    codeword: np.ndarray
    message: Optional[rmcode.Message]
    metric: float


def soft_metric(codeword, L) -> float:
    """(1/2) sum_z (-1)^{c_z} L_z; the shared ML comparison score."""
    c = np.asarray(codeword, dtype=np.float64)
    return 0.5 * float(np.dot(1.0 - 2.0 * c, np.asarray(L, dtype=np.float64)))


def hard_input_llr(y) -> np.ndarray:
    """+/-1 image of a hard word, used to score hard-input decoders."""
    return 1.0 - 2.0 * np.asarray(y, dtype=np.float64)


def result_for(params: rmcode.CodeParams, codeword: np.ndarray, L) -> DecodeResult:
    """Package a decoded word, extracting the message when it is a codeword."""
    msg = None
    if rmcode.is_codeword(params, codeword):
        try:
            msg = rmcode.message_of_codeword(params, codeword)
        except gf2.InconsistentSystem:  # pragma: no cover - guarded by is_codeword
            msg = None
    return DecodeResult(params, np.asarray(codeword, dtype=np.uint8), msg, soft_metric(codeword, L))
