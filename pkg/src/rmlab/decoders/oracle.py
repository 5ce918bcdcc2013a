"""Reference decoders: exhaustive ML and erasure solving.

ml_decode enumerates all 2^k codewords (guarded at k <= 24), so it serves
as the ground truth the structured decoders are compared against.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Union

import numpy as np

from .. import channel, gf2, rmcode
from ..rmcode import TooLarge
from .types import Ambiguous, DecodeResult, soft_metric

_ML_GUARD_K = 24
_CACHE_K = 16
_BLOCK = 1 << 16


@lru_cache(maxsize=4)
def _sign_codebook(params: rmcode.CodeParams) -> np.ndarray:
    return _sign_block(params, 0, 1 << params.k)


def _sign_block(params: rmcode.CodeParams, start: int, count: int) -> np.ndarray:
    k = params.k
    G = rmcode.generator_matrix(params)
    idx = np.arange(start, start + count, dtype=np.uint64)[:, None]
    # bit k-1-row of the message index is the coefficient of row `row`,
    # so ascending index = lexicographic coefficient order
    shifts = np.arange(k - 1, -1, -1, dtype=np.uint64)[None, :]
    bits = ((idx >> shifts) & 1).astype(np.uint8)
    words = (bits @ G) & 1
    return 1.0 - 2.0 * words.astype(np.float64)


def _message_from_index(params: rmcode.CodeParams, idx: int) -> rmcode.Message:
    order = rmcode.monomials(params)
    k = params.k
    coeffs = {order[row]: 1 for row in range(k) if (idx >> (k - 1 - row)) & 1}
    return rmcode.Message(params, coeffs)


def ml_decode(params: rmcode.CodeParams, L) -> DecodeResult:
    """Exhaustive maximum-likelihood decoding.

    Metric ties resolve to the lexicographically smallest coefficient
    vector in generator row order.  Raises TooLarge for k > 24.
    """
    if params.k > _ML_GUARD_K:
        raise TooLarge(f"k = {params.k} exceeds the exhaustive guard of {_ML_GUARD_K}")
    L = np.asarray(L, dtype=np.float64)
    if L.shape != (params.n,):
        raise ValueError(f"expected {params.n} LLRs")
    total = 1 << params.k
    best_idx = -1
    best_score = -np.inf
    if params.k <= _CACHE_K:
        scores = _sign_codebook(params) @ L
        best_idx = int(np.argmax(scores))
        best_score = scores[best_idx]
    else:
        for start in range(0, total, _BLOCK):
            count = min(_BLOCK, total - start)
            scores = _sign_block(params, start, count) @ L
            i = int(np.argmax(scores))
            if scores[i] > best_score:
                best_idx, best_score = start + i, scores[i]
    msg = _message_from_index(params, best_idx)
    c = rmcode.encode(msg)
    return DecodeResult(params, c, msg, soft_metric(c, L))


def erasure_decode(params: rmcode.CodeParams, y) -> Union[DecodeResult, Ambiguous]:
    """Solve for the message from the unerased coordinates.

    y is a uint8 word with channel.ERASURE marking erased positions.
    Returns Ambiguous(count_exponent) when 2^count_exponent codewords are
    consistent; raises gf2.InconsistentSystem when none is.
    """
    y = np.asarray(y, dtype=np.uint8)
    if y.shape != (params.n,):
        raise ValueError(f"expected a length-{params.n} word")
    cols = gf2.transpose(rmcode.generator_rows(params), params.n)
    rows = []
    b = 0
    for j in np.flatnonzero(y != channel.ERASURE):
        if y[j]:
            b |= 1 << len(rows)
        rows.append(cols[j])
    sol = gf2.solve_affine(rows, params.k, b)
    if sol.nullspace_basis:
        return Ambiguous(sol.count_exponent)
    order = rmcode.monomials(params)
    msg = rmcode.Message(
        params, {order[i]: 1 for i in range(params.k) if (sol.particular >> i) & 1}
    )
    c = rmcode.encode(msg)
    L = np.where(y == channel.ERASURE, 0.0, 1.0 - 2.0 * np.minimum(y, 1).astype(np.float64))
    return DecodeResult(params, c, msg, soft_metric(c, L))
